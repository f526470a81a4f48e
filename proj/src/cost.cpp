#include "pine/cost.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "pine/error.hpp"
#include "pine/harness.hpp"

namespace pine {

namespace {

constexpr unsigned kStatisticalRounds = 3;
constexpr unsigned kDzkRounds = 2;

unsigned popcount(u128 x) {
  unsigned c = 0;
  for (; x != 0; x &= x - 1) ++c;
  return c;
}

unsigned bit_length(u128 x) {
  unsigned b = 0;
  for (; x != 0; x >>= 1) ++b;
  return b;
}

// Multiplications of one Fermat inversion, a^(q-2) by square-and-multiply.
std::uint64_t inv_muls(u128 q) { return bit_length(q - 2) + popcount(q - 2); }

// Shape of the batch handed to the quadratic prover.
struct BatchShape {
  std::uint64_t n = 0;        // variables
  std::uint64_t m = 0;        // constraints
  std::uint64_t terms = 0;    // ordinary terms over all constraints
  std::uint64_t ternary = 0;  // ternary rows
  std::uint64_t row_len = 0;  // entries per ternary row
};

// One repetition of the quadratic prover: combine, apply, prove, share.
OpCounts quadratic_prover_ops(const BatchShape& s, u128 q) {
  const std::uint64_t inv = inv_muls(q);
  const std::uint64_t L = block_count(s.n);
  const std::uint64_t P = L + 1;
  const std::uint64_t N = 2 * L + 1;
  OpCounts c;

  // combine_constraints
  c.mul += s.terms + s.ternary + 2 * s.m;
  c.add += s.m;
  // local_matrix_apply; ternary entries are non-zero with probability 1/2
  c.mul += s.terms + s.ternary;
  c.add += s.terms + s.ternary + s.ternary * s.row_len / 2;

  // h at points 0..L from the block values
  c.mul += L * P;
  c.add += L * P;
  // h at points L+1..2L through the Lagrange basis over 0..L
  const std::uint64_t lagrange_mul = 11 * P - 1 + 2 * inv;
  const std::uint64_t lagrange_add = P + P / 2;
  c.mul += L * (lagrange_mul + L * (2 * P + 1));
  c.add += L * (lagrange_add + L * (2 * P + 1));
  // coefficients of h from its 2L+1 values
  c.mul += N * (N + 1) / 2 + N;
  c.add += N * (N + 1) / 2 + N;
  c.mul += 5 * N - 1 + inv;
  c.add += N / 2;
  c.mul += 2 * N * N;
  c.add += N * (2 * N - 1);

  // share_proof
  c.add += 4 * L + 1;
  return c;
}

OpCounts& operator+=(OpCounts& a, const OpCounts& b) {
  a.mul += b.mul;
  a.add += b.add;
  return a;
}

OpCounts times(OpCounts a, std::uint64_t k) {
  a.mul *= k;
  a.add *= k;
  return a;
}

// Entries uniform in [-a, a] with d a^2 <= B, so the input is dense like
// real client data.
std::vector<std::int64_t> spread_input(std::size_t d, std::uint64_t B, Rng& rng) {
  const auto a = static_cast<std::int64_t>(std::sqrt(static_cast<double>(B / d)));
  if (a == 0) return vector_with_squared_norm(d, B);
  std::vector<std::int64_t> x(d);
  for (auto& e : x) e = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * a + 1))) - a;
  return x;
}

double overhead_of(double client, double baseline) { return (client - baseline) / baseline; }

CostReport dzk_report(const DzkParams& p, unsigned lq, unsigned t, unsigned base_bits) {
  CostReport c;
  c.variant = "dzk";
  c.d = p.d;
  c.B = p.B;
  c.log_q = lq;
  c.t = t;
  const std::size_t n = dzk_variable_count(p);
  c.L = block_count(n);

  c.baseline_bits = static_cast<std::uint64_t>(p.d) * base_bits;
  c.input_bits = static_cast<std::uint64_t>(p.d) * lq;
  c.proof_bits = static_cast<std::uint64_t>(n - p.d) * lq;
  c.ip_bits = static_cast<std::uint64_t>(t) * (4ull * c.L + 1) * lq;
  c.fs_bits = fs_bits(kDzkRounds);
  c.client_bits = c.input_bits + c.proof_bits + c.ip_bits + c.fs_bits;
  c.overhead = overhead_of(static_cast<double>(c.client_bits), static_cast<double>(c.baseline_bits));

  const double n_bound = static_cast<double>(p.d) + 2.0 * lq;
  c.bound_client_bits = static_cast<double>(c.input_bits + c.proof_bits + c.fs_bits) +
                        t * (4.0 * std::sqrt(n_bound) + 1.0) * lq;
  c.bound_overhead = overhead_of(c.bound_client_bits, static_cast<double>(c.baseline_bits));

  const std::uint64_t ex = (p.sq_pow2 ? 0 : 1) + static_cast<std::uint64_t>(t) * (2ull * c.L + 2);
  c.exchange_bits = ex * lq + 1;
  return c;
}

}  // namespace

std::uint64_t fs_bits(unsigned rounds, const FsConfig& cfg) { return 2ull * rounds * cfg.kappa; }

CostReport cost(const NormParams& p) {
  const MessageSizes ms = message_sizes(p);
  CostReport c;
  c.variant = "statistical";
  c.d = p.d;
  c.B = p.B;
  c.log_q = p.log_q();
  c.t = p.t;
  c.r = p.r;
  c.tau_r = p.tau_r;
  c.L = ms.L;
  c.alpha = p.wrap.alpha_hat;

  c.baseline_bits = ms.input_shares;
  c.input_bits = ms.input_shares;
  c.proof_bits = ms.msg2;
  c.ip_bits = ms.msg4;
  c.fs_bits = fs_bits(kStatisticalRounds);
  c.client_bits = c.input_bits + c.proof_bits + c.ip_bits + c.fs_bits;
  c.overhead = overhead_of(static_cast<double>(c.client_bits), static_cast<double>(c.baseline_bits));

  c.bound_client_bits = static_cast<double>(c.input_bits + c.fs_bits) + ms.msg2_bound + ms.msg4_bound;
  c.bound_overhead = overhead_of(c.bound_client_bits, static_cast<double>(c.baseline_bits));
  c.exchange_bits = ms.exchange;
  c.prover_ops = analytic_prover_ops(p);
  return c;
}

CostReport cost_statistical(std::size_t d, std::uint64_t B, const Field& f, double rho, double delta,
                            const SelectOptions& opt) {
  return cost(select_params(d, B, f, rho, delta, opt));
}

CostReport cost(const DzkParams& p) {
  CostReport c = dzk_report(p, p.log_q(), p.t, p.log_q());
  c.prover_ops = analytic_prover_ops(p);
  return c;
}

CostReport cost_dzk(double eps, double delta, std::uint64_t B, std::size_t d, unsigned base_bits, double rho,
                    Calibration cal) {
  const DzkParams p = dzk_params(eps, delta, B, d, cal);
  const unsigned lq = std::max(base_bits, p.q_min_bits);
  const double q = std::ldexp(1.0, static_cast<int>(lq));
  const double s = 2.0 * std::sqrt(static_cast<double>(d) + 2.0 * lq);
  const double per_rep = s / (q - s) + (2.0 * lq + 1.0) / q;
  if (!(per_rep < 1.0)) throw InfeasibleParams("soundness: quadratic check is vacuous at this field size");
  unsigned t = 1;
  while (std::pow(per_rep, t) > rho) {
    if (++t > 64) throw InfeasibleParams("soundness: no t <= 64 reaches the target");
  }
  return dzk_report(p, lq, t, base_bits);
}

OpCounts analytic_prover_ops(const NormParams& p) {
  const ConstraintCatalog cat = constraint_catalog(p);
  const std::uint64_t d = p.d;
  const std::uint64_t bits = cat.n_vars - d;
  BatchShape s;
  s.n = cat.n_vars;
  s.m = cat.m_constraints;
  s.terms = d + p.b_sq + p.r * (1 + p.wrap.b) + 2 * bits;
  s.ternary = p.r;
  s.row_len = d;

  OpCounts c;
  c.add += d;  // input shares
  c.mul += d;  // squared norm
  c.add += d;
  c.add += p.sq_pow2 ? 1 : 2;                        // range witness
  c.add += p.b_sq + 1 + p.r * p.wrap.b + bits;       // constraint constants
  c.add += bits;                                     // message 2 shares
  c += times(quadratic_prover_ops(s, p.field.modulus()), p.t);
  return c;
}

OpCounts analytic_prover_ops(const DzkParams& p) {
  const std::uint64_t d = p.d;
  const std::uint64_t n = dzk_variable_count(p);
  const std::uint64_t bits = n - d;
  BatchShape s;
  s.n = n;
  s.m = 1 + bits;
  s.terms = d + p.b_sq + 2 * bits;

  OpCounts c;
  c.add += 2 * d;  // noisy input shares
  c.mul += d;
  c.add += d;
  c.add += p.sq_pow2 ? 1 : 2;
  c.add += p.b_sq + bits;
  c.add += bits;
  c += times(quadratic_prover_ops(s, p.field.modulus()), p.t);
  return c;
}

OpCounts instrumented_prover_ops(const NormParams& p, std::uint64_t seed) {
  Rng master(seed);
  Rng input_rng = master.derive("input");
  Rng coins = master.derive("coins");
  const std::vector<Fe> x = to_field(p.field, spread_input(p.d, p.B, input_rng));

  NormProver prover(p, x, master.derive("client"));
  reset_op_counts();
  prover.share_input();
  std::optional<std::array<NormMsg2, 2>> m2;
  for (int attempt = 0; attempt < 64 && !m2; ++attempt) m2 = prover.round2(sample_challenge(p.r, p.d, coins));
  if (!m2) throw std::runtime_error("honest prover aborted 64 times in a row");
  std::vector<Fe> rcs;
  for (unsigned k = 0; k < p.t; ++k) rcs.push_back(coins.uniform(p.field));
  prover.round4(rcs);
  OpCounts out = op_counts();
  reset_op_counts();
  return out;
}

OpCounts instrumented_prover_ops(const DzkParams& p, std::uint64_t seed) {
  Rng master(seed);
  Rng coins = master.derive("coins");
  Rng input_rng = master.derive("input");
  DzkProver prover(p, to_field(p.field, spread_input(p.d, p.B, input_rng)), master.derive("client"));
  reset_op_counts();
  prover.round1();
  std::vector<Fe> rcs;
  for (unsigned k = 0; k < p.t; ++k) rcs.push_back(coins.uniform(p.field));
  prover.round3(rcs);
  OpCounts out = op_counts();
  reset_op_counts();
  return out;
}

std::vector<IntroRow> intro_table(const std::vector<std::size_t>& dims, std::uint64_t B, double rho,
                                  double delta, double eps) {
  std::vector<IntroRow> rows;
  for (std::size_t d : dims) {
    IntroRow row;
    row.d = d;
    row.statistical = cost_statistical(d, B, Field::f64(), rho, delta);
    row.dzk = cost_dzk(eps, delta, B, d, 64, rho);
    row.baseline_bits = row.statistical.baseline_bits;
    // Sharing each of 15 bits separately next to the value: 16 elements per entry.
    row.prior_overhead = 15.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string dim_label(std::size_t d) {
  unsigned e = 0;
  std::size_t v = d;
  while (v >= 10 && v % 10 == 0) {
    v /= 10;
    ++e;
  }
  if (v == 1 && e > 0) return "10^" + std::to_string(e);
  return std::to_string(d);
}

std::string percent(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(x < 0.1 ? 3 : 2) << 100.0 * x << "%";
  return os.str();
}

}  // namespace

std::string format_intro_table(const std::vector<IntroRow>& rows) {
  std::ostringstream os;
  const int label_w = 34;
  const int col_w = 14;
  os << std::left << std::setw(label_w) << "";
  for (const auto& r : rows) os << std::right << std::setw(col_w) << ("d=" + dim_label(r.d));
  os << "\n";
  auto line = [&](const std::string& label, auto cell) {
    os << std::left << std::setw(label_w) << label;
    for (const auto& r : rows) os << std::right << std::setw(col_w) << cell(r);
    os << "\n";
  };
  line("no robustness, # bits sent", [](const IntroRow& r) {
    return std::to_string(r.baseline_bits / r.d) + "*" + dim_label(r.d);
  });
  line("prior work, overhead", [](const IntroRow& r) { return "> " + percent(r.prior_overhead); });
  line("PINE, Statistical ZK, overhead", [](const IntroRow& r) { return percent(r.statistical.overhead); });
  line("  (size bounds)", [](const IntroRow& r) { return percent(r.statistical.bound_overhead); });
  line("PINE, Differential ZK, overhead", [](const IntroRow& r) { return percent(r.dzk.overhead); });
  line("  (protocol field bits)", [](const IntroRow& r) { return std::to_string(r.dzk.log_q); });
  return os.str();
}

std::string format_verbose_table(const std::vector<CostReport>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(8) << "d" << std::right << std::setw(4) << "t" << std::setw(6) << "r"
     << std::setw(9) << "tau" << std::setw(13) << "alpha" << std::setw(6) << "L" << std::setw(12) << "msg2 bits"
     << std::setw(12) << "msg4 bits" << std::setw(10) << "FS bits" << std::setw(12) << "overhead"
     << std::setw(12) << "bound" << "\n";
  for (const auto& c : rows) {
    const double tau = c.r == 0 ? 1.0 : static_cast<double>(c.tau_r) / static_cast<double>(c.r);
    os << std::left << std::setw(8) << dim_label(c.d) << std::right << std::setw(4) << c.t << std::setw(6) << c.r
       << std::setw(9) << std::fixed << std::setprecision(4) << tau << std::setw(13) << std::setprecision(8)
       << c.alpha << std::setw(6) << c.L << std::setw(12) << c.proof_bits << std::setw(12) << c.ip_bits
       << std::setw(10) << c.fs_bits << std::setw(12) << percent(c.overhead) << std::setw(12)
       << percent(c.bound_overhead) << "\n";
  }
  return os.str();
}

}  // namespace pine
