#include "pine/dzk.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pine/error.hpp"
#include "pine/norm.hpp"

namespace pine {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Privacy loss tail of the Gaussian mechanism with sensitivity 1 and noise
// sigma; decreasing in sigma.
double gaussian_delta(double eps, double sigma) {
  const double a = 1.0 / (2.0 * sigma);
  const double b = eps * sigma;
  return normal_cdf(a - b) - std::exp(eps) * normal_cdf(-a - b);
}

unsigned bit_length(u128 x) { return x == 0 ? 0 : ceil_log2(x + 1); }

}  // namespace

double gaussian_c(double eps, double delta, Calibration cal) {
  if (!(eps > 0) || !(delta > 0 && delta < 1)) throw std::invalid_argument("eps must be positive, delta in (0, 1)");
  if (cal == Calibration::kClosedForm) return std::sqrt(2.0 * std::log(1.25 / delta)) / eps;
  double lo = 1e-6;
  double hi = 1.0;
  while (gaussian_delta(eps, hi) > delta) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gaussian_delta(eps, mid) > delta ? lo : hi) = mid;
  }
  return hi;
}

namespace {

long double truncation_cap_ld(std::size_t d, long double sigma, long double delta) {
  const long double beta = std::log(8.0L * std::exp(1.0L) / delta);
  const auto dd = static_cast<long double>(d);
  return dd * sigma * sigma * (1.0L + 2.0L * std::sqrt(beta / dd) + 2.0L * beta / dd);
}

// Lambda^2 lands within about 10^-2 of an integer at realistic sizes, so the
// chain from c to Lambda runs in extended precision.
DzkParams finish_cap(DzkParams p, long double Delta) {
  if (!(Delta >= 0)) throw std::invalid_argument("truncation cap must be non-negative");
  const long double lam = std::sqrt(static_cast<long double>(p.B)) + std::sqrt(Delta) +
                          std::sqrt(static_cast<long double>(p.d));
  p.Delta = static_cast<double>(Delta);
  p.Lambda = static_cast<double>(lam);
  p.lambda_sq = static_cast<u128>(std::floor(lam * lam));
  p.q_min = static_cast<u128>(std::floor(4.0L * lam * lam)) + 1;
  p.q_min_bits = bit_length(p.q_min);
  return p;
}

}  // namespace

double truncation_cap(std::size_t d, double sigma, double delta) {
  return static_cast<double>(truncation_cap_ld(d, sigma, delta));
}

DzkParams dzk_params(double eps, double delta, std::uint64_t B, std::size_t d, Calibration cal) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (B == 0 || d == 0) throw std::invalid_argument("B and d must be positive");
  DzkParams p;
  p.d = d;
  p.B = B;
  p.eps = eps;
  p.delta = delta;
  p.cal = cal;
  const long double c = cal == Calibration::kClosedForm
                           ? std::sqrt(2.0L * std::log(1.25L / (static_cast<long double>(delta) / 2))) / eps
                           : static_cast<long double>(gaussian_c(eps, delta / 2.0, cal));
  const long double sigma = c * std::sqrt(static_cast<long double>(B));
  p.c = static_cast<double>(c);
  p.sigma = static_cast<double>(sigma);
  p.b_sq = ceil_log2(static_cast<u128>(B) + 1);
  p.sq_pow2 = is_power_of_two(static_cast<u128>(B) + 1);
  return finish_cap(p, truncation_cap_ld(d, sigma, delta));
}

DzkParams with_truncation_cap(DzkParams p, double Delta) { return finish_cap(std::move(p), Delta); }

DzkParams with_field(DzkParams p, const Field& f, unsigned t) {
  if (t == 0) throw std::invalid_argument("at least one quadratic repetition is required");
  if (f.modulus() < p.q_min) {
    std::ostringstream why;
    why << "field too small: q <= 4*Lambda^2, need at least " << p.q_min_bits << " bits";
    throw InfeasibleParams(why.str());
  }
  try {
    validate_claim(f, RangeClaim{{}, 0, static_cast<i128>(p.B)});
  } catch (const std::invalid_argument& e) {
    throw InfeasibleParams(std::string("field too small: ") + e.what());
  }
  p.field = f;
  p.t = t;
  return p;
}

double dzk_soundness_error(const DzkParams& p) {
  const double q = to_double(p.field.modulus());
  const double lq = p.log_q();
  const double s = 2.0 * std::sqrt(static_cast<double>(p.d) + 2.0 * lq);
  if (q <= s) return 1.0;
  return std::min(1.0, std::pow(s / (q - s) + (2.0 * lq + 1.0) / q, static_cast<double>(p.t)));
}

DzkParams select_dzk_params(double eps, double delta, std::uint64_t B, std::size_t d, const Field& f, double rho,
                            Calibration cal, unsigned max_t) {
  const DzkParams base = dzk_params(eps, delta, B, d, cal);
  for (unsigned t = 1; t <= max_t; ++t) {
    DzkParams p = with_field(base, f, t);
    if (dzk_soundness_error(p) <= rho) return p;
  }
  throw InfeasibleParams("soundness: no t <= " + std::to_string(max_t) + " reaches the target");
}

std::vector<double> sample_truncated_gaussian(std::size_t d, double sigma, double Delta, Rng& rng,
                                              std::size_t* rejections, std::size_t max_tries) {
  std::vector<double> r(d, 0.0);
  if (rejections) *rejections = 0;
  if (sigma == 0.0) return r;
  std::normal_distribution<double> normal(0.0, sigma);
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    double sq = 0.0;
    for (auto& x : r) {
      x = normal(rng);
      sq += x * x;
    }
    if (sq <= Delta) return r;
    if (rejections) ++*rejections;
  }
  throw std::runtime_error("truncated Gaussian: retry cap exceeded, check the truncation cap");
}

std::array<ShareVector, 2> dzk_share(const DzkParams& p, std::span<const Fe> x, Rng& rng) {
  if (x.size() != p.d) throw std::invalid_argument("input length differs from d");
  const Field& f = p.field;
  const std::vector<double> noise = sample_truncated_gaussian(p.d, p.sigma, p.Delta, rng);
  std::array<ShareVector, 2> out{ShareVector{0, {}}, ShareVector{1, {}}};
  out[0].values.reserve(p.d);
  out[1].values.reserve(p.d);
  for (std::size_t i = 0; i < p.d; ++i) {
    const Fe c = f.from_int(static_cast<i128>(std::ceil(noise[i])));
    out[0].values.push_back(f.neg(c));
    out[1].values.push_back(f.add(x[i], c));
  }
  return out;
}

bool share_norm_ok(const DzkParams& p, const ShareVector& s) {
  return s.size() == p.d && squared_norm(p.field, s.values) <= p.lambda_sq;
}

std::size_t dzk_variable_count(const DzkParams& p) { return p.d + p.b_sq * (p.sq_pow2 ? 1 : 2); }

ConstraintSystem dzk_constraints(const DzkParams& p) {
  const Field& f = p.field;
  ConstraintSystem sys;
  sys.n = dzk_variable_count(p);
  const auto vp = static_cast<std::uint32_t>(p.d + 1);
  QuadraticConstraint sq;
  for (std::uint32_t i = 1; i <= p.d; ++i) sq.terms.push_back({i, i, f.one()});
  for (unsigned j = 0; j < p.b_sq; ++j) sq.terms.push_back({0, vp + j, f.neg(pow2_fe(f, j))});
  sq.target = f.zero();
  sys.constraints.push_back(std::move(sq));
  for (auto var = vp; var <= sys.n; ++var) sys.constraints.push_back(bit_constraint(f, var));
  return sys;
}

DzkProver::DzkProver(DzkParams p, std::vector<Fe> x, Rng rng, DzkHooks hooks)
    : p_(std::move(p)), x_(std::move(x)), rng_(std::move(rng)), hooks_(std::move(hooks)) {
  if (x_.size() != p_.d) throw std::invalid_argument("input length differs from d");
}

std::array<DzkMsg1, 2> DzkProver::round1() {
  const Field& f = p_.field;
  std::array<DzkMsg1, 2> out;
  auto shares = dzk_share(p_, x_, rng_);
  Fe sq = f.zero();
  for (Fe e : x_) sq = f.add(sq, f.mul(e, e));
  const RangeWitness rw = range_witness(f, sq, 0, static_cast<i128>(p_.B));
  assignment_.assign(x_.begin(), x_.end());
  for (auto bit : rw.v) assignment_.push_back(Fe{bit});
  for (auto bit : rw.u) assignment_.push_back(Fe{bit});
  if (hooks_.assignment) hooks_.assignment(assignment_);
  if (assignment_.size() != dzk_variable_count(p_)) throw std::logic_error("assignment hook changed the size");

  for (int j = 0; j < 2; ++j) {
    out[j].x = std::move(shares[j]);
    out[j].sq.verifier = j;
    out[j].sq.pow2 = p_.sq_pow2;
    out[j].sq.b = p_.b_sq;
  }
  for (std::size_t idx = p_.d; idx < assignment_.size(); ++idx) {
    const auto [s0, s1] = share(f, assignment_[idx], rng_);
    const bool is_v = idx < p_.d + p_.b_sq;
    (is_v ? out[0].sq.v : out[0].sq.u).push_back(s0.value);
    (is_v ? out[1].sq.v : out[1].sq.u).push_back(s1.value);
  }
  sys_ = dzk_constraints(p_);
  return out;
}

std::array<DzkMsg3, 2> DzkProver::round3(std::span<const Fe> rcs) {
  if (rcs.size() != p_.t) throw std::invalid_argument("need one batching coin per repetition");
  if (assignment_.empty()) throw std::logic_error("round3 called before round1");
  std::array<DzkMsg3, 2> out;
  for (Fe rc : rcs) {
    auto proofs = prove_quadratic(p_.field, sys_, assignment_, rc, rng_, hooks_.inner_product);
    out[0].proofs.push_back(std::move(proofs[0]));
    out[1].proofs.push_back(std::move(proofs[1]));
  }
  return out;
}

void check_dzk_msg1_shape(const DzkParams& p, const DzkMsg1& m) {
  if (m.x.size() != p.d) throw std::invalid_argument("input share length differs from d");
  if (m.sq.b != p.b_sq || m.sq.pow2 != p.sq_pow2 || m.sq.v.size() != p.b_sq ||
      m.sq.u.size() != (p.sq_pow2 ? 0 : p.b_sq) || m.sq.verifier != m.x.verifier) {
    throw std::invalid_argument("squared-norm range shares have the wrong shape");
  }
}

void check_dzk_msg3_shape(const DzkParams& p, const DzkMsg3& m) {
  if (m.proofs.size() != p.t) throw std::invalid_argument("wrong number of inner-product proofs");
  const std::uint32_t L = block_count(dzk_variable_count(p));
  for (const auto& pr : m.proofs) {
    if (pr.L != L || pr.f_ext.size() != L || pr.g_ext.size() != L || pr.h.size() != 2 * std::size_t{L} + 1) {
      throw std::invalid_argument("inner-product proof has the wrong shape");
    }
  }
}

DzkExchange dzk_verifier_exchange(const DzkParams& p, const DzkMsg1& m1, std::span<const Fe> rcs, const DzkMsg3& m3,
                                  std::span<const Fe> rhos) {
  if (rcs.size() != p.t || rhos.size() != p.t) throw std::invalid_argument("need t coins and t evaluation points");
  check_dzk_msg1_shape(p, m1);
  check_dzk_msg3_shape(p, m3);
  DzkExchange e;
  e.norm_ok = share_norm_ok(p, m1.x);
  e.range_lin = range_linear_share(p.field, m1.sq);
  ShareVector xa{m1.x.verifier, m1.x.values};
  xa.values.insert(xa.values.end(), m1.sq.v.begin(), m1.sq.v.end());
  xa.values.insert(xa.values.end(), m1.sq.u.begin(), m1.sq.u.end());
  const ConstraintSystem sys = dzk_constraints(p);
  for (unsigned k = 0; k < p.t; ++k) {
    e.quad.push_back(quadratic_exchange(p.field, sys, xa, rcs[k], m3.proofs[k], rhos[k]));
  }
  return e;
}

Verdict dzk_decide(const DzkParams& p, const DzkExchange& e0, const DzkExchange& e1) {
  const Field& f = p.field;
  if (!e0.norm_ok || !e1.norm_ok) return Verdict::reject(RejectCause::kShareNorm);
  if (e0.quad.size() != p.t || e1.quad.size() != p.t) return Verdict::reject(RejectCause::kMalformed);
  if (!p.sq_pow2 && !linear_equality_check(f, Share{0, e0.range_lin.value}, Share{1, e1.range_lin.value},
                                           f.from_u128(p.B))) {
    return Verdict::reject(RejectCause::kRangeLinear);
  }
  bool ok = true;
  for (unsigned k = 0; k < p.t; ++k) ok = inner_product_decide(f, e0.quad[k], e1.quad[k]) && ok;
  return ok ? Verdict::ok() : Verdict::reject(RejectCause::kQuadratic);
}

Verdict run_dzk_interactive(const DzkParams& p, std::span<const Fe> x, Rng prover_rng, Rng& coins,
                            const DzkHooks& hooks, DzkTranscript* out) {
  DzkProver prover(p, std::vector<Fe>(x.begin(), x.end()), std::move(prover_rng), hooks);
  DzkTranscript tr;
  tr.msg1 = prover.round1();
  for (unsigned k = 0; k < p.t; ++k) tr.rcs.push_back(coins.uniform(p.field));
  tr.msg3 = prover.round3(tr.rcs);
  const std::uint32_t L = block_count(dzk_variable_count(p));
  for (unsigned k = 0; k < p.t; ++k) tr.rhos.push_back(sample_rho(p.field, L, coins));
  Verdict v;
  try {
    for (int j = 0; j < 2; ++j) tr.exchange[j] = dzk_verifier_exchange(p, tr.msg1[j], tr.rcs, tr.msg3[j], tr.rhos);
    v = dzk_decide(p, tr.exchange[0], tr.exchange[1]);
  } catch (const std::invalid_argument&) {
    v = Verdict::reject(RejectCause::kMalformed);
  }
  if (out) *out = std::move(tr);
  return v;
}

std::vector<std::uint8_t> serialize(const Field& f, const DzkMsg3& m) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(m.proofs.size()));
  for (const auto& p : m.proofs) w.bytes(serialize(f, p));
  return w.take();
}

DzkMsg3 deserialize_dzk_msg3(const DzkParams& p, std::span<const std::uint8_t> in) {
  ByteReader r(in);
  const std::uint32_t count = r.u32();
  if (count != p.t) throw FormatError("wrong number of inner-product proofs");
  DzkMsg3 m;
  for (std::uint32_t k = 0; k < count; ++k) m.proofs.push_back(read_inner_product_proof(p.field, r));
  r.expect_end();
  try {
    check_dzk_msg3_shape(p, m);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return m;
}

std::vector<std::uint8_t> serialize(const Field& f, const DzkExchange& e) {
  ByteWriter w;
  w.u8(e.norm_ok ? 1 : 0);
  w.u8(static_cast<std::uint8_t>(e.range_lin.verifier));
  w.fe(f, e.range_lin.value);
  w.u32(static_cast<std::uint32_t>(e.quad.size()));
  for (const auto& q : e.quad) write_exchange(w, f, q);
  return w.take();
}

DzkExchange deserialize_dzk_exchange(const DzkParams& p, std::span<const std::uint8_t> in) {
  ByteReader r(in);
  DzkExchange e;
  const std::uint8_t ok = r.u8();
  if (ok > 1) throw FormatError("invalid norm flag");
  e.norm_ok = ok == 1;
  const std::uint8_t verifier = r.u8();
  if (verifier > 1) throw FormatError("verifier index must be 0 or 1");
  e.range_lin = Share{verifier, r.fe(p.field)};
  const std::uint32_t count = r.u32();
  if (count != p.t) throw FormatError("wrong number of quadratic exchanges");
  const std::uint32_t L = block_count(dzk_variable_count(p));
  for (std::uint32_t k = 0; k < count; ++k) e.quad.push_back(read_exchange(r, p.field, L));
  r.expect_end();
  return e;
}

}  // namespace pine
