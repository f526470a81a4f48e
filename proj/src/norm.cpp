#include "pine/norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pine/binomial.hpp"
#include "pine/error.hpp"
#include "pine/wire.hpp"

namespace pine {

std::string_view to_string(RejectCause c) {
  switch (c) {
    case RejectCause::kNone:
      return "none";
    case RejectCause::kMalformed:
      return "malformed";
    case RejectCause::kAbort:
      return "abort";
    case RejectCause::kSuccessCount:
      return "success-count";
    case RejectCause::kRangeLinear:
      return "range-linear";
    case RejectCause::kQuadratic:
      return "quadratic";
    case RejectCause::kShareNorm:
      return "share-norm";
    case RejectCause::kFsInconsistent:
      return "fs-inconsistent";
  }
  return "unknown";
}

namespace {

double quad_term_theorem(const NormParams& p) {
  const double q = to_double(p.field.modulus());
  const double lq = p.log_q();
  const double extra = lq * static_cast<double>(p.r + 2) / 2.0;
  const double s = 2.0 * std::sqrt(static_cast<double>(p.d) + extra);
  if (q <= s) return 1.0;
  return std::min(1.0, s / (q - s) + extra / q);
}

double quad_term_exact(const NormParams& p) {
  const ConstraintCatalog cat = constraint_catalog(p);
  const double q = to_double(p.field.modulus());
  const double L = block_count(cat.n_vars);
  if (q <= L + 1) return 1.0;
  return std::min(1.0, 2.0 * L / (q - L - 1) + static_cast<double>(cat.m_constraints) / q);
}

}  // namespace

NormParams make_norm_params(const Field& f, std::size_t d, std::uint64_t B, std::size_t r, std::size_t tau_r,
                            unsigned t, double eta, bool check_field) {
  if (d == 0) throw std::invalid_argument("dimension d must be positive");
  if (t == 0) throw std::invalid_argument("at least one quadratic repetition is required");
  NormParams p;
  p.field = f;
  p.d = d;
  p.B = B;
  p.r = r;
  p.tau_r = tau_r;
  p.t = t;
  p.eta = eta;
  p.wrap = make_wraparound_params(d, B, r, tau_r, eta);
  p.b_sq = ceil_log2(static_cast<u128>(B) + 1);
  p.sq_pow2 = is_power_of_two(static_cast<u128>(B) + 1);
  validate_claim(f, RangeClaim{{}, 0, static_cast<i128>(B)});
  validate_claim(f, RangeClaim{{}, p.wrap.lo, p.wrap.hi});
  if (check_field && !theorem_field_ok(p)) {
    throw std::invalid_argument("field too small for the norm-bound theorem at these parameters");
  }
  return p;
}

double theorem_q_min(const NormParams& p) {
  const double bl = static_cast<double>(p.B) * std::log(2.0 / p.eta);
  const double w = static_cast<double>(p.wrap.window_width());
  return std::max({81.0 * bl, bl / 4000.0, 2600.0 * std::sqrt(bl), 1000.0, 3.0 * static_cast<double>(p.r),
                   3.0 * (w - 1.0) + 3.0, 3.0 * static_cast<double>(p.B) + 3.0});
}

bool theorem_field_ok(const NormParams& p) {
  if (to_double(p.field.modulus()) < theorem_q_min(p)) return false;
  return wraparound_field_ok(p.field, p.wrap);
}

double soundness_error(const NormParams& p, SoundnessModel model) {
  const double quad = model == SoundnessModel::kTheorem ? quad_term_theorem(p) : quad_term_exact(p);
  return std::min(1.0, err_sound(p.r, p.tau_r) + std::pow(quad, static_cast<double>(p.t)));
}

double theorem_soundness_bound(const NormParams& p) {
  const double slack = p.wrap.tau() - 0.5;
  const double chernoff = std::exp(-2.0 * slack * slack * static_cast<double>(p.r));
  return std::min(1.0, chernoff + std::pow(quad_term_theorem(p), static_cast<double>(p.t)));
}

double completeness_error(const NormParams& p) {
  if (p.r == 0) return 0.0;
  return err_complete(p.r, p.tau_r, p.wrap.eta_hat);
}

NormParams select_params(std::size_t d, std::uint64_t B, const Field& f, double rho, double delta,
                         const SelectOptions& opt) {
  if (!(rho > 0 && rho < 1) || !(delta > 0 && delta < 1)) {
    throw std::invalid_argument("rho and delta must lie in (0, 1)");
  }
  const double eta = opt.eta > 0 ? opt.eta : std::exp2(kDefaultEtaLog2);
  const double rho_eff = rho * std::exp2(-opt.fs_margin_bits);
  const double q = to_double(f.modulus());
  const double bl = static_cast<double>(B) * std::log(2.0 / eta);

  std::ostringstream why;
  if (q < 81.0 * bl) {
    why << "field too small: q < 81*B*ln(2/eta) = " << 81.0 * bl;
    throw InfeasibleParams(why.str());
  }
  if (q < 1000.0) throw InfeasibleParams("field too small: q < 1000");
  WraparoundParams probe;
  try {
    probe = make_wraparound_params(d, B, 1, 1, eta);
    validate_claim(f, RangeClaim{{}, 0, static_cast<i128>(B)});
    validate_claim(f, RangeClaim{{}, probe.lo, probe.hi});
  } catch (const std::invalid_argument& e) {
    throw InfeasibleParams(std::string("field too small: ") + e.what());
  }
  if (!wraparound_field_ok(f, probe)) {
    throw InfeasibleParams("field too small: wraparound condition q >= max{B ln(2/eta)/4000, 2600 sqrt(B ln(2/eta))}");
  }

  // Largest tau*r with err_complete <= delta, per r; independent of t.
  std::vector<std::optional<std::size_t>> tau_cache(opt.max_r + 1);
  std::vector<bool> tau_known(opt.max_r + 1, false);
  auto best_tau = [&](std::size_t r) -> std::optional<std::size_t> {
    if (!tau_known[r]) {
      tau_known[r] = true;
      for (std::size_t tr = r; 2 * tr > r; --tr) {
        if (err_complete(r, tr, probe.eta_hat) <= delta) {
          tau_cache[r] = tr;
          break;
        }
      }
    }
    return tau_cache[r];
  };

  std::optional<NormParams> best;
  std::size_t best_cost = 0;
  bool any_complete = false;
  for (unsigned t = 1; t <= opt.max_t; ++t) {
    for (std::size_t r = 1; r <= opt.max_r; ++r) {
      if (3.0 * static_cast<double>(r) > q) break;
      const auto tr = best_tau(r);
      if (!tr) continue;
      any_complete = true;
      NormParams p = make_norm_params(f, d, B, r, *tr, t, eta, false);
      if (!theorem_field_ok(p)) break;
      if (soundness_error(p, opt.model) > rho_eff) continue;
      const MessageSizes ms = message_sizes(p);
      const std::size_t cost = ms.msg2_elements + ms.msg4_elements;
      if (!best || cost < best_cost) {
        best = p;
        best_cost = cost;
      }
      break;
    }
  }
  if (!best) {
    if (!any_complete) {
      why << "completeness: err_complete > delta = " << delta << " for every r <= " << opt.max_r;
    } else {
      why << "soundness: no r <= " << opt.max_r << ", t <= " << opt.max_t << " reaches rho = " << rho_eff;
    }
    throw InfeasibleParams(why.str());
  }
  return *best;
}

VarLayout var_layout(const NormParams& p) {
  VarLayout l;
  l.x = 1;
  l.g = static_cast<std::uint32_t>(1 + p.d);
  l.v = static_cast<std::uint32_t>(l.g + p.r);
  l.vp = static_cast<std::uint32_t>(l.v + p.r * p.wrap.b);
  l.up = l.vp + p.b_sq;
  l.n = l.up + (p.sq_pow2 ? 0 : p.b_sq) - 1;
  return l;
}

ConstraintCatalog constraint_catalog(const NormParams& p) {
  ConstraintCatalog c;
  c.n_vars = var_layout(p).n;
  c.m_constraints = 1 + 2 * p.r + p.r * p.wrap.b + p.b_sq * (p.sq_pow2 ? 1 : 2);
  const double inner = 4.0 * std::sqrt(static_cast<double>(p.B) * std::log(2.0 / p.eta)) + 2.0;
  c.m_formula = 2.0 * std::ceil(std::log2(inner)) * static_cast<double>(p.r + 2);
  c.n_formula = static_cast<double>(p.d) + c.m_formula;
  return c;
}

ConstraintSystem build_constraints(const NormParams& p, const WraparoundChallenge& z) {
  if (z.r != p.r || z.d != p.d) throw std::invalid_argument("challenge shape differs from parameters");
  const Field& f = p.field;
  const VarLayout l = var_layout(p);
  ConstraintSystem sys;
  sys.n = l.n;
  sys.constraints.reserve(constraint_catalog(p).m_constraints);

  QuadraticConstraint sq;
  for (std::uint32_t i = 0; i < p.d; ++i) sq.terms.push_back({l.x + i, l.x + i, f.one()});
  for (unsigned j = 0; j < p.b_sq; ++j) sq.terms.push_back({0, l.vp + j, f.neg(pow2_fe(f, j))});
  sq.target = f.zero();
  sys.constraints.push_back(std::move(sq));

  const Fe minus_lo = f.neg(f.from_int(p.wrap.lo));
  for (std::uint32_t k = 0; k < p.r; ++k) {
    QuadraticConstraint c;
    c.ternary.push_back(TernaryTerm{l.g + k, f.one(), z.z, static_cast<std::size_t>(k) * p.d, l.x,
                                    static_cast<std::uint32_t>(p.d)});
    c.terms.push_back({0, l.g + k, minus_lo});
    for (unsigned j = 0; j < p.wrap.b; ++j) {
      c.terms.push_back({l.g + k, l.v + k * p.wrap.b + j, f.neg(pow2_fe(f, j))});
    }
    c.target = f.zero();
    sys.constraints.push_back(std::move(c));
  }
  for (std::uint32_t var = l.g; var <= l.n; ++var) sys.constraints.push_back(bit_constraint(f, var));
  return sys;
}

MessageSizes message_sizes(const NormParams& p) {
  MessageSizes s;
  const std::uint64_t lq = p.log_q();
  const ConstraintCatalog cat = constraint_catalog(p);
  s.L = block_count(cat.n_vars);
  s.msg1 = 2ull * p.d * p.r;
  s.msg2_elements = p.r + p.r * p.wrap.b + p.b_sq * (p.sq_pow2 ? 1 : 2);
  s.msg2 = s.msg2_elements * lq;
  s.msg3 = p.t * lq;
  s.msg4_elements = static_cast<std::size_t>(p.t) * (4 * static_cast<std::size_t>(s.L) + 1);
  s.msg4 = s.msg4_elements * lq;
  s.exchange_elements = 1 + (p.sq_pow2 ? 0 : 1) + static_cast<std::size_t>(p.t) * (2 * s.L + 2);
  s.exchange = s.exchange_elements * lq;
  s.input_shares = p.d * lq;
  const double dlq = static_cast<double>(lq);
  s.msg2_bound = (static_cast<double>(p.r) / 2.0 + 2.0) * dlq * dlq;
  const double n_eff = static_cast<double>(p.d) + dlq * static_cast<double>(p.r + 2) / 2.0;
  s.msg4_bound = p.t * (4.0 * std::sqrt(n_eff) + 1.0) * dlq;
  return s;
}

std::size_t NormExchange::element_count(bool pow2) const {
  std::size_t n = 1 + (pow2 ? 0 : 1);
  for (const auto& e : quad) n += e.element_count();
  return n;
}

u128 squared_norm(const Field& f, std::span<const Fe> x) {
  const u128 cap = ~u128{0} >> 1;
  u128 acc = 0;
  for (Fe e : x) {
    const i128 s = f.to_signed(e);
    const u128 mag = static_cast<u128>(s < 0 ? -s : s);
    if (mag > (u128{1} << 63)) return cap;
    const u128 sq = mag * mag;
    if (acc > cap - sq) return cap;
    acc += sq;
  }
  return acc;
}

// ---------------------------------------------------------------------------

NormProver::NormProver(NormParams p, std::vector<Fe> x, Rng rng, ProverHooks hooks)
    : p_(std::move(p)), x_(std::move(x)), rng_(std::move(rng)), hooks_(std::move(hooks)) {
  if (x_.size() != p_.d) throw std::invalid_argument("input length differs from d");
}

std::array<ShareVector, 2> NormProver::share_input() {
  x_shares_ = share_vector(p_.field, x_, rng_);
  return x_shares_;
}

namespace {

// Like wraparound_witness, but never aborts: surplus failing repetitions keep
// g_k = 1 so that the success count still matches.
WraparoundWitness forced_witness(const WraparoundParams& p, std::span<const i128> y, Rng& rng) {
  if (auto w = wraparound_witness(p, y, rng)) return *w;
  WraparoundWitness w;
  w.g.assign(p.r, 1);
  std::size_t zeros = 0;
  const u128 top = static_cast<u128>(p.hi - p.lo);
  for (std::size_t k = 0; k < p.r; ++k) {
    u128 value = top;
    if (y[k] < p.lo || y[k] > p.hi) {
      ++w.failures;
      if (zeros < p.r - p.tau_r) {
        w.g[k] = 0;
        ++zeros;
      }
    } else {
      value = static_cast<u128>(y[k] - p.lo);
    }
    const auto bits = bit_decompose(value, p.b);
    w.v.insert(w.v.end(), bits.begin(), bits.end());
  }
  return w;
}

}  // namespace

std::optional<std::array<NormMsg2, 2>> NormProver::round2(const WraparoundChallenge& z) {
  const Field& f = p_.field;
  const auto y = dot_products(f, z, x_);
  std::optional<WraparoundWitness> w =
      hooks_.never_abort ? std::optional(forced_witness(p_.wrap, y, rng_)) : wraparound_witness(p_.wrap, y, rng_);
  if (!w) return std::nullopt;

  Fe sq = f.zero();
  for (Fe e : x_) sq = f.add(sq, f.mul(e, e));
  const RangeWitness rw = range_witness(f, sq, 0, static_cast<i128>(p_.B));

  assignment_.assign(x_.begin(), x_.end());
  for (auto bit : w->g) assignment_.push_back(Fe{bit});
  for (auto bit : w->v) assignment_.push_back(Fe{bit});
  for (auto bit : rw.v) assignment_.push_back(Fe{bit});
  for (auto bit : rw.u) assignment_.push_back(Fe{bit});
  if (hooks_.assignment) hooks_.assignment(assignment_, z);

  const VarLayout l = var_layout(p_);
  if (assignment_.size() != l.n) throw std::logic_error("assignment hook changed the variable count");
  for (int j = 0; j < 2; ++j) {
    msg2_[j] = NormMsg2{};
    msg2_[j].wrap.verifier = j;
    msg2_[j].sq.verifier = j;
    msg2_[j].sq.pow2 = p_.sq_pow2;
    msg2_[j].sq.b = p_.b_sq;
  }
  for (std::size_t idx = p_.d; idx < l.n; ++idx) {
    const auto [s0, s1] = share(f, assignment_[idx], rng_);
    const std::uint32_t var = static_cast<std::uint32_t>(idx + 1);
    for (int j = 0; j < 2; ++j) {
      const Fe v = j == 0 ? s0.value : s1.value;
      if (var < l.v) {
        msg2_[j].wrap.g.push_back(v);
      } else if (var < l.vp) {
        msg2_[j].wrap.v.push_back(v);
      } else if (var < l.up) {
        msg2_[j].sq.v.push_back(v);
      } else {
        msg2_[j].sq.u.push_back(v);
      }
    }
  }
  sys_ = build_constraints(p_, z);
  return msg2_;
}

std::array<NormMsg4, 2> NormProver::round4(std::span<const Fe> rcs) {
  if (rcs.size() != p_.t) throw std::invalid_argument("need one batching coin per repetition");
  if (assignment_.empty()) throw std::logic_error("round4 called before round2");
  std::array<NormMsg4, 2> out;
  for (Fe rc : rcs) {
    auto proofs = prove_quadratic(p_.field, sys_, assignment_, rc, rng_, hooks_.inner_product);
    out[0].proofs.push_back(std::move(proofs[0]));
    out[1].proofs.push_back(std::move(proofs[1]));
  }
  return out;
}

void check_msg2_shape(const NormParams& p, const NormMsg2& m) {
  if (m.wrap.g.size() != p.r || m.wrap.v.size() != p.r * p.wrap.b) {
    throw std::invalid_argument("wraparound shares have the wrong shape");
  }
  if (m.sq.b != p.b_sq || m.sq.pow2 != p.sq_pow2 || m.sq.v.size() != p.b_sq ||
      m.sq.u.size() != (p.sq_pow2 ? 0 : p.b_sq)) {
    throw std::invalid_argument("squared-norm range shares have the wrong shape");
  }
}

void check_msg4_shape(const NormParams& p, const NormMsg4& m) {
  if (m.proofs.size() != p.t) throw std::invalid_argument("wrong number of inner-product proofs");
  const std::uint32_t L = block_count(var_layout(p).n);
  for (const auto& pr : m.proofs) {
    if (pr.L != L || pr.f_ext.size() != L || pr.g_ext.size() != L || pr.h.size() != 2 * std::size_t{L} + 1) {
      throw std::invalid_argument("inner-product proof has the wrong shape");
    }
  }
}

ShareVector assemble_assignment(const NormParams& p, const ShareVector& x, const NormMsg2& m) {
  if (x.size() != p.d) throw std::invalid_argument("input share length differs from d");
  check_msg2_shape(p, m);
  ShareVector out{x.verifier, {}};
  out.values.reserve(var_layout(p).n);
  out.values.insert(out.values.end(), x.values.begin(), x.values.end());
  out.values.insert(out.values.end(), m.wrap.g.begin(), m.wrap.g.end());
  out.values.insert(out.values.end(), m.wrap.v.begin(), m.wrap.v.end());
  out.values.insert(out.values.end(), m.sq.v.begin(), m.sq.v.end());
  out.values.insert(out.values.end(), m.sq.u.begin(), m.sq.u.end());
  return out;
}

NormExchange norm_verifier_exchange(const NormParams& p, const ShareVector& x, const WraparoundChallenge& z,
                                    const NormMsg2& m2, std::span<const Fe> rcs, const NormMsg4& m4,
                                    std::span<const Fe> rhos) {
  if (rcs.size() != p.t || rhos.size() != p.t) throw std::invalid_argument("need t coins and t evaluation points");
  check_msg4_shape(p, m4);
  const ShareVector xa = assemble_assignment(p, x, m2);
  const ConstraintSystem sys = build_constraints(p, z);
  NormExchange e;
  e.g_sum = g_sum_share(p.field, m2.wrap);
  e.g_sum.verifier = x.verifier;
  e.range_lin = range_linear_share(p.field, m2.sq);
  e.range_lin.verifier = x.verifier;
  for (unsigned k = 0; k < p.t; ++k) {
    e.quad.push_back(quadratic_exchange(p.field, sys, xa, rcs[k], m4.proofs[k], rhos[k]));
  }
  return e;
}

Verdict norm_decide(const NormParams& p, const NormExchange& e0, const NormExchange& e1) {
  const Field& f = p.field;
  if (e0.quad.size() != p.t || e1.quad.size() != p.t) return Verdict::reject(RejectCause::kMalformed);
  if (!linear_equality_check(f, Share{0, e0.g_sum.value}, Share{1, e1.g_sum.value}, f.from_u128(p.tau_r))) {
    return Verdict::reject(RejectCause::kSuccessCount);
  }
  if (!p.sq_pow2 && !linear_equality_check(f, Share{0, e0.range_lin.value}, Share{1, e1.range_lin.value},
                                           f.from_u128(p.B))) {
    return Verdict::reject(RejectCause::kRangeLinear);
  }
  bool ok = true;
  for (unsigned k = 0; k < p.t; ++k) ok = inner_product_decide(f, e0.quad[k], e1.quad[k]) && ok;
  return ok ? Verdict::ok() : Verdict::reject(RejectCause::kQuadratic);
}

Verdict run_norm_interactive(const NormParams& p, std::span<const Fe> x, Rng prover_rng, Rng& coins,
                             const ProverHooks& hooks, InteractiveTranscript* out) {
  NormProver prover(p, std::vector<Fe>(x.begin(), x.end()), std::move(prover_rng), hooks);
  InteractiveTranscript tr;
  tr.inputs = prover.share_input();
  tr.z = sample_challenge(p.r, p.d, coins);
  auto m2 = prover.round2(tr.z);
  if (!m2) {
    if (out) *out = std::move(tr);
    return Verdict::reject(RejectCause::kAbort);
  }
  tr.msg2 = *m2;
  for (unsigned k = 0; k < p.t; ++k) tr.rcs.push_back(coins.uniform(p.field));
  tr.msg4 = prover.round4(tr.rcs);
  const std::uint32_t L = block_count(var_layout(p).n);
  for (unsigned k = 0; k < p.t; ++k) tr.rhos.push_back(sample_rho(p.field, L, coins));
  Verdict v;
  try {
    for (int j = 0; j < 2; ++j) {
      tr.exchange[j] = norm_verifier_exchange(p, tr.inputs[j], tr.z, tr.msg2[j], tr.rcs, tr.msg4[j], tr.rhos);
    }
    v = norm_decide(p, tr.exchange[0], tr.exchange[1]);
  } catch (const std::invalid_argument&) {
    v = Verdict::reject(RejectCause::kMalformed);
  }
  if (out) *out = std::move(tr);
  return v;
}

// ---------------------------------------------------------------------------
// Wire formats.

std::vector<std::uint8_t> serialize(const Field& f, const NormMsg2& m) {
  ByteWriter w;
  w.fes(f, m.wrap.g);
  w.fes(f, m.wrap.v);
  const auto sq = serialize(f, m.sq);
  w.u32(static_cast<std::uint32_t>(sq.size()));
  w.bytes(sq);
  return w.take();
}

NormMsg2 deserialize_msg2(const NormParams& p, int verifier, std::span<const std::uint8_t> in) {
  const Field& f = p.field;
  ByteReader r(in);
  NormMsg2 m;
  m.wrap.verifier = verifier;
  m.wrap.g = r.fes(f, p.r);
  m.wrap.v = r.fes(f, p.r * p.wrap.b);
  const std::uint32_t len = r.u32();
  m.sq = deserialize_range_share(f, verifier, r.bytes(len));
  r.expect_end();
  try {
    check_msg2_shape(p, m);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return m;
}

std::vector<std::uint8_t> serialize(const Field& f, const InnerProductProof& p) {
  ByteWriter w;
  w.u32(p.L);
  w.fes(f, p.f_ext);
  w.fes(f, p.g_ext);
  w.fes(f, p.h);
  return w.take();
}

InnerProductProof read_inner_product_proof(const Field& f, ByteReader& r) {
  InnerProductProof p;
  p.L = r.u32();
  if (p.L == 0 || p.L > (1u << 24)) throw FormatError("inner-product proof block count out of range");
  p.f_ext = r.fes(f, p.L);
  p.g_ext = r.fes(f, p.L);
  p.h = r.fes(f, 2 * std::size_t{p.L} + 1);
  return p;
}

std::vector<std::uint8_t> serialize(const Field& f, const NormMsg4& m) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(m.proofs.size()));
  for (const auto& p : m.proofs) w.bytes(serialize(f, p));
  return w.take();
}

NormMsg4 deserialize_msg4(const NormParams& p, std::span<const std::uint8_t> in) {
  ByteReader r(in);
  const std::uint32_t count = r.u32();
  if (count != p.t) throw FormatError("wrong number of inner-product proofs");
  NormMsg4 m;
  for (std::uint32_t k = 0; k < count; ++k) m.proofs.push_back(read_inner_product_proof(p.field, r));
  r.expect_end();
  try {
    check_msg4_shape(p, m);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return m;
}

void write_exchange(ByteWriter& w, const Field& f, const VerifierExchange& e) {
  w.u32(static_cast<std::uint32_t>(e.f_rho.size()));
  w.fes(f, e.f_rho);
  w.fes(f, e.g_rho);
  w.fe(f, e.h_rho);
  w.fe(f, e.lin);
}

VerifierExchange read_exchange(ByteReader& r, const Field& f, std::uint32_t L) {
  if (r.u32() != L) throw FormatError("quadratic exchange has the wrong width");
  VerifierExchange e;
  e.f_rho = r.fes(f, L);
  e.g_rho = r.fes(f, L);
  e.h_rho = r.fe(f);
  e.lin = r.fe(f);
  return e;
}

std::vector<std::uint8_t> serialize(const Field& f, const NormExchange& e) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(e.g_sum.verifier));
  w.fe(f, e.g_sum.value);
  w.fe(f, e.range_lin.value);
  w.u32(static_cast<std::uint32_t>(e.quad.size()));
  for (const auto& q : e.quad) write_exchange(w, f, q);
  return w.take();
}

NormExchange deserialize_exchange(const NormParams& p, std::span<const std::uint8_t> in) {
  const Field& f = p.field;
  ByteReader r(in);
  NormExchange e;
  const std::uint8_t verifier = r.u8();
  if (verifier > 1) throw FormatError("verifier index must be 0 or 1");
  e.g_sum = Share{verifier, r.fe(f)};
  e.range_lin = Share{verifier, r.fe(f)};
  const std::uint32_t count = r.u32();
  if (count != p.t) throw FormatError("wrong number of quadratic exchanges");
  const std::uint32_t L = block_count(var_layout(p).n);
  for (std::uint32_t k = 0; k < count; ++k) e.quad.push_back(read_exchange(r, f, L));
  r.expect_end();
  return e;
}

}  // namespace pine
