#include "pine/quadratic.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace pine {

namespace {

// Share of X'_idx for this verifier.
inline Fe var_share(const ShareVector& x, std::uint32_t idx) {
  return idx == 0 ? constant_share(x.verifier, Fe{1}) : x.values[idx - 1];
}

Fe ternary_sum(const Field& f, const TernaryTerm& t, const ShareVector& x) {
  const std::int8_t* row = t.data->data() + t.offset;
  Fe s = f.zero();
  for (std::uint32_t k = 0; k < t.len; ++k) {
    if (row[k] == 1) {
      s = f.add(s, var_share(x, t.first + k));
    } else if (row[k] == -1) {
      s = f.sub(s, var_share(x, t.first + k));
    }
  }
  return s;
}

void batch_invert(const Field& f, std::vector<Fe>& v) {
  std::vector<Fe> prefix(v.size());
  Fe acc = f.one();
  for (std::size_t i = 0; i < v.size(); ++i) {
    prefix[i] = acc;
    acc = f.mul(acc, v[i]);
  }
  Fe inv = f.inv(acc);
  for (std::size_t i = v.size(); i-- > 0;) {
    const Fe orig = v[i];
    v[i] = f.mul(inv, prefix[i]);
    inv = f.mul(inv, orig);
  }
}

// Barycentric weights 1 / prod_{k != s}(s - k) over the points 0..count-1.
std::vector<Fe> barycentric_weights(const Field& f, std::uint32_t count) {
  // w_s = (-1)^(count-1-s) / (s! (count-1-s)!)
  std::vector<Fe> fact(count);
  fact[0] = f.one();
  for (std::uint32_t i = 1; i < count; ++i) fact[i] = f.mul(fact[i - 1], Fe{i});
  std::vector<Fe> w(count);
  for (std::uint32_t s = 0; s < count; ++s) {
    w[s] = f.mul(fact[s], fact[count - 1 - s]);
  }
  batch_invert(f, w);
  for (std::uint32_t s = 0; s < count; ++s) {
    if ((count - 1 - s) % 2 == 1) w[s] = f.neg(w[s]);
  }
  return w;
}

// sum_{t=1..L} t^k for k = 0..2L
std::vector<Fe> power_sums(const Field& f, std::uint32_t L) {
  std::vector<Fe> sums(2 * L + 1, f.zero());
  for (std::uint32_t t = 1; t <= L; ++t) {
    Fe p = f.one();
    const Fe tt = f.from_u128(t);
    for (std::uint32_t k = 0; k <= 2 * L; ++k) {
      sums[k] = f.add(sums[k], p);
      p = f.mul(p, tt);
    }
  }
  return sums;
}

void check_domain(const Field& f, std::uint32_t L) {
  if (f.modulus() <= u128{2} * L + 1) {
    throw std::invalid_argument("field too small for the inner-product evaluation domain");
  }
}

}  // namespace

void ConstraintSystem::validate() const {
  for (const auto& c : constraints) {
    for (const auto& t : c.terms) {
      if (t.i > n || t.j > n) throw std::invalid_argument("constraint term index out of range");
    }
    for (const auto& t : c.ternary) {
      if (t.var > n || !t.data || static_cast<std::size_t>(t.first) + t.len > n + 1 ||
          t.offset + t.len > t.data->size()) {
        throw std::invalid_argument("ternary term out of range");
      }
    }
  }
}

Fe evaluate(const Field& f, const QuadraticConstraint& c, std::span<const Fe> xp) {
  Fe acc = f.zero();
  for (const auto& t : c.terms) acc = f.add(acc, f.mul(t.c, f.mul(xp[t.i], xp[t.j])));
  for (const auto& t : c.ternary) {
    Fe s = f.zero();
    const std::int8_t* row = t.data->data() + t.offset;
    for (std::uint32_t k = 0; k < t.len; ++k) {
      if (row[k] == 1) s = f.add(s, xp[t.first + k]);
      if (row[k] == -1) s = f.sub(s, xp[t.first + k]);
    }
    acc = f.add(acc, f.mul(t.c, f.mul(xp[t.var], s)));
  }
  return acc;
}

bool all_satisfied(const Field& f, const ConstraintSystem& sys, std::span<const Fe> xp) {
  for (const auto& c : sys.constraints) {
    if (evaluate(f, c, xp) != c.target) return false;
  }
  return true;
}

QuadraticConstraint bit_constraint(const Field& f, std::uint32_t var) {
  QuadraticConstraint c;
  c.terms.push_back({var, var, f.one()});
  c.terms.push_back({0, var, f.neg(f.one())});
  c.target = f.zero();
  return c;
}

CombinedForm combine_constraints(const Field& f, const ConstraintSystem& sys, Fe rc) {
  if (sys.constraints.empty()) throw std::invalid_argument("no constraints to combine");
  CombinedForm out;
  out.n = sys.n;
  out.b = f.zero();
  Fe pw = f.one();
  for (const auto& c : sys.constraints) {
    for (const auto& t : c.terms) {
      const Fe k = f.mul(t.c, pw);
      if (t.i == 0) {
        out.entries.push_back({t.j, 0, k});
      } else {
        out.entries.push_back({t.i, t.j, k});
      }
    }
    for (auto t : c.ternary) {
      t.c = f.mul(t.c, pw);
      out.ternary.push_back(std::move(t));
    }
    out.b = f.add(out.b, f.mul(c.target, pw));
    pw = f.mul(pw, rc);
  }
  return out;
}

AppliedShares local_matrix_apply(const Field& f, const CombinedForm& a, const ShareVector& x) {
  if (x.size() != a.n) throw std::invalid_argument("share vector length differs from variable count");
  AppliedShares out;
  out.z.verifier = x.verifier;
  out.z.values.assign(a.n, f.zero());
  out.affine = Share{x.verifier, f.zero()};
  for (const auto& e : a.entries) {
    const Fe term = f.mul(e.c, var_share(x, e.col));
    if (e.row == 0) {
      out.affine.value = f.add(out.affine.value, term);
    } else {
      out.z.values[e.row - 1] = f.add(out.z.values[e.row - 1], term);
    }
  }
  for (const auto& t : a.ternary) {
    const Fe term = f.mul(t.c, ternary_sum(f, t, x));
    if (t.var == 0) {
      out.affine.value = f.add(out.affine.value, term);
    } else {
      out.z.values[t.var - 1] = f.add(out.z.values[t.var - 1], term);
    }
  }
  return out;
}

std::uint32_t block_count(std::size_t n) {
  std::uint64_t L = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (L * L < n) ++L;
  while (L > 1 && (L - 1) * (L - 1) >= n) --L;
  return static_cast<std::uint32_t>(L == 0 ? 1 : L);
}

std::vector<Fe> lagrange_basis_at(const Field& f, std::uint32_t points, Fe x) {
  std::vector<Fe> diff(points);
  Fe ell = f.one();
  for (std::uint32_t s = 0; s < points; ++s) {
    diff[s] = f.sub(x, f.from_u128(s));
    if (diff[s].v == 0) throw std::invalid_argument("evaluation point lies in the interpolation set");
    ell = f.mul(ell, diff[s]);
  }
  batch_invert(f, diff);
  std::vector<Fe> w = barycentric_weights(f, points);
  for (std::uint32_t s = 0; s < points; ++s) w[s] = f.mul(ell, f.mul(w[s], diff[s]));
  return w;
}

std::vector<Fe> interpolate_coefficients(const Field& f, std::span<const Fe> y) {
  const auto count = static_cast<std::uint32_t>(y.size());
  if (count == 0) return {};
  // master(x) = prod_{k<count}(x - k), degree count
  std::vector<Fe> master(count + 1, f.zero());
  master[0] = f.one();
  for (std::uint32_t k = 0; k < count; ++k) {
    const Fe neg_k = f.neg(f.from_u128(k));
    for (std::uint32_t i = k + 1; i > 0; --i) {
      master[i] = f.add(master[i - 1], f.mul(master[i], neg_k));
    }
    master[0] = f.mul(master[0], neg_k);
  }
  const std::vector<Fe> w = barycentric_weights(f, count);
  std::vector<Fe> coeffs(count, f.zero());
  std::vector<Fe> q(count);
  for (std::uint32_t s = 0; s < count; ++s) {
    const Fe scale = f.mul(y[s], w[s]);
    if (scale.v == 0) continue;
    // q = master / (x - s)
    const Fe fs = f.from_u128(s);
    q[count - 1] = master[count];
    for (std::uint32_t i = count - 1; i > 0; --i) q[i - 1] = f.add(master[i], f.mul(fs, q[i]));
    for (std::uint32_t i = 0; i < count; ++i) coeffs[i] = f.add(coeffs[i], f.mul(scale, q[i]));
  }
  return coeffs;
}

Fe horner(const Field& f, std::span<const Fe> coeffs, Fe x) {
  Fe acc = f.zero();
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs[i]);
  return acc;
}

InnerProductProof prove_inner_product_plain(const Field& f, std::span<const Fe> u, std::span<const Fe> v,
                                            Rng& rng) {
  if (u.size() != v.size()) throw std::invalid_argument("inner-product vectors differ in length");
  const std::uint32_t L = block_count(u.size());
  check_domain(f, L);
  const std::uint32_t P = L + 1;

  // Block values at points 0..L, row-major per block.
  std::vector<Fe> F(static_cast<std::size_t>(L) * P, f.zero());
  std::vector<Fe> G(static_cast<std::size_t>(L) * P, f.zero());
  InnerProductProof proof;
  proof.L = L;
  proof.f_ext.resize(L);
  proof.g_ext.resize(L);
  for (std::uint32_t j = 0; j < L; ++j) {
    proof.f_ext[j] = rng.uniform(f);
    proof.g_ext[j] = rng.uniform(f);
    F[j * P] = proof.f_ext[j];
    G[j * P] = proof.g_ext[j];
    for (std::uint32_t t = 1; t <= L; ++t) {
      const std::size_t idx = static_cast<std::size_t>(j) * L + (t - 1);
      if (idx < u.size()) {
        F[j * P + t] = u[idx];
        G[j * P + t] = v[idx];
      }
    }
  }

  std::vector<Fe> hv(2 * L + 1, f.zero());
  for (std::uint32_t x = 0; x <= L; ++x) {
    for (std::uint32_t j = 0; j < L; ++j) hv[x] = f.add(hv[x], f.mul(F[j * P + x], G[j * P + x]));
  }
  for (std::uint32_t x = L + 1; x <= 2 * L; ++x) {
    const std::vector<Fe> lam = lagrange_basis_at(f, P, f.from_u128(x));
    for (std::uint32_t j = 0; j < L; ++j) {
      Fe fx = f.zero(), gx = f.zero();
      for (std::uint32_t s = 0; s < P; ++s) {
        fx = f.add(fx, f.mul(lam[s], F[j * P + s]));
        gx = f.add(gx, f.mul(lam[s], G[j * P + s]));
      }
      hv[x] = f.add(hv[x], f.mul(fx, gx));
    }
  }
  proof.h = interpolate_coefficients(f, hv);
  return proof;
}

std::array<InnerProductProof, 2> share_proof(const Field& f, const InnerProductProof& plain, Rng& rng) {
  std::array<InnerProductProof, 2> out;
  auto split = [&](const std::vector<Fe>& src, std::vector<Fe>& a, std::vector<Fe>& b) {
    auto sv = share_vector(f, src, rng);
    a = std::move(sv[0].values);
    b = std::move(sv[1].values);
  };
  out[0].L = out[1].L = plain.L;
  split(plain.f_ext, out[0].f_ext, out[1].f_ext);
  split(plain.g_ext, out[0].g_ext, out[1].g_ext);
  split(plain.h, out[0].h, out[1].h);
  return out;
}

Fe sample_rho(const Field& f, std::uint32_t L, Rng& rng) {
  return Fe{rng.below(f.modulus() - L - 1) + L + 1};
}

VerifierExchange inner_product_exchange(const Field& f, int verifier, const InnerProductProof& proof,
                                        std::span<const Fe> u_share, std::span<const Fe> v_share,
                                        Fe offset_share, Fe rho) {
  (void)verifier;
  const std::uint32_t L = block_count(u_share.size());
  if (u_share.size() != v_share.size() || proof.L != L || proof.f_ext.size() != L || proof.g_ext.size() != L ||
      proof.h.size() != 2 * static_cast<std::size_t>(L) + 1) {
    throw std::invalid_argument("inner-product proof has the wrong shape");
  }
  check_domain(f, L);
  const std::vector<Fe> lam = lagrange_basis_at(f, L + 1, rho);
  VerifierExchange ex;
  ex.f_rho.resize(L);
  ex.g_rho.resize(L);
  for (std::uint32_t j = 0; j < L; ++j) {
    Fe fr = f.mul(lam[0], proof.f_ext[j]);
    Fe gr = f.mul(lam[0], proof.g_ext[j]);
    for (std::uint32_t t = 1; t <= L; ++t) {
      const std::size_t idx = static_cast<std::size_t>(j) * L + (t - 1);
      if (idx >= u_share.size()) break;
      fr = f.add(fr, f.mul(lam[t], u_share[idx]));
      gr = f.add(gr, f.mul(lam[t], v_share[idx]));
    }
    ex.f_rho[j] = fr;
    ex.g_rho[j] = gr;
  }
  ex.h_rho = horner(f, proof.h, rho);
  const std::vector<Fe> sums = power_sums(f, L);
  Fe lin = offset_share;
  for (std::size_t k = 0; k < proof.h.size(); ++k) lin = f.add(lin, f.mul(proof.h[k], sums[k]));
  ex.lin = lin;
  return ex;
}

bool inner_product_decide(const Field& f, const VerifierExchange& e0, const VerifierExchange& e1) {
  if (e0.f_rho.size() != e1.f_rho.size() || e0.g_rho.size() != e1.g_rho.size() ||
      e0.f_rho.size() != e0.g_rho.size()) {
    return false;
  }
  if (f.add(e0.lin, e1.lin).v != 0) return false;
  Fe acc = f.zero();
  for (std::size_t j = 0; j < e0.f_rho.size(); ++j) {
    acc = f.add(acc, f.mul(f.add(e0.f_rho[j], e1.f_rho[j]), f.add(e0.g_rho[j], e1.g_rho[j])));
  }
  return acc == f.add(e0.h_rho, e1.h_rho);
}

void shift_constant(const Field& f, InnerProductProof& plain, Fe gap) {
  plain.h[0] = f.add(plain.h[0], f.mul(gap, f.inv(f.from_u128(plain.L))));
}

void plant_roots(const Field& f, InnerProductProof& plain, Fe gap, Rng& rng) {
  if (gap.v == 0) return;
  const std::uint32_t L = plain.L;
  const std::uint32_t roots = 2 * L;
  if (f.modulus() - L - 1 < roots) throw std::invalid_argument("field too small to plant roots");
  for (;;) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<Fe> s;
    while (s.size() < roots) {
      const Fe x = sample_rho(f, L, rng);
      if (seen.insert(static_cast<std::uint64_t>(x.v ^ (x.v >> 64))).second) s.push_back(x);
    }
    std::vector<Fe> poly(roots + 1, f.zero());
    poly[0] = f.one();
    for (std::uint32_t k = 0; k < roots; ++k) {
      const Fe neg = f.neg(s[k]);
      for (std::uint32_t i = k + 1; i > 0; --i) poly[i] = f.add(poly[i - 1], f.mul(poly[i], neg));
      poly[0] = f.mul(poly[0], neg);
    }
    Fe total = f.zero();
    for (std::uint32_t t = 1; t <= L; ++t) total = f.add(total, horner(f, poly, f.from_u128(t)));
    if (total.v == 0) continue;
    const Fe c = f.mul(gap, f.inv(total));
    for (std::uint32_t i = 0; i <= roots; ++i) plain.h[i] = f.add(plain.h[i], f.mul(c, poly[i]));
    return;
  }
}

std::array<InnerProductProof, 2> prove_quadratic(const Field& f, const ConstraintSystem& sys,
                                                 std::span<const Fe> x_plain, Fe rc, Rng& rng,
                                                 const InnerProductCheat& cheat) {
  const CombinedForm a = combine_constraints(f, sys, rc);
  const ShareVector plain{0, std::vector<Fe>(x_plain.begin(), x_plain.end())};
  const AppliedShares app = local_matrix_apply(f, a, plain);
  InnerProductProof proof = prove_inner_product_plain(f, plain.values, app.z.values, rng);
  if (cheat) {
    Fe ip = f.zero();
    for (std::size_t i = 0; i < plain.size(); ++i) ip = f.add(ip, f.mul(plain.values[i], app.z.values[i]));
    const Fe gap = f.sub(f.sub(a.b, app.affine.value), ip);
    cheat(f, proof, gap, rng);
  }
  return share_proof(f, proof, rng);
}

VerifierExchange quadratic_exchange(const Field& f, const ConstraintSystem& sys, const ShareVector& x_share,
                                    Fe rc, const InnerProductProof& proof, Fe rho) {
  const CombinedForm a = combine_constraints(f, sys, rc);
  const AppliedShares app = local_matrix_apply(f, a, x_share);
  const Fe offset = f.sub(app.affine.value, constant_share(x_share.verifier, a.b));
  return inner_product_exchange(f, x_share.verifier, proof, x_share.values, app.z.values, offset, rho);
}

bool run_quadratic_protocol(const Field& f, const ConstraintSystem& sys, std::span<const Fe> x_plain,
                            const std::array<ShareVector, 2>& x_shares, unsigned t, Rng& prover_rng,
                            Rng& coins, const InnerProductCheat& cheat) {
  if (t == 0) throw std::invalid_argument("at least one repetition is required");
  bool accept = true;
  for (unsigned rep = 0; rep < t; ++rep) {
    const Fe rc = coins.uniform(f);
    const auto proof = prove_quadratic(f, sys, x_plain, rc, prover_rng, cheat);
    const Fe rho = sample_rho(f, proof[0].L, coins);
    const VerifierExchange e0 = quadratic_exchange(f, sys, x_shares[0], rc, proof[0], rho);
    const VerifierExchange e1 = quadratic_exchange(f, sys, x_shares[1], rc, proof[1], rho);
    accept = inner_product_decide(f, e0, e1) && accept;
  }
  return accept;
}

double quadratic_soundness_bound(double n, double m, double q, unsigned t) {
  const double s = std::sqrt(n);
  return std::pow(2 * s / (q - s) + m / q, static_cast<double>(t));
}

}  // namespace pine
