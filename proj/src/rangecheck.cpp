#include "pine/rangecheck.hpp"

#include <stdexcept>

#include "pine/error.hpp"
#include "pine/wire.hpp"

namespace pine {

Fe pow2_fe(const Field& f, unsigned j) {
  if (j < 128) return f.from_u128(u128{1} << j);
  return f.pow(Fe{2}, j);
}

RangeLayout range_layout(i128 lo, i128 hi) {
  if (lo > hi) throw std::invalid_argument("range lower bound exceeds upper bound");
  const u128 width = static_cast<u128>(hi - lo) + 1;
  return RangeLayout{ceil_log2(width), is_power_of_two(width)};
}

void validate_claim(const Field& f, const RangeClaim& claim) {
  const RangeLayout layout = range_layout(claim.lo, claim.hi);
  (void)layout;
  const u128 span = static_cast<u128>(claim.hi - claim.lo);
  if (span > (f.modulus() - 2) / 3 || f.modulus() <= 3 * span + 2) {
    throw std::invalid_argument("range check needs q > 3(hi - lo) + 2");
  }
}

RangeWitness range_witness(const Field& f, Fe value, i128 lo, i128 hi) {
  const RangeLayout layout = range_layout(lo, hi);
  const u128 mask = layout.b >= 128 ? ~u128{0} : (u128{1} << layout.b) - 1;
  RangeWitness w;
  const Fe V = f.sub(value, f.from_int(lo));
  w.v = bit_decompose(V.v & mask, layout.b);
  if (!layout.pow2) {
    const Fe U = f.sub(f.from_int(hi), value);
    w.u = bit_decompose(U.v & mask, layout.b);
  }
  return w;
}

std::array<RangeProofShare, 2> share_range_witness(const Field& f, const RangeWitness& w, bool pow2, Rng& rng) {
  std::array<RangeProofShare, 2> out;
  auto split = [&](const std::vector<std::uint8_t>& bits, std::vector<Fe>& a, std::vector<Fe>& b) {
    for (auto bit : bits) {
      auto [s0, s1] = share(f, Fe{bit}, rng);
      a.push_back(s0.value);
      b.push_back(s1.value);
    }
  };
  for (int j = 0; j < 2; ++j) {
    out[j].verifier = j;
    out[j].pow2 = pow2;
    out[j].b = static_cast<unsigned>(w.v.size());
  }
  split(w.v, out[0].v, out[1].v);
  split(w.u, out[0].u, out[1].u);
  return out;
}

std::array<RangeProofShare, 2> prove_range(const Field& f, std::span<const Fe> q_values, const RangeClaim& claim,
                                           Rng& rng) {
  validate_claim(f, claim);
  if (q_values.size() != claim.coeffs.size()) throw std::invalid_argument("value count differs from coefficients");
  Fe value = f.zero();
  for (std::size_t i = 0; i < q_values.size(); ++i) value = f.add(value, f.mul(claim.coeffs[i], q_values[i]));
  const RangeLayout layout = range_layout(claim.lo, claim.hi);
  return share_range_witness(f, range_witness(f, value, claim.lo, claim.hi), layout.pow2, rng);
}

Share range_linear_share(const Field& f, const RangeProofShare& s) {
  Fe acc = f.zero();
  for (std::size_t j = 0; j < s.v.size(); ++j) acc = f.add(acc, f.mul(pow2_fe(f, static_cast<unsigned>(j)), s.v[j]));
  for (std::size_t j = 0; j < s.u.size(); ++j) acc = f.add(acc, f.mul(pow2_fe(f, static_cast<unsigned>(j)), s.u[j]));
  return Share{s.verifier, acc};
}

bool verify_range_linear(const Field& f, const RangeProofShare& s0, const RangeProofShare& s1,
                         const RangeClaim& claim) {
  const RangeLayout layout = range_layout(claim.lo, claim.hi);
  for (const auto* s : {&s0, &s1}) {
    if (s->b != layout.b || s->pow2 != layout.pow2 || s->v.size() != layout.b ||
        s->u.size() != (layout.pow2 ? 0 : layout.b)) {
      return false;
    }
  }
  if (layout.pow2) return true;
  return linear_equality_check(f, range_linear_share(f, s0), range_linear_share(f, s1),
                               f.from_int(claim.hi - claim.lo));
}

RangeResidual residual_constraints(const Field& f, const RangeClaim& claim, std::span<const std::uint32_t> q_vars,
                                   std::uint32_t v_base, std::uint32_t u_base) {
  if (q_vars.size() != claim.coeffs.size()) throw std::invalid_argument("variable count differs from coefficients");
  const RangeLayout layout = range_layout(claim.lo, claim.hi);
  RangeResidual out;
  for (std::size_t i = 0; i < q_vars.size(); ++i) out.relation.terms.push_back({0, q_vars[i], claim.coeffs[i]});
  for (unsigned j = 0; j < layout.b; ++j) {
    out.relation.terms.push_back({0, v_base + j, f.neg(pow2_fe(f, j))});
  }
  out.relation.target = f.from_int(claim.lo);
  for (unsigned j = 0; j < layout.b; ++j) out.bitness.push_back(bit_constraint(f, v_base + j));
  if (!layout.pow2) {
    for (unsigned j = 0; j < layout.b; ++j) out.bitness.push_back(bit_constraint(f, u_base + j));
  }
  return out;
}

RangeProofShare simulate_range_share(const Field& f, const RangeClaim& claim, int verifier, Rng& rng) {
  const RangeLayout layout = range_layout(claim.lo, claim.hi);
  RangeProofShare s;
  s.verifier = verifier;
  s.pow2 = layout.pow2;
  s.b = layout.b;
  for (unsigned j = 0; j < layout.b; ++j) s.v.push_back(rng.uniform(f));
  if (!layout.pow2) {
    for (unsigned j = 0; j < layout.b; ++j) s.u.push_back(rng.uniform(f));
  }
  return s;
}

std::vector<std::uint8_t> serialize(const Field& f, const RangeProofShare& s) {
  ByteWriter w;
  w.u8(s.pow2 ? 1 : 0);
  w.u32(s.b);
  w.fes(f, s.v);
  w.fes(f, s.u);
  return w.take();
}

RangeProofShare deserialize_range_share(const Field& f, int verifier, std::span<const std::uint8_t> in) {
  ByteReader r(in);
  RangeProofShare s;
  s.verifier = verifier;
  const std::uint8_t mode = r.u8();
  if (mode > 1) throw FormatError("unknown range-proof mode");
  s.pow2 = mode == 1;
  s.b = r.u32();
  if (s.b > 128) throw FormatError("range-proof width too large");
  s.v = r.fes(f, s.b);
  if (!s.pow2) s.u = r.fes(f, s.b);
  r.expect_end();
  return s;
}

}  // namespace pine
