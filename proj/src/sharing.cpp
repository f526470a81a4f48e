#include "pine/sharing.hpp"

#include <stdexcept>

#include "pine/error.hpp"
#include "pine/wire.hpp"

namespace pine {

std::pair<Share, Share> share_with(const Field& f, Fe x, Fe r) {
  return {Share{0, r}, Share{1, f.sub(x, r)}};
}

std::pair<Share, Share> share(const Field& f, Fe x, Rng& rng) { return share_with(f, x, rng.uniform(f)); }

std::array<ShareVector, 2> share_vector(const Field& f, std::span<const Fe> x, Rng& rng) {
  std::array<ShareVector, 2> out{ShareVector{0, {}}, ShareVector{1, {}}};
  out[0].values.reserve(x.size());
  out[1].values.reserve(x.size());
  for (Fe v : x) {
    auto [s0, s1] = share(f, v, rng);
    out[0].values.push_back(s0.value);
    out[1].values.push_back(s1.value);
  }
  return out;
}

Fe reconstruct(const Field& f, const Share& a, const Share& b) {
  if (a.verifier + b.verifier != 1 || a.verifier * b.verifier != 0) {
    throw std::invalid_argument("reconstruct needs one share from each verifier");
  }
  return f.add(a.value, b.value);
}

std::vector<Fe> reconstruct(const Field& f, const ShareVector& a, const ShareVector& b) {
  if (a.verifier + b.verifier != 1 || a.verifier * b.verifier != 0) {
    throw std::invalid_argument("reconstruct needs one share vector from each verifier");
  }
  if (a.size() != b.size()) throw std::invalid_argument("share vectors differ in length");
  std::vector<Fe> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a.values[i], b.values[i]);
  return out;
}

Share local_linear(const Field& f, std::span<const Fe> alpha, const ShareVector& x) {
  if (alpha.size() != x.size()) throw std::invalid_argument("coefficient count differs from share count");
  Fe acc = f.zero();
  for (std::size_t i = 0; i < alpha.size(); ++i) acc = f.add(acc, f.mul(alpha[i], x.values[i]));
  return Share{x.verifier, acc};
}

bool linear_equality_check(const Field& f, const Share& z0, const Share& z1, Fe z) {
  return reconstruct(f, z0, z1) == z;
}

std::vector<std::uint8_t> serialize(const Field& f, const ShareVector& s) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(s.verifier));
  w.u32(static_cast<std::uint32_t>(s.size()));
  w.fes(f, s.values);
  return w.take();
}

ShareVector deserialize_share_vector(const Field& f, std::span<const std::uint8_t> in) {
  ByteReader r(in);
  ShareVector s;
  s.verifier = r.u8();
  if (s.verifier > 1) throw FormatError("verifier index out of range");
  s.values = r.fes(f, r.u32());
  r.expect_end();
  return s;
}

}  // namespace pine
