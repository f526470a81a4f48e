#include "pine/wraparound.hpp"

#include <cmath>
#include <stdexcept>

#include "pine/error.hpp"
#include "pine/rangecheck.hpp"

namespace pine {

WraparoundParams make_wraparound_params(std::size_t d, std::uint64_t B, std::size_t r, std::size_t tau_r,
                                        double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  if (B == 0) throw std::invalid_argument("norm bound B must be positive");
  if (tau_r > r || (r > 0 && 2 * tau_r <= r)) throw std::invalid_argument("tau*r must lie in (r/2, r]");

  WraparoundParams p;
  p.d = d;
  p.B = B;
  p.r = r;
  p.tau_r = tau_r;
  p.eta = eta;
  p.alpha0 = std::sqrt(std::log(2.0 / eta));
  const double sqrtB = std::sqrt(static_cast<double>(B));
  p.A = p.alpha0 * sqrtB;
  const auto a_ceil = static_cast<u128>(std::ceil(p.A));
  p.b = ceil_log2(2 * a_ceil + 1);
  if (p.b > 62) throw std::invalid_argument("wraparound window too wide");
  const i128 half = i128{1} << (p.b - 1);
  p.lo = -(half - 1);
  p.hi = half;
  p.alpha_hat = static_cast<double>(half - 1) / sqrtB;
  p.eta_hat = std::min(1.0, 2.0 * std::exp(-p.alpha_hat * p.alpha_hat));
  return p;
}

bool wraparound_field_ok(const Field& f, const WraparoundParams& p) {
  const double q = std::ldexp(static_cast<double>(f.modulus() >> 64), 64) +
                   static_cast<double>(static_cast<std::uint64_t>(f.modulus()));
  const double bl = static_cast<double>(p.B) * std::log(2.0 / p.eta);
  if (q < bl / 4000.0 || q < 2600.0 * std::sqrt(bl) || q < 2.0 * static_cast<double>(p.r)) return false;
  const u128 w = p.window_width();
  return f.modulus() > 3 * (w - 1) + 2;
}

std::int8_t ternary_from_bits(unsigned two_bits) {
  switch (two_bits & 3) {
    case 1:
      return 1;
    case 2:
      return -1;
    default:
      return 0;
  }
}

WraparoundChallenge sample_challenge(std::size_t r, std::size_t d, Rng& rng) {
  auto z = std::make_shared<std::vector<std::int8_t>>(r * d);
  std::uint64_t word = 0;
  unsigned left = 0;
  for (auto& e : *z) {
    if (left == 0) {
      word = rng();
      left = 32;
    }
    e = ternary_from_bits(static_cast<unsigned>(word & 3));
    word >>= 2;
    --left;
  }
  return WraparoundChallenge{r, d, std::move(z)};
}

WraparoundChallenge challenge_from_bytes(std::size_t r, std::size_t d, std::span<const std::uint8_t> bytes) {
  if (bytes.size() * 4 < r * d) throw std::invalid_argument("not enough bytes for the challenge");
  auto z = std::make_shared<std::vector<std::int8_t>>(r * d);
  for (std::size_t i = 0; i < r * d; ++i) {
    (*z)[i] = ternary_from_bits(static_cast<unsigned>(bytes[i / 4] >> (2 * (i % 4))));
  }
  return WraparoundChallenge{r, d, std::move(z)};
}

std::vector<std::uint8_t> encode_challenge(const WraparoundChallenge& z) {
  std::vector<std::uint8_t> out((z.r * z.d + 3) / 4, 0);
  for (std::size_t i = 0; i < z.r * z.d; ++i) {
    const std::int8_t e = (*z.z)[i];
    const unsigned code = e == 1 ? 1 : (e == -1 ? 2 : 0);
    out[i / 4] |= static_cast<std::uint8_t>(code << (2 * (i % 4)));
  }
  return out;
}

WraparoundChallenge decode_challenge(std::size_t r, std::size_t d, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != (r * d + 3) / 4) throw FormatError("challenge has the wrong length");
  for (std::size_t i = 0; i < r * d; ++i) {
    if (((bytes[i / 4] >> (2 * (i % 4))) & 3) == 3) throw FormatError("invalid challenge code 11");
  }
  for (std::size_t i = r * d; i < bytes.size() * 4; ++i) {
    if (((bytes[i / 4] >> (2 * (i % 4))) & 3) != 0) throw FormatError("non-zero challenge padding");
  }
  return challenge_from_bytes(r, d, bytes);
}

std::vector<i128> dot_products(const Field& f, const WraparoundChallenge& z, std::span<const Fe> x) {
  if (x.size() != z.d) throw std::invalid_argument("vector length differs from challenge width");
  std::vector<i128> xs(x.size());
  bool small = true;
  const i128 limit = i128{1} << 64;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xs[i] = f.to_signed(x[i]);
    if (xs[i] >= limit || xs[i] <= -limit) small = false;
  }
  std::vector<i128> y(z.r);
  for (std::size_t k = 0; k < z.r; ++k) {
    const std::int8_t* row = z.z->data() + k * z.d;
    if (small) {
      i128 acc = 0;
      for (std::size_t i = 0; i < z.d; ++i) acc += row[i] * xs[i];
      y[k] = f.to_signed(f.from_int(acc));
    } else {
      Fe acc = f.zero();
      for (std::size_t i = 0; i < z.d; ++i) {
        if (row[i] == 1) acc = f.add(acc, x[i]);
        if (row[i] == -1) acc = f.sub(acc, x[i]);
      }
      y[k] = f.to_signed(acc);
    }
  }
  return y;
}

std::optional<WraparoundWitness> wraparound_witness(const WraparoundParams& p, std::span<const i128> y, Rng& rng) {
  if (y.size() != p.r) throw std::invalid_argument("need one dot product per repetition");
  const std::size_t zeros = p.r - p.tau_r;
  WraparoundWitness w;
  w.g.assign(p.r, 1);
  w.v.reserve(p.r * p.b);
  const u128 top = static_cast<u128>(p.hi - p.lo);
  std::vector<std::size_t> passed;
  for (std::size_t k = 0; k < p.r; ++k) {
    u128 value;
    if (y[k] < p.lo || y[k] > p.hi) {
      w.g[k] = 0;
      ++w.failures;
      value = top;
    } else {
      passed.push_back(k);
      value = static_cast<u128>(y[k] - p.lo);
    }
    const auto bits = bit_decompose(value, p.b);
    w.v.insert(w.v.end(), bits.begin(), bits.end());
  }
  if (w.failures > zeros) return std::nullopt;
  // Zero out a uniformly random subset of the passing repetitions.
  std::size_t extra = zeros - w.failures;
  for (std::size_t i = 0; i < extra; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(passed.size() - i)));
    std::swap(passed[i], passed[j]);
    w.g[passed[i]] = 0;
  }
  return w;
}

std::optional<WraparoundWitness> prove_wraparound(const Field& f, const WraparoundParams& p,
                                                  const WraparoundChallenge& z, std::span<const Fe> x, Rng& rng) {
  if (z.r != p.r || z.d != p.d) throw std::invalid_argument("challenge shape differs from parameters");
  const auto y = dot_products(f, z, x);
  return wraparound_witness(p, y, rng);
}

std::array<WraparoundShare, 2> share_wraparound(const Field& f, const WraparoundWitness& w, Rng& rng) {
  std::array<WraparoundShare, 2> out;
  out[0].verifier = 0;
  out[1].verifier = 1;
  for (auto bit : w.g) {
    auto [s0, s1] = share(f, Fe{bit}, rng);
    out[0].g.push_back(s0.value);
    out[1].g.push_back(s1.value);
  }
  for (auto bit : w.v) {
    auto [s0, s1] = share(f, Fe{bit}, rng);
    out[0].v.push_back(s0.value);
    out[1].v.push_back(s1.value);
  }
  return out;
}

std::vector<Fe> compute_sk_share(const Field& f, const ShareVector& x, const WraparoundChallenge& z,
                                 const WraparoundShare& w, const WraparoundParams& p) {
  if (x.size() != z.d || z.r != p.r || w.v.size() != p.r * p.b) {
    throw std::invalid_argument("shapes differ from parameters");
  }
  const Fe shift = constant_share(x.verifier, f.neg(f.from_int(p.lo)));
  std::vector<Fe> s(p.r);
  for (std::size_t k = 0; k < p.r; ++k) {
    Fe acc = shift;
    const std::int8_t* row = z.z->data() + k * z.d;
    for (std::size_t i = 0; i < z.d; ++i) {
      if (row[i] == 1) acc = f.add(acc, x.values[i]);
      if (row[i] == -1) acc = f.sub(acc, x.values[i]);
    }
    for (unsigned j = 0; j < p.b; ++j) acc = f.sub(acc, f.mul(pow2_fe(f, j), w.v[k * p.b + j]));
    s[k] = acc;
  }
  return s;
}

Share g_sum_share(const Field& f, const WraparoundShare& w) {
  Fe acc = f.zero();
  for (Fe g : w.g) acc = f.add(acc, g);
  return Share{w.verifier, acc};
}

bool success_count_check(const Field& f, const Share& g0, const Share& g1, const WraparoundParams& p) {
  return linear_equality_check(f, g0, g1, f.from_u128(p.tau_r));
}

WraparoundShare simulate_wraparound_share(const Field& f, const WraparoundParams& p, int verifier, Rng& rng) {
  WraparoundShare s;
  s.verifier = verifier;
  for (std::size_t k = 0; k < p.r; ++k) s.g.push_back(rng.uniform(f));
  for (std::size_t k = 0; k < p.r * p.b; ++k) s.v.push_back(rng.uniform(f));
  return s;
}

}  // namespace pine
