#include "pine/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pine/error.hpp"
#include "pine/wire.hpp"

namespace pine {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kHonest:
      return "honest";
    case Strategy::kOverNorm:
      return "over_norm";
    case Strategy::kBitCheater:
      return "bit_cheater";
    case Strategy::kShiftConstant:
      return "shift_constant";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view s) {
  for (Strategy v : {Strategy::kHonest, Strategy::kOverNorm, Strategy::kBitCheater, Strategy::kShiftConstant}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::vector<Fe> to_field(const Field& f, std::span<const std::int64_t> x) {
  std::vector<Fe> out;
  out.reserve(x.size());
  for (auto v : x) out.push_back(f.from_int(v));
  return out;
}

// ---------------------------------------------------------------------------
// Adversaries.

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto a = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (a * a > n) --a;
  while ((a + 1) * (a + 1) <= n) ++a;
  return a;
}

// n as a sum of exactly k squares (zeros allowed), largest first.
bool split_squares(std::uint64_t n, std::size_t k, std::vector<std::int64_t>& out) {
  if (k == 0) return n == 0;
  if (k == 1) {
    const std::uint64_t a = isqrt(n);
    if (a * a != n) return false;
    out.push_back(static_cast<std::int64_t>(a));
    return true;
  }
  for (std::uint64_t a = isqrt(n) + 1; a-- > 0;) {
    out.push_back(static_cast<std::int64_t>(a));
    if (split_squares(n - a * a, k - 1, out)) return true;
    out.pop_back();
  }
  return false;
}

}  // namespace

std::vector<std::int64_t> vector_with_squared_norm(std::size_t d, std::uint64_t target) {
  std::vector<std::int64_t> x;
  std::uint64_t left = target;
  while (d - x.size() > 4) {
    const std::uint64_t a = isqrt(left);
    x.push_back(static_cast<std::int64_t>(a));
    left -= a * a;
  }
  if (!split_squares(left, d - x.size(), x)) {
    throw std::invalid_argument("cannot reach the requested squared norm with d coordinates");
  }
  return x;
}

void forge_recomposition(const Field& f, std::span<Fe> bits, Fe value) {
  if (bits.empty()) return;
  Fe rec = f.zero();
  for (std::size_t j = 0; j < bits.size(); ++j) {
    bits[j] = Fe{j < 128 ? (value.v >> j) & 1 : 0};
    rec = f.add(rec, f.mul(pow2_fe(f, static_cast<unsigned>(j)), bits[j]));
  }
  bits[0] = f.add(bits[0], f.sub(value, rec));
}

namespace {

std::vector<Fe> scrambled(const Field& f, std::vector<std::int64_t> x, Rng& rng) {
  for (std::size_t i = x.size(); i > 1; --i) std::swap(x[i - 1], x[rng.below(static_cast<std::uint64_t>(i))]);
  for (auto& v : x) {
    if (rng.bit()) v = -v;
  }
  return to_field(f, x);
}

void forge_square_bits(const Field& f, std::vector<Fe>& a, std::size_t d, std::size_t vp0, unsigned b_sq, bool pow2,
                       std::uint64_t B) {
  Fe sq = f.zero();
  for (std::size_t i = 0; i < d; ++i) sq = f.add(sq, f.mul(a[i], a[i]));
  forge_recomposition(f, std::span<Fe>(a.data() + vp0, b_sq), sq);
  if (!pow2) forge_recomposition(f, std::span<Fe>(a.data() + vp0 + b_sq, b_sq), f.sub(f.from_u128(B), sq));
}

}  // namespace

Adversary over_norm(const NormParams& p, std::int64_t delta, Rng& rng) {
  Adversary a;
  const auto target = static_cast<std::uint64_t>(static_cast<std::int64_t>(p.B) + delta);
  a.x = scrambled(p.field, vector_with_squared_norm(p.d, target), rng);
  const VarLayout l = var_layout(p);
  a.hooks.assignment = [p, l](std::vector<Fe>& asg, const WraparoundChallenge&) {
    forge_square_bits(p.field, asg, p.d, l.vp - 1, p.b_sq, p.sq_pow2, p.B);
  };
  a.hooks.inner_product = plant_roots;
  a.hooks.never_abort = true;
  return a;
}

Adversary over_norm(const DzkParams& p, std::int64_t delta, Rng& rng) {
  Adversary a;
  const auto target = static_cast<std::uint64_t>(static_cast<std::int64_t>(p.B) + delta);
  a.x = scrambled(p.field, vector_with_squared_norm(p.d, target), rng);
  a.dzk_hooks.assignment = [p](std::vector<Fe>& asg) {
    forge_square_bits(p.field, asg, p.d, p.d, p.b_sq, p.sq_pow2, p.B);
  };
  a.dzk_hooks.inner_product = plant_roots;
  return a;
}

Adversary bit_cheater(const NormParams& p, std::span<const Fe> x) {
  if (p.r == 0 || p.wrap.b < 2) throw std::invalid_argument("bit cheater needs r >= 1 and b >= 2");
  Adversary a;
  a.x.assign(x.begin(), x.end());
  const std::size_t v00 = var_layout(p).v - 1;
  a.hooks.assignment = [f = p.field, v00](std::vector<Fe>& asg, const WraparoundChallenge&) {
    // +2 on bit 0 and -1 on bit 1 leave sum_j 2^j v_{0,j} unchanged.
    asg[v00] = f.add(asg[v00], Fe{2});
    asg[v00 + 1] = f.sub(asg[v00 + 1], Fe{1});
  };
  a.hooks.inner_product = plant_roots;
  return a;
}

Adversary shift_cheater(const NormParams& p, std::int64_t delta, Rng& rng) {
  Adversary a = over_norm(p, delta, rng);
  a.hooks.inner_product = [](const Field& f, InnerProductProof& proof, Fe gap, Rng&) { shift_constant(f, proof, gap); };
  return a;
}

std::vector<std::int64_t> wraparound_case_one(u128 q, std::size_t d) {
  std::vector<std::int64_t> x(d, 0);
  auto a = static_cast<std::int64_t>(std::ceil(std::sqrt(to_double(q))));
  while (static_cast<u128>(a) * static_cast<u128>(a) < q) ++a;
  x[0] = a;
  return x;
}

std::vector<std::int64_t> wraparound_case_two(u128 q, std::size_t d) {
  auto a = static_cast<std::int64_t>(std::ceil(std::sqrt(to_double(q) / static_cast<double>(d))));
  while (static_cast<u128>(a) * static_cast<u128>(a) * d < q) ++a;
  return std::vector<std::int64_t>(d, a);
}

std::vector<std::uint8_t> fs_tamper(std::span<const std::uint8_t> proof, std::size_t position, std::uint8_t mask) {
  std::vector<std::uint8_t> out(proof.begin(), proof.end());
  if (out.empty()) return out;
  out[position % out.size()] ^= mask == 0 ? 1 : mask;
  return out;
}

// ---------------------------------------------------------------------------
// Transcripts.

namespace {

void put(ByteWriter& w, const std::vector<std::uint8_t>& b) {
  w.u32(static_cast<std::uint32_t>(b.size()));
  w.bytes(b);
}

std::span<const std::uint8_t> get(ByteReader& r) { return r.bytes(r.u32()); }

}  // namespace

std::vector<std::uint8_t> serialize_transcript(const NormParams& p, const InteractiveTranscript& t) {
  const Field& f = p.field;
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(Variant::kStatistical));
  put(w, encode_statement(p));
  for (int j = 0; j < 2; ++j) put(w, serialize(f, t.inputs[j]));
  put(w, encode_challenge(t.z));
  const bool complete = !t.msg4[0].proofs.empty();
  w.u8(complete ? 1 : 0);
  if (!complete) return w.take();
  for (int j = 0; j < 2; ++j) put(w, serialize(f, t.msg2[j]));
  w.u32(static_cast<std::uint32_t>(t.rcs.size()));
  w.fes(f, t.rcs);
  for (int j = 0; j < 2; ++j) put(w, serialize(f, t.msg4[j]));
  w.u32(static_cast<std::uint32_t>(t.rhos.size()));
  w.fes(f, t.rhos);
  for (int j = 0; j < 2; ++j) put(w, serialize(f, t.exchange[j]));
  return w.take();
}

InteractiveTranscript parse_transcript(const NormParams& p, std::span<const std::uint8_t> in) {
  const Field& f = p.field;
  ByteReader r(in);
  if (r.u8() != static_cast<std::uint8_t>(Variant::kStatistical)) throw FormatError("not a statistical transcript");
  const auto stmt = get(r);
  if (!std::ranges::equal(stmt, encode_statement(p))) throw FormatError("transcript belongs to other parameters");
  InteractiveTranscript t;
  for (int j = 0; j < 2; ++j) {
    t.inputs[j] = deserialize_share_vector(f, get(r));
    if (t.inputs[j].verifier != j) throw FormatError("input share order");
  }
  t.z = decode_challenge(p.r, p.d, get(r));
  const std::uint8_t complete = r.u8();
  if (complete > 1) throw FormatError("bad completion flag");
  if (complete == 1) {
    for (int j = 0; j < 2; ++j) t.msg2[j] = deserialize_msg2(p, j, get(r));
    t.rcs = r.fes(f, r.u32());
    for (int j = 0; j < 2; ++j) t.msg4[j] = deserialize_msg4(p, get(r));
    t.rhos = r.fes(f, r.u32());
    for (int j = 0; j < 2; ++j) t.exchange[j] = deserialize_exchange(p, get(r));
  }
  r.expect_end();
  return t;
}

std::vector<std::uint8_t> serialize_transcript(const DzkParams& p, const DzkTranscript& t) {
  const Field& f = p.field;
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(Variant::kDzk));
  put(w, encode_statement(p));
  for (int j = 0; j < 2; ++j) {
    put(w, serialize(f, t.msg1[j].x));
    put(w, serialize(f, t.msg1[j].sq));
  }
  w.u32(static_cast<std::uint32_t>(t.rcs.size()));
  w.fes(f, t.rcs);
  for (int j = 0; j < 2; ++j) put(w, serialize(f, t.msg3[j]));
  w.u32(static_cast<std::uint32_t>(t.rhos.size()));
  w.fes(f, t.rhos);
  for (int j = 0; j < 2; ++j) put(w, serialize(f, t.exchange[j]));
  return w.take();
}

// ---------------------------------------------------------------------------
// Sessions.

namespace {

std::size_t msg2_count(const NormMsg2& m) { return m.wrap.g.size() + m.wrap.v.size() + m.sq.v.size() + m.sq.u.size(); }

std::size_t proof_count(const std::vector<InnerProductProof>& proofs) {
  std::size_t n = 0;
  for (const auto& p : proofs) n += p.element_count();
  return n;
}

Adversary make_adversary(const SessionConfig& cfg, Rng& rng) {
  const bool stat = cfg.variant == Variant::kStatistical;
  switch (cfg.strategy) {
    case Strategy::kHonest: {
      Adversary a;
      a.x = cfg.x;
      return a;
    }
    case Strategy::kOverNorm:
      return stat ? over_norm(cfg.norm, cfg.over_norm_delta, rng) : over_norm(cfg.dzk, cfg.over_norm_delta, rng);
    case Strategy::kBitCheater:
      if (!stat) throw std::invalid_argument("bit_cheater targets the statistical variant");
      return bit_cheater(cfg.norm, cfg.x);
    case Strategy::kShiftConstant:
      if (!stat) throw std::invalid_argument("shift_constant targets the statistical variant");
      return shift_cheater(cfg.norm, cfg.over_norm_delta, rng);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace

Outcome run_session(const SessionConfig& cfg, std::vector<std::uint8_t>* transcript) {
  const auto start = std::chrono::steady_clock::now();
  Rng master(cfg.seed);
  Rng client = master.derive("client");
  Rng coins = master.derive("coins");
  Rng adv_rng = master.derive("adversary");
  const Adversary adv = make_adversary(cfg, adv_rng);
  Outcome out;

  if (cfg.non_interactive) {
    std::vector<std::uint8_t> bytes;
    try {
      const NiProof proof = cfg.variant == Variant::kStatistical
                                ? ni_prove(cfg.norm, adv.x, client, {}, nullptr, adv.hooks)
                                : ni_prove(cfg.dzk, adv.x, client, {}, adv.dzk_hooks);
      bytes = serialize(proof);
      out.verdict = ni_verify(bytes);
    } catch (const std::runtime_error&) {
      out.verdict = Verdict::reject(RejectCause::kAbort);
    }
    out.transcript_bytes = bytes.size();
    if (transcript) *transcript = std::move(bytes);
  } else if (cfg.variant == Variant::kStatistical) {
    const NormParams& p = cfg.norm;
    InteractiveTranscript tr;
    out.verdict = run_norm_interactive(p, adv.x, client, coins, adv.hooks, &tr);
    out.msg1_bits = 2ull * tr.z.r * tr.z.d;
    out.msg2_elements = msg2_count(tr.msg2[0]);
    out.msg3_elements = tr.rcs.size();
    out.msg4_elements = proof_count(tr.msg4[0].proofs);
    out.exchange_elements = tr.exchange[0].quad.empty() ? 0 : tr.exchange[0].element_count(p.sq_pow2);
    auto bytes = serialize_transcript(p, tr);
    out.transcript_bytes = bytes.size();
    if (transcript) *transcript = std::move(bytes);
  } else {
    const DzkParams& p = cfg.dzk;
    DzkTranscript tr;
    out.verdict = run_dzk_interactive(p, adv.x, client, coins, adv.dzk_hooks, &tr);
    out.msg2_elements = tr.msg1[0].sq.v.size() + tr.msg1[0].sq.u.size();
    out.msg3_elements = tr.rcs.size();
    out.msg4_elements = proof_count(tr.msg3[0].proofs);
    std::size_t ex = p.sq_pow2 ? 0 : 1;
    for (const auto& q : tr.exchange[0].quad) ex += q.element_count();
    out.exchange_elements = ex;
    auto bytes = serialize_transcript(p, tr);
    out.transcript_bytes = bytes.size();
    if (transcript) *transcript = std::move(bytes);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo.

RateEstimate wilson(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("at least one trial is required");
  RateEstimate e;
  e.trials = trials;
  e.successes = successes;
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  e.rate = ph;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
  e.lo = std::max(0.0, center - half);
  e.hi = std::min(1.0, center + half);
  return e;
}

RateEstimate monte_carlo(std::size_t trials, const std::function<bool(std::size_t)>& trial, unsigned jobs) {
  if (trials == 0) throw std::invalid_argument("at least one trial is required");
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::size_t>(trials, 256))));
  std::atomic<std::size_t> hits{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&](unsigned k) {
    try {
      std::size_t local = 0;
      for (std::size_t i = k; i < trials; i += jobs) local += trial(i) ? 1 : 0;
      hits += local;
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker, k);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return wilson(hits.load(), trials);
}

std::string csv_header() { return "strategy,params,trials,accepts,rate,ci_lo,ci_hi"; }

std::string csv_row(std::string_view strategy, std::string_view params, const RateEstimate& e) {
  std::ostringstream s;
  s << strategy << ",\"" << params << "\"," << e.trials << ',' << e.successes << ',' << std::setprecision(6) << e.rate
    << ',' << e.lo << ',' << e.hi;
  return s.str();
}

}  // namespace pine
