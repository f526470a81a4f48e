#include "pine/session.hpp"

#include <stdexcept>

#include "pine/error.hpp"
#include "pine/wire.hpp"

namespace pine {

namespace {

constexpr std::uint8_t kMagic[4] = {'P', 'I', 'N', 'E'};
constexpr std::uint64_t kMaxDimension = std::uint64_t{1} << 32;

void write_modulus(ByteWriter& w, u128 q) {
  w.u64(static_cast<std::uint64_t>(q));
  w.u64(static_cast<std::uint64_t>(q >> 64));
}

Field read_field(ByteReader& r) {
  const std::uint64_t lo = r.u64();
  const std::uint64_t hi = r.u64();
  try {
    return Field((static_cast<u128>(hi) << 64) | lo);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("statement modulus: ") + e.what());
  }
}

Digest random_digest(Rng& rng) {
  Digest d;
  rng.fill(d);
  return d;
}

Rng child_rng(Rng& rng) {
  std::array<std::uint8_t, 32> key;
  rng.fill(key);
  return Rng::from_key(key);
}

std::vector<Fe> expand_coins(const Field& f, const Digest& seed, unsigned t) {
  ChallengeStream s(seed, "rc");
  std::vector<Fe> out;
  for (unsigned k = 0; k < t; ++k) out.push_back(s.field_element(f));
  return out;
}

std::vector<Fe> expand_rhos(const Field& f, const Digest& seed, unsigned t, std::uint32_t L) {
  ChallengeStream s(seed, "rho");
  std::vector<Fe> out;
  for (unsigned k = 0; k < t; ++k) out.push_back(s.rho(f, L));
  return out;
}

// Recomputes this verifier's hashes and the combined challenges from its slice.
struct Replay {
  std::vector<Digest> own;
  std::vector<Digest> combined;
};

Replay replay(const NiProof& proof, const NiSlice& slice) {
  Replay out;
  const Digest input = sha256(slice.input);
  Digest prev{};
  for (std::size_t i = 0; i < slice.rounds.size(); ++i) {
    const auto round = static_cast<std::uint32_t>(i + 1);
    const NiRound& nr = slice.rounds[i];
    const Digest own = view_hash(round, slice.verifier, proof.statement, input, nr.nu, prev, nr.msg);
    const Digest comb = slice.verifier == 0 ? combine_round(round, own, nr.peer) : combine_round(round, nr.peer, own);
    out.own.push_back(own);
    out.combined.push_back(comb);
    prev = comb;
  }
  return out;
}

NiProof assemble(Variant variant, std::vector<std::uint8_t> statement, const std::array<std::vector<std::uint8_t>, 2>& inputs,
                 const std::vector<std::array<Digest, 2>>& nus, const std::vector<RoundChallenge>& rounds,
                 const std::vector<std::array<std::vector<std::uint8_t>, 2>>& msgs) {
  NiProof proof;
  proof.variant = variant;
  proof.statement = std::move(statement);
  for (int j = 0; j < 2; ++j) {
    NiSlice s;
    s.verifier = j;
    s.input = inputs[j];
    for (std::size_t i = 0; i < rounds.size(); ++i) {
      s.rounds.push_back(NiRound{nus[i][j], j == 0 ? rounds[i].r1 : rounds[i].r0, msgs[i][j]});
    }
    proof.slices.push_back(std::move(s));
  }
  return proof;
}

}  // namespace

// ---------------------------------------------------------------------------
// Statements.

std::vector<std::uint8_t> encode_statement(const NormParams& p) {
  ByteWriter w;
  write_modulus(w, p.field.modulus());
  w.u64(p.d);
  w.u64(p.B);
  w.u64(p.r);
  w.u64(p.tau_r);
  w.u32(p.t);
  w.f64(p.eta);
  return w.take();
}

std::vector<std::uint8_t> encode_statement(const DzkParams& p) {
  ByteWriter w;
  write_modulus(w, p.field.modulus());
  w.u64(p.d);
  w.u64(p.B);
  w.f64(p.eps);
  w.f64(p.delta);
  w.u8(static_cast<std::uint8_t>(p.cal));
  w.u32(p.t);
  return w.take();
}

NormParams decode_norm_statement(std::span<const std::uint8_t> in) {
  ByteReader r(in);
  const Field f = read_field(r);
  const std::uint64_t d = r.u64();
  const std::uint64_t B = r.u64();
  const std::uint64_t rr = r.u64();
  const std::uint64_t tau_r = r.u64();
  const std::uint32_t t = r.u32();
  const double eta = r.f64();
  r.expect_end();
  if (d == 0 || d > kMaxDimension || rr > 65536 || t == 0 || t > 64) throw FormatError("statement out of range");
  try {
    return make_norm_params(f, d, B, rr, tau_r, t, eta, false);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("statement: ") + e.what());
  }
}

DzkParams decode_dzk_statement(std::span<const std::uint8_t> in) {
  ByteReader r(in);
  const Field f = read_field(r);
  const std::uint64_t d = r.u64();
  const std::uint64_t B = r.u64();
  const double eps = r.f64();
  const double delta = r.f64();
  const std::uint8_t cal = r.u8();
  const std::uint32_t t = r.u32();
  r.expect_end();
  if (d == 0 || d > kMaxDimension || cal > 1 || t == 0 || t > 64) throw FormatError("statement out of range");
  try {
    return with_field(dzk_params(eps, delta, B, d, static_cast<Calibration>(cal)), f, t);
  } catch (const std::exception& e) {
    throw FormatError(std::string("statement: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Proof container.

const NiSlice& NiProof::slice(int verifier) const {
  for (const auto& s : slices) {
    if (s.verifier == verifier) return s;
  }
  throw FormatError("proof has no slice for verifier " + std::to_string(verifier));
}

NiProof NiProof::only(int verifier) const {
  NiProof out;
  out.variant = variant;
  out.statement = statement;
  out.slices.push_back(slice(verifier));
  return out;
}

std::vector<std::uint8_t> serialize(const NiProof& p) {
  ByteWriter w;
  w.bytes(kMagic);
  w.u8(kProofVersion);
  w.u8(static_cast<std::uint8_t>(p.variant));
  w.u32(static_cast<std::uint32_t>(p.statement.size()));
  w.bytes(p.statement);
  w.u8(static_cast<std::uint8_t>(p.slices.size()));
  for (const auto& s : p.slices) {
    w.u8(static_cast<std::uint8_t>(s.verifier));
    w.u32(static_cast<std::uint32_t>(s.input.size()));
    w.bytes(s.input);
    w.u32(static_cast<std::uint32_t>(s.rounds.size()));
    for (const auto& nr : s.rounds) {
      w.bytes(nr.nu);
      w.bytes(nr.peer);
      w.u32(static_cast<std::uint32_t>(nr.msg.size()));
      w.bytes(nr.msg);
    }
  }
  return w.take();
}

NiProof parse_ni_proof(std::span<const std::uint8_t> in) {
  ByteReader r(in);
  const auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic)) throw FormatError("not a PINE proof (bad magic)");
  if (r.u8() != kProofVersion) throw FormatError("unsupported proof version");
  NiProof p;
  const std::uint8_t variant = r.u8();
  if (variant != 1 && variant != 2) throw FormatError("unknown proof variant");
  p.variant = static_cast<Variant>(variant);
  const std::uint32_t stmt_len = r.u32();
  if (stmt_len > 1024) throw FormatError("statement too long");
  const auto stmt = r.bytes(stmt_len);
  p.statement.assign(stmt.begin(), stmt.end());
  const std::uint8_t count = r.u8();
  if (count != 1 && count != 2) throw FormatError("a proof carries one or two slices");
  const std::uint32_t expected_rounds = p.variant == Variant::kStatistical ? 3 : 2;
  for (std::uint8_t k = 0; k < count; ++k) {
    NiSlice s;
    const std::uint8_t v = r.u8();
    if (v > 1 || (k == 1 && v <= p.slices[0].verifier)) throw FormatError("bad slice verifier index");
    s.verifier = v;
    const auto input = r.bytes(r.u32());
    s.input.assign(input.begin(), input.end());
    if (r.u32() != expected_rounds) throw FormatError("wrong number of rounds for this variant");
    for (std::uint32_t i = 0; i < expected_rounds; ++i) {
      NiRound nr;
      const auto nu = r.bytes(32);
      std::copy(nu.begin(), nu.end(), nr.nu.begin());
      const auto peer = r.bytes(32);
      std::copy(peer.begin(), peer.end(), nr.peer.begin());
      const auto msg = r.bytes(r.u32());
      nr.msg.assign(msg.begin(), msg.end());
      s.rounds.push_back(std::move(nr));
    }
    p.slices.push_back(std::move(s));
  }
  r.expect_end();
  return p;
}

// ---------------------------------------------------------------------------
// Proving.

StatisticalChallenges expand_statistical(const NormParams& p, const std::array<Digest, 3>& rounds) {
  StatisticalChallenges c;
  c.z = ChallengeStream(rounds[0], "Z").ternary(p.r, p.d);
  c.rcs = expand_coins(p.field, rounds[1], p.t);
  c.rhos = expand_rhos(p.field, rounds[2], p.t, block_count(var_layout(p).n));
  return c;
}

NiProof ni_prove(const NormParams& p, std::span<const Fe> x, Rng& rng, const FsConfig& cfg, NiProveInfo* info,
                 const ProverHooks& hooks) {
  const Field& f = p.field;
  const auto statement = encode_statement(p);
  NormProver prover(p, std::vector<Fe>(x.begin(), x.end()), child_rng(rng), hooks);
  const auto shares = prover.share_input();
  const std::array<std::vector<std::uint8_t>, 2> inputs{serialize(f, shares[0]), serialize(f, shares[1])};
  const std::array<Digest, 2> digests{sha256(inputs[0]), sha256(inputs[1])};

  for (unsigned attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
    if (info) info->attempts = attempt;
    std::vector<std::array<Digest, 2>> nus(3);
    for (auto& pair : nus) pair = {random_digest(rng), random_digest(rng)};
    std::vector<std::array<std::vector<std::uint8_t>, 2>> msgs(3);
    std::vector<RoundChallenge> rounds;

    rounds.push_back(derive_round_challenge(1, statement, digests, nus[0], Digest{}, msgs[0][0], msgs[0][1]));
    const WraparoundChallenge z = ChallengeStream(rounds[0].combined, "Z").ternary(p.r, p.d);
    const auto m2 = prover.round2(z);
    if (!m2) continue;
    msgs[1] = {serialize(f, (*m2)[0]), serialize(f, (*m2)[1])};
    rounds.push_back(derive_round_challenge(2, statement, digests, nus[1], rounds[0].combined, msgs[1][0], msgs[1][1]));
    const auto m4 = prover.round4(expand_coins(f, rounds[1].combined, p.t));
    msgs[2] = {serialize(f, m4[0]), serialize(f, m4[1])};
    rounds.push_back(derive_round_challenge(3, statement, digests, nus[2], rounds[1].combined, msgs[2][0], msgs[2][1]));
    return assemble(Variant::kStatistical, statement, inputs, nus, rounds, msgs);
  }
  throw std::runtime_error("prover aborted on every attempt (" + std::to_string(cfg.max_attempts) + ")");
}

NiProof ni_prove(const DzkParams& p, std::span<const Fe> x, Rng& rng, const FsConfig& cfg, const DzkHooks& hooks) {
  (void)cfg;
  const Field& f = p.field;
  const auto statement = encode_statement(p);
  DzkProver prover(p, std::vector<Fe>(x.begin(), x.end()), child_rng(rng), hooks);
  const auto m1 = prover.round1();
  const std::array<std::vector<std::uint8_t>, 2> inputs{serialize(f, m1[0].x), serialize(f, m1[1].x)};
  const std::array<Digest, 2> digests{sha256(inputs[0]), sha256(inputs[1])};
  std::vector<std::array<Digest, 2>> nus(2);
  for (auto& pair : nus) pair = {random_digest(rng), random_digest(rng)};
  std::vector<std::array<std::vector<std::uint8_t>, 2>> msgs(2);
  std::vector<RoundChallenge> rounds;

  msgs[0] = {serialize(f, m1[0].sq), serialize(f, m1[1].sq)};
  rounds.push_back(derive_round_challenge(1, statement, digests, nus[0], Digest{}, msgs[0][0], msgs[0][1]));
  const auto m3 = prover.round3(expand_coins(f, rounds[0].combined, p.t));
  msgs[1] = {serialize(f, m3[0]), serialize(f, m3[1])};
  rounds.push_back(derive_round_challenge(2, statement, digests, nus[1], rounds[0].combined, msgs[1][0], msgs[1][1]));
  return assemble(Variant::kDzk, statement, inputs, nus, rounds, msgs);
}

// ---------------------------------------------------------------------------
// Verifying.

std::vector<std::uint8_t> serialize(const NiVerifierMessage& m) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(m.verifier));
  w.u8(static_cast<std::uint8_t>(m.status));
  w.u32(static_cast<std::uint32_t>(m.hashes.size()));
  for (const auto& h : m.hashes) w.bytes(h);
  w.u32(static_cast<std::uint32_t>(m.exchange.size()));
  w.bytes(m.exchange);
  return w.take();
}

NiVerifierMessage parse_verifier_message(std::span<const std::uint8_t> in) {
  ByteReader r(in);
  NiVerifierMessage m;
  const std::uint8_t v = r.u8();
  if (v > 1) throw FormatError("verifier index must be 0 or 1");
  m.verifier = v;
  const std::uint8_t status = r.u8();
  if (status > static_cast<std::uint8_t>(RejectCause::kFsInconsistent)) throw FormatError("unknown status");
  m.status = static_cast<RejectCause>(status);
  const std::uint32_t count = r.u32();
  if (count > 8) throw FormatError("too many round hashes");
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto h = r.bytes(32);
    Digest d;
    std::copy(h.begin(), h.end(), d.begin());
    m.hashes.push_back(d);
  }
  const auto ex = r.bytes(r.u32());
  m.exchange.assign(ex.begin(), ex.end());
  r.expect_end();
  return m;
}

NiVerifierMessage ni_verify_local(const NiProof& proof, int verifier) {
  NiVerifierMessage out;
  out.verifier = verifier;
  try {
    const NiSlice& slice = proof.slice(verifier);
    const Replay rep = replay(proof, slice);
    out.hashes = rep.own;
    if (proof.variant == Variant::kStatistical) {
      const NormParams p = decode_norm_statement(proof.statement);
      const ShareVector x = deserialize_share_vector(p.field, slice.input);
      if (x.verifier != verifier || x.size() != p.d) throw FormatError("input shares do not match the statement");
      if (rep.combined.size() != 3 || !slice.rounds[0].msg.empty()) throw FormatError("malformed round structure");
      const NormMsg2 m2 = deserialize_msg2(p, verifier, slice.rounds[1].msg);
      const NormMsg4 m4 = deserialize_msg4(p, slice.rounds[2].msg);
      const auto ch = expand_statistical(p, {rep.combined[0], rep.combined[1], rep.combined[2]});
      out.exchange = serialize(p.field, norm_verifier_exchange(p, x, ch.z, m2, ch.rcs, m4, ch.rhos));
    } else {
      const DzkParams p = decode_dzk_statement(proof.statement);
      if (rep.combined.size() != 2) throw FormatError("malformed round structure");
      DzkMsg1 m1;
      m1.x = deserialize_share_vector(p.field, slice.input);
      if (m1.x.verifier != verifier || m1.x.size() != p.d) throw FormatError("input shares do not match the statement");
      m1.sq = deserialize_range_share(p.field, verifier, slice.rounds[0].msg);
      const DzkMsg3 m3 = deserialize_dzk_msg3(p, slice.rounds[1].msg);
      const auto rcs = expand_coins(p.field, rep.combined[0], p.t);
      const auto rhos = expand_rhos(p.field, rep.combined[1], p.t, block_count(dzk_variable_count(p)));
      const DzkExchange ex = dzk_verifier_exchange(p, m1, rcs, m3, rhos);
      if (!ex.norm_ok) out.status = RejectCause::kShareNorm;
      out.exchange = serialize(p.field, ex);
    }
  } catch (const FormatError&) {
    out.status = RejectCause::kMalformed;
  } catch (const std::invalid_argument&) {
    out.status = RejectCause::kMalformed;
  }
  return out;
}

Verdict ni_verify_finish(const NiProof& proof, int verifier, const NiVerifierMessage& own,
                         const NiVerifierMessage& peer) {
  if (own.status != RejectCause::kNone) return Verdict::reject(own.status);
  if (peer.status != RejectCause::kNone) return Verdict::reject(peer.status);
  if (own.verifier != verifier || peer.verifier != 1 - verifier) return Verdict::reject(RejectCause::kMalformed);
  try {
    const NiSlice& slice = proof.slice(verifier);
    if (peer.hashes.size() != slice.rounds.size()) return Verdict::reject(RejectCause::kFsInconsistent);
    for (std::size_t i = 0; i < slice.rounds.size(); ++i) {
      if (peer.hashes[i] != slice.rounds[i].peer) return Verdict::reject(RejectCause::kFsInconsistent);
    }
    const NiVerifierMessage& m0 = verifier == 0 ? own : peer;
    const NiVerifierMessage& m1 = verifier == 0 ? peer : own;
    if (proof.variant == Variant::kStatistical) {
      const NormParams p = decode_norm_statement(proof.statement);
      const NormExchange e0 = deserialize_exchange(p, m0.exchange);
      const NormExchange e1 = deserialize_exchange(p, m1.exchange);
      return norm_decide(p, e0, e1);
    }
    const DzkParams p = decode_dzk_statement(proof.statement);
    return dzk_decide(p, deserialize_dzk_exchange(p, m0.exchange), deserialize_dzk_exchange(p, m1.exchange));
  } catch (const FormatError&) {
    return Verdict::reject(RejectCause::kMalformed);
  }
}

Verdict ni_verify(std::span<const std::uint8_t> proof_bytes) {
  NiProof proof;
  try {
    proof = parse_ni_proof(proof_bytes);
    if (proof.slices.size() != 2) return Verdict::reject(RejectCause::kMalformed);
  } catch (const FormatError&) {
    return Verdict::reject(RejectCause::kMalformed);
  }
  const NiVerifierMessage m0 = ni_verify_local(proof, 0);
  const NiVerifierMessage m1 = ni_verify_local(proof, 1);
  const Verdict v0 = ni_verify_finish(proof, 0, m0, m1);
  if (!v0.accept) return v0;
  return ni_verify_finish(proof, 1, m1, m0);
}

}  // namespace pine
