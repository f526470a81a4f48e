#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pine/cost.hpp"
#include "pine/dzk.hpp"
#include "pine/error.hpp"
#include "pine/harness.hpp"
#include "pine/norm.hpp"
#include "pine/session.hpp"
#include "pine/vector_io.hpp"

namespace {

using nlohmann::ordered_json;
using namespace pine;

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int fail(const char* kind, const std::string& message, int code) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  std::cerr << j.dump() << std::endl;
  return code;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw UsageError("write failed for " + path);
}

u128 parse_u128(const std::string& s) {
  if (s.empty()) throw UsageError("empty modulus");
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw UsageError("modulus must be decimal: " + s);
    const u128 next = v * 10 + static_cast<unsigned>(c - '0');
    if (next / 10 != v) throw UsageError("modulus overflows 128 bits");
    v = next;
  }
  return v;
}

Field parse_field(const std::string& s) {
  if (s == "f64") return Field::f64();
  if (s == "f128") return Field::f128();
  try {
    return Field(parse_u128(s));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string u128_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  for (; v != 0; v /= 10) s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
  return s;
}

double log2_or_floor(double p) { return p > 0 ? std::log2(p) : -1100.0; }

// --seed, then PINE_SEED.
std::optional<std::uint64_t> resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("PINE_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("PINE_SEED is not an unsigned integer: ") + env);
    }
  }
  return std::nullopt;
}

std::uint64_t bound_from(std::optional<std::uint64_t> bound, std::optional<unsigned> b_bits) {
  if (bound && b_bits) throw UsageError("give either --bound or --b-bits, not both");
  if (bound) return *bound;
  const unsigned bits = b_bits.value_or(30);
  if (bits > 62) throw UsageError("--b-bits must be at most 62");
  return std::uint64_t{1} << bits;
}

Calibration parse_calibration(const std::string& s) {
  if (s == "closed") return Calibration::kClosedForm;
  if (s == "analytic") return Calibration::kAnalytic;
  throw UsageError("calibration must be closed or analytic");
}

SoundnessModel parse_model(const std::string& s) {
  if (s == "theorem") return SoundnessModel::kTheorem;
  if (s == "exact") return SoundnessModel::kExact;
  throw UsageError("model must be theorem or exact");
}

// Options shared by params, prove and simulate.
struct ProtocolFlags {
  std::string variant = "statistical";
  std::string field = "f64";
  double rho_bits = 50;
  double delta_bits = 50;
  double eps = 0.1;
  std::string calibration = "closed";
  std::string model = "theorem";
  double eta_bits = -kDefaultEtaLog2;

  void add(CLI::App* app) {
    app->add_option("--variant", variant, "statistical or dzk")->check(CLI::IsMember({"statistical", "dzk"}));
    app->add_option("--field", field, "f64, f128 or a decimal prime");
    app->add_option("--rho-bits", rho_bits, "soundness error 2^-rho_bits");
    app->add_option("--delta-bits", delta_bits, "completeness / zero-knowledge error 2^-delta_bits");
    app->add_option("--eps", eps, "differential privacy parameter (dzk)");
    app->add_option("--calibration", calibration, "Gaussian calibration: closed or analytic (dzk)");
    app->add_option("--model", model, "soundness model for the parameter search: theorem or exact");
    app->add_option("--eta-bits", eta_bits, "per-repetition wraparound failure 2^-eta_bits");
  }

  bool dzk() const { return variant == "dzk"; }
  double rho() const { return std::exp2(-rho_bits); }
  double delta() const { return std::exp2(-delta_bits); }

  NormParams norm(std::size_t d, std::uint64_t B, double margin) const {
    SelectOptions opt;
    opt.eta = std::exp2(-eta_bits);
    opt.model = parse_model(model);
    opt.fs_margin_bits = margin;
    return select_params(d, B, parse_field(field), rho(), delta(), opt);
  }

  DzkParams dzk_params(std::size_t d, std::uint64_t B, double margin) const {
    return select_dzk_params(eps, delta(), B, d, parse_field(field), rho() * std::exp2(-margin),
                             parse_calibration(calibration));
  }
};

ordered_json describe(const NormParams& p) {
  const MessageSizes ms = message_sizes(p);
  ordered_json j;
  j["variant"] = "statistical";
  j["field"] = u128_string(p.field.modulus());
  j["log_q"] = p.log_q();
  j["d"] = p.d;
  j["B"] = p.B;
  j["t"] = p.t;
  j["r"] = p.r;
  j["tau_r"] = p.tau_r;
  j["tau"] = p.wrap.tau();
  j["eta_log2"] = std::log2(p.eta);
  j["alpha"] = p.wrap.alpha_hat;
  j["window_bits"] = p.wrap.b;
  j["q_min"] = theorem_q_min(p);
  j["soundness_log2"] = log2_or_floor(soundness_error(p));
  j["soundness_exact_log2"] = log2_or_floor(soundness_error(p, SoundnessModel::kExact));
  j["completeness_log2"] = log2_or_floor(completeness_error(p));
  j["L"] = ms.L;
  j["msg2_bits"] = ms.msg2;
  j["msg4_bits"] = ms.msg4;
  j["exchange_bits"] = ms.exchange;
  return j;
}

ordered_json describe(const DzkParams& p) {
  ordered_json j;
  j["variant"] = "dzk";
  j["field"] = u128_string(p.field.modulus());
  j["log_q"] = p.log_q();
  j["d"] = p.d;
  j["B"] = p.B;
  j["t"] = p.t;
  j["eps"] = p.eps;
  j["delta"] = p.delta;
  j["c"] = p.c;
  j["sigma"] = p.sigma;
  j["Delta"] = p.Delta;
  j["Lambda"] = p.Lambda;
  j["q_min"] = u128_string(p.q_min);
  j["q_min_bits"] = p.q_min_bits;
  j["soundness_log2"] = log2_or_floor(dzk_soundness_error(p));
  return j;
}

void print(const ordered_json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) {
    std::cout << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

// ---------------------------------------------------------------------------

struct ParamsCmd {
  ProtocolFlags proto;
  std::size_t d = 0;
  std::optional<std::uint64_t> bound;
  std::optional<unsigned> b_bits;
  bool ni = false;
  bool json = false;

  int run() const {
    const std::uint64_t B = bound_from(bound, b_bits);
    const double margin = ni ? kFsMarginBits : 0.0;
    if (proto.dzk()) {
      print(describe(proto.dzk_params(d, B, margin)), json);
    } else {
      print(describe(proto.norm(d, B, margin)), json);
    }
    return kExitOk;
  }
};

struct EncodeCmd {
  std::string in;
  std::string out;
  unsigned precision = 15;
  bool binary = false;

  int run() const {
    std::ifstream is(in);
    if (!is) throw UsageError("cannot open " + in);
    std::vector<double> x;
    std::string tok;
    while (is >> tok) {
      try {
        x.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw UsageError("not a number: " + tok);
      }
    }
    const InputVector v = encode_unit_vector(x, precision);
    if (binary) {
      write_file(out, format_vector_binary(v));
    } else {
      const std::string text = format_vector_text(v);
      write_file(out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    }
    ordered_json j;
    j["d"] = v.values.size();
    j["B"] = v.B;
    j["precision"] = v.precision;
    std::cout << j.dump() << "\n";
    return kExitOk;
  }
};

struct ProveCmd {
  ProtocolFlags proto;
  std::string in;
  std::string out;
  bool slices = false;
  double margin = kFsMarginBits;
  std::optional<std::uint64_t> seed;

  int run() const {
    const InputVector v = parse_vector(read_file(in));
    u128 sq = 0;
    for (auto x : v.values) sq += static_cast<u128>(static_cast<i128>(x) * x);
    if (sq > v.B) throw UsageError("input squared norm exceeds its bound B");

    const std::optional<std::uint64_t> s = resolve_seed(seed);
    Rng rng = s ? Rng(*s) : Rng::from_os();
    NiProof proof;
    ordered_json j;
    if (proto.dzk()) {
      const DzkParams p = proto.dzk_params(v.values.size(), v.B, margin);
      proof = ni_prove(p, to_field(p.field, v.values), rng);
      j["params"] = describe(p);
    } else {
      const NormParams p = proto.norm(v.values.size(), v.B, margin);
      NiProveInfo info;
      proof = ni_prove(p, to_field(p.field, v.values), rng, {}, &info);
      j["params"] = describe(p);
      j["attempts"] = info.attempts;
    }
    const auto bytes = serialize(proof);
    write_file(out, bytes);
    j["proof"] = out;
    j["bytes"] = bytes.size();
    if (slices) {
      for (int verifier = 0; verifier < 2; ++verifier) {
        const std::string path = out + ".v" + std::to_string(verifier);
        const auto slice = serialize(proof.only(verifier));
        write_file(path, slice);
        j["slices"].push_back({{"verifier", verifier}, {"path", path}, {"bytes", slice.size()}});
      }
    }
    std::cout << j.dump() << "\n";
    return kExitOk;
  }
};

struct VerifyCmd {
  std::string proof_path;
  std::optional<int> verifier;
  std::string emit;
  std::string own;
  std::string peer;
  double min_soundness_bits = 0;

  static int report(const Verdict& v) {
    ordered_json j;
    j["result"] = v.accept ? "accept" : "reject";
    j["cause"] = std::string(to_string(v.cause));
    std::cout << j.dump() << "\n";
    return v.accept ? kExitOk : kExitReject;
  }

  // Refuses statements whose claimed soundness is weaker than the policy.
  std::optional<std::string> policy_violation(const NiProof& proof) const {
    if (min_soundness_bits <= 0) return std::nullopt;
    double err = 1.0;
    try {
      err = proof.variant == Variant::kStatistical ? soundness_error(decode_norm_statement(proof.statement))
                                                   : dzk_soundness_error(decode_dzk_statement(proof.statement));
    } catch (const std::exception& e) {
      return std::string("statement: ") + e.what();
    }
    if (-log2_or_floor(err) < min_soundness_bits) {
      std::ostringstream os;
      os << "statement soundness 2^" << log2_or_floor(err) << " is weaker than 2^-" << min_soundness_bits;
      return os.str();
    }
    return std::nullopt;
  }

  int run() const {
    const auto bytes = read_file(proof_path);
    NiProof proof;
    try {
      proof = parse_ni_proof(bytes);
    } catch (const FormatError&) {
      return report(Verdict::reject(RejectCause::kMalformed));
    }
    if (auto why = policy_violation(proof)) {
      ordered_json j;
      j["result"] = "reject";
      j["cause"] = "policy";
      j["detail"] = *why;
      std::cout << j.dump() << "\n";
      return kExitReject;
    }

    if (!verifier) {
      if (!emit.empty() || !own.empty() || !peer.empty()) throw UsageError("--emit/--own/--peer need --verifier");
      return report(ni_verify(bytes));
    }
    const int j = *verifier;
    if (!emit.empty()) {
      if (!own.empty() || !peer.empty()) throw UsageError("--emit runs the local phase alone");
      const NiVerifierMessage m = ni_verify_local(proof, j);
      write_file(emit, serialize(m));
      ordered_json out;
      out["verifier"] = j;
      out["status"] = std::string(to_string(m.status));
      out["message"] = emit;
      std::cout << out.dump() << "\n";
      return kExitOk;
    }
    if (own.empty() || peer.empty()) throw UsageError("the final phase needs --own and --peer");
    NiVerifierMessage mine;
    NiVerifierMessage theirs;
    try {
      mine = parse_verifier_message(read_file(own));
      theirs = parse_verifier_message(read_file(peer));
    } catch (const FormatError&) {
      return report(Verdict::reject(RejectCause::kMalformed));
    }
    if (mine.verifier != j || theirs.verifier != 1 - j) throw UsageError("verifier messages are mislabelled");
    return report(ni_verify_finish(proof, j, mine, theirs));
  }
};

struct SimulateCmd {
  ProtocolFlags proto;
  std::string strategy = "honest";
  std::size_t trials = 100;
  unsigned jobs = 1;
  std::size_t d = 100;
  std::optional<std::uint64_t> bound;
  std::optional<unsigned> b_bits;
  std::int64_t over_norm_delta = 1;
  bool ni = false;
  std::optional<std::uint64_t> seed;
  std::string csv;

  int run() const {
    const auto strat = parse_strategy(strategy);
    if (!strat) throw UsageError("unknown strategy " + strategy);
    if (proto.dzk() && (*strat == Strategy::kBitCheater || *strat == Strategy::kShiftConstant)) {
      throw UsageError("strategy " + strategy + " applies to the statistical variant only");
    }
    const std::uint64_t B = bound ? bound_from(bound, b_bits) : bound_from(std::nullopt, b_bits.value_or(20));
    const std::uint64_t base_seed = resolve_seed(seed).value_or(0);
    const double margin = ni ? kFsMarginBits : 0.0;

    SessionConfig cfg;
    cfg.variant = proto.dzk() ? Variant::kDzk : Variant::kStatistical;
    cfg.strategy = *strat;
    cfg.over_norm_delta = over_norm_delta;
    cfg.non_interactive = ni;
    std::ostringstream params;
    if (proto.dzk()) {
      cfg.dzk = proto.dzk_params(d, B, margin);
      params << "dzk d=" << d << " B=" << B << " eps=" << proto.eps << " t=" << cfg.dzk.t;
    } else {
      cfg.norm = proto.norm(d, B, margin);
      params << "statistical d=" << d << " B=" << B << " r=" << cfg.norm.r << " tau_r=" << cfg.norm.tau_r
             << " t=" << cfg.norm.t;
    }
    params << " q_bits=" << proto.field << (ni ? " ni" : "");
    const Field f = proto.dzk() ? cfg.dzk.field : cfg.norm.field;
    const std::vector<Fe> honest = to_field(f, vector_with_squared_norm(d, B));

    const RateEstimate e = monte_carlo(
        trials,
        [&](std::size_t i) {
          SessionConfig c = cfg;
          c.seed = base_seed + i;
          c.x = honest;
          return run_session(c).verdict.accept;
        },
        jobs);

    const std::string row = csv_row(strategy, params.str(), e);
    if (csv.empty()) {
      std::cout << csv_header() << "\n" << row << "\n";
    } else {
      const bool fresh = !std::ifstream(csv).good();
      std::ofstream out(csv, std::ios::app);
      if (!out) throw UsageError("cannot write " + csv);
      if (fresh) out << csv_header() << "\n";
      out << row << "\n";
      std::cout << row << "\n";
    }
    return kExitOk;
  }
};

std::size_t parse_dim(const std::string& s) {
  try {
    const double v = std::stod(s);
    if (!(v >= 1) || v > 1e12 || v != std::floor(v)) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError("bad dimension " + s);
  }
}

struct BenchCmd {
  std::string table = "intro";
  std::vector<std::string> dims{"1e4", "1e5", "1e6", "1e7"};
  std::string field = "f64";
  double rho_bits = 50;
  double delta_bits = 50;
  double eps = 0.1;
  unsigned b_bits = 30;
  std::size_t d = 100;
  std::optional<std::uint64_t> seed;
  bool json = false;

  int run() const {
    std::vector<std::size_t> ds;
    for (const auto& s : dims) ds.push_back(parse_dim(s));
    const std::uint64_t B = std::uint64_t{1} << b_bits;
    const double rho = std::exp2(-rho_bits);
    const double delta = std::exp2(-delta_bits);

    if (table == "intro") {
      const auto rows = intro_table(ds, B, rho, delta, eps);
      if (!json) {
        std::cout << format_intro_table(rows);
        return kExitOk;
      }
      ordered_json j = ordered_json::array();
      for (const auto& r : rows) {
        j.push_back({{"d", r.d},
                     {"baseline_bits", r.baseline_bits},
                     {"statistical_overhead", r.statistical.overhead},
                     {"statistical_bound_overhead", r.statistical.bound_overhead},
                     {"dzk_overhead", r.dzk.overhead},
                     {"dzk_log_q", r.dzk.log_q}});
      }
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
    if (table == "verbose") {
      std::vector<CostReport> rows;
      for (std::size_t dim : ds) rows.push_back(cost_statistical(dim, B, parse_field(field), rho, delta));
      if (!json) {
        std::cout << format_verbose_table(rows);
        return kExitOk;
      }
      ordered_json j = ordered_json::array();
      for (const auto& c : rows) {
        j.push_back({{"d", c.d},
                     {"t", c.t},
                     {"r", c.r},
                     {"tau_r", c.tau_r},
                     {"alpha", c.alpha},
                     {"L", c.L},
                     {"msg2_bits", c.proof_bits},
                     {"msg4_bits", c.ip_bits},
                     {"fs_bits", c.fs_bits},
                     {"overhead", c.overhead},
                     {"bound_overhead", c.bound_overhead},
                     {"exchange_bits", c.exchange_bits}});
      }
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
    // ops
    const NormParams p = select_params(d, B, parse_field(field), rho, delta);
    const OpCounts model = analytic_prover_ops(p);
    const OpCounts measured = instrumented_prover_ops(p, resolve_seed(seed).value_or(0));
    ordered_json j;
    j["d"] = d;
    j["t"] = p.t;
    j["r"] = p.r;
    j["analytic_mul"] = model.mul;
    j["measured_mul"] = measured.mul;
    j["analytic_mul_add"] = model.mul + model.add;
    j["measured_mul_add"] = measured.mul + measured.add;
    j["mul_ratio"] = static_cast<double>(measured.mul) / static_cast<double>(model.mul);
    j["mul_add_ratio"] =
        static_cast<double>(measured.mul + measured.add) / static_cast<double>(model.mul + model.add);
    print(j, json);
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-verifier norm-bound proofs on secret-shared vectors"};
  app.require_subcommand(1);

  ParamsCmd params;
  auto* params_app = app.add_subcommand("params", "select protocol parameters");
  params.proto.add(params_app);
  params_app->add_option("--d", params.d, "dimension")->required();
  params_app->add_option("--bound", params.bound, "squared-norm bound B");
  params_app->add_option("--b-bits", params.b_bits, "B = 2^b-bits (default 30)");
  params_app->add_flag("--ni", params.ni, "include the non-interactive soundness margin");
  params_app->add_flag("--json", params.json, "print JSON");

  EncodeCmd encode;
  auto* encode_app = app.add_subcommand("encode", "fixed-point encode a unit-norm real vector");
  encode_app->add_option("--in", encode.in, "whitespace-separated reals")->required();
  encode_app->add_option("--out", encode.out, "vector file to write")->required();
  encode_app->add_option("--precision", encode.precision, "bits of precision");
  encode_app->add_flag("--binary", encode.binary, "write the binary form");

  ProveCmd prove;
  auto* prove_app = app.add_subcommand("prove", "produce a non-interactive proof for a vector file");
  prove.proto.add(prove_app);
  prove_app->add_option("--in", prove.in, "vector file")->required();
  prove_app->add_option("--out", prove.out, "proof file")->required();
  prove_app->add_flag("--slices", prove.slices, "also write per-verifier slices to OUT.v0 and OUT.v1");
  prove_app->add_option("--fs-margin-bits", prove.margin, "extra soundness bits for the transform");
  prove_app->add_option("--seed", prove.seed, "deterministic randomness (else PINE_SEED, else OS entropy)");

  VerifyCmd verify;
  auto* verify_app = app.add_subcommand("verify", "verify a proof, in-process or one verifier at a time");
  verify_app->add_option("--proof", verify.proof_path, "full proof or one verifier's slice")->required();
  verify_app->add_option("--verifier", verify.verifier, "this verifier's index (0 or 1)")
      ->check(CLI::Range(0, 1));
  verify_app->add_option("--emit", verify.emit, "local phase: write this verifier's message");
  verify_app->add_option("--own", verify.own, "final phase: this verifier's message");
  verify_app->add_option("--peer", verify.peer, "final phase: the peer's message");
  verify_app->add_option("--min-soundness-bits", verify.min_soundness_bits,
                         "reject statements with soundness weaker than 2^-N");

  SimulateCmd simulate;
  auto* simulate_app = app.add_subcommand("simulate", "run a Monte-Carlo campaign of full sessions");
  simulate.proto.add(simulate_app);
  simulate_app->add_option("--strategy", simulate.strategy, "honest, over-norm, bit-cheater, shift-constant");
  simulate_app->add_option("--trials", simulate.trials, "sessions to run")->check(CLI::PositiveNumber);
  simulate_app->add_option("--jobs", simulate.jobs, "worker threads")->check(CLI::PositiveNumber);
  simulate_app->add_option("--d", simulate.d, "dimension");
  simulate_app->add_option("--bound", simulate.bound, "squared-norm bound B");
  simulate_app->add_option("--b-bits", simulate.b_bits, "B = 2^b-bits (default 20)");
  simulate_app->add_option("--over-norm-delta", simulate.over_norm_delta, "excess squared norm of over-norm inputs");
  simulate_app->add_flag("--ni", simulate.ni, "use the non-interactive transform");
  simulate_app->add_option("--seed", simulate.seed, "base seed (else PINE_SEED, else 0)");
  simulate_app->add_option("--csv", simulate.csv, "append the result row to this file");

  BenchCmd bench;
  auto* bench_app = app.add_subcommand("bench", "communication and operation-count tables");
  bench_app->add_option("--table", bench.table, "intro, verbose or ops")
      ->check(CLI::IsMember({"intro", "verbose", "ops"}));
  bench_app->add_option("--dims", bench.dims, "dimensions (intro, verbose)")->delimiter(',');
  bench_app->add_option("--field", bench.field, "field for verbose and ops");
  bench_app->add_option("--rho-bits", bench.rho_bits, "soundness error 2^-rho_bits");
  bench_app->add_option("--delta-bits", bench.delta_bits, "zero-knowledge error 2^-delta_bits");
  bench_app->add_option("--eps", bench.eps, "privacy parameter of the differential row");
  bench_app->add_option("--b-bits", bench.b_bits, "B = 2^b-bits")->check(CLI::Range(1, 62));
  bench_app->add_option("--d", bench.d, "dimension (ops)");
  bench_app->add_option("--seed", bench.seed, "seed of the instrumented run (ops)");
  bench_app->add_flag("--json", bench.json, "print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kExitUsage);
  }

  try {
    if (*params_app) return params.run();
    if (*encode_app) return encode.run();
    if (*prove_app) return prove.run();
    if (*verify_app) return verify.run();
    if (*simulate_app) return simulate.run();
    if (*bench_app) return bench.run();
  } catch (const InfeasibleParams& e) {
    return fail("infeasible", e.what(), kExitInfeasible);
  } catch (const UsageError& e) {
    return fail("usage", e.what(), kExitUsage);
  } catch (const FormatError& e) {
    return fail("format", e.what(), kExitUsage);
  } catch (const std::invalid_argument& e) {
    return fail("invalid_argument", e.what(), kExitUsage);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitUsage);
  }
  return kExitUsage;
}
