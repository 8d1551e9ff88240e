#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "maproof/errors.hpp"
#include "maproof/geom_apps.hpp"
#include "maproof/io.hpp"
#include "maproof/ma_eval.hpp"
#include "maproof/op_counter.hpp"
#include "maproof/oracles.hpp"
#include "maproof/qbf.hpp"
#include "maproof/sum_protocols.hpp"

using namespace maproof;

namespace {

enum ExitCode : int { kAccept = 0, kReject = 1, kMalformed = 2, kCapacity = 3 };

struct Options {
  std::uint64_t seed = 1;
  unsigned error_exp = 40;
  std::string field;
  unsigned rounds = 1;
  bool count_ops = false;
  std::string transcript;
  std::string replay;

  std::string circuit, points, proof, out;
  std::optional<std::uint64_t> claim;
  std::string formula, formula_file;
  double delta = 2.0 / 3.0;
  unsigned prime_exp = 0;
  std::string matrix, graph, vectors;
  bool undirected = false;
  std::size_t k = 0;
  std::string a, b;
  bool deterministic = false;
  std::string problem;
};

struct FieldSpec {
  u64 q = 0;
  std::optional<unsigned> ell;
};

FieldSpec parse_field(const std::string& text) {
  FieldSpec spec;
  const auto caret = text.find('^');
  try {
    std::size_t used = 0;
    const std::string base = text.substr(0, caret);
    spec.q = std::stoull(base, &used);
    if (used != base.size()) throw std::invalid_argument("");
    if (caret != std::string::npos) {
      const std::string exp = text.substr(caret + 1);
      const unsigned long ell = std::stoul(exp, &used);
      if (used != exp.size() || ell == 0) throw std::invalid_argument("");
      spec.ell = static_cast<unsigned>(ell);
    }
  } catch (const std::logic_error&) {
    throw UsageError("--field must be q or q^l, got '" + text + "'");
  }
  if (!is_prime(spec.q)) throw UsageError("--field base " + std::to_string(spec.q) + " is not prime");
  return spec;
}

class Report {
 public:
  void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
  void add(const std::string& key, const BigInt& value) { add(key, value.str()); }
  void add_bool(const std::string& key, bool value) { add(key, value ? "true" : "false"); }
  void add_values(const std::string& key, const std::vector<u64>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
    add(key, s);
  }
  void print(std::ostream& os) const {
    for (const auto& [k, v] : lines_) os << k << ": " << v << "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

const char* reason_text(RejectReason r) {
  switch (r) {
    case RejectReason::kNone:
      return "none";
    case RejectReason::kMalformed:
      return "malformed";
    case RejectReason::kUnsound:
      return "unsound";
  }
  return "none";
}

int verdict_code(const Verdict& v) {
  if (v.accepted) return kAccept;
  return v.reason == RejectReason::kMalformed ? kMalformed : kReject;
}

int report_verdict(Report& r, const Verdict& v) {
  r.add("decision", v.accepted ? "accept" : "reject");
  if (!v.accepted) {
    r.add("reason", reason_text(v.reason));
    r.add("detail", v.detail);
  }
  return verdict_code(v);
}

std::string formula_text(const Options& o) {
  if (!o.formula.empty() && !o.formula_file.empty()) throw UsageError("give --formula or --formula-file, not both");
  if (!o.formula_file.empty()) return read_file(o.formula_file);
  if (o.formula.empty()) throw UsageError("--formula or --formula-file is required");
  return o.formula;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

Circuit load_circuit(const Options& o) {
  require(o.circuit, "--circuit");
  return parse_circuit(read_file(o.circuit));
}

PointSet load_points(const Options& o) {
  require(o.points, "--points");
  return parse_points_csv(read_file(o.points));
}

Proof load_proof(const Options& o) {
  require(o.proof, "--proof");
  const std::string bytes = read_file(o.proof);
  return parse_proof({reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()});
}

void write_proof(const Options& o, const Proof& proof, Report& r) {
  require(o.out, "--out");
  const auto bytes = serialize_proof(proof);
  write_file_atomic(o.out, bytes);
  r.add("q", proof.params.q);
  r.add("ell", std::uint64_t{proof.params.ell});
  r.add("d", proof.params.d);
  r.add("K", proof.params.K);
  r.add("n", proof.params.n);
  r.add("coefficients", std::uint64_t{proof.coefficient_count()});
  r.add("proof_bits", std::uint64_t{proof.coeffs.size()} * 64);
  r.add("file_bytes", std::uint64_t{bytes.size()});
  r.add("out", o.out);
}

void record_check(Transcript& t, const Proof& proof, CoinSource& coins, bool accepted) {
  record_proof_params(t, proof);
  t.add(Sender::kProver, MessageKind::kPoly, words_to_bytes(proof.coeffs));
  t.add(Sender::kVerifier, MessageKind::kCoin, coins.drain_record());
  t.decision = accepted;
  t.add(Sender::kVerifier, MessageKind::kDecision, {static_cast<std::uint8_t>(accepted)});
}

struct Context {
  const Options& o;
  CoinSource& coins;
  Transcript& t;
  Report& r;
};

int prove_eval_cmd(Context& ctx) {
  const Options& o = ctx.o;
  require(o.field, "--field");
  const FieldSpec fs = parse_field(o.field);
  const Circuit c = load_circuit(o);
  const PointSet pts = load_points(o);
  ProtocolParams params = choose_params(c, pts.size(), fs.q, o.error_exp);
  if (fs.ell) {
    if (*fs.ell < params.ell) {
      throw UsageError("--field extension degree " + std::to_string(*fs.ell) + " is below the required " +
                       std::to_string(params.ell));
    }
    params.ell = *fs.ell;
  }
  Proof proof;
  {
    PhaseScope scope(Phase::kProver);
    proof = prove_eval(c, pts, params);
  }
  write_proof(o, proof, ctx.r);
  return kAccept;
}

int verify_eval_cmd(Context& ctx) {
  const Options& o = ctx.o;
  const Circuit c = load_circuit(o);
  const PointSet pts = load_points(o);
  const Proof proof = load_proof(o);
  if (!o.field.empty() && parse_field(o.field).q != proof.params.q) {
    throw UsageError("proof is over q=" + std::to_string(proof.params.q) + ", not --field " + o.field);
  }
  ctx.coins.drain_record();
  const EvalOutput out = verify_eval(c, pts, proof, o.error_exp, ctx.coins);
  ctx.t.protocol = "eval";
  record_check(ctx.t, proof, ctx.coins, out.accepted());
  const int code = report_verdict(ctx.r, out.verdict);
  if (out.accepted()) ctx.r.add_values("values", out.values);
  ctx.r.add("coins_used", out.coins_used);
  return code;
}

u64 sum_prime(const Options& o) {
  require(o.field, "--field");
  const FieldSpec fs = parse_field(o.field);
  if (fs.ell) throw UsageError("sum proofs take a prime field; the extension is chosen automatically");
  return fs.q;
}

int prove_sum_cmd(Context& ctx, const Circuit& c, u64 p) {
  if (ctx.o.rounds != 1) {
    throw UsageError("only the one-round proof is written to a file; run 'verify sum' without --proof for more rounds");
  }
  Proof proof;
  {
    PhaseScope scope(Phase::kProver);
    proof = prove_sum(c, p, ctx.o.error_exp);
  }
  write_proof(ctx.o, proof, ctx.r);
  return kAccept;
}

int verify_sum_cmd(Context& ctx, const Circuit& c, u64 p, std::optional<u64> claim) {
  const Options& o = ctx.o;
  SumOutput out;
  if (!o.proof.empty()) {
    if (o.rounds != 1) throw UsageError("--proof holds a one-round proof; --rounds must be 1");
    const Proof proof = load_proof(o);
    ctx.coins.drain_record();
    out = verify_sum(c, p, proof, o.error_exp, ctx.coins, claim);
    ctx.t.protocol = "sum";
    ctx.t.set_param("p", p);
    record_check(ctx.t, proof, ctx.coins, out.accepted());
  } else if (o.rounds >= 2) {
    const MultiroundParams mp = multiround_params(c, p, o.rounds, o.error_exp);
    out = multiround_sum(c, mp, honest_round_prover(c, mp), ctx.coins, claim, &ctx.t);
  } else {
    const Proof proof = prove_sum(c, p, o.error_exp);
    ctx.coins.drain_record();
    out = verify_sum(c, p, proof, o.error_exp, ctx.coins, claim);
    ctx.t.protocol = "sum";
    ctx.t.set_param("p", p);
    record_check(ctx.t, proof, ctx.coins, out.accepted());
  }
  const int code = report_verdict(ctx.r, out.verdict);
  ctx.r.add("p", p);
  if (out.accepted()) ctx.r.add("sum", out.sum);
  ctx.r.add("coins_used", out.coins_used);
  return code;
}

int sat_cmd(Context& ctx) {
  const BoolFormula f = parse_formula(formula_text(ctx.o));
  const CertifiedValue cv = count_sat(f, ctx.o.error_exp, ctx.coins, ctx.o.rounds, &ctx.t);
  const int code = report_verdict(ctx.r, cv.out.verdict);
  ctx.r.add("n", std::uint64_t{f.n_vars()});
  ctx.r.add("p", cv.p);
  if (cv.accepted()) ctx.r.add("count", cv.value);
  ctx.r.add("coins_used", cv.out.coins_used);
  return code;
}

int qbf_cmd(Context& ctx) {
  const QuantifiedFormula phi = parse_qbf(formula_text(ctx.o));
  QbfParams params;
  params.delta = ctx.o.delta;
  params.prime_interval_exp = ctx.o.prime_exp;
  params.eps_exp = ctx.o.error_exp;
  const QbfResult res = qbf_decide(phi, params, ctx.coins, &ctx.t);
  const int code = report_verdict(ctx.r, res.eval.verdict);
  if (res.accepted()) ctx.r.add_bool("value", res.value);
  ctx.r.add_bool("negated", res.negated);
  ctx.r.add("suffix", std::uint64_t{res.suffix});
  ctx.r.add("prime_exp", std::uint64_t{res.prime_exp});
  ctx.r.add("interval_top", res.interval_top);
  ctx.r.add("p", res.p);
  std::ostringstream pf, ef;
  pf << res.prime_failure;
  ef << res.eval_failure;
  ctx.r.add("prime_failure_bound", pf.str());
  ctx.r.add("eval_failure_bound", ef.str());
  ctx.r.add("coins_used", res.coins_used);
  return code;
}

int certified_value_cmd(Context& ctx, const CertifiedValue& cv, const char* key) {
  const int code = report_verdict(ctx.r, cv.out.verdict);
  ctx.r.add("p", cv.p);
  if (cv.accepted()) ctx.r.add(key, cv.value);
  ctx.r.add("coins_used", cv.out.coins_used);
  return code;
}

int counts_cmd(Context& ctx, const CountsOutput& out) {
  const int code = report_verdict(ctx.r, out.eval.verdict);
  ctx.r.add("p", out.p);
  if (out.accepted()) ctx.r.add_values("counts", out.counts);
  ctx.r.add("coins_used", out.eval.coins_used);
  return code;
}

int clique_cmd(Context& ctx) {
  require(ctx.o.graph, "--graph");
  const Graph g = parse_edge_list(read_file(ctx.o.graph), true);
  const CliqueOutput out = kclique_count(g, ctx.o.k, ctx.o.error_exp, ctx.coins, &ctx.t);
  const int code = report_verdict(ctx.r, out.verdict);
  ctx.r.add("p", out.p);
  ctx.r.add("ell", std::uint64_t{out.ell});
  ctx.r.add("multiplicity", out.multiplicity);
  if (out.eval.accepted()) {
    ctx.r.add("certified_sum", out.certified_sum);
    ctx.r.add("remainder", out.remainder);
  }
  if (out.accepted()) ctx.r.add("count", out.count);
  ctx.r.add("coins_used", out.eval.coins_used);
  return code;
}

int upit_cmd(Context& ctx) {
  const Options& o = ctx.o;
  require(o.a, "--a");
  require(o.b, "--b");
  require(o.field, "--field");
  const FieldSpec fs = parse_field(o.field);
  if (fs.ell) throw UsageError("upit takes a prime field; the extension is chosen automatically");
  const Circuit a = parse_circuit(read_file(o.a));
  const Circuit b = parse_circuit(read_file(o.b));
  const std::uint64_t before = ctx.coins.bits_consumed();
  bool equal = false;
  {
    PhaseScope scope(Phase::kVerifier);
    equal = o.deterministic ? upit_deterministic(a, b, fs.q) : upit_random(a, b, fs.q, o.error_exp, ctx.coins);
  }
  ctx.r.add("method", o.deterministic ? "deterministic" : "random");
  ctx.r.add_bool("equal", equal);
  ctx.r.add("coins_used", ctx.coins.bits_consumed() - before);
  return kAccept;
}

int oracle_cmd(Context& ctx) {
  const Options& o = ctx.o;
  Report& r = ctx.r;
  PhaseScope scope(Phase::kOracle);
  if (o.problem == "eval") {
    require(o.field, "--field");
    const FieldSpec fs = parse_field(o.field);
    if (fs.ell) throw UsageError("the oracle evaluates over the prime field");
    r.add_values("values", oracle::multipoint(load_circuit(o), fs.q, load_points(o)));
  } else if (o.problem == "sum") {
    r.add("sum", oracle::cube_sum(load_circuit(o), sum_prime(o)));
  } else if (o.problem == "sat") {
    r.add("count", oracle::sat_count(parse_formula(formula_text(o))));
  } else if (o.problem == "qbf") {
    r.add_bool("value", oracle::qbf(parse_qbf(formula_text(o))));
  } else if (o.problem == "permanent") {
    require(o.matrix, "--matrix");
    r.add("permanent", oracle::permanent(parse_matrix_csv(read_file(o.matrix))));
  } else if (o.problem == "hamcycles") {
    require(o.graph, "--graph");
    const Graph g = parse_edge_list(read_file(o.graph), o.undirected);
    BigInt cycles = oracle::hamiltonian_cycles(g);
    if (o.undirected && g.size() >= 3) cycles /= 2;
    r.add("cycles", cycles);
  } else if (o.problem == "ov") {
    require(o.vectors, "--vectors");
    const auto counts = oracle::orthogonal_counts(parse_bitvectors_csv(read_file(o.vectors)));
    r.add_values("counts", {counts.begin(), counts.end()});
  } else if (o.problem == "hamming") {
    require(o.vectors, "--vectors");
    const auto counts = oracle::hamming_counts(parse_bitvectors_csv(read_file(o.vectors)), o.k);
    r.add_values("counts", {counts.begin(), counts.end()});
  } else if (o.problem == "clique") {
    require(o.graph, "--graph");
    r.add("count", oracle::cliques(parse_edge_list(read_file(o.graph), true), o.k));
  } else {
    throw UsageError("unknown oracle problem '" + o.problem + "'");
  }
  return kAccept;
}

bool same_rounds(const Transcript& a, const Transcript& b, std::string& where) {
  if (a.protocol != b.protocol) {
    where = "protocol";
    return false;
  }
  if (a.params != b.params) {
    where = "params";
    return false;
  }
  if (a.rounds.size() != b.rounds.size()) {
    where = "round count";
    return false;
  }
  for (std::size_t i = 0; i < a.rounds.size(); ++i) {
    const Message& x = a.rounds[i];
    const Message& y = b.rounds[i];
    if (x.sender != y.sender || x.kind != y.kind || x.payload != y.payload) {
      where = "round " + std::to_string(i);
      return false;
    }
  }
  if (a.decision != b.decision) {
    where = "decision";
    return false;
  }
  return true;
}

void report_ops(Report& r) {
  const OpCounter& ops = OpCounter::instance();
  const std::pair<const char*, Phase> phases[] = {
      {"prover", Phase::kProver}, {"verifier", Phase::kVerifier}, {"oracle", Phase::kOracle}, {"other", Phase::kOther}};
  for (const auto& [name, phase] : phases) {
    const OpTally& t = ops.tally(phase);
    const std::string prefix = std::string("ops.") + name;
    r.add(prefix + ".adds", t.adds);
    r.add(prefix + ".muls", t.muls);
    r.add(prefix + ".invs", t.invs);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch circuit-evaluation proofs and their applications"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--seed", o.seed, "verifier coin seed")->capture_default_str();
  app.add_option("--error-exp", o.error_exp, "soundness error 2^-e")->capture_default_str();
  app.add_option("--field", o.field, "q or q^l");
  app.add_option("--rounds", o.rounds, "rounds of the sum protocol")->check(CLI::Range(1u, 64u))->capture_default_str();
  app.add_flag("--count-ops", o.count_ops, "report field-operation counts per phase");
  app.add_option("--transcript", o.transcript, "write the protocol transcript as JSON");
  app.add_option("--replay", o.replay, "rerun with the coins of a recorded transcript and compare");

  auto* prove = app.add_subcommand("prove", "write a proof file");
  auto* verify = app.add_subcommand("verify", "check a proof");
  for (auto* sub : {prove, verify}) {
    sub->require_subcommand(1);
    sub->fallthrough();
  }
  auto* prove_eval_sub = prove->add_subcommand("eval", "evaluation proof for a circuit on a point set");
  auto* prove_sum_sub = prove->add_subcommand("sum", "one-round proof of the cube sum of a circuit");
  auto* prove_sat_sub = prove->add_subcommand("sat", "one-round proof of a model count");
  auto* verify_eval_sub = verify->add_subcommand("eval", "check an evaluation proof");
  auto* verify_sum_sub = verify->add_subcommand("sum", "check a cube-sum proof, or run the protocol in-process");
  auto* verify_sat_sub = verify->add_subcommand("sat", "check a model-count proof");
  for (auto* sub : {prove_eval_sub, verify_eval_sub}) {
    sub->add_option("--circuit", o.circuit)->required();
    sub->add_option("--points", o.points)->required();
  }
  for (auto* sub : {prove_sum_sub, verify_sum_sub}) sub->add_option("--circuit", o.circuit)->required();
  for (auto* sub : {prove_eval_sub, prove_sum_sub, prove_sat_sub}) sub->add_option("--out", o.out)->required();
  for (auto* sub : {verify_eval_sub, verify_sat_sub}) sub->add_option("--proof", o.proof)->required();
  verify_sum_sub->add_option("--proof", o.proof);
  for (auto* sub : {verify_sum_sub, verify_sat_sub}) sub->add_option("--claim", o.claim, "claimed value");

  auto* sat = app.add_subcommand("sat", "certified model count");
  auto* qbf = app.add_subcommand("qbf", "certified truth value of a quantified formula");
  qbf->add_option("--delta", o.delta, "fraction of variables arithmetized")->check(CLI::Range(0.0, 1.0));
  qbf->add_option("--prime-exp", o.prime_exp, "primes are drawn from [2, 2^e * m]");
  for (auto* sub : {prove_sat_sub, verify_sat_sub, sat, qbf}) {
    sub->add_option("--formula", o.formula);
    sub->add_option("--formula-file", o.formula_file);
  }
  auto* perm = app.add_subcommand("permanent", "certified permanent of an integer matrix");
  perm->add_option("--matrix", o.matrix)->required();
  auto* ham = app.add_subcommand("hamcycles", "certified Hamiltonian cycle count");
  ham->add_option("--graph", o.graph)->required();
  ham->add_flag("--undirected", o.undirected);
  auto* ov = app.add_subcommand("ov", "certified orthogonal-vector counts");
  ov->add_option("--vectors", o.vectors)->required();
  auto* hamming = app.add_subcommand("hamming", "certified Hamming-ball counts");
  hamming->add_option("--vectors", o.vectors)->required();
  hamming->add_option("--k", o.k)->required();
  auto* clique = app.add_subcommand("clique", "certified k-clique count");
  clique->add_option("--graph", o.graph)->required();
  clique->add_option("--k", o.k)->required();
  auto* upit = app.add_subcommand("upit", "identity test for univariate circuits");
  upit->add_option("--a", o.a)->required();
  upit->add_option("--b", o.b)->required();
  upit->add_flag("--deterministic", o.deterministic);
  auto* oracle = app.add_subcommand("oracle", "brute-force reference answer");
  oracle->add_option("problem", o.problem, "eval|sum|sat|qbf|permanent|hamcycles|ov|hamming|clique")->required();
  oracle->add_option("--circuit", o.circuit);
  oracle->add_option("--points", o.points);
  oracle->add_option("--matrix", o.matrix);
  oracle->add_option("--graph", o.graph);
  oracle->add_option("--vectors", o.vectors);
  oracle->add_option("--formula", o.formula);
  oracle->add_option("--formula-file", o.formula_file);
  oracle->add_option("--k", o.k);
  oracle->add_flag("--undirected", o.undirected);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  const bool records = !prove->parsed() && !upit->parsed() && !oracle->parsed();
  Report report;
  int code = kAccept;
  try {
    if ((!o.transcript.empty() || !o.replay.empty()) && !records) {
      throw UsageError("this command records no transcript");
    }
    std::optional<Transcript> recorded;
    std::unique_ptr<CoinSource> coins;
    if (!o.replay.empty()) {
      recorded = parse_transcript(read_file(o.replay));
      coins = std::make_unique<ReplayCoins>(recorded->coin_record());
    } else {
      coins = std::make_unique<SeededCoins>(o.seed);
    }
    Transcript t;
    t.seed = recorded ? recorded->seed : o.seed;
    Context ctx{o, *coins, t, report};
    OpCounter::instance().reset();

    if (prove_eval_sub->parsed()) {
      code = prove_eval_cmd(ctx);
    } else if (prove_sum_sub->parsed()) {
      code = prove_sum_cmd(ctx, load_circuit(o), sum_prime(o));
    } else if (prove_sat_sub->parsed()) {
      const BoolFormula f = parse_formula(formula_text(o));
      code = prove_sum_cmd(ctx, arithmetize(f), sat_prime(f.n_vars()));
    } else if (verify_eval_sub->parsed()) {
      code = verify_eval_cmd(ctx);
    } else if (verify_sum_sub->parsed()) {
      code = verify_sum_cmd(ctx, load_circuit(o), sum_prime(o), o.claim);
    } else if (verify_sat_sub->parsed()) {
      const BoolFormula f = parse_formula(formula_text(o));
      code = verify_sum_cmd(ctx, arithmetize(f), sat_prime(f.n_vars()), o.claim);
    } else if (sat->parsed()) {
      code = sat_cmd(ctx);
    } else if (qbf->parsed()) {
      code = qbf_cmd(ctx);
    } else if (perm->parsed()) {
      code = certified_value_cmd(
          ctx, permanent(parse_matrix_csv(read_file(o.matrix)), o.error_exp, *coins, o.rounds, &t), "permanent");
    } else if (ham->parsed()) {
      const Graph g = parse_edge_list(read_file(o.graph), o.undirected);
      code = certified_value_cmd(ctx, hamiltonian_cycles(g, o.undirected, o.error_exp, *coins, o.rounds, &t),
                                 "cycles");
    } else if (ov->parsed()) {
      code = counts_cmd(ctx, ov_count(parse_bitvectors_csv(read_file(o.vectors)), o.error_exp, *coins, &t));
    } else if (hamming->parsed()) {
      code = counts_cmd(ctx, hamming_count(parse_bitvectors_csv(read_file(o.vectors)), o.k, o.error_exp, *coins, &t));
    } else if (clique->parsed()) {
      code = clique_cmd(ctx);
    } else if (upit->parsed()) {
      code = upit_cmd(ctx);
    } else if (oracle->parsed()) {
      code = oracle_cmd(ctx);
    }

    if (o.count_ops) report_ops(report);
    if (recorded) {
      std::string where;
      if (same_rounds(*recorded, t, where)) {
        report.add("replay", "match");
      } else {
        report.add("replay", "mismatch at " + where);
        code = kReject;
      }
    }
    if (!o.transcript.empty()) write_file_atomic(o.transcript, transcript_text(t));
    report.print(std::cout);
    return code;
  } catch (const CapacityError& e) {
    report.print(std::cout);
    std::cerr << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
  }
  report.print(std::cout);
  return kMalformed;
}
