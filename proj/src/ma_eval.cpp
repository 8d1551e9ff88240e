#include "maproof/ma_eval.hpp"

#include <algorithm>
#include <cmath>

#include "maproof/errors.hpp"
#include "maproof/op_counter.hpp"

namespace maproof {

namespace {

// Proofs longer than this many coefficients are a capacity error.
constexpr u64 kMaxProofCoefficients = u64{1} << 26;

void check_points(const PointSet& points, std::size_t n, u64 q) {
  if (points.empty()) throw UsageError("at least one query point is required");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n) {
      throw UsageError("point " + std::to_string(i) + " has " + std::to_string(points[i].size()) +
                       " coordinates, circuit expects " + std::to_string(n));
    }
    for (u64 v : points[i]) {
      if (v >= q) throw UsageError("point " + std::to_string(i) + " has a coordinate >= q");
    }
  }
}

// Index i with canonical_element(i) == r, or K when r is not among the first K.
u64 canonical_index(const FieldElement& r, u64 q, u64 K) {
  const auto c = r.coeffs();
  unsigned __int128 idx = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    idx = idx * q + c[k];
    if (idx >= K) return K;
  }
  return static_cast<u64>(idx);
}

std::vector<FieldElement> circuit_values(const Circuit& c, const Field& f,
                                         const std::vector<std::vector<FieldElement>>& pts) {
  CircuitEvaluator ev(c, f);
  std::vector<FieldElement> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(ev(p));
  return out;
}

// Rough word-operation estimates: gate-by-gate composition pays one product
// per multiplication gate at that gate's degree; evaluation pays every gate
// at all N points plus the subproduct trees.
bool composition_is_cheaper(const Circuit& c, u64 K, u64 N) {
  const auto& gates = c.gates();
  std::vector<u64> deg(gates.size(), 0);
  double compose = 0;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.kind) {
      case GateKind::kInput:
        deg[i] = 1;
        break;
      case GateKind::kConst:
        break;
      case GateKind::kAdd:
        deg[i] = std::max(deg[g.a], deg[g.b]);
        compose += static_cast<double>(deg[i] * (K - 1) + 1);
        break;
      case GateKind::kMul: {
        deg[i] = deg[g.a] + deg[g.b];
        const double len = static_cast<double>(deg[i] * (K - 1) + 1);
        compose += len * std::log2(len + 1);
        break;
      }
    }
  }
  const double lg = std::log2(static_cast<double>(N) + 1);
  const double evaluate = static_cast<double>(N) * gates.size() + 8 * static_cast<double>(N) * lg * lg;
  return compose < evaluate;
}

// C(Psi_1, ..., Psi_n) by polynomial arithmetic along the gates.
DensePoly compose(const Circuit& c, const std::vector<DensePoly>& psi, const Field& f) {
  const auto& gates = c.gates();
  std::vector<std::size_t> last_use(gates.size(), 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].kind == GateKind::kAdd || gates[i].kind == GateKind::kMul) {
      last_use[gates[i].a] = i;
      last_use[gates[i].b] = i;
    }
  }
  std::vector<DensePoly> val(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.kind) {
      case GateKind::kInput:
        val[i] = psi[g.a];
        break;
      case GateKind::kConst:
        val[i] = DensePoly::constant(f, f.from_int(g.value));
        break;
      case GateKind::kAdd:
        val[i] = val[g.a] + val[g.b];
        break;
      case GateKind::kMul:
        val[i] = val[g.a] * val[g.b];
        break;
    }
    if (g.kind == GateKind::kAdd || g.kind == GateKind::kMul) {
      for (std::uint32_t op : {g.a, g.b}) {
        if (last_use[op] == i && op != c.output()) val[op] = DensePoly(f);
      }
    }
  }
  return val[c.output()];
}

Proof package(const ProtocolParams& params, const Field& ext, const DensePoly& q, unsigned wl) {
  Proof proof{params, ext.modulus(), std::vector<u64>(params.coefficient_bound() * params.ell, 0)};
  const auto w = q.words();
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::copy_n(w.begin() + i * wl, wl, proof.coeffs.begin() + i * params.ell);
  }
  return proof;
}

FieldElement eval_univariate(const Circuit& c, const Field& f, const FieldElement& x) {
  if (c.n_inputs() == 0) return evaluate(c, f, {});
  return evaluate(c, f, std::span<const FieldElement>(&x, 1));
}

u64 univariate_degree(const Circuit& a, const Circuit& b) {
  if (a.n_inputs() > 1 || b.n_inputs() > 1) throw UsageError("identity testing needs univariate circuits");
  const u64 d = std::max(syntactic_degree(a), syntactic_degree(b));
  if (d == kDegreeInfinite) throw CapacityError("circuit degree overflows 64 bits");
  return d;
}

}  // namespace

u64 ProtocolParams::coefficient_bound() const { return d * (K - 1) + 1; }

std::size_t Proof::coefficient_count() const {
  return params.ell == 0 ? 0 : coeffs.size() / params.ell;
}

DensePoly Proof::q_poly(const Field& f) const { return DensePoly::from_words(f, coeffs); }

unsigned minimal_extension(u64 q, const BigInt& bound) {
  unsigned ell = 1;
  BigInt size = q;
  while (size <= bound) {
    size *= q;
    ++ell;
  }
  if (ell > kMaxExtensionDegree) {
    throw CapacityError("requires extension degree " + std::to_string(ell) + ", limit is " +
                        std::to_string(kMaxExtensionDegree));
  }
  return ell;
}

ProtocolParams choose_params(const Circuit& c, u64 K, u64 q, unsigned eps_exp) {
  if (K == 0) throw UsageError("K must be at least 1");
  if (q < 2 || q >= kModulusLimit || !is_prime(q)) throw UsageError("q must be a prime below 2^62");
  const u64 d = syntactic_degree(c);
  if (d == kDegreeInfinite) throw CapacityError("circuit degree overflows 64 bits");
  const BigInt coeff_count = BigInt(d) * (K - 1) + 1;
  if (coeff_count > kMaxProofCoefficients) {
    throw CapacityError("proof would have " + coeff_count.str() + " coefficients");
  }
  const BigInt bound = BigInt(std::max<u64>(d, 1)) * K * (BigInt(1) << eps_exp);
  return {q, minimal_extension(q, bound), d, K, c.n_inputs(), eps_exp};
}

bool params_admissible(const ProtocolParams& given, const ProtocolParams& minimal) {
  ProtocolParams same = given;
  same.ell = minimal.ell;
  return same == minimal && given.ell >= minimal.ell && given.ell <= kMaxExtensionDegree;
}

std::vector<FieldElement> canonical_points(const Field& f, u64 count, u64 start) {
  std::vector<FieldElement> out;
  out.reserve(count);
  for (u64 i = 0; i < count; ++i) out.push_back(f.canonical_element(start + i));
  return out;
}

std::vector<DensePoly> build_psi(const PointSet& points, const Field& f) {
  if (points.empty()) throw UsageError("at least one query point is required");
  const std::size_t n = points[0].size();
  check_points(points, n, f.characteristic());
  const u64 K = points.size();
  if (BigInt(K) > f.order()) throw CapacityError("more query points than field elements");
  const SubproductTree tree(f, canonical_points(f, K));
  std::vector<DensePoly> psi;
  psi.reserve(n);
  std::vector<FieldElement> column(K);
  for (std::size_t j = 0; j < n; ++j) {
    for (u64 i = 0; i < K; ++i) column[i] = f.from_u64(points[i][j]);
    psi.push_back(tree.interpolate(column));
  }
  return psi;
}

std::vector<FieldElement> lagrange_at(const Field& f, u64 K, const FieldElement& r) {
  const u64 q = f.characteristic();
  std::vector<FieldElement> out(K, f.zero());
  if (const u64 hit = canonical_index(r, q, K); hit < K) {
    out[hit] = f.one();
    return out;
  }
  if (K <= q) {
    // alpha_i = i: the barycentric weights are signed inverse factorials.
    std::vector<FieldElement> diff(K);
    FieldElement m = f.one();
    for (u64 i = 0; i < K; ++i) {
      diff[i] = r - f.from_u64(i);
      m *= diff[i];
    }
    const std::vector<FieldElement> inv_diff = batch_inverse(f, diff);
    std::vector<FieldElement> inv_fact(K);
    FieldElement fact = f.one();
    for (u64 i = 1; i < K; ++i) fact *= f.from_u64(i);
    inv_fact[K - 1] = f.inv(fact);
    for (u64 i = K - 1; i > 0; --i) inv_fact[i - 1] = inv_fact[i] * f.from_u64(i);
    for (u64 i = 0; i < K; ++i) {
      FieldElement w = m * inv_diff[i] * inv_fact[i] * inv_fact[K - 1 - i];
      out[i] = (K - 1 - i) % 2 ? -w : w;
    }
    return out;
  }
  const std::vector<FieldElement> alpha = canonical_points(f, K);
  const SubproductTree tree(f, alpha);
  const std::vector<FieldElement> w = batch_inverse(f, tree.evaluate(derivative(tree.root())));
  std::vector<FieldElement> diff(K);
  for (u64 i = 0; i < K; ++i) diff[i] = r - alpha[i];
  const std::vector<FieldElement> inv_diff = batch_inverse(f, diff);
  const FieldElement m = horner_eval(tree.root(), r);
  for (u64 i = 0; i < K; ++i) out[i] = m * w[i] * inv_diff[i];
  return out;
}

Proof prove_eval_with(const ProtocolParams& params, const PointSet& points,
                      const BatchEvaluator& eval) {
  PhaseScope phase(Phase::kProver);
  check_points(points, params.n, params.q);
  if (points.size() != params.K) throw UsageError("point count differs from K");
  const Field ext = Field::extension(params.q, params.ell);
  const u64 K = params.K;
  const u64 N = params.coefficient_bound();
  // With enough base-field points the interpolant has base-field coefficients,
  // so the whole computation can stay in F_q.
  const Field work = N <= params.q ? Field::prime(params.q) : ext;

  std::vector<FieldElement> values;
  values.reserve(N);
  {
    std::vector<std::vector<FieldElement>> direct;
    for (u64 i = 0; i < std::min(K, N); ++i) {
      std::vector<FieldElement> row;
      for (u64 v : points[i]) row.push_back(work.from_u64(v));
      direct.push_back(std::move(row));
    }
    values = eval(work, direct);
  }
  if (N > K) {
    const std::vector<DensePoly> psi = build_psi(points, work);
    const SubproductTree extra(work, canonical_points(work, N - K, K));
    std::vector<std::vector<FieldElement>> rows(N - K, std::vector<FieldElement>(params.n));
    for (std::size_t j = 0; j < psi.size(); ++j) {
      const std::vector<FieldElement> col = extra.evaluate(psi[j]);
      for (u64 t = 0; t < N - K; ++t) rows[t][j] = col[t];
    }
    const std::vector<FieldElement> more = eval(work, rows);
    values.insert(values.end(), more.begin(), more.end());
  }
  if (values.size() != N) throw UsageError("evaluator returned the wrong number of values");
  const DensePoly q = SubproductTree(work, canonical_points(work, N)).interpolate(values);
  return package(params, ext, q, work.degree());
}

Proof prove_eval(const Circuit& c, const PointSet& points, const ProtocolParams& params) {
  if (!params_admissible(params, choose_params(c, points.size(), params.q, params.eps_exp))) {
    throw UsageError("protocol parameters do not match the circuit and points");
  }
  const u64 N = params.coefficient_bound();
  if (params.d > 0 && c.has_output() && composition_is_cheaper(c, params.K, N)) {
    PhaseScope phase(Phase::kProver);
    check_points(points, params.n, params.q);
    const Field ext = Field::extension(params.q, params.ell);
    const Field work = N <= params.q ? Field::prime(params.q) : ext;
    return package(params, ext, compose(c, build_psi(points, work), work), work.degree());
  }
  return prove_eval_with(params, points,
                         [&](const Field& f, const std::vector<std::vector<FieldElement>>& rows) {
                           return circuit_values(c, f, rows);
                         });
}

Verdict check_eval_proof(const Circuit& c, const PointSet& points, const Proof& proof,
                         unsigned eps_exp, CoinSource& coins, Field& field, DensePoly& q) {
  PhaseScope phase(Phase::kVerifier);
  const ProtocolParams& hp = proof.params;
  check_points(points, c.n_inputs(), ~u64{0});
  if (hp.q < 2 || hp.q >= kModulusLimit || !is_prime(hp.q)) {
    return Verdict::malformed("proof field characteristic is not a prime below 2^62");
  }
  for (const auto& row : points) {
    for (u64 v : row) {
      if (v >= hp.q) return Verdict::malformed("query point coordinate >= proof characteristic");
    }
  }
  const ProtocolParams expect = choose_params(c, points.size(), hp.q, eps_exp);
  if (!params_admissible(hp, expect)) {
    return Verdict::malformed("proof parameters (ell=" + std::to_string(hp.ell) +
                              ", d=" + std::to_string(hp.d) + ", K=" + std::to_string(hp.K) +
                              ", n=" + std::to_string(hp.n) + ", eps_exp=" +
                              std::to_string(hp.eps_exp) + ") differ from the recomputed (ell>=" +
                              std::to_string(expect.ell) + ", d=" + std::to_string(expect.d) +
                              ", K=" + std::to_string(expect.K) + ", n=" +
                              std::to_string(expect.n) + ", eps_exp=" +
                              std::to_string(expect.eps_exp) + ")");
  }
  if (proof.modulus.size() != hp.ell + 1u) return Verdict::malformed("modulus has the wrong degree");
  for (u64 m : proof.modulus) {
    if (m >= hp.q) return Verdict::malformed("modulus coefficient out of range");
  }
  if (proof.modulus.back() != 1) return Verdict::malformed("modulus is not monic");
  if (!is_irreducible(proof.modulus, hp.q)) return Verdict::malformed("modulus is reducible");
  if (proof.coeffs.size() % hp.ell != 0) return Verdict::malformed("coefficient words not a multiple of ell");
  if (proof.coefficient_count() > hp.coefficient_bound()) {
    return Verdict::malformed("proof has " + std::to_string(proof.coefficient_count()) +
                              " coefficients, bound is " + std::to_string(hp.coefficient_bound()));
  }
  for (u64 w : proof.coeffs) {
    if (w >= hp.q) return Verdict::malformed("coefficient out of range");
  }

  field = Field::with_modulus(hp.q, proof.modulus);
  q = proof.q_poly(field);
  const FieldElement r = field.random_element(coins);
  const std::vector<FieldElement> L = lagrange_at(field, hp.K, r);
  std::vector<FieldElement> psi_r(hp.n, field.zero());
  for (u64 i = 0; i < hp.K; ++i) {
    if (L[i].is_zero()) continue;
    for (u64 j = 0; j < hp.n; ++j) {
      const u64 a = points[i][j];
      if (a == 0) continue;
      if (a == 1) {
        psi_r[j] += L[i];
      } else {
        psi_r[j] += L[i] * field.from_u64(a);
      }
    }
  }
  const FieldElement expected = evaluate(c, field, psi_r);
  if (horner_eval(q, r) != expected) return Verdict::unsound("spot check failed: Q(r) != C(Psi(r))");
  return Verdict::accept();
}

EvalOutput verify_eval(const Circuit& c, const PointSet& points, const Proof& proof,
                       unsigned eps_exp, CoinSource& coins) {
  const std::uint64_t before = coins.bits_consumed();
  EvalOutput out;
  Field field;
  DensePoly q;
  out.verdict = check_eval_proof(c, points, proof, eps_exp, coins, field, q);
  out.coins_used = coins.bits_consumed() - before;
  if (!out.verdict.accepted) return out;

  PhaseScope phase(Phase::kVerifier);
  const std::vector<FieldElement> decoded = multipoint_eval(q, canonical_points(field, proof.params.K));
  out.values.reserve(decoded.size());
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    if (!decoded[i].in_base_field()) {
      out.values.clear();
      out.verdict = Verdict::unsound("decoded value " + std::to_string(i) + " lies outside F_q");
      return out;
    }
    out.values.push_back(decoded[i].coeff(0));
  }
  return out;
}

void record_proof_params(Transcript& t, const Proof& proof) {
  const ProtocolParams& p = proof.params;
  t.set_param("q", p.q);
  t.set_param("ell", std::uint64_t{p.ell});
  t.set_param("d", p.d);
  t.set_param("K", p.K);
  t.set_param("n", p.n);
  t.set_param("eps_exp", std::uint64_t{p.eps_exp});
  t.set_param("modulus", modulus_text(proof.modulus));
}

EvalOutput certify_eval(const Circuit& c, const PointSet& points, u64 q, unsigned eps_exp,
                        CoinSource& coins, Transcript* transcript) {
  const Proof proof = prove_eval(c, points, choose_params(c, points.size(), q, eps_exp));
  coins.drain_record();
  EvalOutput out = verify_eval(c, points, proof, eps_exp, coins);
  if (transcript) {
    record_proof_params(*transcript, proof);
    transcript->add(Sender::kProver, MessageKind::kPoly, words_to_bytes(proof.coeffs));
    transcript->add(Sender::kVerifier, MessageKind::kCoin, coins.drain_record());
    transcript->decision = out.accepted();
    transcript->add(Sender::kVerifier, MessageKind::kDecision, {static_cast<std::uint8_t>(out.accepted())});
  }
  return out;
}

Field upit_field(u64 q, u64 degree, unsigned eps_exp) {
  if (q < 2 || q >= kModulusLimit || !is_prime(q)) throw UsageError("q must be a prime below 2^62");
  const BigInt bound = BigInt(std::max<u64>(degree, 1)) << eps_exp;
  return Field::extension(q, minimal_extension(q, bound));
}

bool upit_random(const Circuit& a, const Circuit& b, u64 q, unsigned eps_exp, CoinSource& coins) {
  const Field f = upit_field(q, univariate_degree(a, b), eps_exp);
  const FieldElement r = f.random_element(coins);
  return eval_univariate(a, f, r) == eval_univariate(b, f, r);
}

bool upit_deterministic(const Circuit& a, const Circuit& b, u64 q) {
  const u64 n = univariate_degree(a, b);
  if (q < 2 || q >= kModulusLimit || !is_prime(q)) throw UsageError("q must be a prime below 2^62");
  if (n + 1 > kMaxProofCoefficients) throw CapacityError("degree too large for interpolation");
  const Field f = Field::extension(q, minimal_extension(q, BigInt(n)));
  const std::vector<FieldElement> pts = canonical_points(f, n + 1);
  const SubproductTree tree(f, pts);
  std::vector<FieldElement> va, vb;
  for (const auto& x : pts) {
    va.push_back(eval_univariate(a, f, x));
    vb.push_back(eval_univariate(b, f, x));
  }
  return tree.interpolate(va) == tree.interpolate(vb);
}

}  // namespace maproof
