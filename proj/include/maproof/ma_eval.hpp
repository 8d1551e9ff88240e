#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "maproof/circuit.hpp"
#include "maproof/coins.hpp"
#include "maproof/field.hpp"
#include "maproof/poly.hpp"
#include "maproof/transcript.hpp"

namespace maproof {

// K query points, each a row of n residues in [0, q).
using PointSet = std::vector<std::vector<u64>>;

struct ProtocolParams {
  u64 q = 0;
  unsigned ell = 0;
  u64 d = 0;  // syntactic degree of the circuit
  u64 K = 0;
  u64 n = 0;
  unsigned eps_exp = 0;  // soundness error 2^-eps_exp

  // d * (K - 1) + 1
  u64 coefficient_bound() const;

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

// The prover's single message.
struct Proof {
  ProtocolParams params;
  std::vector<u64> modulus;  // ell + 1 coefficients, ascending
  std::vector<u64> coeffs;   // coefficient_count() * ell words, ascending powers

  std::size_t coefficient_count() const;
  DensePoly q_poly(const Field& f) const;
};

enum class RejectReason : std::uint8_t { kNone, kMalformed, kUnsound };

struct Verdict {
  bool accepted = false;
  RejectReason reason = RejectReason::kNone;
  std::string detail;

  static Verdict accept() { return {true, RejectReason::kNone, {}}; }
  static Verdict malformed(std::string why) { return {false, RejectReason::kMalformed, std::move(why)}; }
  static Verdict unsound(std::string why) { return {false, RejectReason::kUnsound, std::move(why)}; }
};

struct EvalOutput {
  std::vector<u64> values;  // present iff accepted
  Verdict verdict;
  std::uint64_t coins_used = 0;

  bool accepted() const { return verdict.accepted; }
};

// Smallest ell with q^ell > max(d, 1) * K * 2^eps_exp. Throws CapacityError
// when that ell exceeds kMaxExtensionDegree or the degree is unbounded.
ProtocolParams choose_params(const Circuit& c, u64 K, u64 q, unsigned eps_exp);
unsigned minimal_extension(u64 q, const BigInt& bound);
// True when `given` equals `minimal` except for a possibly larger ell (up to
// kMaxExtensionDegree). Provers and verifiers accept such parameters.
bool params_admissible(const ProtocolParams& given, const ProtocolParams& minimal);

// canonical_element(start), ..., canonical_element(start + count - 1)
std::vector<FieldElement> canonical_points(const Field& f, u64 count, u64 start = 0);

// Psi_j of degree < K with Psi_j(alpha_i) = points[i][j].
std::vector<DensePoly> build_psi(const PointSet& points, const Field& f);

// Lagrange basis values L_i(r) for the abscissae alpha_0..alpha_{K-1}.
std::vector<FieldElement> lagrange_at(const Field& f, u64 K, const FieldElement& r);

// Honest prover: Q = C(Psi_1, ..., Psi_n) as d * (K - 1) + 1 coefficients.
Proof prove_eval(const Circuit& c, const PointSet& points, const ProtocolParams& params);

// Circuit values at rows of elements of the given working field.
using BatchEvaluator = std::function<std::vector<FieldElement>(
    const Field&, const std::vector<std::vector<FieldElement>>&)>;
// Honest prover for a circuit given only through `eval`; params must already
// describe that circuit.
Proof prove_eval_with(const ProtocolParams& params, const PointSet& points,
                      const BatchEvaluator& eval);

// Header, modulus and degree checks followed by the spot check at one random
// r. On acceptance `field` and `q` hold the verified field and polynomial.
Verdict check_eval_proof(const Circuit& c, const PointSet& points, const Proof& proof,
                         unsigned eps_exp, CoinSource& coins, Field& field, DensePoly& q);

EvalOutput verify_eval(const Circuit& c, const PointSet& points, const Proof& proof,
                       unsigned eps_exp, CoinSource& coins);

// Honest prover and verifier in-process over F_q. When a transcript is
// given, records the proof header, the proof and the verifier's coins.
EvalOutput certify_eval(const Circuit& c, const PointSet& points, u64 q, unsigned eps_exp,
                        CoinSource& coins, Transcript* transcript = nullptr);
// q, ell, d, K, n, eps_exp and modulus of the proof header.
void record_proof_params(Transcript& t, const Proof& proof);

// Univariate identity testing over F_q (extended as needed). Both circuits
// must have at most one input.
Field upit_field(u64 q, u64 degree, unsigned eps_exp);
bool upit_random(const Circuit& a, const Circuit& b, u64 q, unsigned eps_exp, CoinSource& coins);
bool upit_deterministic(const Circuit& a, const Circuit& b, u64 q);

}  // namespace maproof
