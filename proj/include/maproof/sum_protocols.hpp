#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "maproof/circuit.hpp"
#include "maproof/graph.hpp"
#include "maproof/ma_eval.hpp"
#include "maproof/transcript.hpp"

namespace maproof {

// C'(x) = sum over b in {0,1}^floor(n/2) of C(x, b): the first ceil(n/2)
// variables stay free, the rest are summed.
Circuit build_half_sum_circuit(const Circuit& c);

// 2^bits rows; row i holds the bits of i, least significant first.
PointSet boolean_points(std::size_t bits);

// Sum of q over the canonical abscissae alpha_0..alpha_{K-1}. Uses the power
// sums of 0..K-1 when K <= p, multipoint evaluation otherwise.
FieldElement sum_at_canonical(const DensePoly& q, u64 K);

struct SumOutput {
  Verdict verdict;
  u64 sum = 0;  // certified sum mod p, meaningful when accepted
  std::uint64_t coins_used = 0;

  bool accepted() const { return verdict.accepted; }
};

// One-round protocol: an evaluation proof for C' on the Boolean points.
ProtocolParams sum_params(const Circuit& c, u64 p, unsigned eps_exp);
Proof prove_sum(const Circuit& c, u64 p, unsigned eps_exp);
// Rejects as unsound when `claimed` is given and differs from the sum.
SumOutput verify_sum(const Circuit& c, u64 p, const Proof& proof, unsigned eps_exp,
                     CoinSource& coins, std::optional<u64> claimed = std::nullopt);

// Multi-round protocol: the variables split into rounds + 1 blocks of
// near-equal size (larger blocks first).
struct MultiroundParams {
  u64 p = 0;
  unsigned ell = 0;
  u64 d = 0;
  std::vector<std::size_t> blocks;
  unsigned eps_exp = 0;

  std::size_t rounds() const { return blocks.size() - 1; }
  // Degree bound of the round-k message (0-based): d * (2^blocks[k] - 1).
  u64 round_degree(std::size_t k) const;
};

MultiroundParams multiround_params(const Circuit& c, u64 p, unsigned rounds, unsigned eps_exp);

// Round-k message (0-based) given the verifier's coins so far, as
// coefficient words over F_{p^ell} with the smallest modulus.
using RoundProver =
    std::function<std::vector<u64>(std::size_t k, std::span<const FieldElement> coins)>;
RoundProver honest_round_prover(const Circuit& c, const MultiroundParams& mp);

SumOutput multiround_sum(const Circuit& c, const MultiroundParams& mp, const RoundProver& prover,
                         CoinSource& coins, std::optional<u64> claimed = std::nullopt,
                         Transcript* transcript = nullptr);

// Honest prover and verifier in-process. rounds == 1 selects the one-round
// protocol, rounds >= 2 the multi-round one.
SumOutput certify_cube_sum(const Circuit& c, u64 p, unsigned eps_exp, unsigned rounds,
                           CoinSource& coins, Transcript* transcript = nullptr);

// Smallest prime above 2^n (n <= 60).
u64 sat_prime(std::size_t n);

struct CertifiedValue {
  SumOutput out;
  u64 p = 0;
  BigInt value;  // decoded answer, meaningful when accepted

  bool accepted() const { return out.accepted(); }
};

CertifiedValue count_sat(const BoolFormula& f, unsigned eps_exp, CoinSource& coins,
                         unsigned rounds = 1, Transcript* transcript = nullptr);

// Inclusion-exclusion circuit whose cube sum is perm(m):
// prod_j (1 - 2 y_j) * prod_i (sum_j m[i][j] y_j) * (-1)^n.
Circuit ryser_circuit(const IntMatrix& m);
CertifiedValue permanent(const IntMatrix& m, unsigned eps_exp, CoinSource& coins,
                         unsigned rounds = 1, Transcript* transcript = nullptr);

// Inputs are the indicators of vertices 2..n; vertex 1 is always present.
// The cube sum is the number of directed Hamiltonian cycles.
Circuit hamiltonian_circuit(const Graph& g);
// Directed cycles. An undirected graph (n >= 3) is counted as a symmetric
// digraph and the result halved.
CertifiedValue hamiltonian_cycles(const Graph& g, bool undirected, unsigned eps_exp,
                                  CoinSource& coins, unsigned rounds = 1,
                                  Transcript* transcript = nullptr);

}  // namespace maproof
