#pragma once

#include <cstdint>
#include <vector>

#include "maproof/circuit.hpp"
#include "maproof/field.hpp"
#include "maproof/graph.hpp"

// Brute-force reference implementations. They use their own evaluators and
// exact integers so that no protocol code path is shared.
namespace maproof::oracle {

inline constexpr std::size_t kMaxCubeVars = 20;
inline constexpr std::size_t kMaxQbfVars = 14;
inline constexpr std::size_t kMaxPermutationSize = 8;

// C at each point over F_q (q prime); points are rows of residues.
std::vector<u64> multipoint(const Circuit& c, u64 q, const std::vector<std::vector<u64>>& points);

// sum over {0,1}^n of C mod p. Field operations are counted under
// Phase::kOracle.
u64 cube_sum(const Circuit& c, u64 p);

std::uint64_t sat_count(const BoolFormula& f);
bool qbf(const QuantifiedFormula& phi);
// Integer value of the suffix arithmetization: variables [start, n) are
// folded (sum for E, product for A) over the Boolean matrix, variables below
// start are fixed by `prefix` (bit j = variable j).
BigInt qbf_suffix_value(const QuantifiedFormula& phi, std::size_t start, std::uint64_t prefix);

BigInt permanent(const IntMatrix& m);
// Directed Hamiltonian cycles, each counted once.
BigInt hamiltonian_cycles(const Graph& g);
std::vector<std::uint64_t> orthogonal_counts(const BitVectors& a);
std::vector<std::uint64_t> hamming_counts(const BitVectors& a, std::size_t k);
// Undirected graph; number of k-vertex cliques.
std::uint64_t cliques(const Graph& g, std::size_t k);

}  // namespace maproof::oracle
