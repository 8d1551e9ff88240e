#pragma once

#include <cstdint>
#include <vector>

#include "maproof/circuit.hpp"
#include "maproof/graph.hpp"
#include "maproof/ma_eval.hpp"

namespace maproof {

struct CountsOutput {
  EvalOutput eval;
  u64 p = 0;
  std::vector<u64> counts;  // one per input vector, present when accepted

  bool accepted() const { return eval.accepted(); }
};

// sum_{v in A} prod_i (1 - x_i v_i) over d inputs.
Circuit ov_circuit(const BitVectors& a);
// For each u in A, the number of v in A with <u, v> = 0.
CountsOutput ov_count(const BitVectors& a, unsigned eps_exp, CoinSource& coins,
                      Transcript* transcript = nullptr);

// Circuit over F_p: sum_{w in A} Psi(sum_i (1 - 2 x_i)(1 - 2 w_i)) where Psi
// interpolates the indicator of j >= d - 2k on j = -d..d.
Circuit hamming_circuit(const BitVectors& a, std::size_t k, u64 p);
// For each v in A, the number of w in A within Hamming distance k.
CountsOutput hamming_count(const BitVectors& a, std::size_t k, unsigned eps_exp, CoinSource& coins,
                           Transcript* transcript = nullptr);

// e_k(x_1, ..., x_n) by the prefix recurrence e_j += x_i e_{j-1}.
Circuit elementary_symmetric_circuit(std::size_t k, std::size_t n);

struct CliqueOutput {
  EvalOutput eval;
  Verdict verdict;  // eval's verdict, or unsound when the division is not exact
  u64 p = 0;
  std::size_t ell = 0;
  u64 multiplicity = 0;  // C(k, ell)
  u64 certified_sum = 0;
  u64 remainder = 0;
  u64 count = 0;

  bool accepted() const { return verdict.accepted; }
};

// All cliques of the given size in an undirected graph, as sorted vertex lists.
std::vector<std::vector<std::size_t>> enumerate_cliques(const Graph& g, std::size_t size);
// sum over ell-cliques S of e_{k-ell} on the joint neighbourhood of S.
Circuit kclique_circuit(const Graph& g, std::size_t k, std::size_t ell);
CliqueOutput kclique_count(const Graph& g, std::size_t k, unsigned eps_exp, CoinSource& coins,
                           Transcript* transcript = nullptr);

}  // namespace maproof
