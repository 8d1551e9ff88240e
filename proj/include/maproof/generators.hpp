#pragma once

#include <cstdint>
#include <random>

#include "maproof/circuit.hpp"

namespace maproof {

// Random formula over n variables with exactly m connectives. NOT nodes
// appear with probability not_prob at each internal node; leaves are
// variables chosen uniformly.
BoolFormula random_formula(std::size_t n, std::size_t m, std::mt19937_64& rng,
                           double not_prob = 0.2);

// Random quantifier prefix over a random formula.
QuantifiedFormula random_qbf(std::size_t n, std::size_t m, std::mt19937_64& rng);

// Random circuit with one input gate per variable followed by `ops` add/mul
// gates (and occasional small constants). Multiplications are skipped when
// they would push the syntactic degree above max_degree.
Circuit random_circuit(std::size_t n, std::size_t ops, std::uint64_t max_degree,
                       std::mt19937_64& rng);

}  // namespace maproof
