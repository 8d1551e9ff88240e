#pragma once

#include <span>
#include <vector>

#include "maproof/modarith.hpp"

namespace maproof::detail {

// Number of transform primes needed for the exact coefficients.
std::size_t ntt_prime_count(const Modulus& q, u64 max_terms);

// Cyclic-free convolution of a and b (words reduced mod q) via number
// theoretic transforms over one to three 62-bit primes and CRT back to F_q.
// max_terms bounds how many products can land in one output word; it decides
// how many primes are needed for the exact integer result.
std::vector<u64> ntt_convolve(std::span<const u64> a, std::span<const u64> b, const Modulus& q,
                              u64 max_terms);

}  // namespace maproof::detail
