#include "maproof/generators.hpp"

#include <algorithm>

#include "maproof/errors.hpp"

namespace maproof {

namespace {

std::uint32_t grow(BoolFormula& f, std::size_t n, std::size_t m, std::mt19937_64& rng,
                   double not_prob) {
  if (m == 0) return f.var(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  if (std::bernoulli_distribution(not_prob)(rng)) return f.negate(grow(f, n, m - 1, rng, not_prob));
  const std::size_t left = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
  const std::uint32_t a = grow(f, n, left, rng, not_prob);
  const std::uint32_t b = grow(f, n, m - 1 - left, rng, not_prob);
  return std::bernoulli_distribution(0.5)(rng) ? f.conj(a, b) : f.disj(a, b);
}

}  // namespace

BoolFormula random_formula(std::size_t n, std::size_t m, std::mt19937_64& rng, double not_prob) {
  if (n == 0) throw UsageError("random_formula: need at least one variable");
  BoolFormula f(n);
  f.set_root(grow(f, n, m, rng, not_prob));
  return f;
}

QuantifiedFormula random_qbf(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  QuantifiedFormula q;
  q.matrix = random_formula(n, m, rng);
  for (std::size_t i = 0; i < n; ++i) {
    q.prefix.push_back(std::bernoulli_distribution(0.5)(rng) ? Quantifier::kExists
                                                              : Quantifier::kForall);
  }
  return q;
}

Circuit random_circuit(std::size_t n, std::size_t ops, std::uint64_t max_degree,
                       std::mt19937_64& rng) {
  Circuit c(n);
  std::vector<std::uint64_t> deg;
  for (std::size_t j = 0; j < n; ++j) {
    c.input(j);
    deg.push_back(1);
  }
  if (n == 0) {
    c.constant(1);
    deg.push_back(0);
  }
  for (std::size_t k = 0; k < ops; ++k) {
    if (std::bernoulli_distribution(0.1)(rng)) {
      c.constant(std::uniform_int_distribution<std::int64_t>(-3, 3)(rng));
      deg.push_back(0);
      continue;
    }
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(c.size() - 1));
    // Bias operands toward recent gates so the output depends on most gates.
    const std::uint32_t a = std::max(pick(rng), pick(rng));
    const std::uint32_t b = pick(rng);
    if (std::bernoulli_distribution(0.5)(rng) && deg[a] + deg[b] <= max_degree) {
      c.mul(a, b);
      deg.push_back(deg[a] + deg[b]);
    } else {
      c.add(a, b);
      deg.push_back(std::max(deg[a], deg[b]));
    }
  }
  c.set_output(static_cast<std::uint32_t>(c.size() - 1));
  return c;
}

}  // namespace maproof
