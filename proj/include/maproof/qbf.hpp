#pragma once

#include <cstdint>

#include "maproof/circuit.hpp"
#include "maproof/coins.hpp"
#include "maproof/ma_eval.hpp"
#include "maproof/transcript.hpp"

namespace maproof {

struct QbfParams {
  double delta = 2.0 / 3.0;       // fraction of variables in the arithmetized suffix
  unsigned prime_interval_exp = 0;  // primes come from [2, 2^exp * m]; 0 selects the default
  unsigned eps_exp = 40;            // soundness error of the evaluation proof
};

// ceil(delta * n), clamped to [0, n].
std::size_t suffix_length(std::size_t n, double delta);
// min(max(2 n^2, 40), 52)
unsigned default_prime_exp(std::size_t n);

// Swaps every quantifier and negates the matrix; the result has the opposite
// truth value.
QuantifiedFormula flip(const QuantifiedFormula& phi);

struct FlipResult {
  QuantifiedFormula phi;
  bool negated = false;
};

// Flips when the suffix holds more universal than existential quantifiers.
FlipResult flip_if_needed(const QuantifiedFormula& phi, double delta);

// Circuit over the prefix variables obtained by replacing each suffix
// quantifier with a sum (exists) or product (forall) over {0, 1}. Over the
// integers its value on a Boolean prefix is nonzero iff the suffix formula
// holds.
Circuit suffix_arithmetize(const QuantifiedFormula& phi, double delta);

// B with 0 <= P'(b) <= 2^B on every Boolean prefix b.
std::uint64_t suffix_value_bits(const QuantifiedFormula& phi, std::size_t suffix);

// Upper bound on the chance that a prime drawn uniformly from [2, top]
// divides one of `values` nonzero integers below 2^bits.
double prime_failure_bound(std::uint64_t values, std::uint64_t bits, u64 top);

// Uniform prime in [2, top] by rejection sampling.
u64 sample_prime(u64 top, CoinSource& coins);

struct QbfResult {
  bool value = false;  // meaningful when accepted
  bool negated = false;
  std::size_t suffix = 0;
  unsigned prime_exp = 0;
  u64 interval_top = 0;
  u64 p = 0;
  double prime_failure = 0;  // bound for the unlucky-prime event
  double eval_failure = 0;   // 2^-eps_exp, the unlucky-coin event
  EvalOutput eval;
  std::uint64_t coins_used = 0;

  bool accepted() const { return eval.accepted(); }
};

// Verifier draws p, the honest prover sends an evaluation proof for P' mod p
// on all Boolean prefixes, the verifier checks it and folds the prefix
// quantifiers over the decoded truth table.
QbfResult qbf_decide(const QuantifiedFormula& phi, const QbfParams& params, CoinSource& coins,
                     Transcript* transcript = nullptr);

}  // namespace maproof
