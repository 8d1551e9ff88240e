#include "maproof/qbf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "maproof/errors.hpp"

namespace maproof {

namespace {

constexpr std::size_t kMaxSuffix = 24;
constexpr std::size_t kMaxPrefix = 30;
constexpr unsigned kPrimeDraws = 1u << 20;

void check_shape(const QuantifiedFormula& phi) {
  if (phi.prefix.size() != phi.matrix.n_vars()) {
    throw UsageError("quantifier prefix length differs from the number of variables");
  }
}

std::size_t count(const QuantifiedFormula& phi, std::size_t from, Quantifier q) {
  return static_cast<std::size_t>(std::count(phi.prefix.begin() + from, phi.prefix.end(), q));
}

}  // namespace

std::size_t suffix_length(std::size_t n, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw UsageError("delta must lie in [0, 1]");
  const double t = std::ceil(delta * static_cast<double>(n) - 1e-9);
  return std::min(n, static_cast<std::size_t>(std::max(0.0, t)));
}

unsigned default_prime_exp(std::size_t n) {
  const std::size_t e = std::max<std::size_t>(2 * n * n, 40);
  return static_cast<unsigned>(std::min<std::size_t>(e, 52));
}

QuantifiedFormula flip(const QuantifiedFormula& phi) {
  QuantifiedFormula out = phi;
  for (auto& q : out.prefix) q = q == Quantifier::kExists ? Quantifier::kForall : Quantifier::kExists;
  out.matrix.set_root(out.matrix.negate(out.matrix.root()));
  return out;
}

FlipResult flip_if_needed(const QuantifiedFormula& phi, double delta) {
  check_shape(phi);
  const std::size_t from = phi.prefix.size() - suffix_length(phi.prefix.size(), delta);
  if (count(phi, from, Quantifier::kForall) > count(phi, from, Quantifier::kExists)) {
    return {flip(phi), true};
  }
  return {phi, false};
}

Circuit suffix_arithmetize(const QuantifiedFormula& phi, double delta) {
  check_shape(phi);
  const std::size_t n = phi.prefix.size();
  const std::size_t t = suffix_length(n, delta);
  const std::size_t free = n - t;
  if (t > kMaxSuffix) throw CapacityError("suffix too long to expand");
  const Circuit p = arithmetize(phi.matrix);
  Circuit out(free);
  std::vector<std::uint32_t> map(n);
  for (std::size_t j = 0; j < free; ++j) map[j] = out.input(j);
  std::uint32_t zero = 0, one = 0;
  if (t > 0) {
    zero = out.constant(0);
    one = out.constant(1);
  }
  // vals[b]: bit j of b assigns variable free + j.
  std::vector<std::uint32_t> vals;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << t); ++b) {
    for (std::size_t j = 0; j < t; ++j) map[free + j] = (b >> j) & 1 ? one : zero;
    vals.push_back(out.append(p, map));
  }
  for (std::size_t v = n; v-- > free;) {
    const std::size_t half = vals.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
      vals[i] = phi.prefix[v] == Quantifier::kExists ? out.add(vals[i], vals[i + half])
                                                     : out.mul(vals[i], vals[i + half]);
    }
    vals.resize(half);
  }
  out.set_output(vals[0]);
  return out;
}

std::uint64_t suffix_value_bits(const QuantifiedFormula& phi, std::size_t suffix) {
  check_shape(phi);
  const std::size_t n = phi.prefix.size();
  if (suffix > n) throw UsageError("suffix longer than the prefix");
  std::uint64_t bits = 0;
  for (std::size_t v = n; v-- > n - suffix;) {
    if (phi.prefix[v] == Quantifier::kExists) {
      bits += 1;
    } else {
      if (bits > (std::uint64_t{1} << 62)) throw CapacityError("suffix value bound overflows");
      bits *= 2;
    }
  }
  return bits;
}

double prime_failure_bound(std::uint64_t values, std::uint64_t bits, u64 top) {
  if (values == 0 || bits == 0) return 0.0;
  double primes;
  if (top < 17) {
    primes = 0;
    for (u64 x = 2; x <= top; ++x) primes += is_prime(x);
  } else {
    // pi(x) > x / ln x for x >= 17.
    const double x = static_cast<double>(top);
    primes = x / std::log(x);
  }
  if (primes == 0) return 1.0;
  return std::min(1.0, static_cast<double>(values) * static_cast<double>(bits) / primes);
}

u64 sample_prime(u64 top, CoinSource& coins) {
  if (top < 2) throw UsageError("prime interval [2, " + std::to_string(top) + "] holds no prime");
  const u64 range = top - 1;
  const unsigned width = static_cast<unsigned>(std::bit_width(range - 1));
  for (unsigned draw = 0; draw < kPrimeDraws; ++draw) {
    const u64 v = width == 0 ? 0 : coins.take(width);
    if (v >= range) continue;
    if (is_prime(v + 2)) return v + 2;
  }
  throw CapacityError("no prime found within the draw budget");
}

QbfResult qbf_decide(const QuantifiedFormula& phi, const QbfParams& params, CoinSource& coins,
                     Transcript* transcript) {
  check_shape(phi);
  const std::size_t n = phi.prefix.size();
  if (n == 0) throw UsageError("QBF needs at least one variable");
  QbfResult res;
  const FlipResult fl = flip_if_needed(phi, params.delta);
  res.negated = fl.negated;
  res.suffix = suffix_length(n, params.delta);
  const std::size_t free = n - res.suffix;
  if (free > kMaxPrefix) throw CapacityError("too many prefix variables");
  res.prime_exp = params.prime_interval_exp ? params.prime_interval_exp : default_prime_exp(n);
  const u64 m = std::max<std::size_t>(phi.matrix.connectives(), 1);
  if (res.prime_exp >= 62 || m >= (kModulusLimit >> res.prime_exp)) {
    throw CapacityError("prime interval exceeds 2^62");
  }
  res.interval_top = (u64{1} << res.prime_exp) * m;
  const std::uint64_t K = std::uint64_t{1} << free;
  res.prime_failure = prime_failure_bound(K, suffix_value_bits(fl.phi, res.suffix), res.interval_top);
  res.eval_failure = std::ldexp(1.0, -static_cast<int>(params.eps_exp));

  if (transcript) {
    transcript->protocol = "qbf";
    transcript->set_param("n", std::uint64_t{n});
    transcript->set_param("m", m);
    transcript->set_param("delta", std::to_string(params.delta));
    transcript->set_param("suffix", std::uint64_t{res.suffix});
    transcript->set_param("negated", std::uint64_t{res.negated});
    transcript->set_param("prime_exp", std::uint64_t{res.prime_exp});
    transcript->set_param("interval_top", res.interval_top);
    transcript->set_param("eps_exp", std::uint64_t{params.eps_exp});
  }
  const std::uint64_t before = coins.bits_consumed();
  coins.drain_record();

  // Round 1: the verifier's prime.
  res.p = sample_prime(res.interval_top, coins);
  if (transcript) {
    transcript->add(Sender::kVerifier, MessageKind::kCoin, coins.drain_record());
    transcript->add(Sender::kVerifier, MessageKind::kPrime, words_to_bytes(std::vector<u64>{res.p}));
  }

  // Round 2: evaluation proof for P' mod p on every Boolean prefix.
  const Circuit pp = suffix_arithmetize(fl.phi, params.delta);
  PointSet points(K, std::vector<u64>(free));
  for (std::uint64_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < free; ++j) points[i][j] = (i >> j) & 1;
  const ProtocolParams pr = choose_params(pp, K, res.p, params.eps_exp);
  const Proof proof = prove_eval(pp, points, pr);
  if (transcript) {
    transcript->set_param("p", res.p);
    transcript->set_param("ell", std::uint64_t{pr.ell});
    transcript->set_param("d", pr.d);
    transcript->set_param("K", pr.K);
    transcript->set_param("modulus", modulus_text(proof.modulus));
    transcript->add(Sender::kProver, MessageKind::kPoly, words_to_bytes(proof.coeffs));
  }

  // Round 3: spot check, then the prefix fold over the decoded truth table.
  res.eval = verify_eval(pp, points, proof, params.eps_exp, coins);
  res.coins_used = coins.bits_consumed() - before;
  if (transcript) transcript->add(Sender::kVerifier, MessageKind::kCoin, coins.drain_record());
  if (res.accepted()) {
    std::vector<bool> table(K);
    for (std::uint64_t i = 0; i < K; ++i) table[i] = res.eval.values[i] != 0;
    for (std::size_t v = free; v-- > 0;) {
      const std::size_t half = table.size() / 2;
      for (std::size_t i = 0; i < half; ++i) {
        table[i] = fl.phi.prefix[v] == Quantifier::kExists ? table[i] || table[i + half]
                                                           : table[i] && table[i + half];
      }
      table.resize(half);
    }
    res.value = table[0] != res.negated;
  }
  if (transcript) {
    transcript->set_param("value", std::uint64_t{res.value});
    transcript->decision = res.accepted();
    transcript->add(Sender::kVerifier, MessageKind::kDecision,
                    {static_cast<std::uint8_t>(res.accepted())});
  }
  return res;
}

}  // namespace maproof
