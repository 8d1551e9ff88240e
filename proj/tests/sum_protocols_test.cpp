#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "maproof/errors.hpp"
#include "maproof/generators.hpp"
#include "maproof/oracles.hpp"
#include "maproof/sum_protocols.hpp"

using namespace maproof;

namespace {

Circuit product_circuit(std::size_t n) {
  Circuit c(n);
  auto g = c.input(0);
  for (std::size_t j = 1; j < n; ++j) g = c.mul(g, c.input(j));
  c.set_output(g);
  return c;
}

Circuit constant_circuit(std::size_t n, std::int64_t v) {
  Circuit c(n);
  c.set_output(c.constant(v));
  return c;
}

Graph random_digraph(std::size_t n, double prob, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(prob);
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && coin(rng)) g.add_arc(i, j);
  return g;
}

}  // namespace

TEST(HalfSum, Examples) {
  const Circuit c = build_half_sum_circuit(product_circuit(2));
  EXPECT_EQ(c.n_inputs(), 1u);
  EXPECT_EQ(syntactic_degree(c), 1u);
  const Field f = Field::prime(13);
  const FieldElement x = f.from_int(7);
  EXPECT_EQ(evaluate(c, f, std::span(&x, 1)), x);

  const Circuit k = build_half_sum_circuit(constant_circuit(4, 1));
  EXPECT_EQ(k.n_inputs(), 2u);
  EXPECT_EQ(evaluate(k, f, std::vector{f.from_int(5), f.from_int(9)}), f.from_int(4));
  EXPECT_EQ(oracle::cube_sum(k, 101), 16u);
}

TEST(HalfSum, PreservesCubeSumDegreeAndSize) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 8;
    const Circuit c = random_circuit(n, 10 + rng() % 30, 8, rng);
    const Circuit h = build_half_sum_circuit(c);
    EXPECT_EQ(h.n_inputs(), (n + 1) / 2);
    EXPECT_LE(syntactic_degree(h), syntactic_degree(c));
    const std::size_t k = std::size_t{1} << (n / 2);
    EXPECT_LE(h.size(), k * c.size() + k);
    for (u64 p : {2u, 101u, 1000003u}) EXPECT_EQ(oracle::cube_sum(h, p), oracle::cube_sum(c, p));
  }
}

TEST(SumAtCanonical, AgreesWithDecodedSum) {
  std::mt19937_64 rng(2);
  SeededCoins coins(3);
  for (auto [p, ell, deg, K] : {std::tuple<u64, unsigned, std::size_t, u64>{1000003, 1, 500, 64},
                                {1000003, 3, 300, 1024},
                                {101, 2, 150, 50},
                                {101, 2, 40, 90},
                                {3, 5, 30, 20},
                                {7, 3, 40, 7},
                                {1000003, 2, 0, 5},
                                {1000003, 2, 9, 1},
                                {1000003, 2, 9, 2},
                                {65537, 1, 3000, 1024}}) {
    const Field f = Field::extension(p, ell);
    std::vector<FieldElement> c;
    for (std::size_t i = 0; i <= deg; ++i) c.push_back(f.random_element(coins));
    const DensePoly q(f, c);
    FieldElement expect = f.zero();
    for (u64 i = 0; i < K; ++i) expect += horner_eval(q, f.canonical_element(i));
    EXPECT_EQ(sum_at_canonical(q, K), expect) << p << "^" << ell << " deg " << deg;
  }
}

TEST(VerifySum, Examples) {
  const Circuit one = constant_circuit(4, 1);
  const Proof proof = prove_sum(one, 17, 20);
  SeededCoins coins(1);
  EXPECT_TRUE(verify_sum(one, 17, proof, 20, coins, 16).accepted());
  const SumOutput bad = verify_sum(one, 17, proof, 20, coins, 15);
  EXPECT_EQ(bad.verdict.reason, RejectReason::kUnsound);

  for (std::size_t n = 1; n <= 7; ++n) {
    const Circuit c = product_circuit(n);
    const SumOutput out = verify_sum(c, 101, prove_sum(c, 101, 16), 16, coins);
    ASSERT_TRUE(out.accepted()) << out.verdict.detail;
    EXPECT_EQ(out.sum, 1u);
  }
}

TEST(VerifySum, AgreesWithEnumeration) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = rng() % 11;
    const u64 p = std::vector<u64>{2, 3, 101, 1000003}[t % 4];
    Circuit c = n == 0 ? constant_circuit(0, 5) : random_circuit(n, 10 + rng() % 30, 6, rng);
    const u64 expect = oracle::cube_sum(c, p);
    const unsigned eps = 4 + rng() % 20;
    const Proof proof = prove_sum(c, p, eps);
    SeededCoins coins(t);
    const SumOutput ok = verify_sum(c, p, proof, eps, coins, expect);
    ASSERT_TRUE(ok.accepted()) << ok.verdict.detail;
    EXPECT_EQ(ok.sum, expect);
    EXPECT_FALSE(verify_sum(c, p, proof, eps, coins, (expect + 1) % p).accepted());
  }
}

TEST(VerifySum, TamperedProofRejected) {
  std::mt19937_64 rng(5);
  const BoolFormula f = random_formula(8, 20, rng);
  const Circuit c = arithmetize(f);
  const u64 p = sat_prime(8);
  const Proof honest = prove_sum(c, p, 30);
  for (std::size_t i = 0; i < honest.coeffs.size(); i += 7) {
    Proof bad = honest;
    bad.coeffs[i] = (bad.coeffs[i] + 1) % p;
    SeededCoins coins(i);
    EXPECT_EQ(verify_sum(c, p, bad, 30, coins).verdict.reason, RejectReason::kUnsound);
  }
}

TEST(CountSat, Examples) {
  SeededCoins coins(1);
  EXPECT_EQ(count_sat(parse_formula("x1 & !x1"), 20, coins).value, 0);
  EXPECT_EQ(count_sat(parse_formula("x1 | x2"), 20, coins).value, 3);
  EXPECT_EQ(count_sat(parse_formula("1"), 20, coins).value, 1);
}

TEST(CountSat, AgreesWithEnumeration) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 40; ++t) {
    const BoolFormula f = random_formula(8, rng() % 30, rng);
    SeededCoins coins(t);
    const CertifiedValue cv = count_sat(f, 20, coins);
    ASSERT_TRUE(cv.accepted()) << cv.out.verdict.detail;
    EXPECT_EQ(cv.value, oracle::sat_count(f));
  }
}

TEST(Multiround, AgreesWithOneRound) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const BoolFormula f = random_formula(1 + rng() % 10, rng() % 30, rng);
    const std::uint64_t expect = oracle::sat_count(f);
    for (unsigned rounds : {1u, 2u, 3u}) {
      SeededCoins coins(100 * t + rounds);
      const CertifiedValue cv = count_sat(f, 20, coins, rounds);
      ASSERT_TRUE(cv.accepted()) << rounds << ": " << cv.out.verdict.detail;
      EXPECT_EQ(cv.value, expect);
    }
  }
}

TEST(Multiround, BlocksAndDegrees) {
  const MultiroundParams mp = multiround_params(product_circuit(10), 1031, 3, 8);
  EXPECT_EQ(mp.blocks, (std::vector<std::size_t>{3, 3, 2, 2}));
  EXPECT_EQ(mp.round_degree(0), 10u * 7);
  EXPECT_EQ(mp.round_degree(2), 10u * 3);
  EXPECT_THROW(multiround_params(product_circuit(3), 1031, 0, 8), UsageError);
}

TEST(Multiround, TamperedRoundRejected) {
  std::mt19937_64 rng(8);
  const BoolFormula f = random_formula(9, 25, rng);
  const Circuit c = arithmetize(f);
  const u64 p = sat_prime(9);
  const MultiroundParams mp = multiround_params(c, p, 3, 0);
  const RoundProver honest = honest_round_prover(c, mp);
  for (std::size_t target = 0; target < 3; ++target) {
    const RoundProver cheat = [&](std::size_t k, std::span<const FieldElement> rs) {
      auto w = honest(k, rs);
      if (k == target) w[0] = (w[0] + 1) % p;
      return w;
    };
    int rejected = 0;
    const int trials = 200;
    for (int s = 0; s < trials; ++s) {
      SeededCoins coins(s);
      rejected += !multiround_sum(c, mp, cheat, coins).accepted();
    }
    const double bound = 1.0 - static_cast<double>(mp.round_degree(target)) / p;
    EXPECT_GE(rejected, bound * trials - 3 * std::sqrt(trials * bound * (1 - bound)) - 1e-9);
  }
}

TEST(Multiround, TranscriptReplayReproducesDecision) {
  std::mt19937_64 rng(9);
  const BoolFormula f = random_formula(7, 15, rng);
  const Circuit c = arithmetize(f);
  const u64 p = sat_prime(7);
  const MultiroundParams mp = multiround_params(c, p, 2, 10);
  Transcript t;
  SeededCoins coins(5);
  const SumOutput live = multiround_sum(c, mp, honest_round_prover(c, mp), coins, std::nullopt, &t);
  ASSERT_TRUE(live.accepted());
  EXPECT_EQ(t.param_u64("rounds"), 2u);
  std::vector<std::vector<u64>> polys;
  for (const Message& m : t.rounds) {
    if (m.kind == MessageKind::kPoly) polys.push_back(bytes_to_words(m.payload));
  }
  ASSERT_EQ(polys.size(), 2u);
  const RoundProver recorded = [&](std::size_t k, std::span<const FieldElement>) { return polys[k]; };
  ReplayCoins replay(t.coin_record());
  const SumOutput again = multiround_sum(c, mp, recorded, replay, std::nullopt);
  EXPECT_TRUE(again.accepted());
  EXPECT_EQ(again.sum, live.sum);
  EXPECT_EQ(again.coins_used, live.coins_used);
}

TEST(Ryser, Examples) {
  SeededCoins coins(1);
  EXPECT_EQ(permanent({{1, 0}, {0, 1}}, 20, coins).value, 1);
  EXPECT_EQ(permanent({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, 20, coins).value, 6);
  EXPECT_EQ(permanent({{1, 2}, {3, -4}}, 20, coins).value, 2);
  EXPECT_EQ(permanent({{0, 0}, {5, 5}}, 20, coins).value, 0);
  EXPECT_LE(syntactic_degree(ryser_circuit(IntMatrix(4, std::vector<std::int64_t>(4, 1)))), 8u);
}

TEST(Ryser, CubeSumMatchesPermutationExpansion) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng() % 6;
    IntMatrix m(n, std::vector<std::int64_t>(n));
    for (auto& row : m)
      for (auto& v : row) v = t % 2 ? static_cast<std::int64_t>(rng() % 2) : static_cast<std::int64_t>(rng() % 7) - 3;
    const BigInt expect = oracle::permanent(m);
    const u64 p = 1000003;
    const u64 sum = oracle::cube_sum(ryser_circuit(m), p);
    EXPECT_EQ(BigInt(sum), ((expect % p) + p) % p);
    SeededCoins coins(t);
    const CertifiedValue cv = permanent(m, 16, coins, 1 + t % 3);
    ASSERT_TRUE(cv.accepted()) << cv.out.verdict.detail;
    EXPECT_EQ(cv.value, expect);
  }
}

TEST(Hamiltonian, Examples) {
  SeededCoins coins(1);
  Graph tri(3);
  tri.add_arc(0, 1);
  tri.add_arc(1, 2);
  tri.add_arc(2, 0);
  EXPECT_EQ(hamiltonian_cycles(tri, false, 20, coins).value, 1);
  Graph path(4);
  for (int i = 0; i < 3; ++i) path.add_edge(i, i + 1);
  EXPECT_EQ(hamiltonian_cycles(path, false, 20, coins).value, 0);
  EXPECT_EQ(hamiltonian_cycles(Graph::complete(4), false, 20, coins).value, 6);
  EXPECT_EQ(hamiltonian_cycles(Graph::complete(4), true, 20, coins).value, 3);
  EXPECT_THROW(hamiltonian_cycles(Graph::complete(2), true, 20, coins), UsageError);
  EXPECT_THROW(hamiltonian_cycles(tri, true, 20, coins), UsageError);
}

TEST(Hamiltonian, MatchesEnumeration) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng() % 5;
    const Graph g = random_digraph(n, 0.6, rng);
    const BigInt expect = oracle::hamiltonian_cycles(g);
    EXPECT_EQ(BigInt(oracle::cube_sum(hamiltonian_circuit(g), 1000003)), expect);
    SeededCoins coins(t);
    const CertifiedValue cv = hamiltonian_cycles(g, false, 16, coins, 1 + t % 3);
    ASSERT_TRUE(cv.accepted()) << cv.out.verdict.detail;
    EXPECT_EQ(cv.value, expect);
  }
}
