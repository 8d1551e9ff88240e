#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "maproof/errors.hpp"
#include "maproof/field.hpp"

using namespace maproof;

namespace {

std::vector<bool> sieve(std::size_t n) {
  std::vector<bool> prime(n + 1, true);
  prime[0] = false;
  if (n >= 1) prime[1] = false;
  for (std::size_t i = 2; i * i <= n; ++i)
    if (prime[i])
      for (std::size_t j = i * i; j <= n; j += i) prime[j] = false;
  return prime;
}

// Trial division by every monic polynomial of degree 1..deg/2 over F_q,
// enumerated explicitly. Independent of the gcd-based test.
bool irreducible_by_trial_division(const std::vector<u64>& f, u64 q) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::vector<u64> g(d + 1, 0);
    g[d] = 1;
    for (;;) {
      std::vector<long long> r(f.begin(), f.end());
      for (std::size_t i = deg + 1; i-- > d;) {
        const long long c = ((r[i] % (long long)q) + q) % q;
        for (std::size_t j = 0; j <= d; ++j) r[i - d + j] -= c * (long long)g[j];
      }
      bool zero = true;
      for (std::size_t i = 0; i < d; ++i) zero &= (((r[i] % (long long)q) + q) % q) == 0;
      if (zero) return false;
      std::size_t k = 0;
      while (k < d && ++g[k] == q) g[k++] = 0;
      if (k == d) break;
    }
  }
  return true;
}

}  // namespace

TEST(PrimeField, SmallArithmetic) {
  Field f5 = Field::prime(5);
  EXPECT_EQ(f5.from_int(3) + f5.from_int(4), f5.from_int(2));
  EXPECT_EQ(f5.from_int(-1), f5.from_int(4));
  Field f7 = Field::prime(7);
  EXPECT_EQ(f7.inv(f7.from_int(3)), f7.from_int(5));
  EXPECT_THROW(f7.inv(f7.zero()), DomainError);
}

TEST(PrimeField, InverseOfEveryElementSmallPrimes) {
  for (u64 q : {2u, 3u, 5u, 7u, 101u}) {
    Field f = Field::prime(q);
    for (u64 a = 1; a < q; ++a) EXPECT_TRUE((f.from_u64(a) * f.inv(f.from_u64(a))).is_one());
  }
}

TEST(PrimeField, LargeModulusMatchesWideMultiplication) {
  const u64 q = find_prime((u64{1} << 61) - 100);
  ASSERT_LT(q, kModulusLimit);
  Field f = Field::prime(q);
  u64 a = 0x123456789abcdefULL % q, b = 0x0fedcba987654321ULL % q;
  for (int i = 0; i < 1000; ++i) {
    const u64 expect = static_cast<u64>(static_cast<u128>(a) * b % q);
    EXPECT_EQ((f.from_u64(a) * f.from_u64(b)).coeff(0), expect);
    a = (a * 6364136223846793005ULL + 1442695040888963407ULL) % q;
    b = (b ^ (b << 13)) % q;
  }
}

TEST(FindPrime, MatchesSieve) {
  EXPECT_EQ(find_prime(10), 11u);
  EXPECT_EQ(find_prime(16), 17u);
  const auto p = sieve(1u << 21);
  auto next = [&](u64 b) {
    u64 c = b + 1;
    while (!p[c]) ++c;
    return c;
  };
  EXPECT_EQ(find_prime(1u << 20), next(1u << 20));
  for (u64 b = 2; b < 5000; ++b) ASSERT_EQ(find_prime(b), next(b)) << b;
  EXPECT_THROW(find_prime(1), UsageError);
  EXPECT_THROW(find_prime(u64{1} << 61), UsageError);
}

TEST(IsPrime, MatchesSieve) {
  const auto p = sieve(100000);
  for (u64 n = 0; n <= 100000; ++n) ASSERT_EQ(is_prime(n), p[n]) << n;
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
  EXPECT_TRUE(is_prime(2305843009213693951ULL));  // 2^61 - 1
}

TEST(Irreducible, KnownCases) {
  EXPECT_TRUE(is_irreducible(std::vector<u64>{1, 1, 1}, 2));
  EXPECT_FALSE(is_irreducible(std::vector<u64>{1, 0, 1}, 2));
  EXPECT_TRUE(is_irreducible(std::vector<u64>{1, 1, 0, 1}, 2));
  EXPECT_THROW(is_irreducible(std::vector<u64>{1, 1, 2}, 3), UsageError);
  EXPECT_THROW(is_irreducible(std::vector<u64>{1}, 3), UsageError);
}

TEST(Irreducible, AgreesWithTrialDivision) {
  for (u64 q : {2u, 3u, 5u}) {
    for (std::size_t deg = 1; deg <= (q == 2 ? 8u : 4u); ++deg) {
      std::vector<u64> f(deg + 1, 0);
      f[deg] = 1;
      for (;;) {
        ASSERT_EQ(is_irreducible(f, q), irreducible_by_trial_division(f, q));
        std::size_t k = 0;
        while (k < deg && ++f[k] == q) f[k++] = 0;
        if (k == deg) break;
      }
    }
  }
}

TEST(Extension, SmallestModulus) {
  EXPECT_EQ(Field::extension(2, 2).modulus(), (std::vector<u64>{1, 1, 1}));
  EXPECT_EQ(Field::extension(2, 3).modulus(), (std::vector<u64>{1, 1, 0, 1}));
  EXPECT_EQ(Field::extension(7, 1).modulus(), (std::vector<u64>{0, 1}));
  // Lexicographic minimality checked against trial division.
  for (auto [q, ell] : {std::pair<u64, unsigned>{3, 2}, {3, 3}, {5, 2}, {2, 5}, {2, 8}, {5, 4}, {3, 4}, {7, 3}, {13, 6}, {11, 4}}) {
    const auto& m = Field::extension(q, ell).modulus();
    std::vector<u64> f(ell + 1, 0);
    f[ell] = 1;
    while (f != m) {
      EXPECT_FALSE(irreducible_by_trial_division(f, q));
      std::size_t k = 0;
      while (k < ell && ++f[k] == q) f[k++] = 0;
    }
    EXPECT_TRUE(irreducible_by_trial_division(m, q));
  }
}

TEST(Extension, GF4Arithmetic) {
  Field f = Field::extension(2, 2);
  const FieldElement x = f.canonical_element(2);
  EXPECT_EQ(x * x, f.canonical_element(3));  // x^2 = x + 1
  EXPECT_EQ(f.inv(x), f.canonical_element(3));
}

TEST(Extension, CanonicalElements) {
  Field f = Field::extension(3, 2);
  EXPECT_EQ(f.canonical_element(0), f.zero());
  EXPECT_EQ(f.canonical_element(1), f.one());
  const FieldElement e = f.canonical_element(5);  // 5 = 2 + 1*3
  EXPECT_EQ(e.coeff(0), 2u);
  EXPECT_EQ(e.coeff(1), 1u);
  EXPECT_THROW(f.canonical_element(9), UsageError);
}

TEST(Extension, FieldAxiomsAndFrobenius) {
  for (auto [q, ell] : {std::pair<u64, unsigned>{2, 4}, {3, 3}, {101, 2}, {2, 13}, {1000003, 5}}) {
    Field f = Field::extension(q, ell);
    SeededCoins coins(q * 31 + ell);
    for (int t = 0; t < 50; ++t) {
      const FieldElement a = f.random_element(coins), b = f.random_element(coins),
                         c = f.random_element(coins);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a - a, f.zero());
      if (!a.is_zero()) {
        EXPECT_TRUE((a * f.inv(a)).is_one());
      }
      // Frobenius is additive and multiplicative, and a^(q^ell) = a.
      EXPECT_EQ(f.frobenius(a + b), f.frobenius(a) + f.frobenius(b));
      EXPECT_EQ(f.frobenius(a * b), f.frobenius(a) * f.frobenius(b));
      EXPECT_EQ(f.pow(a, f.order()), a);
    }
  }
}

TEST(Extension, FrobeniusIsBijectionOnGF16) {
  Field f = Field::extension(2, 4);
  std::vector<bool> seen(16, false);
  for (u64 i = 0; i < 16; ++i) {
    const FieldElement y = f.frobenius(f.canonical_element(i));
    const u64 idx = y.coeff(0) + 2 * y.coeff(1) + 4 * y.coeff(2) + 8 * y.coeff(3);
    EXPECT_FALSE(seen[idx]);
    seen[idx] = true;
  }
}

TEST(Extension, CustomModulus) {
  const std::vector<u64> m{1, 0, 0, 1, 1};  // y^4 + y^3 + 1 over F_2
  Field f = Field::with_modulus(2, m);
  EXPECT_EQ(f.modulus(), m);
  EXPECT_NE(f, Field::extension(2, 4));
  EXPECT_THROW(Field::with_modulus(2, std::vector<u64>{1, 0, 1}), DomainError);
  EXPECT_THROW(f.one() + Field::extension(2, 4).one(), UsageError);
}

TEST(Extension, CapacityAndUsage) {
  EXPECT_THROW(Field::extension(2, kMaxExtensionDegree + 1), CapacityError);
  EXPECT_THROW(Field::extension(4, 2), UsageError);
  EXPECT_THROW(Field::extension(kModulusLimit + 1, 1), UsageError);
  EXPECT_NO_THROW(Field::extension(2, kMaxExtensionDegree));
}

TEST(FieldSpec, Parse) {
  EXPECT_EQ(parse_field_spec("2^3"), Field::extension(2, 3));
  EXPECT_EQ(parse_field_spec("101"), Field::prime(101));
  EXPECT_THROW(parse_field_spec("x^2"), UsageError);
  EXPECT_THROW(parse_field_spec("2^"), UsageError);
  EXPECT_THROW(parse_field_spec("6^1"), UsageError);
}

TEST(Random, DeterministicPerSeed) {
  Field f = Field::extension(5, 3);
  SeededCoins a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const FieldElement x = f.random_element(a);
    EXPECT_EQ(x, f.random_element(b));
    differs |= x != f.random_element(c);
  }
  EXPECT_TRUE(differs);
}

TEST(Random, ReplayReproducesDraws) {
  Field f = Field::extension(3, 5);
  SeededCoins live(99);
  std::vector<FieldElement> drawn;
  for (int i = 0; i < 20; ++i) drawn.push_back(f.random_element(live));
  ReplayCoins replay(live.drain_record());
  for (const auto& x : drawn) EXPECT_EQ(f.random_element(replay), x);
  EXPECT_THROW(f.random_element(replay), UsageError);
}

TEST(Random, ChiSquareUniformGF16) {
  Field f = Field::extension(2, 4);
  SeededCoins coins(2024);
  std::vector<int> counts(16, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const FieldElement x = f.random_element(coins);
    ++counts[x.coeff(0) + 2 * x.coeff(1) + 4 * x.coeff(2) + 8 * x.coeff(3)];
  }
  double chi = 0;
  for (int c : counts) chi += (c - n / 16.0) * (c - n / 16.0) / (n / 16.0);
  EXPECT_LT(chi, 37.7);  // 0.999 quantile at 15 degrees of freedom
}

TEST(Random, RejectionUsesCoinBitsPerAttempt) {
  Field f = Field::extension(3, 2);  // 9 elements, 4 bits per attempt
  EXPECT_EQ(f.coin_bits(), 4u);
  SeededCoins coins(5);
  for (int i = 0; i < 100; ++i) f.random_element(coins);
  EXPECT_EQ(coins.bits_consumed() % 4, 0u);
  EXPECT_GE(coins.bits_consumed(), 400u);
  EXPECT_EQ(coin_bits_for(2, 1), 1u);
  EXPECT_EQ(coin_bits_for(2, 64), 64u);
  EXPECT_EQ(coin_bits_for(3, 64), 102u);  // 3^64 - 1 needs 102 bits
}

TEST(Random, WideFieldDraws) {
  Field f = Field::extension(1000003, 10);  // ~200 bits
  SeededCoins coins(1);
  const FieldElement a = f.random_element(coins);
  EXPECT_FALSE(a.in_base_field());
  EXPECT_TRUE((a * f.inv(a)).is_one());
}
