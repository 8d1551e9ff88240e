#include <gtest/gtest.h>

#include <map>
#include <random>
#include <vector>

#include "maproof/circuit.hpp"
#include "maproof/errors.hpp"
#include "maproof/generators.hpp"

using namespace maproof;

namespace {

// Multivariate polynomial over F_q as exponent vector -> coefficient.
using Mono = std::vector<unsigned>;
using MPoly = std::map<Mono, u64>;

MPoly expand(const Circuit& c, u64 q) {
  const std::size_t n = c.n_inputs();
  std::vector<MPoly> val;
  for (const Gate& g : c.gates()) {
    MPoly p;
    switch (g.kind) {
      case GateKind::kInput: {
        Mono m(n, 0);
        m[g.a] = 1;
        p[m] = 1;
        break;
      }
      case GateKind::kConst: {
        const long long r = ((g.value % (long long)q) + (long long)q) % (long long)q;
        if (r) p[Mono(n, 0)] = static_cast<u64>(r);
        break;
      }
      case GateKind::kAdd:
        p = val[g.a];
        for (auto& [m, v] : val[g.b]) p[m] = (p[m] + v) % q;
        break;
      case GateKind::kMul:
        for (auto& [ma, va] : val[g.a])
          for (auto& [mb, vb] : val[g.b]) {
            Mono m(n);
            for (std::size_t i = 0; i < n; ++i) m[i] = ma[i] + mb[i];
            p[m] = (p[m] + va * vb) % q;
          }
        break;
    }
    for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
    val.push_back(std::move(p));
  }
  return val[c.output()];
}

u64 eval_expanded(const MPoly& p, const std::vector<u64>& x, u64 q) {
  u64 acc = 0;
  for (auto& [m, v] : p) {
    u64 t = v;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) t = t * x[i] % q;
    acc = (acc + t) % q;
  }
  return acc;
}

std::vector<FieldElement> point(const Field& f, std::initializer_list<int> v) {
  std::vector<FieldElement> out;
  for (int x : v) out.push_back(f.from_int(x));
  return out;
}

}  // namespace

TEST(Circuit, EvaluateExamples) {
  Field f = Field::prime(7);
  Circuit c(3);
  const auto x1 = c.input(0), x2 = c.input(1), x3 = c.input(2);
  c.set_output(c.add(c.mul(x1, x2), x3));
  EXPECT_EQ(evaluate(c, point(f, {2, 3, 1})), f.zero());
  Circuit k(0);
  k.set_output(k.constant(5));
  EXPECT_EQ(evaluate(k, f, {}), f.from_int(5));
  EXPECT_THROW(evaluate(c, point(f, {1, 2})), UsageError);
}

TEST(Circuit, MatchesSymbolicExpansion) {
  std::mt19937_64 rng(1);
  for (u64 q : {5u, 7u, 13u}) {
    Field f = Field::prime(q);
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 1 + rng() % 3;
      const Circuit c = random_circuit(n, 5 + rng() % 25, 6, rng);
      const MPoly p = expand(c, q);
      for (int s = 0; s < 10; ++s) {
        std::vector<u64> x(n);
        std::vector<FieldElement> pt;
        for (auto& v : x) {
          v = rng() % q;
          pt.push_back(f.from_u64(v));
        }
        ASSERT_EQ(evaluate(c, pt).coeff(0), eval_expanded(p, x, q));
      }
      // Syntactic degree bounds the true total degree.
      unsigned true_deg = 0;
      for (auto& [m, v] : p) {
        unsigned d = 0;
        for (unsigned e : m) d += e;
        true_deg = std::max(true_deg, d);
      }
      EXPECT_GE(syntactic_degree(c), true_deg);
    }
  }
}

TEST(Circuit, EmbeddingCommutes) {
  std::mt19937_64 rng(2);
  Field base = Field::prime(101);
  Field ext = Field::extension(101, 3);
  for (int t = 0; t < 50; ++t) {
    const Circuit c = random_circuit(4, 30, 20, rng);
    std::vector<FieldElement> pb, pe;
    for (int i = 0; i < 4; ++i) {
      const u64 v = rng() % 101;
      pb.push_back(base.from_u64(v));
      pe.push_back(ext.from_u64(v));
    }
    const FieldElement rb = evaluate(c, pb), re = evaluate(c, pe);
    EXPECT_TRUE(re.in_base_field());
    EXPECT_EQ(re.coeff(0), rb.coeff(0));
  }
}

TEST(Circuit, DegreeExamples) {
  Circuit a(1);
  a.set_output(a.input(0));
  EXPECT_EQ(syntactic_degree(a), 1u);
  Circuit b(1);
  const auto x = b.input(0);
  b.set_output(b.mul(x, x));
  EXPECT_EQ(syntactic_degree(b), 2u);
  Circuit c(1);
  auto g = c.input(0);
  for (int i = 0; i < 70; ++i) g = c.mul(g, g);
  c.set_output(g);
  EXPECT_EQ(syntactic_degree(c), kDegreeInfinite);
}

TEST(Circuit, BalancedAndTreeDegree) {
  for (unsigned depth = 1; depth <= 6; ++depth) {
    BoolFormula f(1u << depth);
    std::vector<std::uint32_t> level;
    for (std::size_t j = 0; j < (1u << depth); ++j) level.push_back(f.var(j));
    while (level.size() > 1) {
      std::vector<std::uint32_t> next;
      for (std::size_t i = 0; i < level.size(); i += 2) next.push_back(f.conj(level[i], level[i + 1]));
      level = next;
    }
    f.set_root(level[0]);
    EXPECT_EQ(syntactic_degree(arithmetize(f)), 1u << depth);
  }
}

TEST(Formula, ParseExamples) {
  const BoolFormula f = parse_formula("x1 & !x2");
  EXPECT_EQ(f.n_vars(), 2u);
  EXPECT_EQ(f.to_string(), "(x1 & !x2)");
  EXPECT_EQ(f.connectives(), 2u);
  EXPECT_EQ(parse_formula("x1 | x2 & x3").to_string(), "(x1 | (x2 & x3))");
  EXPECT_EQ(parse_formula("!(x1 | 0) & 1").to_string(), "(!(x1 | 0) & 1)");
}

TEST(Formula, ParseErrorsCarryPosition) {
  try {
    parse_formula("x1 &\n  (x2 | ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
  }
  EXPECT_THROW(parse_formula("x0"), ParseError);
  EXPECT_THROW(parse_formula("x1 $ x2"), ParseError);
  EXPECT_THROW(parse_formula("(x1"), ParseError);
  EXPECT_THROW(parse_formula(""), ParseError);
}

TEST(Formula, RoundTripThroughText) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const BoolFormula f = random_formula(6, rng() % 20, rng);
    const BoolFormula g = parse_formula(f.to_string(), f.n_vars());
    for (std::uint64_t a = 0; a < 64; ++a) ASSERT_EQ(f.evaluate(a), g.evaluate(a));
  }
}

TEST(Arithmetize, Examples) {
  Field f = Field::prime(101);
  const Circuit neg = arithmetize(parse_formula("!x1"));
  EXPECT_EQ(evaluate(neg, point(f, {0})), f.one());
  EXPECT_EQ(evaluate(neg, point(f, {1})), f.zero());
  const Circuit orc = arithmetize(parse_formula("x1 | x2"));
  EXPECT_EQ(evaluate(orc, point(f, {1, 1})), f.one());
}

TEST(Arithmetize, TruthTablesMatch) {
  std::mt19937_64 rng(4);
  Field f = Field::prime(101);
  for (int t = 0; t < 200; ++t) {
    const BoolFormula bf = random_formula(5, rng() % 25, rng);
    const Circuit c = arithmetize(bf);
    CircuitEvaluator ev(c, f);
    for (std::uint64_t a = 0; a < 32; ++a) {
      std::vector<FieldElement> pt;
      for (int j = 0; j < 5; ++j) pt.push_back(f.from_u64((a >> j) & 1));
      const FieldElement v = ev(pt);
      ASSERT_TRUE(v.is_zero() || v.is_one());
      ASSERT_EQ(v.is_one(), bf.evaluate(a));
    }
  }
}

TEST(Qbf, ParseExample) {
  const QuantifiedFormula q = parse_qbf("EA x1 x2 : x1 | x2");
  ASSERT_EQ(q.prefix.size(), 2u);
  EXPECT_EQ(q.prefix[0], Quantifier::kExists);
  EXPECT_EQ(q.prefix[1], Quantifier::kForall);
  EXPECT_EQ(q.matrix.to_string(), "(x1 | x2)");
  EXPECT_EQ(q.matrix.n_vars(), 2u);
  EXPECT_EQ(parse_qbf(q.to_string()).to_string(), q.to_string());
}

TEST(Qbf, ParseErrors) {
  EXPECT_THROW(parse_qbf("EA x1 : x1"), ParseError);
  EXPECT_THROW(parse_qbf("EA x2 x1 : x1"), ParseError);
  EXPECT_THROW(parse_qbf("E x1 : x1 | x2"), ParseError);
  EXPECT_THROW(parse_qbf("EX x1 : x1"), ParseError);
  EXPECT_THROW(parse_qbf("x1 : x1"), ParseError);
}

TEST(CircuitText, SquaringExample) {
  const Circuit c = parse_circuit("g1 input 0\ng2 mul g1 g1\noutput g2\n");
  EXPECT_EQ(c.n_inputs(), 1u);
  Field f = Field::prime(11);
  EXPECT_EQ(evaluate(c, point(f, {4})), f.from_int(5));
  EXPECT_EQ(syntactic_degree(c), 2u);
}

TEST(CircuitText, RoundTrip) {
  std::mt19937_64 rng(5);
  Field f = Field::prime(1000003);
  for (int t = 0; t < 30; ++t) {
    const Circuit c = random_circuit(3, 40, 30, rng);
    const Circuit d = parse_circuit(circuit_to_text(c));
    ASSERT_EQ(circuit_to_text(d), circuit_to_text(c));
    const auto pt = point(f, {3, -8, 77});
    EXPECT_EQ(evaluate(c, pt), evaluate(d, pt));
  }
}

TEST(CircuitText, HeaderCommentsAndErrors) {
  const Circuit c = parse_circuit(
      "# squaring plus constant\ncircuit n=2\ng1 input 1  # second var\ng2 const -4\n"
      "g3 add g1 g2\noutput g3\n");
  EXPECT_EQ(c.n_inputs(), 2u);
  auto where = [](const std::string& text) {
    try {
      parse_circuit(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(std::size_t{0}, std::size_t{0});
  };
  EXPECT_EQ(where("g1 input 0\ng2 add g1 g3\noutput g2"), std::make_pair(std::size_t{2}, std::size_t{11}));
  EXPECT_EQ(where("circuit n=1\ng1 input 1\noutput g1"), std::make_pair(std::size_t{2}, std::size_t{10}));
  EXPECT_EQ(where("g2 input 0\ng1 input 0\noutput g1"), std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_EQ(where("g1 input 0\ng2 sub g1 g1\noutput g2"), std::make_pair(std::size_t{2}, std::size_t{4}));
  EXPECT_EQ(where("g1 input 0\n"), std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_EQ(where("g1 input 0\noutput g1\ng2 input 0"), std::make_pair(std::size_t{3}, std::size_t{1}));
}

TEST(Circuit, AppendRewiresInputs) {
  Circuit sub(2);
  sub.set_output(sub.mul(sub.input(0), sub.input(1)));
  Circuit big(1);
  const auto x = big.input(0);
  const auto three = big.constant(3);
  const std::uint32_t map[2] = {x, three};
  big.set_output(big.append(sub, map));
  Field f = Field::prime(17);
  EXPECT_EQ(evaluate(big, point(f, {5})), f.from_int(15));
  EXPECT_EQ(syntactic_degree(big), 1u);
}
