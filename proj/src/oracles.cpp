#include "maproof/oracles.hpp"

#include <algorithm>
#include <numeric>

#include "maproof/errors.hpp"
#include "maproof/op_counter.hpp"

namespace maproof::oracle {

namespace {

u64 residue(std::int64_t v, u64 q) {
  const __int128 r = static_cast<__int128>(v) % static_cast<__int128>(q);
  return static_cast<u64>(r < 0 ? r + q : r);
}

// Plain gate-by-gate evaluation over F_q.
class Evaluator {
 public:
  Evaluator(const Circuit& c, u64 q) : c_(c), q_(q), vals_(c.size()) {
    out_ = c.output();
    for (const Gate& g : c.gates()) {
      if (g.kind == GateKind::kAdd) ++adds_;
      if (g.kind == GateKind::kMul) ++muls_;
    }
  }

  template <class Input>
  u64 run(Input input) {
    const auto& gates = c_.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const Gate& g = gates[i];
      switch (g.kind) {
        case GateKind::kInput:
          vals_[i] = input(g.a);
          break;
        case GateKind::kConst:
          vals_[i] = residue(g.value, q_);
          break;
        case GateKind::kAdd:
          vals_[i] = static_cast<u64>((static_cast<unsigned __int128>(vals_[g.a]) + vals_[g.b]) % q_);
          break;
        case GateKind::kMul:
          vals_[i] = static_cast<u64>(static_cast<unsigned __int128>(vals_[g.a]) * vals_[g.b] % q_);
          break;
      }
    }
    return vals_[out_];
  }

  std::uint64_t adds() const { return adds_; }
  std::uint64_t muls() const { return muls_; }

 private:
  const Circuit& c_;
  u64 q_;
  std::vector<u64> vals_;
  std::uint32_t out_ = 0;
  std::uint64_t adds_ = 0, muls_ = 0;
};

bool formula_value(const BoolFormula& f, std::uint64_t assignment) {
  const auto& nodes = f.nodes();
  std::vector<char> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const FormulaNode& n = nodes[i];
    switch (n.kind) {
      case FormulaKind::kVar:
        v[i] = (assignment >> n.a) & 1;
        break;
      case FormulaKind::kConst:
        v[i] = n.value;
        break;
      case FormulaKind::kNot:
        v[i] = !v[n.a];
        break;
      case FormulaKind::kAnd:
        v[i] = v[n.a] && v[n.b];
        break;
      case FormulaKind::kOr:
        v[i] = v[n.a] || v[n.b];
        break;
    }
  }
  return v[f.root()];
}

void require_prime(u64 q) {
  if (q < 2 || q >= kModulusLimit || !is_prime(q)) throw UsageError("modulus must be a prime below 2^62");
}

std::size_t qbf_vars(const QuantifiedFormula& phi) {
  const std::size_t n = phi.prefix.size();
  if (n > kMaxQbfVars) throw CapacityError("QBF oracle limited to " + std::to_string(kMaxQbfVars) + " variables");
  if (phi.matrix.n_vars() > n) throw UsageError("matrix uses unquantified variables");
  return n;
}

bool qbf_rec(const QuantifiedFormula& phi, std::size_t i, std::uint64_t a) {
  if (i == phi.prefix.size()) return formula_value(phi.matrix, a);
  const bool v0 = qbf_rec(phi, i + 1, a);
  const bool exists = phi.prefix[i] == Quantifier::kExists;
  if (v0 == exists) return v0;  // short circuit
  return qbf_rec(phi, i + 1, a | (std::uint64_t{1} << i));
}

BigInt suffix_rec(const QuantifiedFormula& phi, std::size_t i, std::uint64_t a) {
  if (i == phi.prefix.size()) return formula_value(phi.matrix, a) ? 1 : 0;
  const BigInt v0 = suffix_rec(phi, i + 1, a);
  const BigInt v1 = suffix_rec(phi, i + 1, a | (std::uint64_t{1} << i));
  if (phi.prefix[i] == Quantifier::kExists) return v0 + v1;
  return v0 * v1;
}

void check_dims(const BitVectors& a) {
  for (const auto& row : a) {
    if (row.size() != a[0].size()) throw UsageError("vectors differ in dimension");
  }
}

void clique_rec(const Graph& g, std::vector<std::size_t>& chosen, std::size_t next, std::size_t k,
                std::uint64_t& count) {
  if (chosen.size() == k) {
    ++count;
    return;
  }
  for (std::size_t v = next; v < g.size(); ++v) {
    bool ok = true;
    for (std::size_t u : chosen) ok = ok && g.arc(u, v);
    if (!ok) continue;
    chosen.push_back(v);
    clique_rec(g, chosen, v + 1, k, count);
    chosen.pop_back();
  }
}

}  // namespace

std::vector<u64> multipoint(const Circuit& c, u64 q, const std::vector<std::vector<u64>>& points) {
  require_prime(q);
  Evaluator ev(c, q);
  std::vector<u64> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != c.n_inputs()) throw UsageError("point arity differs from the circuit");
    out.push_back(ev.run([&](std::size_t j) { return p[j] % q; }));
  }
  return out;
}

u64 cube_sum(const Circuit& c, u64 p) {
  require_prime(p);
  const std::size_t n = c.n_inputs();
  if (n > kMaxCubeVars) throw CapacityError("cube oracle limited to " + std::to_string(kMaxCubeVars) + " variables");
  PhaseScope phase(Phase::kOracle);
  Evaluator ev(c, p);
  u64 acc = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t b = 0; b < total; ++b) {
    acc = (acc + ev.run([&](std::size_t j) -> u64 { return (b >> j) & 1; })) % p;
  }
  OpCounter::instance().add(total * (ev.adds() + 1));
  OpCounter::instance().mul(total * ev.muls());
  return acc;
}

std::uint64_t sat_count(const BoolFormula& f) {
  const std::size_t n = f.n_vars();
  if (n > kMaxCubeVars) throw CapacityError("SAT oracle limited to " + std::to_string(kMaxCubeVars) + " variables");
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) count += formula_value(f, a);
  return count;
}

bool qbf(const QuantifiedFormula& phi) {
  qbf_vars(phi);
  return qbf_rec(phi, 0, 0);
}

BigInt qbf_suffix_value(const QuantifiedFormula& phi, std::size_t start, std::uint64_t prefix) {
  const std::size_t n = qbf_vars(phi);
  if (start > n) throw UsageError("suffix start beyond the variable count");
  const std::uint64_t mask = start == 0 ? 0 : (std::uint64_t{1} << start) - 1;
  return suffix_rec(phi, start, prefix & mask);
}

BigInt permanent(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n > kMaxPermutationSize) throw CapacityError("permanent oracle limited to 8x8");
  for (const auto& row : m) {
    if (row.size() != n) throw UsageError("permanent needs a square matrix");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    BigInt term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

BigInt hamiltonian_cycles(const Graph& g) {
  const std::size_t n = g.size();
  if (n > kMaxPermutationSize) throw CapacityError("Hamiltonian oracle limited to 8 vertices");
  if (n == 0) return 0;
  if (n == 1) return g.arc(0, 0) ? 1 : 0;
  // Cycles through vertex 0: orderings of the remaining vertices.
  std::vector<std::size_t> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  BigInt count = 0;
  do {
    bool ok = g.arc(0, rest[0]) && g.arc(rest.back(), 0);
    for (std::size_t i = 0; ok && i + 1 < rest.size(); ++i) ok = g.arc(rest[i], rest[i + 1]);
    count += ok;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return count;
}

std::vector<std::uint64_t> orthogonal_counts(const BitVectors& a) {
  check_dims(a);
  std::vector<std::uint64_t> out(a.size(), 0);
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = 0; v < a.size(); ++v) {
      std::uint64_t dot = 0;
      for (std::size_t i = 0; i < a[u].size(); ++i) dot += a[u][i] * a[v][i];
      out[u] += dot == 0;
    }
  }
  return out;
}

std::vector<std::uint64_t> hamming_counts(const BitVectors& a, std::size_t k) {
  check_dims(a);
  std::vector<std::uint64_t> out(a.size(), 0);
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = 0; v < a.size(); ++v) {
      std::size_t dist = 0;
      for (std::size_t i = 0; i < a[u].size(); ++i) dist += a[u][i] != a[v][i];
      out[u] += dist <= k;
    }
  }
  return out;
}

std::uint64_t cliques(const Graph& g, std::size_t k) {
  if (!g.is_undirected()) throw UsageError("clique oracle needs an undirected graph");
  std::uint64_t count = 0;
  std::vector<std::size_t> chosen;
  clique_rec(g, chosen, 0, k, count);
  return count;
}

}  // namespace maproof::oracle
