#include "maproof/geom_apps.hpp"

#include <algorithm>
#include <optional>

#include "maproof/errors.hpp"

namespace maproof {

namespace {

void check_vectors(const BitVectors& a) {
  if (a.empty()) throw UsageError("vector set is empty");
  for (const auto& row : a) {
    if (row.size() != a[0].size()) throw UsageError("vectors differ in dimension");
    for (auto v : row) {
      if (v > 1) throw UsageError("vector entries must be 0 or 1");
    }
  }
}

std::uint32_t balanced_sum(Circuit& c, std::vector<std::uint32_t> terms, bool product) {
  if (terms.empty()) return c.constant(product ? 1 : 0);
  while (terms.size() > 1) {
    std::vector<std::uint32_t> next;
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) {
      next.push_back(product ? c.mul(terms[i], terms[i + 1]) : c.add(terms[i], terms[i + 1]));
    }
    if (terms.size() % 2) next.push_back(terms.back());
    terms = std::move(next);
  }
  return terms[0];
}

PointSet to_points(const BitVectors& a) {
  PointSet pts(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) pts[i].assign(a[i].begin(), a[i].end());
  return pts;
}

u64 bounded_product(std::initializer_list<u64> xs) {
  unsigned __int128 acc = 1;
  for (u64 x : xs) {
    acc *= x;
    if (acc >= (u64{1} << 61)) throw CapacityError("required prime exceeds 2^61");
  }
  return static_cast<u64>(acc);
}

CountsOutput run_counts(const Circuit& c, const BitVectors& a, u64 p, unsigned eps_exp,
                        CoinSource& coins, Transcript* transcript, const char* protocol) {
  CountsOutput out;
  out.p = p;
  if (transcript) {
    transcript->protocol = protocol;
    transcript->set_param("p", p);
  }
  out.eval = certify_eval(c, to_points(a), p, eps_exp, coins, transcript);
  if (out.accepted()) out.counts = out.eval.values;
  return out;
}

void extend_cliques(const Graph& g, std::size_t size, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == size) {
    out.push_back(cur);
    return;
  }
  const std::size_t start = cur.empty() ? 0 : cur.back() + 1;
  for (std::size_t v = start; v < g.size(); ++v) {
    if (std::all_of(cur.begin(), cur.end(), [&](std::size_t u) { return g.arc(u, v); })) {
      cur.push_back(v);
      extend_cliques(g, size, cur, out);
      cur.pop_back();
    }
  }
}

u64 binomial(std::size_t n, std::size_t k) {
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r >= (u64{1} << 61)) throw CapacityError("binomial coefficient too large");
  }
  return static_cast<u64>(r);
}

}  // namespace

Circuit ov_circuit(const BitVectors& a) {
  check_vectors(a);
  const std::size_t d = a[0].size();
  Circuit c(d);
  const std::uint32_t one = c.constant(1), neg = c.constant(-1);
  std::vector<std::uint32_t> comp(d);
  for (std::size_t i = 0; i < d; ++i) comp[i] = c.add(one, c.mul(neg, c.input(i)));
  std::vector<std::uint32_t> terms;
  for (const auto& v : a) {
    std::vector<std::uint32_t> factors;
    for (std::size_t i = 0; i < d; ++i) {
      if (v[i]) factors.push_back(comp[i]);
    }
    terms.push_back(factors.empty() ? one : balanced_sum(c, std::move(factors), true));
  }
  c.set_output(balanced_sum(c, std::move(terms), false));
  return c;
}

CountsOutput ov_count(const BitVectors& a, unsigned eps_exp, CoinSource& coins, Transcript* transcript) {
  check_vectors(a);
  const u64 n = a.size(), d = a[0].size();
  const u64 p = find_prime(std::max<u64>({2, n, bounded_product({n, n, d})}));
  return run_counts(ov_circuit(a), a, p, eps_exp, coins, transcript, "ov");
}

Circuit hamming_circuit(const BitVectors& a, std::size_t k, u64 p) {
  check_vectors(a);
  const std::size_t d = a[0].size();
  if (k > d) throw UsageError("k exceeds the dimension");
  if (p <= 2 * d || !is_prime(p)) throw UsageError("p must be a prime above 2d");
  const Field f = Field::prime(p);
  std::vector<Point> pts;
  for (std::int64_t j = -static_cast<std::int64_t>(d); j <= static_cast<std::int64_t>(d); ++j) {
    const bool close = j >= static_cast<std::int64_t>(d) - 2 * static_cast<std::int64_t>(k);
    pts.push_back({f.from_int(j), close ? f.one() : f.zero()});
  }
  const DensePoly psi = interpolate(f, pts);

  Circuit c(d);
  const std::uint32_t one = c.constant(1), neg = c.constant(-1), minus_two = c.constant(-2);
  std::vector<std::uint32_t> pos(d), negs(d);
  for (std::size_t i = 0; i < d; ++i) {
    pos[i] = c.add(one, c.mul(minus_two, c.input(i)));
    negs[i] = c.mul(neg, pos[i]);
  }
  std::vector<std::uint32_t> coef(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    coef[i] = c.constant(static_cast<std::int64_t>(psi.coeff(i).coeff(0)));
  }
  std::vector<std::uint32_t> terms;
  for (const auto& w : a) {
    std::vector<std::uint32_t> parts(d);
    for (std::size_t i = 0; i < d; ++i) parts[i] = w[i] ? negs[i] : pos[i];
    const std::uint32_t ip = balanced_sum(c, std::move(parts), false);
    if (coef.empty()) continue;
    std::uint32_t acc = coef.back();
    for (std::size_t i = coef.size() - 1; i-- > 0;) acc = c.add(c.mul(acc, ip), coef[i]);
    terms.push_back(acc);
  }
  c.set_output(balanced_sum(c, std::move(terms), false));
  return c;
}

CountsOutput hamming_count(const BitVectors& a, std::size_t k, unsigned eps_exp, CoinSource& coins,
                           Transcript* transcript) {
  check_vectors(a);
  const u64 n = a.size(), d = a[0].size();
  const u64 p = find_prime(std::max<u64>({2, n, bounded_product({n, n, 2 * d + 1})}));
  CountsOutput out = run_counts(hamming_circuit(a, k, p), a, p, eps_exp, coins, transcript, "hamming");
  if (transcript) transcript->set_param("k", std::uint64_t{k});
  return out;
}

Circuit elementary_symmetric_circuit(std::size_t k, std::size_t n) {
  if (k > n) throw UsageError("k exceeds the number of variables");
  Circuit c(n);
  const std::uint32_t one = c.constant(1);
  std::vector<std::optional<std::uint32_t>> e(k + 1);
  e[0] = one;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t x = c.input(i);
    for (std::size_t j = std::min(i + 1, k); j >= 1; --j) {
      const std::uint32_t term = j == 1 ? x : c.mul(x, *e[j - 1]);
      e[j] = e[j] ? c.add(*e[j], term) : term;
    }
  }
  c.set_output(*e[k]);
  return c;
}

std::vector<std::vector<std::size_t>> enumerate_cliques(const Graph& g, std::size_t size) {
  if (!g.is_undirected()) throw UsageError("clique counting needs an undirected graph");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  extend_cliques(g, size, cur, out);
  return out;
}

Circuit kclique_circuit(const Graph& g, std::size_t k, std::size_t ell) {
  if (ell > k) throw UsageError("ell exceeds k");
  const std::size_t n = g.size();
  Circuit c(n);
  std::vector<std::uint32_t> inputs(n);
  for (std::size_t v = 0; v < n; ++v) inputs[v] = c.input(v);
  std::vector<std::uint32_t> terms;
  for (const auto& s : enumerate_cliques(g, ell)) {
    std::vector<std::uint32_t> joint;
    for (std::size_t v = 0; v < n; ++v) {
      if (std::all_of(s.begin(), s.end(), [&](std::size_t u) { return g.arc(u, v); })) {
        joint.push_back(inputs[v]);
      }
    }
    if (joint.size() < k - ell) continue;
    terms.push_back(c.append(elementary_symmetric_circuit(k - ell, joint.size()), joint));
  }
  c.set_output(balanced_sum(c, std::move(terms), false));
  return c;
}

CliqueOutput kclique_count(const Graph& g, std::size_t k, unsigned eps_exp, CoinSource& coins,
                           Transcript* transcript) {
  if (k < 2) throw UsageError("k must be at least 2");
  if (g.size() < k) throw UsageError("graph has fewer than k vertices");
  CliqueOutput out;
  out.ell = k / 2;
  out.multiplicity = binomial(k, out.ell);
  const auto small = enumerate_cliques(g, k - out.ell);
  const u64 big = enumerate_cliques(g, out.ell).size();
  if (transcript) {
    transcript->protocol = "clique";
    transcript->set_param("k", std::uint64_t{k});
    transcript->set_param("ell", std::uint64_t{out.ell});
    transcript->set_param("multiplicity", out.multiplicity);
  }
  if (small.empty()) {
    out.eval.verdict = out.verdict = Verdict::accept();
    return out;
  }
  out.p = find_prime(std::max<u64>(2, bounded_product({out.multiplicity, small.size(), std::max<u64>(big, 1)})));
  if (transcript) transcript->set_param("p", out.p);
  PointSet pts(small.size(), std::vector<u64>(g.size(), 0));
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t v : small[i]) pts[i][v] = 1;
  out.eval = certify_eval(kclique_circuit(g, k, out.ell), pts, out.p, eps_exp, coins, transcript);
  out.verdict = out.eval.verdict;
  if (!out.accepted()) return out;
  for (u64 v : out.eval.values) out.certified_sum = (out.certified_sum + v) % out.p;
  out.remainder = out.certified_sum % out.multiplicity;
  if (out.remainder != 0) {
    out.verdict = Verdict::unsound("certified sum is not a multiple of C(k, ell)");
    return out;
  }
  out.count = out.certified_sum / out.multiplicity;
  return out;
}

}  // namespace maproof
