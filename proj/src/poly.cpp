#include "maproof/poly.hpp"

#include <algorithm>
#include <numeric>

#include "maproof/errors.hpp"
#include "maproof/op_counter.hpp"
#include "ntt.hpp"

namespace maproof {

namespace {

using Words = std::vector<u64>;

constexpr std::size_t kSchoolbookBase = 64;
constexpr std::size_t kSchoolbookExt = 16;
constexpr std::size_t kKaratsubaLeaf = 32;
constexpr std::size_t kDivisionNewton = 64;
constexpr std::size_t kTreeLeaf = 8;
// Products below 2^124 leave room for fifteen more in an accumulator.
constexpr unsigned kChunk = 15;

// ---------------------------------------------------------------------------
// Base field (ell = 1) multiplication

void schoolbook_base(const u64* a, std::size_t n, const u64* b, std::size_t m, u64* out,
                     const Modulus& q) {
  for (std::size_t k = 0; k + 1 < n + m; ++k) {
    const std::size_t lo = k + 1 > m ? k + 1 - m : 0;
    const std::size_t hi = std::min(k, n - 1);
    u128 s = 0;
    unsigned cnt = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      s += static_cast<u128>(a[i]) * b[k - i];
      if (++cnt == kChunk) {
        s = q.reduce(s);
        cnt = 0;
      }
    }
    out[k] = q.reduce(s);
  }
  OpCounter::instance().mul(n * m);
  OpCounter::instance().add(n * m);
}

// Equal-length Karatsuba; out has 2n - 1 words.
void karatsuba(const u64* a, const u64* b, std::size_t n, u64* out, const Modulus& q) {
  if (n < kKaratsubaLeaf) {
    schoolbook_base(a, n, b, n, out, q);
    return;
  }
  const std::size_t h = n / 2, t = n - h;
  Words z0(2 * h - 1), z2(2 * t - 1), z1(2 * t - 1), sa(t), sb(t);
  karatsuba(a, b, h, z0.data(), q);
  karatsuba(a + h, b + h, t, z2.data(), q);
  for (std::size_t i = 0; i < t; ++i) {
    sa[i] = i < h ? q.add(a[i], a[h + i]) : a[h + i];
    sb[i] = i < h ? q.add(b[i], b[h + i]) : b[h + i];
  }
  karatsuba(sa.data(), sb.data(), t, z1.data(), q);
  for (std::size_t i = 0; i < z1.size(); ++i) {
    u64 v = q.sub(z1[i], z2[i]);
    if (i < z0.size()) v = q.sub(v, z0[i]);
    z1[i] = v;
  }
  std::fill(out, out + 2 * n - 1, 0);
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] = z2[i];
  for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] = q.add(out[h + i], z1[i]);
  OpCounter::instance().add(4 * t + 2 * z1.size() + z1.size());
}

// Longest operand still multiplied by Karatsuba; the transform path is
// cheaper beyond it, more so when fewer primes are needed.
std::size_t karatsuba_limit(const Modulus& q, std::size_t terms) {
  switch (detail::ntt_prime_count(q, terms)) {
    case 1:
      return 256;
    case 2:
      return 512;
    default:
      return 1024;
  }
}

Words mul_base(std::span<const u64> a, std::span<const u64> b, const Modulus& q) {
  if (a.size() < b.size()) std::swap(a, b);
  const std::size_t n = a.size(), m = b.size();
  Words out(n + m - 1, 0);
  if (m < kSchoolbookBase) {
    schoolbook_base(a.data(), n, b.data(), m, out.data(), q);
  } else if (n <= karatsuba_limit(q, m)) {
    // Multiply m-sized blocks of a by b and accumulate.
    Words block(m), part(2 * m - 1);
    for (std::size_t off = 0; off < n; off += m) {
      const std::size_t len = std::min(m, n - off);
      std::fill(block.begin(), block.end(), 0);
      std::copy(a.begin() + off, a.begin() + off + len, block.begin());
      karatsuba(block.data(), b.data(), m, part.data(), q);
      for (std::size_t i = 0; i < len + m - 1; ++i) out[off + i] = q.add(out[off + i], part[i]);
    }
  } else {
    out = detail::ntt_convolve(a, b, q, m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extension field multiplication

void schoolbook_ext(const detail::FieldData& fd, const u64* a, std::size_t n, const u64* b,
                    std::size_t m, u64* out) {
  const unsigned ell = fd.ell;
  const unsigned wide_len = 2 * ell - 1;
  std::vector<u128> acc(wide_len);
  Words wide(wide_len);
  for (std::size_t k = 0; k + 1 < n + m; ++k) {
    const std::size_t lo = k + 1 > m ? k + 1 - m : 0;
    const std::size_t hi = std::min(k, n - 1);
    std::fill(acc.begin(), acc.end(), 0);
    unsigned cnt = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      const u64* x = a + i * ell;
      const u64* y = b + (k - i) * ell;
      if (cnt + ell > kChunk) {
        for (auto& v : acc) v = fd.mod.reduce(v);
        cnt = 0;
      }
      for (unsigned s = 0; s < ell; ++s) {
        if (x[s] == 0) continue;
        for (unsigned t = 0; t < ell; ++t) acc[s + t] += static_cast<u128>(x[s]) * y[t];
      }
      cnt += ell;
    }
    for (unsigned s = 0; s < wide_len; ++s) wide[s] = fd.mod.reduce(acc[s]);
    fd.reduce_wide(out + k * ell, wide.data());
  }
  OpCounter::instance().mul(n * m);
  OpCounter::instance().add(n * m);
}

Words mul_kronecker(const detail::FieldData& fd, std::span<const u64> a, std::span<const u64> b) {
  const unsigned ell = fd.ell;
  const std::size_t slot = 2 * ell - 1;
  const std::size_t n = a.size() / ell, m = b.size() / ell;
  Words pa(n * slot, 0), pb(m * slot, 0);
  for (std::size_t i = 0; i < n; ++i) std::copy_n(a.data() + i * ell, ell, pa.data() + i * slot);
  for (std::size_t i = 0; i < m; ++i) std::copy_n(b.data() + i * ell, ell, pb.data() + i * slot);
  Words c = detail::ntt_convolve(pa, pb, fd.mod, std::min(n, m) * ell);
  c.resize((n + m - 1) * slot, 0);
  Words out((n + m - 1) * ell);
  for (std::size_t k = 0; k + 1 < n + m; ++k) fd.reduce_wide(out.data() + k * ell, c.data() + k * slot);
  return out;
}

// Product of flat coefficient arrays (n and m coefficients, both nonzero
// length); returns n + m - 1 coefficients, untrimmed.
Words mul_words(const Field& f, std::span<const u64> a, std::span<const u64> b) {
  const detail::FieldData& fd = *f.data();
  if (fd.ell == 1) return mul_base(a, b, fd.mod);
  const std::size_t n = a.size() / fd.ell, m = b.size() / fd.ell;
  if (std::min(n, m) < kSchoolbookExt) {
    Words out((n + m - 1) * fd.ell);
    schoolbook_ext(fd, a.data(), n, b.data(), m, out.data());
    return out;
  }
  return mul_kronecker(fd, a, b);
}

// Coefficients reversed within a window of len coefficients (zero padded).
Words reversed(std::span<const u64> w, std::size_t len, unsigned ell) {
  Words out(len * ell, 0);
  const std::size_t have = std::min(len, w.size() / ell);
  for (std::size_t i = 0; i < have; ++i) std::copy_n(w.data() + i * ell, ell, out.data() + (len - 1 - i) * ell);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// DensePoly

DensePoly::DensePoly(Field f, std::span<const FieldElement> coeffs) : field_(f) {
  const unsigned ell = f.degree();
  w_.reserve(coeffs.size() * ell);
  for (const auto& c : coeffs) {
    if (c.field_data() != f.data()) throw UsageError("coefficient from a different field");
    w_.insert(w_.end(), c.coeffs().begin(), c.coeffs().end());
  }
  trim();
}

DensePoly DensePoly::from_words(Field f, std::vector<u64> words) {
  if (words.size() % f.degree() != 0) throw UsageError("word count is not a multiple of the degree");
  DensePoly p(f);
  p.w_ = std::move(words);
  p.trim();
  return p;
}

DensePoly DensePoly::constant(const Field& f, const FieldElement& c) {
  return DensePoly(f, std::span<const FieldElement>(&c, 1));
}

DensePoly DensePoly::linear_root(const Field& f, const FieldElement& a) {
  const FieldElement c[2] = {-a, f.one()};
  return DensePoly(f, c);
}

void DensePoly::trim() {
  if (!field_.valid()) return;
  const unsigned ell = field_.degree();
  while (!w_.empty() && std::all_of(w_.end() - ell, w_.end(), [](u64 v) { return v == 0; })) {
    w_.resize(w_.size() - ell);
  }
}

void DensePoly::check_same(const DensePoly& o) const {
  if (!field_.valid() || field_ != o.field_) throw UsageError("mixed-field polynomials");
}

std::optional<std::size_t> DensePoly::degree() const {
  if (w_.empty()) return std::nullopt;
  return size() - 1;
}

std::size_t DensePoly::size() const { return w_.empty() ? 0 : w_.size() / field_.degree(); }

FieldElement DensePoly::coeff(std::size_t i) const {
  if (i >= size()) return field_.zero();
  return field_.from_raw(w_.data() + i * field_.degree());
}

FieldElement DensePoly::leading() const {
  if (w_.empty()) return field_.zero();
  return coeff(size() - 1);
}

std::vector<FieldElement> DensePoly::coeffs() const {
  std::vector<FieldElement> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(coeff(i));
  return out;
}

DensePoly& DensePoly::operator+=(const DensePoly& o) {
  check_same(o);
  if (o.w_.size() > w_.size()) w_.resize(o.w_.size(), 0);
  const Modulus& q = field_.base();
  for (std::size_t i = 0; i < o.w_.size(); ++i) w_[i] = q.add(w_[i], o.w_[i]);
  OpCounter::instance().add(o.size());
  trim();
  return *this;
}

DensePoly& DensePoly::operator-=(const DensePoly& o) {
  check_same(o);
  if (o.w_.size() > w_.size()) w_.resize(o.w_.size(), 0);
  const Modulus& q = field_.base();
  for (std::size_t i = 0; i < o.w_.size(); ++i) w_[i] = q.sub(w_[i], o.w_[i]);
  OpCounter::instance().add(o.size());
  trim();
  return *this;
}

DensePoly operator*(const DensePoly& a, const DensePoly& b) { return poly_mul(a, b); }

DensePoly DensePoly::scaled(const FieldElement& c) const {
  if (c.field_data() != field_.data()) throw UsageError("scalar from a different field");
  const unsigned ell = field_.degree();
  Words out(w_.size());
  for (std::size_t i = 0; i < size(); ++i) {
    field_.mul_into(out.data() + i * ell, w_.data() + i * ell, c.coeffs().data());
  }
  return from_words(field_, std::move(out));
}

bool operator==(const DensePoly& a, const DensePoly& b) {
  return a.field_ == b.field_ && a.w_ == b.w_;
}

// ---------------------------------------------------------------------------
// Free functions

DensePoly poly_mul(const DensePoly& f, const DensePoly& g) {
  if (!f.field().valid() || f.field() != g.field()) throw UsageError("mixed-field polynomials");
  if (f.is_zero() || g.is_zero()) return DensePoly(f.field());
  return DensePoly::from_words(f.field(), mul_words(f.field(), f.words(), g.words()));
}

DensePoly truncate(const DensePoly& f, std::size_t k) {
  if (f.size() <= k) return f;
  const auto w = f.words();
  return DensePoly::from_words(f.field(), Words(w.begin(), w.begin() + k * f.field().degree()));
}

DensePoly inverse_series(const DensePoly& f, std::size_t k) {
  const Field& fld = f.field();
  if (f.is_zero() || f.coeff(0).is_zero()) throw DomainError("series inverse needs a nonzero constant term");
  DensePoly g = DensePoly::constant(fld, fld.inv(f.coeff(0)));
  const DensePoly one = DensePoly::constant(fld, fld.one());
  for (std::size_t cur = 1; cur < k;) {
    const std::size_t next = std::min(2 * cur, k);
    DensePoly e = truncate(poly_mul(truncate(f, next), g), next) - one;
    g -= truncate(poly_mul(g, e), next);
    cur = next;
  }
  return truncate(g, k);
}

DivRem poly_divrem(const DensePoly& a, const DensePoly& b) {
  const Field& f = a.field();
  if (!f.valid() || f != b.field()) throw UsageError("mixed-field polynomials");
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  const std::size_t na = a.size(), nb = b.size();
  if (na < nb) return {DensePoly(f), a};
  const unsigned ell = f.degree();
  const std::size_t nq = na - nb + 1;

  if (nb <= kDivisionNewton || nq <= kDivisionNewton) {
    Words rem(a.words().begin(), a.words().end());
    Words quot(nq * ell, 0);
    const FieldElement lead_inv = f.inv(b.leading());
    const u64* bw = b.words().data();
    Words t(ell);
    for (std::size_t i = na; i-- > nb - 1;) {
      u64* c = quot.data() + (i - nb + 1) * ell;
      f.mul_into(c, rem.data() + i * ell, lead_inv.coeffs().data());
      if (std::all_of(c, c + ell, [](u64 v) { return v == 0; })) continue;
      for (std::size_t j = 0; j < nb; ++j) {
        u64* r = rem.data() + (i - nb + 1 + j) * ell;
        f.mul_into(t.data(), c, bw + j * ell);
        f.sub_into(r, r, t.data());
      }
    }
    rem.resize((nb - 1) * ell);
    return {DensePoly::from_words(f, std::move(quot)), DensePoly::from_words(f, std::move(rem))};
  }

  // Blockwise from the top: each step fixes the next L quotient coefficients
  // from the top L remainder coefficients and 1/rev(b) to precision L, so a
  // long dividend never needs a long inverse.
  const std::size_t block = std::min(nq, nb);
  const DensePoly rb = DensePoly::from_words(f, reversed(b.words(), nb, ell));
  const DensePoly inv = inverse_series(rb, block);
  Words rem(a.words().begin(), a.words().end());
  Words quot(nq * ell, 0);
  for (std::size_t top = na; top >= nb;) {
    const std::size_t len = std::min(block, top - nb + 1);
    const std::size_t lo = top - nb + 1 - len;
    Words head(len * ell);
    for (std::size_t i = 0; i < len; ++i) std::copy_n(rem.data() + (top - 1 - i) * ell, ell, head.data() + i * ell);
    const DensePoly qrev =
        truncate(poly_mul(DensePoly::from_words(f, std::move(head)), len < block ? truncate(inv, len) : inv), len);
    Words qb = reversed(qrev.words(), len, ell);
    std::copy(qb.begin(), qb.end(), quot.begin() + lo * ell);
    const DensePoly prod = poly_mul(DensePoly::from_words(f, std::move(qb)), b);
    const auto pw = prod.words();
    for (std::size_t i = 0; i < prod.size(); ++i) {
      u64* r = rem.data() + (lo + i) * ell;
      f.sub_into(r, r, pw.data() + i * ell);
    }
    top -= len;
  }
  rem.resize((nb - 1) * ell);
  return {DensePoly::from_words(f, std::move(quot)), DensePoly::from_words(f, std::move(rem))};
}

DensePoly derivative(const DensePoly& f) {
  const Field& fld = f.field();
  if (f.size() <= 1) return DensePoly(fld);
  const unsigned ell = fld.degree();
  Words out((f.size() - 1) * ell);
  const Modulus& q = fld.base();
  const auto w = f.words();
  for (std::size_t i = 1; i < f.size(); ++i) {
    const u64 k = i % q.value();
    for (unsigned t = 0; t < ell; ++t) out[(i - 1) * ell + t] = q.mul(w[i * ell + t], k);
  }
  OpCounter::instance().mul(f.size() - 1);
  return DensePoly::from_words(fld, std::move(out));
}

FieldElement horner_eval(const DensePoly& p, const FieldElement& r) {
  const Field& f = p.field();
  if (r.field_data() != f.data()) throw UsageError("evaluation point from a different field");
  if (p.is_zero()) return f.zero();
  const unsigned ell = f.degree();
  const auto w = p.words();
  Limbs acc(w.end() - ell, w.end());
  const u64* rw = r.coeffs().data();
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    f.mul_into(acc.data(), acc.data(), rw);
    f.add_into(acc.data(), acc.data(), w.data() + i * ell);
  }
  return f.from_raw(acc.data());
}

std::vector<FieldElement> batch_inverse(const Field& f, std::span<const FieldElement> xs) {
  std::vector<FieldElement> prefix;
  prefix.reserve(xs.size());
  FieldElement acc = f.one();
  for (const auto& x : xs) {
    if (x.is_zero()) throw DomainError("batch inverse of zero");
    prefix.push_back(acc);
    acc *= x;
  }
  FieldElement inv = f.inv(acc);
  std::vector<FieldElement> out(xs.size());
  for (std::size_t i = xs.size(); i-- > 0;) {
    out[i] = inv * prefix[i];
    inv *= xs[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// SubproductTree

SubproductTree::SubproductTree(const Field& f, std::span<const FieldElement> points)
    : field_(f), points_(points.begin(), points.end()) {
  for (const auto& p : points_) {
    if (p.field_data() != f.data()) throw UsageError("point from a different field");
  }
  const std::size_t leaves = points_.size() / kTreeLeaf + 1;
  nodes_.assign(4 * leaves + 2, DensePoly(f));
  if (points_.empty()) {
    nodes_[1] = DensePoly::constant(f, f.one());
    return;
  }
  build(1, 0, points_.size());
}

void SubproductTree::build(std::size_t node, std::size_t lo, std::size_t hi) {
  if (hi - lo <= kTreeLeaf) {
    DensePoly acc = DensePoly::constant(field_, field_.one());
    for (std::size_t i = lo; i < hi; ++i) acc = acc * DensePoly::linear_root(field_, points_[i]);
    nodes_[node] = std::move(acc);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  build(2 * node, lo, mid);
  build(2 * node + 1, mid, hi);
  nodes_[node] = nodes_[2 * node] * nodes_[2 * node + 1];
}

std::vector<FieldElement> SubproductTree::evaluate(const DensePoly& p) const {
  if (p.field() != field_) throw UsageError("mixed-field polynomials");
  std::vector<FieldElement> out(points_.size());
  if (points_.empty()) return out;
  const DensePoly r = p.size() > points_.size() ? poly_divrem(p, root()).remainder : p;
  eval_rec(r, 1, 0, points_.size(), out);
  return out;
}

void SubproductTree::eval_rec(const DensePoly& r, std::size_t node, std::size_t lo,
                              std::size_t hi, std::vector<FieldElement>& out) const {
  if (hi - lo <= kTreeLeaf) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = horner_eval(r, points_[i]);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  const DensePoly& left = nodes_[2 * node];
  const DensePoly& right = nodes_[2 * node + 1];
  eval_rec(r.size() >= left.size() ? poly_divrem(r, left).remainder : r, 2 * node, lo, mid, out);
  eval_rec(r.size() >= right.size() ? poly_divrem(r, right).remainder : r, 2 * node + 1, mid, hi,
           out);
}

DensePoly SubproductTree::interpolate(std::span<const FieldElement> values) const {
  if (values.size() != points_.size()) throw UsageError("interpolate: value count differs from point count");
  for (const auto& v : values) {
    if (v.field_data() != field_.data()) throw UsageError("value from a different field");
  }
  if (points_.empty()) return DensePoly(field_);

  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t i) { return points_[i].coeffs(); };
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto a = key(x), b = key(y);
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points_[order[i]] == points_[order[i - 1]]) {
      throw DomainError("duplicate abscissa " + points_[order[i]].to_string());
    }
  }

  const std::vector<FieldElement> denom = evaluate(derivative(root()));
  const std::vector<FieldElement> inv = batch_inverse(field_, denom);
  std::vector<FieldElement> c(points_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = values[i] * inv[i];
  return combine_rec(c, 1, 0, points_.size());
}

DensePoly SubproductTree::combine_rec(std::span<const FieldElement> c, std::size_t node,
                                      std::size_t lo, std::size_t hi) const {
  if (hi - lo <= kTreeLeaf) {
    // sum_i c_i * M(x) / (x - p_i) by synthetic division of the leaf product.
    const DensePoly& m = nodes_[node];
    const std::size_t n = hi - lo;
    std::vector<FieldElement> acc(n, field_.zero());
    for (std::size_t i = lo; i < hi; ++i) {
      FieldElement carry = field_.zero();
      for (std::size_t k = n; k-- > 0;) {
        carry = carry * points_[i] + m.coeff(k + 1);
        acc[k] += c[i] * carry;
      }
    }
    return DensePoly(field_, acc);
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return combine_rec(c, 2 * node, lo, mid) * nodes_[2 * node + 1] +
         combine_rec(c, 2 * node + 1, mid, hi) * nodes_[2 * node];
}

std::vector<FieldElement> multipoint_eval(const DensePoly& p, std::span<const FieldElement> pts) {
  if (pts.size() <= kTreeLeaf) {
    std::vector<FieldElement> out;
    for (const auto& x : pts) out.push_back(horner_eval(p, x));
    return out;
  }
  return SubproductTree(p.field(), pts).evaluate(p);
}

DensePoly interpolate(const Field& f, std::span<const Point> pairs) {
  std::vector<FieldElement> xs, ys;
  xs.reserve(pairs.size());
  ys.reserve(pairs.size());
  for (const auto& pr : pairs) {
    xs.push_back(pr.x);
    ys.push_back(pr.y);
  }
  return SubproductTree(f, xs).interpolate(ys);
}

}  // namespace maproof
