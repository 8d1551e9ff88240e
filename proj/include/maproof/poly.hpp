#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "maproof/field.hpp"

namespace maproof {

// Dense univariate polynomial over a Field. Coefficients are stored flat,
// degree() words per coefficient, lowest power first, with no trailing zero
// coefficient. The zero polynomial has no coefficients and no degree.
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(Field f) : field_(f) {}
  DensePoly(Field f, std::span<const FieldElement> coeffs);
  // Takes ownership of size()*ell words; trailing zeros are trimmed.
  static DensePoly from_words(Field f, std::vector<u64> words);
  static DensePoly constant(const Field& f, const FieldElement& c);
  // x - a
  static DensePoly linear_root(const Field& f, const FieldElement& a);

  const Field& field() const { return field_; }
  bool is_zero() const { return w_.empty(); }
  // nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const;
  // Number of stored coefficients (degree + 1, or 0).
  std::size_t size() const;
  FieldElement coeff(std::size_t i) const;  // zero beyond the degree
  FieldElement leading() const;
  std::vector<FieldElement> coeffs() const;
  std::span<const u64> words() const { return w_; }

  DensePoly& operator+=(const DensePoly& o);
  DensePoly& operator-=(const DensePoly& o);
  friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
  friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b);
  DensePoly scaled(const FieldElement& c) const;

  friend bool operator==(const DensePoly& a, const DensePoly& b);
  friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

 private:
  void trim();
  void check_same(const DensePoly& o) const;

  Field field_;
  std::vector<u64> w_;
};

struct DivRem {
  DensePoly quotient;
  DensePoly remainder;
};

DensePoly poly_mul(const DensePoly& f, const DensePoly& g);
// Throws DomainError for a zero divisor.
DivRem poly_divrem(const DensePoly& a, const DensePoly& b);
// g with f * g = 1 mod x^k; requires f(0) != 0.
DensePoly inverse_series(const DensePoly& f, std::size_t k);
// f mod x^k
DensePoly truncate(const DensePoly& f, std::size_t k);
DensePoly derivative(const DensePoly& f);
FieldElement horner_eval(const DensePoly& p, const FieldElement& r);

// Product tree over a point list, reusable for several evaluations and
// interpolations on the same points.
class SubproductTree {
 public:
  SubproductTree(const Field& f, std::span<const FieldElement> points);

  std::size_t size() const { return points_.size(); }
  const Field& field() const { return field_; }
  // prod (x - points[i])
  const DensePoly& root() const { return nodes_[1]; }

  std::vector<FieldElement> evaluate(const DensePoly& p) const;
  // Unique polynomial of degree < size() through (points[i], values[i]).
  // Throws DomainError naming a duplicated point.
  DensePoly interpolate(std::span<const FieldElement> values) const;

 private:
  void build(std::size_t node, std::size_t lo, std::size_t hi);
  void eval_rec(const DensePoly& r, std::size_t node, std::size_t lo, std::size_t hi,
                std::vector<FieldElement>& out) const;
  DensePoly combine_rec(std::span<const FieldElement> c, std::size_t node, std::size_t lo,
                        std::size_t hi) const;

  Field field_;
  std::vector<FieldElement> points_;
  std::vector<DensePoly> nodes_;
};

std::vector<FieldElement> multipoint_eval(const DensePoly& p, std::span<const FieldElement> pts);

struct Point {
  FieldElement x;
  FieldElement y;
};
DensePoly interpolate(const Field& f, std::span<const Point> pairs);

// Inverts every (nonzero) entry with a single field inversion.
std::vector<FieldElement> batch_inverse(const Field& f, std::span<const FieldElement> xs);

}  // namespace maproof
