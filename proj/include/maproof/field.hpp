#pragma once

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maproof/coins.hpp"
#include "maproof/modarith.hpp"

namespace maproof {

using BigInt = boost::multiprecision::cpp_int;

// Extension degrees above this are a capacity error.
inline constexpr unsigned kMaxExtensionDegree = 64;

namespace detail {

// Immutable description of F_{q^ell} = F_q[y] / (modulus). Instances live in a
// process-wide registry and are never destroyed, so elements may refer to
// them by plain pointer.
struct FieldData {
  u64 q = 0;
  unsigned ell = 0;
  Modulus mod;
  std::vector<u64> modulus;  // ell + 1 coefficients, ascending, monic
  std::vector<u64> fold;     // row r (0 <= r < ell-1): y^(ell+r) mod modulus
  std::vector<u64> tail;     // -modulus[0..t], t the highest nonzero lower coefficient
  bool small = false;        // 2 * ell * (q-1)^2 + q fits in 64 bits
  unsigned coin_bits = 0;    // bit length of q^ell - 1
  BigInt order;              // q^ell

  void add(u64* out, const u64* a, const u64* b) const;
  void sub(u64* out, const u64* a, const u64* b) const;
  void neg(u64* out, const u64* a) const;
  void mul(u64* out, const u64* a, const u64* b) const;
  // Reduces 2*ell-1 words (each < q) of an unreduced product modulo the
  // modulus. Not counted as a field operation.
  void reduce_wide(u64* out, const u64* wide) const;
  // Returns false when a is zero.
  bool inv(u64* out, const u64* a) const;
};

}  // namespace detail

using Limbs = boost::container::small_vector<u64, 4>;

// An element of F_q or F_{q^ell}: coefficients in powers of the generator,
// ascending, each reduced into [0, q). Arithmetic between elements of
// different fields throws UsageError.
class FieldElement {
 public:
  FieldElement() = default;

  const detail::FieldData* field_data() const { return f_; }
  std::span<const u64> coeffs() const { return {c_.data(), c_.size()}; }
  u64 coeff(std::size_t i) const { return c_[i]; }
  bool is_zero() const;
  bool is_one() const;
  // True iff only the constant coefficient may be nonzero.
  bool in_base_field() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  std::string to_string() const;

 private:
  friend class Field;
  FieldElement(const detail::FieldData* f, Limbs c) : f_(f), c_(std::move(c)) {}
  void check_same(const FieldElement& o) const;

  const detail::FieldData* f_ = nullptr;
  Limbs c_;
};

class Field {
 public:
  Field() = default;

  // F_q as the degree-1 extension with modulus y.
  static Field prime(u64 q);
  // F_{q^ell} with the lexicographically smallest monic irreducible modulus.
  static Field extension(u64 q, unsigned ell);
  // F_{q^ell} with a caller-supplied modulus (ell + 1 ascending coefficients).
  // Throws DomainError if it is not monic irreducible over F_q.
  static Field with_modulus(u64 q, std::span<const u64> modulus);

  // Handle for the field an element belongs to.
  static Field from_data(const detail::FieldData* d) { return Field(d); }

  bool valid() const { return d_ != nullptr; }
  u64 characteristic() const { return d_->q; }
  unsigned degree() const { return d_->ell; }
  const std::vector<u64>& modulus() const { return d_->modulus; }
  const Modulus& base() const { return d_->mod; }
  const detail::FieldData* data() const { return d_; }
  const BigInt& order() const { return d_->order; }
  // ceil(ell * log2 q): the bits one uniform draw consumes.
  unsigned coin_bits() const { return d_->coin_bits; }

  FieldElement zero() const;
  FieldElement one() const;
  // Embeds an integer (possibly negative) through F_q.
  FieldElement from_int(std::int64_t v) const;
  FieldElement from_u64(u64 v) const;
  // Coefficients must already be reduced; throws UsageError otherwise.
  FieldElement from_coeffs(std::span<const u64> c) const;
  // Unchecked: reads degree() already-reduced words.
  FieldElement from_raw(const u64* w) const;
  // Rebinds an element of a field with the same (q, modulus) to this handle.
  FieldElement adopt(const FieldElement& e) const;

  // Element whose coefficient vector is the base-q expansion of i.
  FieldElement canonical_element(u64 i) const;
  // Uniform element by rejection sampling coin_bits() bits per attempt.
  FieldElement random_element(CoinSource& coins) const;

  FieldElement inv(const FieldElement& a) const;
  FieldElement pow(const FieldElement& a, u64 e) const;
  FieldElement pow(const FieldElement& a, const BigInt& e) const;
  // Frobenius map a -> a^q.
  FieldElement frobenius(const FieldElement& a) const;

  // In-place kernels on raw limb buffers of length degree().
  void add_into(u64* out, const u64* a, const u64* b) const { d_->add(out, a, b); }
  void sub_into(u64* out, const u64* a, const u64* b) const { d_->sub(out, a, b); }
  void mul_into(u64* out, const u64* a, const u64* b) const { d_->mul(out, a, b); }

  friend bool operator==(const Field& a, const Field& b);
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

  std::string to_string() const;

 private:
  explicit Field(const detail::FieldData* d) : d_(d) {}
  const detail::FieldData* d_ = nullptr;
};

// Field from the "q^l" syntax, e.g. "101^1" or "2^16".
Field parse_field_spec(const std::string& spec);

// Ben-Or / Rabin test: monic f (ascending coefficients, degree >= 1) over F_q
// is irreducible iff gcd(f, y^(q^i) - y) = 1 for all 1 <= i <= deg/2.
// Throws UsageError if f is not monic or has degree < 1.
bool is_irreducible(std::span<const u64> f, u64 q);

// Big integer q^ell - 1 bit length, i.e. ceil(ell * log2 q).
unsigned coin_bits_for(u64 q, unsigned ell);

}  // namespace maproof
