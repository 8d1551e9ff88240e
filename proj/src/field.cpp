#include "maproof/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "maproof/errors.hpp"
#include "maproof/op_counter.hpp"

namespace maproof {

namespace {

// Dense F_q[y] helpers on ascending coefficient vectors. Used only for
// modulus handling; protocol polynomials live in poly.hpp.
using Vec = std::vector<u64>;

void trim(Vec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Remainder of a modulo monic f (deg f >= 1).
Vec rem_monic(Vec a, const Vec& f, const Modulus& m) {
  const std::size_t df = f.size() - 1;
  for (std::size_t i = a.size(); i-- > df;) {
    const u64 c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j < df; ++j) {
      a[i - df + j] = m.sub(a[i - df + j], m.mul(c, f[j]));
    }
    a[i] = 0;
  }
  trim(a);
  return a;
}

Vec mulmod(const Vec& a, const Vec& b, const Vec& f, const Modulus& m) {
  if (a.empty() || b.empty()) return {};
  Vec prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = m.add(prod[i + j], m.mul(a[i], b[j]));
    }
  }
  return rem_monic(std::move(prod), f, m);
}

Vec powmod(Vec base, u64 e, const Vec& f, const Modulus& m) {
  Vec result{1};
  while (e != 0) {
    if (e & 1) result = mulmod(result, base, f, m);
    e >>= 1;
    if (e != 0) base = mulmod(base, base, f, m);
  }
  return result;
}

// Quotient and remainder for a nonzero divisor b.
void divrem(const Vec& a, const Vec& b, const Modulus& m, Vec& quot, Vec& rem) {
  rem = a;
  trim(rem);
  quot.clear();
  if (rem.size() < b.size()) return;
  const u64 lead_inv = m.inv(b.back());
  quot.assign(rem.size() - b.size() + 1, 0);
  for (std::size_t i = rem.size(); i-- >= b.size();) {
    const u64 c = m.mul(rem[i], lead_inv);
    quot[i - b.size() + 1] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      rem[i - b.size() + 1 + j] = m.sub(rem[i - b.size() + 1 + j], m.mul(c, b[j]));
    }
  }
  trim(rem);
}

Vec gcd(Vec a, Vec b, const Modulus& m) {
  trim(a);
  trim(b);
  Vec q, r;
  while (!b.empty()) {
    divrem(a, b, m, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Vec poly_sub(const Vec& a, const Vec& b, const Modulus& m) {
  Vec out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0;
    const u64 y = i < b.size() ? b[i] : 0;
    out[i] = m.sub(x, y);
  }
  trim(out);
  return out;
}

Vec poly_mul(const Vec& a, const Vec& b, const Modulus& m) {
  if (a.empty() || b.empty()) return {};
  Vec prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = m.add(prod[i + j], m.mul(a[i], b[j]));
  trim(prod);
  return prod;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<u64, Vec>, std::unique_ptr<detail::FieldData>> fields;
  std::map<std::pair<u64, unsigned>, const detail::FieldData*> canonical;
};

Registry& registry() {
  static Registry r;
  return r;
}

BigInt big_pow(u64 q, unsigned ell) {
  BigInt r = 1;
  for (unsigned i = 0; i < ell; ++i) r *= q;
  return r;
}

const detail::FieldData* intern(u64 q, const Vec& modulus) {
  Registry& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(q, modulus);
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return it->second.get();

  auto d = std::make_unique<detail::FieldData>();
  d->q = q;
  d->ell = static_cast<unsigned>(modulus.size() - 1);
  d->mod = Modulus(q);
  d->modulus = modulus;
  d->order = big_pow(q, d->ell);
  d->coin_bits = coin_bits_for(q, d->ell);
  const unsigned ell = d->ell;
  if (ell >= 2) {
    d->fold.assign(static_cast<std::size_t>(ell - 1) * ell, 0);
    // y^ell = -(lower coefficients); successive rows multiply by y.
    Vec row(ell);
    for (unsigned j = 0; j < ell; ++j) row[j] = d->mod.neg(modulus[j]);
    for (unsigned r = 0; r + 1 < ell; ++r) {
      std::copy(row.begin(), row.end(), d->fold.begin() + static_cast<std::ptrdiff_t>(r) * ell);
      const u64 top = row[ell - 1];
      for (unsigned j = ell - 1; j > 0; --j) row[j] = row[j - 1];
      row[0] = 0;
      for (unsigned j = 0; j < ell; ++j) row[j] = d->mod.sub(row[j], d->mod.mul(top, modulus[j]));
    }
    unsigned t = 0;
    for (unsigned j = 0; j < ell; ++j)
      if (modulus[j] != 0) t = j;
    for (unsigned j = 0; j <= t; ++j) d->tail.push_back(d->mod.neg(modulus[j]));
    const u128 qm = q - 1;
    d->small = u128{2} * ell * qm * qm + q < (u128{1} << 64);
  }
  const detail::FieldData* out = d.get();
  reg.fields.emplace(std::move(key), std::move(d));
  return out;
}

// y^ell - a is irreducible over F_q for some a iff every prime factor of ell
// divides q - 1, and q = 1 mod 4 when 4 | ell. Without this shortcut the
// search would walk all q binomials before reaching y^ell + y + c.
bool binomials_can_be_irreducible(u64 q, unsigned ell) {
  unsigned n = ell;
  for (unsigned r = 2; r <= n; ++r) {
    if (n % r != 0) continue;
    if ((q - 1) % r != 0) return false;
    while (n % r == 0) n /= r;
  }
  return ell % 4 != 0 || q % 4 == 1;
}

void validate_base(u64 q) {
  if (q < 2 || q >= kModulusLimit) {
    throw UsageError("base modulus " + std::to_string(q) + " outside [2, 2^62)");
  }
  if (!is_prime(q)) throw UsageError("base modulus " + std::to_string(q) + " is not prime");
}

}  // namespace

unsigned coin_bits_for(u64 q, unsigned ell) {
  BigInt top = big_pow(q, ell) - 1;
  return top == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(top) + 1);
}

bool is_irreducible(std::span<const u64> f_in, u64 q) {
  Vec f(f_in.begin(), f_in.end());
  trim(f);
  if (f.size() < 2) throw UsageError("is_irreducible: degree must be at least 1");
  if (f.back() != 1) throw UsageError("is_irreducible: polynomial must be monic");
  for (u64 c : f) {
    if (c >= q) throw UsageError("is_irreducible: coefficient out of range");
  }
  const Modulus m(q);
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  if (f[0] == 0) return false;
  const Vec y{0, 1};
  Vec h = rem_monic(y, f, m);
  for (std::size_t i = 1; i <= deg / 2; ++i) {
    h = powmod(h, q, f, m);
    const Vec g = gcd(f, poly_sub(h, y, m), m);
    if (g.size() > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Kernels

namespace detail {

void FieldData::add(u64* out, const u64* a, const u64* b) const {
  OpCounter::instance().add();
  for (unsigned i = 0; i < ell; ++i) out[i] = mod.add(a[i], b[i]);
}

void FieldData::sub(u64* out, const u64* a, const u64* b) const {
  OpCounter::instance().add();
  for (unsigned i = 0; i < ell; ++i) out[i] = mod.sub(a[i], b[i]);
}

void FieldData::neg(u64* out, const u64* a) const {
  OpCounter::instance().add();
  for (unsigned i = 0; i < ell; ++i) out[i] = mod.neg(a[i]);
}

void FieldData::mul(u64* out, const u64* a, const u64* b) const {
  OpCounter::instance().mul();
  if (ell == 1) {
    out[0] = mod.mul(a[0], b[0]);
    return;
  }
  const unsigned n = ell;
  u64 prod[2 * kMaxExtensionDegree - 1];
  if (small) {
    std::fill(prod, prod + 2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
    }
    for (unsigned k = 0; k + 1 < 2 * n; ++k) prod[k] = mod.reduce(prod[k]);
    reduce_wide(out, prod);
    return;
  }
  // Products are below 2^124, so sixteen of them fit in an accumulator.
  constexpr unsigned kChunk = 15;
  for (unsigned k = 0; k + 1 < 2 * n; ++k) {
    const unsigned lo = k < n ? 0 : k - n + 1;
    const unsigned hi = std::min(k, n - 1);
    u128 s = 0;
    unsigned cnt = 0;
    for (unsigned i = lo; i <= hi; ++i) {
      s += static_cast<u128>(a[i]) * b[k - i];
      if (++cnt == kChunk) {
        s = mod.reduce(s);
        cnt = 0;
      }
    }
    prod[k] = mod.reduce(s);
  }
  reduce_wide(out, prod);
}

namespace {

// Folds y^k = y^(k-ell) * (-tail) from the top down. Each slot receives at
// most tail.size() products, so Acc must hold that many plus one value.
template <class Acc>
void fold_sparse(const FieldData& d, u64* out, const u64* wide) {
  const unsigned n = d.ell;
  const std::size_t tl = d.tail.size();
  Acc t[2 * kMaxExtensionDegree - 1];
  for (unsigned i = 0; i + 1 < 2 * n; ++i) t[i] = wide[i];
  for (unsigned k = 2 * n - 2; k >= n; --k) {
    const u64 c = d.mod.reduce(t[k]);
    if (c == 0) continue;
    Acc* dst = t + (k - n);
    for (std::size_t j = 0; j < tl; ++j) dst[j] += static_cast<Acc>(c) * d.tail[j];
  }
  for (unsigned j = 0; j < n; ++j) out[j] = d.mod.reduce(t[j]);
}

}  // namespace

void FieldData::reduce_wide(u64* out, const u64* wide) const {
  if (ell == 1) {
    out[0] = wide[0];
    return;
  }
  if (small) {
    fold_sparse<u64>(*this, out, wide);
    return;
  }
  constexpr unsigned kChunk = 15;
  if (tail.size() <= kChunk) {
    fold_sparse<u128>(*this, out, wide);
    return;
  }
  const unsigned n = ell;
  for (unsigned j = 0; j < n; ++j) {
    u128 s = wide[j];
    unsigned cnt = 0;
    for (unsigned r = 0; r + 1 < n; ++r) {
      s += static_cast<u128>(wide[n + r]) * fold[static_cast<std::size_t>(r) * n + j];
      if (++cnt == kChunk) {
        s = mod.reduce(s);
        cnt = 0;
      }
    }
    out[j] = mod.reduce(s);
  }
}

bool FieldData::inv(u64* out, const u64* a) const {
  OpCounter::instance().inv();
  if (ell == 1) {
    if (a[0] == 0) return false;
    out[0] = mod.inv(a[0]);
    return true;
  }
  Vec r0 = modulus, r1(a, a + ell);
  trim(r1);
  if (r1.empty()) return false;
  Vec s0, s1{1}, quot, rem;
  while (r1.size() > 1) {
    divrem(r0, r1, mod, quot, rem);
    Vec s2 = poly_sub(s0, poly_mul(quot, s1, mod), mod);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) return false;
  }
  const u64 c = mod.inv(r1[0]);
  s1 = rem_monic(s1, modulus, mod);
  std::fill(out, out + ell, 0);
  for (std::size_t i = 0; i < s1.size(); ++i) out[i] = mod.mul(s1[i], c);
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FieldElement

void FieldElement::check_same(const FieldElement& o) const {
  if (f_ == nullptr || o.f_ == nullptr) throw UsageError("operation on an unbound field element");
  if (f_ != o.f_) throw UsageError("mixed-field operands");
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

bool FieldElement::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](u64 v) { return v == 0; });
}

bool FieldElement::in_base_field() const {
  return c_.empty() || std::all_of(c_.begin() + 1, c_.end(), [](u64 v) { return v == 0; });
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same(o);
  f_->add(c_.data(), c_.data(), o.c_.data());
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_same(o);
  f_->sub(c_.data(), c_.data(), o.c_.data());
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same(o);
  f_->mul(c_.data(), c_.data(), o.c_.data());
  return *this;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  FieldElement out(a.f_, Limbs(a.f_->ell));
  a.f_->mul(out.c_.data(), a.c_.data(), b.c_.data());
  return out;
}

FieldElement FieldElement::operator-() const {
  if (f_ == nullptr) throw UsageError("operation on an unbound field element");
  FieldElement out(f_, Limbs(f_->ell));
  f_->neg(out.c_.data(), c_.data());
  return out;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.f_ == b.f_ && std::equal(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

std::string FieldElement::to_string() const {
  if (c_.size() == 1) return std::to_string(c_[0]);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Field

Field Field::prime(u64 q) { return extension(q, 1); }

Field Field::extension(u64 q, unsigned ell) {
  validate_base(q);
  if (ell < 1) throw UsageError("extension degree must be at least 1");
  if (ell > kMaxExtensionDegree) {
    throw CapacityError("extension degree " + std::to_string(ell) + " exceeds the limit of " +
                        std::to_string(kMaxExtensionDegree));
  }
  Registry& reg = registry();
  {
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.canonical.find({q, ell});
    if (it != reg.canonical.end()) return Field(it->second);
  }
  // Candidates in increasing order of the base-q number formed by their lower
  // coefficients (constant term least significant).
  Vec cand(ell + 1, 0);
  cand[ell] = 1;
  if (ell >= 2 && !binomials_can_be_irreducible(q, ell)) cand[1] = 1;
  for (;;) {
    if ((ell == 1 || cand[0] != 0) && is_irreducible(cand, q)) break;
    unsigned i = 0;
    while (i < ell && ++cand[i] == q) cand[i++] = 0;
    if (i == ell) throw DomainError("no irreducible polynomial found");  // unreachable
  }
  const detail::FieldData* d = intern(q, cand);
  std::lock_guard<std::mutex> lock(reg.mu);
  reg.canonical.emplace(std::make_pair(q, ell), d);
  return Field(d);
}

Field Field::with_modulus(u64 q, std::span<const u64> modulus) {
  validate_base(q);
  if (modulus.size() < 2) throw DomainError("modulus must have degree at least 1");
  const unsigned ell = static_cast<unsigned>(modulus.size() - 1);
  if (ell > kMaxExtensionDegree) {
    throw CapacityError("extension degree " + std::to_string(ell) + " exceeds the limit of " +
                        std::to_string(kMaxExtensionDegree));
  }
  if (modulus.back() != 1) throw DomainError("modulus is not monic");
  for (u64 c : modulus) {
    if (c >= q) throw DomainError("modulus coefficient out of range");
  }
  if (!is_irreducible(modulus, q)) throw DomainError("modulus is not irreducible");
  return Field(intern(q, Vec(modulus.begin(), modulus.end())));
}

FieldElement Field::zero() const { return FieldElement(d_, Limbs(d_->ell, 0)); }

FieldElement Field::one() const {
  Limbs c(d_->ell, 0);
  c[0] = 1;
  return FieldElement(d_, std::move(c));
}

FieldElement Field::from_int(std::int64_t v) const {
  const u64 q = d_->q;
  u64 r;
  if (v >= 0) {
    r = static_cast<u64>(v) % q;
  } else {
    // -(|v| mod q) without overflowing on INT64_MIN.
    const u64 mag = static_cast<u64>(-(v + 1)) + 1;
    r = d_->mod.neg(mag % q);
  }
  Limbs c(d_->ell, 0);
  c[0] = r;
  return FieldElement(d_, std::move(c));
}

FieldElement Field::from_u64(u64 v) const {
  Limbs c(d_->ell, 0);
  c[0] = v % d_->q;
  return FieldElement(d_, std::move(c));
}

FieldElement Field::from_coeffs(std::span<const u64> coeffs) const {
  if (coeffs.size() > d_->ell) throw UsageError("too many coefficients for field element");
  Limbs c(d_->ell, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= d_->q) throw UsageError("field element coefficient out of range");
    c[i] = coeffs[i];
  }
  return FieldElement(d_, std::move(c));
}

FieldElement Field::from_raw(const u64* w) const {
  return FieldElement(d_, Limbs(w, w + d_->ell));
}

FieldElement Field::adopt(const FieldElement& e) const {
  if (e.f_ == d_) return e;
  if (e.f_ == nullptr || e.f_->q != d_->q || e.f_->modulus != d_->modulus) {
    throw UsageError("mixed-field operands");
  }
  return FieldElement(d_, e.c_);
}

FieldElement Field::canonical_element(u64 i) const {
  if (BigInt(i) >= d_->order) {
    throw UsageError("canonical index " + std::to_string(i) + " outside the field");
  }
  Limbs c(d_->ell, 0);
  for (unsigned k = 0; k < d_->ell && i != 0; ++k) {
    c[k] = i % d_->q;
    i /= d_->q;
  }
  return FieldElement(d_, std::move(c));
}

FieldElement Field::random_element(CoinSource& coins) const {
  const unsigned bits = d_->coin_bits;
  Limbs c(d_->ell, 0);
  if (bits <= 64) {
    const bool all = d_->order > BigInt(~u64{0});
    const u64 limit = all ? 0 : static_cast<u64>(d_->order);
    for (;;) {
      u64 v = coins.take(bits);
      if (!all && v >= limit) continue;
      for (unsigned k = 0; k < d_->ell; ++k) {
        c[k] = v % d_->q;
        v /= d_->q;
      }
      return FieldElement(d_, std::move(c));
    }
  }
  for (;;) {
    BigInt v = 0;
    unsigned shift = 0;
    while (shift < bits) {
      const unsigned chunk = std::min(64u, bits - shift);
      v |= BigInt(coins.take(chunk)) << shift;
      shift += chunk;
    }
    if (v >= d_->order) continue;
    for (unsigned k = 0; k < d_->ell; ++k) {
      c[k] = static_cast<u64>(v % d_->q);
      v /= d_->q;
    }
    return FieldElement(d_, std::move(c));
  }
}

FieldElement Field::inv(const FieldElement& a) const {
  if (a.f_ != d_) throw UsageError("mixed-field operands");
  FieldElement out(d_, Limbs(d_->ell));
  if (!d_->inv(out.c_.data(), a.c_.data())) throw DomainError("inverse of zero");
  return out;
}

FieldElement Field::pow(const FieldElement& a, u64 e) const {
  if (a.f_ != d_) throw UsageError("mixed-field operands");
  FieldElement result = one(), base = a;
  while (e != 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

FieldElement Field::pow(const FieldElement& a, const BigInt& e) const {
  if (a.f_ != d_) throw UsageError("mixed-field operands");
  if (e < 0) throw UsageError("negative exponent");
  FieldElement result = one();
  if (e == 0) return result;
  for (long long bit = static_cast<long long>(boost::multiprecision::msb(e)); bit >= 0; --bit) {
    result *= result;
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) result *= a;
  }
  return result;
}

FieldElement Field::frobenius(const FieldElement& a) const { return pow(a, d_->q); }

bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }

std::string Field::to_string() const {
  return std::to_string(d_->q) + "^" + std::to_string(d_->ell);
}

Field parse_field_spec(const std::string& spec) {
  const auto caret = spec.find('^');
  try {
    std::size_t used = 0;
    const std::string qs = spec.substr(0, caret);
    const u64 q = std::stoull(qs, &used);
    if (used != qs.size()) throw std::invalid_argument("q");
    unsigned ell = 1;
    if (caret != std::string::npos) {
      const std::string ls = spec.substr(caret + 1);
      const unsigned long l = std::stoul(ls, &used);
      if (used != ls.size() || l == 0) throw std::invalid_argument("l");
      if (l > kMaxExtensionDegree) {
        throw CapacityError("extension degree " + ls + " exceeds the limit");
      }
      ell = static_cast<unsigned>(l);
    }
    return Field::extension(q, ell);
  } catch (const std::invalid_argument&) {
    throw UsageError("malformed field spec '" + spec + "' (expected q^l)");
  } catch (const std::out_of_range&) {
    throw UsageError("malformed field spec '" + spec + "' (expected q^l)");
  }
}

}  // namespace maproof
