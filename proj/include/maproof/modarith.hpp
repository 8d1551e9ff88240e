#pragma once

#include <cstdint>

namespace maproof {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Largest admissible base-field modulus (exclusive).
inline constexpr u64 kModulusLimit = u64{1} << 62;

// Reduction modulo a fixed q < 2^62 via a precomputed 128-bit Barrett
// constant. All inputs to reduce() may be arbitrary 128-bit values.
class Modulus {
 public:
  Modulus() = default;
  explicit Modulus(u64 q) : q_(q), m_(~u128{0} / q) {}

  u64 value() const { return q_; }

  u64 reduce(u128 x) const {
    const u128 qhat = mulhi(x, m_);
    u128 r = x - qhat * q_;
    while (r >= q_) r -= q_;
    return static_cast<u64>(r);
  }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + q_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : q_ - a; }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }

  u64 pow(u64 base, u64 exp) const {
    u64 result = 1 % q_;
    base %= q_;
    while (exp != 0) {
      if (exp & 1) result = mul(result, base);
      base = mul(base, base);
      exp >>= 1;
    }
    return result;
  }

  // Inverse by Fermat; q must be prime and a nonzero.
  u64 inv(u64 a) const { return pow(a, q_ - 2); }

 private:
  static u128 mulhi(u128 x, u128 y) {
    const u64 x0 = static_cast<u64>(x), x1 = static_cast<u64>(x >> 64);
    const u64 y0 = static_cast<u64>(y), y1 = static_cast<u64>(y >> 64);
    const u128 t = static_cast<u128>(x0) * y0;
    const u128 u = static_cast<u128>(x1) * y0 + (t >> 64);
    const u128 v = static_cast<u128>(x0) * y1 + static_cast<u64>(u);
    return static_cast<u128>(x1) * y1 + (u >> 64) + (v >> 64);
  }

  u64 q_ = 1;
  u128 m_ = 0;
};

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

// Smallest prime strictly greater than lower_bound. Requires
// 2 <= lower_bound < 2^61; the result is below 2 * lower_bound.
u64 find_prime(u64 lower_bound);

}  // namespace maproof
