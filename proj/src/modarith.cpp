#include "maproof/modarith.hpp"

#include <string>

#include "maproof/errors.hpp"

namespace maproof {

namespace {

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<u128>(a) * b % n); }

u64 powmod(u64 a, u64 e, u64 n) {
  u64 r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve primes are a sufficient witness set below 3.3e24.
  for (u64 a : kWitnesses) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 find_prime(u64 lower_bound) {
  if (lower_bound < 2 || lower_bound >= (u64{1} << 61)) {
    throw UsageError("find_prime: lower bound " + std::to_string(lower_bound) +
                     " outside [2, 2^61)");
  }
  for (u64 c = lower_bound + 1;; ++c) {
    if (is_prime(c)) return c;
  }
}

}  // namespace maproof
