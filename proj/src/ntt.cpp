#include "ntt.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "maproof/errors.hpp"
#include "maproof/op_counter.hpp"

namespace maproof::detail {

namespace {

constexpr unsigned kTwoAdicity = 32;

u64 mulhi64(u64 a, u64 b) { return static_cast<u64>((static_cast<u128>(a) * b) >> 64); }

struct NttPrime {
  u64 p = 0;
  Modulus mod;
  u64 root = 0;  // generator of the 2^32-th roots of unity

  // x * w mod p given wp = floor(w * 2^64 / p).
  u64 mul_shoup(u64 x, u64 w, u64 wp) const {
    const u64 q = mulhi64(x, wp);
    u64 r = x * w - q * p;
    return r >= p ? r - p : r;
  }
};

u64 primitive_root(u64 p) {
  const Modulus m(p);
  std::vector<u64> factors;
  u64 rest = p - 1;
  for (u64 f = 2; f * f <= rest; ++f) {
    if (rest % f != 0) continue;
    factors.push_back(f);
    while (rest % f == 0) rest /= f;
  }
  if (rest > 1) factors.push_back(rest);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 f : factors) ok = ok && m.pow(g, (p - 1) / f) != 1;
    if (ok) return g;
  }
}

const std::array<NttPrime, 3>& ntt_primes() {
  static const std::array<NttPrime, 3> primes = [] {
    std::array<NttPrime, 3> out;
    std::size_t found = 0;
    // Largest primes c * 2^32 + 1 below 2^62.
    for (u64 c = (u64{1} << 30) - 1; found < 3; --c) {
      const u64 p = (c << kTwoAdicity) + 1;
      if (!is_prime(p)) continue;
      NttPrime& np = out[found++];
      np.p = p;
      np.mod = Modulus(p);
      np.root = np.mod.pow(primitive_root(p), c);
    }
    return out;
  }();
  return primes;
}

// Per-stage root tables: for each power of two h, entries [h, 2h) hold
// w_{2h}^j (forward) or w_{2h}^{-j} (inverse) for j < h, with Shoup
// companions floor(w * 2^64 / p).
struct RootTable {
  std::size_t size = 1;
  std::vector<u64> fwd, fwd_shoup, inv, inv_shoup;

  void ensure(const NttPrime& np, std::size_t n) {
    if (n <= size) return;
    fwd.assign(n, 0);
    fwd_shoup.assign(n, 0);
    inv.assign(n, 0);
    inv_shoup.assign(n, 0);
    for (std::size_t h = 1; h < n; h <<= 1) {
      const u64 w = np.mod.pow(np.root, (u64{1} << kTwoAdicity) / (2 * h));
      const u64 wi = np.mod.inv(w);
      u64 a = 1, b = 1;
      for (std::size_t j = 0; j < h; ++j) {
        fwd[h + j] = a;
        fwd_shoup[h + j] = static_cast<u64>((static_cast<u128>(a) << 64) / np.p);
        inv[h + j] = b;
        inv_shoup[h + j] = static_cast<u64>((static_cast<u128>(b) << 64) / np.p);
        a = np.mod.mul(a, w);
        b = np.mod.mul(b, wi);
      }
    }
    size = n;
  }
};

RootTable& root_table(std::size_t idx) {
  thread_local std::array<RootTable, 3> tables;
  return tables[idx];
}

// Decimation in frequency: natural order in, bit-reversed order out.
void forward(u64* a, std::size_t n, const NttPrime& np, const RootTable& rt) {
  const u64 p = np.p;
  for (std::size_t half = n / 2; half >= 1; half /= 2) {
    const u64* w = rt.fwd.data() + half;
    const u64* ws = rt.fwd_shoup.data() + half;
    for (std::size_t i = 0; i < n; i += 2 * half) {
      for (std::size_t j = 0; j < half; ++j) {
        const u64 u = a[i + j], v = a[i + j + half];
        const u64 s = u + v;
        a[i + j] = s >= p ? s - p : s;
        a[i + j + half] = np.mul_shoup(u + p - v, w[j], ws[j]);
      }
    }
  }
}

// Decimation in time with inverse roots: bit-reversed in, natural out
// (unscaled).
void backward(u64* a, std::size_t n, const NttPrime& np, const RootTable& rt) {
  const u64 p = np.p;
  for (std::size_t half = 1; half < n; half *= 2) {
    const u64* w = rt.inv.data() + half;
    const u64* ws = rt.inv_shoup.data() + half;
    for (std::size_t i = 0; i < n; i += 2 * half) {
      for (std::size_t j = 0; j < half; ++j) {
        const u64 u = a[i + j];
        const u64 v = np.mul_shoup(a[i + j + half], w[j], ws[j]);
        const u64 s = u + v;
        a[i + j] = s >= p ? s - p : s;
        a[i + j + half] = u >= v ? u - v : u + p - v;
      }
    }
  }
}

std::vector<u64> convolve_one(std::span<const u64> a, std::span<const u64> b, std::size_t idx,
                              std::size_t n) {
  const NttPrime& np = ntt_primes()[idx];
  RootTable& rt = root_table(idx);
  rt.ensure(np, n);
  std::vector<u64> fa(n, 0), fb(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] >= np.p ? a[i] - np.p : a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] >= np.p ? b[i] - np.p : b[i];
  forward(fa.data(), n, np, rt);
  forward(fb.data(), n, np, rt);
  const u64 n_inv = np.mod.inv(n % np.p);
  const u64 n_inv_shoup = static_cast<u64>((static_cast<u128>(n_inv) << 64) / np.p);
  for (std::size_t i = 0; i < n; ++i) fa[i] = np.mul_shoup(np.mod.mul(fa[i], fb[i]), n_inv, n_inv_shoup);
  backward(fa.data(), n, np, rt);

  const unsigned logn = static_cast<unsigned>(std::countr_zero(n));
  OpCounter& oc = OpCounter::instance();
  oc.mul(3 * (n / 2) * logn + 2 * n);
  oc.add(3 * n * logn);
  return fa;
}

}  // namespace

std::size_t ntt_prime_count(const Modulus& q, u64 max_terms) {
  // Exact coefficients are below max_terms * (q-1)^2; one bit of slack.
  const double bound_bits =
      std::log2(static_cast<double>(std::max<u64>(max_terms, 1))) +
      2.0 * std::log2(static_cast<double>(std::max<u64>(q.value() - 1, 1))) + 1.0;
  return bound_bits < 61.0 ? 1 : bound_bits < 122.0 ? 2 : 3;
}

std::vector<u64> ntt_convolve(std::span<const u64> a, std::span<const u64> b, const Modulus& q,
                              u64 max_terms) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t n = std::bit_ceil(out_len);
  if (n > (std::size_t{1} << kTwoAdicity)) throw CapacityError("convolution length exceeds 2^32");
  // A product just past a power of two (typical for subproduct trees) is
  // computed cyclically at half the length; the few wrapped top coefficients
  // are computed directly and subtracted out.
  std::size_t wrap = 0;
  if (n >= 256 && out_len - n / 2 <= 32 && a.size() <= n / 2 && b.size() <= n / 2) {
    n /= 2;
    wrap = out_len - n;
    max_terms *= 2;
  }
  const auto& primes = ntt_primes();
  const std::size_t count = ntt_prime_count(q, max_terms);

  std::vector<std::vector<u64>> res;
  for (std::size_t i = 0; i < count; ++i) res.push_back(convolve_one(a, b, i, n));

  std::vector<u64> out(out_len);
  const u64 qv = q.value();
  OpCounter& oc = OpCounter::instance();
  const std::size_t cyc = std::min(out_len, n);
  if (count == 1) {
    for (std::size_t i = 0; i < cyc; ++i) out[i] = q.reduce(res[0][i]);
  } else if (count == 2) {
    const NttPrime &p1 = primes[0], &p2 = primes[1];
    const u64 inv_p1_mod_p2 = p2.mod.inv(p1.p % p2.p);
    const u64 p1_mod_q = p1.p % qv;
    for (std::size_t i = 0; i < cyc; ++i) {
      const u64 r1 = res[0][i], r2 = res[1][i];
      const u64 k = p2.mod.mul(p2.mod.sub(r2, p2.mod.reduce(r1)), inv_p1_mod_p2);
      out[i] = q.add(q.reduce(r1), q.mul(p1_mod_q, q.reduce(k)));
    }
    oc.mul(2 * cyc);
    oc.add(2 * cyc);
  } else {
    const NttPrime &p1 = primes[0], &p2 = primes[1], &p3 = primes[2];
    const u64 inv_p1_mod_p2 = p2.mod.inv(p1.p % p2.p);
    const u64 p1_mod_q = p1.p % qv;
    const u64 inv_p1_mod_p3 = p3.mod.inv(p1.p % p3.p);
    const u64 inv_p2_mod_p3 = p3.mod.inv(p2.p % p3.p);
    const u64 p1p2_mod_q = q.mul(p1_mod_q, p2.p % qv);
    for (std::size_t i = 0; i < cyc; ++i) {
      const u64 r1 = res[0][i], r2 = res[1][i], r3 = res[2][i];
      const u64 v2 = p2.mod.mul(p2.mod.sub(r2, p2.mod.reduce(r1)), inv_p1_mod_p2);
      u64 v3 = p3.mod.mul(p3.mod.sub(r3, p3.mod.reduce(r1)), inv_p1_mod_p3);
      v3 = p3.mod.mul(p3.mod.sub(v3, p3.mod.reduce(v2)), inv_p2_mod_p3);
      out[i] = q.add(q.add(q.reduce(r1), q.mul(p1_mod_q, q.reduce(v2))),
                     q.mul(p1p2_mod_q, q.reduce(v3)));
    }
    oc.mul(5 * cyc);
    oc.add(5 * cyc);
  }
  for (std::size_t k = n; k < n + wrap; ++k) {
    u64 s = 0;
    const std::size_t lo = k + 1 > b.size() ? k + 1 - b.size() : 0;
    for (std::size_t j = lo; j < a.size() && j <= k; ++j) s = q.add(s, q.mul(a[j], b[k - j]));
    out[k] = s;
    out[k - n] = q.sub(out[k - n], s);
  }
  oc.mul(wrap * wrap);
  oc.add(wrap * wrap);
  return out;
}

}  // namespace maproof::detail
