#include "maproof/sum_protocols.hpp"

#include <algorithm>
#include <memory>

#include "maproof/errors.hpp"
#include "maproof/op_counter.hpp"

namespace maproof {

namespace {

constexpr std::size_t kMaxBlockBits = 30;
constexpr u64 kMaxRoundCoefficients = u64{1} << 26;

void require_prime(u64 p) {
  if (p < 2 || p >= kModulusLimit || !is_prime(p)) throw UsageError("p must be a prime below 2^62");
}

std::uint32_t balanced(Circuit& c, std::vector<std::uint32_t> terms, bool product) {
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

// sum over b in {0,1}^(n - split) of C(x, b) for x in F^split. Gates that do
// not depend on the summed inputs are computed once per x.
class SuffixSum {
 public:
  SuffixSum(const Circuit& c, const Field& f, std::size_t split)
      : c_(c), f_(f), ell_(f.degree()), split_(split), vals_(c.size() * f.degree(), 0) {
    const std::size_t n = c.n_inputs();
    if (split > n) throw UsageError("split beyond the input count");
    tail_ = n - split;
    if (tail_ > 40) throw CapacityError("too many summed variables");
    out_ = c.output();
    const auto& gates = c.gates();
    std::vector<char> varies(gates.size(), 0);
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const Gate& g = gates[i];
      switch (g.kind) {
        case GateKind::kInput:
          varies[i] = g.a >= split;
          break;
        case GateKind::kConst: {
          const FieldElement e = f.from_int(g.value);
          std::copy(e.coeffs().begin(), e.coeffs().end(), vals_.begin() + i * ell_);
          continue;
        }
        default:
          varies[i] = varies[g.a] || varies[g.b];
      }
      (varies[i] ? varying_ : fixed_).push_back(static_cast<std::uint32_t>(i));
    }
    out_varies_ = varies[out_];
    const FieldElement s = f.from_u64(u64{1} << tail_);
    scale_.assign(s.coeffs().begin(), s.coeffs().end());
  }

  FieldElement run(std::span<const FieldElement> x) {
    if (x.size() != split_) throw UsageError("suffix sum: wrong prefix length");
    words_.clear();
    for (const auto& e : x) words_.insert(words_.end(), e.coeffs().begin(), e.coeffs().end());
    Limbs acc(ell_, 0);
    if (ell_ == 1) {
      acc[0] = run_base();
    } else {
      run_ext(acc.data());
    }
    return f_.from_raw(acc.data());
  }

 private:
  u64 run_base() {
    const Modulus& q = f_.base();
    const auto& gates = c_.gates();
    u64* v = vals_.data();
    std::uint64_t adds = 0, muls = 0;
    auto step = [&](std::uint32_t i, u64 b) {
      const Gate& g = gates[i];
      switch (g.kind) {
        case GateKind::kInput:
          v[i] = g.a < split_ ? words_[g.a] : (b >> (g.a - split_)) & 1;
          break;
        case GateKind::kConst:
          break;
        case GateKind::kAdd:
          v[i] = q.add(v[g.a], v[g.b]);
          ++adds;
          break;
        case GateKind::kMul:
          v[i] = q.mul(v[g.a], v[g.b]);
          ++muls;
          break;
      }
    };
    for (std::uint32_t i : fixed_) step(i, 0);
    u64 acc = 0;
    if (!out_varies_) {
      acc = q.mul(v[out_], scale_[0]);
      ++muls;
    } else {
      const std::uint64_t total = std::uint64_t{1} << tail_;
      for (std::uint64_t b = 0; b < total; ++b) {
        for (std::uint32_t i : varying_) step(i, b);
        acc = q.add(acc, v[out_]);
      }
      adds += total;
    }
    OpCounter::instance().add(adds);
    OpCounter::instance().mul(muls);
    return acc;
  }

  void run_ext(u64* acc) {
    const detail::FieldData& fd = *f_.data();
    const auto& gates = c_.gates();
    u64* v = vals_.data();
    auto step = [&](std::uint32_t i, u64 b) {
      const Gate& g = gates[i];
      u64* dst = v + i * ell_;
      switch (g.kind) {
        case GateKind::kInput:
          if (g.a < split_) {
            std::copy_n(words_.data() + g.a * ell_, ell_, dst);
          } else {
            std::fill_n(dst, ell_, 0);
            dst[0] = (b >> (g.a - split_)) & 1;
          }
          break;
        case GateKind::kConst:
          break;
        case GateKind::kAdd:
          fd.add(dst, v + g.a * ell_, v + g.b * ell_);
          break;
        case GateKind::kMul:
          fd.mul(dst, v + g.a * ell_, v + g.b * ell_);
          break;
      }
    };
    for (std::uint32_t i : fixed_) step(i, 0);
    const u64* out = v + std::size_t{out_} * ell_;
    if (!out_varies_) {
      fd.mul(acc, out, scale_.data());
      return;
    }
    const std::uint64_t total = std::uint64_t{1} << tail_;
    for (std::uint64_t b = 0; b < total; ++b) {
      for (std::uint32_t i : varying_) step(i, b);
      fd.add(acc, acc, out);
    }
  }

  const Circuit& c_;
  Field f_;
  unsigned ell_;
  std::size_t split_;
  std::size_t tail_ = 0;
  std::uint32_t out_ = 0;
  bool out_varies_ = false;
  std::vector<std::uint32_t> fixed_, varying_;
  std::vector<u64> vals_;
  std::vector<u64> scale_;
  std::vector<u64> words_;
};

// Values of the bit polynomials of a block at r.
std::vector<FieldElement> bits_at(const Field& f, std::size_t bits, const FieldElement& r) {
  std::vector<FieldElement> out(bits, f.zero());
  if (bits == 0) return out;
  const std::vector<FieldElement> L = lagrange_at(f, u64{1} << bits, r);
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t j = 0; j < bits; ++j) {
      if ((i >> j) & 1) out[j] += L[i];
    }
  }
  return out;
}

// prod_{lo <= i < hi} (x - i)
DensePoly linear_product(const Field& f, u64 lo, u64 hi) {
  if (hi - lo == 1) return DensePoly::linear_root(f, f.from_u64(lo));
  const u64 mid = lo + (hi - lo) / 2;
  return poly_mul(linear_product(f, lo, mid), linear_product(f, mid, hi));
}

// S_k = sum_{i<K} i^k for k < len. The generating series is A / B with
// B = prod_{0<i<K} (1 - i x) and A = K B - x B', so after the first block each
// further block of deg B terms follows from the previous one by two products.
std::vector<u64> power_sums(const Field& base, u64 K, std::size_t len) {
  std::vector<u64> s(len, 0);
  if (len == 0) return s;
  s[0] = K % base.characteristic();
  if (K == 1 || len == 1) {
    return s;
  }
  const Modulus& m = base.base();
  const std::size_t h = K - 1;
  const DensePoly P = linear_product(base, 1, K);
  std::vector<u64> bw(h + 1), aw(h + 1);
  for (std::size_t k = 0; k <= h; ++k) {
    bw[k] = P.coeff(h - k).coeff(0);
    aw[k] = m.mul(bw[k], (K - k) % m.value());
  }
  OpCounter::instance().mul(h + 1);
  const DensePoly B = DensePoly::from_words(base, bw);
  const DensePoly A = DensePoly::from_words(base, aw);
  const DensePoly inv = inverse_series(B, std::min(h, len));
  const DensePoly head = truncate(poly_mul(A, inv), std::min(h, len));
  for (std::size_t k = 0; k < h && k < len; ++k) s[k] = head.coeff(k).coeff(0);
  for (std::size_t lo = h; lo < len; lo += h) {
    const std::size_t blk = std::min(h, len - lo);
    const DensePoly tail = DensePoly::from_words(base, {s.begin() + (lo - h), s.begin() + lo});
    const DensePoly spill = poly_mul(B, tail);
    std::vector<u64> w(blk);
    for (std::size_t t = 0; t < blk; ++t) {
      const u64 a = lo + t <= h ? aw[lo + t] : 0;
      w[t] = m.sub(a, spill.coeff(h + t).coeff(0));
    }
    OpCounter::instance().add(blk);
    const DensePoly next = truncate(poly_mul(DensePoly::from_words(base, std::move(w)), inv), blk);
    for (std::size_t t = 0; t < blk; ++t) s[lo + t] = next.coeff(t).coeff(0);
  }
  return s;
}

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

u64 prime_above(const BigInt& bound) {
  if (bound >= (BigInt(1) << 61) - 1) throw CapacityError("required prime exceeds 2^61");
  return find_prime(std::max<u64>(2, static_cast<u64>(bound)));
}

}  // namespace

Circuit build_half_sum_circuit(const Circuit& c) {
  const std::size_t n = c.n_inputs();
  const std::size_t free = (n + 1) / 2, summed = n / 2;
  if (summed > 30) throw CapacityError("too many summed variables");
  Circuit out(free);
  std::vector<std::uint32_t> map(n);
  for (std::size_t j = 0; j < free; ++j) map[j] = out.input(j);
  std::uint32_t zero = 0, one = 0;
  if (summed > 0) {
    zero = out.constant(0);
    one = out.constant(1);
  }
  std::vector<std::uint32_t> terms;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << summed); ++b) {
    for (std::size_t j = 0; j < summed; ++j) map[free + j] = (b >> j) & 1 ? one : zero;
    terms.push_back(out.append(c, map));
  }
  out.set_output(balanced(out, std::move(terms), false));
  return out;
}

PointSet boolean_points(std::size_t bits) {
  if (bits > kMaxBlockBits) throw CapacityError("too many Boolean points");
  PointSet pts(std::size_t{1} << bits, std::vector<u64>(bits));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < bits; ++j) pts[i][j] = (i >> j) & 1;
  return pts;
}

FieldElement sum_at_canonical(const DensePoly& q, u64 K) {
  const Field& f = q.field();
  if (q.is_zero()) return f.zero();
  const u64 p = f.characteristic();
  if (K > p) {
    FieldElement acc = f.zero();
    for (const auto& v : multipoint_eval(q, canonical_points(f, K))) acc += v;
    return acc;
  }
  const std::vector<u64> s = power_sums(Field::prime(p), K, q.size());
  FieldElement acc = f.zero();
  for (std::size_t k = 0; k < s.size(); ++k) acc += q.coeff(k) * f.from_u64(s[k]);
  OpCounter::instance().mul(s.size());
  return acc;
}

ProtocolParams sum_params(const Circuit& c, u64 p, unsigned eps_exp) {
  const Circuit half = build_half_sum_circuit(c);
  return choose_params(half, u64{1} << half.n_inputs(), p, eps_exp);
}

Proof prove_sum(const Circuit& c, u64 p, unsigned eps_exp) {
  require_prime(p);
  const ProtocolParams params = sum_params(c, p, eps_exp);
  const std::size_t free = params.n;
  return prove_eval_with(params, boolean_points(free),
                         [&](const Field& f, const std::vector<std::vector<FieldElement>>& rows) {
                           SuffixSum ss(c, f, free);
                           std::vector<FieldElement> out;
                           out.reserve(rows.size());
                           for (const auto& r : rows) out.push_back(ss.run(r));
                           return out;
                         });
}

SumOutput verify_sum(const Circuit& c, u64 p, const Proof& proof, unsigned eps_exp,
                     CoinSource& coins, std::optional<u64> claimed) {
  require_prime(p);
  PhaseScope phase(Phase::kVerifier);
  const std::uint64_t before = coins.bits_consumed();
  SumOutput out;
  if (proof.params.q != p) {
    out.verdict = Verdict::malformed("proof characteristic differs from p");
    return out;
  }
  const Circuit half = build_half_sum_circuit(c);
  Field f;
  DensePoly q;
  out.verdict = check_eval_proof(half, boolean_points(half.n_inputs()), proof, eps_exp, coins, f, q);
  out.coins_used = coins.bits_consumed() - before;
  if (!out.accepted()) return out;
  const FieldElement total = sum_at_canonical(q, u64{1} << half.n_inputs());
  if (!total.in_base_field()) {
    out.verdict = Verdict::unsound("sum lies outside F_p");
    return out;
  }
  out.sum = total.coeff(0);
  if (claimed && *claimed % p != out.sum) {
    out.verdict = Verdict::unsound("certified sum " + std::to_string(out.sum) + " differs from claim " +
                                   std::to_string(*claimed % p));
  }
  return out;
}

u64 MultiroundParams::round_degree(std::size_t k) const {
  return d * ((u64{1} << blocks[k]) - 1);
}

MultiroundParams multiround_params(const Circuit& c, u64 p, unsigned rounds, unsigned eps_exp) {
  require_prime(p);
  if (rounds < 1) throw UsageError("at least one round is required");
  const u64 d = syntactic_degree(c);
  if (d == kDegreeInfinite) throw CapacityError("circuit degree overflows 64 bits");
  MultiroundParams mp;
  mp.p = p;
  mp.d = d;
  mp.eps_exp = eps_exp;
  const std::size_t n = c.n_inputs();
  for (std::size_t k = 0; k <= rounds; ++k) {
    mp.blocks.push_back(n / (rounds + 1) + (k < n % (rounds + 1) ? 1 : 0));
    if (mp.blocks.back() > kMaxBlockBits) throw CapacityError("block too large");
  }
  BigInt total = 0, widest = 1;
  for (std::size_t k = 0; k < rounds; ++k) {
    const BigInt dk = BigInt(d) * ((u64{1} << mp.blocks[k]) - 1);
    if (dk + 1 > kMaxRoundCoefficients) throw CapacityError("round polynomial too long");
    total += dk;
    widest = std::max(widest, BigInt(u64{1} << mp.blocks[k]));
  }
  mp.ell = minimal_extension(p, std::max(total, widest) * (BigInt(1) << eps_exp));
  return mp;
}

RoundProver honest_round_prover(const Circuit& c, const MultiroundParams& mp) {
  auto circuit = std::make_shared<const Circuit>(c);
  return [circuit, mp](std::size_t k, std::span<const FieldElement> coins) {
    PhaseScope phase(Phase::kProver);
    if (k >= mp.rounds() || coins.size() != k) throw UsageError("round prover called out of order");
    const Field f = Field::extension(mp.p, mp.ell);
    std::vector<FieldElement> prefix;
    for (std::size_t i = 0; i < k; ++i) {
      const auto bits = bits_at(f, mp.blocks[i], coins[i]);
      prefix.insert(prefix.end(), bits.begin(), bits.end());
    }
    const std::size_t b = mp.blocks[k];
    const u64 N = mp.round_degree(k) + 1;
    const std::vector<FieldElement> beta = canonical_points(f, N);
    std::vector<std::vector<FieldElement>> bit_vals;
    if (b > 0) {
      for (const DensePoly& psi : build_psi(boolean_points(b), f)) {
        bit_vals.push_back(multipoint_eval(psi, beta));
      }
    }
    SuffixSum ss(*circuit, f, prefix.size() + b);
    std::vector<FieldElement> values;
    values.reserve(N);
    std::vector<FieldElement> x = prefix;
    x.resize(prefix.size() + b);
    for (u64 t = 0; t < N; ++t) {
      for (std::size_t j = 0; j < b; ++j) x[prefix.size() + j] = bit_vals[j][t];
      values.push_back(ss.run(x));
    }
    const DensePoly q = SubproductTree(f, beta).interpolate(values);
    std::vector<u64> words(N * mp.ell, 0);
    std::copy(q.words().begin(), q.words().end(), words.begin());
    return words;
  };
}

SumOutput multiround_sum(const Circuit& c, const MultiroundParams& mp, const RoundProver& prover,
                         CoinSource& coins, std::optional<u64> claimed, Transcript* transcript) {
  PhaseScope phase(Phase::kVerifier);
  const MultiroundParams own = multiround_params(c, mp.p, mp.rounds(), mp.eps_exp);
  if (own.ell != mp.ell || own.blocks != mp.blocks || own.d != mp.d) {
    throw UsageError("multiround parameters do not match the circuit");
  }
  const Field f = Field::extension(mp.p, mp.ell);
  const unsigned ell = mp.ell;
  const std::uint64_t before = coins.bits_consumed();
  coins.drain_record();
  if (transcript) {
    transcript->protocol = "multiround-sum";
    transcript->set_param("p", mp.p);
    transcript->set_param("ell", std::uint64_t{ell});
    transcript->set_param("modulus", modulus_text(f.modulus()));
    transcript->set_param("d", mp.d);
    transcript->set_param("n", std::uint64_t{c.n_inputs()});
    transcript->set_param("rounds", std::uint64_t{mp.rounds()});
    transcript->set_param("eps_exp", std::uint64_t{mp.eps_exp});
    std::string blocks;
    for (std::size_t i = 0; i < mp.blocks.size(); ++i) blocks += (i ? "," : "") + std::to_string(mp.blocks[i]);
    transcript->set_param("blocks", blocks);
    for (std::size_t k = 0; k < mp.rounds(); ++k) {
      transcript->set_param("round_degree_" + std::to_string(k + 1), mp.round_degree(k));
    }
    if (claimed) transcript->set_param("claimed", *claimed);
  }
  SumOutput out;
  auto finish = [&](Verdict v) {
    out.verdict = std::move(v);
    out.coins_used = coins.bits_consumed() - before;
    if (transcript) {
      transcript->decision = out.accepted();
      transcript->add(Sender::kVerifier, MessageKind::kDecision, {static_cast<std::uint8_t>(out.accepted())});
    }
    return out;
  };

  std::vector<FieldElement> rs;
  std::vector<FieldElement> prefix;
  FieldElement expected;
  for (std::size_t k = 0; k < mp.rounds(); ++k) {
    const std::string round = "round " + std::to_string(k + 1);
    std::vector<u64> words;
    {
      PhaseScope prover_phase(Phase::kProver);
      words = prover(k, rs);
    }
    if (transcript) transcript->add(Sender::kProver, MessageKind::kPoly, words_to_bytes(words));
    if (words.size() % ell != 0) return finish(Verdict::malformed(round + ": ragged coefficient words"));
    if (words.size() / ell > mp.round_degree(k) + 1) {
      return finish(Verdict::malformed(round + ": polynomial exceeds the degree bound"));
    }
    for (u64 w : words) {
      if (w >= mp.p) return finish(Verdict::malformed(round + ": coefficient out of range"));
    }
    const DensePoly q = DensePoly::from_words(f, std::move(words));
    const FieldElement s = sum_at_canonical(q, u64{1} << mp.blocks[k]);
    if (k == 0) {
      if (!s.in_base_field()) return finish(Verdict::unsound(round + ": sum lies outside F_p"));
      out.sum = s.coeff(0);
      if (claimed && *claimed % mp.p != out.sum) {
        return finish(Verdict::unsound(round + ": sum differs from the claim"));
      }
    } else if (s != expected) {
      return finish(Verdict::unsound(round + ": sum differs from the previous message at r"));
    }
    const FieldElement r = f.random_element(coins);
    if (transcript) transcript->add(Sender::kVerifier, MessageKind::kCoin, coins.drain_record());
    rs.push_back(r);
    expected = horner_eval(q, r);
    const auto bits = bits_at(f, mp.blocks[k], r);
    prefix.insert(prefix.end(), bits.begin(), bits.end());
  }
  SuffixSum last(c, f, prefix.size());
  if (last.run(prefix) != expected) {
    return finish(Verdict::unsound("final check: direct sum over the last block differs"));
  }
  return finish(Verdict::accept());
}

SumOutput certify_cube_sum(const Circuit& c, u64 p, unsigned eps_exp, unsigned rounds,
                           CoinSource& coins, Transcript* transcript) {
  if (rounds >= 2) {
    const MultiroundParams mp = multiround_params(c, p, rounds, eps_exp);
    return multiround_sum(c, mp, honest_round_prover(c, mp), coins, std::nullopt, transcript);
  }
  const Proof proof = prove_sum(c, p, eps_exp);
  coins.drain_record();
  SumOutput out = verify_sum(c, p, proof, eps_exp, coins);
  if (transcript) {
    transcript->protocol = "sum";
    transcript->set_param("p", p);
    record_proof_params(*transcript, proof);
    transcript->add(Sender::kProver, MessageKind::kPoly, words_to_bytes(proof.coeffs));
    transcript->add(Sender::kVerifier, MessageKind::kCoin, coins.drain_record());
    transcript->decision = out.accepted();
    transcript->add(Sender::kVerifier, MessageKind::kDecision, {static_cast<std::uint8_t>(out.accepted())});
  }
  return out;
}

u64 sat_prime(std::size_t n) {
  if (n > 60) throw CapacityError("#SAT needs a prime above 2^n; n is limited to 60");
  return find_prime(std::max<u64>(2, u64{1} << n));
}

CertifiedValue count_sat(const BoolFormula& f, unsigned eps_exp, CoinSource& coins, unsigned rounds,
                         Transcript* transcript) {
  CertifiedValue cv;
  cv.p = sat_prime(f.n_vars());
  cv.out = certify_cube_sum(arithmetize(f), cv.p, eps_exp, rounds, coins, transcript);
  cv.value = cv.out.sum;
  return cv;
}

Circuit ryser_circuit(const IntMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw UsageError("permanent needs a square matrix");
  }
  Circuit c(n);
  std::vector<std::uint32_t> y;
  for (std::size_t j = 0; j < n; ++j) y.push_back(c.input(j));
  std::vector<std::uint32_t> factors;
  if (n > 0) {
    const std::uint32_t one = c.constant(1), minus_two = c.constant(-2);
    for (std::size_t j = 0; j < n; ++j) factors.push_back(c.add(one, c.mul(minus_two, y[j])));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] == 0) continue;
      terms.push_back(m[i][j] == 1 ? y[j] : c.mul(c.constant(m[i][j]), y[j]));
    }
    factors.push_back(terms.empty() ? c.constant(0) : balanced(c, std::move(terms), false));
  }
  if (n % 2) factors.push_back(c.constant(-1));
  c.set_output(factors.empty() ? c.constant(1) : balanced(c, std::move(factors), true));
  return c;
}

CertifiedValue permanent(const IntMatrix& m, unsigned eps_exp, CoinSource& coins, unsigned rounds,
                         Transcript* transcript) {
  const Circuit c = ryser_circuit(m);
  // |perm m| <= prod_i sum_j |m_ij|; p > 2 * bound recovers the sign.
  BigInt bound = 1;
  for (const auto& row : m) {
    BigInt s = 0;
    for (std::int64_t v : row) s += v < 0 ? -BigInt(v) : BigInt(v);
    bound *= s;
  }
  CertifiedValue cv;
  cv.p = prime_above(2 * bound);
  cv.out = certify_cube_sum(c, cv.p, eps_exp, rounds, coins, transcript);
  cv.value = cv.out.sum;
  if (cv.out.sum > cv.p / 2) cv.value -= cv.p;
  return cv;
}

Circuit hamiltonian_circuit(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 2) throw UsageError("Hamiltonian cycle counting needs at least 2 vertices");
  Circuit c(n - 1);
  std::vector<std::uint32_t> y(n);
  for (std::size_t j = 1; j < n; ++j) y[j] = c.input(j - 1);
  // walks[j]: gate counting walks from vertex 0 to j inside the chosen set.
  std::vector<std::optional<std::uint32_t>> walks(n);
  walks[0] = c.constant(1);
  for (std::size_t step = 1; step < n; ++step) {
    std::vector<std::optional<std::uint32_t>> next(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::uint32_t> terms;
      for (std::size_t i = 0; i < n; ++i) {
        if (walks[i] && g.arc(i, j)) terms.push_back(*walks[i]);
      }
      if (terms.empty()) continue;
      const std::uint32_t s = balanced(c, std::move(terms), false);
      next[j] = j == 0 ? s : c.mul(s, y[j]);
    }
    walks = std::move(next);
  }
  std::vector<std::uint32_t> closing;
  for (std::size_t i = 0; i < n; ++i) {
    if (walks[i] && g.arc(i, 0)) closing.push_back(*walks[i]);
  }
  const std::uint32_t count = closing.empty() ? c.constant(0) : balanced(c, std::move(closing), false);
  // (-1)^(number of absent vertices)
  std::vector<std::uint32_t> factors;
  const std::uint32_t two = c.constant(2), minus_one = c.constant(-1);
  for (std::size_t j = 1; j < n; ++j) factors.push_back(c.add(c.mul(two, y[j]), minus_one));
  factors.push_back(count);
  c.set_output(balanced(c, std::move(factors), true));
  return c;
}

CertifiedValue hamiltonian_cycles(const Graph& g, bool undirected, unsigned eps_exp,
                                  CoinSource& coins, unsigned rounds, Transcript* transcript) {
  const std::size_t n = g.size();
  if (undirected) {
    if (!g.is_undirected()) throw UsageError("graph is not symmetric");
    if (n <= 2) throw UsageError("undirected Hamiltonian cycles need at least 3 vertices");
  }
  const Circuit c = hamiltonian_circuit(g);
  CertifiedValue cv;
  cv.p = prime_above(factorial(n - 1));
  cv.out = certify_cube_sum(c, cv.p, eps_exp, rounds, coins, transcript);
  cv.value = cv.out.sum;
  if (undirected && cv.accepted()) {
    if (cv.out.sum % 2 != 0) {
      cv.out.verdict = Verdict::unsound("directed cycle count of a symmetric graph is odd");
    }
    cv.value = cv.out.sum / 2;
  }
  return cv;
}

}  // namespace maproof
