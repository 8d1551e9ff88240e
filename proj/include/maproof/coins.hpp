#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "maproof/modarith.hpp"

namespace maproof {

// Bit-exact source of verifier randomness. Each take() returns `bits` fresh
// bits and appends the value to a record; a transcript stores the record as
// one little-endian u64 per take, and ReplayCoins serves it back verbatim.
class CoinSource {
 public:
  virtual ~CoinSource() = default;

  // Next `bits` fresh bits (0 <= bits <= 64) as an integer.
  u64 take(unsigned bits);

  std::uint64_t bits_consumed() const { return consumed_; }

  // Values taken since the previous drain, 8 little-endian bytes each.
  std::vector<std::uint8_t> drain_record();

 protected:
  virtual u64 draw(unsigned bits) = 0;

 private:
  std::uint64_t consumed_ = 0;
  std::vector<std::uint8_t> record_;
};

// Coins from std::mt19937_64, consumed LSB-first across 64-bit words.
class SeededCoins final : public CoinSource {
 public:
  explicit SeededCoins(std::uint64_t seed) : rng_(seed) {}

 protected:
  u64 draw(unsigned bits) override;

 private:
  std::mt19937_64 rng_;
  u64 buffer_ = 0;
  unsigned available_ = 0;
};

// Replays a recorded take() sequence; running past its end or a value that
// does not fit the requested width throws UsageError.
class ReplayCoins final : public CoinSource {
 public:
  explicit ReplayCoins(std::vector<std::uint8_t> record) : bytes_(std::move(record)) {}

 protected:
  u64 draw(unsigned bits) override;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace maproof
