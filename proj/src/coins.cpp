#include "maproof/coins.hpp"

#include <algorithm>

#include "maproof/errors.hpp"

namespace maproof {

u64 CoinSource::take(unsigned bits) {
  if (bits > 64) throw UsageError("CoinSource::take: at most 64 bits per call");
  if (bits == 0) return 0;
  const u64 value = draw(bits);
  consumed_ += bits;
  for (int i = 0; i < 8; ++i) record_.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  return value;
}

std::vector<std::uint8_t> CoinSource::drain_record() {
  std::vector<std::uint8_t> out;
  out.swap(record_);
  return out;
}

u64 SeededCoins::draw(unsigned bits) {
  u64 value = 0;
  unsigned filled = 0;
  while (filled < bits) {
    if (available_ == 0) {
      buffer_ = rng_();
      available_ = 64;
    }
    const unsigned chunk = std::min(bits - filled, available_);
    const u64 mask = chunk == 64 ? ~u64{0} : ((u64{1} << chunk) - 1);
    value |= (buffer_ & mask) << filled;
    buffer_ = chunk == 64 ? 0 : buffer_ >> chunk;
    available_ -= chunk;
    filled += chunk;
  }
  return value;
}

u64 ReplayCoins::draw(unsigned bits) {
  if (pos_ + 8 > bytes_.size()) throw UsageError("replay coin stream exhausted");
  u64 w = 0;
  for (int i = 0; i < 8; ++i) w |= static_cast<u64>(bytes_[pos_ + i]) << (8 * i);
  pos_ += 8;
  if (bits < 64 && (w >> bits) != 0) throw UsageError("replay coin value wider than requested");
  return w;
}

}  // namespace maproof
