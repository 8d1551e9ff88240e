#pragma once

#include <array>
#include <cstdint>

namespace maproof {

enum class Phase : std::uint8_t { kOther = 0, kProver = 1, kVerifier = 2, kOracle = 3 };

struct OpTally {
  std::uint64_t adds = 0;  // additions, subtractions, negations
  std::uint64_t muls = 0;
  std::uint64_t invs = 0;

  std::uint64_t total() const { return adds + muls + invs; }
};

// Per-thread field-operation counters, split by protocol phase. Extension
// field operations count as one operation each; word-size prime field
// operations inside the NTT multiplier are counted individually.
class OpCounter {
 public:
  static OpCounter& instance();

  void reset() { tallies_ = {}; }
  const OpTally& tally(Phase p) const { return tallies_[static_cast<int>(p)]; }
  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }

  void add(std::uint64_t n = 1) { tallies_[static_cast<int>(phase_)].adds += n; }
  void mul(std::uint64_t n = 1) { tallies_[static_cast<int>(phase_)].muls += n; }
  void inv(std::uint64_t n = 1) { tallies_[static_cast<int>(phase_)].invs += n; }

 private:
  std::array<OpTally, 4> tallies_{};
  Phase phase_ = Phase::kOther;
};

inline OpCounter& OpCounter::instance() {
  thread_local OpCounter counter;
  return counter;
}

// Attributes all field operations in scope to `p`; restores the previous
// phase on exit.
class PhaseScope {
 public:
  explicit PhaseScope(Phase p) : saved_(OpCounter::instance().phase()) {
    OpCounter::instance().set_phase(p);
  }
  ~PhaseScope() { OpCounter::instance().set_phase(saved_); }
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  Phase saved_;
};

}  // namespace maproof
