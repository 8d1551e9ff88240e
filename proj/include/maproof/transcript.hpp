#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "maproof/modarith.hpp"

namespace maproof {

enum class Sender : std::uint8_t { kProver, kVerifier };
enum class MessageKind : std::uint8_t { kPoly, kPrime, kCoin, kDecision };

struct Message {
  Sender sender = Sender::kProver;
  MessageKind kind = MessageKind::kPoly;
  std::vector<std::uint8_t> payload;
};

using ParamValue = std::variant<std::uint64_t, std::string>;

// Ordered record of one protocol run. Coin payloads hold the verifier's
// coin record (8 little-endian bytes per draw), poly payloads the
// coefficient words, prime payloads one u64.
struct Transcript {
  std::string protocol;
  std::vector<std::pair<std::string, ParamValue>> params;
  std::uint64_t seed = 0;
  std::vector<Message> rounds;
  bool decision = false;

  void set_param(const std::string& key, ParamValue v);
  const ParamValue* param(const std::string& key) const;
  std::uint64_t param_u64(const std::string& key) const;  // throws UsageError if absent
  void add(Sender s, MessageKind k, std::vector<std::uint8_t> payload);
  // Concatenation of all verifier coin payloads, in order.
  std::vector<std::uint8_t> coin_record() const;
};

// Comma-separated decimal words, as stored in the "modulus" parameter.
std::string modulus_text(std::span<const u64> m);

std::vector<std::uint8_t> words_to_bytes(std::span<const u64> words);
// Throws UsageError when the length is not a multiple of 8.
std::vector<u64> bytes_to_words(std::span<const std::uint8_t> bytes);

}  // namespace maproof
