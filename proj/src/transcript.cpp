#include "maproof/transcript.hpp"

#include "maproof/errors.hpp"

namespace maproof {

void Transcript::set_param(const std::string& key, ParamValue v) {
  for (auto& [k, val] : params) {
    if (k == key) {
      val = std::move(v);
      return;
    }
  }
  params.emplace_back(key, std::move(v));
}

const ParamValue* Transcript::param(const std::string& key) const {
  for (const auto& [k, val] : params) {
    if (k == key) return &val;
  }
  return nullptr;
}

std::uint64_t Transcript::param_u64(const std::string& key) const {
  const ParamValue* v = param(key);
  if (v == nullptr || !std::holds_alternative<std::uint64_t>(*v)) {
    throw UsageError("transcript lacks integer parameter '" + key + "'");
  }
  return std::get<std::uint64_t>(*v);
}

void Transcript::add(Sender s, MessageKind k, std::vector<std::uint8_t> payload) {
  rounds.push_back({s, k, std::move(payload)});
}

std::vector<std::uint8_t> Transcript::coin_record() const {
  std::vector<std::uint8_t> out;
  for (const Message& m : rounds) {
    if (m.kind == MessageKind::kCoin) out.insert(out.end(), m.payload.begin(), m.payload.end());
  }
  return out;
}

std::vector<std::uint8_t> words_to_bytes(std::span<const u64> words) {
  std::vector<std::uint8_t> out;
  out.reserve(words.size() * 8);
  for (u64 w : words)
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(w >> (8 * i)));
  return out;
}

std::vector<u64> bytes_to_words(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 8 != 0) throw UsageError("byte payload is not a whole number of words");
  std::vector<u64> out(bytes.size() / 8, 0);
  for (std::size_t i = 0; i < bytes.size(); ++i) out[i / 8] |= u64{bytes[i]} << (8 * (i % 8));
  return out;
}

std::string modulus_text(std::span<const u64> m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s;
}

}  // namespace maproof
