#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "maproof/graph.hpp"
#include "maproof/ma_eval.hpp"
#include "maproof/transcript.hpp"

namespace maproof {

enum class FormatErrc : std::uint8_t {
  kBadMagic,
  kBadVersion,
  kTruncated,
  kBadHeader,
  kOutOfRange,
  kTrailingBytes,
  kBadJson,
};

const char* to_string(FormatErrc e);

// A binary or JSON artifact that does not follow its layout.
class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  FormatErrc code() const { return code_; }

 private:
  FormatErrc code_;
};

inline constexpr std::uint16_t kProofVersion = 1;

// Little-endian: "MAEP", u16 version, q u64, ell u32, ell + 1 modulus words,
// n u64, K u64, d u64, eps_exp u32, coefficient count u64, then count * ell
// coefficient words.
std::vector<std::uint8_t> serialize_proof(const Proof& proof);
Proof parse_proof(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(const std::string& hex);

nlohmann::ordered_json transcript_to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::ordered_json& j);
std::string transcript_text(const Transcript& t);
Transcript parse_transcript(const std::string& text);

// CSV readers. Blank lines and lines starting with '#' are skipped; every
// row must have the same number of fields.
PointSet parse_points_csv(const std::string& text);
IntMatrix parse_matrix_csv(const std::string& text);
BitVectors parse_bitvectors_csv(const std::string& text);

// One "u v" pair per line, 1-indexed. A line holding a single integer fixes
// the vertex count; otherwise it is the largest index seen. Undirected adds
// both arcs.
Graph parse_edge_list(const std::string& text, bool undirected);

std::string read_file(const std::string& path);
// Writes to a temporary file in the same directory, then renames it over
// `path`.
void write_file_atomic(const std::string& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace maproof
