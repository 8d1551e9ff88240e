#include "maproof/io.hpp"

#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "maproof/errors.hpp"

namespace maproof {

namespace {

constexpr char kMagic[4] = {'M', 'A', 'E', 'P'};

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  template <class T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}

  template <class T>
  T le(const char* what) {
    need(sizeof(T), what);
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(T{b_[pos_ + i]} << (8 * i));
    pos_ += sizeof(T);
    return v;
  }
  void need(std::size_t n, const char* what) const {
    if (b_.size() - pos_ < n) {
      throw FormatError(FormatErrc::kTruncated, std::string("file ends inside ") + what);
    }
  }
  std::size_t remaining() const { return b_.size() - pos_; }
  std::span<const std::uint8_t> raw(std::size_t n) {
    auto s = b_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

const char* sender_name(Sender s) { return s == Sender::kProver ? "prover" : "verifier"; }

const char* kind_name(MessageKind k) {
  switch (k) {
    case MessageKind::kPoly:
      return "poly";
    case MessageKind::kPrime:
      return "prime";
    case MessageKind::kCoin:
      return "coin";
    case MessageKind::kDecision:
      return "decision";
  }
  return "?";
}

// Splits into non-empty, non-comment lines with their 1-based numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    out.emplace_back(no, line);
  }
  return out;
}

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> split(const std::string& line, char sep) {
  std::vector<Token> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = sep == ' ' ? line.find_first_of(" \t", start) : line.find(sep, start);
    std::string tok = line.substr(start, end == std::string::npos ? std::string::npos : end - start);
    const auto a = tok.find_first_not_of(" \t");
    std::size_t col = start + 1;
    if (a == std::string::npos) {
      tok.clear();
    } else {
      col += a;
      tok = tok.substr(a, tok.find_last_not_of(" \t") - a + 1);
    }
    if (!(sep == ' ' && tok.empty())) out.push_back({tok, col});
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

template <class T>
T parse_number(const Token& f, std::size_t line) {
  T v{};
  const char* b = f.text.data();
  const char* e = b + f.text.size();
  if (!f.text.empty() && f.text[0] == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (f.text.empty() || ec != std::errc() || ptr != e) {
    throw ParseError("expected an integer, found '" + f.text + "'", line, f.column);
  }
  return v;
}

template <class T>
std::vector<std::vector<T>> parse_csv(const std::string& text) {
  std::vector<std::vector<T>> rows;
  for (const auto& [no, line] : content_lines(text)) {
    std::vector<T> row;
    for (const Token& f : split(line, ',')) row.push_back(parse_number<T>(f, no));
    if (!rows.empty() && row.size() != rows[0].size()) {
      throw ParseError("row has " + std::to_string(row.size()) + " fields, expected " +
                           std::to_string(rows[0].size()),
                       no, 1);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows", 1, 1);
  return rows;
}

}  // namespace

const char* to_string(FormatErrc e) {
  switch (e) {
    case FormatErrc::kBadMagic:
      return "bad magic";
    case FormatErrc::kBadVersion:
      return "unsupported version";
    case FormatErrc::kTruncated:
      return "truncated";
    case FormatErrc::kBadHeader:
      return "bad header";
    case FormatErrc::kOutOfRange:
      return "value out of range";
    case FormatErrc::kTrailingBytes:
      return "trailing bytes";
    case FormatErrc::kBadJson:
      return "bad transcript";
  }
  return "format error";
}

std::vector<std::uint8_t> serialize_proof(const Proof& proof) {
  const ProtocolParams& p = proof.params;
  if (p.ell == 0 || proof.modulus.size() != p.ell + 1u || proof.coeffs.size() % p.ell != 0) {
    throw UsageError("proof shape is inconsistent with ell");
  }
  Writer w;
  w.bytes(kMagic, 4);
  w.le<std::uint16_t>(kProofVersion);
  w.le<std::uint64_t>(p.q);
  w.le<std::uint32_t>(p.ell);
  for (u64 m : proof.modulus) w.le<std::uint64_t>(m);
  w.le<std::uint64_t>(p.n);
  w.le<std::uint64_t>(p.K);
  w.le<std::uint64_t>(p.d);
  w.le<std::uint32_t>(p.eps_exp);
  w.le<std::uint64_t>(proof.coefficient_count());
  for (u64 c : proof.coeffs) w.le<std::uint64_t>(c);
  return w.take();
}

Proof parse_proof(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.need(4, "magic");
  if (std::memcmp(r.raw(4).data(), kMagic, 4) != 0) throw FormatError(FormatErrc::kBadMagic, "not a proof file");
  const auto version = r.le<std::uint16_t>("version");
  if (version != kProofVersion) {
    throw FormatError(FormatErrc::kBadVersion, "version " + std::to_string(version));
  }
  Proof proof;
  ProtocolParams& p = proof.params;
  p.q = r.le<std::uint64_t>("header");
  if (p.q < 2 || p.q >= kModulusLimit) throw FormatError(FormatErrc::kBadHeader, "q outside [2, 2^62)");
  p.ell = r.le<std::uint32_t>("header");
  if (p.ell == 0 || p.ell > kMaxExtensionDegree) {
    throw FormatError(FormatErrc::kBadHeader, "ell " + std::to_string(p.ell) + " outside [1, " +
                                                  std::to_string(kMaxExtensionDegree) + "]");
  }
  for (unsigned i = 0; i <= p.ell; ++i) {
    const u64 m = r.le<std::uint64_t>("modulus");
    if (m >= p.q) throw FormatError(FormatErrc::kOutOfRange, "modulus coefficient >= q");
    proof.modulus.push_back(m);
  }
  p.n = r.le<std::uint64_t>("header");
  p.K = r.le<std::uint64_t>("header");
  p.d = r.le<std::uint64_t>("header");
  p.eps_exp = r.le<std::uint32_t>("header");
  const u64 count = r.le<std::uint64_t>("header");
  const std::size_t words = r.remaining() / 8;
  if (count > words / p.ell) {
    throw FormatError(FormatErrc::kTruncated, "header announces " + std::to_string(count) +
                                                  " coefficients, file holds " +
                                                  std::to_string(words / p.ell));
  }
  proof.coeffs.reserve(count * p.ell);
  for (u64 i = 0; i < count * p.ell; ++i) {
    const u64 c = r.le<std::uint64_t>("coefficients");
    if (c >= p.q) {
      throw FormatError(FormatErrc::kOutOfRange, "coefficient word " + std::to_string(i) + " >= q");
    }
    proof.coeffs.push_back(c);
  }
  if (r.remaining() != 0) {
    throw FormatError(FormatErrc::kTrailingBytes, std::to_string(r.remaining()) + " bytes after the coefficients");
  }
  return proof;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * bytes.size());
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 15]);
  }
  return s;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
  if (hex.size() % 2) throw FormatError(FormatErrc::kBadJson, "odd-length hex payload");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw FormatError(FormatErrc::kBadJson, std::string("invalid hex digit '") + c + "'");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

nlohmann::ordered_json transcript_to_json(const Transcript& t) {
  nlohmann::ordered_json j;
  j["protocol"] = t.protocol;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.params) {
    std::visit([&, &key = k](const auto& x) { params[key] = x; }, v);
  }
  j["params"] = std::move(params);
  j["seed"] = t.seed;
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  for (const Message& m : t.rounds) {
    rounds.push_back({{"sender", sender_name(m.sender)}, {"kind", kind_name(m.kind)}, {"payload", to_hex(m.payload)}});
  }
  j["rounds"] = std::move(rounds);
  j["decision"] = t.decision;
  return j;
}

Transcript transcript_from_json(const nlohmann::ordered_json& j) {
  try {
    Transcript t;
    t.protocol = j.at("protocol").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) {
      if (v.is_number_unsigned()) {
        t.set_param(k, v.get<std::uint64_t>());
      } else if (v.is_string()) {
        t.set_param(k, v.get<std::string>());
      } else {
        throw FormatError(FormatErrc::kBadJson, "parameter '" + k + "' is neither an unsigned integer nor a string");
      }
    }
    t.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& m : j.at("rounds")) {
      const std::string s = m.at("sender").get<std::string>();
      const std::string k = m.at("kind").get<std::string>();
      Message msg;
      if (s == "prover") {
        msg.sender = Sender::kProver;
      } else if (s == "verifier") {
        msg.sender = Sender::kVerifier;
      } else {
        throw FormatError(FormatErrc::kBadJson, "unknown sender '" + s + "'");
      }
      if (k == "poly") {
        msg.kind = MessageKind::kPoly;
      } else if (k == "prime") {
        msg.kind = MessageKind::kPrime;
      } else if (k == "coin") {
        msg.kind = MessageKind::kCoin;
      } else if (k == "decision") {
        msg.kind = MessageKind::kDecision;
      } else {
        throw FormatError(FormatErrc::kBadJson, "unknown message kind '" + k + "'");
      }
      msg.payload = from_hex(m.at("payload").get<std::string>());
      t.rounds.push_back(std::move(msg));
    }
    t.decision = j.at("decision").get<bool>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(FormatErrc::kBadJson, e.what());
  }
}

std::string transcript_text(const Transcript& t) { return transcript_to_json(t).dump(2) + "\n"; }

Transcript parse_transcript(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(FormatErrc::kBadJson, e.what());
  }
  return transcript_from_json(j);
}

PointSet parse_points_csv(const std::string& text) { return parse_csv<u64>(text); }

IntMatrix parse_matrix_csv(const std::string& text) {
  IntMatrix m = parse_csv<std::int64_t>(text);
  if (m.size() != m[0].size()) {
    throw ParseError("matrix is " + std::to_string(m.size()) + "x" + std::to_string(m[0].size()) + ", not square", 1, 1);
  }
  return m;
}

BitVectors parse_bitvectors_csv(const std::string& text) {
  BitVectors out;
  for (const auto& [no, line] : content_lines(text)) {
    std::vector<std::uint8_t> row;
    for (const Token& f : split(line, ',')) {
      const auto v = parse_number<unsigned>(f, no);
      if (v > 1) throw ParseError("entries must be 0 or 1", no, f.column);
      row.push_back(static_cast<std::uint8_t>(v));
    }
    if (!out.empty() && row.size() != out[0].size()) {
      throw ParseError("vector has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(out[0].size()),
                       no, 1);
    }
    out.push_back(std::move(row));
  }
  if (out.empty()) throw ParseError("no vectors", 1, 1);
  return out;
}

Graph parse_edge_list(const std::string& text, bool undirected) {
  std::size_t declared = 0, largest = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [no, line] : content_lines(text)) {
    const auto toks = split(line, ' ');
    if (toks.size() == 1) {
      if (declared) throw ParseError("vertex count given twice", no, toks[0].column);
      declared = parse_number<std::size_t>(toks[0], no);
      if (declared == 0) throw ParseError("vertex count must be positive", no, toks[0].column);
      continue;
    }
    if (toks.size() != 2) throw ParseError("expected 'u v'", no, 1);
    const auto u = parse_number<std::size_t>(toks[0], no);
    const auto v = parse_number<std::size_t>(toks[1], no);
    if (u == 0) throw ParseError("vertices are numbered from 1", no, toks[0].column);
    if (v == 0) throw ParseError("vertices are numbered from 1", no, toks[1].column);
    if (u == v) throw ParseError("self-loops are not allowed", no, toks[1].column);
    if (declared && std::max(u, v) > declared) {
      throw ParseError("vertex exceeds the declared count", no, (u > declared ? toks[0] : toks[1]).column);
    }
    largest = std::max({largest, u, v});
    edges.emplace_back(u - 1, v - 1);
  }
  if (declared && largest > declared) throw ParseError("vertex exceeds the declared count", 1, 1);
  Graph g(declared ? declared : largest);
  for (auto [u, v] : edges) {
    if (undirected) {
      g.add_edge(u, v);
    } else {
      g.add_arc(u, v);
    }
  }
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::string tmpl = path + ".tmp.XXXXXX";
  const int fd = mkstemp(tmpl.data());
  if (fd < 0) throw UsageError("cannot create a temporary file next to " + path + ": " + std::strerror(errno));
  std::size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t w = ::write(fd, bytes.data() + done, bytes.size() - done);
    if (w < 0) {
      if (errno == EINTR) continue;
      const std::string err = std::strerror(errno);
      ::close(fd);
      ::unlink(tmpl.c_str());
      throw UsageError("write to " + tmpl + " failed: " + err);
    }
    done += static_cast<std::size_t>(w);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    ::unlink(tmpl.c_str());
    throw UsageError("cannot flush " + tmpl);
  }
  if (std::rename(tmpl.c_str(), path.c_str()) != 0) {
    const std::string err = std::strerror(errno);
    ::unlink(tmpl.c_str());
    throw UsageError("cannot rename " + tmpl + " to " + path + ": " + err);
  }
}

void write_file_atomic(const std::string& path, const std::string& text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace maproof
