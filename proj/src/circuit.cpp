#include "maproof/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <unordered_map>

#include "maproof/errors.hpp"
#include "maproof/op_counter.hpp"

namespace maproof {

// ---------------------------------------------------------------------------
// Circuit

std::uint32_t Circuit::push(Gate g) {
  if (gates_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("circuit exceeds 2^32 gates");
  }
  gates_.push_back(g);
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

void Circuit::check_ref(std::uint32_t g) const {
  if (g >= gates_.size()) throw UsageError("gate reference " + std::to_string(g) + " is not an earlier gate");
}

std::uint32_t Circuit::input(std::size_t j) {
  if (j >= n_inputs_) {
    throw UsageError("input index " + std::to_string(j) + " out of range for " +
                     std::to_string(n_inputs_) + " inputs");
  }
  return push({GateKind::kInput, static_cast<std::uint32_t>(j), 0, 0});
}

std::uint32_t Circuit::constant(std::int64_t c) { return push({GateKind::kConst, 0, 0, c}); }

std::uint32_t Circuit::add(std::uint32_t a, std::uint32_t b) {
  check_ref(a);
  check_ref(b);
  return push({GateKind::kAdd, a, b, 0});
}

std::uint32_t Circuit::mul(std::uint32_t a, std::uint32_t b) {
  check_ref(a);
  check_ref(b);
  return push({GateKind::kMul, a, b, 0});
}

void Circuit::set_output(std::uint32_t g) {
  check_ref(g);
  output_ = g;
  has_output_ = true;
}

std::uint32_t Circuit::output() const {
  if (!has_output_) throw UsageError("circuit has no output gate");
  return output_;
}

std::uint32_t Circuit::append(const Circuit& sub, std::span<const std::uint32_t> input_map) {
  if (input_map.size() != sub.n_inputs()) throw UsageError("append: input map has the wrong arity");
  for (std::uint32_t g : input_map) check_ref(g);
  std::vector<std::uint32_t> ids(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    const Gate& g = sub.gates_[i];
    switch (g.kind) {
      case GateKind::kInput:
        ids[i] = input_map[g.a];
        break;
      case GateKind::kConst:
        ids[i] = constant(g.value);
        break;
      case GateKind::kAdd:
        ids[i] = add(ids[g.a], ids[g.b]);
        break;
      case GateKind::kMul:
        ids[i] = mul(ids[g.a], ids[g.b]);
        break;
    }
  }
  return ids[sub.output()];
}

std::uint64_t syntactic_degree(const Circuit& c) {
  const auto& gates = c.gates();
  std::vector<std::uint64_t> deg(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.kind) {
      case GateKind::kInput:
        deg[i] = 1;
        break;
      case GateKind::kConst:
        deg[i] = 0;
        break;
      case GateKind::kAdd:
        deg[i] = std::max(deg[g.a], deg[g.b]);
        break;
      case GateKind::kMul: {
        const std::uint64_t x = deg[g.a], y = deg[g.b];
        deg[i] = x > kDegreeInfinite - y ? kDegreeInfinite : x + y;
        break;
      }
    }
  }
  return deg[c.output()];
}

// ---------------------------------------------------------------------------
// Evaluation

CircuitEvaluator::CircuitEvaluator(const Circuit& c, const Field& f)
    : c_(c), f_(f), ell_(f.degree()), scratch_(c.size() * f.degree(), 0) {
  c.output();  // throws without an output gate
  const auto& gates = c.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].kind != GateKind::kConst) continue;
    const FieldElement e = f.from_int(gates[i].value);
    std::copy(e.coeffs().begin(), e.coeffs().end(), scratch_.begin() + i * ell_);
  }
}

const u64* CircuitEvaluator::evaluate_words(const u64* point) {
  const auto& gates = c_.gates();
  const detail::FieldData& fd = *f_.data();
  u64* s = scratch_.data();
  if (ell_ == 1) {
    const Modulus& q = fd.mod;
    std::uint64_t adds = 0, muls = 0;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const Gate& g = gates[i];
      switch (g.kind) {
        case GateKind::kInput:
          s[i] = point[g.a];
          break;
        case GateKind::kConst:
          break;
        case GateKind::kAdd:
          s[i] = q.add(s[g.a], s[g.b]);
          ++adds;
          break;
        case GateKind::kMul:
          s[i] = q.mul(s[g.a], s[g.b]);
          ++muls;
          break;
      }
    }
    OpCounter::instance().add(adds);
    OpCounter::instance().mul(muls);
    return s + c_.output();
  }
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    u64* dst = s + i * ell_;
    switch (g.kind) {
      case GateKind::kInput:
        std::copy_n(point + g.a * ell_, ell_, dst);
        break;
      case GateKind::kConst:
        break;
      case GateKind::kAdd:
        fd.add(dst, s + g.a * ell_, s + g.b * ell_);
        break;
      case GateKind::kMul:
        fd.mul(dst, s + g.a * ell_, s + g.b * ell_);
        break;
    }
  }
  return s + c_.output() * ell_;
}

FieldElement CircuitEvaluator::operator()(std::span<const FieldElement> point) {
  if (point.size() != c_.n_inputs()) {
    throw UsageError("circuit expects " + std::to_string(c_.n_inputs()) + " inputs, got " +
                     std::to_string(point.size()));
  }
  std::vector<u64> words;
  words.reserve(point.size() * ell_);
  for (const auto& x : point) {
    if (x.field_data() != f_.data()) throw UsageError("input from a different field");
    words.insert(words.end(), x.coeffs().begin(), x.coeffs().end());
  }
  return f_.from_raw(evaluate_words(words.data()));
}

FieldElement evaluate(const Circuit& c, const Field& f, std::span<const FieldElement> point) {
  CircuitEvaluator ev(c, f);
  return ev(point);
}

FieldElement evaluate(const Circuit& c, std::span<const FieldElement> point) {
  if (point.empty()) throw UsageError("evaluate: empty point; pass the field explicitly");
  const detail::FieldData* fd = point[0].field_data();
  if (fd == nullptr) throw UsageError("evaluate: unbound field element");
  return evaluate(c, Field::from_data(fd), point);
}

// ---------------------------------------------------------------------------
// BoolFormula

std::uint32_t BoolFormula::push(FormulaNode n) {
  nodes_.push_back(n);
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::uint32_t BoolFormula::var(std::size_t j) {
  if (j >= n_vars_) n_vars_ = j + 1;
  return push({FormulaKind::kVar, static_cast<std::uint32_t>(j), 0, false});
}

std::uint32_t BoolFormula::constant(bool v) { return push({FormulaKind::kConst, 0, 0, v}); }

std::uint32_t BoolFormula::negate(std::uint32_t x) {
  if (x >= nodes_.size()) throw UsageError("formula child out of range");
  return push({FormulaKind::kNot, x, 0, false});
}

std::uint32_t BoolFormula::conj(std::uint32_t x, std::uint32_t y) {
  if (x >= nodes_.size() || y >= nodes_.size()) throw UsageError("formula child out of range");
  return push({FormulaKind::kAnd, x, y, false});
}

std::uint32_t BoolFormula::disj(std::uint32_t x, std::uint32_t y) {
  if (x >= nodes_.size() || y >= nodes_.size()) throw UsageError("formula child out of range");
  return push({FormulaKind::kOr, x, y, false});
}

void BoolFormula::set_root(std::uint32_t r) {
  if (r >= nodes_.size()) throw UsageError("formula root out of range");
  root_ = r;
}

void BoolFormula::set_n_vars(std::size_t n) {
  for (const auto& node : nodes_) {
    if (node.kind == FormulaKind::kVar && node.a >= n) {
      throw UsageError("variable x" + std::to_string(node.a + 1) + " exceeds n=" + std::to_string(n));
    }
  }
  n_vars_ = n;
}

namespace {

std::vector<bool> reachable(const std::vector<FormulaNode>& nodes, std::uint32_t root) {
  std::vector<bool> seen(nodes.size(), false);
  if (nodes.empty()) return seen;
  seen[root] = true;
  for (std::size_t i = nodes.size(); i-- > 0;) {
    if (!seen[i]) continue;
    const auto& n = nodes[i];
    if (n.kind == FormulaKind::kNot) seen[n.a] = true;
    if (n.kind == FormulaKind::kAnd || n.kind == FormulaKind::kOr) seen[n.a] = seen[n.b] = true;
  }
  return seen;
}

}  // namespace

std::size_t BoolFormula::connectives() const {
  const auto seen = reachable(nodes_, root_);
  std::size_t m = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto k = nodes_[i].kind;
    if (seen[i] && (k == FormulaKind::kNot || k == FormulaKind::kAnd || k == FormulaKind::kOr)) ++m;
  }
  return m;
}

bool BoolFormula::evaluate(std::uint64_t assignment) const {
  if (nodes_.empty()) throw UsageError("empty formula");
  std::vector<char> v(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    switch (n.kind) {
      case FormulaKind::kVar:
        v[i] = n.a < 64 && ((assignment >> n.a) & 1);
        break;
      case FormulaKind::kConst:
        v[i] = n.value;
        break;
      case FormulaKind::kNot:
        v[i] = !v[n.a];
        break;
      case FormulaKind::kAnd:
        v[i] = v[n.a] && v[n.b];
        break;
      case FormulaKind::kOr:
        v[i] = v[n.a] || v[n.b];
        break;
    }
  }
  return v[root_];
}

bool BoolFormula::evaluate(std::span<const bool> assignment) const {
  if (assignment.size() < n_vars_) throw UsageError("assignment shorter than the variable count");
  if (nodes_.empty()) throw UsageError("empty formula");
  std::vector<char> v(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    switch (n.kind) {
      case FormulaKind::kVar:
        v[i] = assignment[n.a];
        break;
      case FormulaKind::kConst:
        v[i] = n.value;
        break;
      case FormulaKind::kNot:
        v[i] = !v[n.a];
        break;
      case FormulaKind::kAnd:
        v[i] = v[n.a] && v[n.b];
        break;
      case FormulaKind::kOr:
        v[i] = v[n.a] || v[n.b];
        break;
    }
  }
  return v[root_];
}

std::string BoolFormula::to_string() const {
  if (nodes_.empty()) throw UsageError("empty formula");
  std::vector<std::string> s(nodes_.size());
  const auto seen = reachable(nodes_, root_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!seen[i]) continue;
    const auto& n = nodes_[i];
    switch (n.kind) {
      case FormulaKind::kVar:
        s[i] = "x" + std::to_string(n.a + 1);
        break;
      case FormulaKind::kConst:
        s[i] = n.value ? "1" : "0";
        break;
      case FormulaKind::kNot:
        s[i] = "!" + s[n.a];
        break;
      case FormulaKind::kAnd:
        s[i] = "(" + s[n.a] + " & " + s[n.b] + ")";
        break;
      case FormulaKind::kOr:
        s[i] = "(" + s[n.a] + " | " + s[n.b] + ")";
        break;
    }
  }
  return s[root_];
}

std::string QuantifiedFormula::to_string() const {
  std::string out;
  for (Quantifier q : prefix) out += q == Quantifier::kExists ? 'E' : 'A';
  for (std::size_t i = 0; i < prefix.size(); ++i) out += " x" + std::to_string(i + 1);
  out += " : " + matrix.to_string();
  return out;
}

Circuit arithmetize(const BoolFormula& f) {
  const auto& nodes = f.nodes();
  if (nodes.empty()) throw UsageError("empty formula");
  const auto seen = reachable(nodes, f.root());
  Circuit c(f.n_vars());
  std::vector<std::uint32_t> gate(nodes.size());
  std::vector<std::int64_t> var_gate(f.n_vars(), -1);
  std::int64_t one = -1, minus_one = -1, zero = -1;
  auto get_one = [&] { return static_cast<std::uint32_t>(one >= 0 ? one : (one = c.constant(1))); };
  auto get_minus_one = [&] {
    return static_cast<std::uint32_t>(minus_one >= 0 ? minus_one : (minus_one = c.constant(-1)));
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!seen[i]) continue;
    const auto& n = nodes[i];
    switch (n.kind) {
      case FormulaKind::kVar:
        if (var_gate[n.a] < 0) var_gate[n.a] = c.input(n.a);
        gate[i] = static_cast<std::uint32_t>(var_gate[n.a]);
        break;
      case FormulaKind::kConst:
        if (n.value) {
          gate[i] = get_one();
        } else {
          if (zero < 0) zero = c.constant(0);
          gate[i] = static_cast<std::uint32_t>(zero);
        }
        break;
      case FormulaKind::kNot:
        gate[i] = c.add(get_one(), c.mul(get_minus_one(), gate[n.a]));
        break;
      case FormulaKind::kAnd:
        gate[i] = c.mul(gate[n.a], gate[n.b]);
        break;
      case FormulaKind::kOr: {
        const std::uint32_t sum = c.add(gate[n.a], gate[n.b]);
        const std::uint32_t prod = c.mul(gate[n.a], gate[n.b]);
        gate[i] = c.add(sum, c.mul(get_minus_one(), prod));
        break;
      }
    }
  }
  c.set_output(gate[f.root()]);
  return c;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class TextCursor {
 public:
  explicit TextCursor(const std::string& s, std::size_t pos = 0) : s_(s) { advance_to(pos); }

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  char get() {
    const char c = s_[pos_];
    advance_to(pos_ + 1);
    return c;
  }
  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) get();
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col_); }
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  void advance_to(std::size_t p) {
    while (pos_ < p && pos_ < s_.size()) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class FormulaParser {
 public:
  FormulaParser(TextCursor& cur, BoolFormula& out, std::size_t max_vars)
      : cur_(cur), out_(out), max_vars_(max_vars) {}

  std::uint32_t parse_or() {
    std::uint32_t left = parse_and();
    for (;;) {
      cur_.skip_space();
      if (cur_.peek() != '|') return left;
      cur_.get();
      left = out_.disj(left, parse_and());
    }
  }

 private:
  std::uint32_t parse_and() {
    std::uint32_t left = parse_unary();
    for (;;) {
      cur_.skip_space();
      if (cur_.peek() != '&') return left;
      cur_.get();
      left = out_.conj(left, parse_unary());
    }
  }

  std::uint32_t parse_unary() {
    cur_.skip_space();
    if (cur_.peek() == '!') {
      cur_.get();
      return out_.negate(parse_unary());
    }
    return parse_atom();
  }

  std::uint32_t parse_atom() {
    cur_.skip_space();
    const char c = cur_.peek();
    if (c == '(') {
      cur_.get();
      const std::uint32_t inner = parse_or();
      cur_.skip_space();
      if (cur_.peek() != ')') cur_.fail("expected ')'");
      cur_.get();
      return inner;
    }
    if (c == '0' || c == '1') {
      cur_.get();
      return out_.constant(c == '1');
    }
    if (c == 'x') {
      const std::size_t line = cur_.line(), col = cur_.column();
      cur_.get();
      std::size_t idx = 0, digits = 0;
      while (std::isdigit(static_cast<unsigned char>(cur_.peek()))) {
        idx = idx * 10 + static_cast<std::size_t>(cur_.get() - '0');
        if (++digits > 9) throw ParseError("variable index too large", line, col);
      }
      if (digits == 0) throw ParseError("expected a variable index after 'x'", line, col);
      if (idx == 0) throw ParseError("variables are numbered from x1", line, col);
      if (max_vars_ != 0 && idx > max_vars_) {
        throw ParseError("variable x" + std::to_string(idx) + " out of range (n=" +
                             std::to_string(max_vars_) + ")",
                         line, col);
      }
      return out_.var(idx - 1);
    }
    if (cur_.done()) cur_.fail("unexpected end of formula");
    cur_.fail(std::string("unexpected character '") + c + "'");
  }

  TextCursor& cur_;
  BoolFormula& out_;
  std::size_t max_vars_;
};

BoolFormula parse_formula_at(TextCursor& cur, std::size_t min_vars, std::size_t max_vars) {
  BoolFormula f(min_vars);
  FormulaParser p(cur, f, max_vars);
  f.set_root(p.parse_or());
  cur.skip_space();
  if (!cur.done()) cur.fail(std::string("unexpected character '") + cur.peek() + "'");
  return f;
}

}  // namespace

BoolFormula parse_formula(const std::string& text, std::size_t min_vars) {
  TextCursor cur(text);
  return parse_formula_at(cur, min_vars, 0);
}

QuantifiedFormula parse_qbf(const std::string& text) {
  TextCursor cur(text);
  QuantifiedFormula q;
  cur.skip_space();
  while (cur.peek() == 'E' || cur.peek() == 'A') {
    q.prefix.push_back(cur.get() == 'E' ? Quantifier::kExists : Quantifier::kForall);
  }
  if (q.prefix.empty()) cur.fail("expected a quantifier string of E/A characters");
  if (!cur.done() && !std::isspace(static_cast<unsigned char>(cur.peek()))) {
    cur.fail("quantifier string may only contain E and A");
  }
  std::size_t expected = 1;
  for (;;) {
    cur.skip_space();
    if (cur.peek() == ':') {
      cur.get();
      break;
    }
    if (cur.peek() != 'x') cur.fail("expected variable x" + std::to_string(expected) + " or ':'");
    const std::size_t line = cur.line(), col = cur.column();
    cur.get();
    std::size_t idx = 0, digits = 0;
    while (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      idx = idx * 10 + static_cast<std::size_t>(cur.get() - '0');
      if (++digits > 9) throw ParseError("variable index too large", line, col);
    }
    if (idx != expected) {
      throw ParseError("expected variable x" + std::to_string(expected), line, col);
    }
    ++expected;
  }
  const std::size_t n = expected - 1;
  if (n != q.prefix.size()) {
    cur.fail("quantifier string has " + std::to_string(q.prefix.size()) + " entries but " +
             std::to_string(n) + " variables are listed");
  }
  q.matrix = parse_formula_at(cur, n, n);
  return q;
}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize_line(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

template <typename T>
bool parse_int(const std::string& s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// Numeric suffix of an id like "g12", or -1.
long long id_number(const std::string& id) {
  std::size_t k = id.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(id[k - 1]))) --k;
  if (k == id.size() || id.size() - k > 18) return -1;
  return std::stoll(id.substr(k));
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false, have_output = false;
  std::size_t declared_n = 0;
  struct Pending {
    GateKind kind;
    std::uint32_t a, b;
    std::int64_t value;
  };
  std::vector<Pending> gates;
  std::unordered_map<std::string, std::uint32_t> ids;
  long long last_number = -1;
  std::uint32_t output = 0;
  std::size_t max_input = 0;
  bool any_input = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tok = tokenize_line(line);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& what, std::size_t col) -> void {
      throw ParseError(what, line_no, col);
    };
    if (have_output) fail("content after the output line", tok[0].column);
    if (tok[0].text == "circuit") {
      if (have_header || !gates.empty()) fail("header must be the first line", tok[0].column);
      if (tok.size() != 2 || tok[1].text.rfind("n=", 0) != 0 ||
          !parse_int(tok[1].text.substr(2), declared_n)) {
        fail("expected 'circuit n=<int>'", tok.size() > 1 ? tok[1].column : tok[0].column);
      }
      have_header = true;
      continue;
    }
    if (tok[0].text == "output") {
      if (tok.size() != 2) fail("expected 'output <id>'", tok[0].column);
      auto it = ids.find(tok[1].text);
      if (it == ids.end()) fail("unknown gate id '" + tok[1].text + "'", tok[1].column);
      output = it->second;
      have_output = true;
      continue;
    }
    if (tok.size() < 3) fail("expected '<id> <op> <args>'", tok[0].column);
    const std::string& id = tok[0].text;
    if (ids.count(id)) fail("gate id '" + id + "' defined twice", tok[0].column);
    const long long num = id_number(id);
    if (num >= 0) {
      if (num <= last_number) fail("gate ids must increase", tok[0].column);
      last_number = num;
    }
    const std::string& op = tok[1].text;
    Pending g{GateKind::kConst, 0, 0, 0};
    auto ref = [&](const Token& t) -> std::uint32_t {
      auto it = ids.find(t.text);
      if (it == ids.end()) throw ParseError("unknown or forward gate id '" + t.text + "'", line_no, t.column);
      return it->second;
    };
    if (op == "input") {
      if (tok.size() != 3) fail("expected '<id> input <j>'", tok[1].column);
      std::uint32_t j = 0;
      if (!parse_int(tok[2].text, j)) fail("bad input index '" + tok[2].text + "'", tok[2].column);
      if (have_header && j >= declared_n) {
        fail("input index " + std::to_string(j) + " out of range (n=" + std::to_string(declared_n) + ")",
             tok[2].column);
      }
      g = {GateKind::kInput, j, 0, 0};
      max_input = std::max<std::size_t>(max_input, j);
      any_input = true;
    } else if (op == "const") {
      if (tok.size() != 3) fail("expected '<id> const <int>'", tok[1].column);
      std::int64_t c = 0;
      if (!parse_int(tok[2].text, c)) fail("bad constant '" + tok[2].text + "'", tok[2].column);
      g = {GateKind::kConst, 0, 0, c};
    } else if (op == "add" || op == "mul") {
      if (tok.size() != 4) fail("expected '<id> " + op + " <id> <id>'", tok[1].column);
      g = {op == "add" ? GateKind::kAdd : GateKind::kMul, ref(tok[2]), ref(tok[3]), 0};
    } else {
      fail("unknown gate type '" + op + "'", tok[1].column);
    }
    ids.emplace(id, static_cast<std::uint32_t>(gates.size()));
    gates.push_back(g);
  }
  if (!have_output) throw ParseError("missing output line", line_no + 1, 1);

  Circuit c(have_header ? declared_n : (any_input ? max_input + 1 : 0));
  for (const auto& g : gates) {
    switch (g.kind) {
      case GateKind::kInput:
        c.input(g.a);
        break;
      case GateKind::kConst:
        c.constant(g.value);
        break;
      case GateKind::kAdd:
        c.add(g.a, g.b);
        break;
      case GateKind::kMul:
        c.mul(g.a, g.b);
        break;
    }
  }
  c.set_output(output);
  return c;
}

std::string circuit_to_text(const Circuit& c) {
  std::ostringstream os;
  os << "circuit n=" << c.n_inputs() << '\n';
  const auto& gates = c.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    os << 'g' << i + 1 << ' ';
    switch (g.kind) {
      case GateKind::kInput:
        os << "input " << g.a;
        break;
      case GateKind::kConst:
        os << "const " << g.value;
        break;
      case GateKind::kAdd:
        os << "add g" << g.a + 1 << " g" << g.b + 1;
        break;
      case GateKind::kMul:
        os << "mul g" << g.a + 1 << " g" << g.b + 1;
        break;
    }
    os << '\n';
  }
  os << "output g" << c.output() + 1 << '\n';
  return os.str();
}

}  // namespace maproof
