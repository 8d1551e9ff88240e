#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "maproof/field.hpp"

namespace maproof {

enum class GateKind : std::uint8_t { kInput, kConst, kAdd, kMul };

struct Gate {
  GateKind kind = GateKind::kConst;
  std::uint32_t a = 0;  // input index for kInput, first operand otherwise
  std::uint32_t b = 0;
  std::int64_t value = 0;  // kConst only
};

inline constexpr std::uint64_t kDegreeInfinite = std::numeric_limits<std::uint64_t>::max();

// Arithmetic circuit with fan-in two. Gates only reference earlier gates, so
// the gate order is a topological order.
class Circuit {
 public:
  explicit Circuit(std::size_t n_inputs = 0) : n_inputs_(n_inputs) {}

  std::uint32_t input(std::size_t j);
  std::uint32_t constant(std::int64_t c);
  std::uint32_t add(std::uint32_t a, std::uint32_t b);
  std::uint32_t mul(std::uint32_t a, std::uint32_t b);
  void set_output(std::uint32_t g);

  // Copies `sub` into this circuit with its input j wired to gate
  // input_map[j]; returns the id of the copied output gate.
  std::uint32_t append(const Circuit& sub, std::span<const std::uint32_t> input_map);

  std::size_t n_inputs() const { return n_inputs_; }
  std::size_t size() const { return gates_.size(); }
  const std::vector<Gate>& gates() const { return gates_; }
  std::uint32_t output() const;
  bool has_output() const { return has_output_; }

 private:
  std::uint32_t push(Gate g);
  void check_ref(std::uint32_t g) const;

  std::size_t n_inputs_;
  std::vector<Gate> gates_;
  std::uint32_t output_ = 0;
  bool has_output_ = false;
};

// Degree bound: inputs 1, constants 0, add max, mul sum; saturates at
// kDegreeInfinite.
std::uint64_t syntactic_degree(const Circuit& c);

// Reusable evaluator for one circuit over one field. Constants are embedded
// once; each evaluation performs one field operation per add/mul gate.
class CircuitEvaluator {
 public:
  CircuitEvaluator(const Circuit& c, const Field& f);

  FieldElement operator()(std::span<const FieldElement> point);
  // point: n_inputs * degree() words. Returns the output gate's words, valid
  // until the next call.
  const u64* evaluate_words(const u64* point);

 private:
  const Circuit& c_;
  Field f_;
  unsigned ell_;
  std::vector<u64> scratch_;
};

FieldElement evaluate(const Circuit& c, const Field& f, std::span<const FieldElement> point);
// Field taken from the point; the point must be nonempty.
FieldElement evaluate(const Circuit& c, std::span<const FieldElement> point);

// ---------------------------------------------------------------------------
// Boolean formulas

enum class FormulaKind : std::uint8_t { kVar, kConst, kNot, kAnd, kOr };

struct FormulaNode {
  FormulaKind kind = FormulaKind::kConst;
  std::uint32_t a = 0;  // variable index for kVar, child otherwise
  std::uint32_t b = 0;
  bool value = false;  // kConst
};

class BoolFormula {
 public:
  BoolFormula() = default;
  explicit BoolFormula(std::size_t n_vars) : n_vars_(n_vars) {}

  std::uint32_t var(std::size_t j);
  std::uint32_t constant(bool v);
  std::uint32_t negate(std::uint32_t x);
  std::uint32_t conj(std::uint32_t x, std::uint32_t y);
  std::uint32_t disj(std::uint32_t x, std::uint32_t y);
  void set_root(std::uint32_t r);

  std::size_t n_vars() const { return n_vars_; }
  void set_n_vars(std::size_t n);
  const std::vector<FormulaNode>& nodes() const { return nodes_; }
  std::uint32_t root() const { return root_; }
  // Number of AND/OR/NOT nodes reachable from the root.
  std::size_t connectives() const;

  // Value under an assignment; bit j of `assignment` is variable j.
  bool evaluate(std::uint64_t assignment) const;
  bool evaluate(std::span<const bool> assignment) const;

  // Fully parenthesised text in the parse_formula grammar.
  std::string to_string() const;

 private:
  std::uint32_t push(FormulaNode n);

  std::size_t n_vars_ = 0;
  std::vector<FormulaNode> nodes_;
  std::uint32_t root_ = 0;
};

enum class Quantifier : std::uint8_t { kExists, kForall };

struct QuantifiedFormula {
  std::vector<Quantifier> prefix;  // prefix[i] binds variable i
  BoolFormula matrix;

  std::string to_string() const;
};

// OR -> x + y - xy, AND -> xy, NOT -> 1 - x. Subtraction uses a shared
// constant -1 gate.
Circuit arithmetize(const BoolFormula& f);

// Grammar: variables x1..xn, constants 0/1, operators ! & | (in decreasing
// precedence), parentheses. Variable xk becomes index k-1. n_vars is the
// largest index seen unless min_vars is larger.
BoolFormula parse_formula(const std::string& text, std::size_t min_vars = 0);
// "<E|A string> x1 x2 ... xn : <formula>"
QuantifiedFormula parse_qbf(const std::string& text);
// Line-oriented circuit text; see README for the format.
Circuit parse_circuit(const std::string& text);
std::string circuit_to_text(const Circuit& c);

}  // namespace maproof
