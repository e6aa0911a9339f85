#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qproc/processor.hpp"

namespace qproc::dsl {

/// Stable diagnostic codes; negative corpus files assert these by name.
enum class DiagCode {
  lex,                // E_LEX
  syntax,             // E_SYNTAX
  undefined_name,     // E_UNDEFINED_NAME
  redefinition,       // E_REDEFINITION
  matrix_shape,       // E_MATRIX_SHAPE
  not_unitary,        // E_NOT_UNITARY
  data_dim_required,  // E_DATA_DIM_REQUIRED
  dim_mismatch,       // E_DIM_MISMATCH
  wire,               // E_WIRE
  arity,              // E_ARITY
  arg_range,          // E_ARG_RANGE
  no_processor,       // E_NO_PROCESSOR
};

std::string_view diag_code_name(DiagCode code);

struct Diagnostic {
  DiagCode code = DiagCode::syntax;
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(Diagnostic d);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

/// Unitary-valued expression: a row-major matrix literal, a builtin call
/// (id, px, py, pz, hadamard, phase, rz, weyl), or a reference to a
/// previously declared unitary.
struct UnitaryExpr {
  enum class Kind { matrix, builtin, name };
  Kind kind = Kind::name;
  Index rows = 0, cols = 0;
  std::vector<cplx> entries;
  std::string callee;  // builtin name, or referenced name for Kind::name
  std::vector<double> args;
  bool operator==(const UnitaryExpr&) const = default;
};

struct GateApp {
  UnitaryExpr gate;
  std::vector<int> wires;  // 1-based, wire 1 is the data register
  bool operator==(const GateApp&) const = default;
};

struct ProcessorExpr {
  enum class Kind { cnot, swap_gate, qid, vmc, uproc, network };
  Kind kind = Kind::cnot;
  long arg = 0;                       // swap/qid dimension or vmc qubit count
  std::vector<UnitaryExpr> programs;  // uproc
  std::vector<GateApp> gates;         // network
  bool operator==(const ProcessorExpr&) const = default;
};

struct Ast {
  std::optional<long> data_dim;
  std::vector<std::pair<std::string, UnitaryExpr>> unitaries;
  std::vector<std::pair<std::string, ProcessorExpr>> processors;
  bool operator==(const Ast&) const = default;
};

/// Parses and validates a processor description. All names must be defined
/// before use, matrix literals must be unitary within 1e-8, dimensions must
/// agree with the declared data_dim, and wires must be positive and distinct
/// per gate. Throws ParseError with a line/column diagnostic.
Ast parse(std::string_view text);

/// Canonical text form; parse(serialize(parse(t))) == parse(t).
std::string serialize(const Ast& ast);

/// Resolves an expression to its matrix. Matrix literals are re-projected
/// to the nearest unitary (polar decomposition) to absorb decimal rounding.
Matrix eval_unitary(const Ast& ast, const UnitaryExpr& expr);

/// Builds the named processor (default: the first one declared).
Processor elaborate(const Ast& ast, std::string_view processor_name = {});

struct CompatEntry {
  std::string left, right;
  /// Overlap constant when the pair can share a processor with
  /// non-orthogonal programs; nullopt means the programs must be orthogonal.
  std::optional<cplx> c;
};

struct CompatReport {
  std::vector<CompatEntry> table;
  Index minimal_program_dimension = 0;
};

/// Pairwise compatibility of declared unitaries plus the minimal program
/// dimension needed to host them all exactly.
CompatReport static_compat(const Ast& ast, const std::vector<std::string>& names);

}  // namespace qproc::dsl
