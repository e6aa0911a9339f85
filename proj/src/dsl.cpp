#include "qproc/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "qproc/zoo.hpp"

namespace qproc::dsl {

namespace {

constexpr double kLiteralUnitaryTol = 1e-8;
constexpr Index kMaxDim = 16;
constexpr Index kMaxJointDim = 16384;

const std::set<std::string> kReserved = {
    "data_dim", "unitary", "processor", "cnot",     "swap", "qid",
    "vmc",      "uproc",   "network",   "id",       "px",   "py",
    "pz",       "hadamard", "phase",    "rz",       "weyl"};

const std::set<std::string> kBuiltinUnitaries = {
    "id", "px", "py", "pz", "hadamard", "phase", "rz", "weyl"};

struct Token {
  enum class Kind { ident, number, imaginary, symbol, end };
  Kind kind = Kind::end;
  std::string text;   // ident/symbol text
  double value = 0.0; // real part for number, imaginary part for imaginary
  int column = 0;     // 1-based
};

[[noreturn]] void fail(DiagCode code, int line, int column, std::string message) {
  throw ParseError(Diagnostic{code, line, column, std::move(message)});
}

class LineLexer {
 public:
  LineLexer(std::string_view text, int line) : text_(text), line_(line) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    current_ = Token{};
    current_.column = static_cast<int>(pos_) + 1;
    if (pos_ >= text_.size() || text_[pos_] == '#') {
      current_.kind = Token::Kind::end;
      return;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      current_.kind = Token::Kind::ident;
      current_.text = std::string(text_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+') {
      lex_number();
      return;
    }
    if (std::string("=()[],@").find(c) != std::string::npos) {
      current_.kind = Token::Kind::symbol;
      current_.text = std::string(1, c);
      ++pos_;
      return;
    }
    fail(DiagCode::lex, line_, current_.column,
         std::string("unexpected character '") + c + "'");
  }

  // number := float ['i'] ; the parser recombines a+bi at a higher level.
  void lex_number() {
    const size_t start = pos_;
    if (text_[pos_] == '+' || text_[pos_] == '-') ++pos_;
    size_t digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_, ++digits;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_, ++digits;
    }
    if (digits == 0)
      fail(DiagCode::lex, line_, static_cast<int>(start) + 1, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t exp = pos_ + 1;
      if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
      size_t exp_digits = 0;
      while (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp])))
        ++exp, ++exp_digits;
      if (exp_digits == 0)
        fail(DiagCode::lex, line_, static_cast<int>(pos_) + 1, "malformed exponent");
      pos_ = exp;
    }
    current_.value = std::strtod(std::string(text_.substr(start, pos_ - start)).c_str(), nullptr);
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      ++pos_;
      current_.kind = Token::Kind::imaginary;
    } else {
      current_.kind = Token::Kind::number;
    }
  }

  std::string_view text_;
  int line_;
  size_t pos_ = 0;
  Token current_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Ast run() {
    std::istringstream stream{std::string(text_)};
    std::string raw;
    line_ = 0;
    while (std::getline(stream, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      LineLexer lex(raw, line_);
      if (lex.peek().kind == Token::Kind::end) continue;
      statement(lex);
      const Token& rest = lex.peek();
      if (rest.kind != Token::Kind::end)
        fail(DiagCode::syntax, line_, rest.column, "trailing input after statement");
    }
    return std::move(ast_);
  }

 private:
  Token expect_symbol(LineLexer& lex, const std::string& sym) {
    Token t = lex.take();
    if (t.kind != Token::Kind::symbol || t.text != sym)
      fail(DiagCode::syntax, line_, t.column, "expected '" + sym + "'");
    return t;
  }

  long expect_int(LineLexer& lex, const char* what) {
    Token t = lex.take();
    if (t.kind != Token::Kind::number || t.value != std::floor(t.value))
      fail(DiagCode::syntax, line_, t.column, std::string("expected integer ") + what);
    return static_cast<long>(t.value);
  }

  void statement(LineLexer& lex) {
    Token head = lex.take();
    if (head.kind != Token::Kind::ident)
      fail(DiagCode::syntax, line_, head.column, "expected statement keyword");
    if (head.text == "data_dim") {
      if (ast_.data_dim)
        fail(DiagCode::redefinition, line_, head.column, "data_dim declared twice");
      const Token t = lex.peek();
      const long d = expect_int(lex, "dimension");
      if (d < 2 || d > kMaxDim)
        fail(DiagCode::arg_range, line_, t.column, "data_dim must be in 2..16");
      ast_.data_dim = d;
      return;
    }
    if (head.text == "unitary") {
      const std::string name = take_fresh_name(lex);
      expect_symbol(lex, "=");
      UnitaryExpr expr = unitary_expr(lex);
      unitary_dims_[name] = expr_dim(expr, lex.peek().column);
      ast_.unitaries.emplace_back(name, std::move(expr));
      return;
    }
    if (head.text == "processor") {
      const std::string name = take_fresh_name(lex);
      expect_symbol(lex, "=");
      ProcessorExpr expr = processor_expr(lex);
      ast_.processors.emplace_back(name, std::move(expr));
      return;
    }
    fail(DiagCode::syntax, line_, head.column, "unknown statement '" + head.text + "'");
  }

  // Unitaries and processors share one name scope.
  std::string take_fresh_name(LineLexer& lex) {
    Token t = lex.take();
    if (t.kind != Token::Kind::ident)
      fail(DiagCode::syntax, line_, t.column, "expected a name");
    if (kReserved.count(t.text))
      fail(DiagCode::syntax, line_, t.column, "'" + t.text + "' is a reserved word");
    if (unitary_dims_.count(t.text) || processor_names_.count(t.text))
      fail(DiagCode::redefinition, line_, t.column, "'" + t.text + "' is already defined");
    processor_names_.insert(t.text);
    return t.text;
  }

  cplx complex_literal(LineLexer& lex) {
    Token first = lex.take();
    if (first.kind == Token::Kind::imaginary) return cplx(0.0, first.value);
    if (first.kind != Token::Kind::number)
      fail(DiagCode::syntax, line_, first.column, "expected a complex number");
    // Optional imaginary continuation written without whitespace: a+bi / a-bi.
    if (lex.peek().kind == Token::Kind::imaginary) {
      Token im = lex.take();
      return cplx(first.value, im.value);
    }
    return cplx(first.value, 0.0);
  }

  UnitaryExpr matrix_literal(LineLexer& lex, int open_column) {
    UnitaryExpr expr;
    expr.kind = UnitaryExpr::Kind::matrix;
    std::vector<std::vector<cplx>> rows;
    while (true) {
      expect_symbol(lex, "[");
      std::vector<cplx> row;
      while (true) {
        row.push_back(complex_literal(lex));
        Token sep = lex.take();
        if (sep.kind == Token::Kind::symbol && sep.text == ",") continue;
        if (sep.kind == Token::Kind::symbol && sep.text == "]") break;
        fail(DiagCode::syntax, line_, sep.column, "expected ',' or ']' in matrix row");
      }
      rows.push_back(std::move(row));
      Token sep = lex.take();
      if (sep.kind == Token::Kind::symbol && sep.text == ",") continue;
      if (sep.kind == Token::Kind::symbol && sep.text == "]") break;
      fail(DiagCode::syntax, line_, sep.column, "expected ',' or ']' after matrix row");
    }
    const size_t ncols = rows.front().size();
    for (const auto& row : rows)
      if (row.size() != ncols)
        fail(DiagCode::matrix_shape, line_, open_column, "ragged matrix literal");
    if (rows.size() != ncols)
      fail(DiagCode::matrix_shape, line_, open_column, "matrix literal is not square");
    expr.rows = static_cast<Index>(rows.size());
    expr.cols = static_cast<Index>(ncols);
    for (const auto& row : rows)
      expr.entries.insert(expr.entries.end(), row.begin(), row.end());
    Matrix m(expr.rows, expr.cols);
    for (Index i = 0; i < expr.rows; ++i)
      for (Index j = 0; j < expr.cols; ++j) m(i, j) = expr.entries[i * expr.cols + j];
    if (!is_unitary(m, kLiteralUnitaryTol))
      fail(DiagCode::not_unitary, line_, open_column,
           "matrix literal is not unitary within 1e-8");
    return expr;
  }

  std::vector<double> call_args(LineLexer& lex) {
    expect_symbol(lex, "(");
    std::vector<double> args;
    if (lex.peek().kind == Token::Kind::symbol && lex.peek().text == ")") {
      lex.take();
      return args;
    }
    while (true) {
      Token t = lex.take();
      if (t.kind != Token::Kind::number)
        fail(DiagCode::syntax, line_, t.column, "expected a numeric argument");
      args.push_back(t.value);
      Token sep = lex.take();
      if (sep.kind == Token::Kind::symbol && sep.text == ")") break;
      if (sep.kind == Token::Kind::symbol && sep.text == ",") continue;
      fail(DiagCode::syntax, line_, sep.column, "expected ',' or ')' in argument list");
    }
    return args;
  }

  long int_arg(const UnitaryExpr& expr, size_t idx, int column) const {
    const double v = expr.args[idx];
    if (v != std::floor(v))
      fail(DiagCode::arity, line_, column, expr.callee + ": argument must be an integer");
    return static_cast<long>(v);
  }

  UnitaryExpr unitary_expr(LineLexer& lex) {
    const Token& head = lex.peek();
    if (head.kind == Token::Kind::symbol && head.text == "[") {
      const int col = head.column;
      lex.take();
      return matrix_literal(lex, col);
    }
    Token t = lex.take();
    if (t.kind != Token::Kind::ident)
      fail(DiagCode::syntax, line_, t.column, "expected a unitary expression");
    if (kBuiltinUnitaries.count(t.text)) {
      UnitaryExpr expr;
      expr.kind = UnitaryExpr::Kind::builtin;
      expr.callee = t.text;
      // Zero-argument builtins (px, hadamard, ...) may be written bare.
      if (lex.peek().kind == Token::Kind::symbol && lex.peek().text == "(")
        expr.args = call_args(lex);
      check_builtin(expr, t.column);
      return expr;
    }
    if (kReserved.count(t.text))
      fail(DiagCode::syntax, line_, t.column, "'" + t.text + "' cannot appear here");
    if (!unitary_dims_.count(t.text))
      fail(DiagCode::undefined_name, line_, t.column, "undefined unitary '" + t.text + "'");
    UnitaryExpr expr;
    expr.kind = UnitaryExpr::Kind::name;
    expr.callee = t.text;
    return expr;
  }

  void check_builtin(const UnitaryExpr& expr, int column) const {
    auto need = [&](size_t n) {
      if (expr.args.size() != n)
        fail(DiagCode::arity, line_, column,
             expr.callee + ": expected " + std::to_string(n) + " argument(s)");
    };
    if (expr.callee == "id") {
      need(1);
      const long d = int_arg(expr, 0, column);
      if (d < 1 || d > kMaxDim)
        fail(DiagCode::arg_range, line_, column, "id: dimension must be in 1..16");
    } else if (expr.callee == "weyl") {
      need(3);
      const long d = int_arg(expr, 0, column);
      if (d < 2 || d > kMaxDim)
        fail(DiagCode::arg_range, line_, column, "weyl: dimension must be in 2..16");
      const long a = int_arg(expr, 1, column), b = int_arg(expr, 2, column);
      if (a < 0 || a >= d || b < 0 || b >= d)
        fail(DiagCode::arg_range, line_, column, "weyl: indices must be in 0..d-1");
    } else if (expr.callee == "phase" || expr.callee == "rz") {
      need(1);
      if (!std::isfinite(expr.args[0]))
        fail(DiagCode::arg_range, line_, column, expr.callee + ": angle must be finite");
    } else {
      need(0);
    }
  }

  Index expr_dim(const UnitaryExpr& expr, int column) const {
    switch (expr.kind) {
      case UnitaryExpr::Kind::matrix:
        return expr.rows;
      case UnitaryExpr::Kind::builtin:
        if (expr.callee == "id" || expr.callee == "weyl")
          return static_cast<Index>(expr.args[0]);
        return 2;
      case UnitaryExpr::Kind::name: {
        auto it = unitary_dims_.find(expr.callee);
        if (it == unitary_dims_.end())
          fail(DiagCode::undefined_name, line_, column,
               "undefined unitary '" + expr.callee + "'");
        return it->second;
      }
    }
    fail(DiagCode::syntax, line_, column, "unreachable expression kind");
  }

  long require_data_dim(int column) const {
    if (!ast_.data_dim)
      fail(DiagCode::data_dim_required, line_, column,
           "data_dim required before declaring a processor");
    return *ast_.data_dim;
  }

  ProcessorExpr processor_expr(LineLexer& lex) {
    Token head = lex.take();
    if (head.kind != Token::Kind::ident)
      fail(DiagCode::syntax, line_, head.column, "expected a processor expression");
    const long d = require_data_dim(head.column);
    ProcessorExpr expr;
    if (head.text == "cnot") {
      expr.kind = ProcessorExpr::Kind::cnot;
      if (d != 2)
        fail(DiagCode::dim_mismatch, line_, head.column, "cnot requires data_dim 2");
      return expr;
    }
    if (head.text == "swap" || head.text == "qid") {
      expr.kind = head.text == "swap" ? ProcessorExpr::Kind::swap_gate
                                      : ProcessorExpr::Kind::qid;
      const auto args = call_args(lex);
      if (args.size() != 1 || args[0] != std::floor(args[0]))
        fail(DiagCode::arity, line_, head.column, head.text + ": expected one integer");
      expr.arg = static_cast<long>(args[0]);
      if (expr.arg < 2 || expr.arg > kMaxDim)
        fail(DiagCode::arg_range, line_, head.column,
             head.text + ": dimension must be in 2..16");
      if (expr.arg != d)
        fail(DiagCode::dim_mismatch, line_, head.column,
             head.text + " dimension disagrees with data_dim");
      return expr;
    }
    if (head.text == "vmc") {
      expr.kind = ProcessorExpr::Kind::vmc;
      const auto args = call_args(lex);
      if (args.size() != 1 || args[0] != std::floor(args[0]))
        fail(DiagCode::arity, line_, head.column, "vmc: expected one integer");
      expr.arg = static_cast<long>(args[0]);
      if (expr.arg < 1 || expr.arg > 6)
        fail(DiagCode::arg_range, line_, head.column, "vmc: qubit count must be in 1..6");
      if (d != 2)
        fail(DiagCode::dim_mismatch, line_, head.column, "vmc requires data_dim 2");
      return expr;
    }
    if (head.text == "uproc") {
      expr.kind = ProcessorExpr::Kind::uproc;
      expect_symbol(lex, "(");
      while (true) {
        const int col = lex.peek().column;
        UnitaryExpr u = unitary_expr(lex);
        if (expr_dim(u, col) != d)
          fail(DiagCode::dim_mismatch, line_, col,
               "uproc program does not match data_dim");
        expr.programs.push_back(std::move(u));
        Token sep = lex.take();
        if (sep.kind == Token::Kind::symbol && sep.text == ")") break;
        if (sep.kind == Token::Kind::symbol && sep.text == ",") continue;
        fail(DiagCode::syntax, line_, sep.column, "expected ',' or ')' in uproc");
      }
      return expr;
    }
    if (head.text == "network") {
      expr.kind = ProcessorExpr::Kind::network;
      expect_symbol(lex, "(");
      int max_wire = 0;
      while (true) {
        GateApp app;
        const int col = lex.peek().column;
        app.gate = unitary_expr(lex);
        expect_symbol(lex, "@");
        expect_symbol(lex, "[");
        while (true) {
          Token w = lex.take();
          if (w.kind != Token::Kind::number || w.value != std::floor(w.value))
            fail(DiagCode::syntax, line_, w.column, "expected an integer wire index");
          const int wire = static_cast<int>(w.value);
          if (wire < 1)
            fail(DiagCode::wire, line_, w.column, "wire indices are 1-based");
          for (int seen : app.wires)
            if (seen == wire)
              fail(DiagCode::wire, line_, w.column, "duplicate wire in gate");
          app.wires.push_back(wire);
          max_wire = std::max(max_wire, wire);
          Token sep = lex.take();
          if (sep.kind == Token::Kind::symbol && sep.text == "]") break;
          if (sep.kind == Token::Kind::symbol && sep.text == ",") continue;
          fail(DiagCode::syntax, line_, sep.column, "expected ',' or ']' in wire list");
        }
        Index want = 1;
        for (size_t i = 0; i < app.wires.size(); ++i) want *= d;
        if (expr_dim(app.gate, col) != want)
          fail(DiagCode::dim_mismatch, line_, col,
               "gate dimension does not match its wire count");
        expr.gates.push_back(std::move(app));
        Token sep = lex.take();
        if (sep.kind == Token::Kind::symbol && sep.text == ")") break;
        if (sep.kind == Token::Kind::symbol && sep.text == ",") continue;
        fail(DiagCode::syntax, line_, sep.column, "expected ',' or ')' in network");
      }
      if (max_wire < 2)
        fail(DiagCode::wire, line_, head.column,
             "network needs at least one program wire");
      Index joint = 1;
      for (int i = 0; i < max_wire; ++i) {
        joint *= d;
        if (joint > kMaxJointDim)
          fail(DiagCode::arg_range, line_, head.column, "network joint space too large");
      }
      return expr;
    }
    fail(DiagCode::syntax, line_, head.column,
         "unknown processor '" + head.text + "'");
  }

  std::string_view text_;
  Ast ast_;
  int line_ = 0;
  std::map<std::string, Index> unitary_dims_;
  std::set<std::string> processor_names_;
};

std::string format_real(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(cplx z) {
  std::string out = format_real(z.real());
  out += z.imag() < 0.0 ? "-" : "+";
  out += format_real(std::abs(z.imag()));
  out += "i";
  return out;
}

std::string serialize_unitary(const UnitaryExpr& expr) {
  switch (expr.kind) {
    case UnitaryExpr::Kind::name:
      return expr.callee;
    case UnitaryExpr::Kind::builtin: {
      if (expr.args.empty()) return expr.callee;
      std::string out = expr.callee + "(";
      for (size_t i = 0; i < expr.args.size(); ++i) {
        if (i) out += ", ";
        out += format_real(expr.args[i]);
      }
      return out + ")";
    }
    case UnitaryExpr::Kind::matrix: {
      std::string out = "[";
      for (Index i = 0; i < expr.rows; ++i) {
        if (i) out += ", ";
        out += "[";
        for (Index j = 0; j < expr.cols; ++j) {
          if (j) out += ", ";
          out += format_complex(expr.entries[i * expr.cols + j]);
        }
        out += "]";
      }
      return out + "]";
    }
  }
  return {};
}

std::string serialize_processor(const ProcessorExpr& expr) {
  switch (expr.kind) {
    case ProcessorExpr::Kind::cnot:
      return "cnot";
    case ProcessorExpr::Kind::swap_gate:
      return "swap(" + std::to_string(expr.arg) + ")";
    case ProcessorExpr::Kind::qid:
      return "qid(" + std::to_string(expr.arg) + ")";
    case ProcessorExpr::Kind::vmc:
      return "vmc(" + std::to_string(expr.arg) + ")";
    case ProcessorExpr::Kind::uproc: {
      std::string out = "uproc(";
      for (size_t i = 0; i < expr.programs.size(); ++i) {
        if (i) out += ", ";
        out += serialize_unitary(expr.programs[i]);
      }
      return out + ")";
    }
    case ProcessorExpr::Kind::network: {
      std::string out = "network(";
      for (size_t i = 0; i < expr.gates.size(); ++i) {
        if (i) out += ", ";
        out += serialize_unitary(expr.gates[i].gate) + "@[";
        for (size_t w = 0; w < expr.gates[i].wires.size(); ++w) {
          if (w) out += ", ";
          out += std::to_string(expr.gates[i].wires[w]);
        }
        out += "]";
      }
      return out + ")";
    }
  }
  return {};
}

Matrix polar_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Matrix builtin_matrix(const UnitaryExpr& expr) {
  const auto& a = expr.args;
  if (expr.callee == "id") return identity(static_cast<Index>(a[0]));
  if (expr.callee == "px") return pauli(1);
  if (expr.callee == "py") return pauli(2);
  if (expr.callee == "pz") return pauli(3);
  if (expr.callee == "hadamard") {
    Matrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
  }
  if (expr.callee == "phase") {
    Matrix m = identity(2);
    m(1, 1) = std::exp(cplx(0, a[0]));
    return m;
  }
  if (expr.callee == "rz") return u1_rotation(a[0], {0.0, 0.0, 1.0});
  if (expr.callee == "weyl")
    return generalized_pauli(static_cast<Index>(a[0]), static_cast<Index>(a[1]),
                             static_cast<Index>(a[2]));
  throw std::logic_error("builtin_matrix: unknown builtin " + expr.callee);
}

// Embed a gate acting on the listed wires (1-based, wire order = digit order)
// into the m-wire joint space of d-dimensional wires.
Matrix embed_gate(const Matrix& gate, const std::vector<int>& wires, int total_wires,
                  Index d) {
  const int k = static_cast<int>(wires.size());
  Index joint = 1;
  for (int i = 0; i < total_wires; ++i) joint *= d;
  Matrix out = Matrix::Zero(joint, joint);
  std::vector<Index> digits(total_wires);
  for (Index col = 0; col < joint; ++col) {
    Index rest = col;
    for (int w = total_wires - 1; w >= 0; --w) {
      digits[w] = rest % d;
      rest /= d;
    }
    Index gate_col = 0;
    for (int t = 0; t < k; ++t) gate_col = gate_col * d + digits[wires[t] - 1];
    Index gate_dim = gate.rows();
    for (Index gate_row = 0; gate_row < gate_dim; ++gate_row) {
      const cplx amp = gate(gate_row, gate_col);
      if (amp == cplx(0, 0)) continue;
      std::vector<Index> row_digits = digits;
      Index rr = gate_row;
      for (int t = k - 1; t >= 0; --t) {
        row_digits[wires[t] - 1] = rr % d;
        rr /= d;
      }
      Index row = 0;
      for (int w = 0; w < total_wires; ++w) row = row * d + row_digits[w];
      out(row, col) += amp;
    }
  }
  return out;
}

}  // namespace

std::string_view diag_code_name(DiagCode code) {
  switch (code) {
    case DiagCode::lex: return "E_LEX";
    case DiagCode::syntax: return "E_SYNTAX";
    case DiagCode::undefined_name: return "E_UNDEFINED_NAME";
    case DiagCode::redefinition: return "E_REDEFINITION";
    case DiagCode::matrix_shape: return "E_MATRIX_SHAPE";
    case DiagCode::not_unitary: return "E_NOT_UNITARY";
    case DiagCode::data_dim_required: return "E_DATA_DIM_REQUIRED";
    case DiagCode::dim_mismatch: return "E_DIM_MISMATCH";
    case DiagCode::wire: return "E_WIRE";
    case DiagCode::arity: return "E_ARITY";
    case DiagCode::arg_range: return "E_ARG_RANGE";
    case DiagCode::no_processor: return "E_NO_PROCESSOR";
  }
  return "E_UNKNOWN";
}

ParseError::ParseError(Diagnostic d)
    : std::runtime_error(std::string(diag_code_name(d.code)) + " at " +
                         std::to_string(d.line) + ":" + std::to_string(d.column) +
                         ": " + d.message),
      diag_(std::move(d)) {}

Ast parse(std::string_view text) { return Parser(text).run(); }

std::string serialize(const Ast& ast) {
  std::string out;
  if (ast.data_dim) out += "data_dim " + std::to_string(*ast.data_dim) + "\n";
  for (const auto& [name, expr] : ast.unitaries)
    out += "unitary " + name + " = " + serialize_unitary(expr) + "\n";
  for (const auto& [name, expr] : ast.processors)
    out += "processor " + name + " = " + serialize_processor(expr) + "\n";
  return out;
}

Matrix eval_unitary(const Ast& ast, const UnitaryExpr& expr) {
  switch (expr.kind) {
    case UnitaryExpr::Kind::matrix: {
      Matrix m(expr.rows, expr.cols);
      for (Index i = 0; i < expr.rows; ++i)
        for (Index j = 0; j < expr.cols; ++j) m(i, j) = expr.entries[i * expr.cols + j];
      if (!is_unitary(m, kLiteralUnitaryTol))
        throw ParseError({DiagCode::not_unitary, 0, 0, "literal is not unitary"});
      // Decimal-rounded literals are re-projected to the nearest unitary.
      return polar_unitary(m);
    }
    case UnitaryExpr::Kind::builtin:
      return builtin_matrix(expr);
    case UnitaryExpr::Kind::name: {
      for (const auto& [name, def] : ast.unitaries)
        if (name == expr.callee) return eval_unitary(ast, def);
      throw ParseError({DiagCode::undefined_name, 0, 0,
                        "undefined unitary '" + expr.callee + "'"});
    }
  }
  throw std::logic_error("eval_unitary: bad expression kind");
}

Processor elaborate(const Ast& ast, std::string_view processor_name) {
  const std::pair<std::string, ProcessorExpr>* found = nullptr;
  if (processor_name.empty()) {
    if (ast.processors.empty())
      throw ParseError({DiagCode::no_processor, 0, 0, "file declares no processor"});
    found = &ast.processors.front();
  } else {
    for (const auto& entry : ast.processors)
      if (entry.first == processor_name) found = &entry;
    if (!found)
      throw ParseError({DiagCode::undefined_name, 0, 0,
                        "no processor named '" + std::string(processor_name) + "'"});
  }
  const ProcessorExpr& expr = found->second;
  const Index d = static_cast<Index>(ast.data_dim.value_or(2));
  switch (expr.kind) {
    case ProcessorExpr::Kind::cnot:
      return cnot_processor();
    case ProcessorExpr::Kind::swap_gate:
      return swap_processor(expr.arg);
    case ProcessorExpr::Kind::qid:
      return qid_processor(expr.arg);
    case ProcessorExpr::Kind::vmc:
      return vmc_processor(static_cast<int>(expr.arg));
    case ProcessorExpr::Kind::uproc: {
      std::vector<Matrix> programs;
      for (const UnitaryExpr& u : expr.programs) programs.push_back(eval_unitary(ast, u));
      return u_processor(programs, found->first);
    }
    case ProcessorExpr::Kind::network: {
      int total_wires = 0;
      for (const GateApp& g : expr.gates)
        for (int w : g.wires) total_wires = std::max(total_wires, w);
      Index joint = 1;
      for (int i = 0; i < total_wires; ++i) joint *= d;
      // Listed order is product order: the last gate in the list acts first.
      Matrix g = identity(joint);
      for (const GateApp& app : expr.gates)
        g *= embed_gate(eval_unitary(ast, app.gate), app.wires, total_wires, d);
      return Processor(g, Dims{d, joint / d}, found->first);
    }
  }
  throw std::logic_error("elaborate: bad processor kind");
}

CompatReport static_compat(const Ast& ast, const std::vector<std::string>& names) {
  std::vector<Matrix> units;
  for (const std::string& name : names) {
    UnitaryExpr ref;
    ref.kind = UnitaryExpr::Kind::name;
    ref.callee = name;
    units.push_back(eval_unitary(ast, ref));
  }
  for (size_t i = 1; i < units.size(); ++i)
    if (units[i].rows() != units[0].rows())
      throw ParseError({DiagCode::dim_mismatch, 0, 0,
                        "compatibility table needs unitaries of equal dimension"});
  CompatReport report;
  for (size_t i = 0; i < units.size(); ++i)
    for (size_t j = i + 1; j < units.size(); ++j) {
      const Matrix prod = units[i].adjoint() * units[j];
      const cplx c = prod.trace() / static_cast<double>(prod.rows());
      CompatEntry entry{names[i], names[j], std::nullopt};
      if (max_abs(prod - c * identity(prod.rows())) <= 1e-9) entry.c = c;
      report.table.push_back(std::move(entry));
    }
  report.minimal_program_dimension = unitary_program_dimension(units);
  return report;
}

}  // namespace qproc::dsl
