#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "qproc/dsl.hpp"
#include "qproc/zoo.hpp"

using namespace qproc;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> corpus_files(const char* subdir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(fs::path(QPROC_CORPUS_DIR) / subdir))
    if (entry.path().extension() == ".qproc") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST_CASE("parse basics") {
  const dsl::Ast ast = dsl::parse("data_dim 2\nprocessor p = cnot\n");
  CHECK(ast.data_dim == 2);
  REQUIRE(ast.processors.size() == 1);
  CHECK(ast.processors[0].first == "p");
  CHECK(ast.processors[0].second.kind == dsl::ProcessorExpr::Kind::cnot);

  const dsl::Ast up = dsl::parse(
      "data_dim 2\nunitary Z = [[1,0],[0,-1]]\nprocessor p = uproc(id(2), Z)\n");
  REQUIRE(up.unitaries.size() == 1);
  CHECK(up.unitaries[0].first == "Z");
  REQUIRE(up.processors.size() == 1);
  CHECK(up.processors[0].second.programs.size() == 2);

  // missing data_dim is rejected with the dedicated code
  try {
    dsl::parse("processor p = qid(3)\n");
    FAIL("expected a diagnostic");
  } catch (const dsl::ParseError& e) {
    CHECK(e.diagnostic().code == dsl::DiagCode::data_dim_required);
    CHECK(e.diagnostic().line == 1);
    CHECK(e.diagnostic().column > 0);
  }
}

TEST_CASE("complex literal forms") {
  const dsl::Ast ast = dsl::parse(
      "data_dim 2\n"
      "unitary A = [[0.6+0.8i, 0], [0, 1i]]\n"
      "unitary B = [[1e0+0e0i, 0-0i], [0, -1i]]\n"
      "processor p = uproc(A, B)\n");
  const Matrix a = dsl::eval_unitary(ast, ast.unitaries[0].second);
  CHECK(std::abs(a(0, 0) - cplx(0.6, 0.8)) < 1e-12);
  CHECK(std::abs(a(1, 1) - cplx(0, 1)) < 1e-12);
  const Matrix b = dsl::eval_unitary(ast, ast.unitaries[1].second);
  CHECK(std::abs(b(1, 1) - cplx(0, -1)) < 1e-12);
}

TEST_CASE("diagnostics carry line and column") {
  try {
    dsl::parse("data_dim 2\nunitary A = [[1,0],[0,&]]\n");
    FAIL("expected a diagnostic");
  } catch (const dsl::ParseError& e) {
    CHECK(e.diagnostic().code == dsl::DiagCode::lex);
    CHECK(e.diagnostic().line == 2);
    CHECK(e.diagnostic().column == 23);
  }
  try {
    dsl::parse("data_dim 2\ndata_dim 3\n");
    FAIL("expected a diagnostic");
  } catch (const dsl::ParseError& e) {
    CHECK(e.diagnostic().code == dsl::DiagCode::redefinition);
    CHECK(e.diagnostic().line == 2);
  }
}

TEST_CASE("corpus round trips") {
  const auto files = corpus_files("positive");
  REQUIRE(files.size() == 20);
  for (const auto& file : files) {
    INFO("file: " << file.string());
    const dsl::Ast first = dsl::parse(read_file(file));
    const std::string canonical = dsl::serialize(first);
    const dsl::Ast second = dsl::parse(canonical);
    CHECK(first == second);
    // serialization is a fixed point from the second pass on
    CHECK(dsl::serialize(second) == canonical);
  }
}

TEST_CASE("elaboration matches the zoo constructors") {
  const fs::path base = fs::path(QPROC_CORPUS_DIR) / "positive";
  const std::map<std::string, Matrix> expected = {
      {"01_cnot.qproc", cnot_processor().gate},
      {"02_swap2.qproc", swap_processor(2).gate},
      {"03_swap3.qproc", swap_processor(3).gate},
      {"04_qid2.qproc", qid_processor(2).gate},
      {"05_qid3.qproc", qid_processor(3).gate},
      {"06_vmc1.qproc", vmc_processor(1).gate},
      {"07_vmc2.qproc", vmc_processor(2).gate},
      {"08_vmc3.qproc", vmc_processor(3).gate},
      {"09_uproc_id_pz.qproc", u_processor({pauli(0), pauli(3)}).gate},
      {"10_uproc_paulis.qproc",
       u_processor({pauli(0), pauli(1), pauli(2), pauli(3)}).gate},
      {"12_u1grid4.qproc", u1_grid_processor(4, {0, 0, 1}).gate},
      {"13_network_vmc2.qproc", vmc_processor(2).gate},
      {"20_u1grid8.qproc", u1_grid_processor(8, {0, 0, 1}).gate},
  };
  for (const auto& [name, gate] : expected) {
    INFO("file: " << name);
    const Processor p = dsl::elaborate(dsl::parse(read_file(base / name)));
    REQUIRE(p.gate.rows() == gate.rows());
    CHECK(approx_equal(p.gate, gate, 1e-10));
  }

  // weyl corpus matches the generalized Pauli program family
  {
    std::vector<Matrix> programs;
    for (Index k = 0; k < 9; ++k) programs.push_back(generalized_pauli(3, k));
    const Processor p =
        dsl::elaborate(dsl::parse(read_file(base / "11_uproc_weyl3.qproc")));
    CHECK(approx_equal(p.gate, u_processor(programs).gate, 1e-10));
  }

  // every positive file elaborates to a valid processor
  for (const auto& file : corpus_files("positive")) {
    INFO("file: " << file.string());
    const Processor p = dsl::elaborate(dsl::parse(read_file(file)));
    CHECK(is_unitary(p.gate, 1e-10));
  }
}

TEST_CASE("elaboration is deterministic") {
  const fs::path file = fs::path(QPROC_CORPUS_DIR) / "positive" / "18_matrix_literal.qproc";
  const std::string text = read_file(file);
  const Processor a = dsl::elaborate(dsl::parse(text));
  const Processor b = dsl::elaborate(dsl::parse(text));
  REQUIRE(a.gate.size() == b.gate.size());
  CHECK(std::memcmp(a.gate.data(), b.gate.data(),
                    sizeof(cplx) * static_cast<size_t>(a.gate.size())) == 0);
}

TEST_CASE("negative corpus produces the expected diagnostics") {
  const auto files = corpus_files("negative");
  REQUIRE(files.size() == 10);
  for (const auto& file : files) {
    INFO("file: " << file.string());
    const std::string text = read_file(file);
    // first line: "# expect: E_CODE"
    const size_t tag = text.find("# expect: ");
    REQUIRE(tag != std::string::npos);
    const std::string want = text.substr(tag + 10, text.find('\n') - (tag + 10));
    bool threw = false;
    try {
      dsl::elaborate(dsl::parse(text));
    } catch (const dsl::ParseError& e) {
      threw = true;
      CHECK(std::string(dsl::diag_code_name(e.diagnostic().code)) == want);
      CHECK(e.diagnostic().line > 0);
      CHECK(e.diagnostic().column > 0);
    }
    CHECK(threw);
  }
}

TEST_CASE("network wire embedding") {
  // a gate applied to swapped wires equals the wire-permuted unitary
  const dsl::Ast ast = dsl::parse(
      "data_dim 2\n"
      "unitary cx = [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]]\n"
      "processor forward = network(cx@[1, 2])\n"
      "processor reversed = network(cx@[2, 1])\n");
  const Matrix forward = dsl::elaborate(ast, "forward").gate;
  const Matrix reversed = dsl::elaborate(ast, "reversed").gate;
  // control on wire 2, target wire 1: |x,y> -> |x^y, y>
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 1) = expected(2, 2) = expected(1, 3) = 1;
  CHECK(approx_equal(reversed, expected, 0.0));
  CHECK(!approx_equal(forward, reversed, 0.5));
}

TEST_CASE("static compatibility analysis") {
  const dsl::Ast ast = dsl::parse(
      "data_dim 2\n"
      "unitary Z = pz\n"
      "unitary X = px\n"
      "unitary GP = [[0.5+0.8660254037844386i, 0], [0, 0.5+0.8660254037844386i]]\n"
      "unitary I2 = id(2)\n"
      "processor p = uproc(I2, Z)\n");

  const dsl::CompatReport two = dsl::static_compat(ast, {"I2", "Z"});
  REQUIRE(two.table.size() == 1);
  CHECK_FALSE(two.table[0].c.has_value());  // requires orthogonal programs
  CHECK(two.minimal_program_dimension == 2);

  // a global phase of the identity is the same program
  const dsl::CompatReport phase = dsl::static_compat(ast, {"I2", "GP"});
  REQUIRE(phase.table.size() == 1);
  REQUIRE(phase.table[0].c.has_value());
  CHECK(std::abs(std::abs(*phase.table[0].c) - 1.0) < 1e-9);
  CHECK(phase.minimal_program_dimension == 1);

  // four qubit Paulis need a four-dimensional program space
  const dsl::Ast paulis = dsl::parse(
      "data_dim 2\n"
      "unitary I2 = id(2)\nunitary X = px\nunitary Y = py\nunitary Z = pz\n"
      "processor p = uproc(I2, X, Y, Z)\n");
  const dsl::CompatReport four = dsl::static_compat(paulis, {"I2", "X", "Y", "Z"});
  CHECK(four.minimal_program_dimension == 4);
  for (const auto& entry : four.table) CHECK_FALSE(entry.c.has_value());

  CHECK_THROWS_AS(dsl::static_compat(ast, {"I2", "missing"}), dsl::ParseError);
}

TEST_CASE("elaborate without a processor statement") {
  try {
    dsl::elaborate(dsl::parse("data_dim 2\nunitary Z = pz\n"));
    FAIL("expected a diagnostic");
  } catch (const dsl::ParseError& e) {
    CHECK(e.diagnostic().code == dsl::DiagCode::no_processor);
  }
}
