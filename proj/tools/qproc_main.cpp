// Command-line front end: reproduces the closed-form processor benchmarks as
// machine-readable reports and evaluates user-supplied .qproc files.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qproc/dsl.hpp"
#include "qproc/metrics.hpp"
#include "qproc/probabilistic.hpp"
#include "qproc/u1.hpp"
#include "qproc/zoo.hpp"

namespace {

using nlohmann::json;
using namespace qproc;

constexpr std::array<double, 3> kZAxis{0.0, 0.0, 1.0};

struct RunConfig {
  std::uint64_t seed = 1;
  int samples = 2000;
  int grid = 4096;
  double tolerance = 1e-6;
  std::string format = "json";
  std::string out_path;
  bool no_timestamp = false;
};

enum class Check { two_sided, upper_bound, none };

struct ResultRow {
  std::string name;
  double computed = 0.0;
  std::optional<double> reference;
  bool pass = true;
};

class Report {
 public:
  Report(std::string command, const RunConfig& cfg) : command_(std::move(command)), cfg_(cfg) {}

  void add(const std::string& name, double computed, std::optional<double> reference,
           Check check = Check::two_sided) {
    ResultRow row{name, computed, reference, true};
    if (reference && check == Check::two_sided)
      row.pass = std::abs(computed - *reference) <= cfg_.tolerance;
    else if (reference && check == Check::upper_bound)
      row.pass = computed <= *reference + cfg_.tolerance;
    rows_.push_back(std::move(row));
  }

  void add_flag(const std::string& name, bool value, std::optional<bool> expected) {
    ResultRow row{name, value ? 1.0 : 0.0, std::nullopt, true};
    if (expected) {
      row.reference = *expected ? 1.0 : 0.0;
      row.pass = value == *expected;
    }
    rows_.push_back(std::move(row));
  }

  bool all_pass() const {
    for (const ResultRow& r : rows_)
      if (!r.pass) return false;
    return true;
  }

  int emit() const {
    std::ostringstream body;
    if (cfg_.format == "csv")
      write_csv(body);
    else
      write_json(body);
    if (cfg_.out_path.empty()) {
      std::cout << body.str();
    } else {
      std::ofstream out(cfg_.out_path);
      if (!out) {
        std::cerr << "error: cannot write " << cfg_.out_path << "\n";
        return 2;
      }
      out << body.str();
    }
    return all_pass() ? 0 : 1;
  }

 private:
  void write_json(std::ostream& os) const {
    json j;
    j["command"] = command_;
    j["config"] = {{"seed", cfg_.seed},       {"samples", cfg_.samples},
                   {"grid", cfg_.grid},       {"tolerance", cfg_.tolerance},
                   {"format", cfg_.format}};
    j["results"] = json::array();
    for (const ResultRow& r : rows_) {
      json row;
      row["name"] = r.name;
      row["computed"] = r.computed;
      row["reference"] = r.reference ? json(*r.reference) : json(nullptr);
      row["abs_diff"] = r.reference ? json(std::abs(r.computed - *r.reference)) : json(nullptr);
      row["pass"] = r.pass;
      j["results"].push_back(row);
    }
    j["provenance"] = {{"seed", cfg_.seed},
                       {"versions",
                        {{"qproc", "0.1.0"},
                         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                       std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                       std::to_string(EIGEN_MINOR_VERSION)}}}};
    if (!cfg_.no_timestamp) {
      const auto now = std::chrono::system_clock::now();
      const std::time_t t = std::chrono::system_clock::to_time_t(now);
      char buf[32];
      std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
      j["timestamp"] = buf;
    }
    os << j.dump(2) << "\n";
  }

  void write_csv(std::ostream& os) const {
    os << "name,computed,reference,abs_diff,pass\n";
    for (const ResultRow& r : rows_) {
      os << r.name << "," << json(r.computed).dump() << ",";
      if (r.reference)
        os << json(*r.reference).dump() << "," << json(std::abs(r.computed - *r.reference)).dump();
      else
        os << ",";
      os << "," << (r.pass ? "true" : "false") << "\n";
    }
  }

  std::string command_;
  RunConfig cfg_;
  std::vector<ResultRow> rows_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// repro targets

void repro_cnot(Report& report, const RunConfig& cfg) {
  const Processor cnot = cnot_processor();
  report.add("epsilon_worst", epsilon_worst_u1(cnot, kZAxis, cfg.grid), 0.5);
  report.add("epsilon_avg", epsilon_avg_u1(cnot, kZAxis, cfg.grid), 0.5 - 1.0 / M_PI);
  const std::vector<std::pair<std::string, double>> etas = {
      {"pi_8", M_PI / 8}, {"pi_4", M_PI / 4}, {"3pi_8", 3 * M_PI / 8}};
  for (const auto& [tag, eta] : etas) {
    report.add("avg_success_eta_" + tag, cnot_eta_average_success(eta, cfg.grid), 0.5);
    double worst = 1.0;
    for (int k = 0; k < cfg.grid; ++k)
      worst = std::min(worst, cnot_eta_analysis(eta, 2 * M_PI * k / cfg.grid).p_success);
    report.add("worst_success_eta_" + tag, worst, cnot_eta_worst_success(eta));
  }
  // Saturation P_error = epsilon at eta = pi/4 on the worst target.
  const Matrix target = u1_rotation(M_PI / 4, kZAxis).adjoint();  // exp(-i pi/4 sz)
  const double p_err = 1.0 - success_probability(cnot, cnot_eta_measurement(M_PI / 4),
                                                 cnot_program(M_PI / 4), target);
  report.add("saturation_p_error_eta_pi_4",
             p_err, epsilon_of_target(cnot, target).epsilon);
}

void repro_qid(Report& report, const RunConfig& cfg, Index d) {
  const Processor qid = qid_processor(d);
  const auto thetas = qid_program_basis(d);
  const ProjectiveMeasurement meas = qid_measurement_basis(d);
  const double flat = 1.0 / static_cast<double>(d * d);

  double min_fid = 1.0;
  for (Index k = 0; k < d * d; ++k) {
    const KrausChannel ch = kraus_from_pure_program(qid, thetas[k]);
    min_fid = std::min(min_fid, process_fidelity_unitary(generalized_pauli(d, k), ch));
  }
  report.add("elementary_fidelity_min", min_fid, 1.0);

  CounterRng rng(cfg.seed);
  double succ_min = 1.0, succ_max = 0.0;
  for (int t = 0; t < 20; ++t) {
    CounterRng sub = rng.stream(t);
    const Matrix u = haar_unitary(d, sub);
    Vector xi = Vector::Zero(d * d);
    for (Index k = 0; k < d * d; ++k)
      xi += (generalized_pauli(d, k).adjoint() * u).trace() / static_cast<double>(d) * thetas[k];
    xi /= xi.norm();
    const double p = success_probability(qid, meas, xi, u);
    succ_min = std::min(succ_min, p);
    succ_max = std::max(succ_max, p);
  }
  report.add("success_random_programs_min", succ_min, flat);
  report.add("success_random_programs_max", succ_max, flat);

  const auto witness = qid_worst_witness(d);
  const WorstCaseReport worst = epsilon_worst_haar(qid, cfg.samples, cfg.seed, witness);
  report.add("epsilon_witness", worst.witness_epsilon.value_or(0.0),
             universal_lower_bound(d));
  report.add("epsilon_haar_max", worst.sample_max, universal_lower_bound(d),
             Check::upper_bound);
}

void repro_swap(Report& report, const RunConfig& cfg, Index d) {
  const Processor swap = swap_processor(d);
  const double bound = universal_lower_bound(d);
  CounterRng rng(cfg.seed);
  double dev = 0.0;
  for (int t = 0; t < 50; ++t) {
    CounterRng sub = rng.stream(t);
    dev = std::max(dev, std::abs(epsilon_of_target(swap, haar_unitary(d, sub)).epsilon - bound));
  }
  report.add("epsilon_max_deviation", dev, 0.0);
  double succ = 0.0;
  for (int t = 0; t < 25; ++t) {
    CounterRng sub = rng.stream(1000 + t);
    const Matrix basis = haar_unitary(d, sub);
    std::vector<Vector> vecs;
    for (Index j = 0; j < d; ++j) vecs.push_back(basis.col(j));
    succ = std::max(succ, success_probability(swap, make_measurement(std::move(vecs)),
                                              haar_state(d, sub), haar_unitary(d, sub)));
  }
  report.add("success_max", succ, 0.0);
  report.add_flag("universal", universality_check(swap).universal, true);
}

void repro_u1(Report& report, const RunConfig& cfg, std::optional<Index> only_n) {
  std::vector<Index> sizes;
  if (only_n) {
    if (*only_n > 64)
      throw std::runtime_error("repro u1: --N above 64 is impractical; use repro bounds");
    sizes.push_back(*only_n);
  } else {
    for (Index n = 1; n <= 12; ++n) sizes.push_back(n);
  }
  for (Index n : sizes) {
    const U1Report closed = u1_report(n);
    const Processor p = u1_grid_processor(n, kZAxis);
    const std::string prefix = "u1.N=" + std::to_string(n) + ".";
    report.add(prefix + "epsilon_worst", epsilon_worst_u1(p, kZAxis, cfg.grid),
               closed.epsilon_worst);
    report.add(prefix + "epsilon_avg", epsilon_avg_u1(p, kZAxis, cfg.grid),
               closed.epsilon_avg);
  }
}

void repro_vmc(Report& report, const RunConfig& cfg, int n) {
  CounterRng rng(cfg.seed);
  const double phi = 0.25 + 2.0 * rng.next_double();
  const VmcResult r = vmc_simulate(n, phi);
  report.add("p_success", r.p_success, 1.0 - std::ldexp(1.0, -n));
  report.add("conditional_fidelity", r.conditional_fidelity, 1.0);
  report.add("matched_branches", static_cast<double>(r.matched_branches),
             static_cast<double>((1L << n) - 1));
}

void repro_bounds(Report& report, const RunConfig&, std::optional<Index> only_n) {
  std::vector<Index> sizes;
  if (only_n)
    sizes.push_back(*only_n);
  else
    for (Index n = 1; n <= 12; ++n) sizes.push_back(n);
  for (Index n : sizes) {
    const U1SuccessBounds b = u1_success_bounds(n);
    const std::string prefix = "bounds.N=" + std::to_string(n) + ".";
    report.add(prefix + "p_worst", b.worst, std::nullopt, Check::none);
    report.add(prefix + "p_avg", b.average, std::nullopt, Check::none);
  }
  for (int n = 1; n <= 6; ++n) {
    const Index size = Index(1) << n;
    const double vmc = 1.0 - 1.0 / static_cast<double>(size);
    report.add("vmc_below_bound.N=" + std::to_string(size), vmc,
               u1_success_bounds(size).worst, Check::upper_bound);
  }
}

// ---------------------------------------------------------------------------
// .qproc commands

Matrix parse_target(const std::string& file_text, const std::string& target_expr,
                    dsl::Ast& ast_out) {
  // Reuse the full parser: append the target as one more unitary so it can
  // reference names declared in the file.
  const std::string augmented = file_text + "\nunitary __cli_target = " + target_expr + "\n";
  ast_out = dsl::parse(augmented);
  return dsl::eval_unitary(ast_out, ast_out.unitaries.back().second);
}

std::vector<cplx> parse_vector_literal(const std::string& text) {
  // [a+bi, c, ...] with the same number syntax as the DSL.
  std::vector<cplx> out;
  size_t pos = 0;
  auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
  skip_ws();
  if (pos >= text.size() || text[pos] != '[')
    throw std::runtime_error("program vector must look like [a+bi, ...]");
  ++pos;
  while (true) {
    skip_ws();
    const char* start = text.c_str() + pos;
    char* end = nullptr;
    double re = std::strtod(start, &end);
    if (end == start) throw std::runtime_error("bad number in program vector");
    pos += static_cast<size_t>(end - start);
    double im = 0.0;
    if (pos < text.size() && text[pos] == 'i') {
      im = re;
      re = 0.0;
      ++pos;
    } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      const char* imstart = text.c_str() + pos;
      im = std::strtod(imstart, &end);
      if (end == imstart || *end != 'i')
        throw std::runtime_error("bad complex literal in program vector");
      pos += static_cast<size_t>(end - imstart) + 1;
    }
    out.emplace_back(re, im);
    skip_ws();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == ']') break;
    throw std::runtime_error("expected ',' or ']' in program vector");
  }
  return out;
}

int cmd_epsilon(const RunConfig& cfg, const std::string& file,
                const std::string& target_expr, const std::string& proc_name) {
  dsl::Ast ast;
  const Matrix target = parse_target(read_file(file), target_expr, ast);
  const Processor proc = dsl::elaborate(ast, proc_name);
  if (target.rows() != proc.dims.data)
    throw std::runtime_error("target dimension does not match the processor data register");
  Report report("epsilon", cfg);
  const EpsilonReport er = epsilon_of_target(proc, target);
  report.add("epsilon", er.epsilon, std::nullopt, Check::none);
  report.add("fidelity_best", 1.0 - er.epsilon, std::nullopt, Check::none);
  report.add("top_multiplicity", er.top_multiplicity, std::nullopt, Check::none);
  for (Index i = 0; i < er.optimal_program.size(); ++i) {
    report.add("optimal_program[" + std::to_string(i) + "].re",
               er.optimal_program(i).real(), std::nullopt, Check::none);
    report.add("optimal_program[" + std::to_string(i) + "].im",
               er.optimal_program(i).imag(), std::nullopt, Check::none);
  }
  return report.emit();
}

int cmd_success(const RunConfig& cfg, const std::string& file,
                const std::string& target_expr, const std::string& measurement,
                const std::string& program_literal, const std::string& proc_name) {
  dsl::Ast ast;
  const Matrix target = parse_target(read_file(file), target_expr, ast);
  const Processor proc = dsl::elaborate(ast, proc_name);
  if (target.rows() != proc.dims.data)
    throw std::runtime_error("target dimension does not match the processor data register");

  const std::vector<cplx> amp = parse_vector_literal(program_literal);
  Vector xi(static_cast<Index>(amp.size()));
  for (size_t i = 0; i < amp.size(); ++i) xi(static_cast<Index>(i)) = amp[i];
  if (xi.size() != proc.dims.program)
    throw std::runtime_error("program vector does not match the program register");
  if (xi.norm() < 1e-12) throw std::runtime_error("program vector is zero");
  xi /= xi.norm();

  ProjectiveMeasurement meas = [&] {
    if (measurement == "computational") return computational_measurement(proc.dims.program);
    if (measurement == "qid") {
      if (proc.dims.program != proc.dims.data * proc.dims.data)
        throw std::runtime_error("qid measurement needs a d^2 program register");
      return qid_measurement_basis(proc.dims.data);
    }
    std::vector<Vector> vecs;
    std::istringstream in(read_file(measurement));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const std::vector<cplx> v = parse_vector_literal(line);
      Vector vec(static_cast<Index>(v.size()));
      for (size_t i = 0; i < v.size(); ++i) vec(static_cast<Index>(i)) = v[i];
      vecs.push_back(vec);
    }
    return make_measurement(std::move(vecs));
  }();

  Report report("success", cfg);
  std::vector<BranchReport> reports = branches(proc, xi, meas);
  classify_against_target(reports, target);
  double total = 0.0;
  bool any_data_dependent = false;
  for (const BranchReport& r : reports) {
    const std::string prefix = "branch." + r.outcome + ".";
    if (r.probability) {
      report.add(prefix + "p", *r.probability, std::nullopt, Check::none);
    } else {
      report.add(prefix + "data_dependent", 1.0, std::nullopt, Check::none);
      any_data_dependent = true;
    }
    report.add_flag(prefix + "matches_target", r.matches_target, std::nullopt);
    if (r.matches_target) {
      total += *r.probability;
      report.add(prefix + "phase_arg", std::arg(r.phase), std::nullopt, Check::none);
    }
  }
  report.add("success_total", total, std::nullopt, Check::none);
  if (any_data_dependent)
    report.add_flag("note_data_dependent_branches", true, std::nullopt);
  const InequalityResult ineq = error_epsilon_inequality(proc, meas, xi, target);
  report.add("p_error", ineq.p_error, std::nullopt, Check::none);
  report.add("epsilon", ineq.epsilon, std::nullopt, Check::none);
  report.add_flag("p_error_ge_epsilon", ineq.holds, true);
  return report.emit();
}

int cmd_check(const RunConfig& cfg, const std::string& file, const std::string& proc_name) {
  const std::string text = read_file(file);
  const dsl::Ast ast = dsl::parse(text);
  const Processor proc = dsl::elaborate(ast, proc_name);
  Report report("check", cfg);
  report.add("unitarity_deviation",
             max_abs(proc.gate.adjoint() * proc.gate - identity(proc.dims.joint())), 0.0);
  const UniversalityReport uni = universality_check(proc);
  report.add_flag("universal", uni.universal, std::nullopt);
  report.add("operator_rank", static_cast<double>(uni.operator_rank), std::nullopt,
             Check::none);
  const double bound = universal_lower_bound(proc.dims.data);
  report.add("universal_lower_bound", bound, std::nullopt, Check::none);
  const WorstCaseReport worst =
      epsilon_worst_haar(proc, std::min(cfg.samples, 500), cfg.seed);
  if (uni.universal)
    report.add("epsilon_haar_max_vs_bound", worst.sample_max, bound, Check::upper_bound);
  else
    report.add("epsilon_haar_max", worst.sample_max, std::nullopt, Check::none);

  if (!ast.unitaries.empty()) {
    std::vector<std::string> names;
    for (const auto& [name, expr] : ast.unitaries) names.push_back(name);
    bool same_dim = true;
    const Index d0 = dsl::eval_unitary(ast, ast.unitaries.front().second).rows();
    for (const auto& [name, expr] : ast.unitaries)
      same_dim = same_dim && dsl::eval_unitary(ast, expr).rows() == d0;
    if (same_dim) {
      const dsl::CompatReport compat = dsl::static_compat(ast, names);
      for (const dsl::CompatEntry& e : compat.table) {
        if (e.c)
          report.add("compat." + e.left + "." + e.right + ".c_abs", std::abs(*e.c),
                     std::nullopt, Check::none);
        else
          report.add_flag("compat." + e.left + "." + e.right + ".requires_orthogonal",
                          true, std::nullopt);
      }
      report.add("minimal_program_dimension",
                 static_cast<double>(compat.minimal_program_dimension), std::nullopt,
                 Check::none);
    }
  }
  return report.emit();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"programmable quantum processor toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--samples", cfg.samples, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid", cfg.grid, "quadrature / scan grid size")
      ->check(CLI::Range(16, 1 << 24));
  app.add_option("--tol", cfg.tolerance, "pass/fail tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out_path, "write the report to this path");
  app.add_flag("--no-timestamp", cfg.no_timestamp, "omit the timestamp field");

  // repro
  auto* repro = app.add_subcommand("repro", "reproduce a closed-form benchmark");
  std::string target;
  long d_flag = 2, n_flag = 3;
  long long n_size = 0;
  repro->add_option("target", target, "cnot|qid|swap|u1|vmc|bounds")->required();
  repro->add_option("--d", d_flag, "data dimension (qid, swap)")->check(CLI::Range(2, 16));
  repro->add_option("--n", n_flag, "program qubit count (vmc)")->check(CLI::Range(1, 6));
  repro->add_option("--N", n_size, "program size (u1, bounds)")->check(CLI::Range(1, 4096));

  // epsilon
  auto* eps = app.add_subcommand("epsilon", "approximation error of a target unitary");
  std::string file, target_expr, measurement = "computational", program_literal,
              proc_name;
  eps->add_option("file", file, ".qproc processor description")->required();
  eps->add_option("target", target_expr, "target unitary (builtin call, name, or matrix)")
      ->required();
  eps->add_option("--processor", proc_name, "processor name (default: first declared)");

  // success
  auto* succ = app.add_subcommand("success", "measurement-assisted branch analysis");
  succ->add_option("file", file, ".qproc processor description")->required();
  succ->add_option("target", target_expr, "target unitary")->required();
  succ->add_option("--measurement", measurement, "computational|qid|<file of vectors>");
  succ->add_option("--program", program_literal, "program vector literal [a+bi, ...]")
      ->required();
  succ->add_option("--processor", proc_name, "processor name (default: first declared)");

  // check
  auto* check = app.add_subcommand("check", "static analysis of a .qproc file");
  check->add_option("file", file, ".qproc processor description")->required();
  check->add_option("--processor", proc_name, "processor name (default: first declared)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (repro->parsed()) {
      Report report("repro " + target, cfg);
      if (target == "cnot")
        repro_cnot(report, cfg);
      else if (target == "qid")
        repro_qid(report, cfg, d_flag);
      else if (target == "swap")
        repro_swap(report, cfg, d_flag);
      else if (target == "u1")
        repro_u1(report, cfg, n_size > 0 ? std::optional<Index>(n_size) : std::nullopt);
      else if (target == "vmc")
        repro_vmc(report, cfg, static_cast<int>(n_flag));
      else if (target == "bounds")
        repro_bounds(report, cfg, n_size > 0 ? std::optional<Index>(n_size) : std::nullopt);
      else {
        std::cerr << "unknown repro target: " << target << "\n";
        return 2;
      }
      return report.emit();
    }
    if (eps->parsed()) return cmd_epsilon(cfg, file, target_expr, proc_name);
    if (succ->parsed())
      return cmd_success(cfg, file, target_expr, measurement, program_literal, proc_name);
    if (check->parsed()) return cmd_check(cfg, file, proc_name);
  } catch (const dsl::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
