#include "qproc/probabilistic.hpp"

#include <cmath>

#include "qproc/zoo.hpp"

namespace qproc {

namespace {

Vector plus_state() { return (basis_ket(2, 0) + basis_ket(2, 1)) / std::sqrt(2.0); }
Vector minus_state() { return (basis_ket(2, 0) - basis_ket(2, 1)) / std::sqrt(2.0); }

// Proportionality constant of K against unitary U, if K = c * U.
std::optional<cplx> proportionality(const Matrix& k, const Matrix& u, double tol) {
  const cplx c = (u.adjoint() * k).trace() / static_cast<double>(u.rows());
  if (max_abs(k - c * u) > tol) return std::nullopt;
  return c;
}

}  // namespace

std::vector<BranchReport> branches(const Processor& p, const Vector& xi,
                                   const ProjectiveMeasurement& m) {
  if (m.dim() != p.dims.program)
    throw std::invalid_argument("branches: measurement is not on the program register");
  const KrausChannel ops = kraus_from_pure_program(p, xi, m.vectors);
  std::vector<BranchReport> reports;
  reports.reserve(ops.ops.size());
  for (size_t i = 0; i < ops.ops.size(); ++i) {
    BranchReport r;
    r.outcome = m.labels[i];
    r.op = ops.ops[i];
    const Matrix gram = r.op.adjoint() * r.op;
    const double prob = gram.trace().real() / static_cast<double>(p.dims.data);
    if (max_abs(gram - prob * identity(p.dims.data)) <= 1e-9)
      r.probability = prob;
    reports.push_back(std::move(r));
  }
  return reports;
}

void classify_against_target(std::vector<BranchReport>& reports, const Matrix& u,
                             double tol) {
  for (BranchReport& r : reports) {
    r.matches_target = false;
    r.phase = cplx(1, 0);
    if (!r.probability || *r.probability < 1e-12) continue;
    if (const auto c = proportionality(r.op, u, tol)) {
      r.matches_target = true;
      r.phase = *c / std::abs(*c);
    }
  }
}

double success_probability(const Processor& p, const ProjectiveMeasurement& m,
                           const Vector& xi, const Matrix& u, double tol) {
  std::vector<BranchReport> reports = branches(p, xi, m);
  classify_against_target(reports, u, tol);
  double total = 0.0;
  for (const BranchReport& r : reports)
    if (r.matches_target) total += *r.probability;
  return clamp01(total);
}

Vector cnot_program(double xi_angle) {
  return std::cos(xi_angle) * plus_state() -
         cplx(0, 1) * std::sin(xi_angle) * minus_state();
}

ProjectiveMeasurement cnot_eta_measurement(double eta) {
  const Vector m0 = std::cos(eta) * plus_state() + std::sin(eta) * minus_state();
  const Vector m1 = std::sin(eta) * plus_state() - std::cos(eta) * minus_state();
  return make_measurement({m0, m1}, {"m0", "m1"});
}

CnotEtaResult cnot_eta_analysis(double eta, double xi_angle) {
  CnotEtaResult out;
  const double c = std::cos(xi_angle) * std::cos(eta);
  const double s = std::sin(xi_angle) * std::sin(eta);
  out.p_success = c * c + s * s;
  out.phi = out.p_success > 1e-15 ? std::acos(c / std::sqrt(out.p_success)) : 0.0;
  const double half_periods = eta / (M_PI / 2.0);
  out.degenerate = std::abs(half_periods - std::round(half_periods)) < 1e-12;
  return out;
}

double cnot_eta_worst_success(double eta) {
  const double c = std::cos(eta), s = std::sin(eta);
  return std::min(c * c, s * s);
}

double cnot_eta_average_success(double eta, int grid) {
  if (grid < 2) throw std::invalid_argument("cnot_eta_average_success: grid too small");
  double sum = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double xi = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(grid);
    sum += cnot_eta_analysis(eta, xi).p_success;
  }
  return sum / static_cast<double>(grid);
}

double cnot_success_lower_bound(double phi, int grid) {
  double best = 0.0;
  for (int k = 1; k < grid; ++k) {
    const double eta = M_PI / 2.0 * static_cast<double>(k) / static_cast<double>(grid);
    // Program angle realizing phi in the success branch: tan(xi) = tan(phi)/tan(eta).
    const double xi = std::atan2(std::tan(phi) * std::cos(eta), std::sin(eta));
    const CnotEtaResult r = cnot_eta_analysis(eta, xi);
    if (std::abs(r.phi - std::abs(phi)) < 1e-9) best = std::max(best, r.p_success);
  }
  return best;
}

VmcResult vmc_simulate(int n, double phi) {
  const Processor p = vmc_processor(n);
  const Index n_prog = p.dims.program;
  Vector xi(1);
  xi(0) = 1.0;
  for (int k = 1; k <= n; ++k) {
    const double theta = std::ldexp(phi, k - 1);  // 2^{k-1} phi
    Vector q(2);
    q(0) = std::exp(cplx(0, theta)) / std::sqrt(2.0);
    q(1) = std::exp(cplx(0, -theta)) / std::sqrt(2.0);
    xi = kron(xi, q);
  }
  const Matrix target = u1_rotation(phi, {0.0, 0.0, 1.0});  // exp(i phi sigma_z)
  std::vector<BranchReport> reports = branches(p, xi, computational_measurement(n_prog));
  classify_against_target(reports, target);

  VmcResult out;
  out.total_branches = static_cast<long>(reports.size());
  std::vector<Matrix> success_ops;
  double p_success = 0.0;
  for (const BranchReport& r : reports) {
    if (!r.matches_target) continue;
    ++out.matched_branches;
    p_success += *r.probability;
    success_ops.push_back(r.op);
  }
  out.p_success = p_success;
  if (!success_ops.empty()) {
    const double scale = 1.0 / std::sqrt(p_success);
    for (Matrix& k : success_ops) k *= scale;
    out.conditional_fidelity =
        process_fidelity_unitary(target, make_channel(std::move(success_ops)));
  }
  return out;
}

InequalityResult error_epsilon_inequality(const Processor& p,
                                          const ProjectiveMeasurement& m,
                                          const Vector& xi, const Matrix& u) {
  InequalityResult out;
  out.p_error = 1.0 - success_probability(p, m, xi, u);
  out.epsilon = epsilon_of_target(p, u).epsilon;
  out.gap = out.p_error - out.epsilon;
  out.holds = out.gap >= -1e-8;
  return out;
}

U1SuccessBounds u1_success_bounds(Index n_programs) {
  if (n_programs < 1)
    throw std::invalid_argument("u1_success_bounds: N >= 1 required");
  const double N = static_cast<double>(n_programs);
  const double c = std::cos(M_PI / (2.0 * N));
  return {c * c, 0.5 * (1.0 + N / M_PI * std::sin(M_PI / N))};
}

namespace {

// Smooth surrogate for the thresholded success score: branch contributions
// p_m * alignment^gamma, where alignment in [0,1] hits 1 iff K_m is
// proportional to the target.
double soft_success(const Processor& p, const std::vector<Vector>& mvecs,
                    const Vector& xi, const Matrix& u) {
  const KrausChannel ops = kraus_from_pure_program(p, xi, mvecs);
  const double d = static_cast<double>(p.dims.data);
  double score = 0.0;
  for (const Matrix& k : ops.ops) {
    const double weight = (k.adjoint() * k).trace().real() / d;
    if (weight < 1e-14) continue;
    const double align = std::norm((u.adjoint() * k).trace()) / (d * d * weight);
    score += weight * std::pow(std::min(1.0, align), 24);
  }
  return score;
}

std::vector<Vector> columns_of(const Matrix& m) {
  std::vector<Vector> cols;
  for (Index j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return cols;
}

// Small random unitary exp-like perturbation: I + step*(iH) re-orthonormalized.
Matrix small_rotation(Index n, double step, CounterRng& rng) {
  Matrix h = gaussian_matrix(n, n, rng);
  h = 0.5 * (h + Matrix(h.adjoint()));
  Matrix m = identity(n) + cplx(0, step) * h;
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const cplx diag = r(j, j);
    const double a = std::abs(diag);
    q.col(j) *= (a > 0.0) ? diag / a : cplx(1.0, 0.0);
  }
  return q;
}

}  // namespace

double max_success_lower_bound(const Processor& p, const Matrix& u,
                               const SuccessSearchOptions& opts) {
  const Index N = p.dims.program;
  CounterRng base(opts.seed);
  double best_hard = 0.0;

  auto evaluate_hard = [&](const Matrix& basis_cols, const Vector& xi) {
    const ProjectiveMeasurement m = make_measurement(columns_of(basis_cols));
    best_hard = std::max(best_hard, success_probability(p, m, xi, u));
  };

  // Structured starting points.
  std::vector<std::pair<Matrix, Vector>> starts;
  {
    Matrix comp = identity(N);
    starts.emplace_back(comp, Vector(epsilon_of_target(p, u).optimal_program));
    if (p.dims.data * p.dims.data == N) {
      const ProjectiveMeasurement qid = qid_measurement_basis(p.dims.data);
      Matrix cols(N, N);
      for (Index j = 0; j < N; ++j) cols.col(j) = qid.vectors[j];
      starts.emplace_back(cols, Vector(epsilon_of_target(p, u).optimal_program));
    }
  }
  for (int r = 0; r < opts.restarts; ++r) {
    CounterRng rng = base.stream(1000 + r);
    starts.emplace_back(haar_unitary(N, rng), haar_state(N, rng));
  }

  for (size_t s = 0; s < starts.size(); ++s) {
    Matrix basis_cols = starts[s].first;
    Vector xi = starts[s].second;
    CounterRng rng = base.stream(2000 + s);
    double step = 0.3;
    double score = soft_success(p, columns_of(basis_cols), xi, u);
    evaluate_hard(basis_cols, xi);
    int stall = 0;
    for (int it = 0; it < opts.iterations; ++it) {
      const bool move_measurement = (it % 2 == 0);
      Matrix cand_basis = basis_cols;
      Vector cand_xi = xi;
      if (move_measurement) {
        cand_basis = small_rotation(N, step, rng) * basis_cols;
      } else {
        cand_xi = xi + step * haar_state(N, rng);
        cand_xi /= cand_xi.norm();
      }
      const double cand = soft_success(p, columns_of(cand_basis), cand_xi, u);
      if (cand > score) {
        score = cand;
        basis_cols = cand_basis;
        xi = cand_xi;
        stall = 0;
      } else if (++stall > 20) {
        step *= 0.5;
        stall = 0;
        if (step < 1e-8) break;
      }
    }
    evaluate_hard(basis_cols, xi);
  }
  return best_hard;
}

}  // namespace qproc
