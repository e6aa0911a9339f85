#include "qproc/metrics.hpp"

#include <cmath>

#include "qproc/zoo.hpp"

namespace qproc {

double process_fidelity_unitary(const Matrix& u, const KrausChannel& c) {
  const Index d = u.rows();
  if (d != c.dim())
    throw std::invalid_argument("process_fidelity_unitary: dimension mismatch");
  double sum = 0.0;
  for (const Matrix& a : c.ops) {
    const cplx overlap = (u.adjoint() * a).trace();
    sum += std::norm(overlap);
  }
  return clamp01(sum / static_cast<double>(d * d));
}

double process_fidelity(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("process_fidelity: dimension mismatch");
  return state_fidelity(choi(a), choi(b));
}

FidelityReport fidelity_report(const KrausChannel& channel, const KrausChannel& target) {
  if (target.ops.size() == 1 && is_unitary(target.ops.front(), 1e-9))
    return {process_fidelity_unitary(target.ops.front(), channel),
            FidelityMethod::unitary_closed_form};
  return {process_fidelity(channel, target), FidelityMethod::choi_general};
}

Matrix program_fidelity_operator(const Processor& p, const Matrix& u) {
  const Index d = p.dims.data, N = p.dims.program;
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("program_fidelity_operator: target dimension mismatch");
  // For pure programs, Tr U^dag A_j(Xi) = t_j . Xi with
  // t_j(b) = sum_{r,s} conj(U(r,s)) G(r*N + j, s*N + b); then
  // R_U = (1/d^2) sum_j conj(t_j) t_j^T satisfies F = Tr(xi R_U).
  Matrix r = Matrix::Zero(N, N);
  Vector t(N);
  for (Index j = 0; j < N; ++j) {
    t.setZero();
    for (Index row = 0; row < d; ++row)
      for (Index col = 0; col < d; ++col) {
        const cplx w = std::conj(u(row, col));
        if (w == cplx(0, 0)) continue;
        for (Index b = 0; b < N; ++b) t(b) += w * p.gate(row * N + j, col * N + b);
      }
    r += t.conjugate() * t.transpose();
  }
  r /= static_cast<double>(d * d);
  // Symmetrize away roundoff.
  return 0.5 * (r + Matrix(r.adjoint()));
}

EpsilonReport epsilon_of_target(const Processor& p, const Matrix& u) {
  const Matrix r = program_fidelity_operator(p, u);
  Eigen::SelfAdjointEigenSolver<Matrix> es(r);
  const Index top = es.eigenvalues().size() - 1;
  const double lambda_max = es.eigenvalues()(top);
  EpsilonReport report;
  report.epsilon = clamp01(1.0 - clamp01(lambda_max));
  report.optimal_program = es.eigenvectors().col(top);
  report.top_multiplicity = 0;
  for (Index i = 0; i <= top; ++i)
    if (lambda_max - es.eigenvalues()(i) <= 1e-9) ++report.top_multiplicity;
  return report;
}

double epsilon_worst_u1(const Processor& p, const std::array<double, 3>& axis, int grid) {
  if (grid < 2) throw std::invalid_argument("epsilon_worst_u1: grid too small");
  if (p.dims.data != 2)
    throw std::invalid_argument("epsilon_worst_u1: qubit data register required");
  double worst = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double phi = M_PI * static_cast<double>(k) / static_cast<double>(grid);
    worst = std::max(worst, epsilon_of_target(p, u1_rotation(phi, axis)).epsilon);
  }
  return worst;
}

double epsilon_avg_u1(const Processor& p, const std::array<double, 3>& axis, int grid) {
  if (grid < 2) throw std::invalid_argument("epsilon_avg_u1: grid too small");
  if (p.dims.data != 2)
    throw std::invalid_argument("epsilon_avg_u1: qubit data register required");
  // Periodic trapezoid over [0, 2 pi); the integrand is piecewise smooth.
  double sum = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double phi = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(grid);
    sum += epsilon_of_target(p, u1_rotation(phi, axis)).epsilon;
  }
  return sum / static_cast<double>(grid);
}

WorstCaseReport epsilon_worst_haar(const Processor& p, int samples, std::uint64_t seed,
                                   const std::optional<Matrix>& witness) {
  WorstCaseReport report;
  report.samples = samples;
  CounterRng base(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    CounterRng rng = base.stream(static_cast<std::uint64_t>(i));
    const Matrix u = haar_unitary(p.dims.data, rng);
    const double eps = epsilon_of_target(p, u).epsilon;
    sum += eps;
    sum_sq += eps * eps;
    if (eps > report.sample_max) {
      report.sample_max = eps;
      report.argmax_unitary = u;
    }
  }
  if (samples > 0) {
    report.sample_mean = sum / samples;
    if (samples > 1) {
      const double var = (sum_sq - sum * sum / samples) / (samples - 1);
      report.sample_stderr = std::sqrt(std::max(0.0, var) / samples);
    }
  }
  report.epsilon = report.sample_max;
  if (witness) {
    report.witness_epsilon = epsilon_of_target(p, *witness).epsilon;
    report.epsilon = std::max(report.epsilon, *report.witness_epsilon);
  }
  return report;
}

std::optional<Matrix> qid_worst_witness(Index d) {
  if (d == 2) {
    // exp(i (pi/3) (sx+sy+sz)/sqrt(3)) = (I + i(sx+sy+sz)) / 2: every Pauli
    // coefficient has modulus 1/2.
    return Matrix(0.5 * (pauli(0) + cplx(0, 1) * (pauli(1) + pauli(2) + pauli(3))));
  }
  if (d % 2 == 1) {
    // Discrete Fourier matrix: |Tr U_ab^dag F| = 1 for every Weyl index when
    // d is odd (quadratic Gauss sum has modulus sqrt(d)).
    Matrix f(d, d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index r = 0; r < d; ++r)
      for (Index s = 0; s < d; ++s) {
        const double angle = 2.0 * M_PI * static_cast<double>(r * s) / static_cast<double>(d);
        f(r, s) = amp * cplx(std::cos(angle), std::sin(angle));
      }
    return f;
  }
  return std::nullopt;
}

UniversalityReport universality_check(const Processor& p) {
  const Index d = p.dims.data, N = p.dims.program;
  // Stack the vectorized blocks A_jk and count independent directions.
  Matrix stacked(N * N, d * d);
  for (Index j = 0; j < N; ++j)
    for (Index k = 0; k < N; ++k)
      for (Index r = 0; r < d; ++r)
        for (Index s = 0; s < d; ++s)
          stacked(j * N + k, r * d + s) = p.gate(r * N + j, s * N + k);
  Eigen::JacobiSVD<Matrix> svd(stacked);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return {rank == d * d, rank};
}

double universal_lower_bound(Index d) {
  if (d < 2) throw std::invalid_argument("universal_lower_bound: d >= 2 required");
  return 1.0 - 1.0 / static_cast<double>(d * d);
}

}  // namespace qproc
