#include "qproc/tensor.hpp"

#include <cmath>

namespace qproc {

Matrix kron(const Matrix& A, const Matrix& B) {
  const Index p = B.rows(), q = B.cols();
  Matrix out(A.rows() * p, A.cols() * q);
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j)
      out.block(i * p, j * q, p, q) = A(i, j) * B;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix partial_trace(const Matrix& M, Dims dims, Register keep) {
  const Index d = dims.data, N = dims.program;
  if (M.rows() != d * N || M.cols() != d * N)
    throw std::invalid_argument("partial_trace: operator is not on the joint space");
  if (keep == Register::data) {
    Matrix out = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        for (Index k = 0; k < N; ++k) out(i, j) += M(i * N + k, j * N + k);
    return out;
  }
  Matrix out = Matrix::Zero(N, N);
  for (Index a = 0; a < N; ++a)
    for (Index b = 0; b < N; ++b)
      for (Index i = 0; i < d; ++i) out(a, b) += M(i * N + a, i * N + b);
  return out;
}

Matrix psd_sqrt(const Matrix& M, double psd_slack) {
  if (!is_hermitian(M, psd_slack))
    throw std::invalid_argument("psd_sqrt: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  Eigen::VectorXd vals = es.eigenvalues();
  // Rank-deficient inputs carry O(eps) eigenvalue noise that sqrt would
  // amplify to O(sqrt(eps)); treat those as exact zeros.
  const double cutoff = 1e-12 * std::max(1.0, vals.size() ? vals.maxCoeff() : 0.0);
  for (Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -psd_slack)
      throw std::invalid_argument("psd_sqrt: negative eigenvalue beyond tolerance");
    vals(i) = vals(i) > cutoff ? std::sqrt(vals(i)) : 0.0;
  }
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

double state_fidelity(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  const Matrix root = psd_sqrt(rho);
  const Matrix inner = root * sigma * root;
  Eigen::SelfAdjointEigenSolver<Matrix> es(inner, Eigen::EigenvaluesOnly);
  double trace_sqrt = 0.0;
  const double cutoff =
      1e-13 * std::max(1.0, es.eigenvalues().size() ? es.eigenvalues().maxCoeff() : 0.0);
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (v > cutoff) trace_sqrt += std::sqrt(v);
  }
  return clamp01(trace_sqrt * trace_sqrt);
}

Vector max_entangled(Index d) {
  Vector v = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index j = 0; j < d; ++j) v(j * d + j) = amp;
  return v;
}

double CounterRng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1-u keeps the log argument in (0, 1].
  const double u1 = 1.0 - next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Matrix gaussian_matrix(Index rows, Index cols, CounterRng& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
  return m;
}

Matrix haar_unitary(Index d, CounterRng& rng) {
  const Matrix A = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(A);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of the decomposition so Q is Haar distributed.
  for (Index j = 0; j < d; ++j) {
    const cplx r = R(j, j);
    const double a = std::abs(r);
    Q.col(j) *= (a > 0.0) ? r / a : cplx(1.0, 0.0);
  }
  return Q;
}

Matrix haar_unitary(Index d, std::uint64_t seed) {
  CounterRng rng(seed);
  return haar_unitary(d, rng);
}

Vector haar_state(Index d, CounterRng& rng) {
  Vector v(d);
  for (Index i = 0; i < d; ++i) v(i) = cplx(rng.next_gaussian(), rng.next_gaussian());
  return v / v.norm();
}

Matrix random_density(Index d, CounterRng& rng) {
  const Vector joint = haar_state(d * d, rng);
  return partial_trace(Matrix(projector(joint)), Dims{d, d}, Register::data);
}

Vector basis_ket(Index d, Index j) {
  Vector v = Vector::Zero(d);
  v(j) = 1.0;
  return v;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

bool is_density(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace() - cplx(1.0, 0.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

Matrix pauli(int k) {
  Matrix m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be 0..3");
  }
  return m;
}

}  // namespace qproc
