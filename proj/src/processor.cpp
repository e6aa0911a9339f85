#include "qproc/processor.hpp"

#include <cmath>

namespace qproc {

namespace {

// (I_d (x) |xi>): embeds the data space into the joint space at fixed program.
Matrix embed_program(const Vector& xi, Index d) {
  const Index N = xi.size();
  Matrix out = Matrix::Zero(d * N, d);
  for (Index i = 0; i < d; ++i) out.block(i * N, i, N, 1) = xi;
  return out;
}

}  // namespace

Processor::Processor(Matrix g, Dims d, std::string name)
    : gate(std::move(g)), dims(d), label(std::move(name)) {
  if (dims.data < 2 || dims.program < 1)
    throw std::invalid_argument("Processor: need data dim >= 2 and program dim >= 1");
  if (gate.rows() != dims.joint() || gate.cols() != dims.joint())
    throw std::invalid_argument("Processor: gate does not act on the joint space");
  if (!is_unitary(gate))
    throw std::invalid_argument("Processor: gate is not unitary");
}

KrausChannel make_channel(std::vector<Matrix> ops, double tol) {
  if (ops.empty()) throw std::invalid_argument("make_channel: empty Kraus list");
  const Index d = ops.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& a : ops) {
    if (a.rows() != d || a.cols() != d)
      throw std::invalid_argument("make_channel: mixed operator dimensions");
    sum += a.adjoint() * a;
  }
  KrausChannel c{std::move(ops), true};
  if (max_abs(sum - identity(d)) <= tol) return c;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().maxCoeff() > 1.0 + tol)
    throw std::invalid_argument("make_channel: Kraus sum exceeds identity");
  c.trace_preserving = false;
  return c;
}

ProgramState::ProgramState(Matrix density) : rho(std::move(density)) {
  if (!is_density(rho))
    throw std::invalid_argument("ProgramState: not a density matrix");
}

ProjectiveMeasurement make_measurement(std::vector<Vector> vectors,
                                       std::vector<std::string> labels, double tol) {
  if (vectors.empty()) throw std::invalid_argument("make_measurement: no vectors");
  const Index n = vectors.front().size();
  for (size_t i = 0; i < vectors.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      const cplx g = vectors[i].adjoint() * vectors[j];
      const cplx want = i == j ? cplx(1, 0) : cplx(0, 0);
      if (std::abs(g - want) > tol)
        throw std::invalid_argument("make_measurement: vectors are not orthonormal");
    }
  if (static_cast<Index>(vectors.size()) != n)
    throw std::invalid_argument("make_measurement: basis does not span the register");
  if (labels.empty())
    for (size_t i = 0; i < vectors.size(); ++i) labels.push_back(std::to_string(i));
  if (labels.size() != vectors.size())
    throw std::invalid_argument("make_measurement: label count mismatch");
  return ProjectiveMeasurement{std::move(vectors), std::move(labels)};
}

ProjectiveMeasurement computational_measurement(Index n) {
  std::vector<Vector> vecs;
  for (Index j = 0; j < n; ++j) vecs.push_back(basis_ket(n, j));
  return make_measurement(std::move(vecs));
}

KrausChannel kraus_from_pure_program(const Processor& p, const Vector& xi,
                                     const std::vector<Vector>& basis) {
  const Index d = p.dims.data, N = p.dims.program;
  if (xi.size() != N)
    throw std::invalid_argument("kraus_from_pure_program: program dimension mismatch");
  if (std::abs(xi.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("kraus_from_pure_program: program is not normalized");
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      const cplx g = basis[i].adjoint() * basis[j];
      if (std::abs(g - (i == j ? cplx(1, 0) : cplx(0, 0))) > kDefaultTol)
        throw std::invalid_argument("kraus_from_pure_program: basis not orthonormal");
    }
  if (static_cast<Index>(basis.size()) != N)
    throw std::invalid_argument("kraus_from_pure_program: basis size mismatch");

  const Matrix applied = p.gate * embed_program(xi, d);  // (dN) x d
  std::vector<Matrix> ops;
  ops.reserve(basis.size());
  for (const Vector& b : basis) {
    Matrix a(d, d);
    for (Index i = 0; i < d; ++i)
      a.row(i) = b.adjoint() * applied.block(i * N, 0, N, d);
    ops.push_back(std::move(a));
  }
  return make_channel(std::move(ops));
}

KrausChannel kraus_from_pure_program(const Processor& p, const Vector& xi) {
  std::vector<Vector> basis;
  for (Index j = 0; j < p.dims.program; ++j) basis.push_back(basis_ket(p.dims.program, j));
  return kraus_from_pure_program(p, xi, basis);
}

namespace {

// Rewrites a Kraus list as the minimal equivalent one: SVD of the stacked
// vectorized operators; the right singular vectors above the cutoff are the
// canonical operators. Removes both zero and linearly dependent terms.
std::vector<Matrix> minimal_kraus(const std::vector<Matrix>& ops) {
  const Index d = ops.front().rows();
  Matrix stacked(static_cast<Index>(ops.size()), d * d);
  for (size_t i = 0; i < ops.size(); ++i)
    for (Index r = 0; r < d; ++r)
      for (Index s = 0; s < d; ++s)
        stacked(static_cast<Index>(i), r * d + s) = ops[i](r, s);
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-12 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  std::vector<Matrix> out;
  for (Index r = 0; r < sv.size(); ++r) {
    if (sv(r) <= cutoff) continue;
    Matrix b(d, d);
    for (Index row = 0; row < d; ++row)
      for (Index col = 0; col < d; ++col)
        b(row, col) = sv(r) * std::conj(svd.matrixV()(row * d + col, r));
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

KrausChannel induced_channel(const Processor& p, const ProgramState& xi) {
  constexpr double kEigCut = 1e-12;
  Eigen::SelfAdjointEigenSolver<Matrix> es(xi.rho);
  std::vector<Matrix> ops;
  for (Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lambda = es.eigenvalues()(k);
    if (lambda < kEigCut) continue;
    Vector v = es.eigenvectors().col(k);
    v /= v.norm();
    const double w = std::sqrt(lambda);
    for (Matrix& a : kraus_from_pure_program(p, v).ops) {
      if (max_abs(a) < 1e-12) continue;
      ops.push_back(w * a);
    }
  }
  return make_channel(minimal_kraus(ops));
}

Matrix apply_processor(const Processor& p, const Matrix& rho, const Matrix& xi) {
  const Matrix joint = p.gate * kron(rho, xi) * p.gate.adjoint();
  return partial_trace(joint, p.dims, Register::data);
}

Matrix apply_channel(const KrausChannel& c, const Matrix& rho) {
  if (rho.rows() != c.dim() || rho.cols() != c.dim())
    throw std::invalid_argument("apply_channel: dimension mismatch");
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& a : c.ops) out += a * rho * a.adjoint();
  return out;
}

Matrix choi(const KrausChannel& c) {
  const Index d = c.dim();
  const double scale = 1.0 / static_cast<double>(d);
  Matrix out = Matrix::Zero(d * d, d * d);
  for (const Matrix& a : c.ops) {
    // (A (x) I)|psi+> is the row-major vectorization of A / sqrt(d).
    Vector w(d * d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) w(i * d + j) = a(i, j);
    out += scale * (w * w.adjoint());
  }
  return out;
}

std::optional<cplx> compatibility_constant(const KrausChannel& E,
                                           const KrausChannel& F, double tol) {
  const Index d = E.dim();
  if (d != F.dim())
    throw std::invalid_argument("compatibility_constant: dimension mismatch");
  Matrix sum = Matrix::Zero(d, d);
  const size_t n = std::max(E.ops.size(), F.ops.size());
  for (size_t j = 0; j < n; ++j) {
    if (j >= E.ops.size() || j >= F.ops.size()) continue;  // zero-padded term
    sum += E.ops[j].adjoint() * F.ops[j];
  }
  const cplx c = sum.trace() / static_cast<double>(d);
  if (max_abs(sum - c * identity(d)) > tol) return std::nullopt;
  return c;
}

std::optional<cplx> compatibility_constant(const Processor& p, const Vector& xi_e,
                                           const Vector& xi_f, double tol) {
  return compatibility_constant(kraus_from_pure_program(p, xi_e),
                                kraus_from_pure_program(p, xi_f), tol);
}

Index unitary_program_dimension(const std::vector<Matrix>& unitaries, double tol) {
  std::vector<Matrix> classes;
  for (const Matrix& u : unitaries) {
    if (!is_unitary(u, tol))
      throw std::invalid_argument("unitary_program_dimension: non-unitary input");
    bool found = false;
    for (const Matrix& rep : classes) {
      const Matrix prod = rep.adjoint() * u;
      const cplx c = prod.trace() / static_cast<double>(u.rows());
      if (std::abs(std::abs(c) - 1.0) <= tol &&
          max_abs(prod - c * identity(u.rows())) <= tol) {
        found = true;
        break;
      }
    }
    if (!found) classes.push_back(u);
  }
  return static_cast<Index>(classes.size());
}

}  // namespace qproc
