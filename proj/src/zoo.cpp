#include "qproc/zoo.hpp"

#include <cmath>

namespace qproc {

namespace {

Index mod(Index x, Index d) { return ((x % d) + d) % d; }

cplx root_of_unity(Index d, Index power) {
  const double angle = 2.0 * M_PI * static_cast<double>(power) / static_cast<double>(d);
  return cplx(std::cos(angle), std::sin(angle));
}

}  // namespace

Matrix generalized_pauli(Index d, Index a, Index b) {
  if (a < 0 || a >= d || b < 0 || b >= d)
    throw std::invalid_argument("generalized_pauli: index out of range");
  Matrix u = Matrix::Zero(d, d);
  for (Index r = 0; r < d; ++r) u(mod(r - b, d), r) = root_of_unity(d, a * r);
  return u;
}

Matrix generalized_pauli(Index d, Index k) {
  return generalized_pauli(d, k / d, k % d);
}

Processor cnot_processor() {
  const Vector plus = (basis_ket(2, 0) + basis_ket(2, 1)) / std::sqrt(2.0);
  const Vector minus = (basis_ket(2, 0) - basis_ket(2, 1)) / std::sqrt(2.0);
  const Matrix g = kron(pauli(0), projector(plus)) + kron(pauli(3), projector(minus));
  return Processor(g, Dims{2, 2}, "cnot");
}

std::vector<Vector> qid_program_basis(Index d) {
  const Vector theta0 = max_entangled(d);
  std::vector<Vector> basis;
  basis.reserve(d * d);
  for (Index k = 0; k < d * d; ++k) {
    const Matrix embedded = kron(identity(d), generalized_pauli(d, k));
    basis.push_back(embedded * theta0);
  }
  return basis;
}

Processor qid_processor(Index d) {
  if (d < 2) throw std::invalid_argument("qid_processor: d >= 2 required");
  const Index N = d * d;
  const std::vector<Vector> thetas = qid_program_basis(d);
  Matrix g = Matrix::Zero(d * N, d * N);
  for (Index k = 0; k < N; ++k)
    g += kron(generalized_pauli(d, k), projector(thetas[k]));
  return Processor(g, Dims{d, N}, "qid(" + std::to_string(d) + ")");
}

ProjectiveMeasurement qid_measurement_basis(Index d) {
  if (d < 2) throw std::invalid_argument("qid_measurement_basis: d >= 2 required");
  std::vector<Vector> vecs;
  std::vector<std::string> labels;
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index x = 0; x < d; ++x)
    for (Index y = 0; y < d; ++y) {
      Vector second = Vector::Zero(d);
      for (Index r = 0; r < d; ++r)
        second(mod(r - x, d)) += amp * root_of_unity(d, y * r);
      vecs.push_back(kron(Vector(basis_ket(d, mod(-x, d))), second));
      labels.push_back("m_" + std::to_string(x) + std::to_string(y));
    }
  return make_measurement(std::move(vecs), std::move(labels));
}

Processor swap_processor(Index d) {
  if (d < 2) throw std::invalid_argument("swap_processor: d >= 2 required");
  Matrix g = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(j * d + i, i * d + j) = 1.0;
  return Processor(g, Dims{d, d}, "swap(" + std::to_string(d) + ")");
}

Processor u_processor(const std::vector<Matrix>& unitaries, const std::string& label) {
  if (unitaries.empty()) throw std::invalid_argument("u_processor: no programs");
  const Index d = unitaries.front().rows();
  const Index N = static_cast<Index>(unitaries.size());
  Matrix g = Matrix::Zero(d * N, d * N);
  for (Index j = 0; j < N; ++j) {
    const Matrix& u = unitaries[j];
    if (u.rows() != d || u.cols() != d || !is_unitary(u))
      throw std::invalid_argument("u_processor: entry " + std::to_string(j) +
                                  " is not a unitary of the data dimension");
    for (Index r = 0; r < d; ++r)
      for (Index s = 0; s < d; ++s) g(r * N + j, s * N + j) = u(r, s);
  }
  return Processor(g, Dims{d, N}, label);
}

Matrix u1_rotation(double phi, const std::array<double, 3>& axis) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (norm < 1e-12) throw std::invalid_argument("u1_rotation: zero axis");
  Matrix dir = (axis[0] * pauli(1) + axis[1] * pauli(2) + axis[2] * pauli(3)) / norm;
  return std::cos(phi) * identity(2) + cplx(0, std::sin(phi)) * dir;
}

Processor u1_grid_processor(Index N, const std::array<double, 3>& axis) {
  if (N < 1) throw std::invalid_argument("u1_grid_processor: N >= 1 required");
  std::vector<Matrix> programs;
  for (Index j = 0; j < N; ++j)
    programs.push_back(u1_rotation(static_cast<double>(j) * M_PI / static_cast<double>(N), axis));
  return u_processor(programs, "u1grid(" + std::to_string(N) + ")");
}

Processor vmc_processor(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("vmc_processor: n must be 1..6");
  // n+1 qubits; qubit 0 is the data, qubits 1..n are the program.
  // Basis index packs qubit 0 as the most significant bit.
  const Index dim = Index(1) << (n + 1);
  Matrix g = identity(dim);
  for (int k = 1; k <= n; ++k) {
    Matrix t = Matrix::Zero(dim, dim);
    for (Index idx = 0; idx < dim; ++idx) {
      const Index controls = idx >> (n + 1 - k);        // qubits 0..k-1
      const bool fire = controls == ((Index(1) << k) - 1);
      const Index target_bit = Index(1) << (n - k);     // qubit k
      t((fire ? idx ^ target_bit : idx), idx) = 1.0;
    }
    g = t * g;
  }
  return Processor(g, Dims{2, Index(1) << n}, "vmc(" + std::to_string(n) + ")");
}

}  // namespace qproc
