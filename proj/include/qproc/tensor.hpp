#pragma once

#include <cstdint>

#include "qproc/common.hpp"
#include "qproc/rng.hpp"

namespace qproc {

/// Kronecker (tensor) product, row-major index convention:
/// entry ((i*p + k), (j*q + l)) = A(i,j) * B(k,l) for B of size p x q.
Matrix kron(const Matrix& A, const Matrix& B);
Vector kron(const Vector& a, const Vector& b);

/// Trace out one register of an operator on the joint data (x) program space.
/// Throws on dimension mismatch.
Matrix partial_trace(const Matrix& M, Dims dims, Register keep);

/// Hermitian PSD square root via eigendecomposition. Eigenvalues in
/// [-psd_slack, 0) are clamped to zero; anything lower throws.
Matrix psd_sqrt(const Matrix& M, double psd_slack = 1e-10);

/// Uhlmann state fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double state_fidelity(const Matrix& rho, const Matrix& sigma);

/// Maximally entangled |psi+> = (1/sqrt d) sum_j |j>|j> on a d*d space.
Vector max_entangled(Index d);

/// Haar-distributed random unitary (Gaussian matrix, QR, phase fix on the
/// R diagonal). Deterministic for a given generator state.
Matrix haar_unitary(Index d, CounterRng& rng);
Matrix haar_unitary(Index d, std::uint64_t seed);

/// Gaussian complex matrix, i.i.d. N(0,1) real and imaginary parts.
Matrix gaussian_matrix(Index rows, Index cols, CounterRng& rng);

/// Haar-random pure state on dimension d.
Vector haar_state(Index d, CounterRng& rng);

/// Random density matrix (partial trace of a Haar-random bipartite pure state).
Matrix random_density(Index d, CounterRng& rng);

// Small constructors used throughout.
Vector basis_ket(Index d, Index j);
Matrix projector(const Vector& v);

bool is_density(const Matrix& m, double tol = kDefaultTol);

/// Qubit Paulis: pauli(0..3) = I, sigma_x, sigma_y, sigma_z.
Matrix pauli(int k);

}  // namespace qproc
