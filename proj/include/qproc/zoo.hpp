#pragma once

#include <array>

#include "qproc/processor.hpp"

namespace qproc {

/// Generalized Pauli (Weyl) unitary U_ab = sum_r e^{i 2 pi a r / d} |r-b><r|,
/// shifts taken mod d. The d^2 of them form an orthogonal operator basis,
/// Tr(U_j^dag U_k) = d delta_jk. For d=2 this gives {I, sz, sx, i*phase*sy}:
/// indices (0,0),(1,0),(0,1),(1,1) map to I, sigma_z, sigma_x, -i*sigma_y.
Matrix generalized_pauli(Index d, Index a, Index b);

/// Flat Weyl index k = a*d + b for the program ordering used by the QID.
Matrix generalized_pauli(Index d, Index k);

/// G = I (x) |+><+| + sigma_z (x) |-><-| on qubit data and qubit program.
/// Program |+> encodes the identity, |-> encodes sigma_z; mixtures give the
/// phase-damping family.
Processor cnot_processor();

/// Quantum information distributor: data qudit, two-qudit program (N = d^2),
/// G = sum_k U_k (x) |theta_k><theta_k| with U_k the Weyl unitaries and
/// |theta_k> = (I (x) U_k)|theta_0> the maximally entangled program basis
/// (for qubits, the Bell basis). Program |theta_k> induces U_k exactly.
Processor qid_processor(Index d);

/// The maximally entangled program basis {|theta_k>} of qid_processor(d).
std::vector<Vector> qid_program_basis(Index d);

/// Measurement basis |m_xy> = |-x> (x) (1/sqrt d) sum_r e^{i 2 pi y r / d} |r-x>
/// on the QID program space; outcome (0,0) heralds the programmed unitary.
ProjectiveMeasurement qid_measurement_basis(Index d);

/// SWAP of equally sized data and program registers; every program state
/// is the contraction of the data onto it.
Processor swap_processor(Index d);

/// G = sum_j U_j (x) |j><j| for the given elementary programs.
Processor u_processor(const std::vector<Matrix>& unitaries,
                      const std::string& label = "uproc");

/// Qubit rotation U_phi = cos(phi) I + i sin(phi) (axis . sigma).
Matrix u1_rotation(double phi, const std::array<double, 3>& axis);

/// U-processor hosting the N equally spaced rotations phi_j = (j-1) pi / N
/// about the given Bloch axis.
Processor u1_grid_processor(Index N, const std::array<double, 3>& axis);

/// Toffoli cascade on one data qubit and n program qubits:
/// G = T_n (T_{n-1} (x) I) ... (T_1 (x) I^{n-1}), where T_k controls on the
/// data and program qubits 1..k-1 and targets program qubit k.
Processor vmc_processor(int n);

}  // namespace qproc
