#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qproc/common.hpp"
#include "qproc/tensor.hpp"

namespace qproc {

/// A programmable processor: a fixed unitary G on the joint
/// data (x) program space. Which operation is applied to the data is
/// selected purely by the program state.
struct Processor {
  Matrix gate;
  Dims dims;
  std::string label;

  Processor(Matrix g, Dims d, std::string name);
};

/// A completely positive map on the data space given by Kraus operators.
/// Trace-preserving channels satisfy sum_r A_r^dag A_r = I; post-selected
/// branches are trace-decreasing (sum bounded by I).
struct KrausChannel {
  std::vector<Matrix> ops;
  bool trace_preserving = true;

  Index dim() const { return ops.empty() ? 0 : ops.front().rows(); }
};

/// Validate a Kraus list and classify it as trace-preserving or
/// trace-decreasing. Throws if sum_r A_r^dag A_r exceeds I beyond `tol`.
KrausChannel make_channel(std::vector<Matrix> ops, double tol = 1e-9);

/// Density operator on the program register.
struct ProgramState {
  Matrix rho;
  explicit ProgramState(Matrix density);
};

/// Orthonormal basis of a register, indexed by outcome labels.
struct ProjectiveMeasurement {
  std::vector<Vector> vectors;
  std::vector<std::string> labels;

  Index dim() const { return vectors.empty() ? 0 : vectors.front().size(); }
};

ProjectiveMeasurement make_measurement(std::vector<Vector> vectors,
                                       std::vector<std::string> labels = {},
                                       double tol = kDefaultTol);

/// Computational-basis measurement on an n-dimensional register.
ProjectiveMeasurement computational_measurement(Index n);

/// Kraus operators A_j = (I (x) <j|) G (I (x) |xi>) of the channel a pure
/// program induces, one per vector of the given program basis.
/// The default basis is computational.
KrausChannel kraus_from_pure_program(const Processor& p, const Vector& xi,
                                     const std::vector<Vector>& basis);
KrausChannel kraus_from_pure_program(const Processor& p, const Vector& xi);

/// Channel induced by an arbitrary (possibly mixed) program state:
/// spectral-decompose the program and concatenate sqrt(lambda)-weighted
/// Kraus sets of the eigenvectors. Eigenvalues below 1e-12 are dropped,
/// as are negligible operators, keeping the representation minimal.
KrausChannel induced_channel(const Processor& p, const ProgramState& xi);

/// Direct evaluation Tr_p[ G (rho (x) xi) G^dag ] without Kraus extraction.
Matrix apply_processor(const Processor& p, const Matrix& rho, const Matrix& xi);

Matrix apply_channel(const KrausChannel& c, const Matrix& rho);

/// Choi matrix (E (x) I)[|psi+><psi+|] on dimension d^2.
Matrix choi(const KrausChannel& c);

/// Checks whether two index-aligned Kraus sets could coexist on one
/// processor: sum_j E_j^dag F_j must be c*I, with c the overlap of the
/// encoding programs. Returns c on success, nullopt if the sets are
/// incompatible. The shorter list is padded with zero operators.
std::optional<cplx> compatibility_constant(const KrausChannel& E,
                                           const KrausChannel& F,
                                           double tol = 1e-9);

/// Convenience form of the compatibility check for two pure programs of the
/// same processor; the extractions share the computational program basis,
/// so they are index-aligned by construction.
std::optional<cplx> compatibility_constant(const Processor& p, const Vector& xi_e,
                                           const Vector& xi_f, double tol = 1e-9);

/// Minimal program dimension for hosting the given unitaries exactly and
/// deterministically: the number of proportionality classes (U ~ V iff
/// U^dag V is a unimodular multiple of the identity).
Index unitary_program_dimension(const std::vector<Matrix>& unitaries,
                                double tol = 1e-9);

}  // namespace qproc
