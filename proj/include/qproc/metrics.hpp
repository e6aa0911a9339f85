#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "qproc/processor.hpp"

namespace qproc {

enum class FidelityMethod { unitary_closed_form, choi_general };

struct FidelityReport {
  double value = 0.0;
  FidelityMethod method = FidelityMethod::choi_general;
};

/// Process fidelity of a trace-preserving channel against a unitary target:
/// F(U, E) = (1/d^2) sum_r |Tr U^dag A_r|^2.
double process_fidelity_unitary(const Matrix& u, const KrausChannel& c);

/// Process fidelity of two trace-preserving channels (state fidelity of
/// their Choi matrices).
double process_fidelity(const KrausChannel& a, const KrausChannel& b);

/// Dispatches to the unitary closed form when the target is a single
/// unitary Kraus operator, otherwise to the Choi route.
FidelityReport fidelity_report(const KrausChannel& channel, const KrausChannel& target);

/// The fidelity of target U over programs is linear in the program density:
/// F(U, E_xi) = Tr(xi R_U). Returns the Hermitian PSD operator R_U on the
/// program space; its top eigenpair solves the program optimization exactly.
Matrix program_fidelity_operator(const Processor& p, const Matrix& u);

struct EpsilonReport {
  double epsilon = 0.0;
  Vector optimal_program;
  /// Eigenvalue multiplicity at the top of R_U (>1 means several equally
  /// good orthogonal programs, e.g. the phi = pi/4 tie on the CNOT).
  int top_multiplicity = 1;
  std::optional<Matrix> witness_target;
};

/// Best achievable approximation error for target U over all program
/// states: epsilon = 1 - lambda_max(R_U), attained at the top eigenvector.
EpsilonReport epsilon_of_target(const Processor& p, const Matrix& u);

/// Worst/average error over the rotation family U_phi = cos(phi) I +
/// i sin(phi) (axis . sigma), by grid maximization on [0, pi) and
/// trapezoidal quadrature on [0, 2 pi).
double epsilon_worst_u1(const Processor& p, const std::array<double, 3>& axis,
                        int grid = 4096);
double epsilon_avg_u1(const Processor& p, const std::array<double, 3>& axis,
                      int grid = 4096);

struct WorstCaseReport {
  double epsilon = 0.0;       ///< max(sample_max, witness value); a lower bound on eps_G
  double sample_max = 0.0;
  Matrix argmax_unitary;
  double sample_mean = 0.0;
  double sample_stderr = 0.0;
  std::optional<double> witness_epsilon;
  int samples = 0;
};

/// Haar-sampled worst-case error, optionally combined with an analytic
/// witness target. The sample max alone is only a lower bound on the true
/// supremum; the report keeps both contributions separate.
WorstCaseReport epsilon_worst_haar(const Processor& p, int samples,
                                   std::uint64_t seed,
                                   const std::optional<Matrix>& witness = {});

/// A unitary with flat overlaps |Tr U_k^dag W|^2 = 1 across the whole Weyl
/// basis; it attains epsilon = 1 - 1/d^2 on the QID processor. Available
/// for d = 2 (the (I + i(sx+sy+sz))/2 rotation) and odd d (the Fourier
/// matrix, via the quadratic Gauss sum).
std::optional<Matrix> qid_worst_witness(Index d);

struct UniversalityReport {
  bool universal = false;
  Index operator_rank = 0;
};

/// Extracts the blocks A_jk = (I (x) <j|) G (I (x) |k>) and computes the
/// dimension of their span in operator space; the processor can reach every
/// unitary with nonzero fidelity iff the span is complete (rank d^2).
UniversalityReport universality_check(const Processor& p);

/// Error floor 1 - 1/d^2 for any universal processor (it can contract to
/// the total mixture, which keeps distance at least this from any unitary).
double universal_lower_bound(Index d);

}  // namespace qproc
