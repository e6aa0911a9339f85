#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qproc/metrics.hpp"
#include "qproc/processor.hpp"

namespace qproc {

/// One conditional branch of a measurement-assisted run: the (trace
/// decreasing) branch operator K_m = (I (x) <m|) G (I (x) |Xi>), its outcome
/// probability when data-independent, and the match verdict against a target
/// once classified.
struct BranchReport {
  std::string outcome;
  Matrix op;
  /// Scalar probability when K^dag K is proportional to the identity;
  /// nullopt marks a data-dependent branch (probability <m|rho|m>-like).
  std::optional<double> probability;
  bool matches_target = false;
  cplx phase{1.0, 0.0};
};

/// All conditional branches of processor + pure program + program measurement.
std::vector<BranchReport> branches(const Processor& p, const Vector& xi,
                                   const ProjectiveMeasurement& m);

/// Marks branches whose operator is a unimodular multiple of sqrt(p) * U and
/// records the phase. Proportionality tolerance 1e-8 by default.
void classify_against_target(std::vector<BranchReport>& reports, const Matrix& u,
                             double tol = 1e-8);

/// Total probability of branches realizing U up to a global phase, for the
/// fixed measurement and program. Zero when no branch matches.
double success_probability(const Processor& p, const ProjectiveMeasurement& m,
                           const Vector& xi, const Matrix& u, double tol = 1e-8);

/// Measurement-assisted CNOT processor with measurement angle eta and program
/// angle xi, both parameterized in the |+>,|-> program basis:
///   program     |Xi>  = cos(xi)|+> - i sin(xi)|->
///   measurement |m_0> = cos(eta)|+> + sin(eta)|->,
///               |m_1> = sin(eta)|+> - cos(eta)|->.
/// Branch m_0 realizes the z-rotation exp(-i phi sigma_z) with
///   phi = arccos(cos(xi) cos(eta) / sqrt(P)),
///   P   = cos^2(xi) cos^2(eta) + sin^2(xi) sin^2(eta).
/// eta near a multiple of pi/2 is degenerate: only I or sigma_z comes out.
struct CnotEtaResult {
  double phi = 0.0;
  double p_success = 0.0;
  bool degenerate = false;
};
CnotEtaResult cnot_eta_analysis(double eta, double xi_angle);

Vector cnot_program(double xi_angle);
ProjectiveMeasurement cnot_eta_measurement(double eta);

/// min{cos^2 eta, sin^2 eta}: the worst success over the rotation family.
double cnot_eta_worst_success(double eta);

/// Average of the branch-0 success probability over uniformly random program
/// angles (trapezoid over [0, 2 pi)); equals 1/2 for every eta.
double cnot_eta_average_success(double eta, int grid = 4096);

/// Best success for target exp(-i phi sigma_z) over the real (eta, xi)
/// measurement family, scanned on an eta grid. A deterministic lower bound
/// on the optimal measurement-varying success probability.
double cnot_success_lower_bound(double phi, int grid = 4096);

/// Exact branch tracking of the repeat-until-success Toffoli cascade:
/// program qubit k encodes angle 2^{k-1} phi, all program qubits are measured
/// in the computational basis, and every outcome except all-ones realizes
/// exp(i phi sigma_z). No sampling involved.
struct VmcResult {
  double p_success = 0.0;
  double conditional_fidelity = 0.0;
  long matched_branches = 0;   ///< exactly 2^n - 1
  long total_branches = 0;     ///< 2^n
};
VmcResult vmc_simulate(int n, double phi);

struct InequalityResult {
  double p_error = 0.0;
  double epsilon = 0.0;
  bool holds = false;
  double gap = 0.0;  ///< p_error - epsilon
};

/// Checks P_error >= epsilon (within 1e-8) for the given configuration.
InequalityResult error_epsilon_inequality(const Processor& p,
                                          const ProjectiveMeasurement& m,
                                          const Vector& xi, const Matrix& u);

struct U1SuccessBounds {
  double worst = 0.0;    ///< cos^2(pi / 2N)
  double average = 0.0;  ///< (1 + (N/pi) sin(pi/N)) / 2
};
U1SuccessBounds u1_success_bounds(Index n_programs);

/// Numerical lower bound on the measurement-and-program-optimized success
/// probability: random restarts plus coordinate ascent that alternately
/// perturbs the measurement basis and the program state. The true optimum
/// may be higher; treat the result as a floor, never a value.
struct SuccessSearchOptions {
  int restarts = 8;
  int iterations = 300;
  std::uint64_t seed = 1;
};
double max_success_lower_bound(const Processor& p, const Matrix& u,
                               const SuccessSearchOptions& opts = {});

}  // namespace qproc
