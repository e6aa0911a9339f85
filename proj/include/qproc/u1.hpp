#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qproc/common.hpp"

namespace qproc {

/// Optimal program angles for hosting the rotation group on N programs:
/// the equally spaced grid phi_j = (j-1) pi / N, j = 1..N.
std::vector<double> optimal_angles(Index n_programs);

/// |Tr U_phi^dag U_phi'|^2 evaluated from the explicit 2x2 rotations
/// (closed form: 4 cos^2(phi' - phi)).
double u1_overlap(double phi, double phi_prime);

/// Closed-form figures of merit of the equally spaced N-program rotation
/// processor, plus the repeat-until-success value when N is a power of two.
struct U1Report {
  Index n_programs = 0;
  double epsilon_worst = 0.0;  ///< 1 - cos^2(pi / 2N)
  double epsilon_avg = 0.0;    ///< (1 - (N/pi) sin(pi/N)) / 2
  double p_bound_worst = 0.0;  ///< cos^2(pi / 2N)
  double p_bound_avg = 0.0;    ///< (1 + (N/pi) sin(pi/N)) / 2
  std::optional<double> vmc_success;  ///< 1 - 1/N, only for N = 2^n
};
U1Report u1_report(Index n_programs);

/// Confirms the equal-spacing grid is worst-case optimal: every random
/// perturbation of the angle set yields a worst-case error at least as
/// large (within 1e-9). Returns false if any perturbation beat the grid.
bool grid_optimality_check(Index n_programs, int perturbations, std::uint64_t seed);

}  // namespace qproc
