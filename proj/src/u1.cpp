#include "qproc/u1.hpp"

#include <cmath>

#include "qproc/metrics.hpp"
#include "qproc/rng.hpp"
#include "qproc/zoo.hpp"

namespace qproc {

namespace {
constexpr std::array<double, 3> kZAxis{0.0, 0.0, 1.0};
}

std::vector<double> optimal_angles(Index n_programs) {
  if (n_programs < 1) throw std::invalid_argument("optimal_angles: N >= 1 required");
  std::vector<double> angles(n_programs);
  for (Index j = 0; j < n_programs; ++j)
    angles[j] = static_cast<double>(j) * M_PI / static_cast<double>(n_programs);
  return angles;
}

double u1_overlap(double phi, double phi_prime) {
  const Matrix a = u1_rotation(phi, kZAxis);
  const Matrix b = u1_rotation(phi_prime, kZAxis);
  return std::norm((a.adjoint() * b).trace());
}

U1Report u1_report(Index n_programs) {
  if (n_programs < 1) throw std::invalid_argument("u1_report: N >= 1 required");
  const double N = static_cast<double>(n_programs);
  U1Report r;
  r.n_programs = n_programs;
  const double c = std::cos(M_PI / (2.0 * N));
  r.epsilon_worst = 1.0 - c * c;
  r.epsilon_avg = 0.5 * (1.0 - N / M_PI * std::sin(M_PI / N));
  r.p_bound_worst = c * c;
  r.p_bound_avg = 0.5 * (1.0 + N / M_PI * std::sin(M_PI / N));
  if ((n_programs & (n_programs - 1)) == 0)
    r.vmc_success = 1.0 - 1.0 / N;
  return r;
}

bool grid_optimality_check(Index n_programs, int perturbations, std::uint64_t seed) {
  if (n_programs < 2)
    throw std::invalid_argument("grid_optimality_check: N >= 2 required");
  constexpr int kPhiGrid = 1024;
  auto worst_of = [&](const std::vector<double>& angles) {
    std::vector<Matrix> programs;
    for (double a : angles) programs.push_back(u1_rotation(a, kZAxis));
    return epsilon_worst_u1(u_processor(programs), kZAxis, kPhiGrid);
  };
  const double uniform = worst_of(optimal_angles(n_programs));
  CounterRng rng(seed);
  for (int t = 0; t < perturbations; ++t) {
    CounterRng sample = rng.stream(static_cast<std::uint64_t>(t));
    std::vector<double> angles(n_programs);
    angles[0] = 0.0;  // global rotation of the grid is a symmetry; anchor it
    for (Index j = 1; j < n_programs; ++j) angles[j] = sample.next_double() * M_PI;
    if (worst_of(angles) < uniform - 1e-9) return false;
  }
  return true;
}

}  // namespace qproc
