#include <doctest.h>

#include "qproc/metrics.hpp"
#include "qproc/zoo.hpp"

using namespace qproc;

namespace {

constexpr std::array<double, 3> kZ{0, 0, 1};

Vector plus_state() { return (basis_ket(2, 0) + basis_ket(2, 1)) / std::sqrt(2.0); }

KrausChannel phase_damping(double p) {
  return make_channel({Matrix(std::sqrt(p) * pauli(0)), Matrix(std::sqrt(1 - p) * pauli(3))});
}

KrausChannel mix(const std::vector<std::pair<double, KrausChannel>>& parts) {
  std::vector<Matrix> ops;
  for (const auto& [w, c] : parts)
    for (const Matrix& a : c.ops) ops.push_back(std::sqrt(w) * a);
  return make_channel(std::move(ops));
}

}  // namespace

TEST_CASE("process fidelity against a unitary") {
  CounterRng rng(1);
  for (int t = 0; t < 5; ++t) {
    const Matrix u = haar_unitary(3, rng);
    CHECK(process_fidelity_unitary(u, make_channel({u})) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  // F(I, phase damping p) = p
  CHECK(process_fidelity_unitary(identity(2), phase_damping(0.37)) ==
        doctest::Approx(0.37).epsilon(1e-12));
  // F(U_phi, sigma_z conjugation) = sin^2 phi, so at p=1: F(U_phi, id) = cos^2 phi
  const double phi = 0.6;
  const Matrix u_phi = u1_rotation(phi, kZ);
  CHECK(process_fidelity_unitary(u_phi, phase_damping(1.0)) ==
        doctest::Approx(std::cos(phi) * std::cos(phi)).epsilon(1e-12));
  CHECK_THROWS_AS(process_fidelity_unitary(identity(3), phase_damping(0.5)),
                  std::invalid_argument);
}

TEST_CASE("process fidelity of two channels") {
  const KrausChannel c = phase_damping(0.25);
  CHECK(process_fidelity(c, c) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(process_fidelity(c, phase_damping(0.6)) < 1.0 - 1e-3);

  // symmetric
  CounterRng rng(2);
  const Processor qid = qid_processor(2);
  const KrausChannel a = induced_channel(qid, ProgramState(random_density(4, rng)));
  const KrausChannel b = induced_channel(qid, ProgramState(random_density(4, rng)));
  CHECK(process_fidelity(a, b) == doctest::Approx(process_fidelity(b, a)).epsilon(1e-9));

  // contraction to I/d against any unitary: 1/d^2
  const Processor swap = swap_processor(3);
  const KrausChannel contraction =
      induced_channel(swap, ProgramState(Matrix(identity(3) / 3.0)));
  CHECK(process_fidelity(contraction, make_channel({haar_unitary(3, rng)})) ==
        doctest::Approx(1.0 / 9.0).epsilon(1e-9));

  // the two routes agree on unitary targets
  for (int t = 0; t < 200; ++t) {
    CounterRng sub = CounterRng(77).stream(t);
    const Matrix u = haar_unitary(2, sub);
    const KrausChannel ch =
        induced_channel(qid_processor(2), ProgramState(random_density(4, sub)));
    CHECK(std::abs(process_fidelity_unitary(u, ch) -
                   process_fidelity(ch, make_channel({u}))) < 1e-9);
  }

  const FidelityReport unitary_route = fidelity_report(a, make_channel({identity(2)}));
  CHECK(unitary_route.method == FidelityMethod::unitary_closed_form);
  const FidelityReport choi_route = fidelity_report(a, b);
  CHECK(choi_route.method == FidelityMethod::choi_general);
}

TEST_CASE("program fidelity operator") {
  // CNOT, target I: R has eigenvalues {1, 0} with top eigenvector |+>
  const Processor cnot = cnot_processor();
  const Matrix r = program_fidelity_operator(cnot, identity(2));
  Eigen::SelfAdjointEigenSolver<Matrix> es(r);
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
  const Vector top = es.eigenvectors().col(1);
  CHECK(std::abs(std::abs(cplx(top.adjoint() * plus_state())) - 1.0) < 1e-9);

  // QID, target sigma_x: top eigenvalue 1 at the theta program for sigma_x
  const Processor qid = qid_processor(2);
  const Matrix rx = program_fidelity_operator(qid, pauli(1));
  Eigen::SelfAdjointEigenSolver<Matrix> esx(rx);
  CHECK(esx.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-9));
  const Vector theta_x = qid_program_basis(2)[1];  // index (0,1) -> sigma_x
  CHECK(std::abs(std::abs(cplx(esx.eigenvectors().col(3).adjoint() * theta_x)) - 1.0) <
        1e-9);

  // SWAP: R = I/d^2, flat over programs
  const Processor swap = swap_processor(2);
  CounterRng rng(3);
  CHECK(approx_equal(program_fidelity_operator(swap, haar_unitary(2, rng)),
                     Matrix(identity(2) / 4.0), 1e-12));

  // Tr(xi R) equals the fidelity of the induced channel, mixed programs too
  std::vector<Processor> zoo;
  zoo.push_back(cnot_processor());
  zoo.push_back(qid_processor(2));
  zoo.push_back(vmc_processor(2));
  for (const Processor& p : zoo)
    for (int t = 0; t < 5; ++t) {
      const Matrix u = haar_unitary(2, rng);
      const Matrix xi = random_density(p.dims.program, rng);
      const double via_r = (program_fidelity_operator(p, u) * xi).trace().real();
      const double direct =
          process_fidelity_unitary(u, induced_channel(p, ProgramState(xi)));
      CHECK(via_r == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("epsilon of a target") {
  const Processor cnot = cnot_processor();
  for (double phi : {0.1, 0.5, 1.2}) {
    const double expected =
        1.0 - std::max(std::cos(phi) * std::cos(phi), std::sin(phi) * std::sin(phi));
    CHECK(epsilon_of_target(cnot, u1_rotation(phi, kZ)).epsilon ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  // tie at phi = pi/4: two equally good orthogonal programs
  CHECK(epsilon_of_target(cnot, u1_rotation(M_PI / 4, kZ)).top_multiplicity == 2);

  // exact programs
  const Processor qid3 = qid_processor(3);
  CHECK(epsilon_of_target(qid3, generalized_pauli(3, 5)).epsilon ==
        doctest::Approx(0.0).epsilon(1e-10));

  // QID worst case witness: 3/4 for qubits
  const auto witness2 = qid_worst_witness(2);
  REQUIRE(witness2.has_value());
  CHECK(is_unitary(*witness2, 1e-12));
  CHECK(epsilon_of_target(qid_processor(2), *witness2).epsilon ==
        doctest::Approx(0.75).epsilon(1e-10));

  // and 1 - 1/9 for qutrits via the Fourier witness
  const auto witness3 = qid_worst_witness(3);
  REQUIRE(witness3.has_value());
  CHECK(is_unitary(*witness3, 1e-12));
  CHECK(epsilon_of_target(qid3, *witness3).epsilon ==
        doctest::Approx(1.0 - 1.0 / 9.0).epsilon(1e-10));

  // SWAP: every unitary sits at 1 - 1/d^2
  CounterRng rng(4);
  for (Index d : {2, 3, 4}) {
    const Processor swap = swap_processor(d);
    for (int t = 0; t < 10; ++t)
      CHECK(epsilon_of_target(swap, haar_unitary(d, rng)).epsilon ==
            doctest::Approx(universal_lower_bound(d)).epsilon(1e-10));
  }
}

TEST_CASE("u processor epsilon structure") {
  // R_U is diagonal in the program basis: only basis programs matter
  CounterRng rng(5);
  std::vector<Matrix> programs;
  for (Index k = 0; k < 4; ++k) programs.push_back(haar_unitary(2, rng));
  const Processor up = u_processor(programs);
  for (int t = 0; t < 5; ++t) {
    const Matrix u = haar_unitary(2, rng);
    const Matrix r = program_fidelity_operator(up, u);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j)
        if (i != j) CHECK(std::abs(r(i, j)) < 1e-12);
    // epsilon equals the best basis-state value
    double best_basis = 0.0;
    for (Index j = 0; j < 4; ++j)
      best_basis = std::max(best_basis, r(j, j).real());
    CHECK(epsilon_of_target(up, u).epsilon ==
          doctest::Approx(1.0 - best_basis).epsilon(1e-9));
  }
}

TEST_CASE("u1 worst and average errors") {
  const Processor cnot = cnot_processor();
  CHECK(epsilon_worst_u1(cnot, kZ, 4096) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(epsilon_avg_u1(cnot, kZ, 4096) ==
        doctest::Approx(0.5 - 1.0 / M_PI).epsilon(1e-6));

  for (Index n : {2, 4, 8}) {
    const Processor grid = u1_grid_processor(n, kZ);
    const double expected = 1.0 - std::pow(std::cos(M_PI / (2.0 * n)), 2);
    CHECK(std::abs(epsilon_worst_u1(grid, kZ, 4096) - expected) < 1e-7);
  }
}

TEST_CASE("haar worst case reports") {
  const Processor qid = qid_processor(2);
  const WorstCaseReport report =
      epsilon_worst_haar(qid, 2000, 11, qid_worst_witness(2));
  CHECK(report.sample_max <= 0.75 + 1e-9);
  CHECK(report.sample_max > 0.70);  // the witness value is approached from below
  CHECK(report.witness_epsilon.value() == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(report.epsilon == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(report.sample_stderr > 0.0);

  // SWAP: every sample sits exactly at 3/4
  const WorstCaseReport swap_report = epsilon_worst_haar(swap_processor(2), 50, 13);
  CHECK(swap_report.sample_max == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(swap_report.sample_mean == doctest::Approx(0.75).epsilon(1e-10));

  // determinism
  const WorstCaseReport again = epsilon_worst_haar(qid, 100, 11);
  const WorstCaseReport again2 = epsilon_worst_haar(qid, 100, 11);
  CHECK(again.sample_max == again2.sample_max);
  CHECK(again.sample_mean == again2.sample_mean);
}

TEST_CASE("universality") {
  CHECK(universality_check(swap_processor(2)).universal);
  CHECK(universality_check(swap_processor(2)).operator_rank == 4);
  CHECK(universality_check(swap_processor(3)).operator_rank == 9);
  CHECK_FALSE(universality_check(cnot_processor()).universal);
  CHECK(universality_check(cnot_processor()).operator_rank == 2);
  CHECK(universality_check(qid_processor(2)).universal);

  // U-processors with N < d^2 are never universal
  CounterRng rng(6);
  std::vector<Matrix> programs;
  for (int k = 0; k < 3; ++k) programs.push_back(haar_unitary(2, rng));
  const UniversalityReport small = universality_check(u_processor(programs));
  CHECK_FALSE(small.universal);
  CHECK(small.operator_rank <= 3);

  CHECK(universal_lower_bound(2) == doctest::Approx(0.75));
  CHECK(universal_lower_bound(3) == doctest::Approx(1.0 - 1.0 / 9.0));
}

TEST_CASE("orthogonal elementary programs are optimal for qubit u processors") {
  CounterRng rng(7);
  // orthogonal family: conjugated Paulis reach exactly 3/4
  const Matrix v = haar_unitary(2, rng);
  std::vector<Matrix> orthogonal;
  for (int k = 0; k < 4; ++k)
    orthogonal.push_back(Matrix(v * generalized_pauli(2, k) * v.adjoint()));
  const Processor orth_proc = u_processor(orthogonal);
  // the conjugated witness attains 3/4, and samples never exceed it
  const Matrix witness = v * (*qid_worst_witness(2)) * v.adjoint();
  const WorstCaseReport orth = epsilon_worst_haar(orth_proc, 500, 8, Matrix(witness));
  CHECK(orth.witness_epsilon.value() == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(orth.sample_max <= 0.75 + 1e-9);

  // a degenerate (non-orthogonal) family is strictly worse somewhere
  std::vector<Matrix> degenerate = {pauli(0), pauli(0), pauli(3), pauli(1)};
  const WorstCaseReport degen = epsilon_worst_haar(u_processor(degenerate), 500, 9);
  CHECK(degen.sample_max > 0.75 + 1e-3);
}

TEST_CASE("fidelity concavity") {
  CounterRng rng(8);
  for (int t = 0; t < 10; ++t) {
    const Processor qid = qid_processor(2);
    const KrausChannel e1 = induced_channel(qid, ProgramState(random_density(4, rng)));
    const KrausChannel e2 = induced_channel(qid, ProgramState(random_density(4, rng)));
    const double w = rng.next_double();
    const KrausChannel mixed = mix({{w, e1}, {1 - w, e2}});
    const Matrix u = haar_unitary(2, rng);
    const KrausChannel target = make_channel({u});
    const double lhs = process_fidelity(mixed, target);
    const double rhs =
        w * process_fidelity(e1, target) + (1 - w) * process_fidelity(e2, target);
    CHECK(lhs >= rhs - 1e-9);
  }
}

TEST_CASE("clamping stays within slack") {
  CHECK(clamp01(1.0 + 5e-9) == 1.0);
  CHECK(clamp01(-5e-9) == 0.0);
  CHECK_THROWS_AS(clamp01(1.1), std::runtime_error);
  CHECK_THROWS_AS(clamp01(-0.1), std::runtime_error);
}
