#include <doctest.h>

#include "qproc/probabilistic.hpp"
#include "qproc/zoo.hpp"

using namespace qproc;

namespace {

constexpr std::array<double, 3> kZ{0, 0, 1};

Matrix z_rotation_neg(double phi) {  // exp(-i phi sigma_z)
  return u1_rotation(phi, kZ).adjoint();
}

Vector qid_program_for(const Processor&, Index d, const Matrix& u) {
  const auto thetas = qid_program_basis(d);
  Vector xi = Vector::Zero(d * d);
  for (Index k = 0; k < d * d; ++k) {
    const cplx alpha = (generalized_pauli(d, k).adjoint() * u).trace() / static_cast<double>(d);
    xi += alpha * thetas[k];
  }
  return xi / xi.norm();
}

}  // namespace

TEST_CASE("cnot branches in the computational basis") {
  const Processor cnot = cnot_processor();
  const double phi = 0.9;
  const Vector xi = cnot_program(phi);
  auto reports = branches(cnot, xi, computational_measurement(2));
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) {
    REQUIRE(r.probability.has_value());
    CHECK(*r.probability == doctest::Approx(0.5).epsilon(1e-12));
  }
  classify_against_target(reports, z_rotation_neg(phi));
  CHECK(reports[0].matches_target);
  classify_against_target(reports, z_rotation_neg(-phi));
  CHECK(reports[1].matches_target);

  // exact program, any measurement outcome realizes the identity
  auto id_reports = branches(cnot, cnot_program(0.0), computational_measurement(2));
  classify_against_target(id_reports, identity(2));
  double total = 0.0;
  for (const auto& r : id_reports)
    if (r.matches_target) total += *r.probability;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qid branches") {
  for (Index d : {2, 3}) {
    const Processor qid = qid_processor(d);
    const ProjectiveMeasurement meas = qid_measurement_basis(d);
    CounterRng rng(10 + d);
    for (int t = 0; t < 4; ++t) {
      const Matrix u = haar_unitary(d, rng);
      const Vector xi = qid_program_for(qid, d, u);
      auto reports = branches(qid, xi, meas);
      classify_against_target(reports, u);
      const double flat = 1.0 / static_cast<double>(d * d);
      int matches = 0;
      for (const auto& r : reports) {
        REQUIRE(r.probability.has_value());  // data independent
        CHECK(*r.probability == doctest::Approx(flat).epsilon(1e-9));
        if (r.matches_target) ++matches;
      }
      CHECK(matches == 1);  // only the heralded branch realizes a generic target
      CHECK(success_probability(qid, meas, xi, u) == doctest::Approx(flat).epsilon(1e-9));
    }
    // every branch of a Weyl program realizes it (conjugation is a phase)
    const Vector theta1 = qid_program_basis(d)[1];
    CHECK(success_probability(qid, meas, theta1, generalized_pauli(d, 1)) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("swap branches are data dependent") {
  const Processor swap = swap_processor(2);
  CounterRng rng(12);
  for (int t = 0; t < 5; ++t) {
    const Matrix basis = haar_unitary(2, rng);
    std::vector<Vector> vecs;
    for (Index j = 0; j < 2; ++j) vecs.push_back(basis.col(j));
    const ProjectiveMeasurement meas = make_measurement(std::move(vecs));
    const Vector xi = haar_state(2, rng);
    for (const auto& r : branches(swap, xi, meas))
      CHECK_FALSE(r.probability.has_value());
    CHECK(success_probability(swap, meas, xi, haar_unitary(2, rng)) == 0.0);
  }
}

TEST_CASE("branch completeness and no-post-selection consistency") {
  CounterRng rng(13);
  std::vector<Processor> zoo;
  zoo.push_back(cnot_processor());
  zoo.push_back(qid_processor(2));
  zoo.push_back(swap_processor(3));
  zoo.push_back(vmc_processor(2));
  for (const Processor& p : zoo) {
    const Vector xi = haar_state(p.dims.program, rng);
    const Matrix basis = haar_unitary(p.dims.program, rng);
    std::vector<Vector> vecs;
    for (Index j = 0; j < p.dims.program; ++j) vecs.push_back(basis.col(j));
    const ProjectiveMeasurement meas = make_measurement(std::move(vecs));
    const auto reports = branches(p, xi, meas);

    Matrix ksum = Matrix::Zero(p.dims.data, p.dims.data);
    const Matrix rho = random_density(p.dims.data, rng);
    Matrix unconditional = Matrix::Zero(p.dims.data, p.dims.data);
    for (const auto& r : reports) {
      ksum += r.op.adjoint() * r.op;
      unconditional += r.op * rho * r.op.adjoint();
    }
    CHECK(approx_equal(ksum, identity(p.dims.data), 1e-9));
    const KrausChannel ch = kraus_from_pure_program(p, xi);
    CHECK(approx_equal(unconditional, apply_channel(ch, rho), 1e-9));
  }
}

TEST_CASE("cnot eta analysis") {
  // eta = 0 is degenerate: only I or sigma_z come out
  const CnotEtaResult degenerate = cnot_eta_analysis(0.0, 0.4);
  CHECK(degenerate.degenerate);
  CHECK(degenerate.phi == doctest::Approx(0.0));
  CHECK(degenerate.p_success == doctest::Approx(std::pow(std::cos(0.4), 2)).epsilon(1e-12));

  // worst success over the family
  CHECK(cnot_eta_worst_success(M_PI / 4) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cnot_eta_worst_success(M_PI / 8) ==
        doctest::Approx(std::pow(std::sin(M_PI / 8), 2)).epsilon(1e-12));

  // averages over the program angle equal 1/2 for every eta
  for (double eta : {M_PI / 8, M_PI / 4, 3 * M_PI / 8, 0.9}) {
    CHECK(cnot_eta_average_success(eta, 4096) == doctest::Approx(0.5).epsilon(1e-9));
  }

  // closed form consistent with explicit branch computation
  const Processor cnot = cnot_processor();
  for (double eta : {0.3, M_PI / 4, 1.2}) {
    for (double xi_angle : {0.2, 0.8, 2.1}) {
      const CnotEtaResult r = cnot_eta_analysis(eta, xi_angle);
      auto reports =
          branches(cnot, cnot_program(xi_angle), cnot_eta_measurement(eta));
      REQUIRE(reports[0].probability.has_value());
      CHECK(*reports[0].probability == doctest::Approx(r.p_success).epsilon(1e-9));
      classify_against_target(reports, z_rotation_neg(r.phi));
      CHECK(reports[0].matches_target);
    }
  }

  // measurement-optimized lower bound beats the fixed 1/2 away from pi/4
  CHECK(cnot_success_lower_bound(M_PI / 8, 2048) > 0.55);
  CHECK(cnot_success_lower_bound(M_PI / 4, 2048) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("vmc cascade") {
  CHECK(vmc_simulate(1, 0.7).p_success == doctest::Approx(0.5).epsilon(1e-12));
  const VmcResult three = vmc_simulate(3, 0.7);
  CHECK(three.p_success == doctest::Approx(7.0 / 8.0).epsilon(1e-12));
  CHECK(three.matched_branches == 7);
  CHECK(three.total_branches == 8);
  for (int n = 1; n <= 4; ++n)
    for (double phi : {0.1, 1.0, 2.5}) {
      const VmcResult r = vmc_simulate(n, phi);
      CHECK(r.matched_branches == (1L << n) - 1);
      CHECK(r.p_success == doctest::Approx(1.0 - std::ldexp(1.0, -n)).epsilon(1e-9));
      CHECK(r.conditional_fidelity == doctest::Approx(1.0).epsilon(1e-9));
    }
  CHECK_THROWS_AS(vmc_simulate(0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(vmc_simulate(7, 0.3), std::invalid_argument);
}

TEST_CASE("error-epsilon inequality") {
  // saturation at the CNOT worst case
  const Processor cnot = cnot_processor();
  const InequalityResult tight = error_epsilon_inequality(
      cnot, cnot_eta_measurement(M_PI / 4), cnot_program(M_PI / 4),
      z_rotation_neg(M_PI / 4));
  CHECK(tight.holds);
  CHECK(tight.p_error == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(tight.epsilon == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(tight.gap) < 1e-9);

  // QID generic target: p_error = 1 - 1/4 >= epsilon
  const Processor qid = qid_processor(2);
  CounterRng rng(14);
  const Matrix u = haar_unitary(2, rng);
  const InequalityResult qid_r = error_epsilon_inequality(
      qid, qid_measurement_basis(2), qid_program_for(qid, 2, u), u);
  CHECK(qid_r.holds);
  CHECK(qid_r.p_error == doctest::Approx(0.75).epsilon(1e-9));

  // SWAP: strict gap, p_error = 1 vs epsilon = 3/4
  const Processor swap = swap_processor(2);
  const InequalityResult swap_r = error_epsilon_inequality(
      swap, computational_measurement(2), haar_state(2, rng), haar_unitary(2, rng));
  CHECK(swap_r.holds);
  CHECK(swap_r.p_error == doctest::Approx(1.0));
  CHECK(swap_r.epsilon == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(swap_r.gap > 0.2);

  // random configurations across the zoo
  std::vector<Processor> zoo;
  zoo.push_back(cnot_processor());
  zoo.push_back(qid_processor(2));
  zoo.push_back(swap_processor(2));
  zoo.push_back(u1_grid_processor(3, kZ));
  zoo.push_back(vmc_processor(2));
  int checked = 0;
  for (const Processor& p : zoo)
    for (int t = 0; t < 20; ++t) {
      CounterRng sub = CounterRng(15).stream(checked);
      const Matrix basis = haar_unitary(p.dims.program, sub);
      std::vector<Vector> vecs;
      for (Index j = 0; j < p.dims.program; ++j) vecs.push_back(basis.col(j));
      const InequalityResult r =
          error_epsilon_inequality(p, make_measurement(std::move(vecs)),
                                   haar_state(p.dims.program, sub),
                                   haar_unitary(p.dims.data, sub));
      CHECK(r.holds);
      ++checked;
    }
}

TEST_CASE("u1 success bounds") {
  CHECK(u1_success_bounds(2).worst == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(u1_success_bounds(8).worst ==
        doctest::Approx(std::pow(std::cos(M_PI / 16), 2)).epsilon(1e-12));
  // monotone in N, and the VMC curve stays below the worst-case bound
  double prev = 0.0;
  for (Index n = 1; n <= 64; n *= 2) {
    const U1SuccessBounds b = u1_success_bounds(n);
    CHECK(b.worst >= prev);
    prev = b.worst;
    const double vmc = 1.0 - 1.0 / static_cast<double>(n);
    CHECK(vmc <= b.worst + 1e-12);
  }
}

TEST_CASE("success search lower bound") {
  // guaranteed floor from the structured candidates plus ascent
  const Processor cnot = cnot_processor();
  SuccessSearchOptions opts;
  opts.restarts = 4;
  opts.iterations = 120;
  opts.seed = 3;
  const double found = max_success_lower_bound(cnot, z_rotation_neg(M_PI / 8), opts);
  CHECK(found >= 0.0);
  CHECK(found <= 1.0);
  // the known eta-family floor for this target
  CHECK(cnot_success_lower_bound(M_PI / 8, 4096) >=
        doctest::Approx(1.0 / (1.0 + std::sin(M_PI / 4))).epsilon(1e-3));
}
