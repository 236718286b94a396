#include <doctest.h>

#include <array>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "fridge/fermi.hpp"
#include "fridge/liouvillian.hpp"
#include "fridge/machine.hpp"
#include "oracles.hpp"

using namespace fridge;

namespace {

Superoperator full_liouvillian(const DotParams& p, const LeadPair& leads, double gamma_m) {
  const std::array<Superoperator, 3> parts = {
      lead_lindbladian_global(p, leads.left(), Side::Left),
      lead_lindbladian_global(p, leads.right(), Side::Right),
      measurement_lindbladian_ideal(p, gamma_m)};
  return assemble_liouvillian(hamiltonian_matrix(p, BasisKind::Eigen), parts);
}

double trace_distance(const Matrix3c& a, const Matrix3c& b) {
  Eigen::SelfAdjointEigenSolver<Matrix3c> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

TEST_SUITE("liouvillian") {

TEST_CASE("dissipator of a single decay channel") {
  const Matrix3c x = ket_bra(0, 1);
  const Matrix3c out = dissipator(x).apply(ket_bra(1, 1));
  CHECK((out - (ket_bra(0, 0) - ket_bra(1, 1))).norm() < 1e-15);
  CHECK(dissipator(Matrix3c::Zero()).matrix.norm() == 0.0);
}

TEST_CASE("sandwich and vectorization") {
  oracle::Sampler rng(3);
  const Matrix3c k = rng.density_matrix() + Complex(0, 1) * rng.density_matrix();
  const Matrix3c rho = rng.density_matrix();
  CHECK((sandwich(k).apply(rho) - k * rho * k.adjoint()).norm() < 1e-14);
  CHECK((unvectorize(vectorize(rho)) - rho).norm() == 0.0);
  const Matrix3c h = hamiltonian_matrix(oracle::fig2_dot(), BasisKind::Local);
  CHECK((hamiltonian_generator(h).apply(rho) - Complex(0, -1) * (h * rho - rho * h)).norm() < 1e-13);
}

TEST_CASE("fig2 rates") {
  const DotParams p = oracle::fig2_dot();
  const LeadPair leads = oracle::fig2_leads();
  CHECK(fermi_occupancy(p.energy_plus(), leads.mu, leads.t_l) ==
        doctest::Approx(0.767868).epsilon(1e-5));
  CHECK(leads.gamma * fermi_occupancy(p.epsilon(), leads.mu, leads.t_l) ==
        doctest::Approx(0.009090).epsilon(1e-4));

  // local lead: loading rate onto the left site from |00>
  const Superoperator local = lead_lindbladian_local(p, leads.left(), Side::Left);
  const Matrix3c loaded = to_local_basis(p, local.apply(ket_bra(0, 0)));
  CHECK(loaded(1, 1).real() == doctest::Approx(0.01 / (std::exp(-2.3) + 1.0)).epsilon(1e-12));
  CHECK(std::abs(loaded(2, 2).real()) < 1e-15);
}

TEST_CASE("limits of the lead rates") {
  const DotParams p(2.0, 1.0, 1.0);
  // infinite temperature: all rates gamma/2 times the amplitude
  const LeadParams hot{0.0, 1e12, 0.2};
  const Superoperator l = lead_lindbladian_global(p, hot, Side::Left);
  const Matrix3c from_empty = l.apply(ket_bra(0, 0));
  const double c = std::cos(p.theta()), s = std::sin(p.theta());
  CHECK(from_empty(1, 1).real() == doctest::Approx(0.1 * c * c).epsilon(1e-9));
  CHECK(from_empty(2, 2).real() == doctest::Approx(0.1 * s * s).epsilon(1e-9));
  // cold lead below both levels: no loading at all
  const LeadParams cold{-5.0, 1e-3, 0.2};
  CHECK(lead_lindbladian_global(p, cold, Side::Right).apply(ket_bra(0, 0)).norm() < 1e-300);
  CHECK_THROWS_AS(lead_lindbladian_global(p, LeadParams{0.0, 0.0, 0.1}, Side::Left), InvalidParameter);
  CHECK_THROWS_AS(lead_lindbladian_local(p, LeadParams{0.0, -1.0, 0.1}, Side::Left), InvalidParameter);
}

TEST_CASE("ideal measurement limits") {
  CHECK(measurement_lindbladian_ideal(oracle::fig2_dot(), 0.0).matrix.norm() == 0.0);
  const DotParams decoupled(0.0, 1e12, 1.0);
  const Superoperator m = measurement_lindbladian_ideal(decoupled, 1.0);
  const Superoperator pure = dissipator(ket_bra(2, 2));
  CHECK(norm_inf(m - pure) < 1e-10);
  CHECK_THROWS_AS(measurement_lindbladian_ideal(decoupled, -1.0), InvalidParameter);
}

TEST_CASE("assembled generators are trace and Hermiticity preserving") {
  oracle::Sampler rng(1234);
  for (int k = 0; k < 1000; ++k) {
    const DotParams p = rng.dot();
    const LeadPair leads = rng.leads();
    const double gm = rng.log_uniform(1e-4, 10.0);
    const Superoperator l = full_liouvillian(p, leads, gm);
    const double scale = norm_inf(l);
    // d/dt Tr(rho) row
    Vector9c trace_row = l.matrix.row(0) + l.matrix.row(4) + l.matrix.row(8);
    REQUIRE(trace_row.norm() < 1e-12 * scale);

    const Matrix3c rho = rng.density_matrix();
    const Matrix3c out = l.apply(rho);
    REQUIRE((out - out.adjoint()).norm() < 1e-12 * scale);

    const DensityMatrix ss = steady_state(l);
    const Matrix3c& r = ss.matrix();
    REQUIRE(std::abs(r.trace() - 1.0) < 1e-13);
    REQUIRE((l.matrix * vectorize(r)).cwiseAbs().maxCoeff() < 1e-12 * scale);
    Eigen::SelfAdjointEigenSolver<Matrix3c> es(r);
    REQUIRE(es.eigenvalues().minCoeff() > -1e-12);
    Matrix3c off = r;
    off.diagonal().setZero();
    REQUIRE(off.norm() < 1e-12);
  }
}

TEST_CASE("single lead relaxes to the grand-canonical state") {
  oracle::Sampler rng(42);
  for (int k = 0; k < 200; ++k) {
    // kept away from frozen levels, where the kernel is degenerate to working precision
    const DotParams p(rng.uniform(-5, 5), rng.uniform(-4, 4), rng.log_uniform(0.5, 5.0));
    const double t = rng.log_uniform(1.0, 10.0);
    const LeadParams lead{p.epsilon() + rng.uniform(-3, 3) * t, t, rng.log_uniform(1e-3, 0.1)};
    const std::array<Superoperator, 1> parts = {lead_lindbladian_global(p, lead, Side::Left)};
    const Superoperator l = assemble_liouvillian(hamiltonian_matrix(p, BasisKind::Eigen), parts);
    const Matrix3c r = steady_state(l).matrix();
    Eigen::Vector3d w(0.0, -(p.energy_plus() - lead.mu) / lead.temperature,
                      -(p.energy_minus() - lead.mu) / lead.temperature);
    w.array() -= w.maxCoeff();
    Eigen::Vector3d gibbs = w.array().exp();
    gibbs /= gibbs.sum();
    double rel_entropy = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double pi = r(i, i).real();
      if (pi > 1e-300) rel_entropy += pi * (std::log(pi) - std::log(gibbs(i)));
      REQUIRE(std::abs(pi - gibbs(i)) < 1e-10);
    }
    REQUIRE(std::abs(rel_entropy) < 1e-10);
  }
}

TEST_CASE("two identical leads and no measurement carry no heat") {
  const DotParams p = oracle::fig2_dot();
  LeadPair leads = oracle::fig2_leads();
  leads.t_r = leads.t_l;
  MachineSpec spec;
  spec.dot = p;
  spec.leads = leads;
  spec.measurement = IdealMeasurement{0.0};
  const FlowReport f = compute_flows(solve(spec));
  CHECK(std::abs(f.j_l) < 1e-18);
  CHECK(std::abs(f.j_r) < 1e-18);
}

TEST_CASE("steady state matches long-time propagation") {
  const DotParams p = oracle::fig2_dot();
  const LeadPair leads = oracle::fig2_leads();
  const Superoperator l = full_liouvillian(p, leads, 1.0);
  const Matrix3c ss = steady_state(l).matrix();
  const Matrix9c prop = (l.matrix * (50.0 / leads.gamma)).exp();
  oracle::Sampler rng(8);
  for (int k = 0; k < 20; ++k) {
    const Matrix3c rho0 = rng.density_matrix();
    const Matrix3c late = unvectorize(prop * vectorize(rho0));
    CHECK(trace_distance(late, ss) < 1e-8);
  }
}

TEST_CASE("populations agree with the classical rate equation") {
  const DotParams p = oracle::fig2_dot();
  const LeadPair leads = oracle::fig2_leads();
  for (double gm : {0.0, 1e-3, 0.1, 1.0, 10.0}) {
    const double cs2 = std::pow(std::sin(2 * p.theta()) / 2, 2);
    const oracle::PauliSolution ref = oracle::pauli_global(p, leads, gm * cs2, gm * cs2);
    const Matrix3c r = steady_state(full_liouvillian(p, leads, gm)).matrix();
    for (int i = 0; i < 3; ++i) CHECK(std::abs(r(i, i).real() - ref.populations(i)) < 1e-12);
  }
}

TEST_CASE("degenerate generator is rejected") {
  const DotParams p = oracle::fig2_dot();
  const Superoperator h_only = hamiltonian_generator(hamiltonian_matrix(p, BasisKind::Eigen));
  CHECK_THROWS_AS(steady_state(h_only), NonUniqueSteadyState);
  // measurement alone keeps |00> decoupled from the single-electron sector
  const std::array<Superoperator, 1> parts = {measurement_lindbladian_ideal(p, 1.0)};
  CHECK_THROWS_AS(steady_state(assemble_liouvillian(hamiltonian_matrix(p, BasisKind::Eigen), parts)),
                  NonUniqueSteadyState);
}

}  // TEST_SUITE
