#include <doctest.h>

#include <cmath>

#include "fridge/machine.hpp"
#include "fridge/noise.hpp"
#include "oracles.hpp"

using namespace fridge;

namespace {

MachineSpec qpc_spec(const QpcParams& q, DotParams dot = oracle::fig2_dot(),
                     LeadPair leads = oracle::fig2_leads()) {
  MachineSpec s;
  s.dot = dot;
  s.leads = leads;
  s.measurement = QpcMeasurement{q};
  return s;
}

}  // namespace

TEST_SUITE("noise") {

TEST_CASE("regression generator reproduces the steady populations") {
  oracle::Sampler rng(5);
  for (int k = 0; k < 100; ++k) {
    const QpcParams q{0.5, rng.uniform(0.0, 0.45), rng.uniform(0.0, 60.0), rng.log_uniform(1.0, 40.0)};
    const SolvedMachine m = solve(qpc_spec(q, rng.dot(), rng.leads()));
    const PopulationDynamics pd = regression_generator(m.total);
    const Eigen::Vector2d p = pd.stationary();
    REQUIRE(std::abs(p(0) - m.rho.population(1)) < 1e-10);
    REQUIRE(std::abs(p(1) - m.rho.population(2)) < 1e-10);
  }
}

TEST_CASE("structure and stability checks") {
  const DotParams dot = oracle::fig2_dot();
  const LeadPair leads = oracle::fig2_leads();
  const Superoperator local_leads = lead_lindbladian_local(dot, leads.left(), Side::Left);
  CHECK_THROWS_AS(regression_generator(local_leads), StructureError);
  const Superoperator frozen = hamiltonian_generator(hamiltonian_matrix(dot, BasisKind::Eigen));
  CHECK_THROWS_AS(regression_generator(frozen), UnstableDynamics);
}

TEST_CASE("steady current matches the transfer superoperator") {
  oracle::Sampler rng(6);
  for (int k = 0; k < 50; ++k) {
    const DotParams dot = rng.dot();
    const QpcParams q{0.5, rng.uniform(0.0, 0.45), rng.uniform(0.0, 60.0), rng.log_uniform(1.0, 40.0)};
    const SolvedMachine m = solve(qpc_spec(q, dot, rng.leads()));
    const NoiseReport n = compute_noise(m);
    const JumpSuperoperators js = jump_superoperators(dot, q, *m.channels);
    const Matrix3c rho = m.rho.matrix();
    const double i_ss = unvectorize(js.current().matrix * vectorize(rho)).trace().real();
    const double a_ss = unvectorize(js.activity().matrix * vectorize(rho)).trace().real();
    REQUIRE(std::abs(n.i_ss - i_ss) < 1e-8 * std::max(1.0, std::abs(i_ss)));
    REQUIRE(std::abs(n.a_ss - a_ss) < 1e-8 * std::max(1.0, a_ss));
    REQUIRE(n.s_ii_0 > 0.0);
    REQUIRE(n.snr >= 0.0);
  }
}

TEST_CASE("no measurement strength: no signal") {
  const QpcParams q{0.5, 0.5, 4.0, 12.0};
  const SolvedMachine m = solve(qpc_spec(q));
  const NoiseReport n = compute_noise(m);
  CHECK(std::abs(n.delta_i) < 1e-14);
  CHECK(n.snr == doctest::Approx(0.0));
  CHECK(n.s_ii_0 == doctest::Approx(n.a_ss).epsilon(1e-12));
  const CurrentCoefficients c = current_activity_coefficients(m.spec.dot, q, *m.channels);
  CHECK(n.a_ss == doctest::Approx(c.a0).epsilon(1e-12));
}

TEST_CASE("unbiased detector carries no elastic current") {
  const QpcParams q{0.5, 0.2, 0.0, 7.0};
  const CurrentCoefficients c = current_activity_coefficients(oracle::fig2_dot(), q);
  CHECK(std::abs(c.i0) < 1e-14);
  CHECK(c.a0 > 0.0);
}

TEST_CASE("signal is the empty minus occupied current") {
  const QpcParams q{0.5, 0.25, 3.0, 5.0};
  const double t_meas = q.t_meas();
  // A static charge (no tunnelling between the dots) gives transmissions t0
  // and t1 for the two charge states.
  const DotParams dot(0.0, 1e4, 1.0);
  const QpcChannels ch = qpc_channels(q, dot.omega());
  const double di = signal_separation(dot, q, ch);
  CHECK(t_meas > 0.0);
  CHECK(di == doctest::Approx((q.t0 - q.t1) * 3.0).epsilon(1e-5));
}

TEST_CASE("zero-frequency noise matches the time-domain integral") {
  struct Case {
    double t1, mu_over_omega, t_m;
  };
  const Case cases[] = {{0.25, 1.0, 12.0}, {0.0, 0.01, 1.0}, {0.4, 20.0, 40.0}, {0.1, 3.0, 2.5}};
  for (const Case& cs : cases) {
    const DotParams dot = oracle::fig2_dot();
    const LeadPair leads = oracle::fig2_leads();
    const QpcParams q{0.5, cs.t1, cs.mu_over_omega * dot.omega(), cs.t_m};
    const NoiseReport n = compute_noise(solve(qpc_spec(q, dot, leads)));
    const double ref = oracle::noise_time_domain(dot, leads, q);
    CAPTURE(cs.mu_over_omega);
    CHECK(n.s_ii_0 == doctest::Approx(kNoiseConventionFactor * ref).epsilon(1e-6));
  }
}

TEST_CASE("noise is homogeneous of degree one in the energy scale") {
  const DotParams dot = oracle::fig2_dot();
  const LeadPair leads = oracle::fig2_leads();
  const QpcParams q{0.5, 0.25, 6.0, 12.0};
  const NoiseReport base = compute_noise(solve(qpc_spec(q, dot, leads)));
  for (double lambda : {0.5, 2.0}) {
    const DotParams d2(lambda * dot.epsilon(), lambda * dot.delta(), lambda * dot.g());
    const LeadPair l2{lambda * leads.mu, lambda * leads.t_l, lambda * leads.t_r, lambda * leads.gamma};
    const QpcParams q2{q.t0, q.t1, lambda * q.mu_m, lambda * q.t_m};
    const NoiseReport n = compute_noise(solve(qpc_spec(q2, d2, l2)));
    CHECK(n.i_ss == doctest::Approx(lambda * base.i_ss).epsilon(1e-9));
    CHECK(n.s_ii_0 == doctest::Approx(lambda * base.s_ii_0).epsilon(1e-9));
    CHECK(n.delta_i == doctest::Approx(lambda * base.delta_i).epsilon(1e-9));
  }
}

TEST_CASE("ideal detector is rejected") {
  MachineSpec s;
  s.measurement = IdealMeasurement{1.0};
  CHECK_THROWS_AS(compute_noise(solve(s)), InvalidParameter);
}

}  // TEST_SUITE
