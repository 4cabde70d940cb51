#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "tcqsim/error.hpp"
#include "rip_oracle.hpp"
#include "tcqsim/rip.hpp"

using namespace tcqsim;
using rip::ChiPair;
using rip::PulseShape;
using rip::RipPulse;
using cplx = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RipPulse square_pulse(double eps, double detuning, double tau,
                      double kappa = 0.0) {
  RipPulse p;
  p.shape = PulseShape::square;
  p.amplitude = eps;
  p.detuning = detuning;
  p.duration = tau;
  p.kappa = kappa;
  return p;
}

double wrap(double angle) { return rip_oracle::wrap(angle); }

}  // namespace

TEST_CASE("pulse validation") {
  RipPulse p = square_pulse(1e6, -3e6, 500e-9);
  CHECK_NOTHROW(p.validate());
  p.duration = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p.duration = 500e-9;
  p.detuning = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p.amplitude = 0.0;
  CHECK_NOTHROW(p.validate());  // no drive, resonance irrelevant
  p = square_pulse(1e6, -3e6, 500e-9);
  p.dt = 10e-9;  // > tau/100
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  RipPulse rc;
  rc.shape = PulseShape::raised_cosine;
  rc.amplitude = 1e6;
  rc.detuning = -3e6;
  rc.duration = 150e-9;
  rc.edge_time = 100e-9;
  CHECK_THROWS_AS(rc.validate(), InvalidParameter);  // edges overlap
}

TEST_CASE("no drive leaves the cavity empty") {
  const auto traj =
      rip::cavity_trajectory(square_pulse(0.0, -3e6, 400e-9), 0.0);
  for (const auto& a : traj) CHECK(std::abs(a) == 0.0);
  const auto res =
      rip::state_phases(square_pulse(0.0, -3e6, 400e-9), {5e6, 8.5e6});
  for (double th : res.phases) CHECK(th == 0.0);
  CHECK(res.entangling_phase == 0.0);
}

TEST_CASE("square drive orbits the classical steady state") {
  const double eps = 1e6, delta = -4e6, pull = 1.5e6;
  const auto pulse = square_pulse(eps, delta, 1000e-9);
  const auto traj = rip::cavity_trajectory(pulse, pull);
  const cplx steady(-eps / (delta + pull), 0.0);
  for (const auto& a : traj)
    CHECK(std::abs(std::abs(a - steady) - std::abs(steady)) <
          1e-3 * std::abs(steady));
}

TEST_CASE("damped cavity relaxes toward the steady state") {
  const double eps = 1e6, delta = -4e6, kappa = 4e6;
  const auto pulse = square_pulse(eps, delta, 1500e-9, kappa);
  const auto traj = rip::cavity_trajectory(pulse, 0.0);
  // alpha_ss of the damped ODE: -i 2pi eps / (pi kappa + i 2pi delta).
  const cplx steady = cplx(0.0, -kTwoPi * eps) /
                      cplx(std::numbers::pi * kappa, kTwoPi * delta);
  const double expected_gap =
      std::abs(steady) * std::exp(-std::numbers::pi * kappa * pulse.duration);
  CHECK(std::abs(traj.back() - steady) <= expected_gap + 1e-6);
  const size_t n = traj.size();
  const double early = std::abs(traj[n / 8] - steady);
  const double later = std::abs(traj[n / 2] - steady);
  CHECK(later < early);
}

TEST_CASE("steady-state Stark rate matches the analytic formula") {
  // Large detuning * duration keeps the sinc transient below 1%.
  const double eps = 1.5e6, delta = -20e6, tau = 2000e-9;
  const auto res = rip::state_phases(square_pulse(eps, delta, tau), {0.0, 0.0});
  const double rate = res.phases[0] / tau;
  const double formula = kTwoPi * eps * eps / delta;
  CHECK(rate == doctest::Approx(formula).epsilon(0.01));
}

TEST_CASE("zero chi gives state-independent phases") {
  const auto res =
      rip::state_phases(square_pulse(1e6, -3e6, 400e-9), {0.0, 0.0});
  for (double th : res.phases)
    CHECK(th == doctest::Approx(res.phases[0]).epsilon(1e-12));
  CHECK(std::abs(res.entangling_phase) < 1e-12);
}

TEST_CASE("phases scale exactly quadratically in the drive amplitude") {
  const ChiPair chis{5e6, 8.5e6};
  const auto r1 = rip::state_phases(square_pulse(0.8e6, -3e6, 400e-9), chis);
  const auto r2 = rip::state_phases(square_pulse(1.6e6, -3e6, 400e-9), chis);
  for (int s = 0; s < 4; ++s)
    CHECK(r2.phases[size_t(s)] ==
          doctest::Approx(4.0 * r1.phases[size_t(s)]).epsilon(1e-9));
}

TEST_CASE("echo cancels single-qubit phases for kappa = 0 square pulses") {
  const ChiPair chis{5e6, 8.5e6};
  const auto res = rip::echoed_rip(square_pulse(1.2e6, -3e6, 350e-9), chis);
  CHECK(std::abs(res.single_qubit_phase_left) < 1e-9);
  CHECK(std::abs(res.single_qubit_phase_right) < 1e-9);
  CHECK(std::abs(res.entangling_phase) > 1e-3);
}

TEST_CASE("entangling phase is symmetric under chi exchange") {
  const auto pulse = square_pulse(1.2e6, -3e6, 350e-9);
  const auto a = rip::echoed_rip(pulse, {5e6, 8.5e6});
  const auto b = rip::echoed_rip(pulse, {8.5e6, 5e6});
  CHECK(a.entangling_phase ==
        doctest::Approx(b.entangling_phase).epsilon(1e-12));
}

TEST_CASE("classical phases match full quantum evolution (dispersive)") {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> eps_d(0.5e6, 1.5e6);
  std::uniform_real_distribution<double> det_d(3e6, 7e6);
  std::uniform_real_distribution<double> chi_d(0.5e6, 2e6);
  std::uniform_real_distribution<double> tau_d(200e-9, 600e-9);
  for (int trial = 0; trial < 6; ++trial) {
    const double eps = eps_d(rng);
    const ChiPair chis{chi_d(rng), chi_d(rng)};
    // Dispersive regime: |detuning + pull| >= the sampled margin for every
    // joint state.
    const double delta = -(chis.pull(1, 1) + det_d(rng));
    const double tau = tau_d(rng);
    const auto pulse = square_pulse(eps, delta, tau);
    const auto res = rip::state_phases(pulse, chis, true);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int idx = rip::RipResult::index(a, b);
        const auto& traj = res.trajectories[size_t(idx)];
        const auto q =
            rip_oracle::evolve(pulse, chis.pull(a, b), 30, traj.back());
        CHECK(std::abs(wrap(res.phases[size_t(idx)] - q.phase)) < 1e-3);
        CHECK(res.residual_photons[size_t(idx)] ==
              doctest::Approx(q.photons).epsilon(5e-3));
      }
  }
}

TEST_CASE("adiabatic raised-cosine edges leave the cavity nearly empty") {
  RipPulse p;
  p.shape = PulseShape::raised_cosine;
  p.amplitude = 1.5e6;
  p.detuning = -10e6;
  p.duration = 2000e-9;
  p.edge_time = 500e-9;  // = 5 / |detuning|
  const auto traj = rip::cavity_trajectory(p, 0.0);
  double peak = 0.0;
  for (const auto& a : traj) peak = std::max(peak, std::norm(a));
  CHECK(std::norm(traj.back()) < 1e-3 * peak);
}

TEST_CASE("integration convergence metadata") {
  const auto res =
      rip::state_phases(square_pulse(1.2e6, -3e6, 400e-9), {5e6, 8.5e6});
  CHECK(res.dt_convergence < 1e-6);
}

TEST_CASE("ramsey trace") {
  const ChiPair chis{5e6, 8.5e6};
  RipPulse tmpl = square_pulse(0.0, -3e6, 400e-9);
  std::vector<double> taus = {0.0, 100e-9, 200e-9, 300e-9};
  const auto flat = rip::ramsey_trace(tmpl, chis, taus);
  for (const auto& pt : flat) {
    CHECK(pt.z_left == 1.0);
    CHECK(pt.z_right == 1.0);
    CHECK(pt.phase_right == 0.0);
  }

  tmpl.amplitude = 1.0e6;
  const auto trace = rip::ramsey_trace(tmpl, chis, taus, 50e-9);
  CHECK(trace[0].phase_right == 0.0);  // tau = 0 edge
  bool oscillates = false;
  for (size_t k = 1; k < trace.size(); ++k) {
    CHECK(trace[k].total_duration ==
          doctest::Approx(2.0 * taus[k] + 100e-9).epsilon(1e-12));
    if (std::abs(trace[k].phase_right - trace[k - 1].phase_right) > 1e-3)
      oscillates = true;
  }
  CHECK(oscillates);

  // Phase accumulation scales as amplitude^2.
  RipPulse strong = tmpl;
  strong.amplitude = 2.0e6;
  const auto trace2 = rip::ramsey_trace(strong, chis, taus, 50e-9);
  CHECK(trace2[2].phase_right ==
        doctest::Approx(4.0 * trace[2].phase_right).epsilon(1e-6));
}

TEST_CASE("amplitude helper hits a pi entangling phase") {
  RipPulse tmpl = square_pulse(0.0, -3e6, 600e-9);
  const ChiPair chis{5e6, 8.5e6};
  const auto pulse = rip::amplitude_for_phase(tmpl, chis);
  const auto res = rip::echoed_rip(pulse, chis);
  CHECK(std::abs(res.entangling_phase) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-9));

  CHECK_THROWS_AS(rip::amplitude_for_phase(tmpl, {0.0, 0.0}),
                  CalibrationError);
}
