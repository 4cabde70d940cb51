#include "tcqsim/rip.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tcqsim/error.hpp"

namespace tcqsim::rip {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct CavityState {
  std::complex<double> alpha{0.0, 0.0};
  double phase = 0.0;
};

struct Deriv {
  std::complex<double> dalpha;
  double dphase;
};

// One drive segment integrated with classical fixed-step RK4.  The phase
// integral -int 2pi eps(t) Re[alpha] dt rides along as a third component.
CavityState integrate_segment(const RipPulse& pulse, double state_pull,
                              CavityState start, int steps,
                              std::vector<std::complex<double>>* samples) {
  const double tau = pulse.duration;
  const double h = tau / double(steps);
  const std::complex<double> damp(-std::numbers::pi * pulse.kappa,
                                  -kTwoPi * (pulse.detuning + state_pull));

  auto rhs = [&](double t, const CavityState& s) -> Deriv {
    const double eps = pulse.envelope(t);
    Deriv d;
    d.dalpha = damp * s.alpha - std::complex<double>(0.0, kTwoPi * eps);
    d.dphase = -kTwoPi * eps * s.alpha.real();
    return d;
  };

  CavityState s = start;
  if (samples) samples->push_back(s.alpha);
  for (int k = 0; k < steps; ++k) {
    const double t = double(k) * h;
    const Deriv k1 = rhs(t, s);
    CavityState s2{s.alpha + 0.5 * h * k1.dalpha, s.phase + 0.5 * h * k1.dphase};
    const Deriv k2 = rhs(t + 0.5 * h, s2);
    CavityState s3{s.alpha + 0.5 * h * k2.dalpha, s.phase + 0.5 * h * k2.dphase};
    const Deriv k3 = rhs(t + 0.5 * h, s3);
    CavityState s4{s.alpha + h * k3.dalpha, s.phase + h * k3.dphase};
    const Deriv k4 = rhs(t + h, s4);
    s.alpha += (h / 6.0) *
               (k1.dalpha + 2.0 * k2.dalpha + 2.0 * k3.dalpha + k4.dalpha);
    s.phase += (h / 6.0) *
               (k1.dphase + 2.0 * k2.dphase + 2.0 * k3.dphase + k4.dphase);
    if (std::abs(s.alpha) > 1e6) {
      std::ostringstream msg;
      msg << "cavity integrator unstable: |alpha| = " << std::abs(s.alpha)
          << " at t = " << t + h << " s; reduce dt";
      throw NumericsError(msg.str());
    }
    if (samples) samples->push_back(s.alpha);
  }
  return s;
}

int step_count(const RipPulse& pulse) {
  const int n = int(std::llround(pulse.duration / pulse.step()));
  return std::max(n, 1);
}

RipResult run_sequence(const RipPulse& pulse, const ChiPair& chis, bool echoed,
                       bool keep_trajectories) {
  pulse.validate();
  const int steps = step_count(pulse);

  RipResult out;
  if (keep_trajectories) out.trajectories.resize(4);

  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int idx = RipResult::index(a, b);
      auto run_at = [&](int n_steps,
                        std::vector<std::complex<double>>* samples) {
        CavityState s;
        s = integrate_segment(pulse, chis.pull(a, b), s, n_steps, samples);
        if (echoed)
          s = integrate_segment(pulse, chis.pull(1 - a, 1 - b), s, n_steps,
                                samples);
        return s;
      };
      auto* samples =
          keep_trajectories ? &out.trajectories[size_t(idx)] : nullptr;
      const CavityState coarse = run_at(steps, samples);
      const CavityState fine = run_at(2 * steps, nullptr);
      out.phases[size_t(idx)] = coarse.phase;
      out.residual_photons[size_t(idx)] = std::norm(coarse.alpha);
      out.dt_convergence = std::max(out.dt_convergence,
                                    std::abs(coarse.phase - fine.phase));
    }
  out.finalize();
  return out;
}

}  // namespace

void RipPulse::validate() const {
  if (!(duration > 0.0))
    throw InvalidParameter("RipPulse: duration must be positive");
  if (!std::isfinite(amplitude))
    throw InvalidParameter("RipPulse: amplitude must be finite");
  if (amplitude != 0.0 && detuning == 0.0)
    throw InvalidParameter(
        "RipPulse: on-resonance drive (detuning = 0 with nonzero amplitude)");
  if (kappa < 0.0) throw InvalidParameter("RipPulse: negative kappa");
  if (dt > 0.0 && dt > duration / 100.0)
    throw InvalidParameter("RipPulse: dt must be <= duration / 100");
  if (dt < 0.0) throw InvalidParameter("RipPulse: negative dt");
  if (shape == PulseShape::raised_cosine) {
    if (edge_time < 0.0)
      throw InvalidParameter("RipPulse: negative edge_time");
    if (2.0 * edge_time > duration)
      throw InvalidParameter("RipPulse: edges longer than the pulse");
  }
}

double RipPulse::envelope(double t) const {
  if (t < 0.0 || t > duration) return 0.0;
  if (shape == PulseShape::square || edge_time <= 0.0) return amplitude;
  if (t < edge_time)
    return amplitude * 0.5 * (1.0 - std::cos(std::numbers::pi * t / edge_time));
  if (t > duration - edge_time)
    return amplitude * 0.5 *
           (1.0 - std::cos(std::numbers::pi * (duration - t) / edge_time));
  return amplitude;
}

void RipResult::finalize() {
  const double t00 = phases[0], t01 = phases[1], t10 = phases[2],
               t11 = phases[3];
  entangling_phase = t00 + t11 - t01 - t10;
  single_qubit_phase_left = 0.25 * (t10 + t11 - t00 - t01);
  single_qubit_phase_right = 0.25 * (t01 + t11 - t00 - t10);
}

std::vector<std::complex<double>> cavity_trajectory(
    const RipPulse& pulse, double state_pull, std::complex<double> alpha0) {
  pulse.validate();
  std::vector<std::complex<double>> samples;
  CavityState s;
  s.alpha = alpha0;
  integrate_segment(pulse, state_pull, s, step_count(pulse), &samples);
  return samples;
}

RipResult state_phases(const RipPulse& pulse, const ChiPair& chis,
                       bool keep_trajectories) {
  return run_sequence(pulse, chis, /*echoed=*/false, keep_trajectories);
}

RipResult echoed_rip(const RipPulse& pulse, const ChiPair& chis,
                     bool keep_trajectories) {
  return run_sequence(pulse, chis, /*echoed=*/true, keep_trajectories);
}

std::vector<RamseyPoint> ramsey_trace(const RipPulse& pulse_template,
                                      const ChiPair& chis,
                                      const std::vector<double>& tau_grid,
                                      double echo_time) {
  std::vector<RamseyPoint> trace;
  trace.reserve(tau_grid.size());
  double prev = -1.0;
  for (double tau : tau_grid) {
    if (tau < prev)
      throw InvalidParameter("ramsey_trace: tau grid must be sorted");
    prev = tau;
    RamseyPoint pt;
    pt.tau = tau;
    pt.total_duration = 2.0 * tau + 2.0 * echo_time;
    if (tau <= 0.0 || pulse_template.amplitude == 0.0) {
      pt.contrast_left = 1.0;
      pt.contrast_right = 1.0;
      pt.z_left = 1.0;
      pt.z_right = 1.0;
      trace.push_back(pt);
      continue;
    }
    RipPulse pulse = pulse_template;
    pulse.duration = tau;
    if (pulse.shape == PulseShape::raised_cosine &&
        2.0 * pulse.edge_time > tau)
      pulse.edge_time = 0.5 * tau;
    if (pulse.dt > tau / 100.0) pulse.dt = 0.0;
    const RipResult res = echoed_rip(pulse, chis);
    pt.phase_left = res.phases[RipResult::index(1, 0)] -
                    res.phases[RipResult::index(0, 0)];
    pt.phase_right = res.phases[RipResult::index(0, 1)] -
                     res.phases[RipResult::index(0, 0)];
    const auto contrast = [&](int idx_a, int idx_b) {
      const double n_res = 0.5 * (res.residual_photons[size_t(idx_a)] +
                                  res.residual_photons[size_t(idx_b)]);
      return std::exp(-2.0 * n_res);
    };
    pt.contrast_left = contrast(RipResult::index(0, 0), RipResult::index(1, 0));
    pt.contrast_right =
        contrast(RipResult::index(0, 0), RipResult::index(0, 1));
    pt.z_left = pt.contrast_left * std::cos(pt.phase_left);
    pt.z_right = pt.contrast_right * std::cos(pt.phase_right);
    pt.entangling_phase = res.entangling_phase;
    trace.push_back(pt);
  }
  return trace;
}

RipPulse amplitude_for_phase(const RipPulse& pulse_template,
                             const ChiPair& chis, double target) {
  if (!(target > 0.0))
    throw InvalidParameter("amplitude_for_phase: target must be positive");
  RipPulse pulse = pulse_template;
  if (pulse.amplitude == 0.0) pulse.amplitude = 1e6;
  // The cavity is linear in the drive, so the accumulated phases scale
  // exactly as amplitude^2; one scaling step lands on target, the second
  // polishes rounding.
  for (int it = 0; it < 2; ++it) {
    const RipResult res = echoed_rip(pulse, chis);
    const double phi = std::abs(res.entangling_phase);
    if (phi < 1e-15)
      throw CalibrationError(
          "amplitude_for_phase: no entangling phase accumulates for these "
          "chi values");
    pulse.amplitude *= std::sqrt(target / phi);
  }
  return pulse;
}

}  // namespace tcqsim::rip
