#pragma once

#include <array>
#include <complex>
#include <vector>

namespace tcqsim::rip {

enum class PulseShape { square, raised_cosine };

/// Detuned bus drive segment.  Frequencies are cyclic (Hz); duration is the
/// per-segment length tau.  kappa is the cavity linewidth (full width, Hz).
struct RipPulse {
  PulseShape shape = PulseShape::raised_cosine;
  double amplitude = 0.0;   // drive strength epsilon, Hz
  double detuning = 0.0;    // from the bus resonance, Hz; negative = below
  double duration = 0.0;    // tau per segment, s
  double edge_time = 100e-9;  // raised-cosine edge, s
  double kappa = 0.0;       // Hz
  double dt = 0.0;          // integrator step, s; 0 = tau/2000

  void validate() const;
  double step() const { return dt > 0.0 ? dt : duration / 2000.0; }
  /// Envelope value at time t within one segment.
  double envelope(double t) const;
};

/// Per-photon half-shifts of the two qubits (chi, not 2 chi).
struct ChiPair {
  double chi_left = 0.0;
  double chi_right = 0.0;

  /// Cavity pull of joint state (a, b): 2 chi_l a + 2 chi_r b.
  double pull(int a, int b) const {
    return 2.0 * chi_left * a + 2.0 * chi_right * b;
  }
};

/// Phases accumulated by the four joint qubit states.  Index order is
/// 00, 01, 10, 11 with the left qubit first.
struct RipResult {
  std::array<double, 4> phases{};            // radians
  std::array<double, 4> residual_photons{};  // |alpha_s(T)|^2
  double entangling_phase = 0.0;  // th00 + th11 - th01 - th10
  /// ZI / IZ components of the phase vector; the echoed sequence cancels
  /// these.
  double single_qubit_phase_left = 0.0;
  double single_qubit_phase_right = 0.0;
  /// Max |phase(dt) - phase(dt/2)| over states; integration convergence.
  double dt_convergence = 0.0;
  /// Sampled alpha(t) per state when requested.
  std::vector<std::vector<std::complex<double>>> trajectories;

  static int index(int a, int b) { return 2 * a + b; }
  void finalize();  // fills the derived phase combinations
};

/// Driven-cavity amplitude alpha(t) for one joint state:
///   d alpha/dt = -i 2pi (detuning + state_pull) alpha - pi kappa alpha
///                - i 2pi eps(t),   alpha(0) = alpha0.
/// Classical fixed-step RK4; samples at the integrator step spacing.
/// Throws NumericsError if |alpha| exceeds 1e6 (step-size instability).
std::vector<std::complex<double>> cavity_trajectory(
    const RipPulse& pulse, double state_pull,
    std::complex<double> alpha0 = {0.0, 0.0});

/// Single-segment state-dependent phases via the coherent-state relation
///   theta_s(T) = -int 2pi Re[eps*(t) alpha_s(t)] dt.
RipResult state_phases(const RipPulse& pulse, const ChiPair& chis,
                       bool keep_trajectories = false);

/// Echoed sequence: segment, qubit flips (a,b) -> (1-a,1-b), segment; the
/// cavity amplitude carries through the echo.  Phases are summed per
/// original label.
RipResult echoed_rip(const RipPulse& pulse, const ChiPair& chis,
                     bool keep_trajectories = false);

struct RamseyPoint {
  double tau = 0.0;             // per-segment duration, s
  double total_duration = 0.0;  // 2 tau + 2 echo_time, s
  double phase_left = 0.0;      // conditional phase with the other in |0>
  double phase_right = 0.0;
  double contrast_left = 0.0;   // exp(-2 residual photons) proxy
  double contrast_right = 0.0;
  double z_left = 0.0;          // contrast * cos(phase)
  double z_right = 0.0;
  double entangling_phase = 0.0;
};

/// Echoed-RIP Ramsey prediction over a tau grid.  echo_time only enters the
/// reported total duration.
std::vector<RamseyPoint> ramsey_trace(const RipPulse& pulse_template,
                                      const ChiPair& chis,
                                      const std::vector<double>& tau_grid,
                                      double echo_time = 0.0);

/// Scale the drive amplitude so the echoed sequence accumulates
/// |entangling_phase| = target (default pi) at the template's duration.
RipPulse amplitude_for_phase(const RipPulse& pulse_template,
                             const ChiPair& chis, double target = 3.14159265358979323846);

}  // namespace tcqsim::rip
