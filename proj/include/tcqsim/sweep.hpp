#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tcqsim/observables.hpp"

namespace tcqsim::sweep {

using circuit::DeviceSpec;
using observables::Side;

/// Which TCQ excitation carries the qubit: the A (symmetric, lower) or
/// B (antisymmetric, upper) mode.
enum class ModeBasis { a, b };

/// How a fractional critical-current mismatch r maps onto the junction
/// energies.  deviation_from_mean: ej1,2 = total/2 * (1 +- r).  ratio:
/// ej1/ej2 = (1 + r) at fixed total.  The two differ only at O(r^2).
enum class AsymmetryConvention { deviation_from_mean, ratio };

std::pair<double, double> apply_asymmetry(
    double ej_total, double r,
    AsymmetryConvention convention = AsymmetryConvention::deviation_from_mean);

/// Frequency and uncoupled level index of the qubit excitation in the
/// requested basis (A/B classification for a TCQ, f01 for a transmon).
struct QubitModeInfo {
  double frequency = 0.0;
  int level = 1;
};

QubitModeInfo qubit_mode_info(
    const circuit::QubitSpec& spec, ModeBasis basis,
    PrefactorConvention convention = PrefactorConvention::standard);

/// Signed longitudinal coupling chi of one qubit's selected mode with the
/// bus, evaluated spectator-free on the qubit x bus composite.  This is the
/// quantity the calibration drives: a qubit's chi with the bus does not
/// depend on the neighbor, and leaving the neighbor out keeps the dressed
/// states clean of qubit-qubit hybridization.
double single_qubit_chi(
    const circuit::QubitSpec& spec, const circuit::BusSpec& bus, double gint,
    ModeBasis basis = ModeBasis::a,
    PrefactorConvention convention = PrefactorConvention::standard);

struct SweepConfig {
  DeviceSpec device;  // left subsystem is the fixed, calibrated side
  std::vector<double> detuning_grid;  // Hz, sorted
  double asymmetry = 0.0;
  double chi_half_target = 1e6;  // echoed into metadata
  ModeBasis mode_basis = ModeBasis::a;
  AsymmetryConvention asymmetry_convention =
      AsymmetryConvention::deviation_from_mean;
  PrefactorConvention convention = PrefactorConvention::standard;

  void validate() const;
};

/// Default grid: -400 MHz .. +400 MHz in 10 MHz steps.
std::vector<double> default_detuning_grid();

struct SweepRow {
  double detuning = 0.0;            // requested, Hz
  double zz = 0.0;                  // Hz
  double f_a_right = 0.0;           // achieved variable-side mode freq, Hz
  double assignment_quality = 0.0;  // min overlap over the four ZZ labels
  bool converged = false;
  std::string diagnostic;           // empty on success
};

struct SweepMetadata {
  double f_mode_fixed = 0.0;  // fixed-side mode frequency after asymmetry
  double ej_total_fixed = 0.0;
  double gint_left = 0.0;
  double gint_right = 0.0;
  double asymmetry = 0.0;
  double chi_half_target = 0.0;
  int level_left = 1;  // uncoupled level index used as the qubit excitation
  int level_right = 1;
  int threads = 1;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepMetadata meta;
};

struct CalibrationOptions {
  double ej_lo = 10e9;       // bracket on total EJ, Hz
  double ej_hi = 26e9;
  double tolerance = 1e3;    // |chi|/2 target tolerance, Hz
  int max_iterations = 60;
  bool auto_expand = true;
};

struct CalibrationResult {
  DeviceSpec device;       // input with the side's junction energies replaced
  double ej_total = 0.0;
  double chi_half = 0.0;   // achieved |chi|/2
  int iterations = 0;
  bool converged = false;
};

/// Bisect the side's total junction energy (kept symmetric) until the A-mode
/// longitudinal coupling magnitude satisfies | |chi|/2 - target | <= tol.
/// Throws CalibrationError when the bracket has no sign change (after
/// optional auto-expansion) or chi(EJ) is detectably non-monotone inside it.
CalibrationResult calibrate_chi(const DeviceSpec& device,
                                double chi_half_target, Side side,
                                const CalibrationOptions& options = {},
                                PrefactorConvention convention =
                                    PrefactorConvention::standard);

/// ZZ between the qubit modes versus variable-side detuning.  The fixed
/// (left) side must already be calibrated; asymmetry is applied to both
/// sides; the variable side's total EJ is retuned per grid point by secant
/// iteration to 10 kHz.  Rows are independent; threads = 0 picks
/// TCQSIM_THREADS or the hardware count.
SweepResult zz_vs_detuning(const SweepConfig& config, int threads = 0);

/// Same sweep for a transmon - bus - transmon device (asymmetry must be 0).
SweepResult transmon_baseline(const SweepConfig& config, int threads = 0);

/// Thread-count resolution used by the sweep entry points (request of 0
/// falls back to TCQSIM_THREADS, then the hardware count).
int resolve_threads(int requested);

}  // namespace tcqsim::sweep
