#pragma once

#include <string>
#include <vector>

#include "tcqsim/rip.hpp"
#include "tcqsim/sweep.hpp"

namespace tcqsim::config {

enum class Command {
  spectrum,
  chi,
  zz_sweep,
  transmon_baseline,
  calibrate,
  rip,
  ramsey,
};

Command parse_command(const std::string& name);
std::string command_name(Command c);

/// Defaults mirroring the reference device: 45/45/20 fF TCQs or 70 fF
/// transmons on a 6 GHz bus.  The gint and EJ values put the qubit modes in
/// the 4-5 GHz band with an A-mode chi/2 of order 1 MHz, the regime the
/// calibration bracket assumes.
namespace defaults {
inline constexpr double tcq_c1 = 45e-15;
inline constexpr double tcq_c2 = 45e-15;
inline constexpr double tcq_cs = 20e-15;
inline constexpr double tcq_ej_total = 17e9;
inline constexpr double tcq_gint = 6.0e11;        // 1/F
inline constexpr double transmon_c = 70e-15;
inline constexpr double transmon_ej = 14e9;
inline constexpr double transmon_gint = 4.0e11;   // 1/F
inline constexpr double bus_frequency = 6e9;
// Calibration brackets keeping both TCQ modes (or the transmon f01) below
// the bus resonance.
inline constexpr double ej_bracket_lo = 10e9;
inline constexpr double ej_bracket_hi = 26e9;
inline constexpr double transmon_ej_bracket_lo = 8e9;
inline constexpr double transmon_ej_bracket_hi = 17e9;
}  // namespace defaults

struct SweepBlock {
  double detuning_start = -400e6;
  double detuning_stop = 400e6;
  double detuning_step = 10e6;
  double asymmetry = 0.0;
  double chi_half_target = 1e6;
  bool calibrate = true;
  observables::Side calibrate_side = observables::Side::left;
  sweep::ModeBasis mode = sweep::ModeBasis::a;
  sweep::AsymmetryConvention asymmetry_definition =
      sweep::AsymmetryConvention::deviation_from_mean;
  double ej_bracket_lo = defaults::ej_bracket_lo;
  double ej_bracket_hi = defaults::ej_bracket_hi;

  std::vector<double> grid() const;
  bool operator==(const SweepBlock&) const = default;
};

struct RipBlock {
  rip::PulseShape shape = rip::PulseShape::raised_cosine;
  double amplitude = 0.0;     // Hz; 0 defers to target_phase
  double target_phase = 0.0;  // rad; > 0 scales the amplitude to match
  double detuning = -3e6;
  double duration = 400e-9;
  double edge_time = 100e-9;
  double kappa = 0.0;
  double dt = 0.0;
  double two_chi_left = 10e6;
  double two_chi_right = 17e6;
  double echo_time = 0.0;

  rip::RipPulse pulse() const;
  rip::ChiPair chis() const;
  bool operator==(const RipBlock&) const = default;
};

struct RamseyBlock {
  double tau_start = 0.0;
  double tau_stop = 1e-6;
  double tau_step = 20e-9;

  std::vector<double> grid() const;
  bool operator==(const RamseyBlock&) const = default;
};

struct RunConfig {
  Command command = Command::spectrum;
  circuit::DeviceSpec device;
  PrefactorConvention convention = PrefactorConvention::standard;
  SweepBlock sweep;
  RipBlock rip;
  RamseyBlock ramsey;
  std::string output_path;

  bool operator==(const RunConfig&) const = default;
};

/// Parse the line-oriented `key = value` format ([section] headers, units
/// mandatory on physical values).  Unknown keys, unknown sections, bad
/// units, and malformed lines raise ConfigError with the line number.  The
/// command's primary section must be present, possibly empty.
RunConfig parse_config(const std::string& text, Command command);

/// Canonical serialization: every section, every key, values in base SI
/// units so parse(serialize(c)) == c exactly.
std::string serialize_config(const RunConfig& config);

/// Shortest deterministic decimal form that round-trips a double.
std::string format_double(double v);

}  // namespace tcqsim::config
