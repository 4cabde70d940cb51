#include "tcqsim/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcqsim/csv.hpp"
#include "tcqsim/error.hpp"
#include "tcqsim/version.hpp"

namespace tcqsim::cli {

namespace {

using config::Command;
using config::RunConfig;
using observables::Side;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Everything here except the timestamp is a pure function of the config, so
// reruns stay byte-identical up to that one line.
void common_metadata(csv::Writer& w, const RunConfig& cfg) {
  w.metadata("tcqsim_version", std::string(version));
  w.metadata("command", config::command_name(cfg.command));
  w.metadata("convention",
             cfg.convention == PrefactorConvention::standard ? "standard"
                                                             : "literal-pi");
  w.metadata("timestamp", utc_timestamp());
  w.metadata_block("config", config::serialize_config(cfg));
}

void run_spectrum(const RunConfig& cfg, csv::Writer& w) {
  const auto sys = hamiltonian::compose_total(cfg.device, cfg.convention);
  const auto es = linalg::eigh(sys.h_total);
  const auto ls = observables::label_states(es, sys.labels);
  w.metadata("assignment_quality", csv::field(ls.assignment_quality));
  w.header({"index", "energy_hz", "label_i", "label_j", "label_n", "overlap",
            "ambiguous"});
  for (int k = 0; k < ls.size(); ++k)
    w.row({csv::field(k), csv::field(ls.energies[size_t(k)]),
           csv::field(ls.labels[size_t(k)].i), csv::field(ls.labels[size_t(k)].j),
           csv::field(ls.labels[size_t(k)].n),
           csv::field(ls.overlaps[size_t(k)]),
           csv::field(bool(ls.ambiguous[size_t(k)]))});
}

void run_chi(const RunConfig& cfg, csv::Writer& w) {
  const auto sys = hamiltonian::compose_total(cfg.device, cfg.convention);
  const auto es = linalg::eigh(sys.h_total);
  const auto ls = observables::label_states(es, sys.labels);
  const auto mode_l =
      sweep::qubit_mode_info(cfg.device.left, cfg.sweep.mode, cfg.convention);
  const auto mode_r =
      sweep::qubit_mode_info(cfg.device.right, cfg.sweep.mode, cfg.convention);
  w.header({"side", "level", "f_mode_hz", "chi_hz", "two_chi_hz"});
  const double chi_l =
      observables::chi(ls, Side::left, mode_l.level, /*strict=*/false);
  const double chi_r =
      observables::chi(ls, Side::right, mode_r.level, /*strict=*/false);
  w.row({"left", csv::field(mode_l.level), csv::field(mode_l.frequency),
         csv::field(chi_l), csv::field(2.0 * chi_l)});
  w.row({"right", csv::field(mode_r.level), csv::field(mode_r.frequency),
         csv::field(chi_r), csv::field(2.0 * chi_r)});
}

void run_calibrate(const RunConfig& cfg, csv::Writer& w) {
  sweep::CalibrationOptions opt;
  opt.ej_lo = cfg.sweep.ej_bracket_lo;
  opt.ej_hi = cfg.sweep.ej_bracket_hi;
  const auto cal =
      sweep::calibrate_chi(cfg.device, cfg.sweep.chi_half_target,
                           cfg.sweep.calibrate_side, opt, cfg.convention);
  w.header({"side", "ej_total_hz", "chi_half_hz", "iterations", "converged"});
  w.row({cfg.sweep.calibrate_side == Side::left ? "left" : "right",
         csv::field(cal.ej_total), csv::field(cal.chi_half),
         csv::field(cal.iterations), csv::field(cal.converged)});
}

void run_zz_sweep(const RunConfig& cfg, csv::Writer& w, int threads) {
  circuit::DeviceSpec dev = cfg.device;
  if (cfg.sweep.calibrate) {
    sweep::CalibrationOptions opt;
    opt.ej_lo = cfg.sweep.ej_bracket_lo;
    opt.ej_hi = cfg.sweep.ej_bracket_hi;
    const auto cal =
        sweep::calibrate_chi(dev, cfg.sweep.chi_half_target,
                             cfg.sweep.calibrate_side, opt, cfg.convention);
    dev = cal.device;
    w.metadata("calibrated_ej_total_hz", csv::field(cal.ej_total));
    w.metadata("calibrated_chi_half_hz", csv::field(cal.chi_half));
  }
  sweep::SweepConfig sc;
  sc.device = dev;
  sc.detuning_grid = cfg.sweep.grid();
  sc.asymmetry = cfg.sweep.asymmetry;
  sc.chi_half_target = cfg.sweep.chi_half_target;
  sc.mode_basis = cfg.sweep.mode;
  sc.asymmetry_convention = cfg.sweep.asymmetry_definition;
  sc.convention = cfg.convention;
  const auto res = cfg.command == Command::transmon_baseline
                       ? sweep::transmon_baseline(sc, threads)
                       : sweep::zz_vs_detuning(sc, threads);
  w.metadata("f_mode_fixed_hz", csv::field(res.meta.f_mode_fixed));
  w.metadata("ej_total_fixed_hz", csv::field(res.meta.ej_total_fixed));
  w.metadata("gint_left_invf", csv::field(res.meta.gint_left));
  w.metadata("gint_right_invf", csv::field(res.meta.gint_right));
  w.metadata("asymmetry", csv::field(res.meta.asymmetry));
  w.metadata("level_left", csv::field(res.meta.level_left));
  w.metadata("level_right", csv::field(res.meta.level_right));
  w.header({"detuning_hz", "zz_hz", "f_a_right_hz", "assignment_quality",
            "converged", "diagnostic"});
  for (const auto& r : res.rows)
    w.row({csv::field(r.detuning), csv::field(r.zz), csv::field(r.f_a_right),
           csv::field(r.assignment_quality), csv::field(r.converged),
           csv::field(r.diagnostic)});
}

void run_rip(const RunConfig& cfg, csv::Writer& w) {
  rip::RipPulse pulse = cfg.rip.pulse();
  const rip::ChiPair chis = cfg.rip.chis();
  if (cfg.rip.target_phase > 0.0)
    pulse = rip::amplitude_for_phase(pulse, chis, cfg.rip.target_phase);
  const auto res = rip::echoed_rip(pulse, chis);
  w.metadata("amplitude_hz", csv::field(pulse.amplitude));
  w.metadata("tau_s", csv::field(pulse.duration));
  w.metadata("total_duration_s",
             csv::field(2.0 * pulse.duration + 2.0 * cfg.rip.echo_time));
  w.metadata("entangling_phase_rad", csv::field(res.entangling_phase));
  w.metadata("single_qubit_phase_left_rad",
             csv::field(res.single_qubit_phase_left));
  w.metadata("single_qubit_phase_right_rad",
             csv::field(res.single_qubit_phase_right));
  w.metadata("dt_convergence_rad", csv::field(res.dt_convergence));
  w.header({"state", "phase_rad", "residual_photons"});
  const char* names[4] = {"00", "01", "10", "11"};
  for (int s = 0; s < 4; ++s)
    w.row({names[s], csv::field(res.phases[size_t(s)]),
           csv::field(res.residual_photons[size_t(s)])});
}

void run_ramsey(const RunConfig& cfg, csv::Writer& w) {
  rip::RipPulse pulse = cfg.rip.pulse();
  const rip::ChiPair chis = cfg.rip.chis();
  if (cfg.rip.target_phase > 0.0)
    pulse = rip::amplitude_for_phase(pulse, chis, cfg.rip.target_phase);
  w.metadata("amplitude_hz", csv::field(pulse.amplitude));
  const auto trace =
      rip::ramsey_trace(pulse, chis, cfg.ramsey.grid(), cfg.rip.echo_time);
  w.header({"tau_s", "total_duration_s", "phase_left_rad", "phase_right_rad",
            "contrast_left", "contrast_right", "z_left", "z_right",
            "entangling_phase_rad"});
  for (const auto& p : trace)
    w.row({csv::field(p.tau), csv::field(p.total_duration),
           csv::field(p.phase_left), csv::field(p.phase_right),
           csv::field(p.contrast_left), csv::field(p.contrast_right),
           csv::field(p.z_left), csv::field(p.z_right),
           csv::field(p.entangling_phase)});
}

}  // namespace

std::string output_path(const RunConfig& cfg, const std::string& override_path) {
  if (!override_path.empty()) return override_path;
  if (!cfg.output_path.empty()) return cfg.output_path;
  return config::command_name(cfg.command) + ".csv";
}

int run(const RunConfig& cfg, int threads, std::ostream* out) {
  std::ofstream file;
  std::ostream* sink = out;
  if (!sink) {
    const std::string path = output_path(cfg, "");
    if (path == "-") {
      sink = &std::cout;
    } else {
      file.open(path, std::ios::binary);
      if (!file)
        throw Error("cannot open output file '" + path + "'");
      sink = &file;
    }
  }
  csv::Writer w(*sink);
  common_metadata(w, cfg);
  switch (cfg.command) {
    case Command::spectrum: run_spectrum(cfg, w); break;
    case Command::chi: run_chi(cfg, w); break;
    case Command::calibrate: run_calibrate(cfg, w); break;
    case Command::zz_sweep:
    case Command::transmon_baseline: run_zz_sweep(cfg, w, threads); break;
    case Command::rip: run_rip(cfg, w); break;
    case Command::ramsey: run_ramsey(cfg, w); break;
  }
  sink->flush();
  if (!*sink) throw Error("write failure on output stream");
  return 0;
}

}  // namespace tcqsim::cli
