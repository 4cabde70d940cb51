#include "tcqsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <sstream>

#include "tcqsim/error.hpp"

namespace tcqsim::config {

namespace {

using circuit::BusSpec;
using circuit::TcqSpec;
using circuit::TransmonSpec;

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

using Section = std::vector<Entry>;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_number_token(const std::string& token, int line) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ConfigError("malformed number '" + token + "'", line);
  if (!std::isfinite(v))
    throw ConfigError("non-finite number '" + token + "'", line);
  return v;
}

// Splits "<number> [unit]" and converts with the accepted unit table.
double parse_with_units(const Entry& e,
                        const std::vector<std::pair<std::string, double>>& units,
                        const std::string& quantity, bool unit_required) {
  std::istringstream in(e.value);
  std::string num_tok, unit_tok, extra;
  in >> num_tok >> unit_tok >> extra;
  if (!extra.empty())
    throw ConfigError("trailing text after value '" + e.value + "'", e.line);
  const double num = parse_number_token(num_tok, e.line);
  if (unit_tok.empty()) {
    if (!unit_required) return num;
    std::string expected;
    for (const auto& [name, scale] : units)
      expected += (expected.empty() ? "" : ", ") + name;
    throw ConfigError("missing " + quantity + " unit for key '" + e.key +
                          "' (expected one of: " + expected + ")",
                      e.line);
  }
  for (const auto& [name, scale] : units)
    if (unit_tok == name) return num * scale;
  std::string expected;
  for (const auto& [name, scale] : units)
    expected += (expected.empty() ? "" : ", ") + name;
  throw ConfigError("unit mismatch for key '" + e.key + "': got '" + unit_tok +
                        "', expected a " + quantity + " unit (" + expected +
                        ")",
                    e.line);
}

double parse_capacitance(const Entry& e) {
  return parse_with_units(
      e, {{"fF", 1e-15}, {"pF", 1e-12}, {"F", 1.0}}, "capacitance", true);
}

double parse_frequency(const Entry& e) {
  return parse_with_units(
      e, {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}, "frequency",
      true);
}

double parse_time(const Entry& e) {
  return parse_with_units(
      e, {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}}, "time", true);
}

double parse_inverse_capacitance(const Entry& e) {
  return parse_with_units(
      e, {{"1/fF", 1e15}, {"1/pF", 1e12}, {"1/F", 1.0}}, "inverse-capacitance",
      true);
}

double parse_dimensionless(const Entry& e) {
  return parse_with_units(e, {{"rad", 1.0}}, "dimensionless", false);
}

int parse_int(const Entry& e) {
  const double v = parse_dimensionless(e);
  const int i = int(std::llround(v));
  if (double(i) != v)
    throw ConfigError("expected an integer for key '" + e.key + "'", e.line);
  return i;
}

bool parse_bool(const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ConfigError("expected true/false for key '" + e.key + "'", e.line);
}

[[noreturn]] void unknown_key(const Entry& e, const std::string& section) {
  throw ConfigError("unknown key '" + e.key + "' in section [" + section + "]",
                    e.line);
}

void apply_qubit_entry(circuit::QubitSpec& spec, const Entry& e,
                       const std::string& section) {
  if (auto* t = std::get_if<TcqSpec>(&spec)) {
    if (e.key == "c1") t->c1 = parse_capacitance(e);
    else if (e.key == "c2") t->c2 = parse_capacitance(e);
    else if (e.key == "cs") t->cs = parse_capacitance(e);
    else if (e.key == "ej1") t->ej1 = parse_frequency(e);
    else if (e.key == "ej2") t->ej2 = parse_frequency(e);
    else if (e.key == "ng1") t->ng1 = parse_dimensionless(e);
    else if (e.key == "ng2") t->ng2 = parse_dimensionless(e);
    else if (e.key == "charge_cutoff") t->charge_cutoff = parse_int(e);
    else if (e.key == "keep_levels") t->keep_levels = parse_int(e);
    else unknown_key(e, section + " (tcq)");
  } else {
    auto& tr = std::get<TransmonSpec>(spec);
    if (e.key == "c") tr.c = parse_capacitance(e);
    else if (e.key == "ej") tr.ej = parse_frequency(e);
    else if (e.key == "ng") tr.ng = parse_dimensionless(e);
    else if (e.key == "charge_cutoff") tr.charge_cutoff = parse_int(e);
    else if (e.key == "keep_levels") tr.keep_levels = parse_int(e);
    else unknown_key(e, section + " (transmon)");
  }
}

circuit::QubitSpec default_qubit(bool transmon) {
  if (transmon) {
    TransmonSpec t;
    t.c = defaults::transmon_c;
    t.ej = defaults::transmon_ej;
    return t;
  }
  TcqSpec t;
  t.c1 = defaults::tcq_c1;
  t.c2 = defaults::tcq_c2;
  t.cs = defaults::tcq_cs;
  t.ej1 = 0.5 * defaults::tcq_ej_total;
  t.ej2 = 0.5 * defaults::tcq_ej_total;
  return t;
}

double default_gint(const circuit::QubitSpec& q) {
  return std::holds_alternative<TcqSpec>(q) ? defaults::tcq_gint
                                            : defaults::transmon_gint;
}

std::string side_name(observables::Side s) {
  return s == observables::Side::left ? "left" : "right";
}

std::vector<double> linear_grid(double start, double stop, double step,
                                const char* what) {
  if (!(step > 0.0))
    throw InvalidParameter(std::string(what) + ": step must be positive");
  if (stop < start)
    throw InvalidParameter(std::string(what) + ": stop below start");
  const int n = int(std::llround((stop - start) / step));
  std::vector<double> grid;
  grid.reserve(size_t(n) + 1);
  for (int k = 0; k <= n; ++k) grid.push_back(start + double(k) * step);
  return grid;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "spectrum") return Command::spectrum;
  if (name == "chi") return Command::chi;
  if (name == "zz-sweep") return Command::zz_sweep;
  if (name == "transmon-baseline") return Command::transmon_baseline;
  if (name == "calibrate") return Command::calibrate;
  if (name == "rip") return Command::rip;
  if (name == "ramsey") return Command::ramsey;
  throw ConfigError("unknown command '" + name +
                    "' (expected spectrum, chi, zz-sweep, transmon-baseline, "
                    "calibrate, rip, ramsey)");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::chi: return "chi";
    case Command::zz_sweep: return "zz-sweep";
    case Command::transmon_baseline: return "transmon-baseline";
    case Command::calibrate: return "calibrate";
    case Command::rip: return "rip";
    case Command::ramsey: return "ramsey";
  }
  return "?";
}

std::vector<double> SweepBlock::grid() const {
  return linear_grid(detuning_start, detuning_stop, detuning_step,
                     "sweep detuning grid");
}

std::vector<double> RamseyBlock::grid() const {
  return linear_grid(tau_start, tau_stop, tau_step, "ramsey tau grid");
}

rip::RipPulse RipBlock::pulse() const {
  rip::RipPulse p;
  p.shape = shape;
  p.amplitude = amplitude;
  p.detuning = detuning;
  p.duration = duration;
  p.edge_time = edge_time;
  p.kappa = kappa;
  p.dt = dt;
  return p;
}

rip::ChiPair RipBlock::chis() const {
  return {0.5 * two_chi_left, 0.5 * two_chi_right};
}

RunConfig parse_config(const std::string& text, Command command) {
  std::map<std::string, Section> sections;
  const std::vector<std::string> known = {
      "device", "left",   "right",  "bus",    "coupling",
      "sweep",  "rip",    "ramsey", "numerics", "output"};

  std::string current;
  int line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header '" + line + "'", line_no);
      current = trim(line.substr(1, line.size() - 2));
      if (std::find(known.begin(), known.end(), current) == known.end())
        throw ConfigError("unknown section [" + current + "]", line_no);
      sections[current];  // mark present even if empty
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
    if (current.empty())
      throw ConfigError("key outside any [section]", line_no);
    Entry e;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = line_no;
    if (e.key.empty()) throw ConfigError("empty key", line_no);
    if (e.value.empty())
      throw ConfigError("empty value for key '" + e.key + "'", line_no);
    sections[current].push_back(e);
  }

  // Per-command required sections (any one suffices), so an empty file is
  // rejected with a hint.
  const std::vector<std::string> primary = [&]() -> std::vector<std::string> {
    switch (command) {
      case Command::spectrum:
      case Command::chi:
        return {"device", "left", "right", "bus", "coupling"};
      case Command::zz_sweep:
      case Command::transmon_baseline:
      case Command::calibrate: return {"sweep"};
      case Command::rip: return {"rip"};
      case Command::ramsey: return {"ramsey", "rip"};
    }
    return {"device"};
  }();
  bool primary_found = false;
  for (const auto& name : primary) primary_found |= sections.count(name) > 0;
  if (!primary_found) {
    std::string expected;
    for (const auto& name : primary)
      expected += (expected.empty() ? "[" : " or [") + name + "]";
    throw ConfigError("missing required section " + expected +
                      " for command '" + command_name(command) +
                      "' (sections may be empty; defaults then apply)");
  }

  RunConfig cfg;
  cfg.command = command;
  const bool transmon_default = command == Command::transmon_baseline;
  cfg.device.left = default_qubit(transmon_default);
  cfg.device.right = default_qubit(transmon_default);
  cfg.device.bus.frequency = defaults::bus_frequency;
  if (transmon_default) {
    cfg.sweep.ej_bracket_lo = defaults::transmon_ej_bracket_lo;
    cfg.sweep.ej_bracket_hi = defaults::transmon_ej_bracket_hi;
  }

  bool gint_left_set = false, gint_right_set = false;

  if (auto it = sections.find("device"); it != sections.end()) {
    for (const auto& e : it->second) {
      if (e.key == "left" || e.key == "right") {
        circuit::QubitSpec q;
        if (e.value == "tcq") q = default_qubit(false);
        else if (e.value == "transmon") q = default_qubit(true);
        else
          throw ConfigError("expected tcq or transmon for '" + e.key + "'",
                            e.line);
        (e.key == "left" ? cfg.device.left : cfg.device.right) = q;
      } else if (e.key == "convention") {
        if (e.value == "standard")
          cfg.convention = PrefactorConvention::standard;
        else if (e.value == "literal-pi")
          cfg.convention = PrefactorConvention::literal_pi;
        else
          throw ConfigError("expected standard or literal-pi", e.line);
      } else {
        unknown_key(e, "device");
      }
    }
  }
  if (auto it = sections.find("left"); it != sections.end())
    for (const auto& e : it->second)
      apply_qubit_entry(cfg.device.left, e, "left");
  if (auto it = sections.find("right"); it != sections.end())
    for (const auto& e : it->second)
      apply_qubit_entry(cfg.device.right, e, "right");

  if (auto it = sections.find("bus"); it != sections.end()) {
    for (const auto& e : it->second) {
      if (e.key == "frequency") cfg.device.bus.frequency = parse_frequency(e);
      else if (e.key == "fock_dim") cfg.device.bus.fock_dim = parse_int(e);
      else if (e.key == "charge_zpf")
        cfg.device.bus.charge_zpf = parse_dimensionless(e);
      else unknown_key(e, "bus");
    }
  }
  if (auto it = sections.find("coupling"); it != sections.end()) {
    for (const auto& e : it->second) {
      if (e.key == "gint_left") {
        cfg.device.gint_left = parse_inverse_capacitance(e);
        gint_left_set = true;
      } else if (e.key == "gint_right") {
        cfg.device.gint_right = parse_inverse_capacitance(e);
        gint_right_set = true;
      } else {
        unknown_key(e, "coupling");
      }
    }
  }
  if (!gint_left_set) cfg.device.gint_left = default_gint(cfg.device.left);
  if (!gint_right_set) cfg.device.gint_right = default_gint(cfg.device.right);

  if (auto it = sections.find("sweep"); it != sections.end()) {
    for (const auto& e : it->second) {
      if (e.key == "detuning_start") cfg.sweep.detuning_start = parse_frequency(e);
      else if (e.key == "detuning_stop") cfg.sweep.detuning_stop = parse_frequency(e);
      else if (e.key == "detuning_step") cfg.sweep.detuning_step = parse_frequency(e);
      else if (e.key == "asymmetry") cfg.sweep.asymmetry = parse_dimensionless(e);
      else if (e.key == "chi_half_target")
        cfg.sweep.chi_half_target = parse_frequency(e);
      else if (e.key == "calibrate") cfg.sweep.calibrate = parse_bool(e);
      else if (e.key == "calibrate_side") {
        if (e.value == "left") cfg.sweep.calibrate_side = observables::Side::left;
        else if (e.value == "right")
          cfg.sweep.calibrate_side = observables::Side::right;
        else throw ConfigError("expected left or right", e.line);
      } else if (e.key == "mode") {
        if (e.value == "A" || e.value == "a") cfg.sweep.mode = sweep::ModeBasis::a;
        else if (e.value == "B" || e.value == "b")
          cfg.sweep.mode = sweep::ModeBasis::b;
        else throw ConfigError("expected A or B", e.line);
      } else if (e.key == "asymmetry_definition") {
        if (e.value == "deviation-from-mean")
          cfg.sweep.asymmetry_definition =
              sweep::AsymmetryConvention::deviation_from_mean;
        else if (e.value == "ratio")
          cfg.sweep.asymmetry_definition = sweep::AsymmetryConvention::ratio;
        else throw ConfigError("expected deviation-from-mean or ratio", e.line);
      } else if (e.key == "ej_bracket_lo") {
        cfg.sweep.ej_bracket_lo = parse_frequency(e);
      } else if (e.key == "ej_bracket_hi") {
        cfg.sweep.ej_bracket_hi = parse_frequency(e);
      } else {
        unknown_key(e, "sweep");
      }
    }
  }

  if (auto it = sections.find("rip"); it != sections.end()) {
    for (const auto& e : it->second) {
      if (e.key == "shape") {
        if (e.value == "square") cfg.rip.shape = rip::PulseShape::square;
        else if (e.value == "raised-cosine")
          cfg.rip.shape = rip::PulseShape::raised_cosine;
        else throw ConfigError("expected square or raised-cosine", e.line);
      }
      else if (e.key == "amplitude") cfg.rip.amplitude = parse_frequency(e);
      else if (e.key == "target_phase") cfg.rip.target_phase = parse_dimensionless(e);
      else if (e.key == "detuning") cfg.rip.detuning = parse_frequency(e);
      else if (e.key == "duration") cfg.rip.duration = parse_time(e);
      else if (e.key == "edge_time") cfg.rip.edge_time = parse_time(e);
      else if (e.key == "kappa") cfg.rip.kappa = parse_frequency(e);
      else if (e.key == "dt") cfg.rip.dt = parse_time(e);
      else if (e.key == "two_chi_left") cfg.rip.two_chi_left = parse_frequency(e);
      else if (e.key == "two_chi_right") cfg.rip.two_chi_right = parse_frequency(e);
      else if (e.key == "echo_time") cfg.rip.echo_time = parse_time(e);
      else unknown_key(e, "rip");
    }
  }

  if (auto it = sections.find("ramsey"); it != sections.end()) {
    for (const auto& e : it->second) {
      if (e.key == "tau_start") cfg.ramsey.tau_start = parse_time(e);
      else if (e.key == "tau_stop") cfg.ramsey.tau_stop = parse_time(e);
      else if (e.key == "tau_step") cfg.ramsey.tau_step = parse_time(e);
      else unknown_key(e, "ramsey");
    }
  }

  if (auto it = sections.find("numerics"); it != sections.end()) {
    for (const auto& e : it->second) {
      if (e.key == "charge_cutoff" || e.key == "keep_levels") {
        const int v = parse_int(e);
        auto apply = [&](circuit::QubitSpec& q) {
          std::visit(
              [&](auto& s) {
                if (e.key == "charge_cutoff") s.charge_cutoff = v;
                else s.keep_levels = v;
              },
              q);
        };
        apply(cfg.device.left);
        apply(cfg.device.right);
      } else if (e.key == "fock_dim") {
        cfg.device.bus.fock_dim = parse_int(e);
      } else {
        unknown_key(e, "numerics");
      }
    }
  }

  if (auto it = sections.find("output"); it != sections.end()) {
    for (const auto& e : it->second) {
      if (e.key == "path") cfg.output_path = e.value;
      else unknown_key(e, "output");
    }
  }

  cfg.device.validate();
  return cfg;
}

std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

namespace {

void emit_qubit(std::ostringstream& out, const char* section,
                const circuit::QubitSpec& q) {
  out << "[" << section << "]\n";
  if (const auto* t = std::get_if<TcqSpec>(&q)) {
    out << "c1 = " << format_double(t->c1) << " F\n";
    out << "c2 = " << format_double(t->c2) << " F\n";
    out << "cs = " << format_double(t->cs) << " F\n";
    out << "ej1 = " << format_double(t->ej1) << " Hz\n";
    out << "ej2 = " << format_double(t->ej2) << " Hz\n";
    out << "ng1 = " << format_double(t->ng1) << "\n";
    out << "ng2 = " << format_double(t->ng2) << "\n";
    out << "charge_cutoff = " << t->charge_cutoff << "\n";
    out << "keep_levels = " << t->keep_levels << "\n";
  } else {
    const auto& tr = std::get<TransmonSpec>(q);
    out << "c = " << format_double(tr.c) << " F\n";
    out << "ej = " << format_double(tr.ej) << " Hz\n";
    out << "ng = " << format_double(tr.ng) << "\n";
    out << "charge_cutoff = " << tr.charge_cutoff << "\n";
    out << "keep_levels = " << tr.keep_levels << "\n";
  }
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[device]\n";
  out << "left = "
      << (std::holds_alternative<TcqSpec>(cfg.device.left) ? "tcq" : "transmon")
      << "\n";
  out << "right = "
      << (std::holds_alternative<TcqSpec>(cfg.device.right) ? "tcq"
                                                            : "transmon")
      << "\n";
  out << "convention = "
      << (cfg.convention == PrefactorConvention::standard ? "standard"
                                                          : "literal-pi")
      << "\n";
  emit_qubit(out, "left", cfg.device.left);
  emit_qubit(out, "right", cfg.device.right);
  out << "[bus]\n";
  out << "frequency = " << format_double(cfg.device.bus.frequency) << " Hz\n";
  out << "fock_dim = " << cfg.device.bus.fock_dim << "\n";
  out << "charge_zpf = " << format_double(cfg.device.bus.charge_zpf) << "\n";
  out << "[coupling]\n";
  out << "gint_left = " << format_double(cfg.device.gint_left) << " 1/F\n";
  out << "gint_right = " << format_double(cfg.device.gint_right) << " 1/F\n";
  out << "[sweep]\n";
  out << "detuning_start = " << format_double(cfg.sweep.detuning_start)
      << " Hz\n";
  out << "detuning_stop = " << format_double(cfg.sweep.detuning_stop)
      << " Hz\n";
  out << "detuning_step = " << format_double(cfg.sweep.detuning_step)
      << " Hz\n";
  out << "asymmetry = " << format_double(cfg.sweep.asymmetry) << "\n";
  out << "chi_half_target = " << format_double(cfg.sweep.chi_half_target)
      << " Hz\n";
  out << "calibrate = " << (cfg.sweep.calibrate ? "true" : "false") << "\n";
  out << "calibrate_side = " << side_name(cfg.sweep.calibrate_side) << "\n";
  out << "mode = " << (cfg.sweep.mode == sweep::ModeBasis::a ? "A" : "B")
      << "\n";
  out << "asymmetry_definition = "
      << (cfg.sweep.asymmetry_definition ==
                  sweep::AsymmetryConvention::deviation_from_mean
              ? "deviation-from-mean"
              : "ratio")
      << "\n";
  out << "ej_bracket_lo = " << format_double(cfg.sweep.ej_bracket_lo)
      << " Hz\n";
  out << "ej_bracket_hi = " << format_double(cfg.sweep.ej_bracket_hi)
      << " Hz\n";
  out << "[rip]\n";
  out << "shape = "
      << (cfg.rip.shape == rip::PulseShape::square ? "square" : "raised-cosine")
      << "\n";
  out << "amplitude = " << format_double(cfg.rip.amplitude) << " Hz\n";
  out << "target_phase = " << format_double(cfg.rip.target_phase) << "\n";
  out << "detuning = " << format_double(cfg.rip.detuning) << " Hz\n";
  out << "duration = " << format_double(cfg.rip.duration) << " s\n";
  out << "edge_time = " << format_double(cfg.rip.edge_time) << " s\n";
  out << "kappa = " << format_double(cfg.rip.kappa) << " Hz\n";
  out << "dt = " << format_double(cfg.rip.dt) << " s\n";
  out << "two_chi_left = " << format_double(cfg.rip.two_chi_left) << " Hz\n";
  out << "two_chi_right = " << format_double(cfg.rip.two_chi_right) << " Hz\n";
  out << "echo_time = " << format_double(cfg.rip.echo_time) << " s\n";
  out << "[ramsey]\n";
  out << "tau_start = " << format_double(cfg.ramsey.tau_start) << " s\n";
  out << "tau_stop = " << format_double(cfg.ramsey.tau_stop) << " s\n";
  out << "tau_step = " << format_double(cfg.ramsey.tau_step) << " s\n";
  if (!cfg.output_path.empty()) {
    out << "[output]\n";
    out << "path = " << cfg.output_path << "\n";
  }
  return out.str();
}

}  // namespace tcqsim::config
