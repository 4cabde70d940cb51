#include "tcqsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "tcqsim/error.hpp"

namespace tcqsim::sweep {

namespace {

using circuit::QubitSpec;
using circuit::TcqSpec;
using circuit::TransmonSpec;
using hamiltonian::ProductLabel;
using hamiltonian::SubsystemBundle;
using observables::LabeledSpectrum;

QubitModeInfo qubit_mode(const QubitSpec& spec, ModeBasis basis,
                         PrefactorConvention conv) {
  return qubit_mode_info(spec, basis, conv);
}

QubitSpec with_ej_total(const QubitSpec& spec, double ej_total, double r,
                        AsymmetryConvention ac) {
  QubitSpec out = spec;
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TcqSpec>) {
          const auto [e1, e2] = apply_asymmetry(ej_total, r, ac);
          s.ej1 = e1;
          s.ej2 = e2;
        } else {
          s.ej = ej_total;
        }
      },
      out);
  return out;
}

double ej_total_of(const QubitSpec& spec) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TcqSpec>)
          return s.ej_total();
        else
          return s.ej;
      },
      spec);
}

bool is_tcq(const QubitSpec& spec) {
  return std::holds_alternative<TcqSpec>(spec);
}

// Dimension-1 placeholder occupying the unused tensor slot.
SubsystemBundle unit_bundle() {
  SubsystemBundle b;
  b.kind = hamiltonian::SubsystemKind::transmon;
  b.h = linalg::OperatorMatrix(1);
  b.n1 = linalg::OperatorMatrix(1);
  b.level_energies = {0.0};
  return b;
}

// Secant iteration on total EJ so the side's mode frequency hits target.
struct RetuneResult {
  QubitSpec spec;
  double achieved = 0.0;
  bool converged = false;
  std::string diagnostic;
};

RetuneResult retune_frequency(const QubitSpec& tmpl, double target, double r,
                              AsymmetryConvention ac, ModeBasis basis,
                              PrefactorConvention conv,
                              double tolerance = 1e4, int max_iter = 30) {
  RetuneResult out;
  const double ej0 = ej_total_of(tmpl);
  double x0 = ej0;
  auto eval = [&](double ej) {
    const auto spec = with_ej_total(tmpl, ej, r, ac);
    return qubit_mode(spec, basis, conv).frequency;
  };
  double f0 = eval(x0);
  if (std::abs(f0 - target) <= tolerance) {
    out.spec = with_ej_total(tmpl, x0, r, ac);
    out.achieved = f0;
    out.converged = true;
    return out;
  }
  // Harmonic initial guess: mode frequency scales roughly as sqrt(EJ).
  double x1 = std::clamp(x0 * (target / f0) * (target / f0), 0.125 * ej0,
                         8.0 * ej0);
  double f1 = eval(x1);
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(f1 - target) <= tolerance) {
      out.spec = with_ej_total(tmpl, x1, r, ac);
      out.achieved = f1;
      out.converged = true;
      return out;
    }
    const double denom = f1 - f0;
    if (denom == 0.0) break;
    double x2 = x1 - (f1 - target) * (x1 - x0) / denom;
    x2 = std::clamp(x2, 0.125 * ej0, 8.0 * ej0);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = eval(x1);
  }
  out.spec = with_ej_total(tmpl, x1, r, ac);
  out.achieved = f1;
  out.converged = false;
  std::ostringstream msg;
  msg << "frequency retune missed target by " << std::abs(f1 - target)
      << " Hz after " << max_iter << " iterations";
  out.diagnostic = msg.str();
  return out;
}

void run_rows(int count, int threads, const std::function<void(int)>& body) {
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(size_t(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        body(i);
    });
  for (auto& th : pool) th.join();
}

SweepResult run_sweep(const SweepConfig& config, int threads) {
  config.validate();
  const auto conv = config.convention;
  const auto ac = config.asymmetry_convention;
  const double r = config.asymmetry;

  // Asymmetry is applied to both TCQs at their current totals.
  DeviceSpec dev = config.device;
  if (is_tcq(dev.left))
    dev.left = with_ej_total(dev.left, ej_total_of(dev.left), r, ac);
  if (is_tcq(dev.right))
    dev.right = with_ej_total(dev.right, ej_total_of(dev.right), r, ac);

  const auto fixed_mode = qubit_mode(dev.left, config.mode_basis, conv);
  const auto left_bundle = hamiltonian::qubit_bundle(dev.left, conv);
  const auto bus = hamiltonian::bus_bundle(dev.bus);

  SweepResult result;
  result.meta.f_mode_fixed = fixed_mode.frequency;
  result.meta.ej_total_fixed = ej_total_of(dev.left);
  result.meta.gint_left = dev.gint_left;
  result.meta.gint_right = dev.gint_right;
  result.meta.asymmetry = r;
  result.meta.chi_half_target = config.chi_half_target;
  result.meta.level_left = fixed_mode.level;
  result.meta.threads = resolve_threads(threads);
  result.rows.resize(config.detuning_grid.size());

  // The variable-side level index for the requested basis is evaluated on
  // the template once; retuned points keep the same classification (checked
  // per row through the mode classifier inside retune_frequency).
  const auto right_mode0 = qubit_mode(dev.right, config.mode_basis, conv);
  result.meta.level_right = right_mode0.level;

  const auto body = [&](int idx) {
    SweepRow row;
    row.detuning = config.detuning_grid[size_t(idx)];
    try {
      const double target = fixed_mode.frequency + row.detuning;
      auto retuned = retune_frequency(dev.right, target, r, ac,
                                      config.mode_basis, conv);
      row.f_a_right = retuned.achieved;
      row.converged = retuned.converged;
      row.diagnostic = retuned.diagnostic;

      auto sys = hamiltonian::compose_from_bundles(
          left_bundle, hamiltonian::qubit_bundle(retuned.spec, conv), bus,
          dev.gint_left, dev.gint_right, conv);
      const auto es = linalg::eigh(sys.h_total);
      const auto ls = observables::label_states(es, sys.labels);

      const int ll = fixed_mode.level;
      const int lr = qubit_mode(retuned.spec, config.mode_basis, conv).level;
      row.zz = observables::static_zz(ls, ll, lr, /*strict=*/false);
      const ProductLabel zz_labels[] = {
          {0, 0, 0}, {ll, 0, 0}, {0, lr, 0}, {ll, lr, 0}};
      row.assignment_quality = ls.min_overlap(zz_labels);
    } catch (const Error& err) {
      row.converged = false;
      row.zz = std::numeric_limits<double>::quiet_NaN();
      row.diagnostic = err.what();
    }
    result.rows[size_t(idx)] = std::move(row);
  };
  run_rows(int(config.detuning_grid.size()), result.meta.threads, body);
  return result;
}

}  // namespace

double single_qubit_chi(const circuit::QubitSpec& spec,
                        const circuit::BusSpec& bus, double gint,
                        ModeBasis basis, PrefactorConvention convention) {
  const auto mode = qubit_mode_info(spec, basis, convention);
  auto sys = hamiltonian::compose_from_bundles(
      hamiltonian::qubit_bundle(spec, convention), unit_bundle(),
      hamiltonian::bus_bundle(bus), gint, 0.0, convention);
  const auto es = linalg::eigh(sys.h_total);
  const auto ls = observables::label_states(es, sys.labels);
  return observables::chi(ls, Side::left, mode.level, /*strict=*/false);
}

QubitModeInfo qubit_mode_info(const circuit::QubitSpec& spec, ModeBasis basis,
                              PrefactorConvention convention) {
  return std::visit(
      [&](const auto& s) -> QubitModeInfo {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TcqSpec>) {
          const auto modes = observables::mode_frequencies(s, convention);
          if (basis == ModeBasis::a) return {modes.f_a, modes.level_a};
          return {modes.f_b, modes.level_b};
        } else {
          return {observables::transmon_f01(s, convention), 1};
        }
      },
      spec);
}

std::pair<double, double> apply_asymmetry(double ej_total, double r,
                                          AsymmetryConvention convention) {
  if (!(ej_total > 0.0))
    throw InvalidParameter("apply_asymmetry: ej_total must be positive");
  if (r < 0.0 || r >= 1.0)
    throw InvalidParameter("apply_asymmetry: r must be in [0, 1)");
  if (convention == AsymmetryConvention::deviation_from_mean)
    return {0.5 * ej_total * (1.0 + r), 0.5 * ej_total * (1.0 - r)};
  return {ej_total * (1.0 + r) / (2.0 + r), ej_total / (2.0 + r)};
}

void SweepConfig::validate() const {
  device.validate();
  if (detuning_grid.empty())
    throw InvalidParameter("SweepConfig: empty detuning grid");
  if (!std::is_sorted(detuning_grid.begin(), detuning_grid.end()))
    throw InvalidParameter("SweepConfig: detuning grid must be sorted");
  for (double d : detuning_grid)
    if (!std::isfinite(d))
      throw InvalidParameter("SweepConfig: non-finite detuning");
  if (asymmetry < 0.0 || asymmetry >= 1.0)
    throw InvalidParameter("SweepConfig: asymmetry must be in [0, 1)");
}

std::vector<double> default_detuning_grid() {
  std::vector<double> grid;
  for (int k = -40; k <= 40; ++k) grid.push_back(double(k) * 10e6);
  return grid;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TCQSIM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

CalibrationResult calibrate_chi(const DeviceSpec& device,
                                double chi_half_target, Side side,
                                const CalibrationOptions& options,
                                PrefactorConvention convention) {
  device.validate();
  if (chi_half_target < 0.0)
    throw InvalidParameter("calibrate_chi: negative target");
  if (!(options.ej_lo > 0.0) || !(options.ej_hi > options.ej_lo))
    throw InvalidParameter("calibrate_chi: invalid bracket");

  const QubitSpec& var = side == Side::left ? device.left : device.right;
  if (is_tcq(var)) {
    const auto& t = std::get<TcqSpec>(var);
    if (std::abs(t.ej1 - t.ej2) > 1e-9 * t.ej_total())
      throw InvalidParameter(
          "calibrate_chi: variable side must be symmetric; apply asymmetry "
          "after calibration");
  }

  const double side_gint =
      side == Side::left ? device.gint_left : device.gint_right;
  std::vector<std::pair<double, double>> samples;
  auto objective = [&](double ej_total) {
    QubitSpec q = side == Side::left ? device.left : device.right;
    q = with_ej_total(q, ej_total, 0.0,
                      AsymmetryConvention::deviation_from_mean);
    const double half =
        0.5 * std::abs(single_qubit_chi(q, device.bus, side_gint, ModeBasis::a,
                                        convention));
    samples.emplace_back(ej_total, half);
    return half - chi_half_target;
  };

  double lo = options.ej_lo;
  double hi = options.ej_hi;
  double f_lo = objective(lo);
  double f_hi = objective(hi);
  int used = 2;

  auto finish = [&](double ej, double f_at, int iters,
                    bool converged) -> CalibrationResult {
    CalibrationResult res;
    res.device = device;
    auto& q = side == Side::left ? res.device.left : res.device.right;
    q = with_ej_total(q, ej, 0.0, AsymmetryConvention::deviation_from_mean);
    res.ej_total = ej;
    res.chi_half = f_at + chi_half_target;
    res.iterations = iters;
    res.converged = converged;
    if (const auto* t = std::get_if<TcqSpec>(&q)) {
      const auto modes = observables::mode_frequencies(*t, convention);
      const double fb = device.bus.frequency;
      if ((modes.f_a < fb) != (modes.f_b < fb))
        throw CalibrationError(
            "calibrate_chi: calibrated TCQ straddles the bus resonance "
            "(f_A and f_B on opposite sides); narrow the EJ bracket");
    }
    return res;
  };

  // Degenerate target (e.g. zero coupling, zero target): anything works.
  if (std::abs(f_lo) <= options.tolerance &&
      std::abs(f_hi) <= options.tolerance)
    return finish(0.5 * (lo + hi), 0.0, used, true);
  if (std::abs(f_lo) <= options.tolerance) return finish(lo, f_lo, used, true);
  if (std::abs(f_hi) <= options.tolerance) return finish(hi, f_hi, used, true);

  int expansions = 0;
  while (std::signbit(f_lo) == std::signbit(f_hi) && options.auto_expand &&
         expansions < 6) {
    lo = std::max(lo / 1.5, 1e9);
    hi = std::min(hi * 1.5, 1e11);
    f_lo = objective(lo);
    f_hi = objective(hi);
    used += 2;
    ++expansions;
  }
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    std::ostringstream msg;
    msg << "calibrate_chi: no sign change of |chi|/2 - target in bracket ["
        << lo << ", " << hi << "] Hz; samples (ej_total, chi_half):";
    for (const auto& [x, y] : samples) msg << " (" << x << ", " << y << ")";
    throw CalibrationError(msg.str());
  }

  for (int it = used; it < options.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = objective(mid);
    if (std::abs(f_mid) <= options.tolerance) return finish(mid, f_mid, it, true);
    const double span = std::max(std::abs(f_lo), std::abs(f_hi));
    const bool between = (f_mid >= std::min(f_lo, f_hi)) &&
                         (f_mid <= std::max(f_lo, f_hi));
    if (!between && std::abs(f_mid) > 2.0 * span) {
      std::ostringstream msg;
      msg << "calibrate_chi: chi(EJ) is non-monotone inside the bracket "
          << "(f(" << lo << ") = " << f_lo << ", f(" << mid << ") = " << f_mid
          << ", f(" << hi << ") = " << f_hi
          << "); retry with a narrower bracket";
      throw CalibrationError(msg.str());
    }
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
    if (hi - lo < 1.0)
      return finish(0.5 * (lo + hi), 0.5 * (f_lo + f_hi), it, false);
  }
  std::ostringstream msg;
  msg << "calibrate_chi: did not reach tolerance " << options.tolerance
      << " Hz within " << options.max_iterations << " iterations (bracket ["
      << lo << ", " << hi << "])";
  throw CalibrationError(msg.str());
}

SweepResult zz_vs_detuning(const SweepConfig& config, int threads) {
  return run_sweep(config, threads);
}

SweepResult transmon_baseline(const SweepConfig& config, int threads) {
  if (is_tcq(config.device.left) || is_tcq(config.device.right))
    throw InvalidParameter(
        "transmon_baseline: both subsystems must be transmons");
  if (config.asymmetry != 0.0)
    throw InvalidParameter(
        "transmon_baseline: junction asymmetry does not apply to transmons");
  return run_sweep(config, threads);
}

}  // namespace tcqsim::sweep
