#include "tcqsim/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tcqsim/error.hpp"

namespace tcqsim::observables {

namespace {

constexpr double kOverlapTie = 1e-6;

std::string label_str(const ProductLabel& l) {
  std::ostringstream s;
  s << "(" << l.i << "," << l.j << "," << l.n << ")";
  return s.str();
}

}  // namespace

int LabeledSpectrum::find(const ProductLabel& label) const {
  for (size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) return int(k);
  return -1;
}

double LabeledSpectrum::energy_of(const ProductLabel& label,
                                  bool strict) const {
  const int k = find(label);
  if (k < 0)
    throw LabelError("labeled state " + label_str(label) + " not found");
  if (strict && ambiguous[size_t(k)]) {
    std::ostringstream msg;
    msg << "labeled state " << label_str(label)
        << " is ambiguous (overlap " << overlaps[size_t(k)] << ")";
    throw LabelError(msg.str());
  }
  return energies[size_t(k)];
}

double LabeledSpectrum::min_overlap(std::span<const ProductLabel> set) const {
  double mn = 1.0;
  for (const auto& l : set) {
    const int k = find(l);
    if (k < 0) return 0.0;
    mn = std::min(mn, overlaps[size_t(k)]);
  }
  return mn;
}

LabeledSpectrum label_states(const linalg::EighResult& eigensystem,
                             const std::vector<ProductLabel>& product_labels,
                             double ambiguity_floor) {
  const int n = int(eigensystem.values.size());
  if (int(product_labels.size()) != n)
    throw InvalidParameter("label_states: label count must equal dimension");

  // Squared overlaps of state k with product-basis vector p are just the
  // squared eigenvector components.
  std::vector<double> w(size_t(n) * n);
  for (int p = 0; p < n; ++p)
    for (int k = 0; k < n; ++k) {
      const double c = eigensystem.vectors(p, k);
      w[size_t(k) * n + p] = c * c;
    }

  // Per-state tie detection against the runner-up before exclusivity.
  std::vector<char> tie(size_t(n), 0);
  for (int k = 0; k < n; ++k) {
    double best = -1.0, second = -1.0;
    for (int p = 0; p < n; ++p) {
      const double v = w[size_t(k) * n + p];
      if (v > best) {
        second = best;
        best = v;
      } else if (v > second) {
        second = v;
      }
    }
    if (best - second <= kOverlapTie) tie[size_t(k)] = 1;
  }

  struct Pair {
    double w;
    int k;
    int p;
  };
  std::vector<Pair> pairs;
  pairs.reserve(size_t(n) * n);
  for (int k = 0; k < n; ++k)
    for (int p = 0; p < n; ++p) pairs.push_back({w[size_t(k) * n + p], k, p});
  // Descending overlap; ties broken toward lower energy, then lower label.
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.w != b.w) return a.w > b.w;
    if (a.k != b.k) return a.k < b.k;
    return a.p < b.p;
  });

  LabeledSpectrum out;
  out.energies = eigensystem.values;
  out.labels.assign(size_t(n), {});
  out.overlaps.assign(size_t(n), 0.0);
  out.ambiguous.assign(size_t(n), 0);

  std::vector<char> state_done(size_t(n), 0), label_done(size_t(n), 0);
  int assigned = 0;
  for (const auto& pr : pairs) {
    if (assigned == n) break;
    if (state_done[size_t(pr.k)] || label_done[size_t(pr.p)]) continue;
    state_done[size_t(pr.k)] = 1;
    label_done[size_t(pr.p)] = 1;
    out.labels[size_t(pr.k)] = product_labels[size_t(pr.p)];
    out.overlaps[size_t(pr.k)] = pr.w;
    out.ambiguous[size_t(pr.k)] =
        (pr.w < ambiguity_floor || tie[size_t(pr.k)]) ? 1 : 0;
    ++assigned;
  }

  double quality = 1.0;
  bool any = false;
  for (int k = 0; k < n; ++k) {
    const auto& l = out.labels[size_t(k)];
    if (l.i <= 1 && l.j <= 1 && l.n <= 1) {
      quality = std::min(quality, out.overlaps[size_t(k)]);
      any = true;
    }
  }
  out.assignment_quality = any ? quality : 0.0;
  return out;
}

double static_zz(const LabeledSpectrum& spectrum, int level_left,
                 int level_right, bool strict) {
  const double e00 = spectrum.energy_of({0, 0, 0}, strict);
  const double e10 = spectrum.energy_of({level_left, 0, 0}, strict);
  const double e01 = spectrum.energy_of({0, level_right, 0}, strict);
  const double e11 = spectrum.energy_of({level_left, level_right, 0}, strict);
  return 0.5 * (e11 + e00 - e10 - e01);
}

double chi(const LabeledSpectrum& spectrum, Side side, int level,
           bool strict) {
  const auto lab = [&](int q, int n) -> ProductLabel {
    return side == Side::left ? ProductLabel{q, 0, n} : ProductLabel{0, q, n};
  };
  const double e00 = spectrum.energy_of(lab(0, 0), strict);
  const double e01 = spectrum.energy_of(lab(0, 1), strict);
  const double eq0 = spectrum.energy_of(lab(level, 0), strict);
  const double eq1 = spectrum.energy_of(lab(level, 1), strict);
  return 0.5 * ((eq1 - e01) - (eq0 - e00));
}

TcqModes mode_frequencies(const circuit::TcqSpec& spec,
                          PrefactorConvention convention) {
  const auto h = hamiltonian::tcq_hamiltonian(spec, convention);
  const auto es = linalg::eigh(h);
  const int n = h.dim();
  const int cdim = 2 * spec.charge_cutoff + 1;

  // n1 +- n2 are diagonal in the charge product basis.
  std::vector<double> dsym(static_cast<size_t>(n)), danti(static_cast<size_t>(n));
  for (int a = 0; a < cdim; ++a)
    for (int b = 0; b < cdim; ++b) {
      const double n1 = double(a - spec.charge_cutoff);
      const double n2 = double(b - spec.charge_cutoff);
      dsym[size_t(a) * cdim + b] = n1 + n2;
      danti[size_t(a) * cdim + b] = n1 - n2;
    }
  auto element = [&](const std::vector<double>& diag, int bra, int ket) {
    double sum = 0.0;
    for (int p = 0; p < n; ++p)
      sum += es.vectors(p, bra) * diag[size_t(p)] * es.vectors(p, ket);
    return sum;
  };

  TcqModes modes;
  int level_a = -1, level_b = -1;
  double dominance_a = 0.0, dominance_b = 0.0;
  for (int k = 1; k < n && (level_a < 0 || level_b < 0); ++k) {
    const double s = std::abs(element(dsym, k, 0));
    const double a = std::abs(element(danti, k, 0));
    if (s >= a && level_a < 0) {
      level_a = k;
      dominance_a = a > 0.0 ? s / a : std::numeric_limits<double>::infinity();
    } else if (a > s && level_b < 0) {
      level_b = k;
      dominance_b = s > 0.0 ? a / s : std::numeric_limits<double>::infinity();
    }
  }
  if (level_a < 0 || level_b < 0)
    throw NumericsError("mode_frequencies: failed to classify A/B modes");
  modes.level_a = level_a;
  modes.level_b = level_b;
  modes.classifier_ambiguous = dominance_a < 3.0 || dominance_b < 3.0;

  const double e0 = es.values[0];
  modes.f_a = es.values[size_t(level_a)] - e0;
  modes.f_b = es.values[size_t(level_b)] - e0;

  // Two-excitation partners found by the strongest charge matrix element
  // from the single-excitation state of the same symmetry.
  auto ladder_partner = [&](const std::vector<double>& diag, int from) {
    int best = -1;
    double best_w = -1.0;
    for (int k = 1; k < n; ++k) {
      if (k == from) continue;
      const double v = std::abs(element(diag, k, from));
      if (v > best_w && es.values[size_t(k)] > es.values[size_t(from)]) {
        best_w = v;
        best = k;
      }
    }
    return best;
  };
  const int level_aa = ladder_partner(dsym, level_a);
  const int level_bb = ladder_partner(danti, level_b);
  if (level_aa < 0 || level_bb < 0)
    throw NumericsError("mode_frequencies: failed to find two-excitation "
                        "levels");
  modes.alpha_a = (es.values[size_t(level_aa)] - e0) - 2.0 * modes.f_a;
  modes.alpha_b = (es.values[size_t(level_bb)] - e0) - 2.0 * modes.f_b;
  return modes;
}

double transmon_f01(const circuit::TransmonSpec& spec,
                    PrefactorConvention convention) {
  const auto h = hamiltonian::transmon_hamiltonian(spec, convention);
  const auto es = linalg::eigh(h);
  return es.values[1] - es.values[0];
}

std::vector<double> photon_splitting_peaks(double f01, double chi_value,
                                           int n_max) {
  if (n_max < 0)
    throw InvalidParameter("photon_splitting_peaks: n_max must be >= 0");
  std::vector<double> peaks;
  peaks.reserve(size_t(n_max) + 1);
  for (int n = 0; n <= n_max; ++n)
    peaks.push_back(f01 + 2.0 * chi_value * double(n));
  return peaks;
}

}  // namespace tcqsim::observables
