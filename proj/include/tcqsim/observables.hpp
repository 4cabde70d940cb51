#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tcqsim/hamiltonian.hpp"

namespace tcqsim::observables {

using hamiltonian::ProductLabel;

enum class Side { left, right };

/// Eigenvalues of the coupled system, each annotated with the uncoupled
/// product label of greatest squared overlap.  The greedy assignment is a
/// bijection; states whose overlap falls below the floor or that tie with a
/// competing candidate within 1e-6 are flagged ambiguous.
struct LabeledSpectrum {
  std::vector<double> energies;        // ascending
  std::vector<ProductLabel> labels;    // per state, unique
  std::vector<double> overlaps;        // squared overlap in [0, 1]
  std::vector<char> ambiguous;         // per state
  /// Minimum overlap across the low-lying computational labels
  /// (i, j <= 1 and n <= 1), the states consumed by the ZZ and chi
  /// observables.
  double assignment_quality = 0.0;

  int size() const { return int(energies.size()); }
  /// Index of the state carrying `label`, or -1.
  int find(const ProductLabel& label) const;
  /// Energy of the labeled state; throws LabelError if missing or (when
  /// strict) flagged ambiguous.
  double energy_of(const ProductLabel& label, bool strict = true) const;
  /// Minimum overlap over a set of labels (0 if any is missing).
  double min_overlap(std::span<const ProductLabel> labels) const;
};

/// Label coupled eigenstates by greatest overlap with the product basis.
/// Assignment is greedy in descending overlap order with exclusivity and a
/// deterministic tie-break toward lower energy.
LabeledSpectrum label_states(const linalg::EighResult& eigensystem,
                             const std::vector<ProductLabel>& product_labels,
                             double ambiguity_floor = 0.5);

/// Static ZZ between the (level_left, level_right) excitations:
///   1/2 (E_11 + E_00 - E_10 - E_01) over bus-vacuum states.
/// strict=true throws LabelError on missing/ambiguous labels.
double static_zz(const LabeledSpectrum& spectrum, int level_left = 1,
                 int level_right = 1, bool strict = true);

/// Longitudinal coupling: half the per-photon shift of the `level`
/// transition on the given side,
///   1/2 [(E_{l,0,1} - E_{0,0,1}) - (E_{l,0,0} - E_{0,0,0})].
double chi(const LabeledSpectrum& spectrum, Side side, int level = 1,
           bool strict = true);

/// A/B mode frequencies and anharmonicities of an uncoupled TCQ.  Modes are
/// classified by dominance of the symmetric vs antisymmetric charge matrix
/// element from the ground state; A is the symmetric (lower) mode.
struct TcqModes {
  double f_a = 0.0;
  double f_b = 0.0;
  double alpha_a = 0.0;
  double alpha_b = 0.0;
  int level_a = 0;  // eigenlevel index of the single-excitation A state
  int level_b = 0;
  bool classifier_ambiguous = false;
};

TcqModes mode_frequencies(
    const circuit::TcqSpec& spec,
    PrefactorConvention convention = PrefactorConvention::standard);

/// f01 of an uncoupled transmon.
double transmon_f01(
    const circuit::TransmonSpec& spec,
    PrefactorConvention convention = PrefactorConvention::standard);

/// Qubit spectral peak positions under n = 0..n_max bus photons:
/// f01 + 2 chi n.
std::vector<double> photon_splitting_peaks(double f01, double chi_value,
                                           int n_max);

}  // namespace tcqsim::observables
