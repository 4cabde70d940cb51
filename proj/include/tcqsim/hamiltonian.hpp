#pragma once

#include <optional>
#include <vector>

#include "tcqsim/circuit.hpp"
#include "tcqsim/linalg.hpp"
#include "tcqsim/units.hpp"

namespace tcqsim::hamiltonian {

using circuit::BusSpec;
using circuit::DeviceSpec;
using circuit::TcqSpec;
using circuit::TransmonSpec;
using linalg::OperatorMatrix;

enum class SubsystemKind { tcq, transmon, bus };

/// One truncated subsystem: diagonal Hamiltonian (ground gauged to 0),
/// charge operators projected onto the kept levels, and the level energies.
/// n2 is absent for transmons and the bus.
struct SubsystemBundle {
  OperatorMatrix h;
  OperatorMatrix n1;
  std::optional<OperatorMatrix> n2;
  std::vector<double> level_energies;
  SubsystemKind kind = SubsystemKind::tcq;

  int dim() const { return h.dim(); }
  /// Charge operator entering the bus interaction: n1 - n2 for a TCQ,
  /// n1 for a transmon or the bus itself.
  OperatorMatrix coupling_operator() const;
};

/// Diagonal Cooper-pair number operator of dimension 2*cutoff+1 with
/// entries (-cutoff - ng) ... (+cutoff - ng).
OperatorMatrix number_operator(int cutoff, double ng = 0.0);

/// cos(phi) in the charge basis: 1/2 on the two adjacent off-diagonals.
OperatorMatrix cos_phi_operator(int cutoff);

/// Full two-junction charge-basis Hamiltonian (Hz), dimension (2c+1)^2:
///   S [g11 (n1-ng1)^2 + g22 (n2-ng2)^2] - X g12 (n1-ng1)(n2-ng2)
///   - ej1 cos(phi1) - ej2 cos(phi2)
/// with S/X the convention's self/cross charging prefactors.
OperatorMatrix tcq_hamiltonian(
    const TcqSpec& spec,
    PrefactorConvention convention = PrefactorConvention::standard);

/// Single-junction Hamiltonian 4 E_C (n-ng)^2 - ej cos(phi), dimension 2c+1,
/// with E_C = e^2/(2 C h) under the standard convention.
OperatorMatrix transmon_hamiltonian(
    const TransmonSpec& spec,
    PrefactorConvention convention = PrefactorConvention::standard);

/// Harmonic bus: h = diag(0, f, 2f, ...), charge operator
/// charge_zpf * sqrt(k+1) on the adjacent off-diagonals (the real gauge of
/// the oscillator charge operator; spectrum-equivalent to the antisymmetric
/// form).
SubsystemBundle bus_bundle(const BusSpec& spec);

/// Eigendecompose h, project h and each charge operator onto the `keep`
/// lowest eigenvectors, and gauge the ground energy to zero.
SubsystemBundle truncate_subsystem(const OperatorMatrix& h,
                                   const std::vector<OperatorMatrix>& charge_ops,
                                   int keep, SubsystemKind kind);

/// Build + truncate in one step.
SubsystemBundle tcq_bundle(
    const TcqSpec& spec,
    PrefactorConvention convention = PrefactorConvention::standard);
SubsystemBundle transmon_bundle(
    const TransmonSpec& spec,
    PrefactorConvention convention = PrefactorConvention::standard);
SubsystemBundle qubit_bundle(
    const circuit::QubitSpec& spec,
    PrefactorConvention convention = PrefactorConvention::standard);

/// (left level i, right level j, bus photons n) in tensor order
/// left x right x bus.
struct ProductLabel {
  int i = 0;
  int j = 0;
  int n = 0;

  bool operator==(const ProductLabel&) const = default;
};

struct ComposedSystem {
  OperatorMatrix h_total;
  std::vector<ProductLabel> labels;
  SubsystemBundle left;
  SubsystemBundle right;
  SubsystemBundle bus;
};

/// Coupled Hamiltonian of the truncated subsystems:
///   H'_L + H'_R + H_bus + X gint_L (coupling_L x I x n_bus)
///                       + X gint_R (I x coupling_R x n_bus).
ComposedSystem compose_total(
    const DeviceSpec& device,
    PrefactorConvention convention = PrefactorConvention::standard);

/// Same assembly from prebuilt bundles; used by calibration and sweeps to
/// avoid rebuilding unchanged subsystems.
ComposedSystem compose_from_bundles(
    SubsystemBundle left, SubsystemBundle right, SubsystemBundle bus,
    double gint_left, double gint_right,
    PrefactorConvention convention = PrefactorConvention::standard);

}  // namespace tcqsim::hamiltonian
