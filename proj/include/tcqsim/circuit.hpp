#pragma once

#include <string>
#include <variant>
#include <vector>

#include "tcqsim/linalg.hpp"

namespace tcqsim::circuit {

/// Two-junction qubit: junction 1 (top-middle, shunted by c1), junction 2
/// (middle-ground, shunted by c2), cs shunting top-ground.  Energies are
/// E_J/h in Hz; capacitances in farads.
struct TcqSpec {
  double c1 = 0.0;
  double c2 = 0.0;
  double cs = 0.0;
  double ej1 = 0.0;
  double ej2 = 0.0;
  double ng1 = 0.0;
  double ng2 = 0.0;
  int charge_cutoff = 8;
  int keep_levels = 8;

  void validate() const;
  double ej_total() const { return ej1 + ej2; }
  bool operator==(const TcqSpec&) const = default;
};

/// Single-junction qubit with shunt capacitance c.
struct TransmonSpec {
  double c = 0.0;
  double ej = 0.0;
  double ng = 0.0;
  int charge_cutoff = 8;
  int keep_levels = 8;

  void validate() const;
  bool operator==(const TransmonSpec&) const = default;
};

/// Ideal harmonic bus resonator.  charge_zpf is the zero-point charge
/// fluctuation in Cooper pairs; only the product gint * charge_zpf is
/// physical, so the default of 1 pushes the whole scale into gint.
struct BusSpec {
  double frequency = 0.0;
  int fock_dim = 5;
  double charge_zpf = 1.0;

  void validate() const;
  bool operator==(const BusSpec&) const = default;
};

using QubitSpec = std::variant<TcqSpec, TransmonSpec>;

/// One simulation instance: two qubits coupled through a bus.  gint values
/// are inverse-capacitance interaction coefficients (1/F).
struct DeviceSpec {
  QubitSpec left;
  QubitSpec right;
  BusSpec bus;
  double gint_left = 0.0;
  double gint_right = 0.0;

  void validate() const;
  bool operator==(const DeviceSpec&) const = default;
};

struct InverseCapacitanceCoeffs {
  double g11 = 0.0;
  double g22 = 0.0;
  double g12 = 0.0;
};

/// Closed-form inverse-capacitance coefficients of the uncoupled TCQ:
///   g11 = (cs + c2) / (2 D),  g22 = (cs + c1) / (2 D),  g12 = cs / D,
/// with D = c1 c2 + cs (c1 + c2).  All inputs farads, outputs 1/F.
InverseCapacitanceCoeffs inverse_capacitance_coeffs_closed_form(double c1,
                                                                double c2,
                                                                double cs);

/// Lumped capacitor network; ground is implicit and named "gnd".
struct CapacitanceNetwork {
  struct Edge {
    std::string a;
    std::string b;  // may be "gnd"
    double capacitance = 0.0;
  };

  std::vector<std::string> node_names;
  std::vector<Edge> edges;

  void add_node(const std::string& name);
  void add_capacitor(const std::string& a, const std::string& b, double c);
  int node_index(const std::string& name) const;  // -1 for ground
  void validate() const;
};

/// Nodal (Maxwell) capacitance matrix: self sums on the diagonal, negated
/// mutuals off-diagonal.  Result is symmetric positive definite for any
/// ground-connected network.
linalg::OperatorMatrix maxwell_matrix(const CapacitanceNetwork& network);

/// Node assignment for extracting one TCQ's coefficients from a network.
struct TcqNodeMap {
  std::string top;
  std::string middle;
  std::vector<std::string> bus_nodes;  // may be empty
};

struct TcqNetworkCoeffs {
  double g11 = 0.0;
  double g22 = 0.0;
  double g12 = 0.0;
  /// Antisymmetric (n1 - n2) bus-coupling coefficient per bus node, sign
  /// fixed positive for middle-pad coupling.  Spectra are invariant under
  /// the sign (bus Fock parity).
  std::vector<double> gint;
  /// Symmetric (n1 + n2) residual per bus node, reported as a diagnostic of
  /// the grounded-bottom reduction; not used by the Hamiltonian assembly.
  std::vector<double> gint_common;
};

/// Inverts the Maxwell matrix, changes variables from node charges to
/// junction relative charges for the mapped TCQ, and reads off the
/// coefficients.  For an uncoupled single-TCQ network this reproduces the
/// closed form to relative 1e-12.
TcqNetworkCoeffs network_to_tcq_coeffs(const CapacitanceNetwork& network,
                                       const TcqNodeMap& node_map);

/// E_J/h = I_c / (4 pi e) for a junction of critical current ic (amperes).
double critical_current_to_ej(double ic);

}  // namespace tcqsim::circuit
