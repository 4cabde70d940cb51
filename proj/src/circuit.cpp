#include "tcqsim/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_set>

#include "tcqsim/error.hpp"
#include "tcqsim/units.hpp"

namespace tcqsim::circuit {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << name << " must be strictly positive, got " << v;
    throw InvalidParameter(msg.str());
  }
}

}  // namespace

void TcqSpec::validate() const {
  require_positive(c1, "TcqSpec.c1");
  require_positive(c2, "TcqSpec.c2");
  require_positive(cs, "TcqSpec.cs");
  require_positive(ej1, "TcqSpec.ej1");
  require_positive(ej2, "TcqSpec.ej2");
  if (!std::isfinite(ng1) || !std::isfinite(ng2))
    throw InvalidParameter("TcqSpec: offset charges must be finite");
  if (charge_cutoff < 4)
    throw InvalidParameter("TcqSpec.charge_cutoff must be >= 4");
  const int basis = (2 * charge_cutoff + 1) * (2 * charge_cutoff + 1);
  if (keep_levels < 1 || keep_levels > basis)
    throw InvalidParameter("TcqSpec.keep_levels out of range for cutoff");
}

void TransmonSpec::validate() const {
  require_positive(c, "TransmonSpec.c");
  require_positive(ej, "TransmonSpec.ej");
  if (!std::isfinite(ng))
    throw InvalidParameter("TransmonSpec: offset charge must be finite");
  if (charge_cutoff < 4)
    throw InvalidParameter("TransmonSpec.charge_cutoff must be >= 4");
  if (keep_levels < 1 || keep_levels > 2 * charge_cutoff + 1)
    throw InvalidParameter("TransmonSpec.keep_levels out of range for cutoff");
}

void BusSpec::validate() const {
  require_positive(frequency, "BusSpec.frequency");
  if (fock_dim < 2) throw InvalidParameter("BusSpec.fock_dim must be >= 2");
  require_positive(charge_zpf, "BusSpec.charge_zpf");
}

void DeviceSpec::validate() const {
  std::visit([](const auto& s) { s.validate(); }, left);
  std::visit([](const auto& s) { s.validate(); }, right);
  bus.validate();
  if (!std::isfinite(gint_left) || !std::isfinite(gint_right))
    throw InvalidParameter("DeviceSpec: gint values must be finite");
  const auto cutoff = [](const QubitSpec& q) {
    return std::visit([](const auto& s) { return s.charge_cutoff; }, q);
  };
  if (cutoff(left) != cutoff(right))
    throw InvalidParameter(
        "DeviceSpec: both subsystems must use the same charge_cutoff");
}

InverseCapacitanceCoeffs inverse_capacitance_coeffs_closed_form(double c1,
                                                                double c2,
                                                                double cs) {
  require_positive(c1, "c1");
  require_positive(c2, "c2");
  require_positive(cs, "cs");
  const double det = c1 * c2 + cs * (c1 + c2);
  InverseCapacitanceCoeffs g;
  g.g11 = (cs + c2) / (2.0 * det);
  g.g22 = (cs + c1) / (2.0 * det);
  g.g12 = cs / det;
  return g;
}

void CapacitanceNetwork::add_node(const std::string& name) {
  if (name == "gnd")
    throw InvalidParameter("CapacitanceNetwork: ground is implicit");
  if (node_index(name) >= 0)
    throw InvalidParameter("CapacitanceNetwork: duplicate node " + name);
  node_names.push_back(name);
}

void CapacitanceNetwork::add_capacitor(const std::string& a,
                                       const std::string& b, double c) {
  edges.push_back({a, b, c});
}

int CapacitanceNetwork::node_index(const std::string& name) const {
  for (size_t i = 0; i < node_names.size(); ++i)
    if (node_names[i] == name) return int(i);
  return -1;
}

void CapacitanceNetwork::validate() const {
  if (node_names.empty())
    throw InvalidParameter("CapacitanceNetwork: no nodes");
  std::unordered_set<std::string> seen;
  for (const auto& n : node_names) {
    if (n == "gnd") throw InvalidParameter("CapacitanceNetwork: node 'gnd'");
    if (!seen.insert(n).second)
      throw InvalidParameter("CapacitanceNetwork: duplicate node " + n);
  }
  for (const auto& e : edges) {
    require_positive(e.capacitance, "edge capacitance");
    if (e.a == e.b)
      throw InvalidParameter("CapacitanceNetwork: self-edge on " + e.a);
    if (e.a != "gnd" && node_index(e.a) < 0)
      throw InvalidParameter("CapacitanceNetwork: unknown node " + e.a);
    if (e.b != "gnd" && node_index(e.b) < 0)
      throw InvalidParameter("CapacitanceNetwork: unknown node " + e.b);
  }
}

linalg::OperatorMatrix maxwell_matrix(const CapacitanceNetwork& network) {
  network.validate();
  const int n = int(network.node_names.size());
  linalg::OperatorMatrix m(n, "node-charge");
  for (const auto& e : network.edges) {
    const int ia = e.a == "gnd" ? -1 : network.node_index(e.a);
    const int ib = e.b == "gnd" ? -1 : network.node_index(e.b);
    if (ia >= 0) m(ia, ia) += e.capacitance;
    if (ib >= 0) m(ib, ib) += e.capacitance;
    if (ia >= 0 && ib >= 0) {
      m(ia, ib) -= e.capacitance;
      m(ib, ia) -= e.capacitance;
    }
  }
  if (!linalg::is_positive_definite(m))
    throw NumericsError(
        "maxwell_matrix: singular nodal matrix; network has a section "
        "disconnected from ground");
  return m;
}

TcqNetworkCoeffs network_to_tcq_coeffs(const CapacitanceNetwork& network,
                                       const TcqNodeMap& node_map) {
  const auto maxwell = maxwell_matrix(network);
  const auto inv = linalg::spd_inverse(maxwell);

  const int t = network.node_index(node_map.top);
  const int mid = network.node_index(node_map.middle);
  if (t < 0 || mid < 0)
    throw InvalidParameter("network_to_tcq_coeffs: node_map references "
                           "unknown node");

  // Junction variables: phi_j1 = phi_top - phi_middle, phi_j2 = phi_middle.
  // The inverse matrix in the new charge variables has rows/columns combined
  // the same way, so the needed entries follow directly from inv.
  const double inv_j1j1 = inv(t, t) - 2.0 * inv(t, mid) + inv(mid, mid);
  const double inv_j2j2 = inv(mid, mid);
  const double inv_j1j2 = inv(t, mid) - inv(mid, mid);

  TcqNetworkCoeffs out;
  out.g11 = 0.5 * inv_j1j1;
  out.g22 = 0.5 * inv_j2j2;
  out.g12 = -inv_j1j2;

  for (const auto& bus : node_map.bus_nodes) {
    const int b = network.node_index(bus);
    if (b < 0)
      throw InvalidParameter("network_to_tcq_coeffs: unknown bus node " + bus);
    const double inv_j1b = inv(t, b) - inv(mid, b);
    const double inv_j2b = inv(mid, b);
    out.gint.push_back(0.5 * (inv_j2b - inv_j1b));
    out.gint_common.push_back(0.5 * (inv_j2b + inv_j1b));
  }
  return out;
}

double critical_current_to_ej(double ic) {
  require_positive(ic, "critical current");
  return ic / (4.0 * std::numbers::pi * constants::elementary_charge);
}

}  // namespace tcqsim::circuit
