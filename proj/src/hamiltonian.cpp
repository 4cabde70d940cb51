#include "tcqsim/hamiltonian.hpp"

#include <cmath>
#include <sstream>

#include "tcqsim/error.hpp"

namespace tcqsim::hamiltonian {

namespace {

// Large enough for the pre-truncation TCQ basis (17^2 = 289) and beyond.
constexpr int kTcqKronLimit = 1 << 16;

OperatorMatrix diagonal_squared(const OperatorMatrix& d) {
  OperatorMatrix out(d.dim(), d.basis_tag());
  for (int i = 0; i < d.dim(); ++i) out(i, i) = d(i, i) * d(i, i);
  return out;
}

}  // namespace

OperatorMatrix SubsystemBundle::coupling_operator() const {
  if (kind == SubsystemKind::tcq) {
    if (!n2) throw NumericsError("tcq bundle missing junction-2 operator");
    OperatorMatrix op = n1;
    op -= *n2;
    return op;
  }
  return n1;
}

OperatorMatrix number_operator(int cutoff, double ng) {
  if (cutoff < 1) throw InvalidParameter("number_operator: cutoff must be >= 1");
  const int dim = 2 * cutoff + 1;
  OperatorMatrix n(dim, "charge");
  for (int k = 0; k < dim; ++k) n(k, k) = double(k - cutoff) - ng;
  return n;
}

OperatorMatrix cos_phi_operator(int cutoff) {
  if (cutoff < 1)
    throw InvalidParameter("cos_phi_operator: cutoff must be >= 1");
  const int dim = 2 * cutoff + 1;
  OperatorMatrix c(dim, "charge");
  for (int k = 0; k + 1 < dim; ++k) {
    c(k, k + 1) = 0.5;
    c(k + 1, k) = 0.5;
  }
  return c;
}

OperatorMatrix tcq_hamiltonian(const TcqSpec& spec,
                               PrefactorConvention convention) {
  spec.validate();
  const auto g = circuit::inverse_capacitance_coeffs_closed_form(
      spec.c1, spec.c2, spec.cs);
  const double self = charging_self_prefactor(convention);
  const double cross = charging_cross_prefactor(convention);

  const auto n1 = number_operator(spec.charge_cutoff, spec.ng1);
  const auto n2 = number_operator(spec.charge_cutoff, spec.ng2);
  const auto cosphi = cos_phi_operator(spec.charge_cutoff);
  const auto id = OperatorMatrix::identity(n1.dim());

  OperatorMatrix h =
      linalg::kron(diagonal_squared(n1), id, kTcqKronLimit);
  h *= self * g.g11;
  h.add_scaled(self * g.g22,
               linalg::kron(id, diagonal_squared(n2), kTcqKronLimit));
  h.add_scaled(-cross * g.g12, linalg::kron(n1, n2, kTcqKronLimit));
  h.add_scaled(-spec.ej1, linalg::kron(cosphi, id, kTcqKronLimit));
  h.add_scaled(-spec.ej2, linalg::kron(id, cosphi, kTcqKronLimit));
  h.set_basis_tag("charge");
  linalg::require_symmetric(h, "tcq_hamiltonian");
  return h;
}

OperatorMatrix transmon_hamiltonian(const TransmonSpec& spec,
                                    PrefactorConvention convention) {
  spec.validate();
  const double self = charging_self_prefactor(convention);
  const double g = 1.0 / (2.0 * spec.c);

  const auto n = number_operator(spec.charge_cutoff, spec.ng);
  OperatorMatrix h = diagonal_squared(n);
  h *= self * g;
  h.add_scaled(-spec.ej, cos_phi_operator(spec.charge_cutoff));
  h.set_basis_tag("charge");
  linalg::require_symmetric(h, "transmon_hamiltonian");
  return h;
}

SubsystemBundle bus_bundle(const BusSpec& spec) {
  spec.validate();
  SubsystemBundle b;
  b.kind = SubsystemKind::bus;
  b.h = OperatorMatrix(spec.fock_dim, "fock");
  b.n1 = OperatorMatrix(spec.fock_dim, "fock");
  b.level_energies.resize(size_t(spec.fock_dim));
  for (int k = 0; k < spec.fock_dim; ++k) {
    b.h(k, k) = double(k) * spec.frequency;
    b.level_energies[size_t(k)] = double(k) * spec.frequency;
    if (k + 1 < spec.fock_dim) {
      const double v = spec.charge_zpf * std::sqrt(double(k + 1));
      b.n1(k, k + 1) = v;
      b.n1(k + 1, k) = v;
    }
  }
  return b;
}

SubsystemBundle truncate_subsystem(const OperatorMatrix& h,
                                   const std::vector<OperatorMatrix>& charge_ops,
                                   int keep, SubsystemKind kind) {
  if (keep < 1 || keep > h.dim())
    throw InvalidParameter("truncate_subsystem: keep out of range");
  const auto es = linalg::eigh(h);

  SubsystemBundle b;
  b.kind = kind;
  b.h = OperatorMatrix(keep, "eigen");
  b.level_energies.resize(size_t(keep));
  const double ground = es.values[0];
  for (int k = 0; k < keep; ++k) {
    const double energy = es.values[size_t(k)] - ground;
    b.h(k, k) = energy;
    b.level_energies[size_t(k)] = energy;
  }

  std::vector<OperatorMatrix> projected;
  projected.reserve(charge_ops.size());
  for (const auto& op : charge_ops) {
    auto p = linalg::congruence_transform(op, es.vectors, keep);
    p.set_basis_tag("eigen");
    projected.push_back(std::move(p));
  }
  if (projected.empty())
    throw InvalidParameter("truncate_subsystem: at least one charge operator");
  b.n1 = std::move(projected[0]);
  if (projected.size() > 1) b.n2 = std::move(projected[1]);
  return b;
}

SubsystemBundle tcq_bundle(const TcqSpec& spec,
                           PrefactorConvention convention) {
  const auto h = tcq_hamiltonian(spec, convention);
  const auto n = number_operator(spec.charge_cutoff);
  const auto id = OperatorMatrix::identity(n.dim());
  const auto n1 = linalg::kron(n, id, kTcqKronLimit);
  const auto n2 = linalg::kron(id, n, kTcqKronLimit);
  auto b = truncate_subsystem(h, {n1, n2}, spec.keep_levels,
                              SubsystemKind::tcq);
  b.h.set_basis_tag("tcq-eigen");
  return b;
}

SubsystemBundle transmon_bundle(const TransmonSpec& spec,
                                PrefactorConvention convention) {
  const auto h = transmon_hamiltonian(spec, convention);
  const auto n = number_operator(spec.charge_cutoff);
  auto b = truncate_subsystem(h, {n}, spec.keep_levels,
                              SubsystemKind::transmon);
  b.h.set_basis_tag("transmon-eigen");
  return b;
}

SubsystemBundle qubit_bundle(const circuit::QubitSpec& spec,
                             PrefactorConvention convention) {
  return std::visit(
      [&](const auto& s) -> SubsystemBundle {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TcqSpec>)
          return tcq_bundle(s, convention);
        else
          return transmon_bundle(s, convention);
      },
      spec);
}

ComposedSystem compose_from_bundles(SubsystemBundle left,
                                    SubsystemBundle right, SubsystemBundle bus,
                                    double gint_left, double gint_right,
                                    PrefactorConvention convention) {
  const int dl = left.dim();
  const int dr = right.dim();
  const int db = bus.dim();
  const long long total = 1LL * dl * dr * db;
  if (total > 4096) {
    std::ostringstream msg;
    msg << "compose_total: product dimension " << total << " exceeds 4096";
    throw InvalidParameter(msg.str());
  }

  const auto il = OperatorMatrix::identity(dl);
  const auto ir = OperatorMatrix::identity(dr);
  const auto ib = OperatorMatrix::identity(db);
  const double cross = charging_cross_prefactor(convention);

  OperatorMatrix h = linalg::kron(linalg::kron(left.h, ir), ib);
  h += linalg::kron(linalg::kron(il, right.h), ib);
  h += linalg::kron(linalg::kron(il, ir), bus.h);
  h.add_scaled(cross * gint_left,
               linalg::kron(linalg::kron(left.coupling_operator(), ir),
                            bus.n1));
  h.add_scaled(cross * gint_right,
               linalg::kron(linalg::kron(il, right.coupling_operator()),
                            bus.n1));
  h.set_basis_tag("product");
  linalg::require_symmetric(h, "compose_total");

  ComposedSystem sys;
  sys.h_total = std::move(h);
  sys.labels.reserve(size_t(total));
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dr; ++j)
      for (int n = 0; n < db; ++n) sys.labels.push_back({i, j, n});
  sys.left = std::move(left);
  sys.right = std::move(right);
  sys.bus = std::move(bus);
  return sys;
}

ComposedSystem compose_total(const DeviceSpec& device,
                             PrefactorConvention convention) {
  device.validate();
  return compose_from_bundles(qubit_bundle(device.left, convention),
                              qubit_bundle(device.right, convention),
                              bus_bundle(device.bus), device.gint_left,
                              device.gint_right, convention);
}

}  // namespace tcqsim::hamiltonian
