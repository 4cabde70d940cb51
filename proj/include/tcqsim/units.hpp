#pragma once

#include <numbers>

namespace tcqsim {

namespace constants {

// 2019 SI exact values.
inline constexpr double planck_h = 6.62607015e-34;             // J s
inline constexpr double elementary_charge = 1.602176634e-19;   // C

}  // namespace constants

namespace units {

// Multipliers into the internal canonical units (farads, hertz, seconds).
inline constexpr double fF = 1e-15;
inline constexpr double pF = 1e-12;
inline constexpr double GHz = 1e9;
inline constexpr double MHz = 1e6;
inline constexpr double kHz = 1e3;
inline constexpr double ns = 1e-9;
inline constexpr double us = 1e-6;

}  // namespace units

/// Normalization of the charging-energy terms built from inverse-capacitance
/// coefficients.  `standard` uses H_charge/h = (2 e^2 / h) n^T Cinv n, which
/// reduces to the usual single-junction form 4 E_C (n - ng)^2 with
/// E_C = e^2 / (2 C h).  `literal_pi` scales the self terms by pi and the
/// cross/interaction terms by 2 pi relative to e^2/h; it is kept selectable
/// for sensitivity studies only.
enum class PrefactorConvention { standard, literal_pi };

/// Coefficient (Hz per inverse farad) multiplying g11 and g22.
inline constexpr double charging_self_prefactor(PrefactorConvention c) {
  const double e = constants::elementary_charge;
  const double base = 4.0 * e * e / constants::planck_h;
  return c == PrefactorConvention::standard ? base : std::numbers::pi * base;
}

/// Coefficient (Hz per inverse farad) multiplying g12 and gint.
inline constexpr double charging_cross_prefactor(PrefactorConvention c) {
  const double e = constants::elementary_charge;
  const double base = 4.0 * e * e / constants::planck_h;
  return c == PrefactorConvention::standard ? base
                                            : 2.0 * std::numbers::pi * base;
}

}  // namespace tcqsim
