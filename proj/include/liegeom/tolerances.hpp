#pragma once

namespace liegeom {

/// Numerical thresholds shared by all modules. Every field can be overridden
/// by the caller (the CLI exposes them as flags).
struct Tolerances {
  /// Exact-identity residuals (Jacobi, unimodularity, nilpotent Killing form).
  double identity = 1e-12;
  /// Relative singular-value threshold for rank and kernel decisions.
  double rank = 1e-10;
  /// Leibniz residual below which a matrix counts as a derivation.
  double derivation = 1e-10;
  /// Semisimplicity: |det K| > semisimple * max|K|^n.
  double semisimple = 1e-10;
  /// Smallest |det| accepted for a basis change or metric frame.
  double singular = 1e-12;
};

inline const Tolerances &default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

} // namespace liegeom
