#pragma once

#include "liegeom/algebra.hpp"
#include "liegeom/curvature.hpp"
#include "liegeom/soliton.hpp"

namespace liegeom {

/// s = R X0 + n with [X0, x] = scale * D x on n and the base brackets kept.
/// X0 is the last basis vector of `total`.
struct RankOneExtension {
  LieAlgebra base;
  Matrix d;
  double scale = 1.0;
  LieAlgebra total;

  int x0_index() const { return base.dim(); }
  /// Whether ad_{X0} restricted to the base has only positive eigenvalues.
  bool positive() const;
};

/// Throws NotNilpotent, NotSymmetric, NotADerivation, or InvalidArgument for a
/// non-positive scale or a size mismatch. Symmetry and Leibniz residuals are
/// compared against tol.derivation relative to the size of d and the brackets.
RankOneExtension rank_one_extend(const LieAlgebra &base, const Matrix &d, double scale,
                                 const Tolerances &tol = default_tolerances());

struct EinsteinExtension {
  RankOneExtension extension;
  /// Metric on the base in which the soliton certificate holds; the base of
  /// `extension` is the base algebra orthonormalised by it.
  MetricFrame base_metric;
  SolitonCertificate certificate;
  double lambda = 0.0;
  double residual = 0.0;

  /// residual <= 1e-9 and lambda < 0.
  bool success(double tol = 1e-9) const { return residual <= tol && lambda < 0.0; }
};

/// Soliton certificate of the base (identity metric first, metric search if
/// that is not a soliton), then a golden-section search over the scale.
/// Throws NotNilpotent, and SearchFailed when no soliton metric is found.
/// An abelian base is extended by D = I, scale 1.
EinsteinExtension solve_einstein_extension(const LieAlgebra &base, const SearchConfig &cfg,
                                           const Tolerances &tol = default_tolerances());

} // namespace liegeom
