#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "liegeom/algebra.hpp"
#include "liegeom/curvature.hpp"

namespace liegeom {

/// Witness for Ric = lambda I + D with D a derivation, in an orthonormal frame.
struct SolitonCertificate {
  double lambda = 0.0;
  Matrix d;
  /// ||Ric - lambda I - D||_F
  double residual = 0.0;
  /// Leibniz residual of d.
  double derivation_residual = 0.0;
  /// ||C||_F of the orthonormal structure constants the certificate refers to.
  double bracket_norm = 0.0;

  /// lambda / ||C||^2 and D / ||C||^2; zero for the abelian algebra.
  double lambda_hat() const;
  Matrix d_hat() const;
  /// residual / ||C||^2, the quantity a metric search can drive to zero.
  double residual_hat() const;
  bool verified(double tol = 1e-10) const {
    return residual <= tol && derivation_residual <= tol;
  }
};

struct SearchConfig {
  std::uint64_t seed = 0;
  int restarts = 4;
  int max_iter = 1000;
  double tol = 1e-10;
  /// Initial step of the scalar-curvature descent.
  double step = 0.5;
};

/// Least-squares projection of Ric onto span{I} + Der(g).
SolitonCertificate soliton_project(const LieAlgebra &alg,
                                   const Tolerances &tol = default_tolerances());

struct NilsolitonResult {
  MetricFrame metric;
  SolitonCertificate certificate;
  bool converged = false;
  /// Restart that produced the returned metric; 0 is the supplied start metric.
  int restart = 0;
  int iterations = 0;
};

/// Searches the metric orbit (upper-triangular frames of unit determinant) for
/// a nilsoliton by minimising residual_hat. Restart 0 starts from `start`
/// (identity when omitted); the others start from seeded random frames.
/// Throws NotNilpotent. A non-converged result is returned with the best
/// residual; the caller decides whether that is an error.
NilsolitonResult solve_nilsoliton(const LieAlgebra &alg, const SearchConfig &cfg,
                                  const std::optional<MetricFrame> &start = std::nullopt,
                                  const Tolerances &tol = default_tolerances());

struct EinsteinCheck {
  double lambda = 0.0;
  double residual = 0.0;
};

/// lambda = scalar / n, residual = ||Ric - lambda I||_F.
EinsteinCheck einstein_check(const LieAlgebra &alg);

struct NegativeScalarResult {
  bool found = false;
  MetricFrame metric;
  double scalar = 0.0;
  int iterations = 0;
  int restart = 0;
};

/// Seeded descent of the scalar curvature over unit-determinant metrics; stops
/// at the first metric whose scalar curvature is below `target` (default 0).
/// found == false means the budget ran out, not that no such metric exists.
NegativeScalarResult find_negative_scalar_metric(const LieAlgebra &alg,
                                                 const SearchConfig &cfg,
                                                 double target = 0.0);

struct Su2Detection {
  bool found = false;
  std::array<Vector, 3> triple;
  /// Scale-aware residual (||[x,y]-z||^2 + ||[y,z]-x||^2 + ||[z,x]-y||^2)
  /// times the mean of 1/|x|^2, 1/|y|^2, 1/|z|^2; the origin scores about 1.
  double residual = 0.0;
  /// The same sum without the weight.
  double raw_residual = 0.0;
  /// not-found is never a proof of absence
  static constexpr bool heuristic = true;
};

/// Multi-restart search for x, y, z with [x,y] = z, [y,z] = x, [z,x] = y.
/// Restart 0 tries the first three basis vectors.
Su2Detection detect_su2(const LieAlgebra &alg, const SearchConfig &cfg,
                        double found_tol = 1e-8);

/// Unit-determinant upper-triangular frame from n(n+1)/2 - 1 parameters
/// (log-diagonal without the last entry, then the strict upper triangle row by row).
Matrix triangular_frame(int n, const Vector &params);
int triangular_parameter_count(int n);

} // namespace liegeom
