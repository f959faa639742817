#pragma once

#include <string>
#include <vector>

#include "liegeom/algebra.hpp"

namespace liegeom {

/// Couplings of the action R + alpha R^2 + beta Ric.Ric - 2 lambda_cc.
struct HCParameters {
  double alpha = 0.0;
  double beta = 0.0;
  double lambda_cc = 0.0;
};

/// Field-equation tensor of the quadratic action for a left-invariant metric,
/// in an orthonormal frame. Scalar invariants are constant, so the terms with
/// derivatives of R drop out:
///   Phi = Ric - R/2 + 2 alpha R (Ric - R/4) + beta Box Ric
///         + 2 beta (R_{m s n r} Ric^{s r} - |Ric|^2 / 4).
Matrix phi_tensor(const LieAlgebra &alg, double alpha, double beta);

/// R + alpha R^2 + beta |Ric|^2 - 2 lambda_cc.
double lagrangian_density(const LieAlgebra &alg, const HCParameters &p);

struct FieldEquationReport {
  Matrix phi;
  /// max |Phi + lambda_cc g|
  double residual = 0.0;
  double lagrangian_density = 0.0;
};

FieldEquationReport check_solution(const LieAlgebra &alg, const HCParameters &p);

/// All (alpha, beta, Lambda) with Phi + Lambda g = 0: offset + span(basis).
struct HCSolutionSet {
  bool empty = true;
  Vector offset;
  std::vector<Vector> basis;
  /// Least-squares residual of the component system at the offset.
  double residual = 0.0;
  /// Lambda times the linear form in (alpha, beta) that is constant on the
  /// family, when the family is a line with constant Lambda. The form is
  /// scaled to coprime integer coefficients when its ratio is a fraction with
  /// denominator at most 16, otherwise to unit alpha coefficient.
  std::vector<double> invariant_products;
  std::vector<std::string> product_labels;
  /// Coefficients (c_alpha, c_beta) of each labelled form.
  std::vector<std::pair<double, double>> product_forms;

  HCParameters at(const Vector &coords) const;
};

/// Solves the symmetric component equations i <= j as a linear system in
/// (alpha, beta, Lambda); rank threshold rank_tol relative to the largest
/// singular value. Empty when the least-squares residual exceeds empty_tol.
HCSolutionSet solve_parameters(const LieAlgebra &alg, double rank_tol = 1e-10,
                               double empty_tol = 1e-8);

} // namespace liegeom
