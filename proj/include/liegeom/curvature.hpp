#pragma once

#include <string>
#include <vector>

#include "liegeom/algebra.hpp"

namespace liegeom {

/// Dense rank-3 array, index (a, b, c) -> (a * n + b) * n + c.
struct Tensor3 {
  int n = 0;
  std::vector<double> data;

  Tensor3() = default;
  explicit Tensor3(int dim) : n(dim), data(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  double &operator()(int a, int b, int c) {
    return data[static_cast<std::size_t>((a * n + b) * n + c)];
  }
  double operator()(int a, int b, int c) const {
    return data[static_cast<std::size_t>((a * n + b) * n + c)];
  }
  double max_abs() const;
};

/// Dense rank-4 array, index (a, b, c, d) -> ((a * n + b) * n + c) * n + d.
struct Tensor4 {
  int n = 0;
  std::vector<double> data;

  Tensor4() = default;
  explicit Tensor4(int dim)
      : n(dim), data(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  double &operator()(int a, int b, int c, int d) {
    return data[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)];
  }
  double operator()(int a, int b, int c, int d) const {
    return data[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)];
  }
  double max_abs() const;
};

/// Left-invariant metric g = s^T s on the algebra, i.e. s takes coordinates in
/// the stored frame to coordinates in an orthonormal frame.
class MetricFrame {
public:
  explicit MetricFrame(Matrix s, double singular_tol = 1e-12);

  static MetricFrame identity(int n) { return MetricFrame(Matrix::Identity(n, n)); }
  /// Upper-triangular Cholesky factor of an SPD Gram matrix. Throws SpdLoss.
  static MetricFrame from_metric(const Matrix &g);

  const Matrix &frame() const noexcept { return s_; }
  Matrix metric() const { return s_.transpose() * s_; }

private:
  Matrix s_;
};

/// Structure constants of the same algebra in a g-orthonormal basis:
/// change_basis(alg, s^-1).
LieAlgebra orthonormalize(const LieAlgebra &alg, const MetricFrame &m);

// All functions below treat the stored frame as orthonormal (g = delta).

/// Gamma^k_{ij} = <nabla_{e_i} e_j, e_k>, stored at (k, i, j).
Tensor3 connection(const LieAlgebra &alg);

/// R^l_{kij} with R(e_i,e_j)e_k = R^l_{kij} e_l, stored at (l, k, i, j).
Tensor4 riemann(const LieAlgebra &alg);
Tensor4 riemann(const LieAlgebra &alg, const Tensor3 &gamma);

/// Ric_{kj} = R^i_{kij}.
Matrix ricci_from_connection(const LieAlgebra &alg);
double scalar_curvature(const LieAlgebra &alg);

/// How the symmetrised trace term is read, written into every report.
extern const char *const kConventionNote;

struct CurvatureReport {
  int dim = 0;
  Tensor3 gamma;
  Tensor4 riemann;
  Matrix ricci;
  double scalar = 0.0;
  Matrix killing_part;
  Matrix r_part;
  Matrix z_part;
  std::string convention = kConventionNote;
};

/// Ricci from structure constants alone: Ric = R - K/2 - Z with
///   R_ij = 1/4 C^i_{ab} C^j_{ab} - 1/2 C^a_{bi} C^a_{bj},
///   K_ij = C^a_{bi} C^b_{aj},
///   Z_ij = 1/2 a_b (C^i_{jb} + C^j_{ib}),  a_b = C^a_{ab}.
/// Fills killing_part, r_part, z_part, ricci and scalar only.
CurvatureReport ricci_closed_form(const LieAlgebra &alg);

/// Everything: connection, Riemann, connection Ricci, scalar and the closed-form
/// constituents.
CurvatureReport curvature_report(const LieAlgebra &alg);

/// (nabla_a Ric)_{bc}, stored at (a, b, c).
Tensor3 covariant_derivative_ricci(const LieAlgebra &alg);
/// Rough Laplacian of the Ricci tensor.
Matrix box_ricci(const LieAlgebra &alg);

/// Checks used by tests and the acceptance suite.
double first_bianchi_residual(const Tensor4 &r);
double contracted_bianchi_residual(const LieAlgebra &alg);

/// Ricci tensor of metric g (expressed in the stored frame), i.e.
/// s^T Ric_orthonormal s with g = s^T s.
Matrix ricci_in_frame(const LieAlgebra &alg, const MetricFrame &m);

} // namespace liegeom
