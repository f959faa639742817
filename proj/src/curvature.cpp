#include "liegeom/curvature.hpp"

#include <cmath>

#include "liegeom/error.hpp"

namespace liegeom {

const char *const kConventionNote =
    "[e_i,e_j] = C^k_ij e_k; Gamma^k_ij = <nabla_{e_i} e_j, e_k>; "
    "R(e_i,e_j)e_k = R^l_kij e_l with R(X,Y) = [nabla_X,nabla_Y] - nabla_[X,Y]; "
    "Ric_kj = R^i_kij; closed form Ric = Rterm - K/2 - Z with "
    "Z_ij = 1/2 a_b (C^i_jb + C^j_ib), a_b = C^a_ab "
    "(lowered first index, symmetrised over ij; the reading that matches the "
    "connection Ricci on hyperbolic space)";

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::abs(v));
  return m;
}

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::abs(v));
  return m;
}

MetricFrame::MetricFrame(Matrix s, double singular_tol) : s_(std::move(s)) {
  if (s_.rows() != s_.cols() || s_.rows() == 0)
    throw Error(ErrorCode::InvalidBasisChange, "metric frame must be square");
  const double det = s_.determinant();
  if (!std::isfinite(det) || std::abs(det) <= singular_tol)
    throw Error(ErrorCode::InvalidBasisChange, "metric frame is singular");
}

MetricFrame MetricFrame::from_metric(const Matrix &g) {
  if (g.rows() != g.cols() || g.rows() == 0)
    throw Error(ErrorCode::InvalidArgument, "metric must be square");
  const Matrix sym = 0.5 * (g + g.transpose());
  Eigen::LLT<Matrix> llt(sym);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::SpdLoss, "metric is not positive definite");
  return MetricFrame(llt.matrixU());
}

LieAlgebra orthonormalize(const LieAlgebra &alg, const MetricFrame &m) {
  if (m.frame().rows() != alg.dim())
    throw Error(ErrorCode::InvalidBasisChange, "metric frame dimension mismatch");
  return change_basis(alg, BasisChange(m.frame().inverse(), 0.0));
}

Tensor3 connection(const LieAlgebra &alg) {
  const int n = alg.dim();
  Tensor3 g(n);
  // Koszul in an orthonormal left-invariant frame.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g(k, i, j) = 0.5 * (alg(k, i, j) - alg(i, j, k) + alg(j, k, i));
  return g;
}

Tensor4 riemann(const LieAlgebra &alg, const Tensor3 &gamma) {
  const int n = alg.dim();
  Tensor4 r(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k) -
                 alg(m, i, j) * gamma(l, m, k);
          r(l, k, i, j) = s;
        }
  return r;
}

Tensor4 riemann(const LieAlgebra &alg) { return riemann(alg, connection(alg)); }

namespace {

Matrix ricci_trace(const Tensor4 &r) {
  const int n = r.n;
  Matrix ric = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) ric(k, j) += r(i, k, i, j);
  return ric;
}

} // namespace

Matrix ricci_from_connection(const LieAlgebra &alg) { return ricci_trace(riemann(alg)); }

double scalar_curvature(const LieAlgebra &alg) { return ricci_from_connection(alg).trace(); }

CurvatureReport ricci_closed_form(const LieAlgebra &alg) {
  const int n = alg.dim();
  CurvatureReport rep;
  rep.dim = n;
  rep.killing_part = killing_form(alg);
  rep.r_part = Matrix::Zero(n, n);
  rep.z_part = Matrix::Zero(n, n);
  const Vector a = trace_vector(alg);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double quarter = 0.0, half = 0.0, z = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          quarter += alg(i, p, q) * alg(j, p, q);
          half += alg(p, q, i) * alg(p, q, j);
        }
      for (int b = 0; b < n; ++b) z += a(b) * (alg(i, j, b) + alg(j, i, b));
      rep.r_part(i, j) = rep.r_part(j, i) = 0.25 * quarter - 0.5 * half;
      rep.z_part(i, j) = rep.z_part(j, i) = 0.5 * z;
    }
  rep.ricci = rep.r_part - 0.5 * rep.killing_part - rep.z_part;
  rep.scalar = rep.ricci.trace();
  return rep;
}

CurvatureReport curvature_report(const LieAlgebra &alg) {
  CurvatureReport rep = ricci_closed_form(alg);
  rep.gamma = connection(alg);
  rep.riemann = riemann(alg, rep.gamma);
  rep.ricci = ricci_trace(rep.riemann);
  rep.scalar = rep.ricci.trace();
  return rep;
}

namespace {

Tensor3 nabla_ricci(const Tensor3 &gamma, const Matrix &ric) {
  const int n = gamma.n;
  Tensor3 s(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double v = 0.0;
        for (int d = 0; d < n; ++d)
          v -= gamma(d, a, b) * ric(d, c) + gamma(d, a, c) * ric(b, d);
        s(a, b, c) = v;
      }
  return s;
}

} // namespace

Tensor3 covariant_derivative_ricci(const LieAlgebra &alg) {
  const Tensor3 gamma = connection(alg);
  return nabla_ricci(gamma, ricci_trace(riemann(alg, gamma)));
}

Matrix box_ricci(const LieAlgebra &alg) {
  const int n = alg.dim();
  const Tensor3 gamma = connection(alg);
  const Tensor3 s = nabla_ricci(gamma, ricci_trace(riemann(alg, gamma)));
  Matrix box = Matrix::Zero(n, n);
  // sum_a (nabla_a nabla Ric)(e_a; e_c, e_d); frame components are constant so
  // only connection terms survive.
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      double v = 0.0;
      for (int a = 0; a < n; ++a)
        for (int m = 0; m < n; ++m)
          v -= gamma(m, a, a) * s(m, c, d) + gamma(m, a, c) * s(a, m, d) +
               gamma(m, a, d) * s(a, c, m);
      box(c, d) = v;
    }
  return box;
}

double first_bianchi_residual(const Tensor4 &r) {
  const int n = r.n;
  double worst = 0.0;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          worst = std::max(worst, std::abs(r(l, k, i, j) + r(l, i, j, k) + r(l, j, k, i)));
  return worst;
}

double contracted_bianchi_residual(const LieAlgebra &alg) {
  const Tensor3 s = covariant_derivative_ricci(alg);
  const int n = alg.dim();
  double worst = 0.0;
  for (int b = 0; b < n; ++b) {
    double v = 0.0;
    for (int a = 0; a < n; ++a) v += s(a, a, b);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

Matrix ricci_in_frame(const LieAlgebra &alg, const MetricFrame &m) {
  const Matrix ric = ricci_closed_form(orthonormalize(alg, m)).ricci;
  return m.frame().transpose() * ric * m.frame();
}

} // namespace liegeom
