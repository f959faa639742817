#include "liegeom/hcgravity.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "liegeom/curvature.hpp"
#include "linalg.hpp"

namespace liegeom {

namespace {

struct Pieces {
  Matrix einstein; // Ric - R/2 I
  Matrix alpha;    // 2 R (Ric - R/4 I)
  Matrix beta;     // Box Ric + 2 (T - |Ric|^2/4 I)
  double scalar;
  double ricci_square;
};

Pieces pieces(const LieAlgebra &alg) {
  const int n = alg.dim();
  const Tensor3 gamma = connection(alg);
  const Tensor4 r = riemann(alg, gamma);
  const Matrix ric = ricci_from_connection(alg);
  const Matrix id = Matrix::Identity(n, n);
  const double scal = ric.trace();
  const double sq = (ric.array() * ric.array()).sum();

  // T_{mu nu} = R_{mu s nu r} Ric^{s r}; the contraction over s = r is Ric.
  Matrix t = Matrix::Zero(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      double acc = 0.0;
      for (int s = 0; s < n; ++s)
        for (int rr = 0; rr < n; ++rr) acc += r(mu, s, nu, rr) * ric(s, rr);
      t(mu, nu) = acc;
    }

  Pieces p;
  p.einstein = ric - 0.5 * scal * id;
  p.alpha = 2.0 * scal * (ric - 0.25 * scal * id);
  p.beta = box_ricci(alg) + 2.0 * (t - 0.25 * sq * id);
  p.scalar = scal;
  p.ricci_square = sq;
  return p;
}

Matrix symmetric(const Matrix &m) { return 0.5 * (m + m.transpose()); }

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Canonical scaling of the form c_a alpha + c_b beta, see HCSolutionSet.
std::pair<double, double> canonical_form(double ca, double cb) {
  const double size = std::hypot(ca, cb);
  if (std::abs(ca) <= 1e-12 * size) return {0.0, 1.0};
  const double ratio = cb / ca;
  for (int q = 1; q <= 16; ++q) {
    const double p = std::round(q * ratio);
    if (std::abs(q * ratio - p) <= 1e-9 * std::max(1.0, std::abs(q * ratio))) return {q, p};
  }
  return {1.0, ratio};
}

std::string label(double ca, double cb) {
  auto coef = [](double c, const char *name) {
    if (c == 1.0) return std::string(name);
    if (c == -1.0) return "-" + std::string(name);
    return format_number(c) + "*" + name;
  };
  if (ca == 0.0) return coef(cb, "beta");
  std::string s = coef(ca, "alpha");
  if (cb == 0.0) return s;
  const std::string b = coef(cb, "beta");
  return b.front() == '-' ? s + b : s + "+" + b;
}

} // namespace

Matrix phi_tensor(const LieAlgebra &alg, double alpha, double beta) {
  const Pieces p = pieces(alg);
  return symmetric(p.einstein + alpha * p.alpha + beta * p.beta);
}

double lagrangian_density(const LieAlgebra &alg, const HCParameters &prm) {
  const Matrix ric = ricci_from_connection(alg);
  const double scal = ric.trace();
  const double sq = (ric.array() * ric.array()).sum();
  return scal + prm.alpha * scal * scal + prm.beta * sq - 2.0 * prm.lambda_cc;
}

FieldEquationReport check_solution(const LieAlgebra &alg, const HCParameters &prm) {
  FieldEquationReport rep;
  rep.phi = phi_tensor(alg, prm.alpha, prm.beta);
  const int n = alg.dim();
  rep.residual = (rep.phi + prm.lambda_cc * Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  rep.lagrangian_density = lagrangian_density(alg, prm);
  return rep;
}

HCParameters HCSolutionSet::at(const Vector &coords) const {
  Vector x = offset;
  for (std::size_t k = 0; k < basis.size() && static_cast<Eigen::Index>(k) < coords.size(); ++k)
    x += coords(static_cast<Eigen::Index>(k)) * basis[k];
  return {x(0), x(1), x(2)};
}

HCSolutionSet solve_parameters(const LieAlgebra &alg, double rank_tol, double empty_tol) {
  const int n = alg.dim();
  const Pieces p = pieces(alg);
  const Matrix e = symmetric(p.einstein), a = symmetric(p.alpha), b = symmetric(p.beta);

  // Phi_0 + alpha Phi_a + beta Phi_b + Lambda I = 0 on the components i <= j.
  const int rows = n * (n + 1) / 2;
  Matrix m(rows, 3);
  Vector rhs(rows);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++row) {
      m(row, 0) = a(i, j);
      m(row, 1) = b(i, j);
      m(row, 2) = i == j ? 1.0 : 0.0;
      rhs(row) = -e(i, j);
    }

  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Vector &sv = svd.singularValues();
  const int rank = detail::numerical_rank(sv, rank_tol);
  Vector x = Vector::Zero(3);
  for (int k = 0; k < rank; ++k) x += (svd.matrixU().col(k).dot(rhs) / sv(k)) * svd.matrixV().col(k);

  HCSolutionSet out;
  out.offset = x;
  out.residual = (m * x - rhs).norm();
  out.empty = !(out.residual <= empty_tol);
  for (int k = rank; k < 3; ++k) out.basis.push_back(svd.matrixV().col(k));
  if (out.empty) return out;

  // A line of solutions with constant Lambda has an invariant product.
  if (out.basis.size() == 1) {
    const Vector &v = out.basis.front();
    if (std::abs(v(2)) <= 1e-9 * v.norm()) {
      const auto [ca, cb] = canonical_form(-v(1), v(0));
      out.product_forms.emplace_back(ca, cb);
      out.invariant_products.push_back(x(2) * (ca * x(0) + cb * x(1)));
      out.product_labels.push_back(label(ca, cb));
    }
  }
  return out;
}

} // namespace liegeom
