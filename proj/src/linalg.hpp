#pragma once

#include <Eigen/Dense>

namespace liegeom::detail {

/// Singular values at or below rel_tol * sigma_max are treated as zero; an
/// all-small matrix (sigma_max <= rel_tol) has rank 0.
inline Eigen::Index numerical_rank(const Eigen::VectorXd &sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) <= rel_tol) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

/// Orthonormal basis (columns) of the column space of a.
inline Eigen::MatrixXd column_space(const Eigen::MatrixXd &a, double rel_tol) {
  if (a.cols() == 0) return Eigen::MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  const auto r = numerical_rank(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis (columns) of the kernel of a.
inline Eigen::MatrixXd null_space(const Eigen::MatrixXd &a, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto r = numerical_rank(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(a.cols() - r);
}

} // namespace liegeom::detail
