#include "liegeom/extension.hpp"

#include <cmath>

#include "liegeom/error.hpp"

namespace liegeom {

bool RankOneExtension::positive() const {
  if (d.size() == 0) return false;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (d + d.transpose()));
  return eig.eigenvalues().minCoeff() > 0.0;
}

RankOneExtension rank_one_extend(const LieAlgebra &base, const Matrix &d, double scale,
                                 const Tolerances &tol) {
  const int n = base.dim();
  if (d.rows() != n || d.cols() != n)
    throw Error(ErrorCode::InvalidArgument, "derivation must be " + std::to_string(n) + "x" +
                                                std::to_string(n));
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw Error(ErrorCode::InvalidArgument, "extension scale must be positive");
  if (!is_nilpotent(base, tol))
    throw Error(ErrorCode::NotNilpotent, "extension base must be nilpotent");

  const double dsize = std::max(1.0, d.cwiseAbs().maxCoeff());
  const double asym = (d - d.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.derivation * dsize)
    throw Error(ErrorCode::NotSymmetric,
                "derivation is not symmetric (asymmetry " + std::to_string(asym) + ")");
  const double leibniz = derivation_residual(base, d);
  if (leibniz > tol.derivation * dsize * std::max(1.0, base.norm()))
    throw Error(ErrorCode::NotADerivation,
                "matrix is not a derivation (Leibniz residual " + std::to_string(leibniz) + ")");

  const int m = n + 1;
  std::vector<double> c(static_cast<std::size_t>(m * m * m), 0.0);
  auto at = [&](int k, int i, int j) -> double & {
    return c[static_cast<std::size_t>((k * m + i) * m + j)];
  };
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) at(k, i, j) = base(k, i, j);
  // [X0, e_j] = scale * sum_k D_kj e_k
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      at(k, n, j) = scale * d(k, j);
      at(k, j, n) = -scale * d(k, j);
    }

  RankOneExtension ext{base, d, scale, LieAlgebra::from_dense(m, c)};
  if (!validate(ext.total, tol).ok)
    throw Error(ErrorCode::NotADerivation, "extension violates the Jacobi identity");
  return ext;
}

namespace {

// Minimises f over [a, b] with a fixed number of golden-section steps.
template <class F> double golden_section(F f, double a, double b, int steps) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < steps; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

} // namespace

EinsteinExtension solve_einstein_extension(const LieAlgebra &base, const SearchConfig &cfg,
                                           const Tolerances &tol) {
  if (!is_nilpotent(base, tol))
    throw Error(ErrorCode::NotNilpotent, "extension base must be nilpotent");
  const int n = base.dim();

  EinsteinExtension out{{}, MetricFrame::identity(n), {}, 0.0, 0.0};
  if (base.is_abelian()) {
    out.certificate = soliton_project(base, tol);
    out.extension = rank_one_extend(base, Matrix::Identity(n, n), 1.0, tol);
  } else {
    LieAlgebra ortho = base;
    SolitonCertificate cert = soliton_project(base, tol);
    if (!cert.verified(cfg.tol)) {
      const auto found = solve_nilsoliton(base, cfg, std::nullopt, tol);
      if (!found.converged)
        throw Error(ErrorCode::SearchFailed,
                    "no soliton metric found on the base (residual_hat " +
                        std::to_string(found.certificate.residual_hat()) + ")");
      out.base_metric = found.metric;
      ortho = orthonormalize(base, found.metric);
      cert = found.certificate;
    }
    out.certificate = cert;
    const Matrix d = 0.5 * (cert.d + cert.d.transpose());

    // residual is |1 - s^2 tr D| ||D|| in exact arithmetic: V-shaped in log s
    const double unit = ortho.norm();
    auto residual_at = [&](double u) {
      return einstein_check(rank_one_extend(ortho, d, std::exp(u) / unit, tol).total).residual;
    };
    const double u = golden_section(residual_at, -12.0, 12.0, 200);
    out.extension = rank_one_extend(ortho, d, std::exp(u) / unit, tol);
  }
  const EinsteinCheck e = einstein_check(out.extension.total);
  out.lambda = e.lambda;
  out.residual = e.residual;
  return out;
}

} // namespace liegeom
