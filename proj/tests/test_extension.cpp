#include <gtest/gtest.h>

#include "liegeom/catalog.hpp"
#include "liegeom/error.hpp"
#include "liegeom/extension.hpp"
#include "test_support.hpp"

namespace liegeom::test {
namespace {

Matrix diag(std::initializer_list<double> v) {
  Vector d(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

// Basis reordering that moves the last vector to the front.
BasisChange last_to_front(int n) {
  Matrix p = Matrix::Zero(n, n);
  p(n - 1, 0) = 1.0;
  for (int i = 1; i < n; ++i) p(i - 1, i) = 1.0;
  return BasisChange(p);
}

ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

TEST(RankOneExtend, AbelianByIdentityIsHyperbolic) {
  for (int n = 2; n <= 6; ++n) {
    const auto ext = rank_one_extend(catalog::abelian(n - 1), Matrix::Identity(n - 1, n - 1), 1.0);
    EXPECT_EQ(ext.x0_index(), n - 1);
    EXPECT_EQ(max_abs_diff(change_basis(ext.total, last_to_front(n)), catalog::hyperbolic(n)), 0.0);
    EXPECT_LE((ricci_from_connection(ext.total) + (n - 1.0) * Matrix::Identity(n, n)).norm(), 1e-14);
    EXPECT_TRUE(ext.positive());
  }
}

TEST(RankOneExtend, HeisenbergByHand) {
  const double s = 2.5;
  const auto ext = rank_one_extend(catalog::heisenberg3(), diag({1, 1, 2}), s);
  const auto &t = ext.total;
  ASSERT_EQ(t.dim(), 4);
  EXPECT_EQ(t(0, 3, 0), s);
  EXPECT_EQ(t(1, 3, 1), s);
  EXPECT_EQ(t(2, 3, 2), 2 * s);
  EXPECT_EQ(t(2, 0, 1), 1.0);
  EXPECT_EQ(t.brackets().size(), 4u);
  EXPECT_TRUE(validate(t).ok);
  EXPECT_TRUE(is_solvable(t));
  EXPECT_FALSE(is_nilpotent(t));
  EXPECT_FALSE(is_unimodular(t));
  // [s, s] = n because D is invertible
  EXPECT_EQ(derived_series(t)[1], 3);
  EXPECT_NEAR(trace_vector(t)(3), -4 * s, 1e-15);
}

TEST(RankOneExtend, Errors) {
  Matrix skew = Matrix::Zero(3, 3);
  skew(0, 1) = 1.0;
  skew(1, 0) = -1.0;
  EXPECT_EQ(code_of([&] { rank_one_extend(catalog::heisenberg3(), skew, 1.0); }),
            ErrorCode::NotSymmetric);
  EXPECT_EQ(code_of([&] { rank_one_extend(catalog::heisenberg3(), Matrix::Identity(3, 3), 1.0); }),
            ErrorCode::NotADerivation);
  EXPECT_EQ(code_of([&] { rank_one_extend(catalog::su2(), Matrix::Zero(3, 3), 1.0); }),
            ErrorCode::NotNilpotent);
  EXPECT_EQ(code_of([&] { rank_one_extend(catalog::heisenberg3(), diag({1, 1, 2}), 0.0); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { rank_one_extend(catalog::heisenberg3(), Matrix::Identity(2, 2), 1.0); }),
            ErrorCode::InvalidArgument);
}

TEST(RankOneExtend, ScaleCovariance) {
  // Rescaling the metric by l^2 divides every structure constant by l, which
  // is the extension of base/l by (D, s/l).
  const Matrix d = diag({0.5, 2, 1.5, 1});
  for (double l : {0.5, 2.0, 3.0}) {
    const double s = 0.7;
    const double r1 = scalar_curvature(rank_one_extend(catalog::nil4(), d, s).total);
    const double r2 = scalar_curvature(rank_one_extend(catalog::nil4().scaled(1 / l), d, s / l).total);
    EXPECT_NEAR(r2, r1 / (l * l), 1e-12);
  }
  // on an abelian base the scale alone is the homothety
  const auto ab = catalog::abelian(3);
  const Matrix id = Matrix::Identity(3, 3);
  const double base = scalar_curvature(rank_one_extend(ab, id, 1.0).total);
  for (double s : {0.5, 2.0, 3.0})
    EXPECT_NEAR(scalar_curvature(rank_one_extend(ab, id, s).total), s * s * base, 1e-12);
}

TEST(EinsteinExtension, Abelian) {
  SearchConfig cfg;
  for (int n = 2; n <= 5; ++n) {
    const auto e = solve_einstein_extension(catalog::abelian(n - 1), cfg);
    EXPECT_TRUE(e.success());
    EXPECT_EQ(e.residual, 0.0);
    EXPECT_EQ(e.lambda, -(n - 1.0));
    EXPECT_EQ(max_abs_diff(change_basis(e.extension.total, last_to_front(n)), catalog::hyperbolic(n)),
              0.0);
  }
}

TEST(EinsteinExtension, NilsolitonBases) {
  // At the Einstein scale s^2 tr D = 1 and lambda = -tr D^2 / tr D.
  SearchConfig cfg;
  const std::vector<std::pair<LieAlgebra, Matrix>> cases{
      {catalog::heisenberg3(), diag({1, 1, 2})},
      {catalog::nil4(), diag({0.5, 2, 1.5, 1})},
      {catalog::heisenberg5(), Matrix()}};
  for (const auto &[base, d] : cases) {
    const auto e = solve_einstein_extension(base, cfg);
    const auto &t = e.extension.total;
    EXPECT_TRUE(e.success());
    EXPECT_LE(e.residual, 1e-9);
    EXPECT_LT(e.lambda, 0.0);
    EXPECT_TRUE(e.extension.positive());
    EXPECT_TRUE(is_solvable(t));
    EXPECT_FALSE(is_unimodular(t));
    EXPECT_EQ(derived_series(t)[1], base.dim());
    const Matrix &dd = e.extension.d;
    EXPECT_NEAR(e.lambda, -(dd * dd).trace() / dd.trace(), 1e-9);
    EXPECT_NEAR(e.extension.scale, 1.0 / std::sqrt(dd.trace()), 1e-9);
    EXPECT_NEAR(e.lambda, e.certificate.lambda, 1e-9);
    if (d.size() > 0) EXPECT_LE((dd - d).norm(), 1e-12);
  }
}

TEST(EinsteinExtension, SkewedBaseNeedsMetricSearch) {
  Rng rng(21);
  SearchConfig cfg;
  cfg.seed = 1;
  const auto skewed = change_basis(catalog::nil4(), BasisChange(random_well_conditioned(rng, 4)));
  ASSERT_FALSE(soliton_project(skewed).verified());
  const auto e = solve_einstein_extension(skewed, cfg);
  EXPECT_TRUE(e.success());
  EXPECT_LE(e.residual, 1e-9);
  // the scale-free eigenvalue matches the nil4 soliton
  const double hat = soliton_project(catalog::nil4()).lambda_hat();
  EXPECT_NEAR(e.lambda / std::pow(e.extension.base.norm(), 2), hat, 1e-9);
}

TEST(EinsteinExtension, RejectsNonNilpotent) {
  SearchConfig cfg;
  EXPECT_EQ(code_of([&] { solve_einstein_extension(catalog::sl2r(), cfg); }),
            ErrorCode::NotNilpotent);
}

TEST(EinsteinExtension, Deterministic) {
  Rng rng(21);
  SearchConfig cfg;
  const auto skewed = change_basis(catalog::heisenberg3(), BasisChange(random_well_conditioned(rng, 3)));
  const auto a = solve_einstein_extension(skewed, cfg);
  const auto b = solve_einstein_extension(skewed, cfg);
  EXPECT_EQ(a.extension.total, b.extension.total);
  EXPECT_EQ(a.residual, b.residual);
}

} // namespace
} // namespace liegeom::test
