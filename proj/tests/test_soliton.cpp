#include <gtest/gtest.h>

#include "liegeom/catalog.hpp"
#include "liegeom/error.hpp"
#include "liegeom/soliton.hpp"
#include "test_support.hpp"

namespace liegeom::test {
namespace {

Matrix diag(std::initializer_list<double> v) {
  Vector d(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

// tr(Ric^2) / ||C||^4, degree-0 homogeneous so its gradient is tangent to the
// unit sphere of brackets.
double normalized_ricci_square(const LieAlgebra &alg) {
  const Matrix ric = ricci_from_connection(alg);
  const double nc = alg.norm();
  return (ric * ric).trace() / (nc * nc * nc * nc);
}

// Derivative of the functional along the GL(n) orbit direction E_pq.
Matrix orbit_gradient(const LieAlgebra &alg, double h) {
  const int n = alg.dim();
  Matrix g(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Matrix e = Matrix::Zero(n, n);
      e(p, q) = h;
      const Matrix id = Matrix::Identity(n, n);
      const double fp = normalized_ricci_square(change_basis(alg, BasisChange(id + e)));
      const double fm = normalized_ricci_square(change_basis(alg, BasisChange(id - e)));
      g(p, q) = (fp - fm) / (2 * h);
    }
  return g;
}

TEST(SolitonProject, HandDerivedCertificates) {
  const auto h = soliton_project(catalog::heisenberg3());
  EXPECT_NEAR(h.lambda, -1.5, 1e-12);
  EXPECT_LE((h.d - diag({1, 1, 2})).norm(), 1e-12);
  EXPECT_LE(h.residual, 1e-12);
  EXPECT_TRUE(h.verified());

  const auto n4 = soliton_project(catalog::nil4());
  EXPECT_NEAR(n4.lambda, -1.5, 1e-12);
  EXPECT_LE((n4.d - diag({0.5, 2, 1.5, 1})).norm(), 1e-12);
  EXPECT_TRUE(n4.verified());

  const auto s = soliton_project(catalog::su2());
  EXPECT_NEAR(s.lambda, 0.5, 1e-12);
  EXPECT_LE(s.d.norm(), 1e-12);
  EXPECT_LE(s.residual, 1e-12);

  const auto a = soliton_project(catalog::abelian(4));
  EXPECT_EQ(a.lambda, 0.0);
  EXPECT_EQ(a.residual, 0.0);
}

TEST(SolitonProject, NonSolitonHasPositiveResidual) {
  // A non-diagonal metric on nil4 is not a soliton.
  Matrix s = Matrix::Identity(4, 4);
  s(0, 1) = 0.7;
  s(2, 3) = -0.4;
  const auto c = soliton_project(orthonormalize(catalog::nil4(), MetricFrame(s)));
  EXPECT_GT(c.residual, 1e-3);
  EXPECT_LE(c.derivation_residual, 1e-10);
}

TEST(SolitonProject, RotationInvariantResidual) {
  Rng rng(31);
  Matrix s = Matrix::Identity(4, 4);
  s(0, 1) = 0.7;
  const auto alg = orthonormalize(catalog::nil4(), MetricFrame(s));
  const double base = soliton_project(alg).residual;
  for (int t = 0; t < 20; ++t) {
    const auto rotated = change_basis(alg, BasisChange(random_rotation(rng, 4)));
    EXPECT_NEAR(soliton_project(rotated).residual, base, 1e-10);
  }
}

TEST(SolitonProject, ScalingCovariance) {
  for (const auto &alg : {catalog::heisenberg3(), catalog::nil4(), catalog::heisenberg5()}) {
    const auto c = soliton_project(alg);
    for (double s : {0.5, 2.0, 3.0}) {
      const auto cs = soliton_project(alg.scaled(s));
      EXPECT_NEAR(cs.lambda, s * s * c.lambda, 1e-10);
      EXPECT_LE((cs.d - s * s * c.d).norm(), 1e-10);
      EXPECT_EQ(cs.verified(), c.verified());
      EXPECT_NEAR(cs.lambda_hat(), c.lambda_hat(), 1e-12);
    }
  }
}

TEST(SolitonProject, VerifiedCertificatesPassDirectLeibnizCheck) {
  for (const auto &[name, alg] : catalog::defaults()) {
    const auto c = soliton_project(alg);
    if (!c.verified()) continue;
    const int n = alg.dim();
    const Matrix d = ricci_from_connection(alg) - c.lambda * Matrix::Identity(n, n);
    // direct check, bypassing the projection
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Vector ei = Vector::Unit(n, i), ej = Vector::Unit(n, j);
        const Vector r = d * alg.bracket(ei, ej) - alg.bracket(d * ei, ej) - alg.bracket(ei, d * ej);
        EXPECT_LE(r.norm(), 1e-9) << name;
      }
  }
}

TEST(SolitonProject, NilsolitonsAreCriticalForRicciSquare) {
  for (const auto &alg : {catalog::heisenberg3(), catalog::nil4(), catalog::heisenberg5()}) {
    ASSERT_TRUE(soliton_project(alg).verified());
    const auto unit = alg.scaled(1.0 / alg.norm());
    EXPECT_LE(orbit_gradient(unit, 1e-5).norm(), 1e-6);
  }
  // and a non-soliton metric is not critical
  Matrix s = Matrix::Identity(4, 4);
  s(0, 1) = 0.7;
  const auto off = orthonormalize(catalog::nil4(), MetricFrame(s));
  EXPECT_GT(orbit_gradient(off.scaled(1.0 / off.norm()), 1e-5).norm(), 1e-3);
}

TEST(SolveNilsoliton, IdentityAlreadyOptimalForNil4) {
  SearchConfig cfg;
  const auto r = solve_nilsoliton(catalog::nil4(), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.restart, 0);
  EXPECT_NEAR(r.certificate.lambda, -1.5, 1e-12);
}

TEST(SolveNilsoliton, RecoversShapeFromPerturbedMetrics) {
  Rng rng(77);
  SearchConfig cfg;
  cfg.seed = 3;
  const double h3_hat = soliton_project(catalog::heisenberg3()).lambda_hat();
  const double n4_hat = soliton_project(catalog::nil4()).lambda_hat();
  const double h5_hat = soliton_project(catalog::heisenberg5()).lambda_hat();
  const std::vector<std::pair<LieAlgebra, double>> cases{
      {catalog::heisenberg3(), h3_hat}, {catalog::nil4(), n4_hat}, {catalog::heisenberg5(), h5_hat}};
  for (const auto &[alg, hat] : cases) {
    const int n = alg.dim();
    Matrix s = Matrix::Identity(n, n) + 0.3 * random_gaussian(rng, n, n).triangularView<Eigen::Upper>().toDenseMatrix();
    const auto r = solve_nilsoliton(alg, cfg, MetricFrame(s));
    EXPECT_TRUE(r.converged) << n;
    EXPECT_LE(r.certificate.residual_hat(), 1e-8) << n;
    EXPECT_NEAR(r.certificate.lambda_hat(), hat, 1e-8) << n;
    EXPECT_LE(r.certificate.derivation_residual, 1e-9) << n;
  }
}

TEST(SolveNilsoliton, RandomRestartsAlsoConverge) {
  SearchConfig cfg;
  cfg.seed = 5;
  cfg.restarts = 3;
  Matrix bad = Matrix::Identity(4, 4);
  bad(0, 1) = 2.0;
  bad(1, 3) = -1.0;
  const auto r = solve_nilsoliton(catalog::nil4(), cfg, MetricFrame(bad));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.certificate.residual_hat(), 1e-8);
}

TEST(SolveNilsoliton, AbelianAndErrors) {
  SearchConfig cfg;
  const auto r = solve_nilsoliton(catalog::abelian(3), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.certificate.lambda, 0.0);
  EXPECT_EQ(r.certificate.d.norm(), 0.0);
  try {
    solve_nilsoliton(catalog::su2(), cfg);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNilpotent);
  }
}

TEST(SolveNilsoliton, DeterministicUnderSeed) {
  SearchConfig cfg;
  cfg.seed = 42;
  cfg.restarts = 3;
  Matrix s = Matrix::Identity(5, 5);
  s(0, 2) = 0.5;
  s(1, 4) = 0.3;
  const auto a = solve_nilsoliton(catalog::heisenberg5(), cfg, MetricFrame(s));
  const auto b = solve_nilsoliton(catalog::heisenberg5(), cfg, MetricFrame(s));
  EXPECT_EQ(a.metric.frame(), b.metric.frame());
  EXPECT_EQ(a.certificate.lambda, b.certificate.lambda);
  EXPECT_EQ(a.certificate.d, b.certificate.d);
}

TEST(EinsteinCheck, Examples) {
  for (int n = 2; n <= 5; ++n) {
    const auto e = einstein_check(catalog::hyperbolic(n));
    EXPECT_NEAR(e.lambda, -(n - 1.0), 1e-13);
    EXPECT_LE(e.residual, 1e-13);
  }
  const auto s = einstein_check(catalog::su2());
  EXPECT_NEAR(s.lambda, 0.5, 1e-15);
  EXPECT_LE(s.residual, 1e-15);
  const auto h = einstein_check(catalog::heisenberg3());
  const double expected = (diag({-0.5, -0.5, 0.5}) + Matrix::Identity(3, 3) / 6.0).norm();
  EXPECT_NEAR(h.residual, expected, 1e-14);
  EXPECT_GT(h.residual, 0.5);
}

TEST(NegativeScalar, Su2Abelian) {
  SearchConfig cfg;
  const auto first = find_negative_scalar_metric(catalog::su2(), cfg);
  ASSERT_TRUE(first.found);
  EXPECT_LT(first.scalar, 0.0);

  const auto r = find_negative_scalar_metric(catalog::su2(), cfg, -1.0);
  ASSERT_TRUE(r.found);
  EXPECT_LE(r.iterations, cfg.max_iter);
  EXPECT_LE(r.scalar, -1.0);
  // reproducible from the returned metric
  EXPECT_NEAR(scalar_curvature(orthonormalize(catalog::su2(), r.metric)), r.scalar, 1e-12);
  EXPECT_NEAR(std::abs(r.metric.frame().determinant()), 1.0, 1e-12);

  const auto a = find_negative_scalar_metric(catalog::abelian(3), cfg);
  EXPECT_FALSE(a.found);
  EXPECT_EQ(a.scalar, 0.0);

  const auto h = find_negative_scalar_metric(catalog::heisenberg3(), cfg);
  EXPECT_TRUE(h.found);
  EXPECT_EQ(h.iterations, 0);
  EXPECT_DOUBLE_EQ(h.scalar, -0.5);
}

TEST(DetectSu2, Examples) {
  SearchConfig cfg;
  const auto s = detect_su2(catalog::su2(), cfg);
  EXPECT_TRUE(s.found);
  EXPECT_EQ(s.residual, 0.0);
  EXPECT_EQ(s.triple[0], Vector::Unit(3, 0));

  cfg.restarts = 64;
  EXPECT_FALSE(detect_su2(catalog::heisenberg3(), cfg).found);
  EXPECT_FALSE(detect_su2(catalog::sl2r(), cfg).found);

  // su2 hidden in a skewed frame of su2 + R
  Rng rng(2);
  LieAlgebra padded = LieAlgebra::from_brackets(
      4, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}});
  const auto skewed = change_basis(padded, BasisChange(random_well_conditioned(rng, 4)));
  const auto found = detect_su2(skewed, cfg);
  EXPECT_TRUE(found.found);
  EXPECT_LE(found.raw_residual, 1e-8);
}

} // namespace
} // namespace liegeom::test
