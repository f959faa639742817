#include <gtest/gtest.h>

#include "liegeom/catalog.hpp"
#include "liegeom/error.hpp"
#include "liegeom/io.hpp"
#include "test_support.hpp"

namespace liegeom::test {
namespace {

using io::Json;

ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

std::string message_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.what();
  }
  return "";
}

// Text round trip through dump and parse.
Json again(const Json &j) { return io::parse(io::dump(j)); }

TEST(AlgebraJson, LayoutIsOneBased) {
  const Json j = io::to_json(catalog::heisenberg3());
  EXPECT_EQ(io::dump(j), "{\n  \"dim\": 3,\n  \"brackets\": [\n    {\n      \"i\": 1,\n"
                         "      \"j\": 2,\n      \"k\": 3,\n      \"c\": 1.0\n    }\n  ]\n}\n");
}

TEST(AlgebraJson, RoundTripIsBitExact) {
  Rng rng(17);
  for (const auto &[name, alg] : catalog::defaults()) {
    const auto moved = change_basis(alg, BasisChange(random_well_conditioned(rng, alg.dim())));
    EXPECT_EQ(io::algebra_from_json(again(io::to_json(moved))), moved) << name;
  }
}

TEST(AlgebraJson, SchemaErrorsNameTheEntry) {
  auto load = [](const std::string &text) { return io::algebra_from_json(io::parse(text)); };
  EXPECT_EQ(code_of([&] { load("{\"dim\": 3}"); }), ErrorCode::Schema);
  EXPECT_EQ(code_of([&] { load("{\"dim\": 0, \"brackets\": []}"); }), ErrorCode::Schema);
  EXPECT_EQ(code_of([&] { load("[1, 2"); }), ErrorCode::Schema);
  const std::string dup =
      R"({"dim": 3, "brackets": [{"i":1,"j":2,"k":3,"c":1}, {"i":1,"j":2,"k":3,"c":2}]})";
  EXPECT_EQ(code_of([&] { load(dup); }), ErrorCode::Schema);
  EXPECT_NE(message_of([&] { load(dup); }).find("i=1, j=2, k=3"), std::string::npos);
  const std::string order = R"({"dim": 3, "brackets": [{"i":2,"j":1,"k":3,"c":1}]})";
  EXPECT_NE(message_of([&] { load(order); }).find("i < j"), std::string::npos);
  const std::string range = R"({"dim": 3, "brackets": [{"i":1,"j":4,"k":3,"c":1}]})";
  EXPECT_EQ(code_of([&] { load(range); }), ErrorCode::Schema);
  const std::string kind = R"({"dim": 3, "brackets": [{"i":1,"j":2,"k":3,"c":"one"}]})";
  EXPECT_NE(message_of([&] { load(kind); }).find("brackets[0].c"), std::string::npos);
}

TEST(MetricJson, RoundTripAndChecks) {
  Rng rng(3);
  const Matrix a = random_well_conditioned(rng, 4);
  const Matrix g = a.transpose() * a;
  const Matrix sym = 0.5 * (g + g.transpose());
  EXPECT_EQ(io::metric_from_json(again(io::metric_to_json(sym))), sym);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = 0.5;
  EXPECT_EQ(code_of([&] { io::metric_from_json(io::metric_to_json(bad)); }), ErrorCode::Schema);
  EXPECT_EQ(code_of([&] { io::metric_from_json(io::metric_to_json(-Matrix::Identity(2, 2))); }),
            ErrorCode::SpdLoss);
}

TEST(CurvatureJson, RoundTripIsBitExact) {
  Rng rng(5);
  const auto alg = change_basis(catalog::nil4(), BasisChange(random_well_conditioned(rng, 4)));
  const auto rep = curvature_report(alg);
  const Json j = io::to_json(rep);
  EXPECT_EQ(j["ricci"].size(), 16u);
  EXPECT_EQ(j["gamma"].size(), 64u);
  const auto back = io::curvature_from_json(again(j));
  EXPECT_EQ(back.ricci, rep.ricci);
  EXPECT_EQ(back.scalar, rep.scalar);
  EXPECT_EQ(back.killing_part, rep.killing_part);
  EXPECT_EQ(back.gamma.data, rep.gamma.data);
  EXPECT_EQ(back.convention, rep.convention);
  EXPECT_EQ(io::dump(io::to_json(back)), io::dump(j));
}

TEST(CertificateJson, RoundTrip) {
  const auto c = soliton_project(catalog::nil4(2.0));
  const Json j = io::to_json(c);
  EXPECT_TRUE(j["verified"].get<bool>());
  EXPECT_EQ(j["scale_invariant"]["lambda_hat"].get<double>(), c.lambda_hat());
  const auto back = io::certificate_from_json(again(j));
  EXPECT_EQ(back.lambda, c.lambda);
  EXPECT_EQ(back.d, c.d);
  EXPECT_EQ(back.residual, c.residual);
  EXPECT_EQ(back.bracket_norm, c.bracket_norm);
  EXPECT_EQ(io::dump(io::to_json(back)), io::dump(j));
}

TEST(ExtensionJson, RoundTrip) {
  const auto e = solve_einstein_extension(catalog::heisenberg3(), SearchConfig{});
  const Json j = io::to_json(e);
  EXPECT_EQ(j["x0_index"].get<int>(), 4);
  const auto r = io::extension_from_json(again(j));
  EXPECT_EQ(r.total, e.extension.total);
  EXPECT_EQ(r.scale, e.extension.scale);
  EXPECT_EQ(r.einstein_lambda, e.lambda);
  EXPECT_EQ(r.einstein_residual, e.residual);
}

TEST(SolutionSetJson, RoundTrip) {
  for (const auto &alg : {catalog::nil4(), catalog::su2(), milnor_algebra(1, 2, 3 + 2 * std::sqrt(2.0))}) {
    const auto s = solve_parameters(alg);
    const Json j = io::to_json(s);
    const auto back = io::solution_set_from_json(again(j));
    EXPECT_EQ(back.empty, s.empty);
    EXPECT_EQ(back.offset, s.offset);
    ASSERT_EQ(back.basis.size(), s.basis.size());
    for (std::size_t k = 0; k < s.basis.size(); ++k) EXPECT_EQ(back.basis[k], s.basis[k]);
    EXPECT_EQ(back.invariant_products, s.invariant_products);
    EXPECT_EQ(back.product_labels, s.product_labels);
    EXPECT_EQ(io::dump(io::to_json(back)), io::dump(j));
  }
}

TEST(Numbers, ShortestRoundTrip) {
  Rng rng(99);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  Json a = Json::array();
  std::vector<double> xs;
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 40);
    xs.push_back(x);
    a.push_back(x);
  }
  xs.push_back(0.1);
  a.push_back(0.1);
  const Json b = again(a);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_EQ(b[i].get<double>(), xs[i]);
  EXPECT_EQ(io::dump(Json(0.1)), "0.1\n");
}

} // namespace
} // namespace liegeom::test
