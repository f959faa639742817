#include "liegeom/catalog.hpp"

#include <cmath>

#include "liegeom/error.hpp"

namespace liegeom::catalog {

LieAlgebra abelian(int n) { return LieAlgebra(n); }

LieAlgebra heisenberg3(double c) { return LieAlgebra::from_brackets(3, {{0, 1, 2, c}}); }

LieAlgebra heisenberg5() {
  return LieAlgebra::from_brackets(5, {{0, 1, 4, 1.0}, {2, 3, 4, 1.0}});
}

LieAlgebra nil4(double a) {
  return LieAlgebra::from_brackets(4, {{0, 2, 1, -a}, {0, 3, 2, -a}});
}

LieAlgebra hyperbolic(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "hyperbolic(n) needs n >= 2");
  std::vector<Bracket> b;
  for (int i = 1; i < n; ++i) b.push_back({0, i, i, 1.0});
  return LieAlgebra::from_brackets(n, b);
}

LieAlgebra su2() {
  return LieAlgebra::from_brackets(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}});
}

LieAlgebra sl2r() {
  return LieAlgebra::from_brackets(3, {{0, 1, 1, 2.0}, {0, 2, 2, -2.0}, {1, 2, 0, 1.0}});
}

const std::vector<std::string> &names() {
  static const std::vector<std::string> n{"abelian", "heisenberg3", "heisenberg5", "nil4",
                                          "hyperbolic", "su2", "sl2r"};
  return n;
}

namespace {

int as_dimension(double v, const std::string &name) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 64.0)
    throw Error(ErrorCode::InvalidArgument, name + ": dimension must be a positive integer");
  return static_cast<int>(v);
}

void expect_params(const std::string &name, std::span<const double> params,
                   std::size_t max) {
  if (params.size() > max)
    throw Error(ErrorCode::InvalidArgument, name + ": too many parameters");
}

} // namespace

LieAlgebra lookup(const std::string &name, std::span<const double> params) {
  if (name == "abelian") {
    expect_params(name, params, 1);
    return abelian(params.empty() ? 3 : as_dimension(params[0], name));
  }
  if (name == "heisenberg3") {
    expect_params(name, params, 1);
    return heisenberg3(params.empty() ? 1.0 : params[0]);
  }
  if (name == "heisenberg5") {
    expect_params(name, params, 0);
    return heisenberg5();
  }
  if (name == "nil4") {
    expect_params(name, params, 1);
    return nil4(params.empty() ? 1.0 : params[0]);
  }
  if (name == "hyperbolic") {
    expect_params(name, params, 1);
    return hyperbolic(params.empty() ? 3 : as_dimension(params[0], name));
  }
  if (name == "su2") {
    expect_params(name, params, 0);
    return su2();
  }
  if (name == "sl2r") {
    expect_params(name, params, 0);
    return sl2r();
  }
  throw Error(ErrorCode::UnknownName, "unknown catalog algebra '" + name + "'");
}

std::vector<std::pair<std::string, LieAlgebra>> defaults() {
  std::vector<std::pair<std::string, LieAlgebra>> out;
  for (const auto &n : names()) out.emplace_back(n, lookup(n));
  return out;
}

} // namespace liegeom::catalog
