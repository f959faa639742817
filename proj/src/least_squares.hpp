#pragma once

#include <functional>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

namespace liegeom::detail {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd &)>;

struct LmOutcome {
  Eigen::VectorXd x;
  double cost = 0.0; // squared norm of the residual at x
  int iterations = 0;
};

namespace lm_impl {

struct Functor : Eigen::DenseFunctor<double> {
  Functor(const ResidualFn &f, int inputs, int values)
      : Eigen::DenseFunctor<double>(inputs, values), fn(&f) {}
  int operator()(const InputType &x, ValueType &out) const {
    out = (*fn)(x);
    return 0;
  }
  const ResidualFn *fn;
};

} // namespace lm_impl

/// Levenberg-Marquardt with a central-difference Jacobian. Deterministic for a
/// given start point.
inline LmOutcome levenberg_marquardt(const ResidualFn &fn, Eigen::VectorXd x0,
                                     int max_evaluations) {
  const Eigen::VectorXd r0 = fn(x0);
  lm_impl::Functor functor(fn, static_cast<int>(x0.size()), static_cast<int>(r0.size()));
  Eigen::NumericalDiff<lm_impl::Functor, Eigen::Central> diff(functor);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<lm_impl::Functor, Eigen::Central>> lm(diff);
  lm.setMaxfev(max_evaluations);
  lm.setFtol(1e-30);
  lm.setXtol(1e-16);
  lm.setGtol(0.0);
  lm.minimize(x0);
  LmOutcome out;
  out.iterations = static_cast<int>(lm.iterations());
  out.cost = fn(x0).squaredNorm();
  out.x = std::move(x0);
  return out;
}

} // namespace liegeom::detail
