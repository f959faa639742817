#include "liegeom/flow.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "liegeom/error.hpp"
#include "liegeom/soliton.hpp"

namespace liegeom {

const char *to_string(Normalization n) {
  switch (n) {
  case Normalization::none: return "none";
  case Normalization::unit_volume: return "unit_volume";
  case Normalization::unit_bracket_norm: return "unit_bracket_norm";
  }
  return "none";
}

Normalization parse_normalization(const std::string &s) {
  if (s == "none") return Normalization::none;
  if (s == "volume" || s == "unit_volume") return Normalization::unit_volume;
  if (s == "bracket" || s == "unit_bracket_norm") return Normalization::unit_bracket_norm;
  throw Error(ErrorCode::InvalidArgument, "unknown normalization '" + s + "'");
}

namespace {

MetricFrame frame_of(const Matrix &g) {
  try {
    return MetricFrame::from_metric(g);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::InvalidBasisChange) throw;
    throw Error(ErrorCode::SpdLoss, "metric is degenerate");
  }
}

} // namespace

Matrix ricci_flow_velocity(const LieAlgebra &alg, const Matrix &g) {
  return -2.0 * ricci_in_frame(alg, frame_of(g));
}

FlowState flow_step(const LieAlgebra &alg, const FlowState &state, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "flow step must be positive");
  auto f = [&](const Matrix &g) {
    if (!g.allFinite()) throw Error(ErrorCode::SpdLoss, "metric is not finite");
    return ricci_flow_velocity(alg, g);
  };
  const Matrix &g = state.g;
  const Matrix k1 = f(g);
  const Matrix k2 = f(g + 0.5 * dt * k1);
  const Matrix k3 = f(g + 0.5 * dt * k2);
  const Matrix k4 = f(g + dt * k3);
  Matrix next = g + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  next = 0.5 * (next + next.transpose());
  frame_of(next);
  return {next, state.t + dt};
}

Matrix normalize_metric(const LieAlgebra &alg, const Matrix &g, Normalization n) {
  switch (n) {
  case Normalization::none:
    return g;
  case Normalization::unit_volume:
    return g / std::pow(g.determinant(), 1.0 / static_cast<double>(g.rows()));
  case Normalization::unit_bracket_norm: {
    const double c = orthonormalize(alg, MetricFrame::from_metric(g)).norm();
    return c > 0.0 ? Matrix(g * (c * c)) : g;
  }
  }
  return g;
}

Matrix spd_project(const Matrix &m, double floor) {
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.transpose()));
  const Vector lam = eig.eigenvalues().cwiseMax(floor);
  const Matrix out = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

namespace {

FlowSample sample_at(const LieAlgebra &alg, const FlowState &s, double det0, Normalization n) {
  FlowSample out;
  out.t = s.t;
  out.g = normalize_metric(alg, s.g, n);
  const LieAlgebra ortho = orthonormalize(alg, MetricFrame::from_metric(out.g));
  out.scalar = scalar_curvature(ortho);
  out.soliton_residual = soliton_project(ortho).residual;
  out.scale_estimate = std::pow(s.g.determinant() / det0, 1.0 / static_cast<double>(s.g.rows()));
  return out;
}

} // namespace

FlowTrajectory integrate(const LieAlgebra &alg, const Matrix &g0, double t_max, double dt,
                         Normalization normalization) {
  if (g0.rows() != alg.dim() || g0.cols() != alg.dim())
    throw Error(ErrorCode::InvalidArgument, "metric size does not match the algebra");
  if (!(dt > 0.0) || !(t_max >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "flow needs dt > 0 and t_max >= 0");

  FlowTrajectory traj;
  traj.normalization = normalization;
  // The state follows the unnormalized flow in its own time; samples are
  // rescaled into the gauge. Rescaling the state instead would reparametrize
  // time, and in the bracket gauge that clock runs exponentially fast.
  FlowState state{normalize_metric(alg, 0.5 * (g0 + g0.transpose()), normalization), 0.0};
  MetricFrame::from_metric(state.g);
  const double det0 = state.g.determinant();
  traj.samples.push_back(sample_at(alg, state, det0, normalization));

  const double eps = 1e-12 * std::max(1.0, t_max);
  while (state.t < t_max - eps) {
    const bool last = dt >= t_max - state.t - eps;
    const double h = last ? t_max - state.t : dt;
    FlowState next;
    try {
      next = flow_step(alg, state, h);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::SpdLoss) throw;
      ++traj.rejected_steps;
      dt *= 0.5;
      if (dt < 1e-12)
        throw Error(ErrorCode::StepUnderflow,
                    "step size underflow at t = " + std::to_string(state.t));
      continue;
    }
    if (last) next.t = t_max;
    state = next;
    traj.samples.push_back(sample_at(alg, state, det0, normalization));
  }
  traj.final_dt = dt;
  return traj;
}

LieAlgebra normalized_brackets(const LieAlgebra &alg, const Matrix &g) {
  const LieAlgebra ortho = orthonormalize(alg, MetricFrame::from_metric(g));
  const double c = ortho.norm();
  return c > 0.0 ? ortho.scaled(1.0 / c) : ortho;
}

double quotient_drift(const LieAlgebra &alg, const FlowTrajectory &traj) {
  if (traj.samples.empty()) return 0.0;
  const LieAlgebra first = normalized_brackets(alg, traj.samples.front().g);
  double worst = 0.0;
  for (const auto &s : traj.samples) {
    const LieAlgebra now = normalized_brackets(alg, s.g);
    double d = 0.0;
    for (std::size_t i = 0; i < now.dense().size(); ++i) {
      const double x = now.dense()[i] - first.dense()[i];
      d += x * x;
    }
    worst = std::max(worst, std::sqrt(d));
  }
  return worst;
}

void write_csv(std::ostream &os, const FlowTrajectory &traj) {
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
  };
  const int n = traj.samples.empty() ? 0 : static_cast<int>(traj.samples.front().g.rows());
  os << "t";
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      os << ",g_" << i + 1;
      if (n >= 10) os << '_';
      os << j + 1;
    }
  os << ",scalar,soliton_residual,scale_estimate\n";
  for (const auto &s : traj.samples) {
    num(s.t);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        os << ',';
        num(s.g(i, j));
      }
    os << ',';
    num(s.scalar);
    os << ',';
    num(s.soliton_residual);
    os << ',';
    num(s.scale_estimate);
    os << '\n';
  }
}

} // namespace liegeom
