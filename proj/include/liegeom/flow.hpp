#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "liegeom/algebra.hpp"
#include "liegeom/curvature.hpp"

namespace liegeom {

enum class Normalization { none, unit_volume, unit_bracket_norm };

const char *to_string(Normalization n);
/// Accepts none / volume / unit_volume / bracket / unit_bracket_norm.
Normalization parse_normalization(const std::string &s);

/// Metric g (SPD, in the fixed algebra frame) at time t.
struct FlowState {
  Matrix g;
  double t = 0.0;
};

/// -2 Ric(g) expressed in the fixed algebra frame.
Matrix ricci_flow_velocity(const LieAlgebra &alg, const Matrix &g);

/// One classical Runge-Kutta step of dg/dt = -2 Ric(g). Throws SpdLoss when
/// an intermediate or the final metric is not positive definite; the caller
/// retries with a smaller step.
FlowState flow_step(const LieAlgebra &alg, const FlowState &state, double dt);

/// Rescales g into the chosen gauge: det g = 1, or ||C||_F = 1 for the
/// structure constants in a g-orthonormal frame. Abelian algebras are left
/// alone under the bracket gauge.
Matrix normalize_metric(const LieAlgebra &alg, const Matrix &g, Normalization n);

/// Nearest matrix with eigenvalues >= floor after symmetrisation.
Matrix spd_project(const Matrix &m, double floor = 1e-6);

struct FlowSample {
  double t = 0.0;
  Matrix g;
  double scalar = 0.0;
  double soliton_residual = 0.0;
  /// (det g(t) / det g(0))^(1/n) of the unnormalized flow: the homothety factor.
  double scale_estimate = 1.0;
};

struct FlowTrajectory {
  Normalization normalization = Normalization::none;
  std::vector<FlowSample> samples;
  /// Step size in use at the end; smaller than requested after SPD rejections.
  double final_dt = 0.0;
  int rejected_steps = 0;
};

/// Fixed-step RK4 from g0 to t_max, sampling after every step. The flow is
/// integrated in its own time; each sample stores the metric rescaled into the
/// chosen gauge (the initial metric included), with scalar and soliton
/// residual evaluated there. A rejected step halves dt for the rest of the
/// run; StepUnderflow is thrown once dt drops below 1e-12.
FlowTrajectory integrate(const LieAlgebra &alg, const Matrix &g0, double t_max, double dt,
                         Normalization normalization);

/// Structure constants in the Cholesky orthonormal frame of g, divided by
/// their norm. Constant along a flow that moves by homotheties and
/// triangular automorphisms, so it detects the soliton quotient.
LieAlgebra normalized_brackets(const LieAlgebra &alg, const Matrix &g);

/// max over samples of ||normalized_brackets(g(t)) - normalized_brackets(g(0))||_F.
double quotient_drift(const LieAlgebra &alg, const FlowTrajectory &traj);

/// Header t,g_11,g_12,...,g_nn,scalar,soliton_residual,scale_estimate; upper
/// triangle row by row; %.17g; LF line endings.
void write_csv(std::ostream &os, const FlowTrajectory &traj);

} // namespace liegeom
