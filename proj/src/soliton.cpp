#include "liegeom/soliton.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "least_squares.hpp"
#include "liegeom/error.hpp"

namespace liegeom {

double SolitonCertificate::lambda_hat() const {
  return bracket_norm > 0 ? lambda / (bracket_norm * bracket_norm) : 0.0;
}

Matrix SolitonCertificate::d_hat() const {
  return bracket_norm > 0 ? Matrix(d / (bracket_norm * bracket_norm))
                          : Matrix(Matrix::Zero(d.rows(), d.cols()));
}

double SolitonCertificate::residual_hat() const {
  return bracket_norm > 0 ? residual / (bracket_norm * bracket_norm) : residual;
}

namespace {

struct Projection {
  double lambda;
  Matrix d;
  Matrix defect; // Ric - lambda I - D
};

// min ||ric - lambda I - sum x_k B_k||_F over lambda and x.
Projection project(const Matrix &ric, const std::vector<Matrix> &der, double rank_tol) {
  const Eigen::Index n = ric.rows();
  const Eigen::Index nn = n * n;
  Matrix a(nn, static_cast<Eigen::Index>(der.size()) + 1);
  const Matrix id = Matrix::Identity(n, n);
  a.col(0) = Eigen::Map<const Vector>(id.data(), nn);
  for (std::size_t k = 0; k < der.size(); ++k)
    a.col(static_cast<Eigen::Index>(k) + 1) = Eigen::Map<const Vector>(der[k].data(), nn);
  const Vector b = Eigen::Map<const Vector>(ric.data(), nn);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(rank_tol);
  cod.compute(a);
  const Vector x = cod.solve(b);
  Projection p;
  p.lambda = x(0);
  p.d = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < der.size(); ++k) p.d += x(static_cast<Eigen::Index>(k) + 1) * der[k];
  p.defect = ric - p.lambda * id - p.d;
  return p;
}

SolitonCertificate certify(const LieAlgebra &ortho, const Projection &p) {
  SolitonCertificate c;
  c.lambda = p.lambda;
  c.d = p.d;
  c.residual = p.defect.norm();
  c.derivation_residual = derivation_residual(ortho, p.d);
  c.bracket_norm = ortho.norm();
  return c;
}

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

Vector random_params(std::mt19937_64 &rng, int count, double spread) {
  std::normal_distribution<double> nd(0.0, spread);
  Vector p(count);
  for (int i = 0; i < count; ++i) p(i) = nd(rng);
  return p;
}

} // namespace

int triangular_parameter_count(int n) { return n * (n + 1) / 2 - 1; }

Matrix triangular_frame(int n, const Vector &params) {
  Matrix s = Matrix::Zero(n, n);
  double log_sum = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    s(i, i) = std::exp(params(i));
    log_sum += params(i);
  }
  s(n - 1, n - 1) = std::exp(-log_sum);
  int p = n - 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s(i, j) = params(p++);
  return s;
}

SolitonCertificate soliton_project(const LieAlgebra &alg, const Tolerances &tol) {
  const Matrix ric = ricci_closed_form(alg).ricci;
  return certify(alg, project(ric, derivation_space(alg, tol).basis, tol.rank));
}

NilsolitonResult solve_nilsoliton(const LieAlgebra &alg, const SearchConfig &cfg,
                                  const std::optional<MetricFrame> &start,
                                  const Tolerances &tol) {
  if (!is_nilpotent(alg, tol))
    throw Error(ErrorCode::NotNilpotent, "solve_nilsoliton requires a nilpotent algebra");
  const int n = alg.dim();
  const MetricFrame initial = start.value_or(MetricFrame::identity(n));

  // Der of the orthonormalised algebra is M^-1 Der(g) M with M = s^-1, so the
  // kernel is computed once.
  const auto der = derivation_space(alg, tol).basis;
  auto certificate_at = [&](const Matrix &s) {
    const LieAlgebra ortho = orthonormalize(alg, MetricFrame(s, 0.0));
    std::vector<Matrix> moved;
    moved.reserve(der.size());
    const Matrix m = s.inverse();
    for (const auto &d : der) moved.push_back(s * d * m);
    const Projection p = project(ricci_closed_form(ortho).ricci, moved, tol.rank);
    return std::pair{ortho, p};
  };

  if (alg.is_abelian()) {
    const auto [ortho, p] = certificate_at(initial.frame());
    return {initial, certify(ortho, p), true, 0, 0};
  }

  NilsolitonResult best{initial, {}, false, 0, 0};
  double best_cost = std::numeric_limits<double>::infinity();
  int total_iterations = 0;

  for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
    Matrix base;
    Vector x0 = Vector::Zero(triangular_parameter_count(n));
    if (r == 0) {
      base = initial.frame();
    } else {
      base = Matrix::Identity(n, n);
      auto rng = restart_rng(cfg.seed, r);
      x0 = random_params(rng, static_cast<int>(x0.size()), 0.5);
    }
    auto frame = [&](const Vector &x) { return Matrix(triangular_frame(n, x) * base); };
    auto residual = [&](const Vector &x) -> Vector {
      const auto [ortho, p] = certificate_at(frame(x));
      const double scale = ortho.norm();
      return Eigen::Map<const Vector>(p.defect.data(), n * n) / (scale * scale);
    };

    double cost = residual(x0).norm();
    int iterations = 0;
    if (cost > cfg.tol) {
      const auto out = detail::levenberg_marquardt(residual, x0, cfg.max_iter);
      iterations = out.iterations;
      if (std::sqrt(out.cost) < cost) {
        x0 = out.x;
        cost = std::sqrt(out.cost);
      }
    }
    total_iterations += iterations;
    if (cost < best_cost) {
      best_cost = cost;
      const Matrix s = frame(x0);
      const auto [ortho, p] = certificate_at(s);
      best = {MetricFrame(s, 0.0), certify(ortho, p), cost <= cfg.tol, r, 0};
    }
    if (r == 0 && best.converged) break; // the start metric is already a soliton
  }
  best.iterations = total_iterations;
  return best;
}

EinsteinCheck einstein_check(const LieAlgebra &alg) {
  const Matrix ric = ricci_closed_form(alg).ricci;
  EinsteinCheck e;
  e.lambda = ric.trace() / alg.dim();
  e.residual = (ric - e.lambda * Matrix::Identity(alg.dim(), alg.dim())).norm();
  return e;
}

NegativeScalarResult find_negative_scalar_metric(const LieAlgebra &alg,
                                                 const SearchConfig &cfg, double target) {
  const int n = alg.dim();
  const int np = triangular_parameter_count(n);
  auto scalar_at = [&](const Vector &x) {
    return scalar_curvature(orthonormalize(alg, MetricFrame(triangular_frame(n, x), 0.0)));
  };
  auto gradient = [&](const Vector &x) {
    Vector g(np);
    const double h = 1e-6;
    for (int i = 0; i < np; ++i) {
      Vector xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      g(i) = (scalar_at(xp) - scalar_at(xm)) / (2 * h);
    }
    return g;
  };

  NegativeScalarResult best{false, MetricFrame::identity(n), scalar_at(Vector::Zero(np)), 0, 0};
  int iterations = 0;
  for (int r = 0; r < std::max(1, cfg.restarts) && iterations < cfg.max_iter; ++r) {
    Vector x = Vector::Zero(np);
    if (r > 0) {
      auto rng = restart_rng(cfg.seed, r);
      x = random_params(rng, np, 0.5);
    }
    double f = scalar_at(x);
    while (true) {
      if (f < best.scalar) {
        best.scalar = f;
        best.metric = MetricFrame(triangular_frame(n, x), 0.0);
        best.restart = r;
      }
      if (f < target) {
        best.found = true;
        best.iterations = iterations;
        return best;
      }
      if (iterations >= cfg.max_iter || np == 0) break;
      ++iterations;
      const Vector g = gradient(x);
      const double gn = g.norm();
      if (!(gn > 1e-8 * std::max(1.0, std::abs(f)))) break; // critical: restart elsewhere
      const Vector dir = -g / gn;
      double t = cfg.step;
      double ft = scalar_at(x + t * dir);
      if (ft < f) {
        // expand while the descent keeps paying off
        for (int k = 0; k < 40; ++k) {
          const double f2 = scalar_at(x + 2 * t * dir);
          if (ft < target || !std::isfinite(f2) || !(f2 < ft)) break;
          t *= 2;
          ft = f2;
        }
      } else {
        while (!(ft < f) && t > 1e-12) {
          t *= 0.5;
          ft = scalar_at(x + t * dir);
        }
        if (!(ft < f)) break;
      }
      x += t * dir;
      f = ft;
    }
  }
  best.iterations = iterations;
  return best;
}

Su2Detection detect_su2(const LieAlgebra &alg, const SearchConfig &cfg, double found_tol) {
  const int n = alg.dim();
  Su2Detection best;
  best.residual = std::numeric_limits<double>::infinity();
  if (n < 3) {
    for (auto &v : best.triple) v = Vector::Zero(n);
    return best;
  }
  auto split = [n](const Vector &p) {
    return std::array<Vector, 3>{p.segment(0, n), p.segment(n, n), p.segment(2 * n, n)};
  };
  auto raw = [&](const std::array<Vector, 3> &t) -> Vector {
    Vector r(3 * n);
    r.segment(0, n) = alg.bracket(t[0], t[1]) - t[2];
    r.segment(n, n) = alg.bracket(t[1], t[2]) - t[0];
    r.segment(2 * n, n) = alg.bracket(t[2], t[0]) - t[1];
    return r;
  };
  auto weight = [](const std::array<Vector, 3> &t) {
    double w = 0.0;
    for (const auto &v : t) w += 1.0 / std::max(v.squaredNorm(), 1e-300);
    return w / 3.0;
  };
  auto residual = [&](const Vector &p) -> Vector {
    const auto t = split(p);
    return raw(t) * std::sqrt(weight(t));
  };

  for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
    Vector p(3 * n);
    if (r == 0) {
      p.setZero();
      for (int i = 0; i < 3; ++i) p(i * n + i) = 1.0;
    } else {
      auto rng = restart_rng(cfg.seed, r);
      p = random_params(rng, 3 * n, 1.0);
    }
    double cost = residual(p).squaredNorm();
    if (cost > found_tol) {
      const auto out = detail::levenberg_marquardt(residual, p, cfg.max_iter);
      if (out.cost < cost) {
        p = out.x;
        cost = out.cost;
      }
    }
    if (cost < best.residual) {
      best.triple = split(p);
      best.residual = cost;
    }
    if (best.residual <= found_tol) break;
  }

  // Re-check the winner from scratch and require a genuine basis.
  best.raw_residual = raw(best.triple).squaredNorm();
  best.residual = best.raw_residual * weight(best.triple);
  Matrix t(n, 3);
  for (int i = 0; i < 3; ++i) t.col(i) = best.triple[i].normalized();
  Eigen::JacobiSVD<Matrix> svd(t);
  const bool independent = svd.singularValues()(2) > 1e-6;
  best.found = independent && best.residual <= found_tol;
  return best;
}

} // namespace liegeom
