#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "liegeom/tolerances.hpp"

namespace liegeom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// One nonzero bracket entry [e_i, e_j] += c * e_k, zero-based, i < j.
struct Bracket {
  int i;
  int j;
  int k;
  double c;
};

/// Real Lie algebra given by structure constants in a fixed frame:
/// [e_i, e_j] = C^k_{ij} e_k. Stored densely (n^3); antisymmetry in (i, j)
/// holds exactly because only i < j is ever written and then mirrored.
class LieAlgebra {
public:
  LieAlgebra() = default;
  explicit LieAlgebra(int dim);

  /// Builds from a bracket list. Throws on out-of-range or i >= j entries
  /// and on duplicate (i, j, k).
  static LieAlgebra from_brackets(int dim, const std::vector<Bracket> &brackets);

  /// Builds from a dense array indexed [(k * n + i) * n + j]. The upper
  /// triangle i < j is kept and mirrored; an asymmetric input throws.
  static LieAlgebra from_dense(int dim, const std::vector<double> &c,
                               double tol = 1e-12);

  int dim() const noexcept { return n_; }

  double operator()(int k, int i, int j) const noexcept {
    return c_[static_cast<std::size_t>((k * n_ + i) * n_ + j)];
  }

  const std::vector<double> &dense() const noexcept { return c_; }

  /// Nonzero entries with i < j (zero-based).
  std::vector<Bracket> brackets() const;

  /// [x, y] for coordinate vectors x, y.
  Vector bracket(const Vector &x, const Vector &y) const;

  /// Frobenius norm over all (k, i, j), both orderings of (i, j) included.
  double norm() const;

  /// Algebra with every structure constant multiplied by s.
  LieAlgebra scaled(double s) const;

  bool is_abelian() const;

  friend bool operator==(const LieAlgebra &a, const LieAlgebra &b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
  }

private:
  void set(int k, int i, int j, double value);

  int n_ = 0;
  std::vector<double> c_;
};

/// Invertible frame change; the new basis is e'_i = sum_m M^m_i e_m.
class BasisChange {
public:
  explicit BasisChange(Matrix m, double singular_tol = 1e-12);

  const Matrix &matrix() const noexcept { return m_; }
  double determinant() const noexcept { return det_; }
  double condition_number() const noexcept { return cond_; }

private:
  Matrix m_;
  double det_;
  double cond_;
};

struct JacobiReport {
  double max_residual = 0.0;
  bool ok = true;
  /// Worst (i, j, k, l), zero-based.
  std::array<int, 4> worst{0, 0, 0, 0};
};

JacobiReport validate(const LieAlgebra &alg,
                      const Tolerances &tol = default_tolerances());

/// C'^k_{ij} = (M^-1)^k_l C^l_{mn} M^m_i M^n_j.
LieAlgebra change_basis(const LieAlgebra &alg, const BasisChange &b);

/// (ad_x)^k_j = x^i C^k_{ij}.
Matrix adjoint(const LieAlgebra &alg, const Vector &x);

/// K_{ij} = tr(ad_{e_i} ad_{e_j}).
Matrix killing_form(const LieAlgebra &alg);

/// a_b = C^a_{ab}.
Vector trace_vector(const LieAlgebra &alg);
bool is_unimodular(const LieAlgebra &alg,
                   const Tolerances &tol = default_tolerances());

/// Dimensions g_0 = n, g_1, ... of the lower central series
/// g_i = [g, g_{i-1}]. Stops at 0 or at the first repeated dimension, which is
/// kept so that a stall is visible (e.g. su2 gives {3, 3}).
std::vector<int> lower_central_series(const LieAlgebra &alg,
                                      const Tolerances &tol = default_tolerances());
/// Derived series g_{i+1} = [g_i, g_i], same stopping rule.
std::vector<int> derived_series(const LieAlgebra &alg,
                                const Tolerances &tol = default_tolerances());

bool is_nilpotent(const LieAlgebra &alg, const Tolerances &tol = default_tolerances());
bool is_solvable(const LieAlgebra &alg, const Tolerances &tol = default_tolerances());
bool is_semisimple(const LieAlgebra &alg, const Tolerances &tol = default_tolerances());

struct AlgebraProfile {
  Vector trace_vector;
  Matrix killing;
  bool unimodular = false;
  std::optional<int> nilpotency_class;
  std::optional<int> derived_length;
  bool semisimple = false;
  std::vector<int> lower_central;
  std::vector<int> derived;
};

AlgebraProfile classify(const LieAlgebra &alg,
                        const Tolerances &tol = default_tolerances());

/// Der(g) as a Frobenius-orthonormal basis of n x n matrices (D e_j = D(:, j)).
struct DerivationSpace {
  std::vector<Matrix> basis;
  int dim() const noexcept { return static_cast<int>(basis.size()); }
};

DerivationSpace derivation_space(const LieAlgebra &alg,
                                 const Tolerances &tol = default_tolerances());

/// max over i, j of |D[e_i,e_j] - [De_i,e_j] - [e_i,De_j]|.
double derivation_residual(const LieAlgebra &alg, const Matrix &d);

} // namespace liegeom
