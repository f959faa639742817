#include "liegeom/algebra.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include "liegeom/error.hpp"
#include "linalg.hpp"

namespace liegeom {

const char *to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidBasisChange: return "invalid-basis-change";
  case ErrorCode::UnknownName: return "unknown-name";
  case ErrorCode::InvalidArgument: return "invalid-argument";
  case ErrorCode::NotNilpotent: return "not-nilpotent";
  case ErrorCode::NotADerivation: return "not-a-derivation";
  case ErrorCode::NotSymmetric: return "not-symmetric";
  case ErrorCode::SearchFailed: return "search-failed";
  case ErrorCode::SpdLoss: return "spd-loss";
  case ErrorCode::StepUnderflow: return "step-underflow";
  case ErrorCode::Schema: return "schema";
  case ErrorCode::Io: return "io";
  }
  return "unknown";
}

LieAlgebra::LieAlgebra(int dim) : n_(dim) {
  if (dim <= 0)
    throw Error(ErrorCode::InvalidArgument, "algebra dimension must be positive");
  c_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
}

void LieAlgebra::set(int k, int i, int j, double value) {
  c_[static_cast<std::size_t>((k * n_ + i) * n_ + j)] = value;
  c_[static_cast<std::size_t>((k * n_ + j) * n_ + i)] = -value;
}

LieAlgebra LieAlgebra::from_brackets(int dim, const std::vector<Bracket> &brackets) {
  LieAlgebra alg(dim);
  std::set<std::tuple<int, int, int>> seen;
  for (const auto &b : brackets) {
    auto where = [&] {
      std::ostringstream os;
      os << "bracket entry (i=" << b.i + 1 << ", j=" << b.j + 1 << ", k=" << b.k + 1
         << ")";
      return os.str();
    };
    if (b.i < 0 || b.j < 0 || b.k < 0 || b.i >= dim || b.j >= dim || b.k >= dim)
      throw Error(ErrorCode::Schema, where() + ": index out of range");
    if (b.i >= b.j) throw Error(ErrorCode::Schema, where() + ": requires i < j");
    if (!seen.insert({b.i, b.j, b.k}).second)
      throw Error(ErrorCode::Schema, where() + ": duplicate entry");
    if (!std::isfinite(b.c)) throw Error(ErrorCode::Schema, where() + ": non-finite value");
    alg.set(b.k, b.i, b.j, b.c);
  }
  return alg;
}

LieAlgebra LieAlgebra::from_dense(int dim, const std::vector<double> &c, double tol) {
  LieAlgebra alg(dim);
  if (c.size() != alg.c_.size())
    throw Error(ErrorCode::InvalidArgument, "dense structure constants have wrong size");
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        const double up = c[static_cast<std::size_t>((k * dim + i) * dim + j)];
        const double lo = c[static_cast<std::size_t>((k * dim + j) * dim + i)];
        if (std::abs(up + lo) > tol * std::max(1.0, std::abs(up)))
          throw Error(ErrorCode::InvalidArgument,
                      "structure constants are not antisymmetric");
        if (i < j) alg.set(k, i, j, up);
      }
  return alg;
}

std::vector<Bracket> LieAlgebra::brackets() const {
  std::vector<Bracket> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        if ((*this)(k, i, j) != 0.0) out.push_back({i, j, k, (*this)(k, i, j)});
  return out;
}

Vector LieAlgebra::bracket(const Vector &x, const Vector &y) const {
  Vector z = Vector::Zero(n_);
  for (int k = 0; k < n_; ++k) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) s += x(i) * y(j) * (*this)(k, i, j);
    z(k) = s;
  }
  return z;
}

double LieAlgebra::norm() const {
  double s = 0.0;
  for (double v : c_) s += v * v;
  return std::sqrt(s);
}

LieAlgebra LieAlgebra::scaled(double s) const {
  LieAlgebra out = *this;
  for (double &v : out.c_) v *= s;
  return out;
}

bool LieAlgebra::is_abelian() const {
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

BasisChange::BasisChange(Matrix m, double singular_tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw Error(ErrorCode::InvalidBasisChange, "basis change must be a square matrix");
  det_ = m_.determinant();
  if (!std::isfinite(det_) || std::abs(det_) <= singular_tol)
    throw Error(ErrorCode::InvalidBasisChange, "basis change matrix is singular");
  Eigen::JacobiSVD<Matrix> svd(m_);
  const auto &sv = svd.singularValues();
  cond_ = sv(0) / sv(sv.size() - 1);
}

JacobiReport validate(const LieAlgebra &alg, const Tolerances &tol) {
  const int n = alg.dim();
  JacobiReport rep;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j], component l
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += alg(m, i, j) * alg(l, m, k) + alg(m, j, k) * alg(l, m, i) +
                 alg(m, k, i) * alg(l, m, j);
          if (std::abs(s) > rep.max_residual) {
            rep.max_residual = std::abs(s);
            rep.worst = {i, j, k, l};
          }
        }
  rep.ok = rep.max_residual <= tol.identity;
  return rep;
}

LieAlgebra change_basis(const LieAlgebra &alg, const BasisChange &b) {
  const int n = alg.dim();
  const Matrix &m = b.matrix();
  if (m.rows() != n)
    throw Error(ErrorCode::InvalidBasisChange, "basis change dimension mismatch");
  const Matrix minv = m.inverse();
  auto idx = [n](int a, int c, int d) {
    return static_cast<std::size_t>((a * n + c) * n + d);
  };
  std::vector<double> t(alg.dense().size(), 0.0), u(alg.dense().size(), 0.0);
  // t^l_{i q} = C^l_{p q} M^p_i
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int q = 0; q < n; ++q) {
        double s = 0.0;
        for (int p = 0; p < n; ++p) s += alg(l, p, q) * m(p, i);
        t[idx(l, i, q)] = s;
      }
  // u^l_{ij} = t^l_{iq} M^q_j
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int q = 0; q < n; ++q) s += t[idx(l, i, q)] * m(q, j);
        u[idx(l, i, j)] = s;
      }
  std::vector<double> out(alg.dense().size(), 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += minv(k, l) * u[idx(l, i, j)];
        out[idx(k, i, j)] = s;
        out[idx(k, j, i)] = -s;
      }
  return LieAlgebra::from_dense(n, out, 0.0);
}

Matrix adjoint(const LieAlgebra &alg, const Vector &x) {
  const int n = alg.dim();
  Matrix ad = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += x(i) * alg(k, i, j);
      ad(k, j) = s;
    }
  return ad;
}

Matrix killing_form(const LieAlgebra &alg) {
  const int n = alg.dim();
  Matrix k = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += alg(a, i, b) * alg(b, j, a);
      k(i, j) = k(j, i) = s;
    }
  return k;
}

Vector trace_vector(const LieAlgebra &alg) {
  const int n = alg.dim();
  Vector a = Vector::Zero(n);
  for (int b = 0; b < n; ++b)
    for (int k = 0; k < n; ++k) a(b) += alg(k, k, b);
  return a;
}

bool is_unimodular(const LieAlgebra &alg, const Tolerances &tol) {
  return trace_vector(alg).lpNorm<Eigen::Infinity>() <= tol.identity;
}

namespace {

// Orthonormal basis of span{[x, y] : x in cols(a), y in cols(b)}.
Matrix bracket_span(const LieAlgebra &alg, const Matrix &a, const Matrix &b,
                    double rel_tol) {
  const int n = alg.dim();
  Matrix images(n, a.cols() * b.cols());
  Eigen::Index c = 0;
  for (Eigen::Index p = 0; p < a.cols(); ++p)
    for (Eigen::Index q = 0; q < b.cols(); ++q)
      images.col(c++) = alg.bracket(a.col(p), b.col(q));
  // Absolute scale: compare against the largest structure constant so that a
  // tiny bracket image is not promoted to rank one.
  double scale = 0.0;
  for (double v : alg.dense()) scale = std::max(scale, std::abs(v));
  if (images.cols() == 0 || images.norm() <= rel_tol * std::max(scale, 1e-300))
    return Matrix(n, 0);
  return detail::column_space(images, rel_tol);
}

template <typename Next>
std::vector<int> run_series(const LieAlgebra &alg, Next next) {
  const int n = alg.dim();
  Matrix current = Matrix::Identity(n, n);
  std::vector<int> dims{n};
  while (current.cols() > 0) {
    Matrix following = next(current);
    dims.push_back(static_cast<int>(following.cols()));
    if (following.cols() == current.cols()) break;
    current = std::move(following);
  }
  return dims;
}

} // namespace

std::vector<int> lower_central_series(const LieAlgebra &alg, const Tolerances &tol) {
  const Matrix full = Matrix::Identity(alg.dim(), alg.dim());
  return run_series(alg, [&](const Matrix &cur) {
    return bracket_span(alg, full, cur, tol.rank);
  });
}

std::vector<int> derived_series(const LieAlgebra &alg, const Tolerances &tol) {
  return run_series(alg, [&](const Matrix &cur) {
    return bracket_span(alg, cur, cur, tol.rank);
  });
}

bool is_nilpotent(const LieAlgebra &alg, const Tolerances &tol) {
  return lower_central_series(alg, tol).back() == 0;
}

bool is_solvable(const LieAlgebra &alg, const Tolerances &tol) {
  return derived_series(alg, tol).back() == 0;
}

bool is_semisimple(const LieAlgebra &alg, const Tolerances &tol) {
  const Matrix k = killing_form(alg);
  const double kmax = k.lpNorm<Eigen::Infinity>();
  if (kmax == 0.0) return false;
  return std::abs(k.determinant()) > tol.semisimple * std::pow(kmax, alg.dim());
}

AlgebraProfile classify(const LieAlgebra &alg, const Tolerances &tol) {
  AlgebraProfile p;
  p.trace_vector = trace_vector(alg);
  p.killing = killing_form(alg);
  p.unimodular = p.trace_vector.lpNorm<Eigen::Infinity>() <= tol.identity;
  p.lower_central = lower_central_series(alg, tol);
  p.derived = derived_series(alg, tol);
  if (p.lower_central.back() == 0)
    p.nilpotency_class = static_cast<int>(p.lower_central.size()) - 1;
  if (p.derived.back() == 0) p.derived_length = static_cast<int>(p.derived.size()) - 1;
  p.semisimple = is_semisimple(alg, tol);
  return p;
}

namespace {

// Row (k, i, j) with i < j, column D(p, q) at p * n + q... stored column-major
// as vec(D)[q * n + p] to match Eigen's layout.
Matrix leibniz_operator(const LieAlgebra &alg) {
  const int n = alg.dim();
  const int pairs = n * (n - 1) / 2;
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(pairs) * n, n * n);
  auto col = [n](int p, int q) { return q * n + p; }; // D(p, q)
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k, ++row) {
        // (D[e_i,e_j])^k = sum_m D(k, m) C^m_{ij}
        for (int m = 0; m < n; ++m) a(row, col(k, m)) += alg(m, i, j);
        // -([D e_i, e_j])^k = -sum_m D(m, i) C^k_{mj}
        for (int m = 0; m < n; ++m) a(row, col(m, i)) -= alg(k, m, j);
        // -([e_i, D e_j])^k = -sum_m D(m, j) C^k_{im}
        for (int m = 0; m < n; ++m) a(row, col(m, j)) -= alg(k, i, m);
      }
  return a;
}

} // namespace

DerivationSpace derivation_space(const LieAlgebra &alg, const Tolerances &tol) {
  const int n = alg.dim();
  DerivationSpace out;
  if (n == 1) {
    out.basis.push_back(Matrix::Identity(1, 1));
    return out;
  }
  const Matrix a = leibniz_operator(alg);
  const Matrix kernel = detail::null_space(a, tol.rank);
  for (Eigen::Index c = 0; c < kernel.cols(); ++c)
    out.basis.push_back(Eigen::Map<const Matrix>(kernel.col(c).data(), n, n));
  return out;
}

double derivation_residual(const LieAlgebra &alg, const Matrix &d) {
  const int n = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vector ei = Vector::Unit(n, i), ej = Vector::Unit(n, j);
      const Vector r = d * alg.bracket(ei, ej) - alg.bracket(d * ei, ej) -
                       alg.bracket(ei, d * ej);
      worst = std::max(worst, r.lpNorm<Eigen::Infinity>());
    }
  return worst;
}

} // namespace liegeom
