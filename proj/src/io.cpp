#include "liegeom/io.hpp"

#include <cmath>

#include "liegeom/error.hpp"

namespace liegeom::io {

namespace {

[[noreturn]] void schema(const std::string &what) { throw Error(ErrorCode::Schema, what); }

const Json &field(const Json &j, const std::string &name) {
  if (!j.is_object()) schema("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) schema("missing field '" + name + "'");
  return *it;
}

double number(const Json &j, const std::string &name) {
  if (!j.is_number()) schema("field '" + name + "' must be a number");
  return j.get<double>();
}

int integer(const Json &j, const std::string &name) {
  if (!j.is_number_integer()) schema("field '" + name + "' must be an integer");
  return j.get<int>();
}

double number_field(const Json &j, const std::string &name) { return number(field(j, name), name); }

int dimension(const Json &j) {
  const int n = integer(field(j, "dim"), "dim");
  if (n < 1) schema("field 'dim' must be positive");
  return n;
}

Json vector_json(const Vector &v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vector vector_from(const Json &j, const std::string &name) {
  if (!j.is_array()) schema("field '" + name + "' must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = number(j[i], name + "[" + std::to_string(i) + "]");
  return v;
}

} // namespace

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

Json parse(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
}

Json flat(const Matrix &m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back(m(i, j));
  return a;
}

Matrix matrix_from_flat(const Json &j, int rows, int cols, const std::string &name) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows * cols))
    schema("field '" + name + "' must be an array of " + std::to_string(rows * cols) + " numbers");
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = number(j[static_cast<std::size_t>(r * cols + c)], name);
  return m;
}

Json to_json(const LieAlgebra &alg) {
  Json out;
  out["dim"] = alg.dim();
  Json list = Json::array();
  for (const auto &b : alg.brackets())
    list.push_back(Json{{"i", b.i + 1}, {"j", b.j + 1}, {"k", b.k + 1}, {"c", b.c}});
  out["brackets"] = list;
  return out;
}

LieAlgebra algebra_from_json(const Json &j) {
  const int n = dimension(j);
  const Json &list = field(j, "brackets");
  if (!list.is_array()) schema("field 'brackets' must be an array");
  std::vector<Bracket> brackets;
  for (std::size_t e = 0; e < list.size(); ++e) {
    const std::string at = "brackets[" + std::to_string(e) + "]";
    const Json &b = list[e];
    if (!b.is_object()) schema(at + " must be an object");
    auto idx = [&](const char *key) {
      if (!b.contains(key)) schema(at + " is missing '" + key + "'");
      return integer(b[key], at + "." + key) - 1;
    };
    const int i = idx("i"), jj = idx("j"), k = idx("k");
    if (!b.contains("c")) schema(at + " is missing 'c'");
    brackets.push_back({i, jj, k, number(b["c"], at + ".c")});
  }
  return LieAlgebra::from_brackets(n, brackets);
}

Json metric_to_json(const Matrix &g) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    Json r = Json::array();
    for (Eigen::Index k = 0; k < g.cols(); ++k) r.push_back(g(i, k));
    rows.push_back(r);
  }
  return Json{{"dim", g.rows()}, {"g", rows}};
}

Matrix metric_from_json(const Json &j) {
  const int n = dimension(j);
  const Json &rows = field(j, "g");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
    schema("field 'g' must have " + std::to_string(n) + " rows");
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    const Vector r = vector_from(rows[static_cast<std::size_t>(i)], "g[" + std::to_string(i) + "]");
    if (r.size() != n) schema("row g[" + std::to_string(i) + "] must have " + std::to_string(n) + " entries");
    g.row(i) = r.transpose();
  }
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    schema("field 'g' must be symmetric");
  MetricFrame::from_metric(g);
  return g;
}

Json to_json(const CurvatureReport &r) {
  Json out;
  out["dim"] = r.dim;
  out["ricci"] = flat(r.ricci);
  out["scalar"] = r.scalar;
  out["killing"] = flat(r.killing_part);
  Json gamma = Json::array();
  for (double x : r.gamma.data) gamma.push_back(x);
  out["gamma"] = gamma;
  out["convention"] = r.convention;
  return out;
}

CurvatureReport curvature_from_json(const Json &j) {
  CurvatureReport r;
  r.dim = dimension(j);
  const int n = r.dim;
  r.ricci = matrix_from_flat(field(j, "ricci"), n, n, "ricci");
  r.scalar = number_field(j, "scalar");
  r.killing_part = matrix_from_flat(field(j, "killing"), n, n, "killing");
  const Vector g = vector_from(field(j, "gamma"), "gamma");
  if (g.size() != n * n * n) schema("field 'gamma' must have n^3 entries");
  r.gamma = Tensor3(n);
  for (Eigen::Index i = 0; i < g.size(); ++i) r.gamma.data[static_cast<std::size_t>(i)] = g(i);
  const Json &c = field(j, "convention");
  if (!c.is_string()) schema("field 'convention' must be a string");
  r.convention = c.get<std::string>();
  return r;
}

Json to_json(const SolitonCertificate &c) {
  Json out;
  out["dim"] = c.d.rows();
  out["lambda"] = c.lambda;
  out["d"] = flat(c.d);
  out["residual"] = c.residual;
  out["derivation_residual"] = c.derivation_residual;
  out["verified"] = c.verified();
  out["bracket_norm"] = c.bracket_norm;
  out["scale_invariant"] = Json{{"lambda_hat", c.lambda_hat()}, {"d_hat", flat(c.d_hat())}};
  return out;
}

SolitonCertificate certificate_from_json(const Json &j) {
  SolitonCertificate c;
  const int n = dimension(j);
  c.lambda = number_field(j, "lambda");
  c.d = matrix_from_flat(field(j, "d"), n, n, "d");
  c.residual = number_field(j, "residual");
  c.derivation_residual = number_field(j, "derivation_residual");
  c.bracket_norm = number_field(j, "bracket_norm");
  if (!field(j, "verified").is_boolean()) schema("field 'verified' must be a boolean");
  if (field(j, "verified").get<bool>() != c.verified())
    schema("field 'verified' disagrees with the residuals");
  return c;
}

Json to_json(const EinsteinExtension &e) {
  Json out = to_json(e.extension.total);
  out["x0_index"] = e.extension.x0_index() + 1;
  out["scale"] = e.extension.scale;
  out["einstein_lambda"] = e.lambda;
  out["einstein_residual"] = e.residual;
  return out;
}

ExtensionRecord extension_from_json(const Json &j) {
  ExtensionRecord r;
  r.total = algebra_from_json(j);
  r.x0_index = integer(field(j, "x0_index"), "x0_index");
  if (r.x0_index < 1 || r.x0_index > r.total.dim()) schema("field 'x0_index' out of range");
  r.scale = number_field(j, "scale");
  r.einstein_lambda = number_field(j, "einstein_lambda");
  r.einstein_residual = number_field(j, "einstein_residual");
  return r;
}

Json to_json(const HCSolutionSet &s) {
  Json out;
  out["empty"] = s.empty;
  out["offset"] = vector_json(s.offset);
  Json basis = Json::array();
  for (const auto &v : s.basis) basis.push_back(vector_json(v));
  out["basis"] = basis;
  out["residual"] = s.residual;
  out["invariant_products"] = s.invariant_products;
  out["product_labels"] = s.product_labels;
  Json forms = Json::array();
  for (const auto &[a, b] : s.product_forms) forms.push_back(Json::array({a, b}));
  out["product_forms"] = forms;
  return out;
}

HCSolutionSet solution_set_from_json(const Json &j) {
  HCSolutionSet s;
  const Json &e = field(j, "empty");
  if (!e.is_boolean()) schema("field 'empty' must be a boolean");
  s.empty = e.get<bool>();
  s.offset = vector_from(field(j, "offset"), "offset");
  if (s.offset.size() != 3) schema("field 'offset' must have 3 entries");
  const Json &basis = field(j, "basis");
  if (!basis.is_array()) schema("field 'basis' must be an array");
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Vector v = vector_from(basis[k], "basis[" + std::to_string(k) + "]");
    if (v.size() != 3) schema("basis vectors must have 3 entries");
    s.basis.push_back(std::move(v));
  }
  s.residual = number_field(j, "residual");
  const Vector p = vector_from(field(j, "invariant_products"), "invariant_products");
  s.invariant_products.assign(p.data(), p.data() + p.size());
  const Json &labels = field(j, "product_labels");
  if (!labels.is_array()) schema("field 'product_labels' must be an array");
  for (const auto &l : labels) {
    if (!l.is_string()) schema("product labels must be strings");
    s.product_labels.push_back(l.get<std::string>());
  }
  const Json &forms = field(j, "product_forms");
  if (!forms.is_array()) schema("field 'product_forms' must be an array");
  for (const auto &f : forms) {
    const Vector v = vector_from(f, "product_forms");
    if (v.size() != 2) schema("product forms must have 2 entries");
    s.product_forms.emplace_back(v(0), v(1));
  }
  if (s.product_labels.size() != s.invariant_products.size() ||
      s.product_forms.size() != s.invariant_products.size())
    schema("invariant_products, product_labels and product_forms must have equal length");
  return s;
}

Json to_json(const HCParameters &p) {
  return Json{{"alpha", p.alpha}, {"beta", p.beta}, {"lambda", p.lambda_cc}};
}

HCParameters parameters_from_json(const Json &j) {
  return {number_field(j, "alpha"), number_field(j, "beta"), number_field(j, "lambda")};
}

} // namespace liegeom::io
