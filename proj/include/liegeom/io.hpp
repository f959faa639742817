#pragma once

#include <string>

#include "json.hpp"

#include "liegeom/algebra.hpp"
#include "liegeom/curvature.hpp"
#include "liegeom/extension.hpp"
#include "liegeom/hcgravity.hpp"
#include "liegeom/soliton.hpp"

namespace liegeom::io {

using Json = nlohmann::ordered_json;

/// Two-space indentation and a trailing newline.
std::string dump(const Json &j);
/// Throws Schema on malformed text.
Json parse(const std::string &text);

Json to_json(const LieAlgebra &alg);
LieAlgebra algebra_from_json(const Json &j);

/// {"dim": n, "g": [[row], ...]}
Json metric_to_json(const Matrix &g);
/// Requires a symmetric positive-definite matrix.
Matrix metric_from_json(const Json &j);

Json to_json(const CurvatureReport &r);
CurvatureReport curvature_from_json(const Json &j);

Json to_json(const SolitonCertificate &c);
SolitonCertificate certificate_from_json(const Json &j);

/// Algebra JSON of the total space plus x0_index (1-based), scale,
/// einstein_lambda and einstein_residual.
Json to_json(const EinsteinExtension &e);

struct ExtensionRecord {
  LieAlgebra total;
  int x0_index = 0;
  double scale = 0.0;
  double einstein_lambda = 0.0;
  double einstein_residual = 0.0;
};
ExtensionRecord extension_from_json(const Json &j);

Json to_json(const HCSolutionSet &s);
HCSolutionSet solution_set_from_json(const Json &j);

Json to_json(const HCParameters &p);
HCParameters parameters_from_json(const Json &j);

/// Row-major flat array.
Json flat(const Matrix &m);
Matrix matrix_from_flat(const Json &j, int rows, int cols, const std::string &field);

} // namespace liegeom::io
