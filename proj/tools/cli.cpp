#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "liegeom/catalog.hpp"
#include "liegeom/error.hpp"
#include "liegeom/extension.hpp"
#include "liegeom/flow.hpp"
#include "liegeom/hcgravity.hpp"
#include "liegeom/io.hpp"
#include "liegeom/soliton.hpp"
#include "liegeom/version.hpp"

namespace liegeom::cli {

namespace {

using io::Json;

struct Options {
  std::string input = "-";
  std::string output;
  std::string metric;
  std::uint64_t seed = 0;
  Tolerances tol;
  int restarts = 4;
  int max_iter = 1000;
  double t_max = 1.0;
  double dt = 0.01;
  std::string normalize = "none";
  std::string csv;
  std::string name;
  std::vector<double> params;
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
  double target = -1.0;
};

// A finished command: the report and the exit code it implies.
struct Outcome {
  Json payload;
  int code = kOk;
};

int exit_code(ErrorCode c) {
  switch (c) {
  case ErrorCode::NotNilpotent:
  case ErrorCode::NotADerivation:
  case ErrorCode::NotSymmetric:
  case ErrorCode::InvalidBasisChange:
    return kValidation;
  case ErrorCode::SearchFailed:
  case ErrorCode::SpdLoss:
  case ErrorCode::StepUnderflow:
    return kSolverFailure;
  default:
    return kIoOrSchema;
  }
}

std::string read_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  f << text;
  if (!f) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

LieAlgebra load_algebra(const Options &o, std::istream &in) {
  if (o.input == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return io::algebra_from_json(io::parse(ss.str()));
  }
  if (std::filesystem::is_regular_file(o.input))
    return io::algebra_from_json(io::parse(read_file(o.input)));
  const auto &names = catalog::names();
  if (std::find(names.begin(), names.end(), o.input) != names.end())
    return catalog::lookup(o.input, o.params);
  throw Error(ErrorCode::Io, "input '" + o.input + "' is neither a file nor a catalog name");
}

Matrix load_metric(const Options &o, int n) {
  if (o.metric.empty()) return Matrix::Identity(n, n);
  Matrix g;
  try {
    g = io::metric_from_json(io::parse(read_file(o.metric)));
  } catch (const Error &e) {
    // an input metric that is not positive definite is a bad file, not a solver failure
    if (e.code() != ErrorCode::SpdLoss && e.code() != ErrorCode::InvalidBasisChange) throw;
    throw Error(ErrorCode::Schema, "metric '" + o.metric + "': " + e.what());
  }
  if (g.rows() != n)
    throw Error(ErrorCode::Schema, "metric dimension " + std::to_string(g.rows()) +
                                       " does not match algebra dimension " + std::to_string(n));
  return g;
}

SearchConfig search_config(const Options &o) {
  SearchConfig c;
  c.seed = o.seed;
  c.restarts = o.restarts;
  c.max_iter = o.max_iter;
  return c;
}

Json vector_json(const Vector &v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json validation_json(const JacobiReport &r) {
  Json worst = Json::array();
  for (int x : r.worst) worst.push_back(x + 1);
  return Json{{"ok", r.ok}, {"max_residual", r.max_residual}, {"worst", worst}};
}

// Loads the algebra and rejects Jacobi violations before any command runs.
std::optional<Outcome> checked(const Options &o, std::istream &in, LieAlgebra &alg,
                               std::ostream &err) {
  alg = load_algebra(o, in);
  const JacobiReport r = validate(alg, o.tol);
  if (r.ok) return std::nullopt;
  err << "error: Jacobi identity fails at (" << r.worst[0] + 1 << "," << r.worst[1] + 1 << ","
      << r.worst[2] + 1 << "," << r.worst[3] + 1 << "), residual " << r.max_residual << "\n";
  return Outcome{validation_json(r), kValidation};
}

Outcome cmd_validate(const Options &o, std::istream &in, std::ostream &err) {
  LieAlgebra alg;
  if (auto bad = checked(o, in, alg, err)) return *bad;
  return {validation_json(validate(alg, o.tol)), kOk};
}

Outcome cmd_classify(const Options &o, std::istream &in, std::ostream &err) {
  LieAlgebra alg;
  if (auto bad = checked(o, in, alg, err)) return *bad;
  const AlgebraProfile p = classify(alg, o.tol);
  Json j;
  j["dim"] = alg.dim();
  j["unimodular"] = p.unimodular;
  j["trace_vector"] = vector_json(p.trace_vector);
  j["killing"] = io::flat(p.killing);
  j["nilpotent"] = p.nilpotency_class.has_value();
  j["nilpotency_class"] = p.nilpotency_class ? Json(*p.nilpotency_class) : Json();
  j["solvable"] = p.derived_length.has_value();
  j["derived_length"] = p.derived_length ? Json(*p.derived_length) : Json();
  j["semisimple"] = p.semisimple;
  j["lower_central_series"] = p.lower_central;
  j["derived_series"] = p.derived;
  j["derivation_dim"] = derivation_space(alg, o.tol).dim();
  return {j, kOk};
}

Outcome cmd_curvature(const Options &o, std::istream &in, std::ostream &err) {
  LieAlgebra alg;
  if (auto bad = checked(o, in, alg, err)) return *bad;
  const LieAlgebra ortho = orthonormalize(alg, MetricFrame::from_metric(load_metric(o, alg.dim())));
  Json j = io::to_json(curvature_report(ortho));
  const EinsteinCheck e = einstein_check(ortho);
  j["einstein"] = Json{{"lambda", e.lambda}, {"residual", e.residual}};
  return {j, kOk};
}

Outcome cmd_soliton(const Options &o, std::istream &in, std::ostream &err) {
  LieAlgebra alg;
  if (auto bad = checked(o, in, alg, err)) return *bad;
  const Matrix g = load_metric(o, alg.dim());
  const MetricFrame start = MetricFrame::from_metric(g);
  SolitonCertificate cert = soliton_project(orthonormalize(alg, start), o.tol);
  Json search{{"used", false}};
  MetricFrame metric = start;
  if (!cert.verified() && is_nilpotent(alg, o.tol)) {
    const auto r = solve_nilsoliton(alg, search_config(o), start, o.tol);
    cert = r.certificate;
    metric = r.metric;
    search = Json{{"used", true},
                  {"converged", r.converged},
                  {"restart", r.restart},
                  {"iterations", r.iterations},
                  {"residual_hat", r.certificate.residual_hat()}};
  }
  Json j = io::to_json(cert);
  j["metric"] = io::metric_to_json(metric.metric());
  j["search"] = search;
  if (!cert.verified()) err << "error: no soliton certificate (residual " << cert.residual << ")\n";
  return {j, cert.verified() ? kOk : kSolverFailure};
}

Outcome cmd_extend(const Options &o, std::istream &in, std::ostream &err) {
  LieAlgebra alg;
  if (auto bad = checked(o, in, alg, err)) return *bad;
  const auto e = solve_einstein_extension(alg, search_config(o), o.tol);
  Json j = io::to_json(e);
  j["positive"] = e.extension.positive();
  j["derivation"] = io::flat(e.extension.d);
  j["base_metric"] = io::metric_to_json(e.base_metric.metric());
  if (!e.success())
    err << "error: extension is not Einstein with negative constant (residual " << e.residual
        << ", lambda " << e.lambda << ")\n";
  return {j, e.success() ? kOk : kSolverFailure};
}

Outcome cmd_flow(const Options &o, std::istream &in, std::ostream &err) {
  LieAlgebra alg;
  if (auto bad = checked(o, in, alg, err)) return *bad;
  const Normalization norm = parse_normalization(o.normalize);
  const auto traj = integrate(alg, load_metric(o, alg.dim()), o.t_max, o.dt, norm);
  if (!o.csv.empty()) {
    std::ostringstream ss;
    write_csv(ss, traj);
    write_file(o.csv, ss.str());
  }
  const FlowSample &last = traj.samples.back();
  Json j;
  j["normalization"] = to_string(norm);
  j["t_max"] = o.t_max;
  j["dt"] = o.dt;
  j["final_dt"] = traj.final_dt;
  j["rejected_steps"] = traj.rejected_steps;
  j["sample_count"] = traj.samples.size();
  j["quotient_drift"] = quotient_drift(alg, traj);
  j["final"] = Json{{"t", last.t},
                    {"scalar", last.scalar},
                    {"soliton_residual", last.soliton_residual},
                    {"scale_estimate", last.scale_estimate},
                    {"metric", io::metric_to_json(last.g)}};
  return {j, kOk};
}

Outcome cmd_hc_solve(const Options &o, std::istream &in, std::ostream &err) {
  LieAlgebra alg;
  if (auto bad = checked(o, in, alg, err)) return *bad;
  const LieAlgebra ortho = orthonormalize(alg, MetricFrame::from_metric(load_metric(o, alg.dim())));
  return {io::to_json(solve_parameters(ortho, o.tol.rank)), kOk};
}

Outcome cmd_hc_check(const Options &o, std::istream &in, std::ostream &err) {
  LieAlgebra alg;
  if (auto bad = checked(o, in, alg, err)) return *bad;
  const LieAlgebra ortho = orthonormalize(alg, MetricFrame::from_metric(load_metric(o, alg.dim())));
  const HCParameters p{o.alpha, o.beta, o.lambda};
  const FieldEquationReport r = check_solution(ortho, p);
  Json j;
  j["parameters"] = io::to_json(p);
  j["dim"] = alg.dim();
  j["phi"] = io::flat(r.phi);
  j["residual"] = r.residual;
  j["lagrangian_density"] = r.lagrangian_density;
  j["solution"] = r.residual <= 1e-9;
  return {j, kOk};
}

Outcome cmd_search_neg(const Options &o, std::istream &in, std::ostream &err) {
  LieAlgebra alg;
  if (auto bad = checked(o, in, alg, err)) return *bad;
  const auto r = find_negative_scalar_metric(alg, search_config(o), o.target);
  Json j;
  j["target"] = o.target;
  j["found"] = r.found;
  j["scalar"] = r.scalar;
  j["iterations"] = r.iterations;
  j["restart"] = r.restart;
  j["metric"] = io::metric_to_json(r.metric.metric());
  if (!r.found) err << "error: no metric with scalar curvature below " << o.target << "\n";
  return {j, r.found ? kOk : kSolverFailure};
}

Outcome cmd_detect_su2(const Options &o, std::istream &in, std::ostream &err) {
  LieAlgebra alg;
  if (auto bad = checked(o, in, alg, err)) return *bad;
  const auto r = detect_su2(alg, search_config(o));
  Json triple = Json::array();
  for (const auto &v : r.triple) triple.push_back(vector_json(v));
  Json j;
  j["found"] = r.found;
  j["heuristic"] = Su2Detection::heuristic;
  j["residual"] = r.residual;
  j["raw_residual"] = r.raw_residual;
  j["triple"] = triple;
  return {j, kOk};
}

Outcome cmd_catalog(const Options &o) {
  if (o.name.empty()) return {Json{{"names", catalog::names()}}, kOk};
  Json j = io::to_json(catalog::lookup(o.name, o.params));
  j["name"] = o.name;
  j["params"] = o.params;
  return {j, kOk};
}

Json report(const std::string &command, const Options &o, const Json &payload) {
  Json j;
  j["tool"] = "liegeom";
  j["tool_version"] = kVersion;
  j["command"] = command;
  j["seed"] = o.seed;
  j["convention"] = kConventionNote;
  for (const auto &[k, v] : payload.items()) j[k] = v;
  return j;
}

} // namespace

int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Geometry of left-invariant metrics on Lie groups from structure constants",
               "liegeom"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App *c, bool reads_algebra) {
    if (reads_algebra)
      c->add_option("-i,--input", o.input, "algebra JSON file, '-' for stdin, or a catalog name")
          ->capture_default_str();
    c->add_option("-o,--output", o.output, "write the JSON report here instead of stdout");
    c->add_option("--seed", o.seed, "seed for randomized restarts")->capture_default_str();
    c->add_option("--param", o.params, "catalog parameters when the input is a catalog name");
    c->add_option("--tol-identity", o.tol.identity)->capture_default_str();
    c->add_option("--tol-rank", o.tol.rank)->capture_default_str();
    c->add_option("--tol-derivation", o.tol.derivation)->capture_default_str();
    c->add_option("--tol-semisimple", o.tol.semisimple)->capture_default_str();
    c->add_option("--tol-singular", o.tol.singular)->capture_default_str();
  };
  auto metric = [&](CLI::App *c) {
    c->add_option("--metric", o.metric, "metric JSON {dim, g}; identity when omitted");
  };
  auto search = [&](CLI::App *c) {
    c->add_option("--restarts", o.restarts)->capture_default_str();
    c->add_option("--max-iter", o.max_iter)->capture_default_str();
  };

  auto *validate_cmd = app.add_subcommand("validate", "check the Jacobi identity");
  common(validate_cmd, true);
  auto *classify_cmd = app.add_subcommand("classify", "series, Killing form, unimodularity, derivations");
  common(classify_cmd, true);
  auto *curvature_cmd = app.add_subcommand("curvature", "connection, Ricci and scalar curvature");
  common(curvature_cmd, true);
  metric(curvature_cmd);
  auto *soliton_cmd = app.add_subcommand("soliton", "Ricci soliton certificate, searching nilpotent metrics if needed");
  common(soliton_cmd, true);
  metric(soliton_cmd);
  search(soliton_cmd);
  auto *extend_cmd = app.add_subcommand("extend", "Einstein rank-one solvable extension of a nilpotent algebra");
  common(extend_cmd, true);
  search(extend_cmd);
  auto *flow_cmd = app.add_subcommand("flow", "integrate the Ricci flow of a left-invariant metric");
  common(flow_cmd, true);
  metric(flow_cmd);
  flow_cmd->add_option("--t-max", o.t_max)->capture_default_str();
  flow_cmd->add_option("--dt", o.dt)->capture_default_str();
  flow_cmd->add_option("--normalize", o.normalize)
      ->check(CLI::IsMember({"none", "volume", "bracket", "unit_volume", "unit_bracket_norm"}))
      ->capture_default_str();
  flow_cmd->add_option("--csv", o.csv, "write the trajectory as CSV");
  auto *hc_solve_cmd = app.add_subcommand("hc-solve", "couplings (alpha, beta, Lambda) solving the quadratic-gravity equation");
  common(hc_solve_cmd, true);
  metric(hc_solve_cmd);
  auto *hc_check_cmd = app.add_subcommand("hc-check", "evaluate the quadratic-gravity equation at given couplings");
  common(hc_check_cmd, true);
  metric(hc_check_cmd);
  hc_check_cmd->add_option("--alpha", o.alpha)->capture_default_str();
  hc_check_cmd->add_option("--beta", o.beta)->capture_default_str();
  hc_check_cmd->add_option("--lambda", o.lambda)->capture_default_str();
  auto *neg_cmd = app.add_subcommand("search-negR", "search for a metric with negative scalar curvature");
  common(neg_cmd, true);
  search(neg_cmd);
  neg_cmd->add_option("--target", o.target, "stop once the scalar curvature is below this")
      ->capture_default_str();
  auto *su2_cmd = app.add_subcommand("detect-su2", "heuristic search for an su(2) subalgebra");
  common(su2_cmd, true);
  search(su2_cmd);
  auto *catalog_cmd = app.add_subcommand("catalog", "emit a bundled algebra, or list the names");
  common(catalog_cmd, false);
  catalog_cmd->add_option("--name", o.name);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion &) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kIoOrSchema;
  }

  const CLI::App *cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  try {
    Outcome r;
    if (name == "validate") r = cmd_validate(o, in, err);
    else if (name == "classify") r = cmd_classify(o, in, err);
    else if (name == "curvature") r = cmd_curvature(o, in, err);
    else if (name == "soliton") r = cmd_soliton(o, in, err);
    else if (name == "extend") r = cmd_extend(o, in, err);
    else if (name == "flow") r = cmd_flow(o, in, err);
    else if (name == "hc-solve") r = cmd_hc_solve(o, in, err);
    else if (name == "hc-check") r = cmd_hc_check(o, in, err);
    else if (name == "search-negR") r = cmd_search_neg(o, in, err);
    else if (name == "detect-su2") r = cmd_detect_su2(o, in, err);
    else r = cmd_catalog(o);

    const std::string text = io::dump(report(name, o, r.payload));
    if (o.output.empty() || o.output == "-") out << text;
    else write_file(o.output, text);
    return r.code;
  } catch (const Error &e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kIoOrSchema;
  }
}

} // namespace liegeom::cli
