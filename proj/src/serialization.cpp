#include <specnp/serialization.hpp>

#include <fstream>
#include <set>

#include <specnp/gamma_core.hpp>

namespace specnp::io {
namespace {

[[noreturn]] void schema(const std::string& what) {
  throw Error(ErrorKind::Schema, what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    schema(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) schema(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<cplx> complex_list(const json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array");
  std::vector<cplx> out;
  for (const json& e : j) out.push_back(complex_from_json(e));
  return out;
}

json matrix2_json(const Matrix2& m) { return to_json(CMat(m)); }

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) schema("complex numbers are [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

CMat matrix_from_json(const json& j) {
  if (!j.is_array()) schema("matrices are arrays of rows");
  if (j.empty()) return CMat(0, 0);
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  CMat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) schema("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          complex_from_json(j[i][k]);
    }
  }
  return m;
}

ZGrid parse_zgrid(const json& j) {
  const std::vector<cplx> z = complex_list(j, "zgrid");
  if (z.size() != 3) schema("zgrid must hold three points");
  ZGrid g;
  for (int k = 0; k < 3; ++k) g.z[k] = z[k];
  return g;
}

ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) schema("problem must be a JSON object");
  ProblemFile pf;
  const std::vector<cplx> nodes = complex_list(field(j, "nodes"), "nodes");
  const bool has_targets = j.contains("targets");
  const bool has_values = j.contains("values");
  if (has_targets == has_values) {
    schema("problem needs exactly one of \"targets\" or \"values\"");
  }
  if (has_targets) {
    const json& t = j.at("targets");
    if (!t.is_array()) schema("targets must be an array");
    SpectralProblem sp;
    sp.nodes = nodes;
    for (const json& e : t) {
      const CMat m = matrix_from_json(e);
      if (m.rows() != 2 || m.cols() != 2) schema("targets must be 2x2");
      sp.targets.push_back(m);
    }
    pf.gamma.nodes = nodes;
    for (const Matrix2& w : sp.targets) pf.gamma.values.push_back(trdet(w));
    pf.spectral = sp;
  } else {
    const json& v = j.at("values");
    if (!v.is_array()) schema("values must be an array");
    pf.gamma.nodes = nodes;
    for (const json& e : v) {
      if (!e.is_array() || e.size() != 4) {
        schema("values are [s_re, s_im, p_re, p_im]");
      }
      pf.gamma.values.push_back({{number(e[0], "s"), number(e[1], "s")},
                                 {number(e[2], "p"), number(e[3], "p")}});
    }
  }
  if (j.contains("zgrid")) pf.zgrid = parse_zgrid(j.at("zgrid"));
  for (const auto& [key, value] : j.items()) {
    static const std::set<std::string> known = {"nodes", "targets", "values", "zgrid"};
    if (!known.count(key)) schema("unknown problem field \"" + key + "\"");
  }
  return pf;
}

json problem_to_json(const SpectralProblem& sp) {
  json j;
  j["nodes"] = json::array();
  for (cplx l : sp.nodes) j["nodes"].push_back(to_json(l));
  j["targets"] = json::array();
  for (const Matrix2& w : sp.targets) j["targets"].push_back(matrix2_json(w));
  return j;
}

json problem_to_json(const GammaProblem& gp) {
  json j;
  j["nodes"] = json::array();
  for (cplx l : gp.nodes) j["nodes"].push_back(to_json(l));
  j["values"] = json::array();
  for (const GammaPoint& v : gp.values) {
    j["values"].push_back({v.s.real(), v.s.imag(), v.p.real(), v.p.imag()});
  }
  return j;
}

SolverConfig parse_config(const json& j) {
  if (!j.is_object()) schema("config must be a JSON object");
  SolverConfig cfg;
  for (const auto& [key, value] : j.items()) {
    auto real = [&](double& dst) { dst = number(value, key.c_str()); };
    auto integer = [&](int& dst) {
      if (!value.is_number_integer()) schema(key + " must be an integer");
      dst = value.get<int>();
    };
    if (key == "psd_tol") real(cfg.psd_tol);
    else if (key == "rank_tol") real(cfg.rank_tol);
    else if (key == "max_outer_iters") integer(cfg.max_outer_iters);
    else if (key == "restarts") integer(cfg.restarts);
    else if (key == "step_decay") real(cfg.step_decay);
    else if (key == "max_backtracks") integer(cfg.max_backtracks);
    else if (key == "gap_tol") real(cfg.gap_tol);
    else if (key == "margin_target") real(cfg.margin_target);
    else if (key == "seed") {
      if (!value.is_number_unsigned()) schema("seed must be a non-negative integer");
      cfg.seed = value.get<unsigned long long>();
    } else {
      schema("unknown config field \"" + key + "\"");
    }
  }
  return cfg;
}

json to_json(const SolverConfig& cfg) {
  return {{"psd_tol", cfg.psd_tol},
          {"rank_tol", cfg.rank_tol},
          {"max_outer_iters", cfg.max_outer_iters},
          {"restarts", cfg.restarts},
          {"seed", cfg.seed},
          {"step_decay", cfg.step_decay},
          {"max_backtracks", cfg.max_backtracks},
          {"gap_tol", cfg.gap_tol},
          {"margin_target", cfg.margin_target}};
}

json to_json(const Realization& r) {
  return {{"A", to_json(r.A)},
          {"B", to_json(r.B)},
          {"C", to_json(r.C)},
          {"D", to_json(r.D)},
          {"state_dim", r.state_dim()},
          {"unitary", r.unitary}};
}

Realization realization_from_json(const json& j) {
  Realization r;
  r.A = matrix_from_json(field(j, "A"));
  r.B = matrix_from_json(field(j, "B"));
  r.C = matrix_from_json(field(j, "C"));
  r.D = matrix_from_json(field(j, "D"));
  if (j.contains("unitary")) {
    if (!j.at("unitary").is_boolean()) schema("unitary must be a boolean");
    r.unitary = j.at("unitary").get<bool>();
  }
  const Eigen::Index m = r.D.rows();
  // Empty state blocks come back as 0x0; give them the right outer size.
  if (m == 0) {
    r.B.resize(2, 0);
    r.C.resize(0, 2);
    r.D.resize(0, 0);
  }
  if (r.A.rows() != 2 || r.A.cols() != 2 || r.B.rows() != 2 || r.B.cols() != m ||
      r.C.rows() != m || r.C.cols() != 2 || r.D.cols() != m) {
    schema("realization blocks have inconsistent shapes");
  }
  if (j.contains("state_dim") && j.at("state_dim") != m) {
    schema("state_dim does not match D");
  }
  return r;
}

json to_json(const WitnessPair& w) {
  json j = {{"N", to_json(w.N)}, {"M", to_json(w.M)}};
  if (w.gamma) j["gamma"] = to_json(CMat(*w.gamma))[0];
  return j;
}

WitnessPair witness_from_json(const json& j) {
  WitnessPair w;
  w.N = matrix_from_json(field(j, "N"));
  w.M = matrix_from_json(field(j, "M"));
  if (w.N.rows() != w.N.cols() || w.M.rows() != w.M.cols() ||
      w.N.rows() != w.M.rows()) {
    schema("N and M must be square of equal size");
  }
  if (j.contains("gamma")) {
    const std::vector<cplx> g = complex_list(j.at("gamma"), "gamma");
    if (static_cast<Eigen::Index>(g.size()) != w.N.rows()) schema("gamma length");
    CRowVec row(static_cast<Eigen::Index>(g.size()));
    for (std::size_t k = 0; k < g.size(); ++k) row(static_cast<Eigen::Index>(k)) = g[k];
    w.gamma = row;
  }
  return w;
}

json to_json(const CertificateReport& r) {
  return {{"min_residual_eig", r.min_residual_eig},
          {"rank_N", r.rank_N},
          {"objective", r.objective},
          {"bound_violations", r.bound_violations},
          {"max_bound_ratio", r.max_bound_ratio},
          {"psd_N", r.psd_N},
          {"psd_M", r.psd_M},
          {"feasible", r.feasible}};
}

json to_json(const InterpolantCheck& c) {
  return {{"max_node_error", c.max_node_error},
          {"worst_gamma_excess", c.worst_gamma_excess},
          {"nodes_ok", c.nodes_ok},
          {"gamma_ok", c.gamma_ok}};
}

json to_json(const Polynomial& p) {
  json j = json::array();
  for (cplx c : p.coeffs()) j.push_back(to_json(c));
  return j;
}

json to_json(const ScalarRational& r) {
  return {{"num", to_json(r.num())}, {"den", to_json(r.den())}};
}

json to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

json report_json(const SolveOutcome& out) {
  json j;
  j["verdict"] = to_string(out.kind);
  j["message"] = out.message;
  j["warnings"] = out.warnings;
  j["seconds"] = out.seconds;
  j["zgrid"] = json::array();
  for (cplx z : out.grid.z) j["zgrid"].push_back(to_json(z));
  j["search"] = {{"verdict", to_string(out.verdict.kind)},
                 {"relaxation_residual", out.verdict.relaxation_residual},
                 {"best_objective", out.verdict.best_objective},
                 {"best_rank1_min_eig", out.verdict.best_rank1_min_eig},
                 {"restarts_used", out.verdict.restarts_used}};
  if (out.certificate) j["certificate"] = to_json(*out.certificate);
  if (out.sw) {
    j["realization_summary"] = {{"raw_norm", out.sw->raw_norm},
                                {"domination_margin", out.sw->domination_margin},
                                {"span_rank", out.sw->span_rank},
                                {"state_dim", out.sw->realization.state_dim()},
                                {"unitary", out.sw->realization.unitary}};
  }
  if (out.check) j["verification"] = to_json(*out.check);
  if (out.lift) {
    j["lift"] = {{"polynomial", out.lift->polynomial()},
                 {"node_error", out.lift_node_error}};
  }
  return j;
}

json report_json(const MuDemoResult& res) {
  json j;
  j["a"] = to_json(res.a);
  j["c"] = to_json(res.c);
  j["threshold"] = res.threshold;
  j["criterion"] = res.criterion;
  j["oracle"] = {{"zeta", to_json(res.zeta)},
                 {"distance", res.distance},
                 {"solvable", res.oracle}};
  j["solver"] = report_json(res.solve);
  j["controller_built"] = res.controller_built;
  j["synthesis_message"] = res.synthesis_message;
  if (res.controller_built) {
    j["rho"] = res.rho;
    j["F_at_1"] = matrix2_json(res.F1);
    j["Q_inf"] = matrix2_json(res.Q_inf);
    j["K_inf"] = matrix2_json(res.K_inf);
    j["nonsingularity_sigma"] = res.nonsingularity_sigma;
    j["controller_formula_gap"] = res.controller_formula_gap;
    j["max_Q_sample"] = res.max_Q_sample;
    j["robust"] = {{"sup_radius", res.robust.sup_radius},
                   {"worst_s", to_json(res.robust.worst_s)},
                   {"worst_at_infinity", res.robust.worst_at_infinity},
                   {"pass", res.robust.pass}};
  }
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    schema(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) schema("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace specnp::io
