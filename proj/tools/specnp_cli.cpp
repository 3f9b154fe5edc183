// specnp: solve, verify and demo driver for the spectral Nevanlinna-Pick
// solver. Exit codes: 0 SOLVABLE, 1 UNSOLVABLE, 2 INDETERMINATE, 3 file or
// schema errors, 4 validation errors.

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <specnp/gamma_core.hpp>
#include <specnp/serialization.hpp>

namespace fs = std::filesystem;
using namespace specnp;
using io::json;

namespace {

constexpr int kExitSchema = 3;
constexpr int kExitValidation = 4;

int verdict_code(VerdictKind k) {
  switch (k) {
    case VerdictKind::Solvable: return 0;
    case VerdictKind::Unsolvable: return 1;
    case VerdictKind::Indeterminate: return 2;
  }
  return 2;
}

/// Accepts "x", "yi", "x+yi" and "x-yi" (j is accepted for i).
cplx parse_complex(const std::string& text) {
  static const std::string mant = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex real_only("^[+-]?" + mant + "$");
  static const std::regex imag_only("^([+-]?(?:" + mant + ")?)[ij]$");
  static const std::regex both("^([+-]?" + mant + ")([+-](?:" + mant + ")?)[ij]$");
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s += ch;
  }
  auto coefficient = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  std::smatch m;
  if (std::regex_match(s, real_only)) return {std::stod(s), 0.0};
  if (std::regex_match(s, m, imag_only)) return {0.0, coefficient(m[1].str())};
  if (std::regex_match(s, m, both)) {
    return {std::stod(m[1].str()), coefficient(m[2].str())};
  }
  throw Error(ErrorKind::Schema, "cannot parse complex number \"" + text + "\"");
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

ZGrid parse_zgrid_flag(const std::string& text) {
  ZGrid g;
  std::stringstream ss(text);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= 3) throw Error(ErrorKind::Schema, "--zgrid takes three points");
    g.z[k++] = parse_complex(item);
  }
  if (k != 3) throw Error(ErrorKind::Schema, "--zgrid takes three points");
  return g;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Schema, "cannot create " + dir + ": " + ec.message());
}

struct SolveArgs {
  std::string problem;
  std::string config;
  std::string zgrid;
  std::string out_dir = ".";
  long long seed = -1;
  bool json_out = false;
};

int cmd_solve(const SolveArgs& args) {
  const io::ProblemFile pf = io::parse_problem(io::read_json_file(args.problem));
  SolveOptions opt;
  if (!args.config.empty()) opt.config = io::parse_config(io::read_json_file(args.config));
  if (args.seed >= 0) opt.config.seed = static_cast<unsigned long long>(args.seed);
  opt.zgrid = pf.zgrid;
  if (!args.zgrid.empty()) opt.zgrid = parse_zgrid_flag(args.zgrid);

  const SolveOutcome out =
      pf.spectral ? solve_spectral(*pf.spectral, opt) : solve_gamma(pf.gamma, opt);
  ensure_dir(args.out_dir);
  json report = io::report_json(out);
  if (out.kind == VerdictKind::Solvable) {
    const std::string rpath = (fs::path(args.out_dir) / "realization.json").string();
    const std::string wpath = (fs::path(args.out_dir) / "witness.json").string();
    io::write_json_file(rpath, io::to_json(out.sw->realization));
    io::write_json_file(wpath, io::to_json(*out.verdict.witness));
    report["realization_file"] = rpath;
    report["witness_file"] = wpath;
  }
  const std::string report_path = (fs::path(args.out_dir) / "report.json").string();
  io::write_json_file(report_path, report);

  if (args.json_out) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << "verdict: " << to_string(out.kind) << '\n';
    if (!out.message.empty()) std::cout << "message: " << out.message << '\n';
    for (const std::string& w : out.warnings) std::cout << "warning: " << w << '\n';
    if (out.check) {
      std::cout << "max node error: " << fmt(out.check->max_node_error) << '\n'
                << "worst gamma excess: " << fmt(out.check->worst_gamma_excess) << '\n';
    }
    if (out.lift) std::cout << "matrix lift node error: " << fmt(out.lift_node_error) << '\n';
    std::cout << "report: " << report_path << '\n'
              << "time: " << fmt(out.seconds) << " s\n";
  }
  return verdict_code(out.kind);
}

int cmd_oracle(const std::string& l1s, const std::string& l2s, const std::string& zs) {
  const cplx l1 = parse_complex(l1s);
  const cplx l2 = parse_complex(l2s);
  const cplx zeta = parse_complex(zs);
  if (!(std::abs(l1) < 1.0) || !(std::abs(l2) < 1.0)) {
    throw Error(ErrorKind::NodeOutsideDisc, "nodes must lie in the open unit disc");
  }
  if (std::abs(l1 - l2) <= 1e-14) throw Error(ErrorKind::DuplicateNode, "nodes coincide");
  const double d = pseudo_hyperbolic(l1, l2);
  const bool ok = two_point_antipodal_solvable(l1, l2, zeta);
  std::cout << "d: " << fmt(d) << '\n'
            << "|zeta|: " << fmt(std::abs(zeta)) << '\n'
            << "verdict: " << (ok ? "SOLVABLE" : "UNSOLVABLE") << '\n';
  return ok ? 0 : 1;
}

struct MuArgs {
  std::string a = "0";
  std::string c;
  std::string sweep;
  std::string out_dir;
  int grid = 400;
  long long seed = -1;
  bool json_out = false;
};

int cmd_mu_demo(const MuArgs& args) {
  const cplx a = parse_complex(args.a);
  MuDemoOptions opt;
  opt.grid = args.grid;
  if (args.seed >= 0) opt.solve.config.seed = static_cast<unsigned long long>(args.seed);
  if (opt.grid < 2) throw Error(ErrorKind::Precondition, "--grid must be at least 2");

  if (!args.sweep.empty()) {
    std::stringstream ss(args.sweep);
    std::string p0, p1, pn;
    if (!std::getline(ss, p0, ':') || !std::getline(ss, p1, ':') || !std::getline(ss, pn)) {
      throw Error(ErrorKind::Schema, "--sweep expects c0:c1:n");
    }
    const double c0 = std::stod(p0);
    const double c1 = std::stod(p1);
    const int n = std::stoi(pn);
    if (n < 2) throw Error(ErrorKind::Precondition, "--sweep needs at least two steps");
    opt.synthesize = false;
    std::cout << "threshold: " << fmt(robust::robust_threshold()) << '\n'
              << std::setw(12) << "c" << std::setw(12) << "criterion" << std::setw(12)
              << "oracle" << std::setw(16) << "solver" << '\n';
    json rows = json::array();
    int crossings = 0;
    int unsound = 0;
    bool prev = false;
    for (int k = 0; k < n; ++k) {
      const double c = c0 + (c1 - c0) * k / (n - 1);
      if (c == 0.0) throw Error(ErrorKind::Precondition, "c must be nonzero");
      const MuDemoResult r = run_mu_demo(a, c, opt);
      if (k > 0 && r.criterion != prev) ++crossings;
      prev = r.criterion;
      if (!r.criterion && r.solve.kind == VerdictKind::Solvable) ++unsound;
      std::cout << std::setw(12) << std::setprecision(6) << c << std::setw(12)
                << (r.criterion ? "yes" : "no") << std::setw(12) << (r.oracle ? "yes" : "no")
                << std::setw(16) << to_string(r.solve.kind) << '\n';
      rows.push_back({{"c", c},
                      {"criterion", r.criterion},
                      {"oracle", r.oracle},
                      {"solver", to_string(r.solve.kind)}});
    }
    std::cout << "criterion changes: " << crossings << '\n';
    if (!args.out_dir.empty()) {
      ensure_dir(args.out_dir);
      io::write_json_file((fs::path(args.out_dir) / "sweep.json").string(),
                          {{"threshold", robust::robust_threshold()}, {"rows", rows}});
    }
    return unsound == 0 ? 0 : 2;
  }

  if (args.c.empty()) throw Error(ErrorKind::Schema, "mu-demo needs --c or --sweep");
  const cplx c = parse_complex(args.c);
  if (c == 0.0) throw Error(ErrorKind::Precondition, "c must be nonzero");
  const MuDemoResult r = run_mu_demo(a, c, opt);
  const json report = io::report_json(r);
  if (!args.out_dir.empty()) {
    ensure_dir(args.out_dir);
    io::write_json_file((fs::path(args.out_dir) / "mu_demo.json").string(), report);
  }
  if (args.json_out) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << "a: " << fmt(a) << "  c: " << fmt(c) << '\n'
              << "threshold 1/(4-2 sqrt 3): " << fmt(r.threshold) << '\n'
              << "criterion |c| < threshold: " << (r.criterion ? "yes" : "no") << '\n'
              << "oracle |zeta| < d(0,1/2): " << (r.oracle ? "yes" : "no") << "  (|zeta| = "
              << fmt(std::abs(r.zeta)) << ", d = " << fmt(r.distance) << ")\n"
              << "solver: " << to_string(r.solve.kind) << '\n';
    if (r.solve.kind == VerdictKind::Solvable) {
      std::cout << "synthesis: " << r.synthesis_message << '\n';
      if (r.controller_built) {
        std::cout << "rho: " << fmt(r.rho) << '\n'
                  << "sup r(T1 - b1 b3 Q): " << fmt(r.robust.sup_radius)
                  << (r.robust.pass ? "  (pass)" : "  (fail)") << '\n'
                  << "sigma_min(F(1) + Z): " << fmt(r.nonsingularity_sigma) << '\n'
                  << "controller formula gap: " << fmt(r.controller_formula_gap) << '\n';
      }
    }
  }
  return verdict_code(r.solve.kind);
}

int cmd_witness(const std::string& problem_path, const std::string& realization_path,
                const std::string& out_dir) {
  const io::ProblemFile pf = io::parse_problem(io::read_json_file(problem_path));
  const Realization r = io::realization_from_json(io::read_json_file(realization_path));
  validate(pf.gamma);
  const ZGrid grid = pf.zgrid ? *pf.zgrid : default_zgrid(pf.gamma);
  validate(grid, pf.gamma);
  const WitnessPair w =
      witness_from_solution([&r](cplx l) { return eval_psi(r, l); }, pf.gamma, grid);
  const LmiSystem lmi = build_lmi(pf.gamma, grid);
  const SolverConfig cfg;
  const CertificateReport cert = certify_witness(lmi, w, cfg);
  json out = io::to_json(w);
  out["certificate"] = io::to_json(cert);
  std::string path;
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    path = (fs::path(out_dir) / "witness.json").string();
    io::write_json_file(path, out);
  }
  std::cout << "residual min eigenvalue: " << fmt(cert.min_residual_eig) << '\n'
            << "rank N: " << cert.rank_N << '\n'
            << "bound violations: " << cert.bound_violations << '\n'
            << "certificate: " << (cert.feasible ? "feasible" : "infeasible") << '\n';
  if (!path.empty()) std::cout << "witness: " << path << '\n';
  return cert.feasible ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Nevanlinna-Pick solver for 2x2 targets"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Decide and solve an interpolation problem");
  solve->add_option("problem", sa.problem, "Problem JSON file")->required();
  solve->add_option("--config", sa.config, "Solver config JSON file");
  solve->add_option("--zgrid", sa.zgrid, "Three auxiliary points, comma separated");
  solve->add_option("--seed", sa.seed, "Random seed for restarts")->check(CLI::NonNegativeNumber);
  solve->add_option("--out-dir", sa.out_dir, "Directory for report and certificates");
  solve->add_flag("--json", sa.json_out, "Print the JSON report");

  std::string l1, l2, zeta;
  auto* oracle = app.add_subcommand("oracle", "Exact two-point antipodal test");
  oracle->add_option("--l1", l1)->required();
  oracle->add_option("--l2", l2)->required();
  oracle->add_option("--zeta", zeta)->required();

  MuArgs ma;
  auto* mu = app.add_subcommand("mu-demo", "Robust stabilization example");
  mu->add_option("--a", ma.a, "Plant parameter a");
  mu->add_option("--c", ma.c, "Plant parameter c (nonzero)");
  mu->add_option("--sweep", ma.sweep, "Sweep c over c0:c1:n");
  mu->add_option("--grid", ma.grid, "Boundary grid size");
  mu->add_option("--seed", ma.seed, "Random seed")->check(CLI::NonNegativeNumber);
  mu->add_option("--out-dir", ma.out_dir, "Directory for the JSON report");
  mu->add_flag("--json", ma.json_out, "Print the JSON report");

  std::string wp, wr, wout;
  auto* wit = app.add_subcommand("witness", "Witness pair of a given realization");
  wit->add_option("problem", wp)->required();
  wit->add_option("realization", wr)->required();
  wit->add_option("--out-dir", wout, "Directory for witness.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSchema;
  }

  try {
    if (*solve) return cmd_solve(sa);
    if (*oracle) return cmd_oracle(l1, l2, zeta);
    if (*mu) return cmd_mu_demo(ma);
    if (*wit) return cmd_witness(wp, wr, wout);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::Schema ? kExitSchema : kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return kExitSchema;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range: " << e.what() << '\n';
    return kExitSchema;
  }
  return kExitValidation;
}
