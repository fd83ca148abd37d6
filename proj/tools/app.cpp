#include "app.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "bwkit/barycenter.hpp"
#include "bwkit/bw_core.hpp"
#include "bwkit/bw_programs.hpp"
#include "bwkit/errors.hpp"
#include "bwkit/random_spd.hpp"
#include "bwkit/set_geometry.hpp"
#include "io.hpp"
#include "report.hpp"
#include "suites.hpp"

namespace bwkit::app {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

enum class Outcome { ok, not_converged };

fs::path dir_of(const std::string& path) { return fs::path(path).parent_path(); }

json solver_json(const sdp::SolverSettings& s) {
  return {{"backend", sdp::default_backend().name()},
          {"feas_tol", s.feas_tol},
          {"gap_tol", s.gap_tol},
          {"max_iterations", s.max_iterations},
          {"refinement_steps", s.refinement_steps}};
}

json solution_json(const sdp::SdpSolution& s) {
  return {{"status", sdp::to_string(s.status)},
          {"iterations", s.iterations},
          {"objective", s.objective_value},
          {"primal_residual", s.residuals.primal},
          {"dual_residual", s.residuals.dual},
          {"gap", s.residuals.gap}};
}

SymmetricMatrix load_matrix(InputSet& in, const std::string& path) {
  return matrix_from_json(in.load(path), path);
}

// ---------------------------------------------------------------------------

struct DistArgs {
  std::string a, b;
  std::string method = "both";
};

Outcome cmd_dist(const DistArgs& args, const sdp::SolverSettings& solver, Report& rep, InputSet& in) {
  const auto a = PdMatrix::validate(load_matrix(in, args.a));
  const auto b = PdMatrix::validate(load_matrix(in, args.b));
  require_same_dim(a, b, "dist");
  rep.settings["method"] = args.method;

  const auto closed = bw_distance_squared(a, b);
  rep.result["closed_form"] = {{"distance_squared", closed.distance_squared},
                               {"distance", closed.distance},
                               {"fidelity_term", closed.fidelity_term},
                               {"raw_distance_squared", closed.raw_distance_squared}};
  rep.result["distance_squared"] = closed.distance_squared;

  if (args.method != "sdp") {
    const double swapped = bw_distance_squared(b, a).distance_squared;
    rep.check("closed form symmetric under swap", std::abs(closed.distance_squared - swapped),
              1e-9 * (1.0 + closed.distance_squared));
  }
  if (args.method != "closed") {
    rep.settings["solver"] = solver_json(solver);
    const auto r = solve_distance(a, b, solver);
    const Matrix slack = b.matrix() - r.coupling.transpose() * r.coupling;
    const double feas = -Eigen::SelfAdjointEigenSolver<Matrix>(slack, Eigen::EigenvaluesOnly).eigenvalues()(0);
    rep.result["sdp"] = {{"distance_squared", r.distance_squared},
                         {"raw_value", r.raw_value},
                         {"tightness_residual", r.tightness_residual},
                         {"coupling", matrix_to_json(r.coupling, "K")},
                         {"solver", solution_json(r.solution)}};
    const double deviation = std::abs(r.distance_squared - closed.distance_squared);
    rep.result["deviation"] = deviation;
    if (args.method == "sdp") rep.result["distance_squared"] = r.distance_squared;
    rep.check("|sdp - closed form|", deviation, 1e-5 * (1.0 + closed.distance_squared));
    rep.check("tightness ||K^T K - B||_F", r.tightness_residual, 1e-4 * (1.0 + b.matrix().norm()));
    rep.check("coupling feasibility -lambda_min(B - K^T K)", feas, 1e-6);
  }
  return Outcome::ok;
}

// ---------------------------------------------------------------------------

struct SetDistArgs {
  std::string a, b, init;
  double tol = 1e-7;
  int max_iter = 200;
};

Outcome cmd_set_dist(const SetDistArgs& args, const sdp::SolverSettings& solver, Report& rep, InputSet& in) {
  const auto sa = set_spec_from_json(in.load(args.a), in, dir_of(args.a), args.a);
  const auto sb = set_spec_from_json(in.load(args.b), in, dir_of(args.b), args.b);
  std::optional<SymmetricMatrix> init;
  if (!args.init.empty()) init = load_matrix(in, args.init);

  SetDistanceOptions opt;
  opt.tol = args.tol;
  opt.max_iter = args.max_iter;
  opt.solver = solver;
  rep.settings["solver"] = solver_json(solver);
  rep.settings["tol"] = opt.tol;
  rep.settings["max_iter"] = opt.max_iter;

  const auto r = set_distance(sa, sb, init, opt);
  rep.result["distance_squared"] = r.distance_squared;
  rep.result["closed_form_distance_squared"] = r.closed_form_distance_squared;
  rep.result["witness_a"] = matrix_to_json(r.witness_a.matrix(), "witness_a");
  rep.result["witness_b"] = matrix_to_json(r.witness_b.matrix(), "witness_b");
  rep.result["objective_history"] = r.objective_history;
  rep.result["iterations"] = r.iterations;
  rep.result["converged"] = r.converged;

  double rise = 0.0;
  for (std::size_t k = 1; k < r.objective_history.size(); ++k)
    rise = std::max(rise, r.objective_history[k] - r.objective_history[k - 1]);
  rep.check("|distance - closed form at witnesses|", std::abs(r.distance_squared - r.closed_form_distance_squared), 1e-4);
  rep.check("objective history increase", rise, 1e-9);
  rep.check("witness_a constraint violation", constraint_violation(sa, r.witness_a), 1e-6);
  rep.check("witness_b constraint violation", constraint_violation(sb, r.witness_b), 1e-6);
  if (sa.trace_eq && sb.trace_eq) {
    const double bound = std::pow(std::sqrt(*sa.trace_eq) - std::sqrt(*sb.trace_eq), 2);
    rep.result["trace_lower_bound"] = bound;
    rep.check("trace lower bound excess", bound - r.distance_squared, 1e-6);
  }
  return r.converged ? Outcome::ok : Outcome::not_converged;
}

// ---------------------------------------------------------------------------

struct BarycenterArgs {
  std::string problem;
  std::string route = "both";
  double tol = 1e-10;
  int max_iter = 500;
};

json barycenter_json(const BarycenterResult& r) {
  json j = {{"x", matrix_to_json(r.x.matrix(), "X")},
            {"objective", r.objective},
            {"residual", r.residual},
            {"converged", r.converged}};
  if (r.route == BarycenterRoute::fixed_point) j["iterations"] = r.iterations;
  if (r.route == BarycenterRoute::sdp) j["solver_objective"] = r.solver_objective;
  return j;
}

Outcome cmd_barycenter(const BarycenterArgs& args, const sdp::SolverSettings& solver, Report& rep, InputSet& in) {
  const auto p = barycenter_from_json(in.load(args.problem), in, dir_of(args.problem));
  rep.settings["route"] = args.route;
  FixedPointOptions fp_opt;
  fp_opt.tol = args.tol;
  fp_opt.max_iter = args.max_iter;

  Outcome outcome = Outcome::ok;
  std::optional<BarycenterResult> sdp_r, fp_r;
  if (args.route != "fp") {
    rep.settings["solver"] = solver_json(solver);
    const auto t0 = Clock::now();
    sdp_r = solve_barycenter_sdp(p, solver);
    rep.duration["sdp_seconds"] = seconds_since(t0);
    rep.result["sdp"] = barycenter_json(*sdp_r);
    rep.check("SDP objective vs closed form (relative)",
              std::abs(sdp_r->solver_objective - sdp_r->objective) / (1.0 + std::abs(sdp_r->objective)), 1e-5);
    rep.check("SDP barycenter -lambda_min", -min_eigenvalue(sdp_r->x), 1e-7);
    if (p.constraints) rep.check("SDP barycenter constraint violation", constraint_violation(*p.constraints, sdp_r->x), 1e-6);
  }
  if (args.route != "sdp") {
    rep.settings["fixed_point"] = {{"tol", fp_opt.tol}, {"max_iter", fp_opt.max_iter}};
    const auto t0 = Clock::now();
    fp_r = fixed_point_barycenter(p, std::nullopt, fp_opt);
    rep.duration["fixed_point_seconds"] = seconds_since(t0);
    rep.result["fixed_point"] = barycenter_json(*fp_r);
    rep.check_above("fixed point lambda_min", min_eigenvalue(fp_r->x), 0.0);
    if (!fp_r->converged) outcome = Outcome::not_converged;
  }
  const BarycenterResult& primary = sdp_r ? *sdp_r : *fp_r;
  rep.result["x"] = matrix_to_json(primary.x.matrix(), "X");
  rep.result["objective"] = primary.objective;
  if (sdp_r && fp_r) {
    const double dev = (sdp_r->x.matrix() - fp_r->x.matrix()).cwiseAbs().maxCoeff();
    rep.result["max_entry_deviation"] = dev;
    rep.result["objective_deviation"] = std::abs(sdp_r->objective - fp_r->objective);
    rep.check("routes max entry deviation", dev, 2e-3);
    rep.check("routes objective deviation", std::abs(sdp_r->objective - fp_r->objective), 1e-4);
  }
  return outcome;
}

// ---------------------------------------------------------------------------

struct BallArgs {
  std::string objective = "frobenius";
  std::string balls;
  std::string base_set;
  std::string coeff;
};

Outcome cmd_ball_solve(const BallArgs& args, const sdp::SolverSettings& solver, Report& rep, InputSet& in) {
  ObjectiveSpec obj;
  if (args.objective == "frobenius") {
    obj = ObjectiveSpec::frobenius_norm();
  } else if (args.objective == "trace") {
    obj = ObjectiveSpec::trace();
  } else {
    if (args.coeff.empty()) throw InputError("objective 'linear' needs --coeff <matrix.json>");
    obj = ObjectiveSpec::linear(load_matrix(in, args.coeff));
  }
  const auto balls = balls_from_json(in.load(args.balls), in, dir_of(args.balls));
  std::optional<ConvexSetSpec> base;
  if (!args.base_set.empty()) base = set_spec_from_json(in.load(args.base_set), in, dir_of(args.base_set), args.base_set);

  rep.settings["objective"] = to_string(obj.kind);
  rep.settings["solver"] = solver_json(solver);
  const auto r = solve_ball_constrained(obj, base, balls, solver);

  rep.result["x"] = matrix_to_json(r.x.matrix(), "X");
  rep.result["value"] = r.value;
  rep.result["solver_value"] = r.solver_value;
  rep.result["min_eigenvalue"] = r.min_eigenvalue;
  rep.result["solver"] = solution_json(r.solution);
  json per_ball = json::array();
  for (std::size_t i = 0; i < balls.size(); ++i) {
    // Re-validate with the closed form on the returned X, independently of the
    // library's own soundness flag.
    const double rho2 = bw_distance_squared_psd(balls[i].center, r.x).distance_squared;
    per_ball.push_back({{"radius_squared", balls[i].radius_squared}, {"closed_form_distance_squared", rho2}});
    rep.check("ball " + std::to_string(i) + " closed-form rho^2 - d^2", rho2 - balls[i].radius_squared, kBallSoundnessTol);
  }
  rep.result["balls"] = per_ball;
  rep.check("X -lambda_min", -r.min_eigenvalue, 1e-7);
  if (base) rep.check("base set constraint violation", constraint_violation(*base, r.x), 1e-6);
  return Outcome::ok;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  long long n = 5;
  unsigned long long seed = 0;
  double cond = 10.0;
  int count = 1;
  std::string out_dir;
};

Outcome cmd_gen(const GenArgs& args, Report& rep, InputSet&) {
  if (args.n < 1) throw InputError("--n must be >= 1");
  if (!(args.cond >= 1.0) || !std::isfinite(args.cond)) throw InputError("--cond must be >= 1");
  if (args.count < 1) throw InputError("--count must be >= 1");
  rep.settings["n"] = args.n;
  rep.settings["seed"] = args.seed;
  rep.settings["cond"] = args.cond;
  rep.settings["count"] = args.count;

  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) throw InputError("cannot create output directory '" + args.out_dir + "'");

  Rng rng(args.seed);
  json files = json::array();
  for (int k = 0; k < args.count; ++k) {
    const auto a = random_pd(static_cast<Index>(args.n), args.cond, rng);
    std::ostringstream stem;
    stem << "spd_n" << args.n << "_seed" << args.seed << "_" << std::setw(3) << std::setfill('0') << k;
    const fs::path path = fs::path(args.out_dir) / (stem.str() + ".json");
    const std::string text = dump(matrix_to_json(a.matrix(), stem.str()));
    write_atomically(path, text);

    const auto back = matrix_from_json(json::parse(text), path.string());
    const auto e = eig_sym(back);
    const double lmin = e.eigenvalues(e.eigenvalues.size() - 1);
    const double lmax = e.eigenvalues(0);
    files.push_back({{"path", path.string()},
                     {"sha256", sha256_hex(text)},
                     {"min_eigenvalue", lmin},
                     {"condition_number", lmax / lmin}});
    const std::string tag = "file " + std::to_string(k) + " ";
    rep.check(tag + "round-trip max entry difference", (back.matrix() - a.matrix()).cwiseAbs().maxCoeff(), 0.0);
    rep.check_above(tag + "lambda_min", lmin, kPdTolerance * std::max(1.0, lmax));
    rep.check(tag + "condition number relative error", std::abs(lmax / lmin - args.cond) / args.cond, 1e-8);
  }
  rep.result["files"] = files;
  return Outcome::ok;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string suite = "table1";
  unsigned long long seed = 20240601;
  int count = 0;
};

Outcome cmd_check(const CheckArgs& args, const sdp::SolverSettings& solver, Report& rep, InputSet&) {
  SuiteOptions opt;
  opt.seed = args.seed;
  opt.count = args.count;
  opt.solver = solver;
  rep.settings["suite"] = args.suite;
  if (args.suite != "metric") rep.settings["solver"] = solver_json(solver);
  if (args.suite == "metric") {
    run_metric_suite(opt, rep);
  } else if (args.suite == "lemma") {
    run_lemma_suite(opt, rep);
  } else {
    run_table1_suite(opt, rep);
  }
  return Outcome::ok;
}

// ---------------------------------------------------------------------------

struct Failure {
  int code;
  std::string status;
  std::string message;
};

Failure classify(const std::exception_ptr& ex) {
  try {
    std::rethrow_exception(ex);
  } catch (const InputError& e) {
    return {kExitInputError, "input_error", e.what()};
  } catch (const AsymmetryError& e) {
    return {kExitInputError, "input_error", e.what()};
  } catch (const DimensionMismatch& e) {
    return {kExitInputError, "input_error", e.what()};
  } catch (const NotPdError& e) {
    return {kExitInputError, "input_error", e.what()};
  } catch (const InfeasibleSetError& e) {
    return {kExitInputError, "infeasible", e.what()};
  } catch (const json::exception& e) {
    return {kExitInputError, "input_error", e.what()};
  } catch (const SolverFailure& e) {
    return {kExitSolverFailure, "solver_failure", e.what()};
  } catch (const UnboundedSubproblemError& e) {
    return {kExitSolverFailure, "solver_failure", e.what()};
  } catch (const std::exception& e) {
    return {kExitSolverFailure, "error", e.what()};
  }
}

int execute(const std::string& command, const std::string& out_path, const json& settings_base, std::ostream& out,
            std::ostream& err, const std::function<Outcome(Report&, InputSet&)>& body) {
  const auto t0 = Clock::now();
  Report rep(command);
  rep.settings = settings_base;
  InputSet inputs;
  int code = kExitOk;
  std::string status = "ok";
  std::string message;
  try {
    const Outcome o = body(rep, inputs);
    if (!rep.all_passed()) {
      code = kExitValidationFailure;
      status = "validation_failure";
      for (const auto& c : rep.checks())
        if (!c.passed()) message += (message.empty() ? "" : "; ") + c.name;
      message = "failed checks: " + message;
    } else if (o == Outcome::not_converged) {
      code = kExitSolverFailure;
      status = "not_converged";
      message = "iteration limit reached before convergence";
    }
  } catch (...) {
    const Failure f = classify(std::current_exception());
    code = f.code;
    status = f.status;
    message = f.message;
  }
  rep.duration["total_seconds"] = seconds_since(t0);

  json report = {{"command", command},        {"inputs", inputs.to_json()}, {"settings", rep.settings},
                 {"result", rep.result},      {"checks", rep.checks_json()}, {"status", status},
                 {"exit_code", code},         {"duration", rep.duration}};
  if (!message.empty()) report["message"] = message;

  try {
    if (out_path.empty()) {
      out << dump(report);
    } else {
      write_atomically(out_path, dump(report));
    }
  } catch (const std::exception& e) {
    err << "bwkit " << command << ": " << e.what() << "\n";
    return code == kExitOk ? kExitInputError : code;
  }
  if (code != kExitOk) err << "bwkit " << command << ": " << status << ": " << message << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bures-Wasserstein distances, set distances, barycenters and BW-ball programs", "bwkit"};
  app.require_subcommand(1);

  std::string out_path;
  std::optional<double> solver_tol;
  app.add_option("-o,--out", out_path, "Write the JSON report here (atomically) instead of stdout");
  app.add_option("--solver-tol", solver_tol, "Solver feasibility and gap tolerance (overrides BWKIT_SOLVER_TOL)")
      ->check(CLI::PositiveNumber);

  DistArgs dist;
  auto* c_dist = app.add_subcommand("dist", "BW distance between two matrix files");
  c_dist->add_option("a", dist.a, "First matrix file")->required();
  c_dist->add_option("b", dist.b, "Second matrix file")->required();
  c_dist->add_option("--method", dist.method, "closed, sdp or both")
      ->check(CLI::IsMember({"closed", "sdp", "both"}))
      ->capture_default_str();

  SetDistArgs sd;
  auto* c_sd = app.add_subcommand("set-dist", "BW distance between two convex sets by alternating minimization");
  c_sd->add_option("spec_a", sd.a, "Set spec file for A")->required();
  c_sd->add_option("spec_b", sd.b, "Set spec file for B")->required();
  c_sd->add_option("--init", sd.init, "Starting matrix file in A");
  c_sd->add_option("--tol", sd.tol, "Relative convergence tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  c_sd->add_option("--max-iter", sd.max_iter, "Iteration limit")->check(CLI::PositiveNumber)->capture_default_str();

  BarycenterArgs bc;
  auto* c_bc = app.add_subcommand("barycenter", "Weighted BW barycenter");
  c_bc->add_option("problem", bc.problem, "Problem file")->required();
  c_bc->add_option("--route", bc.route, "sdp, fp or both")->check(CLI::IsMember({"sdp", "fp", "both"}))->capture_default_str();
  c_bc->add_option("--tol", bc.tol, "Fixed-point tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  c_bc->add_option("--max-iter", bc.max_iter, "Fixed-point iteration limit")->check(CLI::PositiveNumber)->capture_default_str();

  BallArgs ball;
  auto* c_ball = app.add_subcommand("ball-solve", "Minimize an objective subject to BW-ball constraints");
  c_ball->add_option("objective", ball.objective, "frobenius, trace or linear")
      ->check(CLI::IsMember({"frobenius", "trace", "linear"}))
      ->required();
  c_ball->add_option("balls", ball.balls, "Balls file")->required();
  c_ball->add_option("base_set", ball.base_set, "Optional set spec file");
  c_ball->add_option("--coeff", ball.coeff, "Coefficient matrix file for the linear objective");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate seeded random PD matrix files");
  c_gen->add_option("--n", gen.n, "Dimension")->required();
  c_gen->add_option("--seed", gen.seed, "Seed")->required();
  c_gen->add_option("--cond", gen.cond, "Condition number")->capture_default_str();
  c_gen->add_option("--count", gen.count, "Number of matrices")->capture_default_str();
  c_gen->add_option("--out-dir", gen.out_dir, "Output directory")->required();

  CheckArgs chk;
  auto* c_chk = app.add_subcommand("check", "Run a built-in property suite");
  c_chk->add_option("--suite", chk.suite, "metric, lemma or table1")
      ->check(CLI::IsMember({"metric", "lemma", "table1"}))
      ->required();
  c_chk->add_option("--seed", chk.seed, "Seed for the random suites")->capture_default_str();
  c_chk->add_option("--count", chk.count, "Number of instances (0 = suite default)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bwkit: " << e.what() << "\n";
    std::string help;
    for (auto* sub : app.get_subcommands()) help = sub->help();
    err << (help.empty() ? app.help() : help);
    return kExitInputError;
  }

  sdp::SolverSettings solver;
  try {
    solver = sdp::settings_from_environment();
  } catch (const InputError& e) {
    err << "bwkit: " << e.what() << "\n";
    return kExitInputError;
  }
  if (solver_tol) solver.feas_tol = solver.gap_tol = *solver_tol;

  const json base = json::object();
  if (c_dist->parsed())
    return execute("dist", out_path, base, out, err, [&](Report& r, InputSet& in) { return cmd_dist(dist, solver, r, in); });
  if (c_sd->parsed())
    return execute("set-dist", out_path, base, out, err, [&](Report& r, InputSet& in) { return cmd_set_dist(sd, solver, r, in); });
  if (c_bc->parsed())
    return execute("barycenter", out_path, base, out, err,
                   [&](Report& r, InputSet& in) { return cmd_barycenter(bc, solver, r, in); });
  if (c_ball->parsed())
    return execute("ball-solve", out_path, base, out, err,
                   [&](Report& r, InputSet& in) { return cmd_ball_solve(ball, solver, r, in); });
  if (c_gen->parsed())
    return execute("gen", out_path, base, out, err, [&](Report& r, InputSet& in) { return cmd_gen(gen, r, in); });
  return execute("check", out_path, base, out, err, [&](Report& r, InputSet& in) { return cmd_check(chk, solver, r, in); });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace bwkit::app
