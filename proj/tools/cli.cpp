#include "adal/cli.hpp"

#include "adal/bench.hpp"
#include "adal/errors.hpp"
#include "adal/graph.hpp"
#include "adal/lp.hpp"
#include "adal/profile.hpp"
#include "adal/randgen.hpp"
#include "adal/sdp_json.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace adal {

namespace {

struct SolverFlags {
  double eps = 1e-5;
  int max_iter = 100000;
  double time_limit = 1800.0;
  double sigma0 = 1.0;
  int postproc_every = 200;
  double lp_tol = 1e-5;
  bool no_postproc = false;
  std::string lp_external;
  std::string output;
  std::string log;
  std::string save_iterate;
};

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_option("--eps", f.eps, "stop when max(r_P, r_D) <= eps")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--max-iter", f.max_iter, "iteration limit")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--time-limit", f.time_limit, "wall-clock limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--sigma0", f.sigma0, "initial penalty parameter")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--postproc-every", f.postproc_every, "iterations between bound recoveries")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--lp-tol", f.lp_tol, "allowed row violation of the bound LP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_flag("--no-postproc", f.no_postproc, "skip bound recovery");
  app->add_option("--lp-external", f.lp_external,
                  "shell command solving the bound LP: run as `CMD model.mps solution.txt`");
  app->add_option("--output", f.output, "write the report (JSON, or a CSV record when the name ends in .csv)");
  app->add_option("--log", f.log, "write the iteration log (CSV)");
  app->add_option("--save-iterate", f.save_iterate, "write the final X, y, Z (JSON)");
}

void apply(const SolverFlags& f, RunSpec& spec) {
  spec.config.eps = f.eps;
  spec.config.max_iter = f.max_iter;
  spec.config.time_limit_sec = f.time_limit;
  spec.config.sigma0 = f.sigma0;
  spec.config.postprocess_every = f.postproc_every;
  spec.config.log_path = f.log;
  spec.config.keep_history = false;
  spec.postprocess = !f.no_postproc;
  spec.bound.tol = f.lp_tol;
  spec.bound.external_lp = f.lp_external;
}

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string e2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

void open_or_throw(std::ofstream& f, const std::string& path) {
  f.open(path);
  if (!f) throw std::runtime_error("cannot write " + path);
}

int exit_for(const BenchRecord& r) {
  if (r.status == "Error") return kExitFailure;
  return r.solved() ? kExitOk : kExitLimit;
}

// Shared tail of `solve` and `theta`.
int run_and_report(RunSpec& spec, const SolverFlags& flags, const std::string& problem_note, std::ostream& out,
                   std::ostream& err) {
  std::optional<GeneralSdp> sdp;
  try {
    spec.config.validate();
    sdp.emplace(load_problem(spec));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  out << spec.name << ": " << problem_note << "n=" << sdp->n() << " m=" << sdp->m() << " (" << sdp->l()
      << " inequalities, " << sdp->nonneg_mask().size() << " nonnegative entries)\n";

  const RunOutcome outcome = run_loaded(spec, *sdp);
  const BenchRecord& r = outcome.record;
  if (r.status == "Error") {
    err << "error: " << r.message << '\n';
  } else {
    out << "status " << r.status << "  iterations " << r.iters << "  primal " << g6(r.objective) << "  dual "
        << g6(outcome.result->dual_obj) << "  r_P " << e2(r.r_p) << "  r_D " << e2(r.r_d) << '\n';
    if (std::isfinite(r.best_bound))
      out << "best bound " << g6(r.best_bound) << " at iteration " << outcome.result->best_bound_iter << " ("
          << g6(r.bound_time_sec) << " s)\n";
    else if (spec.postprocess)
      out << "no certified bound (" << outcome.result->bound_attempts << " attempts)\n";
    out << "time " << g6(r.total_time_sec) << " s (bound recovery " << g6(r.postproc_time_sec) << " s)\n";
  }

  try {
    if (!flags.output.empty()) {
      std::ofstream f;
      open_or_throw(f, flags.output);
      if (std::filesystem::path(flags.output).extension() == ".csv")
        write_csv({r}, f);
      else
        f << report_json(spec, outcome).dump(2) << '\n';
    }
    if (!flags.save_iterate.empty() && outcome.result) {
      std::ofstream f;
      open_or_throw(f, flags.save_iterate);
      const SolverState& st = outcome.result->state;
      f << nlohmann::json{{"X", symmat_to_json(st.X)}, {"y", vector_to_json(st.y)}, {"Z", symmat_to_json(st.Z)}}.dump()
        << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return exit_for(r);
}

SymMat read_z(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    return symmat_from_json(j.contains("Z") ? j.at("Z") : j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ADAL solver for general-form SDPs with certified dual bounds", "adal"};
  app.require_subcommand(1);
  app.footer("Relative input paths are also looked up in $ADAL_DATA_DIR.\n"
             "Exit status: 0 converged/ok, 1 input error, 2 limit reached, 3 numerical failure.");

  SolverFlags flags;
  std::string input;

  auto* solve_cmd = app.add_subcommand("solve", "solve an SDP instance (JSON)");
  solve_cmd->add_option("instance", input, "instance file")->required();
  add_solver_flags(solve_cmd, flags);

  std::string relaxation = "theta+";
  bool complement_graph = false;
  std::uint64_t cuts = 0;
  std::uint64_t cut_seed = 1;
  std::string write_sdp_path;
  auto* theta_cmd = app.add_subcommand("theta", "bound a DIMACS graph with a theta-type relaxation");
  theta_cmd->add_option("graph", input, "DIMACS graph file")->required();
  theta_cmd->add_option("--relaxation", relaxation, "theta | theta+ | thetabar+")
      ->check(CLI::IsMember({"theta", "theta+", "thetabar+"}))
      ->capture_default_str();
  theta_cmd->add_flag("--complement", complement_graph, "use the complement graph");
  theta_cmd->add_option("--cuts", cuts, "number of sampled triangle cuts (thetabar+ only)")->capture_default_str();
  theta_cmd->add_option("--cut-seed", cut_seed, "seed of the cut sample")->capture_default_str();
  theta_cmd->add_option("--write-sdp", write_sdp_path, "also write the built instance (JSON)");
  add_solver_flags(theta_cmd, flags);

  std::string z_path;
  std::string bound_output;
  BoundOptions bound_opts;
  bool no_tighten = false;
  auto* bound_cmd = app.add_subcommand("bound", "certify a dual bound from a dual matrix Z");
  bound_cmd->add_option("instance", input, "instance file")->required();
  bound_cmd->add_option("--z", z_path, "Z as {\"n\", \"rows\"} or a --save-iterate file")->required();
  bound_cmd->add_option("--lp-tol", bound_opts.tol, "allowed row violation of the bound LP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bound_cmd->add_flag("--no-tighten", no_tighten, "use the whole tolerance on every row");
  bound_cmd->add_option("--lp-external", bound_opts.external_lp, "external LP command");
  bound_cmd->add_option("--output", bound_output, "write the certificate (JSON)");

  GenSpec gen;
  std::optional<int> density;
  std::string gen_output;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance with known optimum");
  gen_cmd->add_option("--n", gen.n, "matrix order")->capture_default_str();
  gen_cmd->add_option("--m", gen.m, "number of constraints")->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "fraction of inequality rows")->capture_default_str();
  gen_cmd->add_option("--density", density, "nonzeros per constraint matrix (default n)");
  gen_cmd->add_option("--seed", gen.seed, "random seed")->capture_default_str();
  gen_cmd->add_option("--output", gen_output, "instance file; the optimum goes to <stem>.optimum.json")->required();

  int jobs = 1;
  std::string bench_output;
  std::string log_dir;
  auto* bench_cmd = app.add_subcommand("bench", "run a batch manifest and tabulate the results");
  bench_cmd->add_option("manifest", input, "manifest file (JSON)")->required();
  bench_cmd->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--output", bench_output, "CSV file (default: standard output)");
  bench_cmd->add_option("--log-dir", log_dir, "directory for per-run iteration logs");

  std::string manifest_path;
  std::vector<std::string> exclude;
  std::string metric = "total";
  std::string svg_path;
  std::string profile_title;
  auto* profile_cmd = app.add_subcommand("profile", "performance profile of benchmark records");
  profile_cmd->add_option("records", input, "CSV written by `bench`")->required();
  profile_cmd->add_option("--manifest", manifest_path, "apply the manifest's profile_exclude list");
  profile_cmd->add_option("--exclude", exclude, "instance to leave out (repeatable)");
  profile_cmd->add_option("--metric", metric, "total: time to converge; bound: time to the best bound")
      ->check(CLI::IsMember({"total", "bound"}))
      ->capture_default_str();
  profile_cmd->add_option("--output", svg_path, "SVG plot");
  profile_cmd->add_option("--title", profile_title, "plot title");

  std::string solution_path;
  double elastic = 0.0;
  auto* lp_cmd = app.add_subcommand("lp-solve", "solve an MPS model with the built-in simplex");
  lp_cmd->add_option("model", input, "MPS file")->required();
  lp_cmd->add_option("solution", solution_path, "solution file (default: standard output)");
  lp_cmd->add_option("--elastic", elastic, "allowed per-row violation")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve_cmd || *theta_cmd) {
      RunSpec spec;
      spec.path = resolve_input(input);
      spec.name = spec.path.stem().string();
      std::string note;
      if (*solve_cmd) {
        spec.kind = InputKind::Sdp;
        spec.solver_label = "adal";
      } else {
        spec.kind = InputKind::Graph;
        spec.relaxation = parse_relaxation(relaxation);
        spec.complement = complement_graph;
        spec.cuts = cuts;
        spec.cut_seed = cut_seed;
        spec.solver_label = relaxation + (cuts > 0 ? "/" + std::to_string(cuts) + " cuts" : "");
        note = relaxation + (complement_graph ? " of the complement" : "") +
               (cuts > 0 ? " with " + std::to_string(cuts) + " cuts" : "") + ", ";
        if (!write_sdp_path.empty()) {
          try {
            write_sdp(write_sdp_path, load_problem(spec));
          } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kExitInput;
          }
        }
      }
      apply(flags, spec);
      return run_and_report(spec, flags, note, out, err);
    }

    if (*bound_cmd) {
      GeneralSdp sdp = read_sdp(resolve_input(input));
      SymMat z = read_z(z_path);
      bound_opts.tighten = !no_tighten;
      const DualBound b = recover_bound(sdp, z, bound_opts);
      out << "status " << to_string(b.status);
      if (b.certified()) out << "  bound " << g6(b.value) << "  residual " << e2(b.feasibility_residual);
      if (!b.message.empty()) out << "  (" << b.message << ")";
      out << '\n';
      if (!bound_output.empty()) {
        std::ofstream f;
        open_or_throw(f, bound_output);
        nlohmann::json j = {{"status", to_string(b.status)},
                            {"value", b.certified() ? nlohmann::json(b.value) : nlohmann::json()},
                            {"residual", b.feasibility_residual},
                            {"lambda", vector_to_json(b.lambda)},
                            {"mu", vector_to_json(b.mu)},
                            {"s", vector_to_json(b.s_values)},
                            {"lp_time_sec", b.wall_time_sec}};
        if (!b.message.empty()) j["message"] = b.message;
        f << j.dump(2) << '\n';
      }
      return b.certified() ? kExitOk : kExitFailure;
    }

    if (*gen_cmd) {
      gen.density = density.value_or(gen.n);
      const GeneratedSdp g = generate(gen);
      write_sdp(gen_output, g.sdp);
      const auto side = sidecar_path(gen_output);
      std::ofstream f;
      open_or_throw(f, side.string());
      f << sidecar_json(gen, g).dump(2) << '\n';
      out << "wrote " << gen_output << " and " << side.string() << "  known optimum " << g6(g.known_optimum) << '\n';
      return kExitOk;
    }

    if (*bench_cmd) {
      const Manifest m = read_manifest(resolve_input(input));
      const auto records = run_bench(m, jobs, log_dir);
      if (bench_output.empty()) {
        write_csv(records, out);
      } else {
        std::ofstream f;
        open_or_throw(f, bench_output);
        write_csv(records, f);
      }
      const auto failed = std::count_if(records.begin(), records.end(), [](const auto& r) { return r.status == "Error"; });
      if (failed > 0) err << failed << " of " << records.size() << " runs failed\n";
      return kExitOk;
    }

    if (*profile_cmd) {
      std::ifstream in(resolve_input(input));
      if (!in) throw std::runtime_error("cannot open " + input);
      const auto records = read_csv(in);
      if (!manifest_path.empty()) {
        const Manifest m = read_manifest(resolve_input(manifest_path));
        exclude.insert(exclude.end(), m.profile_exclude.begin(), m.profile_exclude.end());
      }
      const TimeTable table = time_table(records, metric == "bound" ? ProfileMetric::Bound : ProfileMetric::Total, exclude);
      if (table.instances.empty()) throw std::runtime_error("no records left to profile");
      const auto curves = perf_profile(table.times, table.solvers);
      write_profile_csv(curves, out);
      if (!svg_path.empty()) {
        std::ofstream f;
        open_or_throw(f, svg_path);
        write_profile_svg(curves, f, profile_title);
      }
      return kExitOk;
    }

    if (*lp_cmd) {
      std::ifstream in(resolve_input(input));
      if (!in) throw std::runtime_error("cannot open " + input);
      const LpModel lp = read_mps(in);
      LpOptions lo;
      lo.elastic_tol = elastic;
      const LpResult r = solve_lp(lp, lo);
      if (!r.warning.empty()) err << "warning: " << r.warning << '\n';
      if (solution_path.empty()) {
        write_solution(lp, r, out);
      } else {
        std::ofstream f;
        open_or_throw(f, solution_path);
        write_solution(lp, r, f);
      }
      return kExitOk;
    }
  } catch (const FactorizationFailed& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const EigFailed& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace adal
