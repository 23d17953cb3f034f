#pragma once

#include "adal/dual_bound.hpp"
#include "adal/relaxations.hpp"
#include "adal/solver.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace adal {

/// One row of a benchmark table. Times are wall-clock seconds; best_bound is
/// NaN when no bound was certified. `status` is a SolverStatus name or
/// "Error" (then `message` says why).
struct BenchRecord {
  std::string instance;
  std::string solver;
  std::string status;
  double objective = 0.0;
  double best_bound = 0.0;
  double r_p = 0.0;
  double r_d = 0.0;
  long iters = 0;
  double total_time_sec = 0.0;
  /// When the best bound was found, measured from the start of the run.
  double bound_time_sec = 0.0;
  double postproc_time_sec = 0.0;
  std::string message;

  bool solved() const { return status == "Converged"; }
};

/// Header plus one line per record; reals are printed with %.17g so that
/// read_csv reproduces them bit for bit. Fields containing commas, quotes or
/// newlines are quoted.
void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);
std::vector<BenchRecord> read_csv(std::istream& in);

enum class InputKind { Sdp, Graph };

/// Everything needed to run one instance.
struct RunSpec {
  std::string name;
  std::string solver_label;
  std::filesystem::path path;
  InputKind kind = InputKind::Sdp;
  Relaxation relaxation = Relaxation::ThetaPlus;
  bool complement = false;
  std::uint64_t cuts = 0;
  std::uint64_t cut_seed = 1;
  SolverConfig config;
  bool postprocess = true;
  BoundOptions bound;
};

/// .json is an SDP instance, anything else a DIMACS graph.
InputKind guess_kind(const std::filesystem::path& path);

/// Reads the input and builds the problem (relaxation, complement, cuts).
/// Throws on unreadable or malformed input.
GeneralSdp load_problem(const RunSpec& spec);

/// Bound-recovery hook that runs recover_bound on every request.
BoundCallback bound_callback(const BoundOptions& options);

struct RunOutcome {
  BenchRecord record;
  std::optional<SolverResult> result;
};

/// Loads, solves and summarizes one run. Exceptions are caught and reported
/// as an "Error" record.
RunOutcome run_one(const RunSpec& spec);
/// Same with the problem already loaded; only solver exceptions are caught.
RunOutcome run_loaded(const RunSpec& spec, const GeneralSdp& sdp);

BenchRecord make_record(const std::string& instance, const std::string& solver, const SolverResult& result);

/// Batch description (JSON):
///
///   {
///     "defaults": {"eps": 1e-5, "relaxation": "theta+"},
///     "runs": [
///       {"path": "hamming6-2.clq", "complement": true},
///       {"path": "myciel4.col", "relaxation": "thetabar+", "cuts": 100, "solver": "100 cuts"}
///     ],
///     "profile_exclude": ["myciel4"]
///   }
///
/// Run keys: name, solver, path, kind ("sdp" | "graph"), relaxation,
/// complement, cuts, cut_seed, eps, max_iter, time_limit, sigma0,
/// postproc_every, lp_tol, postproc, lp_external. Relative paths are tried
/// against the manifest's directory, then against the data directory.
struct Manifest {
  std::vector<RunSpec> runs;
  std::vector<std::string> profile_exclude;
};

Manifest parse_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
Manifest read_manifest(const std::filesystem::path& path);

/// Runs every entry with up to `jobs` concurrent workers. Records come back
/// in manifest order whatever the scheduling. With a non-empty `log_dir`,
/// each run writes its iteration log to `<log_dir>/<index>_<name>.csv`; the
/// directory is created when missing.
std::vector<BenchRecord> run_bench(const Manifest& manifest, int jobs = 1,
                                   const std::filesystem::path& log_dir = {});

/// ADAL_DATA_DIR when set, otherwise empty.
std::filesystem::path data_dir();
/// `path` itself when it exists, otherwise `base / path`, then
/// `data_dir() / path`; returns `path` unchanged when none exists.
std::filesystem::path resolve_input(const std::filesystem::path& path, const std::filesystem::path& base = {});

/// Single-run report: the record fields plus bound details and timing.
nlohmann::json report_json(const RunSpec& spec, const RunOutcome& outcome);

}  // namespace adal
