#include "adal/bench.hpp"

#include "adal/errors.hpp"
#include "adal/graph.hpp"
#include "adal/sdp_json.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace adal {

namespace {

constexpr const char* kHeader =
    "instance,solver,status,objective,best_bound,r_p,r_d,iters,total_time_sec,bound_time_sec,postproc_time_sec,message";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// Splits one CSV record; quoted fields may span lines.
bool next_record(std::istream& in, std::vector<std::string>& fields, int& line) {
  fields.clear();
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      ++line;
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line);
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

double parse_real(const std::string& s, int line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ParseError("bad number `" + s + "`", line);
  return v;
}

const nlohmann::json* find(const nlohmann::json& run, const nlohmann::json& defaults, const char* key) {
  if (run.contains(key)) return &run.at(key);
  if (defaults.contains(key)) return &defaults.at(key);
  return nullptr;
}

std::string default_label(const RunSpec& s) {
  if (s.kind == InputKind::Sdp) return "adal";
  std::string label = to_string(s.relaxation);
  if (s.cuts > 0) label += "/" + std::to_string(s.cuts) + " cuts";
  return label;
}

RunSpec parse_run(const nlohmann::json& run, const nlohmann::json& defaults, const std::filesystem::path& base) {
  static const std::set<std::string> known = {"name",   "solver",         "path",     "kind",       "relaxation",
                                              "complement", "cuts",       "cut_seed", "eps",        "max_iter",
                                              "time_limit", "sigma0",     "postproc_every", "lp_tol", "postproc",
                                              "lp_external"};
  for (const auto* obj : {&run, &defaults})
    for (const auto& [key, value] : obj->items())
      if (!known.count(key)) throw ParseError("unknown manifest key `" + key + "`");

  RunSpec s;
  if (!run.contains("path")) throw ParseError("manifest run without a path");
  s.path = resolve_input(run.at("path").get<std::string>(), base);
  if (const auto* v = find(run, defaults, "kind")) {
    const auto k = v->get<std::string>();
    if (k != "sdp" && k != "graph") throw ParseError("kind must be sdp or graph, got `" + k + "`");
    s.kind = k == "sdp" ? InputKind::Sdp : InputKind::Graph;
  } else {
    s.kind = guess_kind(s.path);
  }
  if (const auto* v = find(run, defaults, "relaxation")) s.relaxation = parse_relaxation(v->get<std::string>());
  if (const auto* v = find(run, defaults, "complement")) s.complement = v->get<bool>();
  if (const auto* v = find(run, defaults, "cuts")) s.cuts = v->get<std::uint64_t>();
  if (const auto* v = find(run, defaults, "cut_seed")) s.cut_seed = v->get<std::uint64_t>();
  if (const auto* v = find(run, defaults, "eps")) s.config.eps = v->get<double>();
  if (const auto* v = find(run, defaults, "max_iter")) s.config.max_iter = v->get<int>();
  if (const auto* v = find(run, defaults, "time_limit")) s.config.time_limit_sec = v->get<double>();
  if (const auto* v = find(run, defaults, "sigma0")) s.config.sigma0 = v->get<double>();
  if (const auto* v = find(run, defaults, "postproc_every")) s.config.postprocess_every = v->get<int>();
  if (const auto* v = find(run, defaults, "lp_tol")) s.bound.tol = v->get<double>();
  if (const auto* v = find(run, defaults, "postproc")) s.postprocess = v->get<bool>();
  if (const auto* v = find(run, defaults, "lp_external")) s.bound.external_lp = v->get<std::string>();
  s.config.keep_history = false;
  s.config.validate();

  s.name = run.contains("name") ? run.at("name").get<std::string>() : s.path.stem().string();
  const auto* label = find(run, defaults, "solver");
  s.solver_label = label ? label->get<std::string>() : default_label(s);
  return s;
}

BenchRecord error_record(const RunSpec& spec, const std::string& message) {
  BenchRecord r;
  r.instance = spec.name;
  r.solver = spec.solver_label;
  r.status = "Error";
  r.objective = std::nan("");
  r.best_bound = std::nan("");
  r.message = message;
  return r;
}

}  // namespace

RunOutcome run_loaded(const RunSpec& spec, const GeneralSdp& sdp) {
  RunOutcome out;
  try {
    SolverResult r = solve(sdp, spec.config, spec.postprocess ? bound_callback(spec.bound) : BoundCallback{});
    out.record = make_record(spec.name, spec.solver_label, r);
    out.result = std::move(r);
  } catch (const std::exception& e) {
    out.record = error_record(spec, e.what());
  }
  return out;
}

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& r : records) {
    out << quote(r.instance) << ',' << quote(r.solver) << ',' << quote(r.status) << ',' << fmt(r.objective) << ','
        << fmt(r.best_bound) << ',' << fmt(r.r_p) << ',' << fmt(r.r_d) << ',' << r.iters << ',' << fmt(r.total_time_sec)
        << ',' << fmt(r.bound_time_sec) << ',' << fmt(r.postproc_time_sec) << ',' << quote(r.message) << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::vector<BenchRecord> out;
  std::vector<std::string> f;
  int line = 1;
  if (!next_record(in, f, line)) throw ParseError("empty CSV, expected a header", 1);
  std::string header;
  for (std::size_t i = 0; i < f.size(); ++i) header += (i ? "," : "") + f[i];
  if (header != kHeader) throw ParseError("unexpected CSV header", 1);
  for (int rec_line = line; next_record(in, f, line); rec_line = line) {
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != 12) throw ParseError("expected 12 fields, got " + std::to_string(f.size()), rec_line);
    BenchRecord r;
    r.instance = f[0];
    r.solver = f[1];
    r.status = f[2];
    r.objective = parse_real(f[3], rec_line);
    r.best_bound = parse_real(f[4], rec_line);
    r.r_p = parse_real(f[5], rec_line);
    r.r_d = parse_real(f[6], rec_line);
    r.iters = static_cast<long>(parse_real(f[7], rec_line));
    r.total_time_sec = parse_real(f[8], rec_line);
    r.bound_time_sec = parse_real(f[9], rec_line);
    r.postproc_time_sec = parse_real(f[10], rec_line);
    r.message = f[11];
    out.push_back(std::move(r));
  }
  return out;
}

InputKind guess_kind(const std::filesystem::path& path) {
  return path.extension() == ".json" ? InputKind::Sdp : InputKind::Graph;
}

GeneralSdp load_problem(const RunSpec& spec) {
  if (spec.kind == InputKind::Sdp) {
    GeneralSdp sdp = read_sdp(spec.path);
    if (spec.cuts > 0) throw std::invalid_argument("cuts apply to graph inputs only");
    return sdp;
  }
  Graph g = read_dimacs(spec.path).graph;
  if (spec.complement) g = complement(g);
  GeneralSdp sdp = build_relaxation(g, spec.relaxation);
  if (spec.cuts > 0) {
    if (spec.relaxation != Relaxation::ThetaBarPlus) throw std::invalid_argument("triangle cuts apply to thetabar+ only");
    sdp = append_inequalities(sdp, sample_triangle_cuts(g, spec.cuts, spec.cut_seed));
  }
  return sdp;
}

BoundCallback bound_callback(const BoundOptions& options) {
  return [options](const BoundRequest& req) -> std::optional<DualBound> { return recover_bound(req.sdp, req.z, options); };
}

BenchRecord make_record(const std::string& instance, const std::string& solver, const SolverResult& r) {
  BenchRecord rec;
  rec.instance = instance;
  rec.solver = solver;
  rec.status = to_string(r.status);
  rec.objective = r.primal_obj;
  rec.best_bound = r.best_bound ? r.best_bound->value : std::nan("");
  rec.r_p = r.r_p;
  rec.r_d = r.r_d;
  rec.iters = r.iterations;
  rec.total_time_sec = r.total_time + r.postproc_time;
  rec.bound_time_sec = r.best_bound ? r.best_bound_time_sec : 0.0;
  rec.postproc_time_sec = r.postproc_time;
  return rec;
}

RunOutcome run_one(const RunSpec& spec) {
  std::optional<GeneralSdp> sdp;
  try {
    sdp.emplace(load_problem(spec));
  } catch (const std::exception& e) {
    RunOutcome out;
    out.record = error_record(spec, e.what());
    return out;
  }
  return run_loaded(spec, *sdp);
}

Manifest parse_manifest(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ParseError("manifest must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "defaults" && key != "runs" && key != "profile_exclude")
      throw ParseError("unknown manifest key `" + key + "`");
  const nlohmann::json defaults = j.value("defaults", nlohmann::json::object());
  for (const char* k : {"name", "path"})
    if (defaults.contains(k)) throw ParseError(std::string("`") + k + "` cannot be a default");
  Manifest m;
  try {
    for (const auto& run : j.value("runs", nlohmann::json::array())) m.runs.push_back(parse_run(run, defaults, base_dir));
    for (const auto& name : j.value("profile_exclude", nlohmann::json::array()))
      m.profile_exclude.push_back(name.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  return m;
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_manifest(j, path.parent_path());
}

std::vector<BenchRecord> run_bench(const Manifest& manifest, int jobs, const std::filesystem::path& log_dir) {
  const std::size_t count = manifest.runs.size();
  if (!log_dir.empty()) std::filesystem::create_directories(log_dir);
  std::vector<BenchRecord> records(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      RunSpec spec = manifest.runs[i];
      if (!log_dir.empty()) spec.config.log_path = log_dir / (std::to_string(i) + "_" + spec.name + ".csv");
      records[i] = run_one(spec).record;
    }
  };
  const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), count));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return records;
}

std::filesystem::path data_dir() {
  const char* env = std::getenv("ADAL_DATA_DIR");
  return env ? std::filesystem::path(env) : std::filesystem::path();
}

std::filesystem::path resolve_input(const std::filesystem::path& path, const std::filesystem::path& base) {
  if (path.is_absolute() || std::filesystem::exists(path)) return path;
  if (!base.empty() && std::filesystem::exists(base / path)) return base / path;
  const auto dd = data_dir();
  if (!dd.empty() && std::filesystem::exists(dd / path)) return dd / path;
  return path;
}

nlohmann::json report_json(const RunSpec& spec, const RunOutcome& outcome) {
  const BenchRecord& r = outcome.record;
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
  nlohmann::json j = {{"instance", r.instance},
                      {"solver", r.solver},
                      {"input", spec.path.string()},
                      {"status", r.status},
                      {"objective", num(r.objective)},
                      {"best_bound", num(r.best_bound)},
                      {"r_p", num(r.r_p)},
                      {"r_d", num(r.r_d)},
                      {"iters", r.iters},
                      {"total_time_sec", r.total_time_sec},
                      {"bound_time_sec", r.bound_time_sec},
                      {"postproc_time_sec", r.postproc_time_sec},
                      {"config",
                       {{"eps", spec.config.eps},
                        {"max_iter", spec.config.max_iter},
                        {"time_limit", spec.config.time_limit_sec},
                        {"sigma0", spec.config.sigma0},
                        {"postproc_every", spec.config.postprocess_every},
                        {"postproc", spec.postprocess},
                        {"lp_tol", spec.bound.tol}}}};
  if (spec.kind == InputKind::Graph) {
    j["relaxation"] = to_string(spec.relaxation);
    j["complement"] = spec.complement;
    j["cuts"] = spec.cuts;
    j["cut_seed"] = spec.cut_seed;
  }
  if (!r.message.empty()) j["message"] = r.message;
  if (const auto& res = outcome.result) {
    j["dual_objective"] = num(res->dual_obj);
    j["delta"] = num(res->delta);
    j["factor_time_sec"] = res->factor_time;
    j["eig_time_sec"] = res->eig_time;
    j["bound_attempts"] = res->bound_attempts;
    j["bounds_certified"] = res->bounds_certified;
    if (const auto& b = res->best_bound) {
      j["bound"] = {{"status", to_string(b->status)},
                    {"value", num(b->value)},
                    {"iter", res->best_bound_iter},
                    {"time_sec", res->best_bound_time_sec},
                    {"lp_time_sec", b->wall_time_sec},
                    {"residual", b->feasibility_residual}};
    }
  }
  return j;
}

}  // namespace adal
