#include "adal/errors.hpp"
#include "adal/lp.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <unordered_map>

namespace adal {

namespace {

std::string col_name(const LpModel& lp, int j) {
  return lp.col_names.empty() ? "c" + std::to_string(j + 1) : lp.col_names[static_cast<std::size_t>(j)];
}
std::string row_name(const LpModel& lp, int i) {
  return lp.row_names.empty() ? "r" + std::to_string(i + 1) : lp.row_names[static_cast<std::size_t>(i)];
}

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

double parse_num(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad number `" + s + "`", line);
  }
}

}  // namespace

void write_mps(const LpModel& lp, std::ostream& out, const std::string& name) {
  lp.validate();
  const int m = lp.num_rows();
  const int n = lp.num_cols();
  out << "NAME " << name << "\nOBJSENSE\n    MAX\nROWS\n N  obj\n";
  for (int i = 0; i < m; ++i) {
    const double lo = lp.row_lower[i];
    const double hi = lp.row_upper[i];
    const char* type = lo == hi ? "E" : std::isfinite(lo) ? "G" : std::isfinite(hi) ? "L" : "N";
    out << ' ' << type << "  " << row_name(lp, i) << '\n';
  }
  out << "COLUMNS\n";
  const Eigen::SparseMatrix<double, Eigen::ColMajor> ac = lp.a;
  for (int j = 0; j < n; ++j) {
    const std::string cn = col_name(lp, j);
    if (lp.cost[j] != 0.0) out << "    " << cn << " obj " << num(lp.cost[j]) << '\n';
    for (Eigen::SparseMatrix<double>::InnerIterator it(ac, j); it; ++it)
      out << "    " << cn << ' ' << row_name(lp, static_cast<int>(it.row())) << ' ' << num(it.value()) << '\n';
  }
  out << "RHS\n";
  for (int i = 0; i < m; ++i) {
    const double lo = lp.row_lower[i];
    const double hi = lp.row_upper[i];
    const double rhs = std::isfinite(lo) ? lo : hi;
    if (std::isfinite(rhs) && rhs != 0.0) out << "    RHS " << row_name(lp, i) << ' ' << num(rhs) << '\n';
  }
  out << "RANGES\n";
  for (int i = 0; i < m; ++i) {
    const double lo = lp.row_lower[i];
    const double hi = lp.row_upper[i];
    if (std::isfinite(lo) && std::isfinite(hi) && lo != hi) out << "    RNG " << row_name(lp, i) << ' ' << num(hi - lo) << '\n';
  }
  out << "BOUNDS\n";
  for (int j = 0; j < n; ++j) {
    const std::string cn = col_name(lp, j);
    const double lo = lp.col_lower[j];
    const double hi = lp.col_upper[j];
    if (lo == hi) {
      out << " FX BND " << cn << ' ' << num(lo) << '\n';
      continue;
    }
    if (std::isinf(lo) && std::isinf(hi)) {
      out << " FR BND " << cn << '\n';
      continue;
    }
    if (std::isinf(lo))
      out << " MI BND " << cn << '\n';
    else if (lo != 0.0)
      out << " LO BND " << cn << ' ' << num(lo) << '\n';
    if (std::isfinite(hi)) out << " UP BND " << cn << ' ' << num(hi) << '\n';
  }
  out << "ENDATA\n";
}

LpModel read_mps(std::istream& in) {
  enum class Section { None, Rows, Columns, Rhs, Ranges, Bounds, ObjSense };
  Section sec = Section::None;
  std::string objective;
  bool maximize = false;
  std::vector<std::string> row_names;
  std::vector<char> row_type;
  std::unordered_map<std::string, int> row_index;
  std::vector<std::string> col_names;
  std::unordered_map<std::string, int> col_index;
  std::vector<Eigen::Triplet<double>> trip;
  std::vector<double> cost;
  std::vector<double> rhs;
  std::vector<double> range;
  std::vector<char> has_range;
  std::vector<double> lo;
  std::vector<double> hi;

  auto find_row = [&](const std::string& r, int line) -> int {
    auto it = row_index.find(r);
    if (it == row_index.end()) throw ParseError("unknown row `" + r + "`", line);
    return it->second;
  };
  auto find_col = [&](const std::string& c, int line) -> int {
    auto it = col_index.find(c);
    if (it == col_index.end()) throw ParseError("unknown column `" + c + "`", line);
    return it->second;
  };

  std::string line;
  int line_no = 0;
  bool ended = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '*') continue;
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      const std::string& h = tok[0];
      if (h == "NAME") sec = Section::None;
      else if (h == "ROWS") sec = Section::Rows;
      else if (h == "COLUMNS") sec = Section::Columns;
      else if (h == "RHS") sec = Section::Rhs;
      else if (h == "RANGES") sec = Section::Ranges;
      else if (h == "BOUNDS") sec = Section::Bounds;
      else if (h == "OBJSENSE") {
        sec = Section::ObjSense;
        if (tok.size() > 1) maximize = tok[1] == "MAX" || tok[1] == "MAXIMIZE";
      } else if (h == "ENDATA") {
        ended = true;
        break;
      } else {
        throw ParseError("unknown MPS section `" + h + "`", line_no);
      }
      continue;
    }
    switch (sec) {
      case Section::ObjSense:
        maximize = tok[0] == "MAX" || tok[0] == "MAXIMIZE";
        break;
      case Section::Rows: {
        if (tok.size() != 2) throw ParseError("expected `<type> <row>`", line_no);
        const char t = tok[0][0];
        if (t == 'N' && objective.empty()) {
          objective = tok[1];
          break;
        }
        if (t != 'N' && t != 'E' && t != 'L' && t != 'G') throw ParseError("bad row type `" + tok[0] + "`", line_no);
        row_index.emplace(tok[1], static_cast<int>(row_names.size()));
        row_names.push_back(tok[1]);
        row_type.push_back(t);
        break;
      }
      case Section::Columns: {
        if (tok.size() != 3 && tok.size() != 5) throw ParseError("expected `<col> <row> <value> [<row> <value>]`", line_no);
        auto [it, inserted] = col_index.try_emplace(tok[0], static_cast<int>(col_names.size()));
        if (inserted) {
          col_names.push_back(tok[0]);
          cost.push_back(0.0);
        }
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = parse_num(tok[k + 1], line_no);
          if (tok[k] == objective)
            cost[static_cast<std::size_t>(it->second)] = v;
          else
            trip.emplace_back(find_row(tok[k], line_no), it->second, v);
        }
        break;
      }
      case Section::Rhs:
      case Section::Ranges: {
        if (rhs.empty()) {
          rhs.assign(row_names.size(), 0.0);
          range.assign(row_names.size(), 0.0);
          has_range.assign(row_names.size(), 0);
        }
        if (tok.size() != 3 && tok.size() != 5) throw ParseError("expected `<set> <row> <value> [<row> <value>]`", line_no);
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          if (tok[k] == objective) continue;
          const int r = find_row(tok[k], line_no);
          const double v = parse_num(tok[k + 1], line_no);
          if (sec == Section::Rhs) {
            rhs[static_cast<std::size_t>(r)] = v;
          } else {
            range[static_cast<std::size_t>(r)] = v;
            has_range[static_cast<std::size_t>(r)] = 1;
          }
        }
        break;
      }
      case Section::Bounds: {
        if (lo.empty()) {
          lo.assign(col_names.size(), 0.0);
          hi.assign(col_names.size(), kInf);
        }
        if (tok.size() < 3) throw ParseError("expected `<type> <set> <col> [value]`", line_no);
        const int c = find_col(tok[2], line_no);
        const std::string& t = tok[0];
        const auto cs = static_cast<std::size_t>(c);
        auto value = [&]() {
          if (tok.size() < 4) throw ParseError("bound `" + t + "` needs a value", line_no);
          return parse_num(tok[3], line_no);
        };
        if (t == "FR") {
          lo[cs] = -kInf;
          hi[cs] = kInf;
        } else if (t == "MI") {
          lo[cs] = -kInf;
        } else if (t == "PL") {
          hi[cs] = kInf;
        } else if (t == "LO") {
          lo[cs] = value();
        } else if (t == "UP") {
          hi[cs] = value();
        } else if (t == "FX") {
          lo[cs] = hi[cs] = value();
        } else {
          throw ParseError("unsupported bound type `" + t + "`", line_no);
        }
        break;
      }
      case Section::None:
        throw ParseError("data line outside a section", line_no);
    }
  }
  if (!ended) throw ParseError("missing ENDATA");

  const int m = static_cast<int>(row_names.size());
  const int n = static_cast<int>(col_names.size());
  if (rhs.empty()) {
    rhs.assign(static_cast<std::size_t>(m), 0.0);
    range.assign(static_cast<std::size_t>(m), 0.0);
    has_range.assign(static_cast<std::size_t>(m), 0);
  }
  if (lo.empty()) {
    lo.assign(static_cast<std::size_t>(n), 0.0);
    hi.assign(static_cast<std::size_t>(n), kInf);
  }
  LpModel lp;
  lp.a.resize(m, n);
  lp.a.setFromTriplets(trip.begin(), trip.end());
  lp.a.makeCompressed();
  lp.cost = Eigen::Map<const Vector>(cost.data(), n);
  if (!maximize) lp.cost = -lp.cost;
  lp.col_lower = Eigen::Map<const Vector>(lo.data(), n);
  lp.col_upper = Eigen::Map<const Vector>(hi.data(), n);
  lp.row_lower.resize(m);
  lp.row_upper.resize(m);
  for (int i = 0; i < m; ++i) {
    const auto is = static_cast<std::size_t>(i);
    const double b = rhs[is];
    const double r = range[is];
    double l = -kInf;
    double u = kInf;
    switch (row_type[is]) {
      case 'E':
        l = u = b;
        if (has_range[is]) (r >= 0 ? u : l) = b + r;
        break;
      case 'G':
        l = b;
        if (has_range[is]) u = b + std::abs(r);
        break;
      case 'L':
        u = b;
        if (has_range[is]) l = b - std::abs(r);
        break;
      default:
        break;
    }
    lp.row_lower[i] = l;
    lp.row_upper[i] = u;
  }
  lp.col_names = std::move(col_names);
  lp.row_names = std::move(row_names);
  return lp;
}

void write_solution(const LpModel& lp, const LpResult& result, std::ostream& out) {
  out << "status " << to_string(result.status) << '\n';
  if (result.status != LpStatus::Optimal) return;
  out << "objective " << num(result.objective) << '\n';
  for (int j = 0; j < lp.num_cols(); ++j) out << col_name(lp, j) << ' ' << num(result.x[j]) << '\n';
}

LpResult read_solution(const LpModel& lp, std::istream& in) {
  LpResult r;
  std::unordered_map<std::string, int> index;
  for (int j = 0; j < lp.num_cols(); ++j) index.emplace(col_name(lp, j), j);
  std::string line;
  int line_no = 0;
  bool have_status = false;
  r.x = Vector::Zero(lp.num_cols());
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError("expected `<name> <value>`", line_no);
    if (!have_status) {
      if (tok[0] != "status") throw ParseError("solution must start with a status line", line_no);
      if (tok[1] == "optimal") r.status = LpStatus::Optimal;
      else if (tok[1] == "infeasible") r.status = LpStatus::Infeasible;
      else if (tok[1] == "unbounded") r.status = LpStatus::Unbounded;
      else throw ParseError("unknown status `" + tok[1] + "`", line_no);
      have_status = true;
      continue;
    }
    if (tok[0] == "objective") continue;
    auto it = index.find(tok[0]);
    if (it == index.end()) throw ParseError("unknown column `" + tok[0] + "`", line_no);
    r.x[it->second] = parse_num(tok[1], line_no);
  }
  if (!have_status) throw ParseError("empty solution file");
  if (r.status == LpStatus::Optimal) r.objective = lp.cost.dot(r.x);
  return r;
}

LpResult solve_lp_external(const LpModel& lp, const std::string& command) {
  namespace fs = std::filesystem;
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("adal-lp-" + std::to_string(rd()) + std::to_string(rd()));
  fs::create_directories(dir);
  const fs::path model = dir / "model.mps";
  const fs::path sol = dir / "solution.txt";
  LpResult r;
  {
    std::ofstream out(model);
    write_mps(lp, out);
  }
  const std::string cmd = command + " '" + model.string() + "' '" + sol.string() + "'";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(sol);
  if (rc != 0 || !in) {
    r.status = LpStatus::Infeasible;
    r.warning = "external LP command failed (exit " + std::to_string(rc) + ")";
  } else {
    try {
      r = read_solution(lp, in);
      if (r.status == LpStatus::Optimal && max_violation(lp, r.x) > 1e-6) {
        r.status = LpStatus::Infeasible;
        r.warning = "external LP solution violates the constraints";
      }
    } catch (const ParseError& e) {
      r = LpResult{};
      r.warning = std::string("external LP solution unreadable: ") + e.what();
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return r;
}

}  // namespace adal
