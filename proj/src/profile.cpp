#include "adal/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

namespace adal {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

int find_or_add(std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return static_cast<int>(it - names.begin());
  names.push_back(name);
  return static_cast<int>(names.size()) - 1;
}

}  // namespace

double ProfileCurve::rho(double tau) const {
  double r = 0.0;
  for (const auto& [t, v] : breakpoints) {
    if (t > tau) break;
    r = v;
  }
  return r;
}

std::vector<ProfileCurve> perf_profile(const std::vector<std::vector<double>>& times,
                                       const std::vector<std::string>& solvers) {
  const std::size_t ns = solvers.size();
  if (ns == 0) throw std::invalid_argument("performance profile needs at least one solver");
  if (times.empty()) throw std::invalid_argument("performance profile needs at least one instance");
  for (const auto& row : times)
    if (row.size() != ns) throw std::invalid_argument("time matrix row length differs from the number of solvers");

  const double np = static_cast<double>(times.size());
  std::vector<std::vector<double>> ratios(ns);
  for (const auto& row : times) {
    double best = kFailed;
    for (double t : row)
      if (std::isfinite(t) && t >= 0.0) best = std::min(best, std::max(t, kMinProfileTime));
    for (std::size_t s = 0; s < ns; ++s) {
      const double t = row[s];
      if (std::isfinite(t) && t >= 0.0) ratios[s].push_back(std::max(t, kMinProfileTime) / best);
    }
  }

  std::vector<ProfileCurve> curves(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    curves[s].solver = solvers[s];
    auto& r = ratios[s];
    std::sort(r.begin(), r.end());
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k + 1 < r.size() && r[k + 1] == r[k]) continue;
      curves[s].breakpoints.emplace_back(r[k], static_cast<double>(k + 1) / np);
    }
  }
  return curves;
}

TimeTable time_table(const std::vector<BenchRecord>& records, ProfileMetric metric,
                     const std::vector<std::string>& exclude) {
  TimeTable t;
  std::map<std::pair<int, int>, double> cell;
  for (const auto& r : records) {
    if (std::find(exclude.begin(), exclude.end(), r.instance) != exclude.end()) continue;
    const int p = find_or_add(t.instances, r.instance);
    const int s = find_or_add(t.solvers, r.solver);
    double v = kFailed;
    if (metric == ProfileMetric::Total && r.solved()) v = r.total_time_sec;
    if (metric == ProfileMetric::Bound && std::isfinite(r.best_bound)) v = r.bound_time_sec;
    if (!cell.emplace(std::pair{p, s}, v).second)
      throw std::invalid_argument("two records for instance `" + r.instance + "` and solver `" + r.solver + "`");
  }
  t.times.assign(t.instances.size(), std::vector<double>(t.solvers.size(), kFailed));
  for (const auto& [key, v] : cell) t.times[static_cast<std::size_t>(key.first)][static_cast<std::size_t>(key.second)] = v;
  return t;
}

void write_profile_csv(const std::vector<ProfileCurve>& curves, std::ostream& out) {
  out << "solver,tau,rho\n";
  char buf[64];
  for (const auto& c : curves)
    for (const auto& [tau, rho] : c.breakpoints) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", tau, rho);
      out << c.solver << ',' << buf << '\n';
    }
}

void write_profile_svg(const std::vector<ProfileCurve>& curves, std::ostream& out, const std::string& title) {
  constexpr double width = 640, height = 420, left = 60, right = 170, top = 40, bottom = 50;
  constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  double tau_max = 2.0;
  for (const auto& c : curves)
    if (!c.breakpoints.empty()) tau_max = std::max(tau_max, c.breakpoints.back().first * 1.1);
  const double span = std::log2(tau_max);
  auto x = [&](double tau) { return left + pw * std::log2(tau) / span; };
  auto y = [&](double rho) { return top + ph * (1.0 - rho); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    out << "<text x=\"" << num(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
        << xml_escape(title) << "</text>\n";

  out << "<g stroke=\"#ccc\" stroke-width=\"1\">\n";
  for (int k = 0; k <= 10; k += 2)
    out << "<line x1=\"" << num(left) << "\" x2=\"" << num(left + pw) << "\" y1=\"" << num(y(k / 10.0)) << "\" y2=\""
        << num(y(k / 10.0)) << "\"/>\n";
  const int tick_step = std::max(1, static_cast<int>(std::ceil(span / 8.0)));
  for (int e = 0; e <= static_cast<int>(span); e += tick_step)
    out << "<line x1=\"" << num(x(std::ldexp(1.0, e))) << "\" x2=\"" << num(x(std::ldexp(1.0, e))) << "\" y1=\""
        << num(top) << "\" y2=\"" << num(top + ph) << "\"/>\n";
  out << "</g>\n";

  out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 10; k += 2)
    out << "<text x=\"" << num(left - 6) << "\" y=\"" << num(y(k / 10.0) + 4) << "\" text-anchor=\"end\">"
        << num(k / 10.0).substr(0, 3) << "</text>\n";
  for (int e = 0; e <= static_cast<int>(span); e += tick_step)
    out << "<text x=\"" << num(x(std::ldexp(1.0, e))) << "\" y=\"" << num(top + ph + 16)
        << "\" text-anchor=\"middle\">" << static_cast<long long>(std::ldexp(1.0, e)) << "</text>\n";
  out << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(height - 10)
      << "\" text-anchor=\"middle\">&#964; (log scale)</text>\n";
  out << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(top + ph / 2) << ")\">&#961;(&#964;)</text>\n";

  for (std::size_t s = 0; s < curves.size(); ++s) {
    const char* color = palette[s % std::size(palette)];
    std::string d = "M" + num(x(1.0)) + "," + num(y(0.0));
    for (const auto& [tau, rho] : curves[s].breakpoints) {
      d += " H" + num(x(tau)) + " V" + num(y(rho));
    }
    d += " H" + num(x(tau_max));
    out << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    const double ly = top + 10 + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << num(left + pw + 12) << "\" x2=\"" << num(left + pw + 36) << "\" y1=\"" << num(ly)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(left + pw + 42) << "\" y=\"" << num(ly + 4) << "\">" << xml_escape(curves[s].solver)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace adal
