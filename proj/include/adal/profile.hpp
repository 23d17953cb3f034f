#pragma once

#include "adal/bench.hpp"

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace adal {

/// Marks a failed run in a time matrix.
inline constexpr double kFailed = std::numeric_limits<double>::infinity();

/// Times below this are raised to it before ratios are formed.
inline constexpr double kMinProfileTime = 1e-6;

struct ProfileCurve {
  std::string solver;
  /// (tau, rho) at every distinct finite ratio of this solver, tau
  /// ascending. rho is the fraction of instances with ratio <= tau; the last
  /// rho is the solved fraction. Empty when the solver solved nothing.
  std::vector<std::pair<double, double>> breakpoints;

  /// rho(tau) of the step function.
  double rho(double tau) const;
};

/// times[p][s]: time of solver s on instance p; non-finite or negative
/// entries are failures (ratio infinity). Instances that every solver failed
/// stay in the denominator.
std::vector<ProfileCurve> perf_profile(const std::vector<std::vector<double>>& times,
                                       const std::vector<std::string>& solvers);

enum class ProfileMetric {
  /// total_time_sec of converged runs
  Total,
  /// bound_time_sec of runs with a certified bound
  Bound,
};

struct TimeTable {
  std::vector<std::string> instances;
  std::vector<std::string> solvers;
  std::vector<std::vector<double>> times;  // kFailed where missing or failed
};

/// Groups records by instance and solver (first-appearance order), skipping
/// excluded instances.
TimeTable time_table(const std::vector<BenchRecord>& records, ProfileMetric metric,
                     const std::vector<std::string>& exclude = {});

/// solver,tau,rho lines.
void write_profile_csv(const std::vector<ProfileCurve>& curves, std::ostream& out);

/// Step plot with a log2 tau axis.
void write_profile_svg(const std::vector<ProfileCurve>& curves, std::ostream& out, const std::string& title = "");

}  // namespace adal
