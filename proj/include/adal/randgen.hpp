#pragma once

#include "adal/general_sdp.hpp"
#include "adal/solver.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>

namespace adal {

/// The drawn constraint matrices stayed linearly dependent after all retries.
class RankDeficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenSpec {
  int n = 10;
  int m = 20;
  /// Fraction of inequality rows; l = round(p * m).
  double p = 0.5;
  /// Stored upper-triangle nonzeros per constraint matrix.
  int density = 10;
  std::uint64_t seed = 1;

  int l() const;
  /// Throws std::invalid_argument.
  void validate() const;
};

/// Primal-dual optimal pair of a generated instance.
struct Witness {
  SymMat x;
  Vector slack;  // b_ineq - A_ineq(X), one per inequality
  Vector y;      // <= 0 on inequality rows
  SymMat z;
};

struct GeneratedSdp {
  GeneralSdp sdp;
  double known_optimum = 0.0;
  Witness witness;
  /// Draws rejected because the shifted Gram matrix was singular.
  int retries = 0;
};

/// Minimization instance with known optimum. X* has rank floor(n/2) and Z*
/// lives on the complementary eigenspace; roughly half of the inequality rows
/// are active (y_i < 0, zero slack), the rest have y_i = 0 and positive slack;
/// b = A(X*) + slack and C = A^T y* + Z*. Bit-identical for a fixed spec.
/// Throws RankDeficient.
GeneratedSdp generate(const GenSpec& spec);

/// Solver iterate at the witness (p = -y_ineq, S = 0).
SolverState witness_state(const Witness& w, double sigma = 1.0);

/// 64-bit FNV-1a over the IEEE-754 bit patterns, little-endian, column-major.
std::uint64_t fnv1a(const Matrix& a);
std::uint64_t fnv1a(const Vector& v);

/// {"generator": {...}, "known_optimum": v, "witness": {"x": hex, "y": hex, "z": hex, "slack": hex}}
nlohmann::json sidecar_json(const GenSpec& spec, const GeneratedSdp& g);
/// `instance.json` -> `instance.optimum.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& instance);

}  // namespace adal
