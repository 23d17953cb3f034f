#pragma once

// JSON instance format (indices are 1-based, objective in the user's sense):
//
//   {
//     "n": 3,
//     "sense": "max",                      // "min" | "max"
//     "offset": 0.0,                       // optional, default 0
//     "objective": [[1, 1, 1.0], [1, 2, 1.0]],
//     "constraints": [
//       {"triplets": [[1, 2, -0.5]], "rhs": 1.0, "sense": "le"},   // "le" | "eq"
//       {"triplets": [[1, 1, 1.0], [2, 2, 1.0]], "rhs": 1.0, "sense": "eq"}
//     ],
//     "nonneg_mask": [[1, 2], [2, 3]]      // optional
//   }
//
// Triplets (i, j, v) with i != j denote the symmetric pair (i,j),(j,i), each
// holding v. The reader keeps the relative order of constraints but moves
// all "le" rows in front of the "eq" rows.

#include "adal/general_sdp.hpp"

#include "json.hpp"

#include <filesystem>

namespace adal {

nlohmann::json sdp_to_json(const GeneralSdp& sdp);
GeneralSdp sdp_from_json(const nlohmann::json& j);

GeneralSdp read_sdp(const std::filesystem::path& path);
void write_sdp(const std::filesystem::path& path, const GeneralSdp& sdp);

/// Dense symmetric matrix as {"n": n, "rows": [[...], ...]}.
nlohmann::json symmat_to_json(const SymMat& x);
SymMat symmat_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

}  // namespace adal
