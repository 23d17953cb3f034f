#include "adal/sdp_json.hpp"

#include "adal/errors.hpp"

#include <fstream>
#include <iomanip>

namespace adal {

using nlohmann::json;

namespace {

json triplets_to_json(const SparseSymMat& a) {
  json arr = json::array();
  for (const auto& e : a.entries()) arr.push_back({e.row + 1, e.col + 1, e.value});
  return arr;
}

SparseSymMat triplets_from_json(const json& arr, int n, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": triplets must be an array");
  std::vector<SymEntry> entries;
  entries.reserve(arr.size());
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 3) throw ParseError(where + ": each triplet must be [i, j, value]");
    const int i = t[0].get<int>();
    const int j = t[1].get<int>();
    if (i < 1 || j < 1 || i > n || j > n)
      throw ParseError(where + ": index (" + std::to_string(i) + "," + std::to_string(j) + ") outside 1.." +
                       std::to_string(n));
    entries.push_back({i - 1, j - 1, t[2].get<double>()});
  }
  try {
    return SparseSymMat(n, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace

json sdp_to_json(const GeneralSdp& sdp) {
  json j;
  j["n"] = sdp.n();
  j["sense"] = sdp.sense() == Sense::Max ? "max" : "min";
  j["offset"] = sdp.offset();
  j["objective"] = triplets_to_json(sdp.user_objective());
  json cons = json::array();
  for (const auto& c : sdp.constraints()) {
    cons.push_back({{"triplets", triplets_to_json(c.matrix)},
                    {"rhs", c.rhs},
                    {"sense", c.sense == RowSense::Le ? "le" : "eq"}});
  }
  j["constraints"] = std::move(cons);
  json mask = json::array();
  for (const auto& p : sdp.nonneg_mask()) mask.push_back({p.row + 1, p.col + 1});
  j["nonneg_mask"] = std::move(mask);
  return j;
}

GeneralSdp sdp_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("instance must be a JSON object");
    if (!j.contains("n")) throw ParseError("missing field \"n\"");
    const int n = j.at("n").get<int>();
    if (n < 1) throw ParseError("\"n\" must be >= 1");
    const std::string sense_text = j.value("sense", std::string("min"));
    Sense sense;
    if (sense_text == "min")
      sense = Sense::Min;
    else if (sense_text == "max")
      sense = Sense::Max;
    else
      throw ParseError("\"sense\" must be \"min\" or \"max\"");
    const double offset = j.value("offset", 0.0);
    SparseSymMat objective =
        j.contains("objective") ? triplets_from_json(j.at("objective"), n, "objective") : SparseSymMat(n, {});

    std::vector<Constraint> le;
    std::vector<Constraint> eq;
    if (j.contains("constraints")) {
      const auto& arr = j.at("constraints");
      if (!arr.is_array()) throw ParseError("\"constraints\" must be an array");
      for (std::size_t k = 0; k < arr.size(); ++k) {
        const auto& c = arr[k];
        const std::string where = "constraint " + std::to_string(k + 1);
        const std::string s = c.value("sense", std::string("eq"));
        Constraint con{triplets_from_json(c.at("triplets"), n, where), c.at("rhs").get<double>(), RowSense::Eq};
        if (s == "le") {
          con.sense = RowSense::Le;
          le.push_back(std::move(con));
        } else if (s == "eq") {
          eq.push_back(std::move(con));
        } else {
          throw ParseError(where + ": sense must be \"le\" or \"eq\"");
        }
      }
    }
    le.insert(le.end(), std::make_move_iterator(eq.begin()), std::make_move_iterator(eq.end()));

    std::vector<Position> mask;
    if (j.contains("nonneg_mask")) {
      for (const auto& p : j.at("nonneg_mask")) {
        const int r = p.at(0).get<int>();
        const int c = p.at(1).get<int>();
        if (r < 1 || c < 1 || r > n || c > n) throw ParseError("nonneg_mask position outside 1..n");
        mask.push_back({r - 1, c - 1});
      }
    }
    return GeneralSdp(n, objective, sense, std::move(le), std::move(mask), offset);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  }
}

GeneralSdp read_sdp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return sdp_from_json(j);
}

void write_sdp(const std::filesystem::path& path, const GeneralSdp& sdp) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17) << sdp_to_json(sdp).dump() << '\n';
}

json symmat_to_json(const SymMat& x) {
  json rows = json::array();
  for (int i = 0; i < x.n(); ++i) {
    json row = json::array();
    for (int k = 0; k < x.n(); ++k) row.push_back(x(i, k));
    rows.push_back(std::move(row));
  }
  return {{"n", x.n()}, {"rows", std::move(rows)}};
}

SymMat symmat_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& rows = j.at("rows");
    if (n < 1 || rows.size() != static_cast<std::size_t>(n)) throw ParseError("matrix rows do not match n");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      if (rows[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n))
        throw ParseError("matrix row " + std::to_string(i + 1) + " has wrong length");
      for (int k = 0; k < n; ++k) m(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
    }
    return SymMat::from_dense(m);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed matrix: ") + e.what());
  }
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

}  // namespace adal
