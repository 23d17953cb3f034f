#include "adal/randgen.hpp"

#include "adal/errors.hpp"

#include "random.hpp"

#include <Eigen/QR>

#include <cmath>
#include <cstdio>
#include <cstring>

namespace adal {

namespace {

constexpr int kMaxRetries = 20;

Position upper_position(int n, std::uint64_t idx) {
  int i = 0;
  while (idx >= static_cast<std::uint64_t>(n - i)) {
    idx -= static_cast<std::uint64_t>(n - i);
    ++i;
  }
  return {i, i + static_cast<int>(idx)};
}

std::vector<Constraint> draw_constraints(const GenSpec& spec, std::mt19937_64& rng) {
  const int n = spec.n;
  const std::uint64_t pop = static_cast<std::uint64_t>(n) * (n + 1) / 2;
  std::vector<Constraint> out;
  out.reserve(static_cast<std::size_t>(spec.m));
  for (int i = 0; i < spec.m; ++i) {
    std::vector<SymEntry> entries;
    for (auto idx : detail::sample_distinct(rng, pop, static_cast<std::uint64_t>(spec.density))) {
      const Position p = upper_position(n, idx);
      entries.push_back({p.row, p.col, detail::normal(rng)});
    }
    out.push_back({SparseSymMat(n, std::move(entries)), 0.0, i < spec.l() ? RowSense::Le : RowSense::Eq});
  }
  return out;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t fnv1a(const double* data, Eigen::Index count) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Eigen::Index k = 0; k < count; ++k) {
    std::uint64_t bits;
    std::memcpy(&bits, data + k, sizeof bits);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (bits >> (8 * byte)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace

int GenSpec::l() const { return static_cast<int>(std::lround(p * m)); }

void GenSpec::validate() const {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (m < 0) throw std::invalid_argument("m must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const long long pop = static_cast<long long>(n) * (n + 1) / 2;
  if (m > pop) throw std::invalid_argument("m exceeds n(n+1)/2 = " + std::to_string(pop));
  if (density < 1 || density > pop)
    throw std::invalid_argument("density must lie in [1, " + std::to_string(pop) + "]");
}

GeneratedSdp generate(const GenSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const int m = spec.m;
  const int l = spec.l();
  std::mt19937_64 rng(spec.seed);

  std::vector<Constraint> cons;
  int retries = 0;
  for (;; ++retries) {
    if (retries > kMaxRetries)
      throw RankDeficient("constraint matrices linearly dependent after " + std::to_string(kMaxRetries) + " redraws");
    cons = draw_constraints(spec, rng);
    try {
      factorize_gram(GeneralSdp(n, SparseSymMat(n, {}), Sense::Min, cons));
      break;
    } catch (const FactorizationFailed&) {
    }
  }

  Matrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = detail::normal(rng);
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  const int rank = n / 2;
  Vector dx(n), dz(n);
  for (int k = 0; k < n; ++k) {
    const double v = detail::uniform(rng, 0.5, 1.5);
    dx[k] = k < rank ? v : 0.0;
    dz[k] = k < rank ? 0.0 : v;
  }
  Witness w;
  w.x = SymMat::from_dense(q * dx.asDiagonal() * q.transpose());
  w.z = SymMat::from_dense(q * dz.asDiagonal() * q.transpose());

  w.y = Vector::Zero(m);
  w.slack = Vector::Zero(l);
  for (int i = 0; i < l; ++i) {
    const bool active = detail::uniform01(rng) < 0.5;
    const double v = detail::uniform(rng, 0.5, 1.5);
    if (active)
      w.y[i] = -v;
    else
      w.slack[i] = v;
  }
  for (int i = l; i < m; ++i) w.y[i] = detail::normal(rng);

  const GeneralSdp shape(n, SparseSymMat(n, {}), Sense::Min, cons);
  Vector b = apply_A(shape, w.x);
  b.head(l) += w.slack;
  for (int i = 0; i < m; ++i) cons[static_cast<std::size_t>(i)].rhs = b[i];

  const SymMat c = apply_At(shape, w.y) + w.z;
  std::vector<SymEntry> ce;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i)
      if (c(i, j) != 0.0) ce.push_back({i, j, c(i, j)});

  GeneratedSdp out{GeneralSdp(n, SparseSymMat(n, std::move(ce)), Sense::Min, std::move(cons)), 0.0, std::move(w),
                   retries};
  out.known_optimum = inner(out.sdp.c(), out.witness.x);
  return out;
}

SolverState witness_state(const Witness& w, double sigma) {
  SolverState st;
  st.X = w.x;
  st.s = w.slack;
  st.y = w.y;
  st.Z = w.z;
  st.p = -w.y.head(w.slack.size());
  st.S = SymMat(w.x.n());
  st.sigma = sigma;
  return st;
}

std::uint64_t fnv1a(const Matrix& a) { return fnv1a(a.data(), a.size()); }
std::uint64_t fnv1a(const Vector& v) { return fnv1a(v.data(), v.size()); }

nlohmann::json sidecar_json(const GenSpec& spec, const GeneratedSdp& g) {
  return {{"generator",
           {{"n", spec.n}, {"m", spec.m}, {"l", spec.l()}, {"p", spec.p}, {"density", spec.density}, {"seed", spec.seed}}},
          {"known_optimum", g.known_optimum},
          {"witness",
           {{"x", hex(fnv1a(g.witness.x.dense()))},
            {"y", hex(fnv1a(g.witness.y))},
            {"z", hex(fnv1a(g.witness.z.dense()))},
            {"slack", hex(fnv1a(g.witness.slack))}}}};
}

std::filesystem::path sidecar_path(const std::filesystem::path& instance) {
  std::filesystem::path p = instance;
  p.replace_extension();
  p += ".optimum.json";
  return p;
}

}  // namespace adal
