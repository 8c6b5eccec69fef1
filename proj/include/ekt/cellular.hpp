#pragma once

// T-cellularity of X(fan) for a generic one-parameter subgroup v: distinguished
// faces, the cell order and the smoothness of quotient cones.

#include "ekt/fan.hpp"

#include <random>

namespace ekt {

struct CellStructure {
  IntVec v;
  std::vector<int> order;  // maximal cone indices, first cell first
  std::vector<Cone> tau;   // per maximal cone
  std::vector<int> cell_dim;
};

struct CellularityFailure {
  std::string kind;        // "cycle" | "nonsmooth"
  std::vector<int> cycle;  // cone indices i0 -> i1 -> ... -> i0
  int cone = -1;
  Cone face;
  std::vector<BigInt> invariant_factors;
};

struct CellularityReport {
  bool verdict = false;
  bool genericity_ok = true;
  std::optional<CellStructure> structure;
  std::optional<CellularityFailure> failure;
};

struct CellOrder {
  std::vector<int> order;  // empty when a cycle exists
  std::vector<int> cycle;
  bool ok() const { return cycle.empty(); }
};

/// First (cone, ray) whose barycentric coefficient vanishes, if any.
inline std::optional<std::pair<int, int>> genericity_violation(const Fan& f, const IntVec& v) {
  if (v.size() != f.rank) throw InputError("generic vector has the wrong length");
  for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
    auto c = barycentric(f, i, v);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] == 0) return std::make_pair(static_cast<int>(i), f.max_cones[i].rays[k]);
  }
  return std::nullopt;
}

inline bool is_generic(const Fan& f, const IntVec& v) { return !genericity_violation(f, v); }

namespace detail {
inline void require_generic(const Fan& f, const IntVec& v) {
  if (auto bad = genericity_violation(f, v)) {
    const Cone& s = f.max_cones[bad->first];
    std::string face;
    for (int r : s.rays)
      if (r != bad->second) face += (face.empty() ? "" : ",") + std::to_string(r);
    throw InputError("v is not generic: it lies on the hyperplane spanned by rays {" + face + "} of maximal cone " +
                     std::to_string(bad->first));
  }
}
}  // namespace detail

/// Rays of the cone on which v has a negative coordinate.
inline Cone distinguished_face(const Fan& f, std::size_t cone_index, const IntVec& v) {
  detail::require_generic(f, v);
  auto c = barycentric(f, cone_index, v);
  Cone tau;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] < 0) tau.rays.push_back(f.max_cones[cone_index].rays[k]);
  return tau;
}

/// Topological order of i -> j whenever tau_i lies in sigma_j (i != j),
/// smallest index first among ready cones; otherwise a directed cycle.
inline CellOrder cell_order(const Fan& f, const std::vector<Cone>& tau) {
  const std::size_t m = f.max_cones.size();
  std::vector<std::vector<int>> out(m);
  std::vector<int> indeg(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && tau[i].is_face_of(f.max_cones[j])) {
        out[i].push_back(static_cast<int>(j));
        ++indeg[j];
      }
  CellOrder res;
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  std::vector<int> deg = indeg;
  for (std::size_t i = 0; i < m; ++i)
    if (deg[i] == 0) ready.push(static_cast<int>(i));
  while (!ready.empty()) {
    int i = ready.top();
    ready.pop();
    res.order.push_back(i);
    for (int j : out[i])
      if (--deg[j] == 0) ready.push(j);
  }
  if (res.order.size() == m) return res;
  // every unplaced node keeps a predecessor among unplaced nodes: walk backwards
  std::vector<bool> placed(m, false);
  for (int i : res.order) placed[i] = true;
  std::vector<std::vector<int>> in(m);
  for (std::size_t i = 0; i < m; ++i)
    for (int j : out[i]) in[j].push_back(static_cast<int>(i));
  int cur = 0;
  while (placed[cur]) ++cur;
  std::vector<int> pos(m, -1), walk;
  while (pos[cur] < 0) {
    pos[cur] = static_cast<int>(walk.size());
    walk.push_back(cur);
    for (int p : in[cur])
      if (!placed[p]) {
        cur = p;
        break;
      }
  }
  std::vector<int> cyc(walk.begin() + pos[cur], walk.end());
  std::reverse(cyc.begin(), cyc.end());  // predecessors were followed
  res.cycle = cyc;
  res.order.clear();
  return res;
}

inline CellOrder cell_order(const Fan& f, const IntVec& v) {
  detail::require_generic(f, v);
  std::vector<Cone> tau;
  for (std::size_t i = 0; i < f.max_cones.size(); ++i) tau.push_back(distinguished_face(f, i, v));
  return cell_order(f, tau);
}

/// Cellularity verdict for the pair (fan, v). Completeness is required unless
/// `require_complete` is false.
inline CellularityReport check_cellular(const Fan& f, const IntVec& v, bool require_complete = true) {
  detail::require_generic(f, v);
  if (require_complete && !is_complete(f)) throw InputError("fan is not complete");
  CellularityReport rep;
  CellStructure cs;
  cs.v = v;
  for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
    cs.tau.push_back(distinguished_face(f, i, v));
    cs.cell_dim.push_back(static_cast<int>(f.rank - cs.tau.back().dim()));
  }
  CellOrder ord = cell_order(f, cs.tau);
  if (!ord.ok()) {
    CellularityFailure fail;
    fail.kind = "cycle";
    fail.cycle = ord.cycle;
    rep.failure = fail;
    return rep;
  }
  cs.order = ord.order;
  for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
    const Cone& tau = cs.tau[i];
    std::vector<IntVec> basis;
    for (int r : tau.rays) basis.push_back(f.rays[r]);
    QuotientLattice q =
        quotient_lattice(f.rank, basis.empty() ? IntMatrix(f.rank, 0) : IntMatrix::from_columns(basis, f.rank));
    std::vector<IntVec> gens;
    for (int r : f.max_cones[i].rays)
      if (!tau.contains(r)) gens.push_back(primitive(q.apply(f.rays[r])));
    if (gens.empty()) continue;
    auto factors = smith_normal_form(IntMatrix::from_columns(gens, q.quot_rank)).invariant_factors();
    if (std::any_of(factors.begin(), factors.end(), [](const BigInt& d) { return d != 1; })) {
      CellularityFailure fail;
      fail.kind = "nonsmooth";
      fail.cone = static_cast<int>(i);
      fail.face = tau;
      fail.invariant_factors = factors;
      rep.failure = fail;
      return rep;
    }
  }
  rep.verdict = true;
  rep.structure = std::move(cs);
  return rep;
}

/// Per maximal cone i, the cones gamma with tau_i in gamma in sigma_i.
inline std::vector<std::vector<Cone>> cells(const Fan& f, const CellStructure& cs) {
  std::vector<std::vector<Cone>> out;
  for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
    std::vector<int> free;
    for (int r : f.max_cones[i].rays)
      if (!cs.tau[i].contains(r)) free.push_back(r);
    std::vector<Cone> cell;
    for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
      std::vector<int> rays = cs.tau[i].rays;
      for (std::size_t b = 0; b < free.size(); ++b)
        if (mask & (std::size_t{1} << b)) rays.push_back(free[b]);
      std::sort(rays.begin(), rays.end());
      cell.push_back(Cone{rays});
    }
    std::sort(cell.begin(), cell.end());
    out.push_back(std::move(cell));
  }
  return out;
}

/// A generic integer vector drawn deterministically from the seed: a positive
/// combination of the rays of a random maximal cone plus a small perturbation.
inline IntVec search_generic(const Fan& f, std::uint64_t seed, int attempts = 1000) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < attempts; ++t) {
    const Cone& s = f.max_cones[rng() % f.max_cones.size()];
    IntVec v(f.rank, 0);
    for (int r : s.rays) v = add(v, scale(f.rays[r], static_cast<std::int64_t>(1 + rng() % 7)));
    if (t > 0)
      for (auto& x : v) x += static_cast<std::int64_t>(rng() % 3) - 1;
    if (!is_zero(v) && is_generic(f, v)) return v;
  }
  throw Inconclusive("search_generic: no generic vector found");
}

}  // namespace ekt
