#pragma once

// Simplicial fans in N = Z^n: faces, walls, completeness, smoothness and
// star quotients.

#include "ekt/intlat.hpp"

#include <nlohmann/json.hpp>

#include <compare>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace ekt {

/// A face of a simplicial fan, named by its sorted ray indices.
struct Cone {
  std::vector<int> rays;

  std::size_t dim() const { return rays.size(); }
  bool contains(int ray) const { return std::binary_search(rays.begin(), rays.end(), ray); }
  bool is_face_of(const Cone& other) const {
    return std::includes(other.rays.begin(), other.rays.end(), rays.begin(), rays.end());
  }
  auto operator<=>(const Cone&) const = default;
};

inline Cone intersect(const Cone& a, const Cone& b) {
  Cone c;
  std::set_intersection(a.rays.begin(), a.rays.end(), b.rays.begin(), b.rays.end(),
                        std::back_inserter(c.rays));
  return c;
}

struct Fan {
  std::size_t rank = 0;
  std::vector<IntVec> rays;
  std::vector<Cone> max_cones;
  std::optional<std::string> name;
  std::vector<std::string> warnings;  // e.g. primitivized input rays

  std::size_t num_max_cones() const { return max_cones.size(); }

  /// Columns are the rays of the cone, in cone order.
  IntMatrix ray_matrix(const Cone& c) const {
    std::vector<IntVec> cols;
    for (int r : c.rays) cols.push_back(rays[r]);
    return IntMatrix::from_columns(cols, rank);
  }
};

/// Fan axioms and structural checks. Violations are data, not errors.
struct FanViolation {
  std::string kind;  // "duplicate_ray" | "duplicate_cone" | "not_a_face"
  std::vector<int> items;
  std::string detail;
  std::optional<IntVec> witness;
};

struct ValidationReport {
  std::vector<FanViolation> violations;
  bool valid() const { return violations.empty(); }
};

struct Wall {
  Cone face;
  int left = 0;
  int right = 0;
  IntVec character;  // primitive, lexicographically positive, orthogonal to face
};

namespace detail {

inline Cone make_cone(std::vector<int> rays) {
  std::sort(rays.begin(), rays.end());
  return Cone{std::move(rays)};
}

// Is x in the closed cone spanned by the (independent, full) columns? Also
// reports whether some coefficient outside `keep` is positive.
inline std::optional<std::vector<Rational>> coordinates(const Fan& f, const Cone& c, const std::vector<Rational>& v) {
  return solve_rational(f.ray_matrix(c), v);
}

// Exact search for a linear functional l with l = 0 on `common`, l >= 1 on
// `pos` and l <= -1 on `neg`. The feasible set is pointed (the constraint
// normals span Q^n), so it is nonempty iff some vertex exists; vertices are
// enumerated by choosing which inequalities are tight.
inline std::optional<std::vector<Rational>> find_separator(std::size_t n, const std::vector<IntVec>& common,
                                                           const std::vector<IntVec>& pos,
                                                           const std::vector<IntVec>& neg) {
  struct Ineq {
    IntVec normal;
    int sign;  // +1: l.x >= 1, -1: l.x <= -1
  };
  std::vector<Ineq> ineqs;
  for (const auto& p : pos) ineqs.push_back({p, 1});
  for (const auto& q : neg) ineqs.push_back({q, -1});
  const std::size_t need = n - common.size();
  auto feasible = [&](const std::vector<Rational>& l) {
    for (const auto& e : common) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += l[k] * e[k];
      if (s != 0) return false;
    }
    for (const auto& q : ineqs) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += l[k] * q.normal[k];
      if (q.sign > 0 ? s < 1 : s > -1) return false;
    }
    return true;
  };
  if (need == 0) {
    std::vector<Rational> zero(n);
    if (ineqs.empty()) return zero;
    return std::nullopt;
  }
  std::vector<int> pick(need);
  for (std::size_t i = 0; i < need; ++i) pick[i] = static_cast<int>(i);
  if (need > ineqs.size()) return std::nullopt;
  while (true) {
    IntMatrix a(n, n);
    std::vector<Rational> b(n);
    for (std::size_t i = 0; i < common.size(); ++i)
      for (std::size_t k = 0; k < n; ++k) a(i, k) = common[i][k];
    for (std::size_t t = 0; t < need; ++t) {
      const auto& q = ineqs[pick[t]];
      for (std::size_t k = 0; k < n; ++k) a(common.size() + t, k) = q.normal[k];
      b[common.size() + t] = q.sign;
    }
    if (auto l = solve_rational(a, b); l && feasible(*l)) return l;
    // next combination
    int i = static_cast<int>(need) - 1;
    while (i >= 0 && pick[i] == static_cast<int>(ineqs.size() - need + i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (std::size_t j = i + 1; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  return std::nullopt;
}

}  // namespace detail

/// Parse the JSON fan format {"rank", "rays", "max_cones", "name"?}.
inline Fan parse_fan(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("fan document must be a JSON object");
  for (const char* key : {"rank", "rays", "max_cones"})
    if (!doc.contains(key)) throw InputError(std::string("fan document lacks \"") + key + "\"");
  Fan f;
  try {
    long long rank = doc.at("rank").get<long long>();
    if (rank < 1) throw InputError("fan rank must be positive");
    f.rank = static_cast<std::size_t>(rank);
    for (const auto& r : doc.at("rays")) {
      IntVec v = r.get<IntVec>();
      if (v.size() != f.rank) throw InputError("ray has wrong length");
      if (is_zero(v)) throw InputError("zero ray");
      IntVec p = primitive(v);
      if (p != v)
        f.warnings.push_back("ray " + std::to_string(f.rays.size()) + " was not primitive and has been primitivized");
      f.rays.push_back(std::move(p));
    }
    for (const auto& c : doc.at("max_cones")) {
      std::vector<int> idx = c.get<std::vector<int>>();
      for (int i : idx)
        if (i < 0 || static_cast<std::size_t>(i) >= f.rays.size()) throw InputError("cone refers to unknown ray");
      Cone cone = detail::make_cone(idx);
      if (std::adjacent_find(cone.rays.begin(), cone.rays.end()) != cone.rays.end())
        throw InputError("cone lists a ray twice");
      if (cone.dim() != f.rank)
        throw InputError("maximal cone of size " + std::to_string(cone.dim()) + " in a rank " +
                         std::to_string(f.rank) + " fan: only pure simplicial fans are supported");
      if (determinant(f.ray_matrix(cone)).is_zero())
        throw InputError("maximal cone is not full-dimensional simplicial");
      f.max_cones.push_back(std::move(cone));
    }
    if (doc.contains("name") && !doc.at("name").is_null()) f.name = doc.at("name").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed fan document: ") + e.what());
  }
  if (f.max_cones.empty()) throw InputError("fan has no maximal cones");
  return f;
}

inline Fan parse_fan(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("fan document is not JSON: ") + e.what());
  }
  return parse_fan(doc);
}

inline nlohmann::json to_json(const Fan& f) {
  nlohmann::json j;
  j["rank"] = f.rank;
  j["rays"] = f.rays;
  nlohmann::json cones = nlohmann::json::array();
  for (const auto& c : f.max_cones) cones.push_back(c.rays);
  j["max_cones"] = cones;
  if (f.name) j["name"] = *f.name;
  return j;
}

inline ValidationReport validate_fan(const Fan& f) {
  ValidationReport rep;
  for (std::size_t a = 0; a < f.rays.size(); ++a)
    for (std::size_t b = a + 1; b < f.rays.size(); ++b)
      if (f.rays[a] == f.rays[b])
        rep.violations.push_back({"duplicate_ray", {int(a), int(b)}, "rays coincide", std::nullopt});
  for (std::size_t i = 0; i < f.max_cones.size(); ++i)
    for (std::size_t j = i + 1; j < f.max_cones.size(); ++j) {
      const Cone& si = f.max_cones[i];
      const Cone& sj = f.max_cones[j];
      if (si == sj) {
        rep.violations.push_back({"duplicate_cone", {int(i), int(j)}, "maximal cone listed twice", std::nullopt});
        continue;
      }
      Cone common = intersect(si, sj);
      std::vector<IntVec> eq, pos, neg;
      for (int r : common.rays) eq.push_back(f.rays[r]);
      for (int r : si.rays)
        if (!common.contains(r)) pos.push_back(f.rays[r]);
      for (int r : sj.rays)
        if (!common.contains(r)) neg.push_back(f.rays[r]);
      if (detail::find_separator(f.rank, eq, pos, neg)) continue;
      FanViolation v{"not_a_face", {int(i), int(j)}, "intersection of the two cones is not their common face",
                     std::nullopt};
      // witness: a point of one cone lying in the other beyond the common face
      auto try_point = [&](const IntVec& p, const Cone& host) -> bool {
        std::vector<Rational> pv(p.begin(), p.end());
        auto c = detail::coordinates(f, host, pv);
        if (!c) return false;
        bool inside = true, beyond = false;
        for (std::size_t k = 0; k < host.rays.size(); ++k) {
          if ((*c)[k] < 0) inside = false;
          if ((*c)[k] > 0 && !common.contains(host.rays[k])) beyond = true;
        }
        return inside && beyond;
      };
      std::vector<std::pair<IntVec, const Cone*>> candidates;
      IntVec sum_j(f.rank, 0), sum_i(f.rank, 0);
      for (const auto& r : neg) {
        candidates.emplace_back(r, &si);
        sum_j = add(sum_j, r);
      }
      for (const auto& r : pos) {
        candidates.emplace_back(r, &sj);
        sum_i = add(sum_i, r);
      }
      candidates.emplace_back(sum_j, &si);
      candidates.emplace_back(sum_i, &sj);
      for (const auto& [p, host] : candidates)
        if (!is_zero(p) && try_point(p, *host)) {
          v.witness = p;
          break;
        }
      rep.violations.push_back(std::move(v));
    }
  return rep;
}

/// Every cone of the fan (all faces of maximal cones, including the origin), sorted.
inline std::vector<Cone> all_cones(const Fan& f) {
  std::set<Cone> out;
  for (const auto& s : f.max_cones) {
    const std::size_t k = s.rays.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      Cone c;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (std::size_t{1} << b)) c.rays.push_back(s.rays[b]);
      out.insert(std::move(c));
    }
  }
  return {out.begin(), out.end()};
}

/// Primitive lexicographically positive generator of face^perp in M, for a
/// face of dimension rank - 1.
inline IntVec wall_character(const Fan& f, const Cone& face) {
  std::vector<IntVec> rows;
  for (int r : face.rays) rows.push_back(f.rays[r]);
  IntMatrix k = kernel_basis(rows.empty() ? IntMatrix(0, f.rank) : IntMatrix::from_rows(rows, f.rank));
  if (k.cols() != 1) throw InputError("wall_character: face does not have codimension one");
  IntVec u = primitive(k.column_i64(0));
  return lex_positive(u) ? u : negate(u);
}

namespace detail {
inline std::map<Cone, std::vector<int>> facet_incidence(const Fan& f) {
  std::map<Cone, std::vector<int>> inc;
  for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
    const auto& s = f.max_cones[i].rays;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Cone face;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (k != drop) face.rays.push_back(s[k]);
      inc[face].push_back(static_cast<int>(i));
    }
  }
  return inc;
}
}  // namespace detail

/// Walls in sorted (face) order.
inline std::vector<Wall> walls(const Fan& f) {
  std::vector<Wall> out;
  for (const auto& [face, cones] : detail::facet_incidence(f)) {
    if (cones.size() != 2) continue;
    Wall w;
    w.face = face;
    w.left = std::min(cones[0], cones[1]);
    w.right = std::max(cones[0], cones[1]);
    w.character = wall_character(f, face);
    out.push_back(std::move(w));
  }
  return out;
}

/// |fan| = N_R, for a valid pure simplicial fan: every facet of a maximal
/// cone lies in exactly two maximal cones and the wall graph is connected.
inline bool is_complete(const Fan& f) {
  if (f.max_cones.empty()) return false;
  const auto inc = detail::facet_incidence(f);
  std::vector<std::vector<int>> adj(f.max_cones.size());
  for (const auto& [face, cones] : inc) {
    if (cones.size() != 2) return false;
    adj[cones[0]].push_back(cones[1]);
    adj[cones[1]].push_back(cones[0]);
  }
  std::vector<bool> seen(f.max_cones.size(), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    int c = q.front();
    q.pop();
    for (int d : adj[c])
      if (!seen[d]) {
        seen[d] = true;
        ++count;
        q.push(d);
      }
  }
  return count == f.max_cones.size();
}

/// Coordinates of v in the basis of rays of a maximal cone (cone ray order).
inline std::vector<Rational> barycentric(const Fan& f, std::size_t cone_index, const std::vector<Rational>& v) {
  if (cone_index >= f.max_cones.size()) throw InputError("barycentric: cone index out of range");
  auto c = solve_rational(f.ray_matrix(f.max_cones[cone_index]), v);
  if (!c) throw InputError("barycentric: cone is not full-dimensional");
  return *c;
}

inline std::vector<Rational> barycentric(const Fan& f, std::size_t cone_index, const IntVec& v) {
  return barycentric(f, cone_index, std::vector<Rational>(v.begin(), v.end()));
}

/// Do the primitivized generators extend to a basis of Z^ambient_rank?
inline bool is_smooth_cone(const std::vector<IntVec>& generators, std::size_t ambient_rank) {
  if (generators.empty()) return true;
  std::vector<IntVec> prim;
  for (const auto& g : generators) prim.push_back(primitive(g));
  IntMatrix m = IntMatrix::from_columns(prim, ambient_rank);
  if (rank(m) != prim.size()) throw InputError("is_smooth_cone: generators are dependent");
  for (const auto& d : smith_normal_form(m).invariant_factors())
    if (d != 1) return false;
  return true;
}

inline bool is_smooth_cone(const Fan& f, const Cone& c) {
  std::vector<IntVec> gens;
  for (int r : c.rays) gens.push_back(f.rays[r]);
  return is_smooth_cone(gens, f.rank);
}

/// Smooth in the quotient lattice: generators are projected, then primitivized.
inline bool is_smooth_cone(const std::vector<IntVec>& generators, const QuotientLattice& lat) {
  std::vector<IntVec> proj;
  for (const auto& g : generators) {
    IntVec p = lat.apply(g);
    if (is_zero(p)) throw InputError("is_smooth_cone: generator vanishes in the quotient");
    proj.push_back(p);
  }
  return is_smooth_cone(proj, lat.quot_rank);
}

inline bool is_smooth_fan(const Fan& f) {
  for (const auto& c : f.max_cones)
    if (!is_smooth_cone(f, c)) return false;
  return true;
}

/// The projected maximal cones of star(tau) in N / N_tau.
struct StarQuotient {
  Cone tau;
  QuotientLattice lattice;
  std::vector<int> cones;                      // maximal cones containing tau
  std::vector<std::vector<IntVec>> generators;  // per cone: primitivized images of rays not in tau
};

inline StarQuotient star_quotient(const Fan& f, const Cone& tau) {
  StarQuotient sq;
  sq.tau = tau;
  std::vector<IntVec> basis;
  for (int r : tau.rays) basis.push_back(f.rays[r]);
  sq.lattice = quotient_lattice(f.rank, basis.empty() ? IntMatrix(f.rank, 0) : IntMatrix::from_columns(basis, f.rank));
  for (std::size_t i = 0; i < f.max_cones.size(); ++i) {
    const Cone& s = f.max_cones[i];
    if (!tau.is_face_of(s)) continue;
    sq.cones.push_back(static_cast<int>(i));
    std::vector<IntVec> gens;
    for (int r : s.rays)
      if (!tau.contains(r)) gens.push_back(primitive(sq.lattice.apply(f.rays[r])));
    sq.generators.push_back(std::move(gens));
  }
  if (sq.cones.empty()) throw InputError("star_quotient: tau is not a face of any maximal cone");
  return sq;
}

}  // namespace ekt
