#pragma once

// Equivariant K-rings of complete simplicial toric varieties: the wall
// congruence ring, piecewise Laurent polynomials, truncated ranks, a
// triangular basis and the Stanley-Reisner presentation.

#include "ekt/box.hpp"
#include "ekt/cellular.hpp"

namespace ekt {

/// A tuple of Laurent polynomials indexed by the maximal cones of a fan.
struct ConeTuple {
  std::vector<LaurentPoly> components;

  std::size_t size() const { return components.size(); }
  LaurentPoly& operator[](std::size_t i) { return components[i]; }
  const LaurentPoly& operator[](std::size_t i) const { return components[i]; }

  friend bool operator==(const ConeTuple& a, const ConeTuple& b) { return a.components == b.components; }
  friend ConeTuple operator+(ConeTuple a, const ConeTuple& b) {
    a.check(b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  }
  friend ConeTuple operator-(ConeTuple a, const ConeTuple& b) {
    a.check(b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
  }
  friend ConeTuple operator*(ConeTuple a, const ConeTuple& b) {
    a.check(b);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    return a;
  }
  friend ConeTuple operator*(const LaurentPoly& f, ConeTuple a) {
    for (auto& c : a.components) c *= f;
    return a;
  }

 private:
  void check(const ConeTuple& o) const {
    if (o.size() != size()) throw InputError("tuples of different lengths");
  }
};

using GkmElement = ConeTuple;
using PlpElement = ConeTuple;

inline ConeTuple constant_embedding(const Fan& fan, const LaurentPoly& f) {
  return ConeTuple{std::vector<LaurentPoly>(fan.max_cones.size(), f)};
}

namespace detail {
inline void check_tuple(const Fan& fan, const ConeTuple& t) {
  if (t.size() != fan.max_cones.size())
    throw InputError("tuple has " + std::to_string(t.size()) + " components but the fan has " +
                     std::to_string(fan.max_cones.size()) + " maximal cones");
  for (const auto& c : t.components)
    if (c.rank() != fan.rank) throw InputError("tuple component over a lattice of the wrong rank");
}
}  // namespace detail

struct WallFailure {
  std::size_t wall_index = 0;
  Wall wall;
  LaurentPoly difference;  // components[left] - components[right]
};

struct GkmReport {
  bool verdict = true;
  std::vector<WallFailure> failures;
};

inline GkmReport gkm_check(const Fan& fan, const GkmElement& t) {
  detail::check_tuple(fan, t);
  GkmReport rep;
  auto ws = walls(fan);
  for (std::size_t k = 0; k < ws.size(); ++k) {
    LaurentPoly diff = t[ws[k].left] - t[ws[k].right];
    if (!in_character_ideal(diff, ws[k].character)) {
      rep.verdict = false;
      rep.failures.push_back({k, ws[k], diff});
    }
  }
  return rep;
}

struct PlpWitness {
  Cone face;
  int cone_a = 0;
  int cone_b = 0;
};

struct PlpReport {
  bool verdict = true;
  std::optional<PlpWitness> witness;
};

/// Restrictions to every cone from all maximal cones containing it must agree.
inline PlpReport plp_check(const Fan& fan, const PlpElement& p) {
  detail::check_tuple(fan, p);
  PlpReport rep;
  for (const auto& face : all_cones(fan)) {
    std::optional<std::pair<int, RestrictedPoly>> first;
    for (std::size_t i = 0; i < fan.max_cones.size(); ++i) {
      if (!face.is_face_of(fan.max_cones[i])) continue;
      RestrictedPoly r = restrict(fan, p[i], face);
      if (!first) {
        first.emplace(static_cast<int>(i), std::move(r));
      } else if (!(r == first->second)) {
        rep.verdict = false;
        rep.witness = PlpWitness{face, first->first, static_cast<int>(i)};
        return rep;
      }
    }
  }
  return rep;
}

/// The wall congruence system of the fan: one slot per maximal cone.
inline CongruenceSystem gkm_system(const Fan& fan) {
  CongruenceSystem sys(fan.rank, fan.max_cones.size());
  for (const auto& w : walls(fan)) sys.add_congruence(w.left, w.right, w.character);
  return sys;
}

inline ConeTuple tuple_from_slots(std::vector<LaurentPoly> slots) { return ConeTuple{std::move(slots)}; }

/// Random members of the wall congruence ring supported in the box of radius d.
inline std::vector<GkmElement> random_members(const Fan& fan, std::int64_t d, std::size_t count,
                                              std::mt19937_64& rng) {
  CongruenceSystem sys = gkm_system(fan);
  Region box = Region::box(fan.rank, d);
  auto basis = sys.member_basis(box);
  std::vector<GkmElement> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(tuple_from_slots(sys.to_slots(box, random_combination(basis, rng))));
  return out;
}

/// Rank of (truncated members) / (augmentation ideal * truncated members) at radius d.
inline CongruenceSystem::QuotientRank box_rank(const Fan& fan, std::int64_t d) {
  return gkm_system(fan).quotient_rank(Region::box(fan.rank, d), augmentation_generators(fan.rank, d));
}

struct RankReport {
  std::size_t rank = 0;
  std::int64_t radius = 0;             // radius at which the value repeated
  std::vector<std::size_t> by_radius;  // ranks at radius 1, 2, ...
};

/// Ranks at radius 1, 2, ... until two successive radii agree.
inline RankReport ordinary_k_rank(const Fan& fan, std::int64_t max_radius = 4) {
  RankReport rep;
  for (std::int64_t d = 1; d <= max_radius; ++d) {
    rep.by_radius.push_back(box_rank(fan, d).rank());
    if (d >= 2 && rep.by_radius[d - 1] == rep.by_radius[d - 2]) {
      rep.rank = rep.by_radius.back();
      rep.radius = d;
      return rep;
    }
  }
  throw Inconclusive("ordinary_k_rank: no two successive radii up to " + std::to_string(max_radius) + " agree");
}

struct FiltrationBasis {
  std::vector<int> order;
  std::int64_t radius = 0;
  std::vector<GkmElement> elements;  // elements[p] belongs to order[p]
};

/// Product of 1 - e^{-u} over the walls joining cone i to cones placed before
/// it, with u negative on the ray of cone i off the wall.
inline LaurentPoly wall_euler_product(const Fan& fan, int cone, const std::vector<int>& earlier) {
  LaurentPoly prod = LaurentPoly::one(fan.rank);
  for (const auto& w : walls(fan)) {
    int other = w.left == cone ? w.right : (w.right == cone ? w.left : -1);
    if (other < 0 || std::find(earlier.begin(), earlier.end(), other) == earlier.end()) continue;
    int off = -1;
    for (int r : fan.max_cones[cone].rays)
      if (!w.face.contains(r)) off = r;
    IntVec u = dot(w.character, fan.rays[off]) < 0 ? w.character : negate(w.character);
    prod *= euler_class(u);
  }
  return prod;
}

/// Triangular family adapted to the cell order, solved inside the box of radius d.
inline std::optional<FiltrationBasis> build_filtration_basis(const Fan& fan, const CellStructure& cs,
                                                             std::int64_t d) {
  const std::size_t m = fan.max_cones.size();
  if (cs.order.size() != m) throw InputError("cell structure does not match the fan");
  CongruenceSystem sys = gkm_system(fan);
  Region box = Region::box(fan.rank, d);
  const auto rows = sys.constraint_rows(box);
  FiltrationBasis basis;
  basis.order = cs.order;
  basis.radius = d;
  basis.elements.push_back(constant_embedding(fan, LaurentPoly::one(fan.rank)));
  std::vector<int> pos(m);
  for (std::size_t p = 0; p < m; ++p) pos[cs.order[p]] = static_cast<int>(p);
  for (std::size_t p = 1; p < m; ++p) {
    const int cone = cs.order[p];
    std::vector<int> earlier(cs.order.begin(), cs.order.begin() + p);
    LaurentPoly diag = wall_euler_product(fan, cone, earlier);
    if (!box.contains(diag)) return std::nullopt;
    // unknowns: every slot placed after p, at every box point
    std::map<int, int> unknown;
    for (std::size_t s = 0; s < m; ++s)
      if (pos[s] > static_cast<int>(p))
        for (std::size_t i = 0; i < box.size(); ++i)
          unknown.emplace(sys.var(box, static_cast<int>(s), static_cast<int>(i)), 0);
    int next = 0;
    for (auto& [v, col] : unknown) col = next++;
    auto known_value = [&](int v) -> BigInt {
      int slot = v / static_cast<int>(box.size());
      if (slot != cone) return 0;
      return diag.coef(box.points()[v % box.size()]);
    };
    std::vector<std::vector<std::pair<int, BigInt>>> arows;
    std::vector<BigInt> rhs;
    for (const auto& row : rows) {
      std::vector<std::pair<int, BigInt>> a;
      BigInt b = 0;
      for (const auto& [v, c] : row) {
        auto it = unknown.find(v);
        if (it != unknown.end())
          a.emplace_back(it->second, c);
        else
          b -= c * known_value(v);
      }
      if (a.empty()) {
        if (!b.is_zero()) return std::nullopt;
        continue;
      }
      arows.push_back(std::move(a));
      rhs.push_back(std::move(b));
    }
    std::vector<LaurentPoly> comps(m, LaurentPoly(fan.rank));
    comps[cone] = diag;
    if (!arows.empty()) {
      IntMatrix a(arows.size(), unknown.size());
      for (std::size_t r = 0; r < arows.size(); ++r)
        for (const auto& [c, v] : arows[r]) a(r, c) = v;
      auto x = solve_integer(a, rhs);
      if (!x) return std::nullopt;
      for (const auto& [v, col] : unknown)
        comps[v / box.size()].add_term(box.points()[v % box.size()], (*x)[col]);
    }
    basis.elements.push_back(ConeTuple{std::move(comps)});
  }
  return basis;
}

/// Tries radius 1, 2, ... up to max_radius.
inline FiltrationBasis build_filtration_basis_auto(const Fan& fan, const CellStructure& cs,
                                                   std::int64_t max_radius = 4) {
  for (std::int64_t d = 1; d <= max_radius; ++d)
    if (auto b = build_filtration_basis(fan, cs, d)) return *b;
  throw Inconclusive("build_filtration_basis: no triangular family up to radius " + std::to_string(max_radius));
}

/// Coefficients c with t = sum c_p * elements[p], by back substitution along
/// the order; nullopt if some division is not exact.
inline std::optional<std::vector<LaurentPoly>> triangular_coefficients(const FiltrationBasis& basis,
                                                                       const GkmElement& t) {
  ConeTuple r = t;
  std::vector<LaurentPoly> coeffs;
  for (std::size_t p = 0; p < basis.order.size(); ++p) {
    const int cone = basis.order[p];
    auto c = exact_divide(r[cone], basis.elements[p][cone]);
    if (!c) return std::nullopt;
    r = r - (*c) * basis.elements[p];
    coeffs.push_back(std::move(*c));
  }
  for (const auto& comp : r.components)
    if (!comp.is_zero()) return std::nullopt;
  return coeffs;
}

struct GenerationReport {
  std::size_t samples = 0;
  std::size_t representable = 0;
  bool complete() const { return samples == representable; }
};

inline GenerationReport verify_generation(const Fan& fan, const FiltrationBasis& basis, std::int64_t d,
                                          std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GenerationReport rep;
  for (const auto& t : random_members(fan, d, samples, rng)) {
    ++rep.samples;
    if (triangular_coefficients(basis, t)) ++rep.representable;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Presentations by generators X_j (one per ray) over a coefficient ring.

template <class Coef>
struct Relation {
  std::string kind;          // "nonface" | "character"
  std::vector<int> support;  // rays of the non-face
  IntVec character;          // u for a character relation
  std::vector<std::pair<IntVec, Coef>> terms;  // X exponent vector, coefficient
};

template <class Coef>
struct Presentation {
  std::size_t num_generators = 0;
  std::vector<Relation<Coef>> relations;
};

/// Minimal subsets of rays that span no cone.
inline std::vector<std::vector<int>> minimal_nonfaces(const Fan& fan) {
  const std::size_t d = fan.rays.size();
  if (d > 24) throw InputError("too many rays for non-face enumeration");
  std::set<std::vector<int>> faces;
  for (const auto& c : all_cones(fan)) faces.insert(c.rays);
  std::vector<std::vector<int>> out;
  std::vector<std::uint32_t> masks;
  for (std::size_t size = 1; size <= std::min(d, fan.rank + 1); ++size) {
    std::vector<bool> sel(d, false);
    std::fill(sel.begin(), sel.begin() + size, true);
    std::vector<std::vector<int>> level;
    do {
      std::vector<int> s;
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < d; ++i)
        if (sel[i]) s.push_back(static_cast<int>(i)), mask |= 1u << i;
      if (faces.count(s)) continue;
      bool minimal = std::none_of(masks.begin(), masks.end(), [&](std::uint32_t mm) { return (mm & mask) == mm; });
      if (minimal) {
        level.push_back(s);
        masks.push_back(mask);
      }
    } while (std::prev_permutation(sel.begin(), sel.end()));
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

/// Non-face products prod_{j in F} (1 - X_j) and character relations
/// prod_j X_j^{<u, v_j>} - line(u) for the standard basis u of M.
template <class Coef, class One, class Neg, class Line>
Presentation<Coef> build_presentation(const Fan& fan, One one, Neg neg, Line line) {
  Presentation<Coef> pres;
  pres.num_generators = fan.rays.size();
  for (const auto& nf : minimal_nonfaces(fan)) {
    Relation<Coef> rel;
    rel.kind = "nonface";
    rel.support = nf;
    for (std::size_t mask = 0; mask < (std::size_t{1} << nf.size()); ++mask) {
      IntVec x(fan.rays.size(), 0);
      int bits = 0;
      for (std::size_t b = 0; b < nf.size(); ++b)
        if (mask & (std::size_t{1} << b)) x[nf[b]] = 1, ++bits;
      rel.terms.emplace_back(x, bits % 2 ? neg(one()) : one());
    }
    std::sort(rel.terms.begin(), rel.terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    pres.relations.push_back(std::move(rel));
  }
  for (std::size_t k = 0; k < fan.rank; ++k) {
    IntVec u(fan.rank, 0);
    u[k] = 1;
    Relation<Coef> rel;
    rel.kind = "character";
    rel.character = u;
    IntVec x(fan.rays.size());
    for (std::size_t j = 0; j < fan.rays.size(); ++j) x[j] = dot(u, fan.rays[j]);
    rel.terms.emplace_back(x, one());
    rel.terms.emplace_back(IntVec(fan.rays.size(), 0), neg(line(u)));
    pres.relations.push_back(std::move(rel));
  }
  return pres;
}

inline void require_smooth_complete(const Fan& fan) {
  if (!is_smooth_fan(fan)) throw InputError("presentation requires a smooth fan");
  if (!is_complete(fan)) throw InputError("presentation requires a complete fan");
}

inline Presentation<LaurentPoly> sr_presentation(const Fan& fan) {
  require_smooth_complete(fan);
  const std::size_t n = fan.rank;
  return build_presentation<LaurentPoly>(
      fan, [n] { return LaurentPoly::one(n); }, [](const LaurentPoly& f) { return -f; },
      [](const IntVec& u) { return LaurentPoly::monomial(u); });
}

/// m[sigma][j]: the dual basis element of ray j on a smooth maximal cone
/// (zero for rays outside the cone).
inline std::vector<std::vector<IntVec>> dual_characters(const Fan& fan) {
  std::vector<std::vector<IntVec>> m(fan.max_cones.size(), std::vector<IntVec>(fan.rays.size(), IntVec(fan.rank, 0)));
  for (std::size_t s = 0; s < fan.max_cones.size(); ++s) {
    IntMatrix rt = fan.ray_matrix(fan.max_cones[s]).transpose();
    for (std::size_t k = 0; k < fan.rank; ++k) {
      std::vector<BigInt> e(fan.rank, 0);
      e[k] = 1;
      auto x = solve_integer(rt, e);
      if (!x) throw InputError("maximal cone is not smooth");
      IntVec v(fan.rank);
      for (std::size_t i = 0; i < fan.rank; ++i) v[i] = to_i64((*x)[i]);
      m[s][fan.max_cones[s].rays[k]] = v;
    }
  }
  return m;
}

/// Value of a relation on one maximal cone when X_j acts by the unit
/// line(m[j]); mul, add and line come from the coefficient ring.
template <class Coef, class Mul, class Add, class Line>
Coef evaluate_on_cone(const Relation<Coef>& rel, const std::vector<IntVec>& m, Coef zero, Mul mul, Add addf,
                      Line line) {
  Coef acc = zero;
  for (const auto& [x, c] : rel.terms) {
    IntVec chi(m.empty() ? 0 : m[0].size(), 0);
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) chi = add(chi, scale(m[j], x[j]));
    acc = addf(acc, mul(c, line(chi)));
  }
  return acc;
}

struct SrToPlp {
  std::vector<std::vector<IntVec>> characters;  // per cone, per ray
  std::vector<PlpElement> x;                    // image of X_j
  bool members_ok = true;
  bool relations_zero = true;
};

inline SrToPlp sr_to_plp(const Fan& fan) {
  require_smooth_complete(fan);
  SrToPlp res;
  res.characters = dual_characters(fan);
  for (std::size_t j = 0; j < fan.rays.size(); ++j) {
    ConeTuple t;
    for (std::size_t s = 0; s < fan.max_cones.size(); ++s) t.components.push_back(LaurentPoly::monomial(res.characters[s][j]));
    res.members_ok = res.members_ok && plp_check(fan, t).verdict && gkm_check(fan, t).verdict;
    res.x.push_back(std::move(t));
  }
  auto pres = sr_presentation(fan);
  for (const auto& rel : pres.relations)
    for (std::size_t s = 0; s < fan.max_cones.size(); ++s) {
      LaurentPoly v = evaluate_on_cone(
          rel, res.characters[s], LaurentPoly(fan.rank), [](const LaurentPoly& a, const LaurentPoly& b) { return a * b; },
          [](const LaurentPoly& a, const LaurentPoly& b) { return a + b; },
          [](const IntVec& chi) { return LaurentPoly::monomial(chi); });
      if (!v.is_zero()) res.relations_zero = false;
    }
  return res;
}

struct SurjectivityReport {
  std::size_t samples = 0;
  std::size_t solved = 0;
  std::size_t columns = 0;  // distinct monomials x^alpha used
  bool complete() const { return samples == solved; }
};

/// Are random members supported in the box of radius `radius` integer
/// combinations of monomials x^alpha with |alpha_j| <= degree?
inline SurjectivityReport sr_surjectivity_probe(const Fan& fan, std::int64_t radius, std::int64_t degree,
                                                std::size_t samples, std::uint64_t seed) {
  require_smooth_complete(fan);
  auto m = dual_characters(fan);
  const std::size_t nr = fan.rays.size(), mc = fan.max_cones.size();
  Region box = Region::box(fan.rank, radius);
  CongruenceSystem sys = gkm_system(fan);
  std::set<std::vector<IntVec>> images;
  std::vector<IntVec> points = box.points();
  const Region alphas = Region::box(nr, degree);
  for (const auto& alpha : alphas.points()) {
    std::vector<IntVec> img;
    for (std::size_t s = 0; s < mc; ++s) {
      IntVec chi(fan.rank, 0);
      for (std::size_t j = 0; j < nr; ++j) chi = add(chi, scale(m[s][j], alpha[j]));
      points.push_back(chi);
      img.push_back(std::move(chi));
    }
    images.insert(std::move(img));
  }
  Region support(fan.rank, std::move(points));
  IntegerEchelon span(sys.num_vars(support));
  for (const auto& img : images) {
    std::map<int, BigInt> col;
    for (std::size_t s = 0; s < mc; ++s) col[sys.var(support, static_cast<int>(s), support.at(img[s]))] += 1;
    span.insert(sparse_from_map(col));
  }
  SurjectivityReport rep;
  rep.columns = images.size();
  std::mt19937_64 rng(seed);
  for (const auto& t : random_members(fan, radius, samples, rng)) {
    ++rep.samples;
    auto v = sys.from_slots(support, t.components);
    if (v && span.contains(*v)) ++rep.solved;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const ConeTuple& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : t.components) arr.push_back(to_json(c));
  return arr;
}

inline ConeTuple tuple_from_json(const nlohmann::json& j, std::size_t rank) {
  if (!j.is_array()) throw InputError("tuple components must be a JSON list");
  ConeTuple t;
  for (const auto& c : j) t.components.push_back(laurent_from_json(c, rank));
  return t;
}

inline nlohmann::json to_json(const Presentation<LaurentPoly>& p) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : p.relations) {
    nlohmann::json jr;
    jr["kind"] = r.kind;
    if (r.kind == "nonface") jr["support"] = r.support;
    if (r.kind == "character") jr["character"] = r.character;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [x, c] : r.terms) terms.push_back({{"X", x}, {"coef", to_json(c)}});
    jr["terms"] = terms;
    rels.push_back(jr);
  }
  return {{"generators", p.num_generators}, {"relations", rels}};
}

}  // namespace ekt
