#pragma once

// Toric bundles over a base: tuples of base ring elements over the maximal
// cones of the fiber fan, the Kunneth map and the bundle presentation.

#include "ekt/baserings.hpp"

namespace ekt {

template <BaseRing B>
using Extended = std::vector<typename B::Element>;

struct ExtendedReport {
  bool verdict = true;
  std::vector<std::size_t> failing_walls;
};

template <BaseRing B>
ExtendedReport extended_check(const Fan& fiber, const B& base, const Extended<B>& t) {
  if (t.size() != fiber.max_cones.size())
    throw InputError("extended tuple has " + std::to_string(t.size()) + " components but the fiber fan has " +
                     std::to_string(fiber.max_cones.size()) + " maximal cones");
  if (base.fiber_rank() != fiber.rank) throw InputError("base ring and fiber fan disagree on the fiber rank");
  ExtendedReport rep;
  auto ws = walls(fiber);
  for (std::size_t k = 0; k < ws.size(); ++k)
    if (!base.congruent(t[ws[k].left], t[ws[k].right], ws[k].character)) {
      rep.verdict = false;
      rep.failing_walls.push_back(k);
    }
  return rep;
}

/// The linear extension of chi -> line_class(chi) to Z[M].
template <BaseRing B>
typename B::Element line_hat(const B& base, const LaurentPoly& f) {
  auto acc = base.zero();
  for (const auto& [u, c] : f.terms()) {
    auto l = base.line_class(u);
    auto k = base.mul(base.from_parts(std::vector<LaurentPoly>(base.parts(), LaurentPoly::constant(base.coef_rank(), c))), l);
    acc = base.add(acc, k);
  }
  return acc;
}

/// phi(b (x) p): component i is b * line_hat(p_i).
template <BaseRing B>
Extended<B> kunneth_realize(const Fan& fiber, const B& base, const typename B::Element& b, const PlpElement& p) {
  if (!plp_check(fiber, p).verdict) throw InputError("kunneth_realize: fiber class is not a piecewise Laurent polynomial");
  Extended<B> out;
  for (const auto& c : p.components) out.push_back(base.mul(b, line_hat(base, c)));
  return out;
}

/// A formal sum of pure tensors b (x) p.
template <BaseRing B>
struct KunnethTensor {
  std::vector<std::pair<typename B::Element, PlpElement>> terms;
};

template <BaseRing B>
Extended<B> kunneth_realize(const Fan& fiber, const B& base, const KunnethTensor<B>& t) {
  Extended<B> out(fiber.max_cones.size(), base.zero());
  for (const auto& [b, p] : t.terms) {
    auto r = kunneth_realize(fiber, base, b, p);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = base.add(out[i], r[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncated model: slot (i, part) holds one Laurent polynomial part of the
// base element over fiber cone i.

template <BaseRing B>
CongruenceSystem extended_system(const Fan& fiber, const B& base) {
  const std::size_t parts = base.parts();
  CongruenceSystem sys(base.coef_rank(), fiber.max_cones.size() * parts);
  for (const auto& w : walls(fiber))
    for (std::size_t p = 0; p < parts; ++p)
      sys.add_congruence(static_cast<int>(w.left * parts + p), static_cast<int>(w.right * parts + p),
                         base.line_character(p, w.character));
  for (std::size_t i = 0; i < fiber.max_cones.size(); ++i)
    base.add_internal(sys, [i, parts](std::size_t p) { return static_cast<int>(i * parts + p); });
  for (const auto& s : base.symmetries()) sys.add_symmetry(s);
  return sys;
}

template <BaseRing B>
Extended<B> extended_from_slots(const B& base, std::size_t m, const std::vector<LaurentPoly>& slots) {
  Extended<B> out;
  const std::size_t parts = base.parts();
  for (std::size_t i = 0; i < m; ++i)
    out.push_back(base.from_parts(std::vector<LaurentPoly>(slots.begin() + i * parts, slots.begin() + (i + 1) * parts)));
  return out;
}

template <BaseRing B>
std::vector<LaurentPoly> extended_to_slots(const B& base, const Extended<B>& t) {
  std::vector<LaurentPoly> slots;
  for (const auto& e : t) {
    auto p = base.to_parts(e);
    slots.insert(slots.end(), p.begin(), p.end());
  }
  return slots;
}

template <BaseRing B>
CongruenceSystem::QuotientRank extended_box_rank(const Fan& fiber, const B& base, std::int64_t d) {
  return extended_system(fiber, base).quotient_rank(base.rank_region(d), base.rank_ideal(d));
}

template <BaseRing B>
std::vector<Extended<B>> random_extended_members(const Fan& fiber, const B& base, std::int64_t d, std::size_t count,
                                                 std::mt19937_64& rng) {
  CongruenceSystem sys = extended_system(fiber, base);
  Region region = base.rank_region(d);
  auto basis = sys.member_basis(region);
  std::vector<Extended<B>> out;
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(extended_from_slots(base, fiber.max_cones.size(), sys.to_slots(region, random_combination(basis, rng))));
  return out;
}

struct SurjectivityProbe {
  std::size_t samples = 0;
  std::size_t solved = 0;
  std::size_t tensor_rank = 0;  // number of fiber basis elements
  bool complete() const { return samples == solved; }
};

/// Coefficients b with t = sum b_p realize(1 (x) phi_p), by back substitution
/// along the fiber cell order.
template <BaseRing B>
std::optional<std::vector<typename B::Element>> kunneth_coefficients(const Fan& fiber, const B& base,
                                                                     const FiltrationBasis& basis,
                                                                     const Extended<B>& t) {
  std::vector<Extended<B>> realized;
  for (const auto& phi : basis.elements) realized.push_back(kunneth_realize(fiber, base, base.one(), phi));
  Extended<B> r = t;
  std::vector<typename B::Element> coeffs;
  for (std::size_t p = 0; p < basis.order.size(); ++p) {
    const int cone = basis.order[p];
    auto c = base.divide(r[cone], realized[p][cone]);
    if (!c) return std::nullopt;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = base.sub(r[i], base.mul(*c, realized[p][i]));
    coeffs.push_back(std::move(*c));
  }
  for (const auto& e : r)
    if (!base.is_zero(e)) return std::nullopt;
  return coeffs;
}

template <BaseRing B>
SurjectivityProbe kunneth_surjectivity_probe(const Fan& fiber, const B& base, const FiltrationBasis& basis,
                                             std::int64_t d, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SurjectivityProbe rep;
  rep.tensor_rank = basis.elements.size();
  for (const auto& t : random_extended_members(fiber, base, d, samples, rng)) {
    ++rep.samples;
    if (kunneth_coefficients(fiber, base, basis, t)) ++rep.solved;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Presentation over the base.

template <BaseRing B>
struct BundlePresentation {
  Presentation<typename B::Element> presentation;
  bool verified = false;  // every relation vanishes under X_j -> realize(1 (x) x_j)
};

template <BaseRing B>
BundlePresentation<B> bundle_presentation(const Fan& fiber, const B& base) {
  require_smooth_complete(fiber);
  if (base.fiber_rank() != fiber.rank) throw InputError("base ring and fiber fan disagree on the fiber rank");
  using E = typename B::Element;
  BundlePresentation<B> out;
  out.presentation = build_presentation<E>(
      fiber, [&] { return base.one(); }, [&](const E& x) { return base.neg(x); },
      [&](const IntVec& u) { return base.line_class(u); });
  auto m = dual_characters(fiber);
  out.verified = true;
  for (const auto& rel : out.presentation.relations)
    for (std::size_t s = 0; s < fiber.max_cones.size(); ++s) {
      E v = evaluate_on_cone(
          rel, m[s], base.zero(), [&](const E& a, const E& b) { return base.mul(a, b); },
          [&](const E& a, const E& b) { return base.add(a, b); }, [&](const IntVec& chi) { return base.line_class(chi); });
      if (!base.is_zero(v)) out.verified = false;
    }
  return out;
}

template <BaseRing B>
nlohmann::json presentation_to_json(const B& base, const Presentation<typename B::Element>& p) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : p.relations) {
    nlohmann::json jr;
    jr["kind"] = r.kind;
    if (r.kind == "nonface") jr["support"] = r.support;
    if (r.kind == "character") jr["character"] = r.character;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [x, c] : r.terms) terms.push_back({{"X", x}, {"coef", base.to_json(c)}});
    jr["terms"] = terms;
    rels.push_back(jr);
  }
  return {{"generators", p.num_generators}, {"relations", rels}};
}

template <BaseRing B>
nlohmann::json extended_to_json(const B& base, const Extended<B>& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : t) arr.push_back(base.to_json(e));
  return arr;
}

template <BaseRing B>
Extended<B> extended_from_json(const B& base, const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("extended tuple components must be a JSON list");
  Extended<B> t;
  for (const auto& e : j) t.push_back(base.element_from_json(e));
  return t;
}

// ---------------------------------------------------------------------------
// Hirzebruch surfaces two ways: directly as a toric surface, and as the P^1
// bundle over P^1 given by a toric base with twist a.

inline Fan hirzebruch_fan(std::int64_t a) {
  Fan f;
  f.rank = 2;
  f.rays = {{1, 0}, {0, 1}, {-1, a}, {0, -1}};
  f.max_cones = {Cone{{0, 1}}, Cone{{1, 2}}, Cone{{2, 3}}, Cone{{0, 3}}};
  f.name = "F" + std::to_string(a);
  return f;
}

inline Fan p1_fan() {
  Fan f;
  f.rank = 1;
  f.rays = {{1}, {-1}};
  f.max_cones = {Cone{{0}}, Cone{{1}}};
  f.name = "P1";
  return f;
}

/// Base P^1 in the first coordinate; the fiber character goes to the second
/// coordinate, twisted by `twist` along the second base ray.
inline ToricBase hirzebruch_base(std::int64_t twist) { return ToricBase(p1_fan(), {{0, twist}}, {{1}}); }

/// Slot (fiber cone i, base cone p) -> maximal cone of F_a.
inline int hirzebruch_cone(int fiber_cone, int base_cone) {
  static const int table[2][2] = {{0, 1}, {3, 2}};
  return table[fiber_cone][base_cone];
}

struct HirzebruchReport {
  std::int64_t a = 0;
  std::int64_t radius = 0;
  std::int64_t twist = 0;  // divisor entry on the second base ray that matched
  std::size_t samples = 0;
  std::size_t agreements = 0;
  std::size_t members = 0;  // samples that are members (direct side)
  std::size_t direct_rank = 0;
  std::size_t extended_rank = 0;
  bool agree() const { return samples == agreements && direct_rank == extended_rank; }
};

namespace detail {
inline Extended<ToricBase> to_bundle_side(const ConeTuple& direct) {
  Extended<ToricBase> t(2);
  for (int i = 0; i < 2; ++i)
    for (int p = 0; p < 2; ++p) t[i].components.push_back(direct[hirzebruch_cone(i, p)]);
  return t;
}

inline ConeTuple to_direct_side(const Extended<ToricBase>& t) {
  ConeTuple d{std::vector<LaurentPoly>(4, LaurentPoly(2))};
  for (int i = 0; i < 2; ++i)
    for (int p = 0; p < 2; ++p) d[hirzebruch_cone(i, p)] = t[i][p];
  return d;
}
}  // namespace detail

inline HirzebruchReport hirzebruch_crosscheck(std::int64_t a, std::int64_t d, std::size_t samples,
                                              std::uint64_t seed) {
  if (a < 0) throw InputError("hirzebruch_crosscheck: a must be nonnegative");
  Fan direct = hirzebruch_fan(a);
  Fan fiber = p1_fan();
  HirzebruchReport best;
  for (std::int64_t twist : {-a, a}) {
    ToricBase base = hirzebruch_base(twist);
    std::mt19937_64 rng(seed);
    std::vector<ConeTuple> pool;
    for (auto& t : random_members(direct, d, samples / 4, rng)) pool.push_back(t);
    for (auto& t : random_extended_members(fiber, base, d, samples / 4, rng)) pool.push_back(detail::to_direct_side(t));
    const std::size_t clean = pool.size();
    for (std::size_t k = 0; pool.size() < samples && clean > 0; ++k) {
      ConeTuple t = pool[k % clean];
      IntVec w(2);
      for (auto& x : w) x = static_cast<std::int64_t>(rng() % 5) - 2;
      t[rng() % 4] += LaurentPoly::monomial(w);
      pool.push_back(std::move(t));
    }
    HirzebruchReport rep;
    rep.a = a;
    rep.radius = d;
    rep.twist = twist;
    for (const auto& t : pool) {
      ++rep.samples;
      bool x = gkm_check(direct, t).verdict;
      bool y = extended_check(fiber, base, detail::to_bundle_side(t)).verdict;
      if (x) ++rep.members;
      if (x == y) ++rep.agreements;
    }
    rep.direct_rank = box_rank(direct, d).rank();
    rep.extended_rank = extended_box_rank(fiber, base, d).rank();
    if (rep.agree()) return rep;
    if (twist == -a || rep.agreements > best.agreements) best = rep;
  }
  return best;
}

}  // namespace ekt
