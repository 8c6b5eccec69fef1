#pragma once

// Coefficient rings for bundles: commutative rings with a homomorphism
// chi -> line_class(chi) from the fiber characters to the units.

#include "ekt/kring.hpp"

#include <concepts>
#include <set>
#include <variant>

namespace ekt {

template <class B>
concept BaseRing = requires(const B& b, const typename B::Element& x, const IntVec& chi, const nlohmann::json& j,
                            std::size_t part, std::int64_t d, CongruenceSystem& sys) {
  { b.fiber_rank() } -> std::convertible_to<std::size_t>;
  { b.one() } -> std::same_as<typename B::Element>;
  { b.zero() } -> std::same_as<typename B::Element>;
  { b.add(x, x) } -> std::same_as<typename B::Element>;
  { b.sub(x, x) } -> std::same_as<typename B::Element>;
  { b.mul(x, x) } -> std::same_as<typename B::Element>;
  { b.neg(x) } -> std::same_as<typename B::Element>;
  { b.equal(x, x) } -> std::same_as<bool>;
  { b.is_zero(x) } -> std::same_as<bool>;
  { b.line_class(chi) } -> std::same_as<typename B::Element>;
  { b.congruent(x, x, chi) } -> std::same_as<bool>;
  { b.divide(x, x) } -> std::same_as<std::optional<typename B::Element>>;
  { b.to_json(x) } -> std::same_as<nlohmann::json>;
  { b.element_from_json(j) } -> std::same_as<typename B::Element>;
  // truncated models: an element is a list of Laurent polynomial parts
  { b.coef_rank() } -> std::convertible_to<std::size_t>;
  { b.parts() } -> std::convertible_to<std::size_t>;
  { b.to_parts(x) } -> std::same_as<std::vector<LaurentPoly>>;
  { b.from_parts(std::vector<LaurentPoly>{}) } -> std::same_as<typename B::Element>;
  { b.line_character(part, chi) } -> std::same_as<IntVec>;
  { b.add_internal(sys, [](std::size_t) { return 0; }) };
  { b.symmetries() } -> std::same_as<std::vector<IntMatrix>>;
  { b.rank_region(d) } -> std::same_as<Region>;
  { b.rank_ideal(d) } -> std::same_as<std::vector<IdealGenerator>>;
};

namespace detail {
inline void check_chi(const IntVec& chi, std::size_t n) {
  if (chi.size() != n) throw InputError("fiber character has the wrong length");
}
}  // namespace detail

/// K of a point: the integers, every line bundle trivial.
class PointBase {
 public:
  using Element = BigInt;

  explicit PointBase(std::size_t fiber_rank) : n_(fiber_rank) {}

  std::size_t fiber_rank() const { return n_; }
  Element one() const { return 1; }
  Element zero() const { return 0; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  Element line_class(const IntVec& chi) const {
    detail::check_chi(chi, n_);
    return 1;
  }
  /// The ideal (1 - 1) is zero.
  bool congruent(const Element& a, const Element& b, const IntVec& chi) const {
    detail::check_chi(chi, n_);
    return a == b;
  }
  std::optional<Element> divide(const Element& a, const Element& g) const {
    if (g.is_zero()) {
      if (a.is_zero()) return Element(0);
      return std::nullopt;
    }
    if (a % g != 0) return std::nullopt;
    return a / g;
  }
  nlohmann::json to_json(const Element& a) const { return a.str(); }
  Element element_from_json(const nlohmann::json& j) const {
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    throw InputError("point base element must be an integer");
  }

  std::size_t coef_rank() const { return 0; }
  std::size_t parts() const { return 1; }
  std::vector<LaurentPoly> to_parts(const Element& a) const { return {LaurentPoly::constant(0, a)}; }
  Element from_parts(const std::vector<LaurentPoly>& p) const { return p.empty() ? BigInt(0) : p[0].coef({}); }
  IntVec line_character(std::size_t, const IntVec&) const { return {}; }
  template <class SlotOf>
  void add_internal(CongruenceSystem&, SlotOf) const {}
  std::vector<IntMatrix> symmetries() const { return {}; }
  Region rank_region(std::int64_t) const { return Region(0, {IntVec{}}); }
  std::vector<IdealGenerator> rank_ideal(std::int64_t) const { return {}; }

 private:
  std::size_t n_;
};

/// R(T) itself: line_class(chi) = e^chi.
class TrivialBase {
 public:
  using Element = LaurentPoly;

  explicit TrivialBase(std::size_t n) : n_(n) {}

  std::size_t fiber_rank() const { return n_; }
  Element one() const { return LaurentPoly::one(n_); }
  Element zero() const { return LaurentPoly(n_); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  Element line_class(const IntVec& chi) const {
    detail::check_chi(chi, n_);
    return LaurentPoly::monomial(chi);
  }
  bool congruent(const Element& a, const Element& b, const IntVec& chi) const {
    detail::check_chi(chi, n_);
    LaurentPoly d = a - b;
    return ekt::is_zero(chi) ? d.is_zero() : in_character_ideal(d, chi);
  }
  std::optional<Element> divide(const Element& a, const Element& g) const {
    if (g.is_zero()) return a.is_zero() ? std::optional<Element>(zero()) : std::nullopt;
    return exact_divide(a, g);
  }
  nlohmann::json to_json(const Element& a) const { return ekt::to_json(a); }
  Element element_from_json(const nlohmann::json& j) const { return laurent_from_json(j, n_); }

  std::size_t coef_rank() const { return n_; }
  std::size_t parts() const { return 1; }
  std::vector<LaurentPoly> to_parts(const Element& a) const { return {a}; }
  Element from_parts(const std::vector<LaurentPoly>& p) const { return p.at(0); }
  IntVec line_character(std::size_t, const IntVec& chi) const { return chi; }
  template <class SlotOf>
  void add_internal(CongruenceSystem&, SlotOf) const {}
  std::vector<IntMatrix> symmetries() const { return {}; }
  Region rank_region(std::int64_t d) const { return Region::box(n_, d); }
  std::vector<IdealGenerator> rank_ideal(std::int64_t d) const { return augmentation_generators(n_, d); }

 private:
  std::size_t n_;
};

/// Piecewise Laurent polynomials on a smooth complete base fan, with
/// coefficients in Z^{base rank + extra}. The fiber character e_k goes to the
/// unit whose component on sigma is e^{m_sigma(e_k)}, where m_sigma(e_k) pairs
/// with the rays of sigma as divisors[k] prescribes and carries the extra
/// weight extra_weights[k].
class ToricBase {
 public:
  using Element = ConeTuple;

  ToricBase(Fan base, std::vector<IntVec> divisors, std::vector<IntVec> extra_weights)
      : fan_(std::move(base)), divisors_(std::move(divisors)), extra_(std::move(extra_weights)) {
    if (!is_smooth_fan(fan_)) throw InputError("toric base fan must be smooth");
    if (!is_complete(fan_)) throw InputError("toric base fan must be complete");
    if (extra_.empty()) extra_.assign(divisors_.size(), IntVec{});
    if (extra_.size() != divisors_.size()) throw InputError("extra_weights must have one row per fiber character");
    e_ = extra_.empty() ? 0 : extra_[0].size();
    for (std::size_t k = 0; k < divisors_.size(); ++k) {
      if (divisors_[k].size() != fan_.rays.size()) throw InputError("divisor row must have one entry per base ray");
      if (extra_[k].size() != e_) throw InputError("extra_weights rows must have equal length");
    }
    r_ = fan_.rank + e_;
    walls_ = walls(fan_);
    m_.assign(fan_.max_cones.size(), std::vector<IntVec>(divisors_.size()));
    for (std::size_t s = 0; s < fan_.max_cones.size(); ++s) {
      IntMatrix rt = fan_.ray_matrix(fan_.max_cones[s]).transpose();
      for (std::size_t k = 0; k < divisors_.size(); ++k) {
        std::vector<BigInt> rhs;
        for (int r : fan_.max_cones[s].rays) rhs.emplace_back(divisors_[k][r]);
        auto x = solve_integer(rt, rhs);
        if (!x) throw InputError("divisor data is not integral on a base cone");
        IntVec v;
        for (const auto& c : *x) v.push_back(to_i64(c));
        v.insert(v.end(), extra_[k].begin(), extra_[k].end());
        m_[s][k] = v;
      }
    }
  }

  const Fan& fan() const { return fan_; }
  std::size_t fiber_rank() const { return divisors_.size(); }
  std::size_t coef_rank() const { return r_; }

  /// Character of line_class(chi) on base cone s.
  IntVec cone_character(std::size_t s, const IntVec& chi) const {
    detail::check_chi(chi, fiber_rank());
    IntVec v(r_, 0);
    for (std::size_t k = 0; k < chi.size(); ++k) v = ekt::add(v, ekt::scale(m_[s][k], chi[k]));
    return v;
  }

  Element one() const { return constant(LaurentPoly::one(r_)); }
  Element zero() const { return constant(LaurentPoly(r_)); }
  Element constant(const LaurentPoly& f) const { return ConeTuple{std::vector<LaurentPoly>(fan_.max_cones.size(), f)}; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return zero() - a; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  bool is_zero(const Element& a) const {
    return std::all_of(a.components.begin(), a.components.end(), [](const LaurentPoly& f) { return f.is_zero(); });
  }
  Element line_class(const IntVec& chi) const {
    ConeTuple t;
    for (std::size_t s = 0; s < fan_.max_cones.size(); ++s) t.components.push_back(LaurentPoly::monomial(cone_character(s, chi)));
    return t;
  }

  /// Membership: base wall congruences with characters (u, 0).
  bool is_member(const Element& a) const {
    if (a.size() != fan_.max_cones.size()) return false;
    for (const auto& w : walls_) {
      LaurentPoly d = a[w.left] - a[w.right];
      if (!in_character_ideal(d, lift(w.character))) return false;
    }
    return true;
  }

  bool congruent(const Element& a, const Element& b, const IntVec& chi) const {
    Element d = a - b;
    std::vector<IntVec> ch;
    std::size_t trivial = 0;
    for (std::size_t s = 0; s < fan_.max_cones.size(); ++s) {
      ch.push_back(cone_character(s, chi));
      if (ekt::is_zero(ch.back())) ++trivial;
    }
    if (trivial == ch.size()) return is_zero(d);
    if (trivial > 0) throw InputError("line class is trivial on some but not all base cones: unsupported");
    ConeTuple h;
    for (std::size_t s = 0; s < ch.size(); ++s) {
      auto q = divides(d[s], ch[s]);
      if (!q) return false;
      h.components.push_back(std::move(*q));
    }
    return is_member(h);
  }

  std::optional<Element> divide(const Element& a, const Element& g) const {
    ConeTuple h;
    for (std::size_t s = 0; s < fan_.max_cones.size(); ++s) {
      if (g[s].is_zero()) {
        if (!a[s].is_zero()) return std::nullopt;
        h.components.emplace_back(r_);  // a free choice; zero keeps gluing checkable
        continue;
      }
      auto q = exact_divide(a[s], g[s]);
      if (!q) return std::nullopt;
      h.components.push_back(std::move(*q));
    }
    if (!is_member(h)) return std::nullopt;
    return h;
  }

  nlohmann::json to_json(const Element& a) const { return ekt::to_json(a); }
  Element element_from_json(const nlohmann::json& j) const {
    ConeTuple t = tuple_from_json(j, r_);
    if (t.size() != fan_.max_cones.size()) throw InputError("toric base element has the wrong number of components");
    return t;
  }

  std::size_t parts() const { return fan_.max_cones.size(); }
  std::vector<LaurentPoly> to_parts(const Element& a) const { return a.components; }
  Element from_parts(const std::vector<LaurentPoly>& p) const { return ConeTuple{p}; }
  IntVec line_character(std::size_t part, const IntVec& chi) const { return cone_character(part, chi); }
  template <class SlotOf>
  void add_internal(CongruenceSystem& sys, SlotOf slot) const {
    for (const auto& w : walls_) sys.add_congruence(slot(w.left), slot(w.right), lift(w.character));
  }
  std::vector<IntMatrix> symmetries() const { return {}; }
  Region rank_region(std::int64_t d) const { return Region::box(r_, d); }
  std::vector<IdealGenerator> rank_ideal(std::int64_t d) const { return augmentation_generators(r_, d); }

 private:
  IntVec lift(const IntVec& u) const {
    IntVec v = u;
    v.resize(r_, 0);
    return v;
  }

  Fan fan_;
  std::vector<IntVec> divisors_;
  std::vector<IntVec> extra_;
  std::size_t e_ = 0;
  std::size_t r_ = 0;
  std::vector<Wall> walls_;
  std::vector<std::vector<IntVec>> m_;  // [cone][fiber basis character]
};

// ---------------------------------------------------------------------------
// Root data and Weyl group actions. Weights are written in fundamental weight
// coordinates; cartan[i][j] = <alpha_j, alpha_i^vee>, so alpha_j is column j.

class RootDatum {
 public:
  explicit RootDatum(IntMatrix cartan) : a_(std::move(cartan)) {
    if (a_.rows() != a_.cols() || a_.rows() == 0) throw InputError("Cartan matrix must be square and nonempty");
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if (a_(i, i) != 2) throw InputError("Cartan matrix must have 2 on the diagonal");
    if (determinant(a_).is_zero()) throw InputError("Cartan matrix must be nonsingular");
  }

  std::size_t rank() const { return a_.rows(); }
  const IntMatrix& cartan() const { return a_; }

  IntMatrix reflection(std::size_t i) const {
    IntMatrix s = IntMatrix::identity(rank());
    for (std::size_t k = 0; k < rank(); ++k) s(k, i) -= a_(k, i);
    return s;
  }

  /// Elements of the group generated by the given simple reflections.
  std::vector<IntMatrix> group(const std::vector<int>& gens, std::size_t limit = 1000000) const {
    std::vector<IntMatrix> s;
    for (int i : gens) s.push_back(reflection(static_cast<std::size_t>(i)));
    std::vector<IntMatrix> elems{IntMatrix::identity(rank())};
    std::set<std::vector<IntVec>> seen{key(elems[0])};
    try {
      for (std::size_t k = 0; k < elems.size(); ++k)
        for (const auto& r : s) {
          IntMatrix g = r * elems[k];
          if (seen.insert(key(g)).second) {
            elems.push_back(g);
            if (elems.size() > limit) throw InputError("reflection group is infinite or too large");
          }
        }
    } catch (const std::overflow_error&) {
      throw InputError("reflection group is infinite");
    }
    return elems;
  }

  std::vector<IntVec> orbit(const IntVec& mu, const std::vector<int>& gens) const {
    std::vector<IntVec> out{mu};
    std::set<IntVec> seen{mu};
    for (std::size_t k = 0; k < out.size(); ++k)
      for (int i : gens) {
        IntVec nu = reflection(static_cast<std::size_t>(i)).apply(out[k]);
        if (seen.insert(nu).second) {
          out.push_back(nu);
          if (out.size() > 1000000) throw InputError("orbit is infinite or too large");
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<int> all_simple() const {
    std::vector<int> v(rank());
    for (std::size_t i = 0; i < rank(); ++i) v[i] = static_cast<int>(i);
    return v;
  }

  IntVec dominant(IntVec mu) const {
    for (std::size_t guard = 0; guard < 100000; ++guard) {
      std::size_t i = 0;
      while (i < rank() && mu[i] >= 0) ++i;
      if (i == rank()) return mu;
      mu = reflection(i).apply(mu);
    }
    throw InputError("dominant: Weyl group appears to be infinite");
  }

  /// mu in conv(W lambda) for dominant lambda: lambda - dominant(mu) is a
  /// nonnegative rational combination of simple roots.
  bool in_orbit_polytope(const IntVec& mu, const IntVec& lambda) const {
    IntVec diff = sub(lambda, dominant(mu));
    auto c = solve_rational(a_, std::vector<Rational>(diff.begin(), diff.end()));
    return std::all_of(c->begin(), c->end(), [](const Rational& x) { return x >= 0; });
  }

  /// Weight lattice points of conv(W lambda).
  Region orbit_polytope(const IntVec& lambda) const {
    auto orb = orbit(lambda, all_simple());
    IntVec lo = orb[0], hi = orb[0];
    for (const auto& p : orb)
      for (std::size_t k = 0; k < rank(); ++k) lo[k] = std::min(lo[k], p[k]), hi[k] = std::max(hi[k], p[k]);
    return Region::grid(lo, hi, [&](const IntVec& w) { return in_orbit_polytope(w, lambda); });
  }

  LaurentPoly orbit_sum(const IntVec& mu, const std::vector<int>& gens) const {
    LaurentPoly f(rank());
    for (const auto& p : orbit(mu, gens)) f.add_term(p, 1);
    return f;
  }

 private:
  static std::vector<IntVec> key(const IntMatrix& m) {
    std::vector<IntVec> k;
    for (std::size_t i = 0; i < m.rows(); ++i) k.push_back(m.row_i64(i));
    return k;
  }

  IntMatrix a_;
};

/// W-invariant generators orbit_sum(omega_k) - |orbit| of the augmentation
/// ideal of R(T)^W, paired with conv(W (lambda - omega_k)).
inline std::vector<IdealGenerator> weyl_augmentation_generators(const RootDatum& rd, const IntVec& lambda) {
  std::vector<IdealGenerator> gens;
  for (std::size_t k = 0; k < rd.rank(); ++k) {
    IntVec w(rd.rank(), 0);
    w[k] = 1;
    LaurentPoly g = rd.orbit_sum(w, rd.all_simple());
    g -= LaurentPoly::constant(rd.rank(), static_cast<long long>(g.size()));
    gens.push_back({g, rd.orbit_polytope(sub(lambda, w))});
  }
  return gens;
}

/// R(P_I) modelled as the W_I-invariant Laurent polynomials on the weight lattice.
class FlagBase {
 public:
  using Element = LaurentPoly;

  /// embedding: weight_rank x fiber_rank, column k is the image of e_k.
  FlagBase(RootDatum rd, std::vector<int> I, IntMatrix embedding)
      : rd_(std::move(rd)), I_(std::move(I)), e_(std::move(embedding)) {
    std::sort(I_.begin(), I_.end());
    I_.erase(std::unique(I_.begin(), I_.end()), I_.end());
    for (int i : I_)
      if (i < 0 || static_cast<std::size_t>(i) >= rd_.rank()) throw InputError("subset I refers to an unknown simple root");
    if (e_.rows() != rd_.rank()) throw InputError("character embedding must have one row per fundamental weight");
    group_ = rd_.group(I_);
    for (int i : I_) reflections_.push_back(rd_.reflection(static_cast<std::size_t>(i)));
  }

  FlagBase(RootDatum rd, std::vector<int> I) : FlagBase(rd, I, IntMatrix::identity(rd.rank())) {}

  const RootDatum& root_datum() const { return rd_; }
  const std::vector<int>& subset() const { return I_; }
  const IntMatrix& embedding() const { return e_; }
  std::size_t fiber_rank() const { return e_.cols(); }
  std::size_t weyl_subgroup_order() const { return group_.size(); }

  /// Columns of the embedding that are not W_I-fixed.
  std::vector<int> unfixed_columns() const {
    std::vector<int> bad;
    for (std::size_t k = 0; k < e_.cols(); ++k)
      if (!is_fixed(e_.column_i64(k))) bad.push_back(static_cast<int>(k));
    return bad;
  }

  bool is_fixed(const IntVec& mu) const {
    return std::all_of(I_.begin(), I_.end(), [&](int i) { return mu[i] == 0; });
  }

  bool invariant_check(const LaurentPoly& f) const {
    if (f.rank() != rd_.rank()) return false;
    for (const auto& s : reflections_)
      if (map_exponents(f, s) != f) return false;
    return true;
  }

  std::vector<IntVec> weyl_orbit(const IntVec& mu) const { return rd_.orbit(mu, rd_.all_simple()); }

  Element one() const { return LaurentPoly::one(rd_.rank()); }
  Element zero() const { return LaurentPoly(rd_.rank()); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  bool is_zero(const Element& a) const { return a.is_zero(); }

  IntVec image(const IntVec& chi) const {
    detail::check_chi(chi, fiber_rank());
    IntVec mu = e_.apply(chi);
    if (!is_fixed(mu)) throw InputError("character is not fixed by W_I: not a character of P");
    return mu;
  }
  Element line_class(const IntVec& chi) const { return LaurentPoly::monomial(image(chi)); }
  bool congruent(const Element& a, const Element& b, const IntVec& chi) const {
    IntVec mu = image(chi);
    LaurentPoly d = a - b;
    return ekt::is_zero(mu) ? d.is_zero() : in_character_ideal(d, mu);
  }
  std::optional<Element> divide(const Element& a, const Element& g) const {
    if (g.is_zero()) return a.is_zero() ? std::optional<Element>(zero()) : std::nullopt;
    return exact_divide(a, g);
  }
  nlohmann::json to_json(const Element& a) const { return ekt::to_json(a); }
  Element element_from_json(const nlohmann::json& j) const {
    LaurentPoly f = laurent_from_json(j, rd_.rank());
    if (!invariant_check(f)) throw InputError("flag base element is not W_I-invariant");
    return f;
  }

  std::size_t coef_rank() const { return rd_.rank(); }
  std::size_t parts() const { return 1; }
  std::vector<LaurentPoly> to_parts(const Element& a) const { return {a}; }
  Element from_parts(const std::vector<LaurentPoly>& p) const { return p.at(0); }
  IntVec line_character(std::size_t, const IntVec& chi) const { return image(chi); }
  template <class SlotOf>
  void add_internal(CongruenceSystem&, SlotOf) const {}
  std::vector<IntMatrix> symmetries() const { return reflections_; }
  Region rank_region(std::int64_t d) const { return rd_.orbit_polytope(IntVec(rd_.rank(), d)); }
  std::vector<IdealGenerator> rank_ideal(std::int64_t d) const {
    return weyl_augmentation_generators(rd_, IntVec(rd_.rank(), d));
  }

 private:
  RootDatum rd_;
  std::vector<int> I_;
  IntMatrix e_;
  std::vector<IntMatrix> group_;
  std::vector<IntMatrix> reflections_;
};

/// Rank of R(T)^{W_I} over R(T)^W inside conv(W (d, ..., d)).
inline std::size_t flag_rank_probe(const RootDatum& rd, const std::vector<int>& I, std::int64_t d) {
  FlagBase fb(rd, I);
  CongruenceSystem sys(rd.rank(), 1);
  for (const auto& s : fb.symmetries()) sys.add_symmetry(s);
  return sys.quotient_rank(fb.rank_region(d), fb.rank_ideal(d)).rank();
}

using AnyBase = std::variant<PointBase, TrivialBase, ToricBase, FlagBase>;

inline IntMatrix matrix_from_json(const nlohmann::json& j, const char* what) {
  try {
    auto rows = j.get<std::vector<IntVec>>();
    if (rows.empty()) return IntMatrix(0, 0);
    for (const auto& r : rows)
      if (r.size() != rows[0].size()) throw InputError(std::string(what) + ": ragged matrix");
    return IntMatrix::from_rows(rows, rows[0].size());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

/// {"kind": "point" | "trivial" | "toric" | "flag", ...}. Toric and flag bases
/// derive the fiber rank from their data; point and trivial take it from the
/// caller.
inline AnyBase base_from_json(const nlohmann::json& j, std::size_t fiber_rank) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("base description needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "point") return PointBase(fiber_rank);
    if (kind == "trivial") return TrivialBase(fiber_rank);
    if (kind == "toric") {
      Fan f = parse_fan(j.at("fan"));
      auto div = j.at("divisors").get<std::vector<IntVec>>();
      std::vector<IntVec> extra;
      if (j.contains("extra_weights")) extra = j.at("extra_weights").get<std::vector<IntVec>>();
      return ToricBase(std::move(f), std::move(div), std::move(extra));
    }
    if (kind == "flag") {
      RootDatum rd(matrix_from_json(j.at("cartan"), "cartan"));
      auto I = j.value("I", std::vector<int>{});
      if (j.contains("char_embedding")) return FlagBase(rd, I, matrix_from_json(j.at("char_embedding"), "char_embedding"));
      return FlagBase(rd, I);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed base description: ") + e.what());
  }
  throw InputError("unknown base kind: " + kind);
}

}  // namespace ekt
