#pragma once

// The group ring Z[M] of a lattice M = Z^n, restriction rings Z[M / M cap
// sigma^perp] and membership in principal ideals (1 - e^chi).

#include "ekt/fan.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <sstream>

namespace ekt {

class LaurentPoly {
 public:
  using Terms = std::map<IntVec, BigInt>;

  explicit LaurentPoly(std::size_t n = 0) : n_(n) {}

  static LaurentPoly zero(std::size_t n) { return LaurentPoly(n); }
  static LaurentPoly constant(std::size_t n, const BigInt& c) {
    LaurentPoly p(n);
    p.add_term(IntVec(n, 0), c);
    return p;
  }
  static LaurentPoly one(std::size_t n) { return constant(n, 1); }
  static LaurentPoly monomial(const IntVec& u, const BigInt& c = 1) {
    LaurentPoly p(u.size());
    p.add_term(u, c);
    return p;
  }

  std::size_t rank() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  BigInt coef(const IntVec& u) const {
    auto it = terms_.find(u);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  void add_term(const IntVec& u, const BigInt& c) {
    if (u.size() != n_) throw InputError("Laurent term has exponent of the wrong length");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(u, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// e^u * this
  LaurentPoly shifted(const IntVec& u) const {
    LaurentPoly r(n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), add(e, u), c);
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const BigInt& k) {
    if (k.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const BigInt& k) { return a *= k; }
  friend LaurentPoly operator*(const BigInt& k, LaurentPoly a) { return a *= k; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= BigInt(-1); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check(b);
    LaurentPoly r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(add(ea, eb), ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.terms_ < b.terms_;
  }

 private:
  void check(const LaurentPoly& o) const {
    if (o.n_ != n_) throw InputError("Laurent polynomials over lattices of different rank");
  }

  std::size_t n_;
  Terms terms_;
};

inline LaurentPoly pow(const LaurentPoly& f, unsigned k) {
  LaurentPoly r = LaurentPoly::one(f.rank());
  for (unsigned i = 0; i < k; ++i) r *= f;
  return r;
}

/// Sum of coefficients: the image under e^u -> 1.
inline BigInt augmentation(const LaurentPoly& f) {
  BigInt s = 0;
  for (const auto& [e, c] : f.terms()) s += c;
  return s;
}

/// 1 - e^{-u}
inline LaurentPoly euler_class(const IntVec& u) {
  return LaurentPoly::one(u.size()) - LaurentPoly::monomial(negate(u));
}

/// Image under the lattice map u -> a u (a has rank(f) columns).
inline LaurentPoly map_exponents(const LaurentPoly& f, const IntMatrix& a) {
  if (a.cols() != f.rank()) throw InputError("map_exponents: matrix has wrong width");
  LaurentPoly r(a.rows());
  for (const auto& [e, c] : f.terms()) r.add_term(a.apply(e), c);
  return r;
}

namespace detail {
inline std::size_t first_nonzero(const IntVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return i;
  return v.size();
}
}  // namespace detail

/// Quotient h with f = (1 - e^chi) h when f lies in the ideal, else nullopt.
/// Each coset of Z chi must have coefficient sum zero.
inline std::optional<LaurentPoly> divides(const LaurentPoly& f, const IntVec& chi) {
  if (chi.size() != f.rank()) throw InputError("divides: character of the wrong length");
  const std::size_t p = detail::first_nonzero(chi);
  if (p == chi.size()) throw InputError("divides: zero character");
  // coset key -> (t -> coefficient), with w = key + t chi
  std::map<IntVec, std::map<std::int64_t, BigInt>> cosets;
  for (const auto& [w, c] : f.terms()) {
    std::int64_t t = floor_div(w[p], chi[p]);
    cosets[sub(w, scale(chi, t))][t] += c;
  }
  LaurentPoly h(f.rank());
  for (const auto& [key, chain] : cosets) {
    BigInt run = 0;
    std::int64_t prev = chain.begin()->first;
    for (const auto& [t, c] : chain) {
      // h is constant (= run) between consecutive support points
      if (!run.is_zero())
        for (std::int64_t s = prev; s < t; ++s) h.add_term(add(key, scale(chi, s)), run);
      run += c;
      prev = t;
    }
    if (!run.is_zero()) return std::nullopt;
  }
  return h;
}

inline bool in_character_ideal(const LaurentPoly& f, const IntVec& chi) { return divides(f, chi).has_value(); }

/// h with f = g h if it exists. The quotient is produced by division with
/// respect to the lexicographic order and must stay inside the exponent box
/// forced by the extreme exponents of f and g.
inline std::optional<LaurentPoly> exact_divide(const LaurentPoly& f, const LaurentPoly& g) {
  if (g.is_zero()) throw InputError("exact_divide: division by zero");
  if (f.rank() != g.rank()) throw InputError("exact_divide: rank mismatch");
  const std::size_t n = f.rank();
  LaurentPoly q(n);
  if (f.is_zero()) return q;
  IntVec lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::int64_t fmin = INT64_MAX, fmax = INT64_MIN, gmin = INT64_MAX, gmax = INT64_MIN;
    for (const auto& [e, c] : f.terms()) fmin = std::min(fmin, e[k]), fmax = std::max(fmax, e[k]);
    for (const auto& [e, c] : g.terms()) gmin = std::min(gmin, e[k]), gmax = std::max(gmax, e[k]);
    lo[k] = fmin - gmin;
    hi[k] = fmax - gmax;
    if (lo[k] > hi[k]) return std::nullopt;
  }
  const auto& [glead, gcoef] = *g.terms().rbegin();
  LaurentPoly r = f;
  while (!r.is_zero()) {
    const auto& [rlead, rcoef] = *r.terms().rbegin();
    if (rcoef % gcoef != 0) return std::nullopt;
    IntVec e = sub(rlead, glead);
    for (std::size_t k = 0; k < n; ++k)
      if (e[k] < lo[k] || e[k] > hi[k]) return std::nullopt;
    BigInt c = rcoef / gcoef;
    q.add_term(e, c);
    r -= g.shifted(e) * c;
  }
  return q;
}

/// An element of Z[M / M cap sigma^perp], keyed by pairing vectors with the
/// rays of sigma.
struct RestrictedPoly {
  Cone cone;
  LaurentPoly poly;

  friend bool operator==(const RestrictedPoly& a, const RestrictedPoly& b) {
    return a.cone == b.cone && a.poly == b.poly;
  }
  RestrictedPoly& operator+=(const RestrictedPoly& o) {
    check(o);
    poly += o.poly;
    return *this;
  }
  friend RestrictedPoly operator+(RestrictedPoly a, const RestrictedPoly& b) { return a += b; }
  friend RestrictedPoly operator-(RestrictedPoly a, const RestrictedPoly& b) {
    a.check(b);
    a.poly -= b.poly;
    return a;
  }
  friend RestrictedPoly operator-(RestrictedPoly a) {
    a.poly = -a.poly;
    return a;
  }
  friend RestrictedPoly operator*(const RestrictedPoly& a, const RestrictedPoly& b) {
    a.check(b);
    return {a.cone, a.poly * b.poly};
  }

 private:
  void check(const RestrictedPoly& o) const {
    if (o.cone != cone) throw InputError("restricted polynomials over different cones");
  }
};

/// Push each exponent u to its pairing vector (<u, v_k>) over the rays of sigma.
inline RestrictedPoly restrict(const Fan& fan, const LaurentPoly& f, const Cone& sigma) {
  if (f.rank() != fan.rank) throw InputError("restrict: rank mismatch");
  std::vector<IntVec> rows;
  for (int r : sigma.rays) rows.push_back(fan.rays[r]);
  IntMatrix pair = rows.empty() ? IntMatrix(0, fan.rank) : IntMatrix::from_rows(rows, fan.rank);
  return {sigma, map_exponents(f, pair)};
}

/// The restriction map to a face: drop the coordinates of rays outside it.
inline RestrictedPoly face_restrict(const RestrictedPoly& g, const Cone& sigma) {
  if (!sigma.is_face_of(g.cone)) throw InputError("face_restrict: not a face");
  IntMatrix proj(sigma.dim(), g.cone.dim());
  for (std::size_t i = 0, j = 0; i < g.cone.rays.size(); ++i)
    if (sigma.contains(g.cone.rays[i])) proj(j++, i) = 1;
  return {sigma, map_exponents(g.poly, proj)};
}

inline nlohmann::json to_json(const LaurentPoly& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : f.terms()) arr.push_back({{"exp", e}, {"coef", c.str()}});
  return arr;
}

inline LaurentPoly laurent_from_json(const nlohmann::json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("Laurent polynomial must be a JSON list of terms");
  LaurentPoly f(n);
  try {
    for (const auto& t : j) {
      IntVec e = t.at("exp").get<IntVec>();
      if (e.size() != n) throw InputError("Laurent term exponent has the wrong length");
      const auto& c = t.at("coef");
      f.add_term(e, c.is_string() ? parse_bigint(c.get<std::string>()) : BigInt(c.get<long long>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed Laurent polynomial: ") + e.what());
  }
  return f;
}

/// Human-readable form in variables x0, x1, ... (or the given names).
inline std::string to_string(const LaurentPoly& f, const std::vector<std::string>& names = {}) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt a = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool unit = is_zero(e);
    if (a != 1 || unit) os << a;
    bool any = a != 1 || unit;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      os << (any ? "*" : "") << (k < names.size() ? names[k] : "x" + std::to_string(k));
      if (e[k] != 1) os << "^" << e[k];
      any = true;
    }
    first = false;
  }
  return os.str();
}

}  // namespace ekt
