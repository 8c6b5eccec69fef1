#pragma once

// Truncated models of rings of tuples: every slot is a Laurent polynomial
// supported in a finite region, and the tuples are cut out by congruences
// a - b in (1 - e^chi) and by invariance under finite reflection groups.

#include "ekt/laurent.hpp"
#include "ekt/sparse.hpp"

#include <functional>
#include <random>

namespace ekt {

/// A finite set of lattice points.
class Region {
 public:
  Region() = default;
  Region(std::size_t rank, std::vector<IntVec> points) : rank_(rank), points_(std::move(points)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    for (std::size_t i = 0; i < points_.size(); ++i) index_[points_[i]] = static_cast<int>(i);
  }

  /// Points with lo <= w <= hi coordinatewise that satisfy the predicate.
  static Region grid(const IntVec& lo, const IntVec& hi, const std::function<bool(const IntVec&)>& keep = {}) {
    const std::size_t n = lo.size();
    std::vector<IntVec> pts;
    for (std::size_t k = 0; k < n; ++k)
      if (lo[k] > hi[k]) return Region(n, {});
    IntVec w = lo;
    while (true) {
      if (!keep || keep(w)) pts.push_back(w);
      std::size_t k = 0;
      while (k < n && w[k] == hi[k]) {
        w[k] = lo[k];
        ++k;
      }
      if (k == n) break;
      ++w[k];
    }
    return Region(n, std::move(pts));
  }

  static Region box(std::size_t n, std::int64_t d) { return grid(IntVec(n, -d), IntVec(n, d)); }

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<IntVec>& points() const { return points_; }
  int at(const IntVec& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : it->second;
  }
  bool contains(const IntVec& w) const { return at(w) >= 0; }
  bool contains(const LaurentPoly& f) const {
    for (const auto& [e, c] : f.terms())
      if (!contains(e)) return false;
    return true;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<IntVec> points_;
  std::map<IntVec, int> index_;
};

/// a - b lies in (1 - e^chi); chi = 0 means a = b.
struct Congruence {
  int a = 0;
  int b = 0;
  IntVec chi;
};

/// One generator of an ideal together with a region R such that g * R lies in
/// the ambient region.
struct IdealGenerator {
  LaurentPoly g;
  Region sub;
};

class CongruenceSystem {
 public:
  CongruenceSystem(std::size_t rank, std::size_t slots) : rank_(rank), slots_(slots) {}

  void add_congruence(int a, int b, const IntVec& chi) {
    if (chi.size() != rank_) throw InputError("congruence character has the wrong length");
    congruences_.push_back({a, b, chi});
  }
  /// Every slot must be invariant under this exponent map.
  void add_symmetry(const IntMatrix& s) { symmetries_.push_back(s); }

  std::size_t rank() const { return rank_; }
  std::size_t slots() const { return slots_; }
  const std::vector<Congruence>& congruences() const { return congruences_; }

  std::size_t num_vars(const Region& r) const { return slots_ * r.size(); }
  int var(const Region& r, int slot, int point) const { return slot * static_cast<int>(r.size()) + point; }

  std::vector<SparseVec> constraint_rows(const Region& r) const {
    std::vector<SparseVec> rows;
    for (const auto& c : congruences_) {
      if (c.a == c.b) continue;
      std::size_t p = detail::first_nonzero(c.chi);
      std::map<IntVec, std::map<int, BigInt>> cosets;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const IntVec& w = r.points()[i];
        IntVec key = w;
        if (p < rank_) key = sub(w, scale(c.chi, floor_div(w[p], c.chi[p])));
        auto& row = cosets[key];
        row[var(r, c.a, static_cast<int>(i))] += 1;
        row[var(r, c.b, static_cast<int>(i))] -= 1;
      }
      for (auto& [key, row] : cosets) {
        SparseVec v = sparse_from_map(row);
        if (!v.empty()) rows.push_back(std::move(v));
      }
    }
    for (const auto& s : symmetries_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        int j = r.at(s.apply(r.points()[i]));
        if (j < 0) throw InputError("region is not stable under the symmetry group");
        if (j <= static_cast<int>(i)) continue;
        for (std::size_t slot = 0; slot < slots_; ++slot) {
          std::map<int, BigInt> row;
          row[var(r, static_cast<int>(slot), static_cast<int>(i))] = 1;
          row[var(r, static_cast<int>(slot), j)] = -1;
          rows.push_back(sparse_from_map(row));
        }
      }
    return rows;
  }

  SparseEchelon constraints(const Region& r) const {
    SparseEchelon e(num_vars(r));
    for (const auto& row : constraint_rows(r)) e.insert(row);
    return e;
  }

  /// Integer members forming a Q-basis of the truncated model on r.
  std::vector<SparseVec> member_basis(const Region& r) const { return constraints(r).kernel(); }

  std::vector<LaurentPoly> to_slots(const Region& r, const SparseVec& v) const {
    std::vector<LaurentPoly> out(slots_, LaurentPoly(rank_));
    for (const auto& [i, c] : v) out[i / r.size()].add_term(r.points()[i % r.size()], c);
    return out;
  }

  /// nullopt if some term falls outside the region.
  std::optional<SparseVec> from_slots(const Region& r, const std::vector<LaurentPoly>& t) const {
    std::map<int, BigInt> m;
    for (std::size_t s = 0; s < slots_; ++s)
      for (const auto& [e, c] : t[s].terms()) {
        int i = r.at(e);
        if (i < 0) return std::nullopt;
        m[var(r, static_cast<int>(s), i)] = c;
      }
    return sparse_from_map(m);
  }

  bool is_member(const std::vector<LaurentPoly>& t) const {
    for (const auto& c : congruences_) {
      LaurentPoly diff = t[c.a] - t[c.b];
      if (is_zero(c.chi) ? !diff.is_zero() : !in_character_ideal(diff, c.chi)) return false;
    }
    for (const auto& s : symmetries_)
      for (const auto& f : t)
        if (map_exponents(f, s) != f) return false;
    return true;
  }

  struct QuotientRank {
    std::size_t members = 0;  // rank of the truncated model
    std::size_t ideal = 0;    // rank of the truncated ideal multiples
    std::size_t rank() const { return members - ideal; }
  };

  /// Rank of the truncated model on `region` modulo the span of g * (model on sub).
  QuotientRank quotient_rank(const Region& region, const std::vector<IdealGenerator>& ideal) const {
    QuotientRank q;
    SparseEchelon c = constraints(region);
    q.members = num_vars(region) - c.rank();
    SparseEchelon span(num_vars(region));
    for (const auto& gen : ideal) {
      for (const auto& v : member_basis(gen.sub)) {
        auto t = to_slots(gen.sub, v);
        for (auto& f : t) f = gen.g * f;
        auto img = from_slots(region, t);
        if (!img) throw InputError("ideal generator moves the subregion outside the region");
        span.insert(*img);
      }
    }
    q.ideal = span.rank();
    return q;
  }

 private:
  std::size_t rank_;
  std::size_t slots_;
  std::vector<Congruence> congruences_;
  std::vector<IntMatrix> symmetries_;
};

/// Random small integer combination of basis vectors.
inline SparseVec random_combination(const std::vector<SparseVec>& basis, std::mt19937_64& rng, int coef_bound = 3,
                                    int max_terms = 6) {
  std::map<int, BigInt> acc;
  if (basis.empty()) return {};
  int terms = 1 + static_cast<int>(rng() % max_terms);
  for (int t = 0; t < terms; ++t) {
    const SparseVec& b = basis[rng() % basis.size()];
    std::int64_t k = static_cast<std::int64_t>(rng() % (2 * coef_bound + 1)) - coef_bound;
    if (k == 0) k = 1;
    for (const auto& [i, c] : b) acc[i] += c * k;
  }
  return sparse_from_map(acc);
}

/// Generators 1 - e^{e_k} of the augmentation ideal, with the box shrunk on the
/// side that the shift leaves.
inline std::vector<IdealGenerator> augmentation_generators(std::size_t n, std::int64_t d) {
  std::vector<IdealGenerator> gens;
  for (std::size_t k = 0; k < n; ++k) {
    IntVec e(n, 0);
    e[k] = 1;
    IntVec lo(n, -d), hi(n, d);
    hi[k] = d - 1;
    gens.push_back({LaurentPoly::one(n) - LaurentPoly::monomial(e), Region::grid(lo, hi)});
  }
  return gens;
}

}  // namespace ekt
