#pragma once

// Sparse integer vectors and fraction-free row echelon forms, used for the
// large but very sparse constraint systems of truncated ring models.

#include "ekt/intlat.hpp"

#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace ekt {

/// Sorted (index, nonzero value) pairs.
using SparseVec = std::vector<std::pair<int, BigInt>>;

inline SparseVec sparse_from_map(const std::map<int, BigInt>& m) {
  SparseVec v;
  for (const auto& [i, c] : m)
    if (!c.is_zero()) v.emplace_back(i, c);
  return v;
}

/// a * x + b * y
inline SparseVec sparse_combine(const BigInt& a, const SparseVec& x, const BigInt& b, const SparseVec& y) {
  SparseVec r;
  r.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      if (!a.is_zero()) r.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      if (!b.is_zero()) r.emplace_back(y[j].first, b * y[j].second);
      ++j;
    } else {
      BigInt c = a * x[i].second + b * y[j].second;
      if (!c.is_zero()) r.emplace_back(x[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

/// Divide by the content; the first entry becomes positive.
inline void sparse_normalize(SparseVec& v) {
  if (v.empty()) return;
  BigInt g = 0;
  for (const auto& [i, c] : v) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  if (v.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [i, c] : v) c /= g;
}

/// Incremental fraction-free echelon form over Q of a set of integer vectors.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t ncols) : ncols_(ncols) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }

  /// Reduce v against the current pivots (result is a rational multiple of the remainder).
  SparseVec reduce(SparseVec v) const {
    std::size_t pos = 0;
    while (pos < v.size()) {
      auto it = pivot_.find(v[pos].first);
      if (it == pivot_.end()) {
        ++pos;
        continue;
      }
      const SparseVec& row = rows_[it->second];
      const BigInt& p = row.front().second;
      BigInt c = v[pos].second;
      BigInt g = gcd(p, c);
      v = sparse_combine(p / g, v, -(c / g), row);
      sparse_normalize(v);
      // entries before pos are untouched by the pivot row
    }
    return v;
  }

  /// Adds v to the span; returns false if it was already dependent.
  bool insert(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    sparse_normalize(r);
    pivot_[r.front().first] = rows_.size();
    rows_.push_back(std::move(r));
    return true;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  /// Integer vectors forming a Q-basis of {x : row . x = 0 for all rows}.
  std::vector<SparseVec> kernel() const {
    // reduced echelon form: clear each pivot column from every other row
    std::vector<std::pair<int, SparseVec>> red;  // (pivot col, row), ascending
    for (const auto& [col, idx] : pivot_) red.emplace_back(col, rows_[idx]);
    for (std::size_t k = red.size(); k-- > 0;) {
      const int col = red[k].first;
      for (std::size_t q = 0; q < k; ++q) {
        SparseVec& row = red[q].second;
        auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(col, BigInt(0)),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it == row.end() || it->first != col) continue;
        const BigInt& p = red[k].second.front().second;
        BigInt c = it->second;
        BigInt g = gcd(p, c);
        row = sparse_combine(p / g, row, -(c / g), red[k].second);
        sparse_normalize(row);
      }
    }
    // per free column, the rows touching it
    std::map<int, std::vector<std::size_t>> touching;
    for (std::size_t k = 0; k < red.size(); ++k)
      for (std::size_t e = 1; e < red[k].second.size(); ++e) touching[red[k].second[e].first].push_back(k);
    std::vector<SparseVec> out;
    for (std::size_t f = 0; f < ncols_; ++f) {
      if (pivot_.count(static_cast<int>(f))) continue;
      auto t = touching.find(static_cast<int>(f));
      BigInt lcm = 1;
      if (t != touching.end())
        for (std::size_t k : t->second) {
          const BigInt& a = red[k].second.front().second;
          lcm = lcm / gcd(lcm, a) * a;
        }
      std::map<int, BigInt> vec;
      vec[static_cast<int>(f)] = lcm;
      if (t != touching.end())
        for (std::size_t k : t->second) {
          const SparseVec& row = red[k].second;
          auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(static_cast<int>(f), BigInt(0)),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
          vec[row.front().first] = -(it->second * lcm / row.front().second);
        }
      SparseVec v = sparse_from_map(vec);
      sparse_normalize(v);
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  std::size_t ncols_;
  std::vector<SparseVec> rows_;
  std::map<int, std::size_t> pivot_;
};

/// Echelon form over Z of the lattice spanned by a set of integer vectors.
class IntegerEchelon {
 public:
  explicit IntegerEchelon(std::size_t ncols) : ncols_(ncols) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }

  void insert(SparseVec v) {
    while (!v.empty()) {
      const int c = v.front().first;
      auto it = rows_.find(c);
      if (it == rows_.end()) {
        if (v.front().second < 0)
          for (auto& e : v) e.second = -e.second;
        rows_.emplace(c, std::move(v));
        return;
      }
      SparseVec& r = it->second;
      const BigInt a = r.front().second, b = v.front().second;
      if (b % a == 0) {
        v = sparse_combine(1, v, -(b / a), r);
        continue;
      }
      auto [g, x, y] = ext_gcd(a, b);
      SparseVec nr = sparse_combine(x, r, y, v);
      v = sparse_combine(a / g, v, -(b / g), r);
      if (nr.front().second < 0)
        for (auto& e : nr) e.second = -e.second;
      r = std::move(nr);
    }
  }

  bool contains(SparseVec v) const {
    while (!v.empty()) {
      auto it = rows_.find(v.front().first);
      if (it == rows_.end()) return false;
      const BigInt& a = it->second.front().second;
      const BigInt& b = v.front().second;
      if (b % a != 0) return false;
      v = sparse_combine(1, v, -(b / a), it->second);
    }
    return true;
  }

 private:
  /// (g, x, y) with x a + y b = g = gcd(a, b) > 0.
  static std::tuple<BigInt, BigInt, BigInt> ext_gcd(BigInt a, BigInt b) {
    BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
      BigInt q = a / b, t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
      t = y0 - q * y1;
      y0 = y1;
      y1 = t;
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
  }

  std::size_t ncols_;
  std::map<int, SparseVec> rows_;  // pivot column -> row, pivot entry positive
};

}  // namespace ekt
