#pragma once

// Exact integer lattice linear algebra: Hermite and Smith normal forms,
// integer kernels, saturated quotient lattices and integer/rational solves.

#include "ekt/bigint.hpp"

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace ekt {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw InputError("ragged matrix literal");
      for (auto x : r) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length `dim`).
  static IntMatrix from_columns(const std::vector<IntVec>& cols, std::size_t dim) {
    IntMatrix m(dim, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i) m(i, j) = cols[j][i];
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t dim) {
    IntMatrix m(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntVec column_i64(std::size_t j) const {
    IntVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = to_i64((*this)(i, j));
    return v;
  }

  IntVec row_i64(std::size_t i) const {
    IntVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = to_i64((*this)(i, j));
    return v;
  }

  std::vector<BigInt> apply(const std::vector<BigInt>& x) const {
    std::vector<BigInt> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!x[j].is_zero()) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  IntVec apply(const IntVec& x) const {
    IntVec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      BigInt s = 0;
      for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
      y[i] = to_i64(s);
    }
    return y;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x.is_zero(); });
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix dimension mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const BigInt& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row_dst -= q * row_src
  void sub_row(std::size_t dst, std::size_t src, const BigInt& q) {
    if (q.is_zero()) return;
    for (std::size_t j = 0; j < cols_; ++j) {
      const BigInt& s = (*this)(src, j);
      if (!s.is_zero()) (*this)(dst, j) -= q * s;
    }
  }
  void sub_col(std::size_t dst, std::size_t src, const BigInt& q) {
    if (q.is_zero()) return;
    for (std::size_t i = 0; i < rows_; ++i) {
      const BigInt& s = (*this)(i, src);
      if (!s.is_zero()) (*this)(i, dst) -= q * s;
    }
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

namespace detail {

// Row echelon form over Z by unimodular row operations, mirrored onto `u`
// when given. Returns pivot columns. With `reduce_above`, entries above each
// (positive) pivot end up in [0, pivot).
inline std::vector<std::size_t> integer_echelon(IntMatrix& h, IntMatrix* u, bool reduce_above) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c).is_zero()) continue;
        if (best == h.rows() || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == h.rows()) break;
      h.swap_rows(r, best);
      if (u) u->swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c).is_zero()) continue;
        BigInt q = floor_div(h(i, c), h(r, c));
        h.sub_row(i, r, q);
        if (u) u->sub_row(i, r, q);
        if (!h(i, c).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c).is_zero()) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      if (u) u->negate_row(r);
    }
    if (reduce_above) {
      for (std::size_t i = 0; i < r; ++i) {
        BigInt q = floor_div(h(i, c), h(r, c));
        h.sub_row(i, r, q);
        if (u) u->sub_row(i, r, q);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

struct HermiteResult {
  IntMatrix h;
  IntMatrix u;
};

/// Row-style Hermite normal form: u unimodular and h = u * m.
inline HermiteResult hermite_normal_form(const IntMatrix& m) {
  HermiteResult res{m, IntMatrix::identity(m.rows())};
  detail::integer_echelon(res.h, &res.u, true);
  return res;
}

struct SmithResult {
  IntMatrix d;
  IntMatrix p;
  IntMatrix q;
  std::vector<BigInt> invariant_factors() const {
    std::vector<BigInt> f;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
      if (!d(i, i).is_zero()) f.push_back(d(i, i));
    return f;
  }
};

/// Smith normal form: d = p * m * q, diagonal, d_1 | d_2 | ... >= 0.
inline SmithResult smith_normal_form(const IntMatrix& m) {
  SmithResult s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& d = s.d;
  const std::size_t rk = std::min(d.rows(), d.cols());
  for (std::size_t t = 0; t < rk; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block goes to (t, t)
      std::size_t bi = d.rows(), bj = d.cols();
      for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j)
          if (!d(i, j).is_zero() && (bi == d.rows() || abs(d(i, j)) < abs(d(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == d.rows()) return s;
      d.swap_rows(t, bi);
      s.p.swap_rows(t, bi);
      d.swap_cols(t, bj);
      s.q.swap_cols(t, bj);
      bool done = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t).is_zero()) continue;
        BigInt qq = floor_div(d(i, t), d(t, t));
        d.sub_row(i, t, qq);
        s.p.sub_row(i, t, qq);
        if (!d(i, t).is_zero()) done = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j).is_zero()) continue;
        BigInt qq = floor_div(d(t, j), d(t, t));
        d.sub_col(j, t, qq);
        s.q.sub_col(j, t, qq);
        if (!d(t, j).is_zero()) done = false;
      }
      if (!done) continue;
      // divisibility: fold an offending row into row t and retry
      std::size_t bad = d.rows();
      for (std::size_t i = t + 1; i < d.rows() && bad == d.rows(); ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == d.rows()) break;
      d.sub_row(t, bad, -1);
      s.p.sub_row(t, bad, -1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.p.negate_row(t);
    }
  }
  return s;
}

/// Rank over Q.
inline std::size_t rank(const IntMatrix& m) {
  IntMatrix h = m;
  return detail::integer_echelon(h, nullptr, false).size();
}

/// Basis (as columns) of the integer kernel {x : m x = 0}; always saturated.
inline IntMatrix kernel_basis(const IntMatrix& m) {
  IntMatrix h = m.transpose();
  IntMatrix u = IntMatrix::identity(h.rows());
  std::size_t r = detail::integer_echelon(h, &u, false).size();
  IntMatrix k(m.cols(), h.rows() - r);
  for (std::size_t i = r; i < h.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) k(j, i - r) = u(i, j);
  return k;
}

/// Integer solution of a x = b, if one exists.
inline std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& a, const std::vector<BigInt>& b) {
  if (b.size() != a.rows()) throw InputError("solve_integer: right-hand side has wrong length");
  // u * a^T = h  <=>  a * u^T = h^T (column echelon form of a)
  IntMatrix h = a.transpose();
  IntMatrix u = IntMatrix::identity(h.rows());
  std::vector<std::size_t> piv = detail::integer_echelon(h, &u, false);
  std::vector<BigInt> y(h.rows());
  for (std::size_t c = 0; c < piv.size(); ++c) {
    std::size_t row = piv[c];  // pivot position of column c of h^T
    BigInt rhs = b[row];
    for (std::size_t k = 0; k < c; ++k) rhs -= h(k, row) * y[k];
    if (rhs % h(c, row) != 0) return std::nullopt;
    y[c] = rhs / h(c, row);
  }
  std::vector<BigInt> x(a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t k = 0; k < piv.size(); ++k)
      if (!y[k].is_zero()) x[i] += u(k, i) * y[k];
  if (a.apply(x) != b) return std::nullopt;
  return x;
}

/// Unique rational solution of a square nonsingular system; nullopt if singular.
inline std::optional<std::vector<Rational>> solve_rational(const IntMatrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw InputError("solve_rational: expected a square system");
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a(i, j));
    m[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// v divided by the gcd of its entries.
inline IntVec primitive(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = gcd(g, x);
  if (g == 0) throw InputError("primitive: zero vector");
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

/// Quotient of Z^n by the saturation of a sublattice.
struct QuotientLattice {
  std::size_t ambient_rank = 0;
  IntMatrix sub_basis;  // ambient_rank x k, columns
  std::size_t quot_rank = 0;
  IntMatrix project;  // quot_rank x ambient_rank
  IntMatrix section;  // ambient_rank x quot_rank, project * section = id

  IntVec apply(const IntVec& v) const { return project.apply(v); }
};

inline QuotientLattice quotient_lattice(std::size_t ambient_rank, const IntMatrix& sub_basis) {
  if (sub_basis.rows() != ambient_rank && sub_basis.cols() != 0)
    throw InputError("quotient_lattice: sub_basis has wrong ambient dimension");
  if (rank(sub_basis) != sub_basis.cols())
    throw InputError("quotient_lattice: sub_basis columns are dependent");
  QuotientLattice q;
  q.ambient_rank = ambient_rank;
  q.sub_basis = sub_basis;
  IntMatrix st = sub_basis.cols() ? sub_basis.transpose() : IntMatrix(0, ambient_rank);
  // The integer vectors orthogonal to the sublattice form a primitive system;
  // pairing with them is a surjection whose kernel is the saturation.
  IntMatrix k = kernel_basis(st);
  q.quot_rank = k.cols();
  q.project = k.transpose();
  if (q.quot_rank == 0) {
    q.section = IntMatrix(ambient_rank, 0);
    return q;
  }
  SmithResult s = smith_normal_form(q.project);
  // project = p^-1 [I 0] q^-1  =>  section = q [I; 0] p
  IntMatrix ip(ambient_rank, q.quot_rank);
  for (std::size_t i = 0; i < q.quot_rank; ++i) ip(i, i) = 1;
  q.section = s.q * ip * s.p;
  return q;
}

}  // namespace ekt
