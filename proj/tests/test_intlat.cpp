#include "ekt/intlat.hpp"
#include "ekt/sparse.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ekt;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long long>(rng() % (2 * bound + 1)) - bound;
  return m;
}

bool is_unimodular(const IntMatrix& u) {
  BigInt d = determinant(u);
  return d == 1 || d == -1;
}

bool is_row_echelon(const IntMatrix& h) {
  long long last = -1;
  bool zero_rows = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    long long p = -1;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (!h(i, j).is_zero()) {
        p = static_cast<long long>(j);
        break;
      }
    if (p < 0) {
      zero_rows = true;
      continue;
    }
    if (zero_rows || p <= last || h(i, p) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
    last = p;
  }
  return true;
}

}  // namespace

TEST(Hermite, IdentityIsFixed) {
  auto r = hermite_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(r.h, IntMatrix::identity(2));
  EXPECT_EQ(r.u, IntMatrix::identity(2));
}

TEST(Hermite, HandReducedExample) {
  IntMatrix m{{2, 4}, {0, 3}};
  auto r = hermite_normal_form(m);
  EXPECT_EQ(r.h, (IntMatrix{{2, 1}, {0, 3}}));
  EXPECT_EQ(r.u * m, r.h);
}

TEST(Hermite, ZeroMatrix) {
  IntMatrix z(2, 3);
  auto r = hermite_normal_form(z);
  EXPECT_TRUE(r.h.is_zero());
  EXPECT_EQ(r.u, IntMatrix::identity(2));
}

TEST(Hermite, RandomInvariants) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, r, c, 6);
    auto res = hermite_normal_form(m);
    EXPECT_EQ(res.u * m, res.h);
    EXPECT_TRUE(is_unimodular(res.u));
    EXPECT_TRUE(is_row_echelon(res.h)) << m;
  }
}

TEST(Smith, Diag23) {
  auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(s.d, (IntMatrix{{1, 0}, {0, 6}}));
}

TEST(Smith, IdentityAndDiag22) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).d, IntMatrix::identity(3));
  EXPECT_EQ(smith_normal_form(IntMatrix{{2, 0}, {0, 2}}).d, (IntMatrix{{2, 0}, {0, 2}}));
}

TEST(Smith, RandomInvariants) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, r, c, 8);
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.p * m * s.q, s.d);
    EXPECT_TRUE(is_unimodular(s.p));
    EXPECT_TRUE(is_unimodular(s.q));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) {
          EXPECT_TRUE(s.d(i, j).is_zero());
        }
    auto f = s.invariant_factors();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      EXPECT_GT(f[i], 0);
      EXPECT_TRUE(f[i + 1] % f[i] == 0);
    }
    EXPECT_EQ(f.size(), rank(m));
  }
}

TEST(Kernel, OneByTwo) {
  IntMatrix k = kernel_basis(IntMatrix{{1, 2}});
  ASSERT_EQ(k.cols(), 1u);
  IntVec v = k.column_i64(0);
  EXPECT_TRUE(v == (IntVec{2, -1}) || v == (IntVec{-2, 1}));
}

TEST(Kernel, InjectiveAndZero) {
  EXPECT_EQ(kernel_basis(IntMatrix::identity(3)).cols(), 0u);
  IntMatrix k = kernel_basis(IntMatrix(1, 2));
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_TRUE(is_unimodular(k));
}

TEST(Kernel, RandomSaturated) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 6;
    IntMatrix m = random_matrix(rng, r, c, 5);
    IntMatrix k = kernel_basis(m);
    EXPECT_EQ(k.cols() + rank(m), c);
    EXPECT_TRUE((m * k).is_zero());
    if (k.cols() == 0) continue;
    // saturated: the kernel columns form a primitive system
    for (const auto& f : smith_normal_form(k).invariant_factors()) EXPECT_EQ(f, 1);
  }
}

TEST(Quotient, PrimitiveSubLattice) {
  auto q = quotient_lattice(2, IntMatrix::from_columns({{1, 2}}, 2));
  EXPECT_EQ(q.quot_rank, 1u);
  EXPECT_EQ(q.apply({1, 2}), (IntVec{0}));
  EXPECT_EQ(q.project * q.section, IntMatrix::identity(1));
  IntVec img = q.apply({1, 0});
  EXPECT_TRUE(img == (IntVec{2}) || img == (IntVec{-2}));
}

TEST(Quotient, TrivialSubLattice) {
  auto q = quotient_lattice(2, IntMatrix(2, 0));
  EXPECT_EQ(q.quot_rank, 2u);
  EXPECT_TRUE(is_unimodular(q.project));
  EXPECT_EQ(q.project * q.section, IntMatrix::identity(2));
}

TEST(Quotient, Saturation) {
  auto q = quotient_lattice(2, IntMatrix::from_columns({{2, 0}}, 2));
  EXPECT_EQ(q.quot_rank, 1u);
  EXPECT_EQ(q.apply({1, 0}), (IntVec{0}));
  IntVec img = q.apply({0, 1});
  EXPECT_TRUE(img == (IntVec{1}) || img == (IntVec{-1}));
}

TEST(Quotient, DependentColumnsRejected) {
  EXPECT_THROW(quotient_lattice(2, IntMatrix::from_columns({{1, 2}, {2, 4}}, 2)), InputError);
}

TEST(Quotient, RandomInvariants) {
  std::mt19937_64 rng(14);
  int done = 0;
  while (done < 150) {
    std::size_t n = 1 + rng() % 6, k = rng() % (n + 1);
    IntMatrix b = random_matrix(rng, n, k, 4);
    if (rank(b) != k) continue;
    ++done;
    auto q = quotient_lattice(n, b);
    EXPECT_EQ(q.quot_rank + k, n);
    EXPECT_EQ(q.project * q.section, IntMatrix::identity(q.quot_rank));
    EXPECT_TRUE((q.project * b).is_zero());
  }
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive({2, 4}), (IntVec{1, 2}));
  EXPECT_EQ(primitive({1, 0}), (IntVec{1, 0}));
  EXPECT_EQ(primitive({-2, -2}), (IntVec{-1, -1}));
  EXPECT_THROW(primitive({0, 0}), InputError);
}

TEST(Primitive, ScalingInvariance) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 100; ++t) {
    IntVec v(3);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % 13) - 6;
    if (is_zero(v)) continue;
    std::int64_t k = static_cast<std::int64_t>(rng() % 9) - 4;
    if (k == 0) continue;
    IntVec a = primitive(scale(v, k)), b = primitive(v);
    EXPECT_TRUE(a == b || a == negate(b));
  }
}

TEST(Solve, IntegerAndRational) {
  IntMatrix a{{2, 0}, {0, 3}};
  auto x = solve_integer(a, {4, 9});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 2);
  EXPECT_EQ((*x)[1], 3);
  EXPECT_FALSE(solve_integer(a, {1, 0}));
  auto q = solve_rational(IntMatrix{{1, -1}, {0, -2}}, {2, 1});
  ASSERT_TRUE(q);
  EXPECT_EQ((*q)[0], Rational(3, 2));
  EXPECT_EQ((*q)[1], Rational(-1, 2));
  EXPECT_EQ(determinant(IntMatrix{{1, -1}, {0, -2}}), -2);
}

TEST(Solve, RandomIntegerSystems) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, r, c, 5);
    std::vector<BigInt> x0(c);
    for (auto& v : x0) v = static_cast<long long>(rng() % 11) - 5;
    auto b = a.apply(x0);
    auto x = solve_integer(a, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(a.apply(*x), b);
  }
}

TEST(IntegerEchelon, MembershipMatchesDenseSolve) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 2 + rng() % 4, cols = 1 + rng() % 4;
    IntMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = static_cast<std::int64_t>(rng() % 7) - 3;
    IntegerEchelon lat(rows);
    for (std::size_t j = 0; j < cols; ++j) {
      std::map<int, BigInt> col;
      for (std::size_t i = 0; i < rows; ++i) col[static_cast<int>(i)] = a(i, j);
      lat.insert(sparse_from_map(col));
    }
    EXPECT_EQ(lat.rank(), rank(a));
    for (int probe = 0; probe < 10; ++probe) {
      std::vector<BigInt> b(rows);
      std::map<int, BigInt> m;
      for (std::size_t i = 0; i < rows; ++i) m[static_cast<int>(i)] = b[i] = static_cast<std::int64_t>(rng() % 9) - 4;
      if (probe % 2) {
        // a genuine member
        for (std::size_t i = 0; i < rows; ++i) b[i] = 0;
        for (std::size_t j = 0; j < cols; ++j) {
          BigInt k = static_cast<std::int64_t>(rng() % 5) - 2;
          for (std::size_t i = 0; i < rows; ++i) b[i] += k * a(i, j);
        }
        for (std::size_t i = 0; i < rows; ++i) m[static_cast<int>(i)] = b[i];
      }
      EXPECT_EQ(lat.contains(sparse_from_map(m)), solve_integer(a, b).has_value());
    }
  }
}
