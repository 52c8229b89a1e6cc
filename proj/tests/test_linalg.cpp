#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sqv/subspace.hpp"
#include "sqv/subspace_enum.hpp"

using namespace sqv;

namespace {

using Vec = std::vector<Elem>;

std::set<Vec> vectors_of(const FiniteField& f, const Subspace& s) {
  std::set<Vec> out;
  std::vector<Elem> c(s.dim(), 0);
  while (true) {
    Vec v(s.ambient(), 0);
    for (std::size_t k = 0; k < s.dim(); ++k)
      for (std::size_t x = 0; x < s.ambient(); ++x) v[x] = f.add(v[x], f.mul(c[k], s.row(k)[x]));
    out.insert(v);
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == f.order()) c[i++] = 0;
    if (i == c.size()) break;
  }
  return out;
}

std::set<Vec> all_vectors(const FiniteField& f, std::size_t n) { return vectors_of(f, Subspace::full(n)); }

Subspace random_subspace(const FiniteField& f, std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> dk(0, static_cast<unsigned>(n));
  std::uniform_int_distribution<unsigned> de(0, f.order() - 1);
  FMat m(dk(rng), n, 0);
  for (auto& e : m.data()) e = static_cast<Elem>(de(rng));
  return Subspace::span(f, m);
}

FMat random_matrix(const FiniteField& f, std::size_t r, std::size_t c, std::mt19937& rng) {
  std::uniform_int_distribution<unsigned> de(0, f.order() - 1);
  FMat m(r, c, 0);
  for (auto& e : m.data()) e = static_cast<Elem>(de(rng));
  return m;
}

Vec apply(const FiniteField& f, const FMat& m, const Vec& x) {
  Vec y(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] = f.add(y[i], f.mul(m(i, j), x[j]));
  return y;
}


FMat symplectic(const FiniteField& f, std::size_t m) {
  FMat g(2 * m, 2 * m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    g(k, m + k) = 1;
    g(m + k, k) = f.neg(1);
  }
  return g;
}

}  // namespace

TEST(Rref, RationalRankOneExample) {
  QMat m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  auto e = rref(Rationals{}, m);
  EXPECT_EQ(e.rank, 1u);
  ASSERT_EQ(e.kernel.rows(), 1u);
  // Kernel spans (2,-1).
  EXPECT_EQ(e.kernel(0, 0) * -1, 2 * e.kernel(0, 1));
  EXPECT_NE(e.kernel(0, 1), 0);
}

TEST(Rref, RationalInverseRoundTrip) {
  QMat m(3, 3);
  int vals[9] = {2, -1, 0, -1, 2, -1, 0, -1, 2};
  for (int i = 0; i < 9; ++i) m.data()[static_cast<std::size_t>(i)] = vals[i];
  QMat inv = inverse(Rationals{}, m);
  EXPECT_EQ(multiply(Rationals{}, m, inv), identity(Rationals{}, 3));
  QMat sing(2, 2, 1);
  EXPECT_THROW(inverse(Rationals{}, sing), std::domain_error);
}

TEST(Subspace, LatticeOperationsMatchVectorSets) {
  FiniteField f(3);
  std::mt19937 rng(7);
  const std::size_t n = 4;
  for (int trial = 0; trial < 60; ++trial) {
    Subspace a = random_subspace(f, n, rng), b = random_subspace(f, n, rng);
    auto va = vectors_of(f, a), vb = vectors_of(f, b);
    std::set<Vec> inter;
    for (auto& v : va)
      if (vb.count(v)) inter.insert(v);
    EXPECT_EQ(vectors_of(f, intersect(f, a, b)), inter);
    std::set<Vec> sums;
    for (auto& x : va)
      for (auto& y : vb) {
        Vec z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = f.add(x[i], y[i]);
        sums.insert(z);
      }
    EXPECT_EQ(vectors_of(f, sum(f, a, b)), sums);
    bool sub = std::includes(va.begin(), va.end(), vb.begin(), vb.end());
    EXPECT_EQ(contains(f, a, b), sub);
  }
}

TEST(Subspace, ImagePreimageAnnihilatorMatchBruteForce) {
  FiniteField f(2);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    FMat m = random_matrix(f, 3, 4, rng);
    Subspace s = random_subspace(f, 4, rng), t = random_subspace(f, 3, rng);
    std::set<Vec> img;
    for (auto& x : vectors_of(f, s)) img.insert(apply(f, m, x));
    EXPECT_EQ(vectors_of(f, image(f, m, s)), img);
    auto vt = vectors_of(f, t);
    std::set<Vec> pre;
    for (auto& x : all_vectors(f, 4))
      if (vt.count(apply(f, m, x))) pre.insert(x);
    EXPECT_EQ(vectors_of(f, preimage(f, m, t)), pre);
    // annihilator w.r.t. gram m: x in F^3 with x^T m y = 0 for y in s.
    std::set<Vec> ann;
    for (auto& x : all_vectors(f, 3)) {
      bool ok = true;
      for (auto& y : vectors_of(f, s))
        if (bilinear(f, m, x.data(), y.data()) != 0) ok = false;
      if (ok) ann.insert(x);
    }
    EXPECT_EQ(vectors_of(f, annihilator(f, m, s)), ann);
  }
}

TEST(SubspaceEnum, GrassmannianCountsAreGaussianBinomials) {
  for (unsigned p : {2u, 3u}) {
    FiniteField f(p);
    for (std::size_t n = 0; n <= 4; ++n)
      for (std::size_t k = 0; k <= n; ++k) {
        std::set<Subspace> seen;
        for_each_subspace(f, n, k, [&](const Subspace& s) {
          EXPECT_EQ(s.dim(), k);
          EXPECT_EQ(Subspace::span(f, s.basis()), s);
          seen.insert(s);
          return true;
        });
        EXPECT_EQ(seen.size(), gaussian_binomial(static_cast<unsigned>(n), static_cast<unsigned>(k), p));
      }
  }
}

TEST(SubspaceEnum, SandwichMatchesFilter) {
  FiniteField f(3);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Subspace lo = random_subspace(f, 4, rng);
    Subspace hi = sum(f, lo, random_subspace(f, 4, rng));
    for (std::size_t k = 0; k <= 4; ++k) {
      std::set<Subspace> got, want;
      for_each_subspace_between(f, lo, hi, k, [&](const Subspace& s) {
        got.insert(s);
        return true;
      });
      for_each_subspace(f, 4, k, [&](const Subspace& s) {
        if (contains(f, s, lo) && contains(f, hi, s)) want.insert(s);
        return true;
      });
      EXPECT_EQ(got, want);
    }
  }
}

TEST(SubspaceEnum, IsotropicEnumerationMatchesNaiveFilter) {
  for (unsigned p : {2u, 3u}) {
    FiniteField f(p);
    for (std::size_t m = 1; m <= 3; ++m) {
      FMat g = symplectic(f, m);
      for (std::size_t k = 0; k <= m; ++k) {
        std::set<Subspace> got, want;
        for_each_isotropic(f, g, k, [&](const Subspace& s) {
          got.insert(s);
          return true;
        });
        for_each_subspace(f, 2 * m, k, [&](const Subspace& s) {
          if (is_isotropic(f, g, s)) want.insert(s);
          return true;
        });
        EXPECT_EQ(got, want) << "p=" << p << " m=" << m << " k=" << k;
      }
    }
  }
}

TEST(SubspaceEnum, LagrangianCountIsProductFormula) {
  for (unsigned p : {2u, 3u, 5u}) {
    FiniteField f(p);
    for (std::size_t m = 1; m <= 3; ++m) {
      if (p == 5 && m == 3) continue;
      FMat g = symplectic(f, m);
      std::uint64_t count = 0;
      for_each_lagrangian_between(f, g, Subspace::zero(2 * m), Subspace::full(2 * m), [&](const Subspace&) {
        ++count;
        return true;
      });
      std::uint64_t expected = 1;
      for (std::size_t i = 1; i <= m; ++i) {
        std::uint64_t qi = 1;
        for (std::size_t t = 0; t < i; ++t) qi *= p;
        expected *= qi + 1;
      }
      EXPECT_EQ(count, expected);
    }
  }
}

TEST(SubspaceEnum, LagrangianSandwichMatchesFilter) {
  FiniteField f(3);
  FMat g = symplectic(f, 2);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Subspace lo = random_subspace(f, 4, rng);
    Subspace hi = sum(f, lo, random_subspace(f, 4, rng));
    std::set<Subspace> got, want;
    for_each_lagrangian_between(f, g, lo, hi, [&](const Subspace& s) {
      got.insert(s);
      return true;
    });
    for_each_subspace(f, 4, 2, [&](const Subspace& s) {
      if (is_isotropic(f, g, s) && contains(f, s, lo) && contains(f, hi, s)) want.insert(s);
      return true;
    });
    EXPECT_EQ(got, want);
  }
}

TEST(SubspaceEnum, ExtensionFieldGrassmannian) {
  FiniteField f(2, 2);
  std::uint64_t count = 0;
  for_each_subspace(f, 3, 1, [&](const Subspace&) {
    ++count;
    return true;
  });
  EXPECT_EQ(count, 21u);
}
