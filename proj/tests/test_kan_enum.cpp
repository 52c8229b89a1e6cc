#include <gtest/gtest.h>

#include <map>

#include "sqv/grassmann_enum.hpp"
#include "sqv/subspace_enum.hpp"
#include "sqv/verifier.hpp"

using namespace sqv;

namespace {

// Every tuple of subspaces, filtered by the subrepresentation (and
// sigma-fixed) conditions. Independent of the backtracking enumerator.
std::map<DimVector, std::uint64_t> naive_strata(const FqRep& rep, bool sigma) {
  const FiniteField& fld = rep.field();
  const int n = rep.rank();
  std::vector<std::vector<Subspace>> all(static_cast<std::size_t>(n));
  for (Vertex i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= rep.dim(i); ++k)
      for_each_subspace(fld, rep.dim(i), k, [&](const Subspace& s) {
        all[static_cast<std::size_t>(i)].push_back(s);
        return true;
      });
  std::map<DimVector, std::uint64_t> out;
  Point f;
  f.spaces.resize(static_cast<std::size_t>(n));
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (!is_subrep(rep, f)) return;
      if (sigma && !is_sigma_fixed(rep, f)) return;
      ++out[f.dim()];
      return;
    }
    for (auto& s : all[static_cast<std::size_t>(i)]) {
      f.spaces[static_cast<std::size_t>(i)] = s;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::map<DimVector, std::uint64_t> table_map(const FqRep& rep, bool sigma) {
  std::map<DimVector, std::uint64_t> out;
  for (auto& s : stratum_table(rep, sigma)) out[s.v] = s.count;
  return out;
}

std::uint64_t gb(unsigned n, unsigned k, std::uint64_t q) { return gaussian_binomial(n, k, q); }

}  // namespace

TEST(KanRep, VertexDimensionsMatchCartanSolve) {
  struct Case {
    DimVector w, dims;
  };
  // Direct sums of Hom(Q(i,j), W(j)) with dim Q(i,j) = min(i, j, 2d-i, 2d-j).
  for (const Case& c : {Case{{2, 0, 0}, {2, 2, 2}}, Case{{0, 2, 0}, {2, 4, 2}}, Case{{2, 0, 2}, {4, 4, 4}},
                        Case{{1, 0, 1}, {2, 2, 2}}}) {
    Workbench wb(2, c.w, false);
    EXPECT_EQ(wb.kan().dims, c.dims) << c.w.str();
    EXPECT_EQ(wb.dynkin().kan_dim(c.w), c.dims) << c.w.str();
  }
  Workbench d3(3, {2, 0, 0, 0, 2}, true);
  EXPECT_EQ(d3.kan().dims, d3.dynkin().kan_dim({2, 0, 0, 0, 2}));
}

TEST(KanRep, SigmaModeNeedsEvenFrames) {
  EXPECT_THROW(Workbench(2, {1, 0, 1}, true), std::invalid_argument);
  EXPECT_THROW(Workbench(2, {2, 0}, true), std::invalid_argument);
  EXPECT_NO_THROW(Workbench(2, {2, 0, 2}, true));
}

TEST(KanRep, FlippedSignIsRejectedBeforeAnyEnumeration) {
  EXPECT_THROW(Workbench(2, {0, 2, 0}, true, {1, -1, 1}), PairingError);
}

TEST(KanRep, FlagCaseArrowsAreIdentityOrZero) {
  Workbench wb(2, {2, 0, 0}, false);
  const FqRep& r = wb.rep(3);
  const FiniteField& f = r.field();
  for (Vertex k = 0; k + 1 < 3; ++k) {
    const FMat& a = r.arrow(k, k + 1);
    const FMat& b = r.arrow(k + 1, k);
    const bool a_zero = rank(f, a) == 0, b_zero = rank(f, b) == 0;
    EXPECT_NE(a_zero, b_zero);
    EXPECT_EQ(rank(f, a_zero ? b : a), 2u);
  }
}

TEST(Enumeration, MatchesNaiveTupleFilter) {
  struct Case {
    DimVector w;
    bool sigma;
    unsigned p;
  };
  for (const Case& c : {Case{{2, 0, 0}, false, 3}, Case{{2, 0, 0}, true, 3}, Case{{0, 2, 0}, true, 3}, Case{{0, 2, 0}, false, 2},
                        Case{{1, 0, 1}, false, 3}, Case{{2, 0, 2}, true, 2}}) {
    Workbench wb(2, c.w, c.sigma);
    const FqRep& r = wb.rep(c.p);
    EXPECT_EQ(table_map(r, c.sigma), naive_strata(r, c.sigma)) << c.w.str() << " sigma=" << c.sigma << " q=" << c.p;
  }
}

TEST(Enumeration, FlagCaseIsNestedFlags) {
  Workbench wb(2, {2, 0, 0}, false);
  for (unsigned q : {2u, 3u}) {
    auto t = table_map(wb.rep(q), false);
    std::map<DimVector, std::uint64_t> flags;
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= a; ++b)
        for (int c = 0; c <= b; ++c)
          flags[{a, b, c}] = gb(2, static_cast<unsigned>(a), q) * gb(static_cast<unsigned>(a), static_cast<unsigned>(b), q) *
                             gb(static_cast<unsigned>(b), static_cast<unsigned>(c), q);
    EXPECT_EQ(t, flags) << "q=" << q;
  }
}

TEST(Enumeration, FlagCaseSigmaStrataAreSymplecticFlags) {
  // In a symplectic plane every line is Lagrangian: the coisotropic flags are
  // (L, L, L) and (W, L, 0).
  Workbench wb(2, {2, 0, 0}, true);
  for (unsigned q : {2u, 3u}) {
    std::map<DimVector, std::uint64_t> want{{{1, 1, 1}, q + 1}, {{2, 1, 0}, q + 1}};
    EXPECT_EQ(table_map(wb.rep(q), true), want);
  }
}

TEST(Enumeration, ChainOfThreeProjectiveLines) {
  Workbench wb(2, {1, 0, 1}, false);
  for (unsigned q : {2u, 3u, 5u}) EXPECT_EQ(count_points(wb.rep(q), {1, 1, 1}, false), 3 * q + 1);
  auto t = table_map(wb.rep(2), false);
  EXPECT_EQ(t.at({2, 2, 2}), 1u);
}

TEST(Enumeration, MiddleFrameStrata) {
  Workbench wb(2, {0, 2, 0}, true);
  for (unsigned q : {2u, 3u, 5u}) {
    const FqRep& r = wb.rep(q);
    EXPECT_EQ(count_points(r, {0, 2, 2}, true), 1u);
    EXPECT_EQ(count_points(r, {2, 2, 0}, true), 1u);
    EXPECT_EQ(count_points(r, {1, 2, 1}, true), (q + 1) * (q + 1));
  }
  Workbench one(2, {0, 1, 0}, false);
  for (auto& s : stratum_table(one.rep(3), false)) EXPECT_LE(s.count, 1u);
}

TEST(Enumeration, OuterFrameStrata) {
  Workbench wb(2, {2, 0, 2}, true);
  // Frozen from the exhaustive enumeration, cross-checked against the
  // two-component count (q+1)(q^2+1) + (q+1)^3 - (q+1)^2.
  const std::map<unsigned, std::uint64_t> middle{{2, 33}, {3, 88}};
  for (unsigned q : {2u, 3u}) {
    const FqRep& r = wb.rep(q);
    EXPECT_EQ(count_points(r, {0, 2, 4}, true), 0u);
    EXPECT_EQ(count_points(r, {1, 2, 3}, true), (q + 1) * (q + 1));
    EXPECT_EQ(count_points(r, {3, 2, 1}, true), (q + 1) * (q + 1));
    const std::uint64_t two = (q + 1) * (q * q + 1) + (q + 1) * (q + 1) * (q + 1) - (q + 1) * (q + 1);
    EXPECT_EQ(count_points(r, {2, 2, 2}, true), middle.at(q));
    EXPECT_EQ(count_points(r, {2, 2, 2}, true), two);
  }
}

TEST(Enumeration, FullSpaceIsTheOnlyTopPoint) {
  Workbench wb(2, {0, 2, 0}, false);
  EXPECT_EQ(count_points(wb.rep(3), wb.kan().dims, false), 1u);
}

TEST(Duality, PerpIsAnInvolutionOnSubreps) {
  Workbench wb(2, {2, 0, 2}, true);
  const FqRep& r = wb.rep(3);
  const auto& pts = wb.all_subreps(3);
  for (std::size_t k = 0; k < pts.size(); k += 37) {
    const Point g = perp(r, pts[k]);
    EXPECT_TRUE(is_subrep(r, g));
    EXPECT_EQ(perp(r, g), pts[k]);
  }
  for (auto& f : wb.points(3)) EXPECT_EQ(perp(r, f), f);
}

TEST(Duality, FlagPerpReversesTheFlag) {
  Workbench wb(2, {2, 0, 0}, true);
  const FqRep& r = wb.rep(3);
  for (auto& f : wb.all_subreps(3)) {
    const Point g = perp(r, f);
    for (Vertex i = 0; i < 3; ++i) EXPECT_EQ(g[i].dim(), 2 - f[2 - i].dim());
  }
}

TEST(Duality, IncomingImageOnTheOuterFrameMiddleStratum) {
  // On the Lagrangian Grassmannian component the image is zero, elsewhere it
  // is two-dimensional.
  Workbench wb(2, {2, 0, 2}, true);
  const FqRep& r = wb.rep(3);
  std::map<std::size_t, std::uint64_t> by_dim;
  for (auto& f : collect_R(r, {2, 2, 2})) ++by_dim[incoming_image(r, f, 1).dim()];
  ASSERT_EQ(by_dim.size(), 2u);
  EXPECT_EQ(by_dim.at(0), 4u * 10u);
  EXPECT_EQ(by_dim.at(2), 88u - 40u);
}
