#include <gtest/gtest.h>

#include <functional>

#include "sqv/path_category.hpp"

using namespace sqv;

namespace {

std::vector<Walk> all_walks(int n, int max_len) {
  std::vector<Walk> out;
  std::function<void(Walk&)> rec = [&](Walk& w) {
    out.push_back(w);
    if (static_cast<int>(w.size()) - 1 == max_len) return;
    for (Vertex u : {w.back() - 1, w.back() + 1}) {
      if (u < 0 || u >= n) continue;
      w.push_back(u);
      rec(w);
      w.pop_back();
    }
  };
  for (Vertex i = 0; i < n; ++i) {
    Walk w{i};
    rec(w);
  }
  return out;
}

}  // namespace

class PathCategoryTest : public ::testing::TestWithParam<int> {};

TEST_P(PathCategoryTest, HomDimensionsMatchMinFormula) {
  const int d = GetParam();
  DynkinData dyn(d);
  HomSpaceTable t{FramedQuiver(dyn)};
  for (int i = 1; i <= dyn.rank(); ++i)
    for (int j = 1; j <= dyn.rank(); ++j)
      EXPECT_EQ(static_cast<int>(t.dim(i - 1, j - 1)), std::min({i, j, 2 * d - i, 2 * d - j}))
          << "i=" << i << " j=" << j;
}

TEST_P(PathCategoryTest, SigmaAndReversalRespectRelations) {
  const int d = GetParam();
  DynkinData dyn(d);
  HomSpaceTable t{FramedQuiver(dyn)};
  for (const Walk& w : all_walks(dyn.rank(), t.max_length())) {
    Walk sw = w, rw(w.rbegin(), w.rend());
    for (auto& v : sw) v = dyn.sigma(v);
    EXPECT_EQ(t.sigma(t.monomial(w)).coords, t.normal_form(sw));
    EXPECT_EQ(t.bar(t.monomial(w)).coords, t.normal_form(rw));
  }
}

TEST_P(PathCategoryTest, CompositionIsAssociative) {
  const int d = GetParam();
  DynkinData dyn(d);
  HomSpaceTable t{FramedQuiver(dyn)};
  const int n = dyn.rank();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      for (Vertex c = 0; c < n; ++c)
        for (Vertex e = 0; e < n; e += 2) {
          for (auto& x : t.basis(a, b))
            for (auto& y : t.basis(b, c))
              for (auto& z : t.basis(c, e)) {
                PathClass px = t.monomial(x), py = t.monomial(y), pz = t.monomial(z);
                EXPECT_EQ(t.compose(pz, t.compose(py, px)).coords, t.compose(t.compose(pz, py), px).coords);
              }
        }
}

TEST_P(PathCategoryTest, PairingIsNondegenerateSymmetricAndAdjoint) {
  const int d = GetParam();
  DynkinData dyn(d);
  HomSpaceTable t{FramedQuiver(dyn)};
  PairingTable b(t);
  EXPECT_NO_THROW(check_pairing(t, b));
}

INSTANTIATE_TEST_SUITE_P(Ranks, PathCategoryTest, ::testing::Values(1, 2, 3, 4));

TEST(PathCategory, LongPathsVanish) {
  DynkinData dyn(2);
  HomSpaceTable t{FramedQuiver(dyn)};
  EXPECT_EQ(t.max_length(), 2);
  auto nf = t.normal_form({0, 1, 2, 1});
  for (auto& c : nf) EXPECT_EQ(c, 0);
  // (2,1,2) and (2,3,2) agree in the quotient.
  EXPECT_EQ(t.normal_form({1, 0, 1}), t.normal_form({1, 2, 1}));
  EXPECT_EQ(t.graded_dim(0, 2, 2), 1u);
}

TEST(PathCategory, BasisIsLexLeastMonomials) {
  DynkinData dyn(2);
  HomSpaceTable t{FramedQuiver(dyn)};
  // Q(2,2) = span{id, (2,1,2)}.
  ASSERT_EQ(t.basis(1, 1).size(), 2u);
  EXPECT_EQ(t.basis(1, 1)[1], Walk({1, 0, 1}));
}

TEST(PathCategory, FlippedRelationSignBreaksPairing) {
  DynkinData dyn(2);
  HomSpaceTable t{FramedQuiver(dyn, {1, -1, 1})};
  PairingTable b(t);
  EXPECT_THROW(check_pairing(t, b), PairingError);
}
