#include <gtest/gtest.h>

#include "sqv/dynkin.hpp"

using namespace sqv;

TEST(Dynkin, SigmaAndCartan) {
  DynkinData dyn(2);
  EXPECT_EQ(dyn.rank(), 3);
  EXPECT_EQ(dyn.sigma(0), 2);
  EXPECT_EQ(dyn.sigma(1), 1);
  EXPECT_EQ(dyn.cartan(0, 1), -1);
  EXPECT_EQ(dyn.cartan(0, 2), 0);
  EXPECT_THROW(DynkinData(0), std::invalid_argument);
}

TEST(Dynkin, CartanInverseMatchesClosedForm) {
  for (int d = 1; d <= 4; ++d) {
    DynkinData dyn(d);
    const int n = dyn.rank();
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        mpq_class expected(std::min(i, j) * (n + 1 - std::max(i, j)), n + 1);
        expected.canonicalize();
        EXPECT_EQ(dyn.cartan_inverse()[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)], expected);
      }
  }
}

TEST(Dynkin, WeightOf) {
  DynkinData dyn(2);
  EXPECT_EQ(dyn.weight_of({2, 0, 2}, {1, 2, 3}), DimVector({2, 0, -2}));
}

TEST(Dynkin, KanDimSolvesCartanEquation) {
  DynkinData dyn(2);
  EXPECT_EQ(dyn.kan_dim({2, 0, 2}), DimVector({4, 4, 4}));
  EXPECT_EQ(dyn.kan_dim({1, 0, 1}), DimVector({2, 2, 2}));
  EXPECT_EQ(dyn.kan_dim({0, 2, 0}), DimVector({2, 4, 2}));
  EXPECT_EQ(dyn.kan_dim({2, 0, 0}), DimVector({2, 2, 2}));
  for (int d = 1; d <= 3; ++d) {
    DynkinData dd(d);
    const std::size_t n = static_cast<std::size_t>(dd.rank());
    for (std::size_t i = 0; i < n; ++i) {
      DimVector w = DimVector::unit(n, static_cast<Vertex>(i)) * 2;
      DimVector v = dd.kan_dim(w);
      EXPECT_EQ(dd.apply_cartan(v), w + dd.sigma_vec(w));
      EXPECT_EQ(dd.sigma_vec(v), v);
    }
  }
}
