#include <gtest/gtest.h>

#include <set>

#include "sqv/hecke.hpp"
#include "sqv/verifier.hpp"

using namespace sqv;

namespace {

std::uint64_t qint(std::size_t n, std::uint64_t q) {
  std::uint64_t s = 0, t = 1;
  for (std::size_t k = 0; k < n; ++k, t *= q) s += t;
  return s;
}

// Partners of f by filtering every enumerated point through in_relation.
std::set<Point> filtered(const FqRep& rep, const std::vector<Point>& pts, const Letter& l, const Point& f) {
  std::set<Point> out;
  for (auto& g : pts)
    if (in_relation(rep, l, f, g)) out.insert(g);
  return out;
}

std::set<Point> as_set(const std::vector<Point>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Complex, ZeroPointAndFullSpace) {
  Workbench wb(2, {2, 0, 2}, false);
  const FqRep& r = wb.rep(3);
  Point zero, full;
  for (Vertex i = 0; i < 3; ++i) {
    zero.spaces.push_back(Subspace::zero(r.dim(i)));
    full.spaces.push_back(Subspace::full(r.dim(i)));
  }
  for (Vertex i = 0; i < 3; ++i) {
    ComplexData c = vertex_complex(r, zero, i);
    EXPECT_EQ(c.h_minus1, 0u);
    EXPECT_EQ(static_cast<int>(c.phi()), wb.w()[static_cast<std::size_t>(i)]);
    EXPECT_EQ(c.eps(), 0u);
    ComplexData t = vertex_complex(r, full, i);
    EXPECT_EQ(t.phi(), 0u);
    EXPECT_EQ(-static_cast<int>(t.eps()), wb.dynkin().weight_of(wb.w(), wb.kan().dims)[static_cast<std::size_t>(i)]);
  }
}

TEST(Complex, FiberCountsAreQIntegers) {
  for (DimVector w : {DimVector{2, 0, 0}, DimVector{0, 2, 0}, DimVector{1, 1, 0}}) {
    Workbench wb(2, w, false);
    for (unsigned q : {2u, 3u}) {
      const FqRep& r = wb.rep(q);
      for (auto& f : wb.all_subreps(q))
        for (Vertex i = 0; i < 3; ++i) {
          ComplexData c = vertex_complex(r, f, i);
          EXPECT_EQ(c.h_minus1, 0u);
          EXPECT_EQ(partners(r, {Move::Raise, i}, f).size(), qint(c.phi(), q));
          EXPECT_EQ(partners(r, {Move::Lower, i}, f).size(), qint(c.eps(), q));
          EXPECT_EQ(partner_chi(r, {Move::Raise, i}, f), c.phi());
        }
    }
  }
}

TEST(Correspondence, PartnersMatchRelationFilter) {
  Workbench wb(2, {2, 0, 2}, true);
  const FqRep& r = wb.rep(2);
  const auto& pts = wb.points(2);
  for (Vertex v = 0; v < 3; ++v)
    for (Move m : {Move::Iota, Move::IotaClosed}) {
      const Letter l{m, v};
      for (auto& f : pts) {
        EXPECT_EQ(as_set(partners(r, l, f)), filtered(r, pts, l, f)) << to_string(l) << " " << describe(f);
        for (auto& g : partners(r, l, f)) {
          auto back = reverse_partners(r, l, g);
          EXPECT_NE(std::find(back.begin(), back.end(), f), back.end());
        }
      }
    }
}

TEST(Correspondence, IotaMovesStayInTheFixedLocus) {
  Workbench wb(3, {2, 0, 0, 0, 2}, true);
  const FqRep& r = wb.rep(2);
  for (auto& f : wb.points(2))
    for (Vertex v = 0; v < 5; ++v)
      for (auto& g : partners(r, {Move::Iota, v}, f)) {
        EXPECT_TRUE(is_subrep(r, g));
        EXPECT_TRUE(is_sigma_fixed(r, g));
        EXPECT_EQ(g.dim(), f.dim() + letter_shift(wb.dynkin(), {Move::Iota, v}));
      }
}

TEST(Correspondence, FixedVertexFiberIsQTimesQInteger) {
  Workbench wb(2, {2, 0, 2}, true);
  for (unsigned q : {2u, 3u}) {
    const FqRep& r = wb.rep(q);
    for (auto& f : wb.points(q)) {
      const std::size_t n = f[1].dim() - incoming_image(r, f, 1).dim();
      EXPECT_EQ(partners(r, {Move::Iota, 1}, f).size(), q * qint(n, q));
      EXPECT_EQ(partners(r, {Move::IotaClosed, 1}, f).size(), q * qint(n, q) + 1);
      EXPECT_EQ(partner_chi(r, {Move::Iota, 1}, f), n);
    }
  }
}

TEST(Correspondence, OuterVertexIotaIsRaiseWithPerpLower) {
  Workbench wb(2, {0, 2, 0}, true);
  const FqRep& r = wb.rep(3);
  for (auto& f : wb.points(3))
    for (auto& g : partners(r, {Move::Iota, 0}, f)) {
      EXPECT_TRUE(contains(r.field(), g[0], f[0]));
      EXPECT_EQ(g[0].dim(), f[0].dim() + 1);
      EXPECT_EQ(g[1], f[1]);
      EXPECT_EQ(g[2], perp_at(r, 2, g[0]));
    }
}

TEST(Gluing, DimensionIdentityAndFixedness) {
  Workbench wb(2, {2, 0, 2}, true);
  const FqRep& r = wb.rep(2);
  const FiniteField& fld = r.field();
  const auto& pts = wb.points(2);
  std::size_t glued = 0;
  for (auto& f : pts)
    for (auto& g : pts) {
      if (f[1] != g[1] || f.dim() != g.dim()) continue;
      const Point lo = glue_lower(r, f, g, 0);
      const Point up = glue_upper(r, f, g, 0);
      EXPECT_EQ(lo[0].dim() + lo[2].dim(), f[0].dim() + f[2].dim());
      EXPECT_EQ(lo[0], intersect(fld, f[0], g[0]));
      EXPECT_EQ(up[2], intersect(fld, f[2], g[2]));
      if (is_subrep(r, lo)) {
        EXPECT_TRUE(is_sigma_fixed(r, lo));
        ++glued;
      }
    }
  EXPECT_GT(glued, 0u);
  EXPECT_EQ(glue_lower(r, pts[3], pts[3], 0), pts[3]);
  EXPECT_THROW(glue_lower(r, pts[0], pts[0], 1), std::invalid_argument);
}

TEST(Words, ChainCountsMatchExplicitChains) {
  Workbench wb(2, {0, 2, 0}, true);
  const FqRep& r = wb.rep(3);
  const auto& pts = wb.points(3);
  const std::vector<Word> words{{{Move::Iota, 1}, {Move::Iota, 1}, {Move::Iota, 0}},
                                {{Move::Iota, 0}, {Move::Iota, 2}},
                                {{Move::Iota, 1}, {Move::Iota, 0}, {Move::Iota, 1}}};
  for (auto& w : words)
    for (auto& s : pts)
      for (auto& t : pts) {
        // Brute force: walk the relation letter by letter over all points.
        std::uint64_t brute = 0;
        std::function<void(std::size_t, const Point&)> walk = [&](std::size_t m, const Point& cur) {
          if (m == w.size()) {
            brute += cur == t ? 1 : 0;
            return;
          }
          for (auto& nxt : pts)
            if (in_relation(r, w[m], cur, nxt)) walk(m + 1, nxt);
        };
        walk(0, s);
        EXPECT_EQ(count_word(r, w, s, t).count, brute) << to_string(w);
      }
}

TEST(Words, Printing) {
  EXPECT_EQ(to_string(Word{{Move::Iota, 0}, {Move::IotaClosed, 1}, {Move::Raise, 2}, {Move::Lower, 0}}), "B1 Bbar2 E3 F1");
}
