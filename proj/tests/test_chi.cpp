#include <gtest/gtest.h>

#include "sqv/chi.hpp"
#include "sqv/subspace_enum.hpp"
#include "sqv/verifier.hpp"

using namespace sqv;

namespace {

QMat rows(std::vector<std::vector<long>> r) {
  QMat m(r.size(), r.empty() ? 0 : r[0].size(), 0);
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = 0; b < r[a].size(); ++b) m(a, b) = r[a][b];
  return m;
}

QMat symplectic4() { return rows({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}); }

}  // namespace

TEST(Interpolate, ProjectivePlane) {
  ChiPoly p = interpolate({{2, 7}, {3, 13}, {5, 31}}, 2);
  EXPECT_EQ(p.coeffs, (std::vector<long long>{1, 1, 1}));
  EXPECT_EQ(euler(p), 3);
  EXPECT_EQ(p.held_out, 0u);
  EXPECT_EQ(p.str(), "1 + q + q^2");
}

TEST(Interpolate, LagrangianGrassmannian) {
  ChiPoly p = interpolate({{2, 15}, {3, 40}, {5, 156}, {7, 400}}, 3);
  EXPECT_EQ(p.coeffs, chi_lagrangian_grassmannian(2).coeffs);
  EXPECT_EQ(euler(p), 4);
}

TEST(Interpolate, ConstantAndHeldOut) {
  ChiPoly c = interpolate({{2, 5}, {3, 5}, {5, 5}}, 0);
  EXPECT_EQ(c.coeffs, (std::vector<long long>{5}));
  EXPECT_EQ(c.held_out, 2u);
  EXPECT_EQ(euler(interpolate({{2, 2}, {3, 3}, {5, 5}, {7, 7}}, 1)), 1);
}

TEST(Interpolate, RejectsNonPolynomialData) {
  EXPECT_THROW(interpolate({{2, 1}, {3, 2}, {5, 5}}, 1), PolynomialityError);
  EXPECT_THROW(interpolate({{2, 1}, {3, 2}, {4, 4}}, 2), PolynomialityError);  // q^2/2 - 3q/2 + 2
  EXPECT_THROW(interpolate({{2, 1}}, 1), std::invalid_argument);
  EXPECT_THROW(interpolate({{2, 1}, {2, 1}}, 1), std::invalid_argument);
}

TEST(ClosedForms, Values) {
  EXPECT_EQ(chi_projective(1).coeffs, (std::vector<long long>{1, 1}));
  EXPECT_EQ(chi_projective(0).coeffs, (std::vector<long long>{1}));
  EXPECT_EQ(chi_grassmannian(4, 2).coeffs, (std::vector<long long>{1, 1, 2, 1, 1}));
  EXPECT_EQ(euler(chi_grassmannian(4, 2)), 6);
  EXPECT_EQ(euler(poly_from_coeffs({0, 1})), 1);
  for (unsigned q : {2u, 3u, 5u})
    for (unsigned n = 0; n <= 5; ++n)
      for (unsigned k = 0; k <= n; ++k)
        EXPECT_EQ(static_cast<std::uint64_t>(chi_grassmannian(n, k).eval(q)), gaussian_binomial(n, k, q));
}

TEST(Family, ProjectivePlaneLines) {
  FiberFamily f;
  f.name = "P2";
  f.ambient = 3;
  f.dim = 1;
  EXPECT_EQ(count_family(f, 2), 7u);
  FamilyChi c = chi_family(f, {2, 3, 5, 7, 11});
  EXPECT_EQ(c.poly.coeffs, chi_projective(2).coeffs);
  EXPECT_EQ(c.chi, 3);
  EXPECT_GE(c.poly.held_out, 2u);
}

TEST(Family, ZeroDimensional) {
  FiberFamily f;
  f.ambient = 3;
  f.dim = 0;
  EXPECT_EQ(count_family(f, 5), 1u);
}

TEST(Family, LagrangiansThroughALineMinusOne) {
  FiberFamily f;
  f.name = "punctured line";
  f.ambient = 4;
  f.dim = 2;
  f.form = symplectic4();
  f.lagrangian = true;
  f.lower = rows({{1, 0, 0, 0}});
  f.excluded = {rows({{1, 0, 0, 0}, {0, 1, 0, 0}})};
  EXPECT_EQ(count_family(f, 2), 2u);
  EXPECT_EQ(chi_family(f, {2, 3, 5, 7, 11}).chi, 1);
}

TEST(Family, LagrangianGrassmannianOfFour) {
  FiberFamily f;
  f.ambient = 4;
  f.dim = 2;
  f.form = symplectic4();
  f.lagrangian = true;
  FamilyChi c = chi_family(f, {2, 3, 5, 7, 11, 13});
  EXPECT_EQ(c.poly.coeffs, chi_lagrangian_grassmannian(2).coeffs);
  EXPECT_EQ(c.chi, 4);
}

TEST(Family, BadPrimesAreSkipped) {
  FiberFamily f;
  f.ambient = 2;
  f.dim = 1;
  f.upper = rows({{1, 3}});  // still rank 1 mod 3, so no prime is bad here
  f.images = {{rows({{1, 0}, {0, 2}}), rows({{1, 0}, {0, 1}})}};  // map drops rank mod 2
  FamilyChi c = chi_family(f, {2, 3, 5, 7, 11});
  EXPECT_EQ(c.skipped_primes, std::vector<unsigned>{2});
  EXPECT_EQ(c.chi, 1);
  EXPECT_THROW(count_family(f, 2), BadPrimeError);
}

TEST(Family, ImageAndMeetConditions) {
  // Lines X in F^3 killed by the first coordinate and missing <e2>.
  FiberFamily f;
  f.ambient = 3;
  f.dim = 1;
  f.images = {{rows({{1, 0, 0}}), QMat(0, 1)}};
  f.meets = {{rows({{0, 1, 0}}), 0}};
  for (unsigned q : {2u, 3u, 5u}) EXPECT_EQ(count_family(f, q), q);
}

TEST(Tower, ExtensionCountsFollowThePolynomial) {
  Workbench wb(2, {0, 2, 0}, true);
  const RepTower& t = wb.tower(2);
  EXPECT_EQ(t.max_degree(), 10u);
  const auto& pts = wb.points(2);
  // Diagonal fibers of B2 B2 have free steps and are fitted over GF(2^r).
  for (auto& f : pts) {
    WordChi c = word_chi(t, {{Move::Iota, 1}, {Move::Iota, 1}}, f, f);
    EXPECT_GE(c.chi, 0);
    if (!c.structural) EXPECT_GE(c.poly.held_out, 2u);
  }
  ChiPoly p = fit_adaptive(3, 6, [](unsigned r) {
    std::uint64_t q = 1;
    for (unsigned k = 0; k < r; ++k) q *= 3;
    return (q + 1) * (q + 1);
  });
  EXPECT_EQ(p.coeffs, (std::vector<long long>{1, 2, 1}));
  EXPECT_EQ(p.held_out, 2u);
  EXPECT_THROW(fit_adaptive(2, 5, [](unsigned r) { return std::uint64_t{1} << (r * r); }), PolynomialityError);
}

TEST(Tower, PointsOverTheBaseFieldEmbed) {
  Workbench wb(2, {0, 2, 0}, true);
  const RepTower& t = wb.tower(3);
  // Base-field points remain sigma-fixed subrepresentations over GF(9).
  for (auto& f : wb.points(3)) {
    EXPECT_TRUE(is_subrep(t.at(2), f));
    EXPECT_TRUE(is_sigma_fixed(t.at(2), f));
  }
  EXPECT_EQ(count_points(t.at(2), {1, 2, 1}, true), 100u);
}
