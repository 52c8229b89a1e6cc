#include <gtest/gtest.h>

#include "sqv/finite_field.hpp"

using namespace sqv;
using Elem = FiniteField::value_type;

namespace {

void check_field_axioms(const FiniteField& f) {
  const unsigned q = f.order();
  for (unsigned a = 0; a < q; ++a) {
    auto x = static_cast<Elem>(a);
    EXPECT_EQ(f.add(x, f.neg(x)), 0);
    if (a != 0) EXPECT_EQ(f.mul(x, f.inv(x)), 1);
    for (unsigned b = 0; b < q; ++b) {
      auto y = static_cast<Elem>(b);
      EXPECT_EQ(f.add(x, y), f.add(y, x));
      EXPECT_EQ(f.mul(x, y), f.mul(y, x));
    }
  }
}

}  // namespace

TEST(FiniteField, PrimeFieldArithmetic) {
  FiniteField f(7);
  EXPECT_EQ(f.order(), 7u);
  EXPECT_EQ(f.mul(3, 5), 1);
  EXPECT_EQ(f.inv(3), 5);
  EXPECT_EQ(f.from_int(-1), 6);
  check_field_axioms(f);
}


TEST(FiniteField, ExtensionFieldsAreFields) {
  for (auto [p, r] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}}) {
    FiniteField f(p, r);
    EXPECT_EQ(f.characteristic(), p);
    check_field_axioms(f);
    // Distributivity and associativity on all triples for the small fields.
    if (f.order() <= 16) {
      for (unsigned a = 0; a < f.order(); ++a)
        for (unsigned b = 0; b < f.order(); ++b)
          for (unsigned c = 0; c < f.order(); ++c) {
            Elem x = static_cast<Elem>(a), y = static_cast<Elem>(b), z = static_cast<Elem>(c);
            EXPECT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
            EXPECT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
          }
    }
  }
}

TEST(FiniteField, PrimeSubfieldIsEmbedded) {
  FiniteField base(3), ext(3, 3);
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) {
      EXPECT_EQ(base.add(a, b), ext.add(a, b));
      EXPECT_EQ(base.mul(a, b), ext.mul(a, b));
    }
}

TEST(FiniteField, FrobeniusFixesExactlyThePrimeSubfield) {
  FiniteField f(2, 5);
  unsigned fixed = 0;
  for (unsigned a = 0; a < f.order(); ++a) {
    Elem x = static_cast<Elem>(a);
    if (f.mul(x, x) == x) ++fixed;
  }
  EXPECT_EQ(fixed, 2u);
}

TEST(FiniteField, RejectsBadParameters) {
  EXPECT_THROW(FiniteField(4), std::invalid_argument);
  EXPECT_THROW(FiniteField(2, 11), std::invalid_argument);
  EXPECT_THROW(FiniteField(5).inv(0), std::domain_error);
}
