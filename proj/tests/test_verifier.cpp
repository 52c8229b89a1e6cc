#include <gtest/gtest.h>

#include <sstream>

#include "sqv/verifier.hpp"

using namespace sqv;

namespace {

std::string flatten(const VerificationReport& r) {
  std::ostringstream os;
  os << r.title << "|" << r.pass << "|" << r.checked << "|" << r.failures << "|" << r.min_held_out;
  for (auto& [k, v] : r.tallies) os << "|" << k << "=" << v;
  for (auto& c : r.chi_details) os << "|" << c.label << ":" << c.poly << ":" << c.chi << ":" << c.occurrences;
  for (auto& w : r.witnesses) os << "|" << w;
  return os.str();
}

void expect_all_pass(const Workbench& wb, unsigned p) {
  for (auto& inst : admissible_instances(wb.dynkin(), wb.sigma_mode(), all_relation_names())) {
    VerificationReport r = verify(wb, inst, p);
    EXPECT_TRUE(r.pass) << inst.label() << " q=" << p << (r.witnesses.empty() ? "" : " " + r.witnesses[0]);
    EXPECT_EQ(r.failures, 0u);
  }
}

}  // namespace

TEST(Names, RoundTrip) {
  for (RelationName n : all_relation_names()) EXPECT_EQ(parse_relation_name(to_string(n)), n);
  EXPECT_FALSE(parse_relation_name("nope").has_value());
  EXPECT_EQ((RelationInstance{RelationName::ISerre, 1, 0, true}).label(), "iserre i=2 j=1 closed");
}

TEST(Instances, AdmissibleVertexConditions) {
  DynkinData d2(2), d3(3);
  auto count = [](const std::vector<RelationInstance>& v, RelationName n) {
    return std::count_if(v.begin(), v.end(), [&](auto& x) { return x.name == n; });
  };
  auto s2 = admissible_instances(d2, true, all_relation_names());
  EXPECT_EQ(count(s2, RelationName::BEF), 3);
  EXPECT_EQ(count(s2, RelationName::Serre1Iota), 0);  // 1 and 3 are swapped by sigma
  EXPECT_EQ(count(s2, RelationName::Serre2Iota), 2);
  EXPECT_EQ(count(s2, RelationName::ISerre), 4);
  EXPECT_EQ(count(s2, RelationName::EFNakajima), 0);
  auto s3 = admissible_instances(d3, true, {RelationName::Serre1Iota, RelationName::Serre2Iota});
  EXPECT_EQ(count(s3, RelationName::Serre1Iota), 4);
  EXPECT_EQ(count(s3, RelationName::Serre2Iota), 6);
  auto n2 = admissible_instances(d2, false, all_relation_names());
  EXPECT_EQ(count(n2, RelationName::EFNakajima), 9);
  EXPECT_EQ(count(n2, RelationName::SerreEE), 5);
  EXPECT_EQ(count(n2, RelationName::BEF), 0);
}

TEST(Relations, MiddleFrameAllPass) {
  Workbench wb(2, {0, 2, 0}, true);
  for (unsigned p : {2u, 3u, 5u}) expect_all_pass(wb, p);
}

TEST(Relations, OuterFrameAllPassAtTwo) {
  Workbench wb(2, {2, 0, 2}, true);
  expect_all_pass(wb, 2);
}

TEST(Relations, NakajimaFlagCase) {
  Workbench wb(2, {2, 0, 0}, false);
  for (unsigned p : {2u, 3u}) expect_all_pass(wb, p);
  Workbench point(2, {0, 1, 0}, false);
  expect_all_pass(point, 3);
}

TEST(Relations, IserreCaseTable) {
  Workbench wb(2, {2, 0, 2}, true);
  VerificationReport r = verify(wb, {RelationName::ISerre, 1, 0, false}, 2);
  ASSERT_TRUE(r.pass);
  EXPECT_EQ(r.tallies.count("k=1 pattern 0/0/0"), 1u);
  EXPECT_GT(r.tallies.at("k=0 in B_j pattern 1/0/0"), 0u);
  for (auto& [k, v] : r.tallies) EXPECT_EQ(k.find("k=1 pattern") != std::string::npos && k != "k=1 pattern 0/0/0", false) << k;
}

TEST(Relations, Serre1PairsInKHaveUnitFibers) {
  Workbench wb(3, {2, 0, 0, 0, 2}, true);
  VerificationReport r = verify(wb, {RelationName::Serre1Iota, 0, 2, false}, 2);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.tallies.at("pairs in K"), 0u);
  EXPECT_GT(r.tallies.at("pairs outside K"), 0u);
}

TEST(Pointwise, DualityAndFiberCounts) {
  for (DimVector w : {DimVector{2, 0, 2}, DimVector{0, 2, 0}, DimVector{2, 0, 0}}) {
    Workbench wb(2, w, true);
    for (unsigned p : {2u, 3u}) {
      VerificationReport r = verify_pointwise(wb, p);
      EXPECT_TRUE(r.pass) << w.str() << (r.witnesses.empty() ? "" : r.witnesses[0]);
      EXPECT_EQ(r.checked, wb.all_subreps(p).size());
    }
  }
}

TEST(Lemmas, ImageLemmasOnIotaPairs) {
  Workbench wb(2, {2, 0, 2}, true);
  VerificationReport r = verify_image_lemmas(wb, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.checked, 0u);
}

TEST(Lemmas, SymplecticSuiteSmall) {
  LemmaOptions opt;
  opt.n_max = 2;
  for (auto& r : lemma_suite(opt)) {
    EXPECT_TRUE(r.pass) << r.title;
    EXPECT_GT(r.checked, 0u) << r.title;
  }
}

TEST(Determinism, WorkerCountDoesNotChangeReports) {
  Workbench wb(2, {2, 0, 2}, true);
  VerifyOptions one, many;
  many.jobs = 4;
  for (auto& inst : admissible_instances(wb.dynkin(), true, {RelationName::BEF, RelationName::ISerre}))
    EXPECT_EQ(flatten(verify(wb, inst, 2, one)), flatten(verify(wb, inst, 2, many))) << inst.label();
  EXPECT_EQ(flatten(verify_pointwise(wb, 2, one)), flatten(verify_pointwise(wb, 2, many)));
}

TEST(Negative, NonCommutingPairIsReportedWithWitness) {
  // B1 and B3 do not commute at d = 2 (their commutator is a Cartan term), so
  // forcing the commuting check on them must fail with subspace data.
  Workbench wb(2, {0, 2, 0}, true);
  VerificationReport r = verify_serre1(wb, {RelationName::Serre1Iota, 0, 2, false}, 2, {});
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.failures, 0u);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_NE(r.witnesses[0].find("F1: v="), std::string::npos);
}
