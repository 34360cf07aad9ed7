#include <logmono/reproduce.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace logmono;

TEST(Suite, ClaimIdsAreUniqueAndGrouped) {
  auto ids = suite_claim_ids();
  std::set<std::string> seen(ids.begin(), ids.end());
  EXPECT_EQ(seen.size(), ids.size());
  for (const char* want : {"motzkin.ratio-logconcave", "domb.root-logconcave", "derangement.ratio-logconcave",
                           "harmonic.m4.root-logconvex", "order-k.bernoulli_abs_even", "scan.bell",
                           "forge.delannoy-upper"}) {
    EXPECT_TRUE(seen.count(want)) << want;
  }
}

TEST(Suite, OnlySelectsByPrefix) {
  Report r = reproduce("domb");
  ASSERT_EQ(r.claims.size(), 2u);
  EXPECT_EQ(r.claims[0].id, "domb.ratio-logconcave");
  EXPECT_EQ(r.claims[1].id, "domb.root-logconcave");
  for (const auto& c : r.claims) EXPECT_EQ(c.status, "certified") << c.details;
  EXPECT_EQ(reproduce("harmonic.m2").claims.size(), 2u);
  EXPECT_EQ(reproduce("fine.root-logconcave").claims.size(), 1u);
  EXPECT_THROW(reproduce("dom"), InputError);
}

TEST(Suite, DerangementRatioClaimFailsAtFive) {
  Report r = reproduce("derangement");
  std::map<std::string, Claim> by_id;
  for (const auto& c : r.claims) by_id[c.id] = c;
  EXPECT_EQ(by_id.at("derangement.ratio-logconcave").status, "failed");
  EXPECT_EQ(by_id.at("derangement.ratio-logconcave").checks.at(0).first_failure, std::optional<long>(5));
  EXPECT_EQ(by_id.at("derangement.ratio-logconcave-from-4").status, "finite-verified");
  EXPECT_EQ(by_id.at("derangement.root-logconcave").status, "finite-verified");
  EXPECT_EQ(by_id.at("derangement.growth").status, "finite-verified");
  EXPECT_FALSE(r.all_passed());
}

TEST(Suite, ParallelRunKeepsTableOrder) {
  Report a = reproduce("harmonic", 1), b = reproduce("harmonic", 4);
  ASSERT_EQ(a.claims.size(), b.claims.size());
  for (std::size_t i = 0; i < a.claims.size(); ++i) {
    EXPECT_EQ(a.claims[i].id, b.claims[i].id);
    EXPECT_EQ(a.claims[i].status, b.claims[i].status);
    EXPECT_EQ(a.claims[i].certificates, b.claims[i].certificates);
  }
}

TEST(Report, JsonRoundTripAndMarkdown) {
  Report r = reproduce("motzkin");
  json j = r;
  EXPECT_EQ(j["schema"], kReportSchema);
  Report back = json::parse(j.dump()).get<Report>();
  EXPECT_EQ(back, r);
  std::string md = to_markdown(r);
  EXPECT_NE(md.find("| motzkin.ratio-logconcave |"), std::string::npos);
  EXPECT_NE(md.find("certified: 2"), std::string::npos);
  j["claims"][0]["status"] = "plausible";
  EXPECT_THROW(j.get<Report>(), InputError);
}

TEST(Audit, SuiteCertificatesSurviveSampledRechecks) {
  std::mt19937_64 rng(11);
  Report r = reproduce("polyhex");
  int audited = 0;
  for (const auto& c : r.claims) {
    for (const auto& cert : c.certificates) {
      TermCache cache(builtin_sequence(cert.sequence));
      EXPECT_TRUE(audit_certificate(cert, cache, rng, 10).empty()) << c.id;
      ++audited;
    }
  }
  EXPECT_EQ(audited, 2);
}

TEST(Audit, CatchesAFalseCertificate) {
  // a doctored lower bound certificate must be caught by direct re-checks
  auto cache = TermCache(builtin_sequence("motzkin"));
  Certificate fake;
  fake.sequence = "motzkin";
  fake.property = "lower-bound";
  fake.premise = Premise::symbolic;
  fake.holds = true;
  fake.hypotheses_from = 5;
  fake.bound = parse_ratfun("3");
  std::mt19937_64 rng(3);
  EXPECT_EQ(audit_certificate(fake, cache, rng, 20).size(), 20u);
  fake.property = "no-such-property";
  EXPECT_THROW(audit_certificate(fake, cache, rng, 1), InputError);
}
