#include <gtest/gtest.h>

#include "harness/io.hpp"
#include "harness/suites.hpp"
#include "oracle.hpp"

using namespace degseq;

TEST(Io, ParsesCanonicalSequence) {
  auto j = harness::parse_json_text(R"({"class": "digraph", "n": 3, "s": [1, 1, 1], "t": [1, 1, 1]})", "x");
  auto d = harness::parse_sequence(j, "x");
  EXPECT_TRUE(d.graph_class().is_digraph());
  EXPECT_EQ(harness::parse_sequence(harness::sequence_to_json(d)), d);
}

TEST(Io, DiagnosticsNameLineAndField) {
  try {
    harness::parse_json_text("{\n  \"class\": \"bipartite\",\n  \"n\": 2,]\n}", "seq.json");
    FAIL();
  } catch (const harness::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("seq.json:3:"), std::string::npos) << e.what();
  }
  auto expect_field = [](const std::string& text, const std::string& field) {
    try {
      harness::parse_sequence(harness::parse_json_text(text, "in"), "in");
      FAIL() << text;
    } catch (const harness::InputError& e) {
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  expect_field(R"({"class": "bipartite", "n": 2, "s": [1], "t": [1, 0]})", "ell");
  expect_field(R"({"class": "bipartite", "ell": 1, "n": 2, "s": [1], "t": [1]})", "'t'");
  expect_field(R"({"class": "digraph", "ell": 2, "n": 2, "s": [1, 1], "t": [1, 1]})", "ell");
  expect_field(R"({"class": "tree", "n": 2, "s": [1, 1], "t": [1, 1]})", "class");
  expect_field(R"({"class": "digraph", "n": 2, "s": [1, -1], "t": [1, 1], "extra": 1})", "extra");
}

TEST(Io, Rationals) {
  auto j = harness::rational_json(Rational(2, 3));
  EXPECT_EQ(j["num"], "2");
  EXPECT_EQ(j["den"], "3");
  EXPECT_NEAR(j["float"].get<double>(), 2.0 / 3.0, 1e-15);
}

TEST(Suites, HarnessBruteForceMatchesOracle) {
  GraphClass cls = GraphClass::digraph(3);
  DegreeSequence d(cls, {1, 2, 1}, {2, 1, 1});
  auto pairs = oracle::pairs_of(cls);
  for (Edge f : pairs)
    for (Edge k : pairs)
      if (!(f == k))
        EXPECT_EQ(harness::brute_force_count(d, {f}, {k}), oracle::brute_count(d, {f}, {k}));
}

TEST(Suites, OracleAndRecursionPass) {
  harness::SuiteConfig cfg;
  for (const char* name : {"oracle", "recursion"}) {
    auto rep = harness::run_suite(name, cfg);
    EXPECT_EQ(rep.exit_code(), 0) << name;
    for (const auto& r : rep.records) EXPECT_FALSE(r.anchor.empty()) << r.id;
  }
}

TEST(Suites, Idempotent) {
  harness::SuiteConfig cfg;
  cfg.samples = 3000;
  for (const char* name : {"oracle", "sampling"}) {
    auto a = harness::run_suite(name, cfg).to_json(), b = harness::run_suite(name, cfg).to_json();
    a.erase("environment");
    b.erase("environment");
    EXPECT_EQ(harness::dump(a), harness::dump(b)) << name;
  }
}

TEST(Suites, CapIsReportedNotPassed) {
  harness::SuiteConfig cfg;
  cfg.limits.max_memo = 2;
  auto rep = harness::run_suite("asymptotic-trend", cfg);
  bool capped = false;
  for (const auto& r : rep.records) {
    EXPECT_NE(r.status, "pass") << r.id;
    capped = capped || r.status == "skipped: cap";
  }
  EXPECT_TRUE(capped);
  EXPECT_EQ(rep.exit_code(), 3);
}

TEST(Suites, UnknownNameRejected) {
  EXPECT_THROW(harness::run_suite("nope", harness::SuiteConfig{}), harness::InputError);
}
