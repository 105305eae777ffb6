#include <gtest/gtest.h>

#include "degseq/errors.hpp"
#include "degseq/event_expr.hpp"

using namespace degseq;

namespace {

DegreeSequence sample_seq() { return DegreeSequence(GraphClass::bipartite(3, 2), {2, 1, 0}, {2, 1}); }

}  // namespace

TEST(EventExpr, Arithmetic) {
  auto d = sample_seq();
  EXPECT_EQ(EventExpr("1 + 2 * 3").evaluate(d), 7);
  EXPECT_EQ(EventExpr("(1 + 2) * 3").evaluate(d), 9);
  EXPECT_EQ(EventExpr("-s[0] + t[1]").evaluate(d), -1);
  EXPECT_EQ(EventExpr("m").evaluate(d), 3);
  EXPECT_EQ(EventExpr("ell * 10 + n").evaluate(d), 32);
  EXPECT_EQ(EventExpr("max_s").evaluate(d), 2);
  EXPECT_EQ(EventExpr("mean_t").evaluate(d), 1.5);
  EXPECT_DOUBLE_EQ(EventExpr("sigma2_s").evaluate(d), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(EventExpr("mu").evaluate(d), 0.5);
}

TEST(EventExpr, Logic) {
  auto d = sample_seq();
  EXPECT_TRUE(EventExpr("true").holds(d));
  EXPECT_FALSE(EventExpr("false || s[2] > 0").holds(d));
  EXPECT_TRUE(EventExpr("!(s[2] > 0) && t[0] == 2").holds(d));
  EXPECT_TRUE(EventExpr("s[0] >= t[0] && s[1] <= t[1] && s[0] != s[1]").holds(d));
  EXPECT_TRUE(EventExpr("1 < 2 == 1").holds(d));
}

TEST(EventExpr, Errors) {
  EXPECT_THROW(EventExpr("s[0] +"), PreconditionError);
  EXPECT_THROW(EventExpr("foo > 1"), PreconditionError);
  EXPECT_THROW(EventExpr("(1"), PreconditionError);
  EXPECT_THROW(EventExpr("s[5]").evaluate(sample_seq()), PreconditionError);
  try {
    EventExpr("1 + $");
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos) << e.what();
  }
}
