#include "availkit/casestudy.hpp"
#include "availkit/model.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

namespace availkit {
namespace {

RatePair rates(int l_num, int l_den, int m_num, int m_den) {
  return {Rational(l_num, l_den), Rational(m_num, m_den)};
}

SystemModel two_unit_series() {
  return {"s", {{"a", rates(1, 10, 3, 10)}, {"b", rates(1, 5, 1, 2)}},
          Block::series({Block::unit("a"), Block::unit("b")})};
}

TEST(RatePair, DerivedMeanTimes) {
  RatePair r = rates(1, 10, 3, 10);
  EXPECT_EQ(r.mttf(), Rational(10));
  EXPECT_EQ(r.mttr(), Rational(10, 3));
  EXPECT_EQ(r.mtbf(), Rational(40, 3));
  EXPECT_EQ(RatePair::from_mttf_mttr(10, Rational(10, 3)), r);
}

TEST(RatePair, RequiresStrictlyPositiveRates) {
  EXPECT_TRUE(rates(1, 2, 1, 2).valid());
  EXPECT_FALSE((RatePair{0, 1}).valid());
  EXPECT_FALSE((RatePair{1, -1}).valid());
  EXPECT_THROW((RatePair{0, 1}).require_valid(), InvalidArgument);
}

TEST(Validate, AcceptsWellFormedModel) { EXPECT_TRUE(validate(two_unit_series()).empty()); }

TEST(Validate, AcceptsBothCaseStudies) {
  EXPECT_TRUE(validate(casestudy::dfh3_abd()).empty());
  EXPECT_TRUE(validate(casestudy::dfh3_ft()).empty());
}

TEST(Validate, ZeroFailureRate) {
  auto m = two_unit_series();
  m.components[1].rates.lambda = 0;
  auto d = validate(m);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].message, "nonpositive failure rate at b");
  EXPECT_EQ(d[0].path, "components/b");
}

TEST(Validate, ZeroRepairRate) {
  auto m = two_unit_series();
  m.components[0].rates.mu = 0;
  auto d = validate(m);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].message, "nonpositive repair rate at a");
}

TEST(Validate, DanglingReferenceCarriesPath) {
  auto m = two_unit_series();
  m.body = Block::series({Block::unit("a"), Block::parallel({Block::unit("b"), Block::unit("zz")})});
  auto d = validate(m);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].message, "unknown component reference 'zz'");
  EXPECT_EQ(d[0].path, "body/1/1");
}

TEST(Validate, DuplicateAndMalformedIds) {
  auto m = two_unit_series();
  m.components.push_back({"a", rates(1, 2, 1, 2)});
  m.components.push_back({"9x", rates(1, 2, 1, 2)});
  auto d = validate(m);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].message, "duplicate component id 'a'");
  EXPECT_EQ(d[1].message, "invalid component id '9x'");
}

TEST(Validate, EmptyChildrenAndArity) {
  SystemModel m{"g", {{"a", rates(1, 2, 1, 2)}}, Gate::and_of({})};
  EXPECT_EQ(validate(m).size(), 1u);

  Gate bad_xor{Gate::Kind::xor_, {}, {Gate::basic("a")}, {}};
  m.body = bad_xor;
  auto d = validate(m);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].message, "xor gate needs exactly 2 operands, got 1");

  m.body = Gate::nand_of({}, {Gate::basic("a")});
  d = validate(m);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].message, "nand gate has no negated operands");

  m.body = Block::parallel({});
  EXPECT_EQ(validate(m).size(), 1u);
}

TEST(Validate, NandPathsNameTheGroup) {
  SystemModel m{"g", {{"a", rates(1, 2, 1, 2)}},
                Gate::nand_of({Gate::basic("a")}, {Gate::basic("a"), Gate::basic("q")})};
  auto d = validate(m);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].path, "body/pos/1");
}

TEST(BasicEvents, SingleLeaf) {
  SystemModel m{"u", {{"a", rates(1, 2, 1, 2)}}, Block::unit("a")};
  EXPECT_EQ(basic_events(m), std::vector<std::string>{"a"});
  EXPECT_TRUE(leaves_distinct(m));
}

TEST(BasicEvents, SharedLeafIsDeduplicated) {
  SystemModel m{"u", {{"a", rates(1, 2, 1, 2)}}, Block::series({Block::unit("a"), Block::unit("a")})};
  EXPECT_EQ(basic_events(m), std::vector<std::string>{"a"});
  EXPECT_FALSE(leaves_distinct(m));
}

TEST(BasicEvents, Dfh3FaultTreeHasFourteenEventsInOrder) {
  auto events = basic_events(casestudy::dfh3_ft());
  ASSERT_EQ(events.size(), 14u);
  for (std::size_t i = 0; i < 14; ++i) EXPECT_EQ(events[i], "x" + std::to_string(i + 1));
}

TEST(BasicEvents, XorOfSameLeafValidatesButIsShared) {
  SystemModel m{"x", {{"a", rates(1, 2, 1, 2)}}, Gate::xor_of(Gate::basic("a"), Gate::basic("a"))};
  EXPECT_TRUE(validate(m).empty());
  EXPECT_FALSE(leaves_distinct(m));
}

TEST(BasicEvents, IdempotentOverRandomModels) {
  testing::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    auto m = testing::random_ft(rng, {6, 3, 3, false}, false);
    auto once = basic_events(m);
    EXPECT_EQ(once, basic_events(m));
    EXPECT_EQ(std::set<std::string>(once.begin(), once.end()).size(), once.size());
  }
}

TEST(Coherence, OnlyAndOrBasic) {
  EXPECT_TRUE(is_coherent(Gate::or_of({Gate::basic("a"), Gate::and_of({Gate::basic("b")})})));
  EXPECT_FALSE(is_coherent(Gate::or_of({Gate::not_of(Gate::basic("a"))})));
  EXPECT_FALSE(is_coherent(Gate::nor_of({Gate::basic("a")})));
}

TEST(FailureTree, DualOfBlockDiagram) {
  auto ft = failure_tree(Block::series({Block::unit("a"), Block::parallel({Block::unit("b"), Block::unit("c")})}));
  EXPECT_EQ(ft, Gate::or_of({Gate::basic("a"), Gate::and_of({Gate::basic("b"), Gate::basic("c")})}));
}

TEST(SystemModel, EqualityIgnoresSpans) {
  auto a = two_unit_series();
  auto b = two_unit_series();
  b.components[0].span = SourceSpan{4, 2, 30};
  std::get<Block>(b.body).children[1].span = SourceSpan{9, 3, 80};
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace availkit
