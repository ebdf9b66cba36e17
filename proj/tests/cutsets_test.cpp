#include "availkit/analytic.hpp"
#include "availkit/casestudy.hpp"
#include "availkit/cutsets.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

namespace availkit::cutsets {
namespace {

Gate b(const char* id) { return Gate::basic(id); }

TEST(Expand, OrIsAlreadyDisjunctive) {
  auto cs = expand_to_cutsets(Gate::or_of({b("a"), b("b")}));
  EXPECT_EQ(cs.sets, (std::vector<CutSet>{{"a"}, {"b"}}));
  EXPECT_FALSE(cs.minimized);
}

TEST(Expand, AndDistributesOverOr) {
  auto cs = expand_to_cutsets(Gate::and_of({b("a"), Gate::or_of({b("b"), b("c")})}));
  EXPECT_EQ(cs.sets, (std::vector<CutSet>{{"a", "b"}, {"a", "c"}}));
}

TEST(Expand, AndOnlyTreeIsOneCutSet) {
  auto cs = expand_to_cutsets(Gate::and_of({b("c"), Gate::and_of({b("a"), b("b")})}));
  EXPECT_EQ(cs.sets, (std::vector<CutSet>{{"a", "b", "c"}}));
}

TEST(Expand, RepeatedEventsCollapseWithinACutSet) {
  auto cs = expand_to_cutsets(Gate::and_of({b("a"), Gate::or_of({b("a"), b("b")})}));
  EXPECT_EQ(cs.sets, (std::vector<CutSet>{{"a"}, {"a", "b"}}));
  EXPECT_EQ(minimize(cs).sets, (std::vector<CutSet>{{"a"}}));
}

TEST(Expand, Dfh3FaultTree) {
  auto cs = minimize(expand_to_cutsets(casestudy::dfh3_ft().ft()));
  ASSERT_EQ(cs.size(), 13u);
  std::vector<CutSet> expected;
  for (const char* id : {"x1", "x10", "x11", "x12", "x13", "x14", "x2", "x3", "x4", "x7", "x8", "x9"})
    expected.push_back({id});
  expected.push_back({"x5", "x6"});
  EXPECT_EQ(cs.sets, expected);
}

TEST(Expand, RejectsNonCoherentGate) {
  Gate g = Gate::or_of({b("a"), Gate::and_of({b("b"), Gate::not_of(b("c"))})});
  try {
    expand_to_cutsets(g);
    FAIL() << "expected NonCoherentTree";
  } catch (const NonCoherentTree& e) {
    EXPECT_STREQ(e.what(), "non-coherent tree: not gate at body/1/1");
  }
}

TEST(Expand, RefusesBeyondBound) {
  // (a1|a2|a3) & (b1|b2|b3) & (c1|c2|c3) has 27 cut sets.
  std::vector<Gate> ands;
  for (const char* p : {"a", "b", "c"}) {
    std::vector<Gate> ors;
    for (int i = 1; i <= 3; ++i) ors.push_back(Gate::basic(p + std::to_string(i)));
    ands.push_back(Gate::or_of(std::move(ors)));
  }
  Gate g = Gate::and_of(std::move(ands));
  EXPECT_EQ(expand_to_cutsets(g).size(), 27u);
  EXPECT_THROW(expand_to_cutsets(g, {26}), LimitExceeded);
}

TEST(Minimize, Absorption) {
  CutSetCollection cs{{{"a"}, {"a", "b"}}, false};
  auto m = minimize(cs);
  EXPECT_EQ(m.sets, (std::vector<CutSet>{{"a"}}));
  EXPECT_TRUE(m.minimized);
}

TEST(Minimize, Commutativity) {
  CutSetCollection cs{{{"a", "b"}, {"b", "a"}}, false};
  EXPECT_EQ(minimize(cs).sets, (std::vector<CutSet>{{"a", "b"}}));
}

TEST(Minimize, CanonicalOrder) {
  CutSetCollection cs{{{"d", "c"}, {"b"}, {"a", "e"}, {"c", "a"}}, false};
  EXPECT_EQ(minimize(cs).sets, (std::vector<CutSet>{{"b"}, {"a", "c"}, {"a", "e"}, {"c", "d"}}));
}

TEST(ModelCutsets, AbdUsesFailureTree) {
  SystemModel m{"m", {{"a", {1, 1}}, {"b", {1, 1}}, {"c", {1, 1}}},
                Block::series({Block::unit("a"), Block::parallel({Block::unit("b"), Block::unit("c")})})};
  EXPECT_EQ(minimize(model_cutsets(m)).sets, (std::vector<CutSet>{{"a"}, {"b", "c"}}));
}

// ---- properties -----------------------------------------------------------

TEST(Properties, ExpansionAndMinimizationPreserveTruthTable) {
  testing::Rng rng(99);
  for (int i = 0; i < 150; ++i) {
    auto m = testing::random_ft(rng, {12, 4, 3, false}, true);
    testing::SampleSpace space(basic_events(m));
    auto tree = space.event_of(m.ft());
    auto cs = expand_to_cutsets(m.ft());
    auto mcs = minimize(cs);
    EXPECT_EQ(space.event_of(cs), tree);
    EXPECT_EQ(space.event_of(mcs), tree);
  }
}

TEST(Properties, MinimizedCollectionsAreMinimal) {
  testing::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    auto m = testing::random_ft(rng, {10, 4, 3, false}, true);
    testing::SampleSpace space(basic_events(m));
    auto mcs = minimize(expand_to_cutsets(m.ft()));
    auto full = space.event_of(mcs);
    for (std::size_t k = 0; k < mcs.size(); ++k) {
      for (std::size_t j = 0; j < mcs.size(); ++j) {
        if (j == k) continue;
        EXPECT_FALSE(std::includes(mcs.sets[k].begin(), mcs.sets[k].end(), mcs.sets[j].begin(),
                                   mcs.sets[j].end()));
      }
      auto without = mcs;
      without.sets.erase(without.sets.begin() + static_cast<std::ptrdiff_t>(k));
      EXPECT_NE(space.event_of(without), full);
    }
  }
}

TEST(Properties, PieAgreesOnMinimizedAndRawCollections) {
  testing::Rng rng(21);
  int checked = 0;
  while (checked < 60) {
    auto m = testing::random_ft(rng, {8, 3, 3, false}, true);
    auto cs = expand_to_cutsets(m.ft());
    if (cs.size() > 14) continue;
    std::map<std::string, Probability> q;
    for (const auto& id : basic_events(m)) q.emplace(id, Probability(analytic::steady_unavail<double>(m.rates(id))));
    double raw = analytic::pie_probability(cs, q).value();
    double min = analytic::pie_probability(minimize(cs), q).value();
    EXPECT_NEAR(raw, min, 1e-12);
    ++checked;
  }
}

}  // namespace
}  // namespace availkit::cutsets
