#include <gtest/gtest.h>

#include <random>

#include "eon/baselines.hpp"
#include "eon/modulation.hpp"
#include "fixtures.hpp"

namespace eon {
namespace {

TEST(FilterGraphTest, KeepsEdgesThatCarryTheSlot) {
  const Multigraph g = testing::revisit_graph();
  EXPECT_EQ(filter_graph(g, SlotSpec{2, 2, 0}), (std::vector<char>{0, 1, 1}));
  EXPECT_EQ(filter_graph(g, SlotSpec{1, 2, 0}), (std::vector<char>{1, 1, 0}));

  Multigraph full(3, 4);
  full.add_edge(0, 1, 1);
  full.add_edge(1, 2, 1);
  EXPECT_EQ(filter_graph(full, SlotSpec{0, 1, 0}), (std::vector<char>{1, 1}));
  EXPECT_THROW(filter_graph(full, SlotSpec{0, 5, 0}), SpectrumError);
  EXPECT_THROW(filter_graph(full, SlotSpec{3, 2, 0}), SpectrumError);
  EXPECT_THROW(filter_graph(full, SlotSpec{0, 0, 0}), SpectrumError);
}

TEST(FilteredSearchTest, RevisitExample) {
  const Multigraph g = testing::revisit_graph();
  FilteredStats stats;
  const auto r = filtered_search(g, 0, 2, FixedUnits(2), AllocationPolicy::kFirstFit, nullptr,
                                 nullptr, &stats);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->edges, (std::vector<EdgeId>{1, 2}));
  EXPECT_EQ(r->cost, 12);
  EXPECT_EQ(r->cu, (CU{2, 3}));
  EXPECT_EQ(stats.slots_examined, 3);

  const auto one = filtered_search(g, 0, 2, FixedUnits(1));
  ASSERT_TRUE(one);
  EXPECT_EQ(one->cost, 11);
  EXPECT_EQ(one->cu, (CU{2, 2}));
}

TEST(FilteredSearchTest, DiscardExample) {
  const Multigraph g = testing::discard_graph();
  const auto r = filtered_search(g, 0, 1, FixedUnits(2));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, 1);
  EXPECT_EQ(r->cu.width(), 2);
  EXPECT_TRUE(cu_includes({1, 3}, r->cu));
}

TEST(FilteredSearchTest, NoFeasibleSlot) {
  const Multigraph g = testing::revisit_graph();
  EXPECT_FALSE(filtered_search(g, 0, 2, FixedUnits(3)));
  const ModulationModel tight(1, 5.0);  // nothing reaches 11 km
  EXPECT_FALSE(filtered_search(g, 0, 2, ModulatedUnits(1, tight)));
}

TEST(FilteredSearchTest, SlotCountCoversEveryWidthAndStart) {
  Multigraph g(2, 10);
  g.add_edge(0, 1, 50);
  const ModulatedUnits rule(2, ModulationModel(3, 100));  // widths 2..6
  FilteredStats stats;
  filtered_search(g, 0, 1, rule, AllocationPolicy::kFirstFit, nullptr, nullptr, &stats);
  EXPECT_EQ(stats.slots_examined, 9 + 8 + 7 + 6 + 5);

  const ModulatedUnits wide(4, ModulationModel(4, 100));  // widths 4..16, clipped at 10
  filtered_search(g, 0, 1, wide, AllocationPolicy::kFirstFit, nullptr, nullptr, &stats);
  EXPECT_EQ(stats.slots_examined, 7 + 6 + 5 + 4 + 3 + 2 + 1);
}

TEST(FilteredSearchTest, ModulationBoundsEachWidth) {
  // A 150 km path needs ceil(2 log2 3) = 4 units with n_base 2, r_M 100.
  Multigraph g(2, 8);
  g.set_available(g.add_edge(0, 1, 150), UnitSet{{0, 2}, {4, 7}});
  const ModulatedUnits rule(2, ModulationModel(4, 100));
  const auto r = filtered_search(g, 0, 1, rule);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cu, (CU{4, 7}));
  const auto g_r = generic_dijkstra(g, 0, 1, rule);
  ASSERT_TRUE(g_r);
  EXPECT_EQ(g_r->cu, r->cu);
}

TEST(FilteredSearchTest, PolicyTies) {
  Multigraph g(2, 10);
  g.set_available(g.add_edge(0, 1, 5), UnitSet{{0, 3}, {6, 7}});
  const FixedUnits two(2);
  EXPECT_EQ(filtered_search(g, 0, 1, two)->cu, (CU{0, 1}));
  Rng rng = make_rng(3, Stream::kRandomFit);
  for (int k = 0; k < 20; ++k) {
    const auto r = filtered_search(g, 0, 1, two, AllocationPolicy::kRandomFit, &rng);
    ASSERT_TRUE(r);
    EXPECT_TRUE(g.available(0).contains(r->cu));
    EXPECT_EQ(r->cu.width(), 2);
  }
  EXPECT_THROW(filtered_search(g, 0, 1, two, AllocationPolicy::kRandomFit), std::invalid_argument);
  EXPECT_THROW(filtered_search(g, 0, 2, two), GraphError);
}

TEST(FilteredSearchTest, MeterCountsDijkstraLabels) {
  const Multigraph g = testing::revisit_graph();
  WordMeter meter;
  filtered_search(g, 0, 2, FixedUnits(2), AllocationPolicy::kFirstFit, nullptr, &meter);
  EXPECT_GT(meter.peak().total(), 0);
  EXPECT_EQ(meter.peak().units, 0);
  EXPECT_EQ(meter.peak().costs * 2, meter.peak().edges);
}

TEST(BruteSearchTest, RevisitExample) {
  const Multigraph g = testing::revisit_graph();
  const auto r = brute_search(g, 0, 2, FixedUnits(2));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->edges, (std::vector<EdgeId>{1, 2}));
  EXPECT_EQ(r->cost, 12);
  EXPECT_EQ(r->cu, (CU{2, 3}));
}

TEST(BruteSearchTest, DiscardExample) {
  const Multigraph g = testing::discard_graph();
  const auto r = brute_search(g, 0, 1, FixedUnits(2));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, 1);
  EXPECT_EQ(r->cu.width(), 2);
  EXPECT_TRUE(cu_includes({1, 3}, r->cu));
}

TEST(BruteSearchTest, UnreachableTargetTerminates) {
  Multigraph star(6, 4);
  for (VertexId v = 1; v < 5; ++v) {
    star.add_edge(0, v, v);
  }
  BruteForceStats stats;
  EXPECT_FALSE(brute_search(star, 1, 5, FixedUnits(1), AllocationPolicy::kFirstFit, nullptr,
                            nullptr, &stats));
  EXPECT_EQ(stats.popped, 5);  // 1, 1-0, and the three spokes beyond 0
}

TEST(BruteSearchTest, MeterCountsFullUnitSets) {
  // One path s-a-b-t whose edges leave units {0,1} and {4,7} free.
  Multigraph g(4, 8);
  g.set_available(g.add_edge(0, 1, 1), UnitSet{{0, 1}, {4, 7}});
  g.set_available(g.add_edge(1, 2, 1), UnitSet{{0, 1}, {4, 7}});
  g.set_available(g.add_edge(2, 3, 1), UnitSet{{0, 1}, {4, 7}});
  WordMeter meter;
  brute_search(g, 0, 3, FixedUnits(1), AllocationPolicy::kFirstFit, nullptr, &meter);
  // Only one entry is ever queued at a time; the largest is the full path.
  EXPECT_EQ(meter.peak().total(), 11);
  EXPECT_EQ(meter.peak().units, 4);
}

TEST(BaselineProperty, AllThreeAgree) {
  std::mt19937_64 rng(41);
  int feasible = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const VertexId n = std::uniform_int_distribution<VertexId>(2, 9)(rng);
    const Unit omega = std::uniform_int_distribution<Unit>(1, 16)(rng);
    Multigraph g(n, omega);
    std::bernoulli_distribution edge(0.4);
    std::uniform_int_distribution<Cost> len(1, 20);
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        if (edge(rng)) g.add_edge(u, v, len(rng));
      }
    }
    std::bernoulli_distribution keep(std::uniform_real_distribution<double>(0.3, 0.9)(rng));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      std::vector<CU> units;
      for (Unit u = 0; u < omega; ++u) {
        if (keep(rng)) units.push_back(CU{u, u});
      }
      g.set_available(e, UnitSet::from_cus(units));
    }
    const VertexId s = std::uniform_int_distribution<VertexId>(0, n - 1)(rng);
    const VertexId t = std::uniform_int_distribution<VertexId>(0, n - 1)(rng);
    const Unit n_base = std::uniform_int_distribution<Unit>(1, 4)(rng);
    const ModulatedUnits rule(n_base, ModulationModel(std::uniform_int_distribution<int>(1, 4)(rng),
                                                     std::uniform_real_distribution<double>(5, 40)(rng)));
    for (const auto policy : {AllocationPolicy::kFirstFit, AllocationPolicy::kBestFit}) {
      const auto a = generic_dijkstra(g, s, t, rule, policy);
      const auto b = filtered_search(g, s, t, rule, policy);
      const auto c = brute_search(g, s, t, rule, policy);
      ASSERT_EQ(a.has_value(), b.has_value()) << "trial " << trial;
      ASSERT_EQ(a.has_value(), c.has_value()) << "trial " << trial;
      if (!a) continue;
      feasible += policy == AllocationPolicy::kFirstFit;
      ASSERT_EQ(a->cost, b->cost);
      ASSERT_EQ(a->cost, c->cost);
      ASSERT_EQ(a->cu.width(), b->cu.width());
      ASSERT_EQ(a->cu.width(), c->cu.width());
      for (const auto* r : {&*a, &*b, &*c}) {
        for (const EdgeId e : r->edges) {
          ASSERT_TRUE(g.available(e).contains(r->cu));
        }
      }
    }
  }
  EXPECT_GT(feasible, 80);
}

}  // namespace
}  // namespace eon
