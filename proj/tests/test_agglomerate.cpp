#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "mdendro/agglomerate.hpp"
#include "mdendro/error.hpp"

using namespace mdendro;

namespace {

const MethodSpec kUpgma = MethodSpec::of(Method::unweighted_average);

// Heights of a valued tree's internal nodes in formation order.
std::vector<double> heights(const ValuedTree& t) {
  std::vector<double> h;
  for (std::size_t k = t.leaf_count(); k < t.nodes().size(); ++k) h.push_back(t.node(k).h_lower);
  return h;
}

}  // namespace

TEST_CASE("tie groups on the toy") {
  ClusterState s(testutil::toy());
  const auto g = tie_groups(s, s.shortest());
  CHECK(s.shortest() == 2);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(g[1] == std::vector<std::size_t>{3});
}

TEST_CASE("tie groups of nine clusters") {
  // shortest edges (2,3) (4,5) (5,6) (7,8) (7,9) (8,9), one-based
  const std::size_t n = 9;
  std::vector<double> v(n * (n - 1) / 2, 10.0);
  for (auto [a, b] : {std::pair{2, 3}, {4, 5}, {5, 6}, {7, 8}, {7, 9}, {8, 9}}) {
    v[condensed_index(n, a - 1, b - 1)] = 1.0;
  }
  ClusterState s(ProximityMatrix::from_condensed(n, v));
  const auto g = tie_groups(s, 1.0);
  const std::vector<std::vector<std::size_t>> want{{0}, {1, 2}, {3, 4, 5}, {6, 7, 8}};
  CHECK(g == want);
}

TEST_CASE("tie groups without ties") {
  ClusterState s(ProximityMatrix::from_condensed(4, {1, 2, 3, 4, 5, 6}));
  const auto g = tie_groups(s, 1);
  CHECK(g.size() == 3);
  CHECK(g[0] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("tie detection uses the matrix precision") {
  const auto m = round_to_precision(ProximityMatrix::from_condensed(3, {0.273, 0.268, 0.5}), 2);
  ClusterState s(m);
  CHECK(tie_groups(s, s.shortest()).size() == 1);
}

TEST_CASE("variable-group toy, unweighted average") {
  const auto r = cluster_variable_group(testutil::toy(), kUpgma);
  const auto& t = r.tree;
  REQUIRE(t.internal_count() == 2);
  const auto& a = t.node(4);
  CHECK(a.members == std::vector<std::size_t>{0, 1, 2});
  CHECK(a.h_lower == 2);
  CHECK(a.h_upper == 4);
  CHECK_FALSE(a.fusion.has_value());
  const auto& root = t.node(t.root());
  CHECK(root.h_lower == 5);
  CHECK(root.h_upper == 5);
  CHECK(r.reversals.empty());
  CHECK(r.warnings.empty());

  REQUIRE(r.trace.iterations.size() == 2);
  const auto& it = r.trace.iterations[0];
  CHECK(it.d_lower == 2);
  CHECK(it.d_next == 5);
  CHECK(it.merges.size() == 1);
  CHECK(r.trace.iterations[1].d_lower == 5);
  CHECK_FALSE(r.trace.iterations[1].d_next.has_value());
}

TEST_CASE("variable-group on one individual") {
  const auto r = cluster_variable_group(ProximityMatrix({"a"}, {}), kUpgma);
  CHECK(r.tree.internal_count() == 0);
  CHECK(r.trace.iterations.empty());
  CHECK_THROWS_AS(cluster_variable_group(ProximityMatrix(), kUpgma), Error);
}

TEST_CASE("variable-group toy, single linkage") {
  const auto r = cluster_variable_group(testutil::toy(), MethodSpec::of(Method::single),
                                        FusionPolicy::shortest);
  const auto& t = r.tree;
  CHECK(t.node(4).h_lower == 2);
  CHECK(t.node(4).h_upper == 4);
  CHECK(t.node(t.root()).h_lower == 3);
  const auto c = cophenetic_matrix(t);
  CHECK(c(0, 1) == 2);
  CHECK(c(0, 2) == 2);
  CHECK(c(0, 3) == 3);
  // the band [2,4] reaches above the root at 3
  CHECK_FALSE(r.reversals.empty());
  CHECK(r.reversals[0].kind == ReversalReport::Kind::interval_overlap);
}

TEST_CASE("fusion values on the toy group") {
  GroupView g{{1, 1, 1}, DistanceBlock(3, 3), 2};
  g.within(0, 1) = 2;
  g.within(0, 2) = 4;
  g.within(1, 2) = 2;
  CHECK(fusion_value(g, kUpgma, FusionPolicy::natural) == doctest::Approx(8.0 / 3).epsilon(1e-15));
  CHECK(fusion_value(g, MethodSpec::of(Method::single), FusionPolicy::natural) == 2);
  CHECK(fusion_value(g, MethodSpec::of(Method::complete), FusionPolicy::natural) == 4);
  CHECK(fusion_value(g, MethodSpec::of(Method::weighted_average), FusionPolicy::natural) ==
        doctest::Approx(8.0 / 3));
  for (Method m : kAllMethods) {
    CHECK(fusion_value(g, MethodSpec::of(m), FusionPolicy::shortest) == 2);
  }
  CHECK(fusion_value(g, MethodSpec::of(Method::unweighted_centroid), FusionPolicy::natural) == 2);
  CHECK_THROWS_AS(fusion_value(g, kUpgma, FusionPolicy::interval), Error);
}

TEST_CASE("natural fallback is reported") {
  const auto r = cluster_variable_group(testutil::toy(), MethodSpec::of(Method::weighted_centroid),
                                        FusionPolicy::natural);
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("pair-group toy, first pair") {
  const auto t = cluster_pair_group(testutil::toy(), kUpgma, TieBreak::first_pair);
  CHECK(heights(t) == std::vector<double>{2, 3, 5});
  CHECK(t.node(4).members == std::vector<std::size_t>{0, 1});
  CHECK(t.node(5).members == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("pair-group toy, last pair") {
  const auto t = cluster_pair_group(testutil::toy(), kUpgma, TieBreak::last_pair);
  CHECK(t.node(4).members == std::vector<std::size_t>{1, 2});
  CHECK(heights(t) == std::vector<double>{2, 3, 5});
}

TEST_CASE("pair-group on two individuals") {
  const auto t = cluster_pair_group(ProximityMatrix::from_condensed(2, {1.5}), kUpgma);
  CHECK(heights(t) == std::vector<double>{1.5});
  CHECK_THROWS_AS(cluster_pair_group(ProximityMatrix(), kUpgma), Error);
}

TEST_CASE("seeded random is reproducible") {
  std::mt19937_64 rng(12);
  const auto m = testutil::random_integer(rng, 8, 3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = cluster_pair_group(m, kUpgma, TieBreak::seeded_random, seed);
    const auto b = cluster_pair_group(m, kUpgma, TieBreak::seeded_random, seed);
    CHECK(canonical_form(a) == canonical_form(b));
  }
}

TEST_CASE("enumeration of the toy") {
  const auto trees = enumerate_pair_group(testutil::toy(), kUpgma);
  REQUIRE(trees.size() == 3);
  std::multiset<std::vector<double>> got;
  for (const auto& t : trees) {
    auto h = heights(t);
    std::sort(h.begin(), h.end());
    got.insert(h);
  }
  // ((x1,x2),(x3,x4)) joins at (d13 + d14 + d23 + d24) / 4 = 18/4
  const std::multiset<std::vector<double>> want{{2, 3, 5}, {2, 3, 5}, {2, 3, 4.5}};
  CHECK(got == want);
  for (const auto& t : trees) CHECK_FALSE(tree_equal(t, cluster_variable_group(testutil::toy(), kUpgma).tree));
}

TEST_CASE("enumeration without ties") {
  const auto trees = enumerate_pair_group(ProximityMatrix::from_condensed(4, {1, 2, 3, 4, 5, 6}), kUpgma);
  CHECK(trees.size() == 1);
}

TEST_CASE("enumeration limit") {
  const auto m = ProximityMatrix::from_condensed(6, std::vector<double>(15, 1.0));
  CHECK_THROWS_AS(enumerate_pair_group(m, MethodSpec::of(Method::unweighted_centroid), 2), Error);
  try {
    enumerate_pair_group(m, MethodSpec::of(Method::unweighted_centroid), 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::too_many_solutions);
  }
}

TEST_CASE("centroid reversal in pair-group") {
  // near-equilateral triangle, squared distances
  const auto m = ProximityMatrix::from_condensed(3, {1.0, 1.1, 1.2});
  const auto t = cluster_pair_group(m, MethodSpec::of(Method::unweighted_centroid));
  // d({x1,x2},x3) = 1.1/2 + 1.2/2 - 1/4 = 0.9 < 1
  CHECK(t.node(t.root()).h_lower == doctest::Approx(0.9));
  CHECK_FALSE(detect_reversals(t).empty());
}

TEST_CASE("reversals from a trace") {
  const auto r = cluster_variable_group(testutil::toy(), kUpgma, FusionPolicy::natural);
  CHECK(detect_reversals(r.trace).empty());
  const auto s = cluster_variable_group(testutil::toy(), MethodSpec::of(Method::single));
  CHECK(detect_reversals(s.trace).size() == 1);
  CHECK(s.trace.iterations[0].reversal);
}

TEST_CASE("shortest policy has no fusion inversions for min, max and averages") {
  std::mt19937_64 rng(21);
  const Method methods[] = {Method::single, Method::complete, Method::unweighted_average,
                            Method::weighted_average};
  for (int rep = 0; rep < 40; ++rep) {
    const auto m = testutil::random_integer(rng, 3 + rep % 8, 4);
    for (Method k : methods) {
      const auto r = cluster_variable_group(m, MethodSpec::of(k), FusionPolicy::shortest);
      for (const auto& rev : r.reversals) CHECK(rev.kind != ReversalReport::Kind::fusion_inversion);
    }
  }
}
