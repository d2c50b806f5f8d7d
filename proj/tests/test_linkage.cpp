#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mdendro/error.hpp"
#include "mdendro/linkage.hpp"
#include "mdendro/oracle.hpp"

using namespace mdendro;
using testutil::close;

namespace {

// I = {x1,x2,x3}, J = {x4} singletons of the toy matrix.
BlockView toy_blocks() {
  BlockView b({1, 1, 1}, {1});
  b.within_i(0, 1) = 2;
  b.within_i(0, 2) = 4;
  b.within_i(1, 2) = 2;
  b.cross(0, 0) = 7;
  b.cross(1, 0) = 5;
  b.cross(2, 0) = 3;
  return b;
}

BlockView random_blocks(std::mt19937_64& rng, std::size_t p, std::size_t q) {
  std::uniform_int_distribution<std::size_t> sz(1, 6);
  std::uniform_real_distribution<double> d(0.1, 50.0);
  std::vector<std::size_t> si(p), sj(q);
  for (auto& s : si) s = sz(rng);
  for (auto& s : sj) s = sz(rng);
  BlockView b(si, sj);
  for (std::size_t x = 0; x < p; ++x) {
    for (std::size_t y = x + 1; y < p; ++y) b.within_i(x, y) = b.within_i(y, x) = d(rng);
    for (std::size_t y = 0; y < q; ++y) b.cross(x, y) = d(rng);
  }
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t y = x + 1; y < q; ++y) b.within_j(x, y) = b.within_j(y, x) = d(rng);
  return b;
}

}  // namespace

TEST_CASE("method names") {
  for (Method m : kAllMethods) CHECK(parse_method(to_string(m)) == m);
  CHECK(parse_method("unweighted-average") == Method::unweighted_average);
  CHECK(parse_method("upgma") == Method::unweighted_average);
  CHECK_FALSE(parse_method("ward").has_value());
}

TEST_CASE("alpha validation") {
  CHECK_NOTHROW(MethodSpec::joint_between_within(2.0).validate());
  CHECK(MethodSpec::of(Method::joint_between_within).alpha == 1.0);
  CHECK_THROWS_AS(MethodSpec::joint_between_within(0.0), Error);
  CHECK_THROWS_AS(MethodSpec::joint_between_within(2.5), Error);
  MethodSpec bad{Method::single, 1.0};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("vg_distance on the toy blocks") {
  const auto b = toy_blocks();
  CHECK(vg_distance(MethodSpec::of(Method::unweighted_average), b) == 5);
  CHECK(vg_distance(MethodSpec::of(Method::single), b) == 3);
  CHECK(vg_distance(MethodSpec::of(Method::complete), b) == 7);
  CHECK(vg_distance(MethodSpec::of(Method::weighted_average), b) == 5);
  // symmetric in the roles of I and J
  CHECK(vg_distance(MethodSpec::of(Method::single), b.swapped()) == 3);
}

TEST_CASE("vg_distance identity on two singletons") {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    auto b = random_blocks(rng, 1, 1);
    for (Method m : kAllMethods) CHECK(vg_distance(MethodSpec::of(m), b) == b.cross(0, 0));
  }
}

TEST_CASE("vg_distance missing entries") {
  BlockView b({1, 1}, {1});
  b.cross(0, 0) = 1;
  b.cross(1, 0) = 2;
  CHECK_THROWS_AS(vg_distance(MethodSpec::of(Method::single), b), Error);
  b.within_i(0, 1) = 1;
  CHECK_NOTHROW(vg_distance(MethodSpec::of(Method::single), b));
  CHECK_THROWS_AS(vg_distance(MethodSpec{Method::joint_between_within, 3.0}, b), Error);
}

TEST_CASE("block recurrence coefficients") {
  const std::vector<std::size_t> si{2, 3}, sj{4};
  SUBCASE("unweighted average") {
    VGParams p(Method::unweighted_average, si, sj);
    CHECK(p.alpha(0, 0) == doctest::Approx(2.0 * 4 / (5.0 * 4)));
    CHECK(p.beta_i(0, 1) == 0);
    CHECK(p.gamma(0, 0) == 0);
    CHECK_FALSE(p.delta().has_value());
  }
  SUBCASE("single and complete") {
    VGParams s(Method::single, si, sj);
    CHECK(s.alpha(1, 0) == doctest::Approx(0.5));
    CHECK(s.gamma(1, 0) == doctest::Approx(0.5));
    CHECK(s.delta() == 0);
    CHECK(VGParams(Method::complete, si, sj).delta() == 1);
  }
  SUBCASE("weighted centroid") {
    VGParams p(Method::weighted_centroid, si, sj);
    CHECK(p.alpha(0, 0) == doctest::Approx(0.5));
    CHECK(p.beta_i(0, 1) == doctest::Approx(-0.25));
  }
  SUBCASE("unweighted centroid") {
    VGParams p(Method::unweighted_centroid, si, sj);
    CHECK(p.alpha(1, 0) == doctest::Approx(3.0 / 5));
    CHECK(p.beta_i(0, 1) == doctest::Approx(-6.0 / 25));
  }
  SUBCASE("joint between-within") {
    VGParams p(Method::joint_between_within, si, sj);
    CHECK(p.alpha(0, 0) == doctest::Approx(6.0 / 9));
    CHECK(p.beta_i(0, 1) == doctest::Approx(-4.0 / 9));
  }
}

TEST_CASE("pg_distance examples") {
  CHECK(pg_distance(MethodSpec::of(Method::unweighted_average), 1, 1, 1, 9, 4, 2) == 3);
  CHECK(pg_distance(MethodSpec::of(Method::single), 3, 5, 2, 123, 4, 2) == 2);
  CHECK(pg_distance(MethodSpec::of(Method::complete), 3, 5, 2, 123, 4, 2) == 4);
  CHECK(pg_distance(MethodSpec::of(Method::unweighted_centroid), 1, 1, 1, 2, 7, 5) == 5.5);
}

TEST_CASE("reduction of the block formula to the pair formula") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 300; ++rep) {
    const auto b = random_blocks(rng, 2, 1);
    for (Method m : kAllMethods) {
      const auto spec = MethodSpec::of(m);
      const double vg = vg_distance(spec, b);
      const double pg = pg_distance(spec, b.sizes_i[0], b.sizes_i[1], b.sizes_j[0],
                                    b.within_i(0, 1), b.cross(0, 0), b.cross(1, 0));
      INFO(to_string(m));
      CHECK(close(vg, pg));
    }
  }
}

TEST_CASE("permutation invariance within blocks") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t p = 1 + rep % 4, q = 1 + (rep / 4) % 3;
    const auto b = random_blocks(rng, p, q);
    const auto pi = testutil::shuffled(rng, p);
    const auto pj = testutil::shuffled(rng, q);
    BlockView c({}, {});
    for (auto x : pi) c.sizes_i.push_back(b.sizes_i[x]);
    for (auto y : pj) c.sizes_j.push_back(b.sizes_j[y]);
    c = BlockView(c.sizes_i, c.sizes_j);
    for (std::size_t x = 0; x < p; ++x) {
      for (std::size_t y = 0; y < p; ++y)
        if (x != y) c.within_i(x, y) = b.within_i(pi[x], pi[y]);
      for (std::size_t y = 0; y < q; ++y) c.cross(x, y) = b.cross(pi[x], pj[y]);
    }
    for (std::size_t x = 0; x < q; ++x)
      for (std::size_t y = 0; y < q; ++y)
        if (x != y) c.within_j(x, y) = b.within_j(pj[x], pj[y]);
    for (Method m : kAllMethods) {
      const auto spec = MethodSpec::of(m);
      CHECK(close(vg_distance(spec, b), vg_distance(spec, c)));
      CHECK(close(vg_distance(spec, b), vg_distance(spec, b.swapped())));
    }
  }
}

TEST_CASE("weighted equals unweighted on singleton constituents") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 100; ++rep) {
    auto b = random_blocks(rng, 1 + rep % 4, 1 + rep % 3);
    std::fill(b.sizes_i.begin(), b.sizes_i.end(), 1);
    std::fill(b.sizes_j.begin(), b.sizes_j.end(), 1);
    CHECK(vg_distance(MethodSpec::of(Method::weighted_average), b) ==
          vg_distance(MethodSpec::of(Method::unweighted_average), b));
    CHECK(vg_distance(MethodSpec::of(Method::weighted_centroid), b) ==
          vg_distance(MethodSpec::of(Method::unweighted_centroid), b));
  }
}

TEST_CASE("direct distances") {
  const auto m = testutil::toy();
  const std::vector<std::size_t> i{0, 1, 2}, j{3};
  CHECK(direct_distance(MethodSpec::of(Method::single), m, i, j) == 3);
  CHECK(direct_distance(MethodSpec::of(Method::complete), m, i, j) == 7);
  CHECK(direct_distance(MethodSpec::of(Method::unweighted_average), m, i, j) == 5);
  const auto two = ProximityMatrix::from_condensed(2, {9});
  const std::vector<std::size_t> a{0}, b{1};
  CHECK(direct_distance(MethodSpec::joint_between_within(1.0), two, a, b) == 9);
  CHECK_THROWS_AS(direct_distance(MethodSpec::of(Method::weighted_average), m, i, j), Error);
  CHECK_THROWS_AS(direct_distance(MethodSpec::of(Method::unweighted_centroid), m, i, j), Error);
}

TEST_CASE("centroid oracle") {
  using oracle::Point;
  CHECK(oracle::centroid_distance({{{0, 0}}}, {{{3, 4}}}, false) == 25);
  CHECK(oracle::centroid_distance({{{0, 0}, {2, 0}}}, {{{5, 0}}}, false) == 16);
  // weighted: center of {(0,0)} and {(4,0),(4,0)} is (2,0)
  CHECK(oracle::centroid_distance({{{0, 0}}, {{4, 0}, {4, 0}}}, {{{2, 3}}}, true) == 9);
  CHECK(oracle::centroid_distance({{{0, 0}}, {{4, 0}, {4, 0}}}, {{{2, 3}}}, false) ==
        doctest::Approx(9 + 4.0 / 9));
  CHECK_THROWS_AS(oracle::centroid_distance({{{0, 0}}}, {{{1, 2, 3}}}, false), Error);
}

TEST_CASE("jbw oracle") {
  using oracle::Point;
  const std::vector<Point> x{{0, 0}}, y{{3, 4}};
  CHECK(oracle::jbw_distance(x, y, 2.0) == doctest::Approx(25));
  CHECK(oracle::jbw_distance(x, y, 1.0) == doctest::Approx(5));
  CHECK_THROWS_AS(oracle::jbw_distance(x, y, 0.0), Error);
  CHECK_THROWS_AS(oracle::jbw_distance(x, y, 2.1), Error);

  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = testutil::random_points(rng, 1 + rep % 5, 3);
    const auto b = testutil::random_points(rng, 1 + rep % 4, 3);
    const double na = a.size(), nb = b.size();
    const double ward = na * nb / (na + nb) * oracle::squared_distance(oracle::mean(a), oracle::mean(b));
    CHECK(close(oracle::jbw_distance(a, b, 2.0), 2 * ward));
  }
}
