#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mdendro/agglomerate.hpp"
#include "mdendro/error.hpp"
#include "mdendro/records.hpp"
#include "mdendro/tree.hpp"

using namespace mdendro;

namespace {

ClusteringResult toy_run(FusionPolicy policy = FusionPolicy::interval) {
  return cluster_variable_group(testutil::toy(), MethodSpec::of(Method::unweighted_average), policy);
}

}  // namespace

TEST_CASE("toy tree validates") {
  const auto report = validate(toy_run().tree);
  CHECK(report.passed());
}

TEST_CASE("axiom violations are reported") {
  MultivaluedTree t({"a", "b", "c"});
  t.add_node({0, 1}, 0.0, 1.0);
  t.add_node({3, 2}, 2.0, 2.0);
  CHECK(validate(t).count(Axiom::zero_iff_leaf) == 1);

  MultivaluedTree r({"a", "b", "c"});
  r.add_node({0, 1}, 5.0, 5.0);
  r.add_node({3, 2}, 3.0, 3.0);
  const auto rep = validate(r);
  CHECK(rep.count(Axiom::monotone) == 1);
  CHECK(rep.structurally_valid());

  MultivaluedTree b({"a", "b"});
  b.add_node({0, 1}, 3.0, 2.0);
  CHECK(validate(b).count(Axiom::ordered_bounds) == 1);

  MultivaluedTree f({"a", "b", "c"});
  f.add_node({0, 1, 2}, 1.0, 2.0, 2.5);
  CHECK(validate(f).count(Axiom::fusion_in_interval) == 1);

  MultivaluedTree partial({"a", "b", "c"});
  partial.add_node({0, 1}, 1.0, 1.0);
  CHECK(validate(partial).count(Axiom::root_covers_all) > 0);
}

TEST_CASE("newick of the toy") {
  CHECK(to_newick(toy_run().tree) == "((x1,x2,x3)[2.000,4.000],x4)[5.000,5.000];");
  CHECK(to_newick(MultivaluedTree({"x1"})) == "x1;");
}

TEST_CASE("newick parse errors carry an offset") {
  try {
    parse_newick("(a,b[1,2];");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_newick("(a,a)[1,1];"), Error);
  CHECK_THROWS_AS(parse_newick("(a)[1,1];"), Error);
  CHECK_THROWS_AS(parse_newick("(a,b)[1,1]"), Error);
}

TEST_CASE("newick round trip") {
  const auto t = toy_run().tree;
  const auto back = parse_newick(to_newick(t));
  CHECK(tree_equal(t, back));
  CHECK(to_newick(back) == to_newick(t));
  CHECK(to_newick(parse_newick("x1;")) == "x1;");
  const auto q = parse_newick("('a b',c)[1.500,2.000];");
  CHECK(q.labels()[0] == "a b");
  CHECK(to_newick(q) == "('a b',c)[1.500,2.000];");

  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 30; ++rep) {
    const auto m = round_to_precision(testutil::random_continuous(rng, 3 + rep % 9), 2);
    const auto tree = cluster_variable_group(m, MethodSpec::of(kAllMethods[rep % 7])).tree;
    CHECK(to_newick(parse_newick(to_newick(tree))) == to_newick(tree));
  }
}

TEST_CASE("cophenetic matrix") {
  const auto c = cophenetic_matrix(toy_run(FusionPolicy::natural).tree);
  CHECK(c(0, 1) == doctest::Approx(8.0 / 3).epsilon(1e-15));
  CHECK(c(1, 2) == c(0, 1));
  CHECK(c(0, 3) == 5);
  CHECK(c(2, 3) == 5);

  MultivaluedTree two({"a", "b"});
  two.add_node({0, 1}, 3.0, 3.0);
  CHECK(cophenetic_matrix(two)(0, 1) == 3);

  try {
    cophenetic_matrix(toy_run().tree);
    FAIL("expected UnresolvedHeights");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unresolved_heights);
  }
}

TEST_CASE("tree equality") {
  const auto t = toy_run().tree;
  CHECK(tree_equal(t, t));
  MultivaluedTree a({"a", "b", "c"});
  a.add_node({0, 1}, 1, 1);
  a.add_node({3, 2}, 2, 2);
  MultivaluedTree b({"a", "b", "c"});
  b.add_node({1, 0}, 1, 1);
  b.add_node({2, 3}, 2, 2);
  CHECK(tree_equal(a, b));
  CHECK(canonical_form(a) == canonical_form(b));
  MultivaluedTree c({"a", "b", "c"});
  c.add_node({0, 1}, 1, 1);
  c.add_node({3, 2}, 2 + 1e-6, 2 + 1e-6);
  CHECK_FALSE(tree_equal(a, c));
  CHECK(tree_equal(a, c, 1e-5));
  CHECK(canonical_form(a) != canonical_form(c));
}

TEST_CASE("records document") {
  const auto r = toy_run(FusionPolicy::natural);
  const auto text = to_records(r.tree, r.trace, r.warnings);
  CHECK(text.find("\"format_version\": \"1\"") != std::string::npos);
  const auto doc = parse_records(text);
  CHECK(doc.tree.internal_count() == 2);
  CHECK(to_records(doc.tree, doc.trace, doc.warnings) == text);
  CHECK(tree_equal(doc.tree, r.tree));

  const auto one = cluster_variable_group(ProximityMatrix({"a"}, {}),
                                          MethodSpec::of(Method::single));
  const auto single = to_records(one.tree, one.trace);
  CHECK(parse_records(single).tree.internal_count() == 0);
  CHECK(to_records(parse_records(single).tree, parse_records(single).trace) == single);

  CHECK_THROWS_AS(parse_records("{"), Error);
  CHECK_THROWS_AS(parse_records("{\"format_version\": \"2\"}"), Error);
}

TEST_CASE("records round trip on random runs") {
  std::mt19937_64 rng(10);
  const FusionPolicy policies[] = {FusionPolicy::interval, FusionPolicy::natural,
                                   FusionPolicy::shortest};
  for (int rep = 0; rep < 40; ++rep) {
    const auto m = testutil::random_integer(rng, 2 + rep % 9, 5);
    const auto spec = rep % 7 == 6 ? MethodSpec::joint_between_within(0.5)
                                    : MethodSpec::of(kAllMethods[rep % 7]);
    const auto r = cluster_variable_group(m, spec, policies[rep % 3]);
    const auto text = to_records(r.tree, r.trace, r.warnings);
    const auto doc = parse_records(text);
    CHECK(to_records(doc.tree, doc.trace, doc.warnings) == text);
  }
}
