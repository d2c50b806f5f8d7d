#include "doctest.h"
#include "helpers.hpp"
#include "mdendro/agglomerate.hpp"
#include "mdendro/render.hpp"

using namespace mdendro;

namespace {

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

MultivaluedTree toy_tree() {
  return cluster_variable_group(testutil::toy(), MethodSpec::of(Method::unweighted_average)).tree;
}

}  // namespace

TEST_CASE("svg of the toy has one band") {
  const auto svg = render_svg(toy_tree());
  CHECK(count(svg, "class=\"band\"") == 1);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, ">x1</text>") == 1);
  CHECK(count(svg, ">x4</text>") == 1);
  CHECK(render_svg(toy_tree()) == svg);

  // band spans heights 2..4 of a 0..5 axis
  SvgOptions o;
  const double x0 = o.margin + o.label_width;
  const double span = o.width - o.label_width - 2 * o.margin;
  char want[64];
  std::snprintf(want, sizeof want, "x=\"%.2f\"", x0 + 2.0 / 5 * span);
  CHECK(svg.find(std::string("class=\"band\" ") + want) != std::string::npos);
}

TEST_CASE("valued tree svg has no bands") {
  const auto t = cluster_pair_group(testutil::toy(), MethodSpec::of(Method::unweighted_average));
  CHECK(count(render_svg(t), "class=\"band\"") == 0);
}

TEST_CASE("svg of one leaf") {
  const auto svg = render_svg(MultivaluedTree({"only"}));
  CHECK(count(svg, ">only</text>") == 1);
  CHECK(count(svg, "class=\"band\"") == 0);
}

TEST_CASE("band count equals interval nodes") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const auto t = cluster_variable_group(testutil::random_integer(rng, 3 + rep % 8, 3),
                                          MethodSpec::of(Method::complete))
                       .tree;
    std::size_t bands = 0;
    for (const auto& node : t.nodes()) bands += node.has_interval();
    CHECK(count(render_svg(t), "class=\"band\"") == bands);
  }
}

TEST_CASE("text drawing") {
  const auto txt = render_text(toy_tree());
  CHECK(txt.find("[2..4]") != std::string::npos);
  CHECK(txt ==
        "[5..5]\n"
        "+-- [2..4]\n"
        "|   +-- x1\n"
        "|   +-- x2\n"
        "|   `-- x3\n"
        "`-- x4\n");

  MultivaluedTree two({"a", "b"});
  two.add_node({0, 1}, 3, 3);
  two.precision = 0;
  CHECK(render_text(two).find("[3..3]") != std::string::npos);
  CHECK(render_text(MultivaluedTree({"a"})) == "a\n");
}
