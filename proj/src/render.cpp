#include "mdendro/render.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>
#include <vector>

#include "mdendro/decimal.hpp"

namespace mdendro {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string node_text(const MultivaluedTree& tree, const TreeNode& node) {
  if (node.is_leaf()) return node.label;
  std::string s = "[" + decimal::format(node.h_lower, tree.precision) + ".." +
                  decimal::format(node.h_upper, tree.precision) + "]";
  if (node.fusion) s += " fusion " + decimal::fixed(*node.fusion, newick_decimals(tree));
  return s;
}

}  // namespace

std::string render_text(const MultivaluedTree& tree) {
  if (tree.empty()) return "";
  std::string out;
  std::function<void(std::size_t, const std::string&)> walk = [&](std::size_t k,
                                                                  const std::string& prefix) {
    const TreeNode& node = tree.node(k);
    for (std::size_t c = 0; c < node.children.size(); ++c) {
      const bool last = c + 1 == node.children.size();
      out += prefix + (last ? "`-- " : "+-- ") + node_text(tree, tree.node(node.children[c])) + "\n";
      walk(node.children[c], prefix + (last ? "    " : "|   "));
    }
  };
  out += node_text(tree, tree.node(tree.root())) + "\n";
  walk(tree.root(), "");
  return out;
}

std::string render_svg(const MultivaluedTree& tree, const SvgOptions& opt) {
  const std::size_t n = tree.leaf_count();
  const auto& nodes = tree.nodes();

  // leaf rows in drawing order
  std::vector<double> y(nodes.size(), 0.0);
  std::size_t row = 0;
  std::function<void(std::size_t)> place = [&](std::size_t k) {
    const TreeNode& node = nodes[k];
    if (node.is_leaf()) {
      y[k] = opt.margin + (row++ + 0.5) * opt.row_height;
      return;
    }
    double sum = 0.0;
    for (auto c : node.children) {
      place(c);
      sum += y[c];
    }
    y[k] = sum / static_cast<double>(node.children.size());
  };
  if (n > 0) place(tree.root());

  double top = 0.0;
  for (const auto& node : nodes) top = std::max(top, node.h_upper);
  if (top <= 0.0) top = 1.0;

  const double x0 = opt.margin + opt.label_width;
  const double span = std::max(1, opt.width - opt.label_width - 2 * opt.margin);
  auto x = [&](double h) { return x0 + h / top * span; };
  const int axis_y = opt.margin + static_cast<int>(n) * opt.row_height + 10;
  const int height = axis_y + 30;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
     << height << "\" font-family=\"monospace\" font-size=\"12\">\n";

  for (std::size_t k = n; k < nodes.size(); ++k) {
    const TreeNode& node = nodes[k];
    if (!node.has_interval()) continue;
    double lo = y[k], hi = y[k];
    for (auto m : node.members) {
      lo = std::min(lo, y[m]);
      hi = std::max(hi, y[m]);
    }
    lo -= opt.row_height * 0.4;
    hi += opt.row_height * 0.4;
    os << "  <rect class=\"band\" x=\"" << num(x(node.h_lower)) << "\" y=\"" << num(lo)
       << "\" width=\"" << num(x(node.h_upper) - x(node.h_lower)) << "\" height=\""
       << num(hi - lo) << "\" fill=\"#808080\" fill-opacity=\"0.3\"/>\n";
  }

  const auto parents = tree.parents();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const TreeNode& node = nodes[k];
    if (!node.is_leaf()) {
      double lo = y[k], hi = y[k];
      for (auto c : node.children) {
        lo = std::min(lo, y[c]);
        hi = std::max(hi, y[c]);
      }
      os << "  <line x1=\"" << num(x(node.h_lower)) << "\" y1=\"" << num(lo) << "\" x2=\""
         << num(x(node.h_lower)) << "\" y2=\"" << num(hi) << "\" stroke=\"black\"/>\n";
    }
    if (parents[k] != k) {
      os << "  <line x1=\"" << num(x(node.h_upper)) << "\" y1=\"" << num(y[k]) << "\" x2=\""
         << num(x(nodes[parents[k]].h_lower)) << "\" y2=\"" << num(y[k])
         << "\" stroke=\"black\"/>\n";
    }
    if (node.is_leaf()) {
      os << "  <text x=\"" << num(x0 - 6) << "\" y=\"" << num(y[k] + 4)
         << "\" text-anchor=\"end\">" << xml_escape(node.label) << "</text>\n";
    }
  }

  os << "  <line x1=\"" << num(x(0)) << "\" y1=\"" << axis_y << "\" x2=\"" << num(x(top))
     << "\" y2=\"" << axis_y << "\" stroke=\"black\"/>\n";
  constexpr int ticks = 4;
  for (int t = 0; t <= ticks; ++t) {
    const double h = top * t / ticks;
    os << "  <line x1=\"" << num(x(h)) << "\" y1=\"" << axis_y << "\" x2=\"" << num(x(h))
       << "\" y2=\"" << axis_y + 4 << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << num(x(h)) << "\" y=\"" << axis_y + 16
       << "\" text-anchor=\"middle\">" << decimal::shortest(decimal::round(h, 3)) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace mdendro
