#include "mdendro/tree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "mdendro/decimal.hpp"
#include "mdendro/error.hpp"

namespace mdendro {

namespace {

constexpr std::string_view kNewickSpecial = "()[]',;: \t\r\n";

std::string quote_label(const std::string& label) {
  if (!label.empty() && label.find_first_of(kNewickSpecial) == std::string::npos) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

void write_newick(const MultivaluedTree& tree, std::size_t k, int decimals, std::string& out) {
  const TreeNode& node = tree.node(k);
  if (node.is_leaf()) {
    out += quote_label(node.label);
    return;
  }
  out += '(';
  for (std::size_t c = 0; c < node.children.size(); ++c) {
    if (c) out += ',';
    write_newick(tree, node.children[c], decimals, out);
  }
  out += ")[";
  out += decimal::fixed(node.h_lower, decimals);
  out += ',';
  out += decimal::fixed(node.h_upper, decimals);
  out += ']';
}

struct NewickAst {
  std::string label;
  std::vector<NewickAst> children;
  double h_lower = 0.0;
  double h_upper = 0.0;
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  NewickAst parse() {
    NewickAst root = node();
    skip_space();
    expect(';');
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse_error, "newick offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc{} || ptr != text_.data() + pos_ || start == pos_) {
      pos_ = start;
      fail("expected a height");
    }
    return v;
  }

  std::string label() {
    skip_space();
    std::string out;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated quoted label");
        if (text_[pos_] == '\'') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
            out += '\'';
            pos_ += 2;
            continue;
          }
          ++pos_;
          break;
        }
        out += text_[pos_++];
      }
      if (out.empty()) fail("empty label");
      return out;
    }
    while (pos_ < text_.size() && kNewickSpecial.find(text_[pos_]) == std::string_view::npos) {
      out += text_[pos_++];
    }
    if (out.empty()) fail("expected a label or '('");
    return out;
  }

  NewickAst node() {
    skip_space();
    NewickAst out;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      out.children.push_back(node());
      skip_space();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        out.children.push_back(node());
        skip_space();
      }
      if (out.children.size() < 2) fail("internal node needs at least two children");
      expect(')');
      expect('[');
      out.h_lower = number();
      expect(',');
      out.h_upper = number();
      expect(']');
      return out;
    }
    out.label = label();
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_labels(const NewickAst& ast, std::vector<std::string>& labels) {
  if (ast.children.empty()) {
    labels.push_back(ast.label);
    return;
  }
  for (const auto& c : ast.children) collect_labels(c, labels);
}

std::size_t build(const NewickAst& ast, MultivaluedTree& tree, std::size_t& next_leaf) {
  if (ast.children.empty()) return next_leaf++;
  std::vector<std::size_t> kids;
  kids.reserve(ast.children.size());
  for (const auto& c : ast.children) kids.push_back(build(c, tree, next_leaf));
  return tree.add_node(std::move(kids), ast.h_lower, ast.h_upper);
}

double scalar_height(const TreeNode& node) {
  if (node.fusion) return *node.fusion;
  if (node.h_lower == node.h_upper) return node.h_lower;
  throw Error(ErrorCode::unresolved_heights,
              "node has interval [" + decimal::shortest(node.h_lower) + ", " +
                  decimal::shortest(node.h_upper) + "] and no fusion value");
}

std::map<std::vector<std::string>, const TreeNode*> clusters_by_labels(const MultivaluedTree& t) {
  std::map<std::vector<std::string>, const TreeNode*> out;
  for (const auto& node : t.nodes()) {
    if (node.is_leaf()) continue;
    std::vector<std::string> key;
    key.reserve(node.members.size());
    for (std::size_t m : node.members) key.push_back(t.labels()[m]);
    std::sort(key.begin(), key.end());
    out.emplace(std::move(key), &node);
  }
  return out;
}

std::string canonical(const MultivaluedTree& tree, std::size_t k, std::string& smallest) {
  const TreeNode& node = tree.node(k);
  if (node.is_leaf()) {
    smallest = node.label;
    return quote_label(node.label);
  }
  std::vector<std::pair<std::string, std::string>> parts;
  for (std::size_t c : node.children) {
    std::string s;
    std::string text = canonical(tree, c, s);
    parts.emplace_back(std::move(s), std::move(text));
  }
  std::sort(parts.begin(), parts.end());
  smallest = parts.front().first;
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i].second;
  }
  out += ")[" + hex(node.h_lower) + "," + hex(node.h_upper);
  if (node.fusion) out += "|" + hex(*node.fusion);
  return out + "]";
}

}  // namespace

std::string_view to_string(FusionPolicy policy) noexcept {
  switch (policy) {
    case FusionPolicy::interval: return "interval";
    case FusionPolicy::natural: return "natural";
    case FusionPolicy::shortest: return "shortest";
  }
  return "interval";
}

std::optional<FusionPolicy> parse_fusion_policy(std::string_view name) noexcept {
  if (name == "interval" || name == "interval-only" || name == "interval_only") {
    return FusionPolicy::interval;
  }
  if (name == "natural") return FusionPolicy::natural;
  if (name == "shortest") return FusionPolicy::shortest;
  return std::nullopt;
}

std::string_view to_string(Axiom axiom) noexcept {
  switch (axiom) {
    case Axiom::root_covers_all: return "root-covers-all";
    case Axiom::no_empty_node: return "no-empty-node";
    case Axiom::singletons_present: return "singletons-present";
    case Axiom::nested_or_disjoint: return "nested-or-disjoint";
    case Axiom::ordered_bounds: return "ordered-bounds";
    case Axiom::zero_iff_leaf: return "zero-iff-leaf";
    case Axiom::monotone: return "monotone";
    case Axiom::fusion_in_interval: return "fusion-in-interval";
  }
  return "unknown";
}

MultivaluedTree::MultivaluedTree(std::vector<std::string> labels) : labels_(std::move(labels)) {
  nodes_.reserve(2 * labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    TreeNode leaf;
    leaf.label = labels_[i];
    leaf.members = {i};
    nodes_.push_back(std::move(leaf));
  }
}

std::size_t MultivaluedTree::add_node(std::vector<std::size_t> children, double h_lower,
                                      double h_upper, std::optional<double> fusion) {
  if (children.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "internal node needs at least two children");
  }
  for (std::size_t c : children) {
    if (c >= nodes_.size()) throw Error(ErrorCode::invalid_argument, "unknown child node");
  }
  std::sort(children.begin(), children.end(), [this](std::size_t a, std::size_t b) {
    return nodes_[a].members.front() < nodes_[b].members.front();
  });
  if (std::adjacent_find(children.begin(), children.end()) != children.end()) {
    throw Error(ErrorCode::invalid_argument, "child listed twice");
  }
  TreeNode node;
  for (std::size_t c : children) {
    node.members.insert(node.members.end(), nodes_[c].members.begin(), nodes_[c].members.end());
  }
  std::sort(node.members.begin(), node.members.end());
  node.children = std::move(children);
  node.h_lower = h_lower;
  node.h_upper = h_upper;
  node.fusion = fusion;
  nodes_.push_back(std::move(node));
  root_ = nodes_.size() - 1;
  return root_;
}

void MultivaluedTree::set_fusion(std::size_t node, std::optional<double> fusion) {
  nodes_.at(node).fusion = fusion;
}

std::vector<std::size_t> MultivaluedTree::parents() const {
  std::vector<std::size_t> out(nodes_.size());
  for (std::size_t k = 0; k < nodes_.size(); ++k) out[k] = k;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    for (std::size_t c : nodes_[k].children) out[c] = k;
  }
  return out;
}

bool MultivaluedTree::is_valued() const noexcept {
  return std::none_of(nodes_.begin(), nodes_.end(),
                      [](const TreeNode& n) { return n.h_lower != n.h_upper; });
}

bool ValidationReport::structurally_valid() const noexcept {
  return std::all_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.axiom == Axiom::monotone; });
}

std::size_t ValidationReport::count(Axiom axiom) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [axiom](const Violation& v) { return v.axiom == axiom; }));
}

ValidationReport validate(const MultivaluedTree& tree) {
  ValidationReport report;
  const auto& nodes = tree.nodes();
  const std::size_t n = tree.leaf_count();
  if (n == 0) return report;
  auto add = [&](Axiom axiom, std::size_t node, std::string message) {
    report.violations.push_back({axiom, node, std::move(message)});
  };

  if (tree.node(tree.root()).members.size() != n) {
    add(Axiom::root_covers_all, tree.root(), "root does not contain every individual");
  }

  std::vector<std::size_t> parent_count(nodes.size(), 0);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (std::size_t c : nodes[k].children) ++parent_count[c];
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const TreeNode& node = nodes[k];
    if (node.members.empty()) add(Axiom::no_empty_node, k, "node without members");
    if (k < n && (!node.is_leaf() || node.members != std::vector<std::size_t>{k})) {
      add(Axiom::singletons_present, k, "leaf " + std::to_string(k) + " is not a singleton");
    }
    if (parent_count[k] > 1) {
      add(Axiom::nested_or_disjoint, k, "node shared by " + std::to_string(parent_count[k]) +
                                            " parents; clusters overlap");
    } else if (parent_count[k] == 0 && k != tree.root()) {
      add(Axiom::root_covers_all, k, "node detached from the root");
    }
    if (node.is_leaf()) continue;

    if (!(node.h_lower >= 0.0 && node.h_lower <= node.h_upper)) {
      add(Axiom::ordered_bounds, k,
          "interval [" + decimal::shortest(node.h_lower) + ", " +
              decimal::shortest(node.h_upper) + "] violates 0 <= h_l <= h_u");
    }
    if (node.h_lower == 0.0 || node.h_upper == 0.0) {
      add(Axiom::zero_iff_leaf, k, "internal node at height zero");
    }
    if (node.fusion && !(*node.fusion >= node.h_lower && *node.fusion <= node.h_upper)) {
      add(Axiom::fusion_in_interval, k, "fusion value outside its interval");
    }
  }

  const auto parents = tree.parents();
  for (std::size_t k = n; k < nodes.size(); ++k) {
    const std::size_t p = parents[k];
    if (p == k) continue;
    if (!(nodes[k].h_lower < nodes[p].h_lower)) {
      add(Axiom::monotone, k,
          "reversal: h_l " + decimal::shortest(nodes[k].h_lower) + " is not below parent h_l " +
              decimal::shortest(nodes[p].h_lower));
    }
  }
  return report;
}

int newick_decimals(const MultivaluedTree& tree) noexcept {
  return tree.precision ? std::max(3, *tree.precision + 1) : 3;
}

std::string to_newick(const MultivaluedTree& tree, std::optional<int> decimals) {
  if (tree.empty()) return ";";
  std::string out;
  write_newick(tree, tree.root(), decimals.value_or(newick_decimals(tree)), out);
  return out + ";";
}

MultivaluedTree parse_newick(std::string_view text) {
  const NewickAst ast = NewickParser(text).parse();
  std::vector<std::string> labels;
  collect_labels(ast, labels);
  std::set<std::string_view> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw Error(ErrorCode::parse_error, "newick: label '" + l + "' appears twice");
    }
  }
  MultivaluedTree tree(std::move(labels));
  std::size_t next_leaf = 0;
  build(ast, tree, next_leaf);
  return tree;
}

ProximityMatrix cophenetic_matrix(const MultivaluedTree& tree) {
  const std::size_t n = tree.leaf_count();
  std::vector<double> values(n < 2 ? 0 : n * (n - 1) / 2, 0.0);
  for (const auto& node : tree.nodes()) {
    if (node.is_leaf()) continue;
    const double h = scalar_height(node);
    for (std::size_t a = 0; a < node.children.size(); ++a) {
      for (std::size_t b = a + 1; b < node.children.size(); ++b) {
        for (std::size_t x : tree.node(node.children[a]).members) {
          for (std::size_t y : tree.node(node.children[b]).members) {
            values[condensed_index(n, x, y)] = h;
          }
        }
      }
    }
  }
  return ProximityMatrix(tree.labels(), std::move(values));
}

bool tree_equal(const MultivaluedTree& a, const MultivaluedTree& b, double tolerance) {
  auto la = a.labels();
  auto lb = b.labels();
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb || a.internal_count() != b.internal_count()) return false;

  const auto ca = clusters_by_labels(a);
  const auto cb = clusters_by_labels(b);
  if (ca.size() != cb.size()) return false;
  auto close = [tolerance](double x, double y) { return std::fabs(x - y) <= tolerance; };
  for (const auto& [key, na] : ca) {
    const auto it = cb.find(key);
    if (it == cb.end()) return false;
    const TreeNode* nb = it->second;
    if (!close(na->h_lower, nb->h_lower) || !close(na->h_upper, nb->h_upper)) return false;
    if (na->fusion.has_value() != nb->fusion.has_value()) return false;
    if (na->fusion && !close(*na->fusion, *nb->fusion)) return false;
  }
  return true;
}

std::string canonical_form(const MultivaluedTree& tree) {
  if (tree.empty()) return ";";
  std::string smallest;
  return canonical(tree, tree.root(), smallest) + ";";
}

}  // namespace mdendro
