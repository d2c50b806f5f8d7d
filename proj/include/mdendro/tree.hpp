#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdendro/linkage.hpp"
#include "mdendro/proximity.hpp"

namespace mdendro {

// How a scalar height is picked inside a fusion interval.
enum class FusionPolicy {
  interval,  // keep the interval only
  natural,   // the method's own aggregate of the tied distances
  shortest,  // always the lower bound
};

std::string_view to_string(FusionPolicy policy) noexcept;
std::optional<FusionPolicy> parse_fusion_policy(std::string_view name) noexcept;

struct TreeNode {
  std::string label;                  // leaves only
  std::vector<std::size_t> children;  // node indices, ordered by smallest member
  std::vector<std::size_t> members;   // sorted leaf indices
  double h_lower = 0.0;
  double h_upper = 0.0;
  std::optional<double> fusion;

  bool is_leaf() const noexcept { return children.empty(); }
  bool has_interval() const noexcept { return h_upper > h_lower; }
};

// A multivalued tree (T, h_l, h_u). Nodes 0..n-1 are the leaves in input
// order; internal nodes follow in the order they were formed. A valued tree
// is the special case h_l == h_u everywhere.
class MultivaluedTree {
 public:
  MultivaluedTree() = default;
  explicit MultivaluedTree(std::vector<std::string> labels);

  // Adds an internal node over existing nodes and makes it the root.
  // Children are reordered canonically. Heights are not checked here; see
  // validate().
  std::size_t add_node(std::vector<std::size_t> children, double h_lower, double h_upper,
                       std::optional<double> fusion = std::nullopt);

  void set_fusion(std::size_t node, std::optional<double> fusion);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(std::size_t k) const { return nodes_.at(k); }
  std::size_t leaf_count() const noexcept { return labels_.size(); }
  std::size_t internal_count() const noexcept { return nodes_.size() - labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  std::size_t root() const noexcept { return root_; }

  // Parent index of every node; the root maps to itself.
  std::vector<std::size_t> parents() const;

  bool is_valued() const noexcept;

  // Display precision of the source matrix, method and policy tags.
  std::optional<int> precision;
  std::optional<MethodSpec> method;
  std::optional<FusionPolicy> policy;

 private:
  std::vector<std::string> labels_;
  std::vector<TreeNode> nodes_;
  std::size_t root_ = 0;
};

using ValuedTree = MultivaluedTree;

enum class Axiom {
  root_covers_all,     // n-tree (i)
  no_empty_node,       // n-tree (ii)
  singletons_present,  // n-tree (iii)
  nested_or_disjoint,  // n-tree (iv)
  ordered_bounds,      // 0 <= h_l <= h_u
  zero_iff_leaf,       // h_l = 0 <=> h_u = 0 <=> leaf
  monotone,            // X strictly inside Y => h_l(X) < h_l(Y); a reversal
  fusion_in_interval,  // chosen fusion within [h_l, h_u]
};

std::string_view to_string(Axiom axiom) noexcept;

struct Violation {
  Axiom axiom;
  std::size_t node;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  // True when no axiom other than monotonicity fails.
  bool structurally_valid() const noexcept;
  bool passed() const noexcept { return violations.empty(); }
  std::size_t count(Axiom axiom) const noexcept;
};

ValidationReport validate(const MultivaluedTree& tree);

// Extended Newick: internal nodes carry "[h_l,h_u]". Heights are printed with
// `decimals` places; by default precision + 1, at least 3.
int newick_decimals(const MultivaluedTree& tree) noexcept;
std::string to_newick(const MultivaluedTree& tree, std::optional<int> decimals = std::nullopt);

// Throws ParseError carrying the byte offset.
MultivaluedTree parse_newick(std::string_view text);

// Lowest-common-ancestor heights. Each internal node contributes its fusion
// value, or its single height when h_l == h_u. Throws UnresolvedHeights for
// an interval node without a fusion value.
ProximityMatrix cophenetic_matrix(const MultivaluedTree& tree);

// Same leaf labels, same clusters, every height within `tolerance`.
bool tree_equal(const MultivaluedTree& a, const MultivaluedTree& b, double tolerance = 1e-9);

// Exact, label-based canonical text: children ordered by smallest label,
// heights written as hexadecimal floats. Equal strings mean identical trees.
std::string canonical_form(const MultivaluedTree& tree);

}  // namespace mdendro
