#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdendro/linkage.hpp"
#include "mdendro/proximity.hpp"
#include "mdendro/tree.hpp"

namespace mdendro {

struct ClusterRecord {
  std::size_t node = 0;               // tree node this cluster corresponds to
  std::vector<std::size_t> members;   // sorted individual indices
  std::size_t size() const noexcept { return members.size(); }
};

// Active clusters of one iteration with their pairwise distances. Distances
// are kept at full precision; tie keys are the distances rounded to the
// matrix precision, or the distances themselves when there is none.
class ClusterState {
 public:
  // One singleton cluster per individual.
  explicit ClusterState(const ProximityMatrix& m);

  // Arbitrary clusters with condensed distances between them.
  ClusterState(std::vector<ClusterRecord> active, std::vector<double> distances,
               std::optional<int> precision = std::nullopt);

  std::size_t size() const noexcept { return active_.size(); }
  const std::vector<ClusterRecord>& active() const noexcept { return active_; }
  const ClusterRecord& cluster(std::size_t a) const { return active_.at(a); }
  std::optional<int> precision() const noexcept { return precision_; }

  double distance(std::size_t a, std::size_t b) const {
    return distances_[condensed_index(size(), a, b)];
  }
  double key(std::size_t a, std::size_t b) const { return keys_[condensed_index(size(), a, b)]; }

  // Smallest distance among the pairs holding the smallest key. Requires at
  // least two clusters.
  double shortest() const;

  std::size_t iteration = 0;

 private:
  std::vector<ClusterRecord> active_;
  std::vector<double> distances_;
  std::vector<double> keys_;
  std::optional<int> precision_;
};

// Connected components of the graph joining active clusters whose tie key
// equals that of `d_lower`. Positions into state.active(); each group sorted,
// groups ordered by first position. Unconnected clusters form singletons.
std::vector<std::vector<std::size_t>> tie_groups(const ClusterState& state, double d_lower);

// One supercluster formed in an iteration.
struct MergeRecord {
  std::size_t node = 0;
  std::vector<std::size_t> children;  // constituent node ids
  std::vector<std::size_t> members;   // individuals, input indices
  double h_lower = 0.0;               // D_min of the group
  double h_upper = 0.0;               // D_max of the group
  std::optional<double> fusion;
  bool reversal = false;
};

struct IterationRecord {
  std::size_t iteration = 0;
  double d_lower = 0.0;
  std::vector<std::vector<std::size_t>> groups;  // node ids, singletons included
  std::vector<MergeRecord> merges;               // groups with two or more clusters
  std::optional<double> d_next;                  // absent after the final merge
  bool reversal = false;
};

struct MergeTrace {
  std::vector<IterationRecord> iterations;
};

struct ReversalReport {
  enum class Kind {
    interval_overlap,  // child h_u above the h_l at which its parent forms
    fusion_inversion,  // child fusion value above the parent's
  };
  Kind kind;
  std::size_t node;
  std::size_t parent;
  double child_value;
  double parent_value;
};

std::string_view to_string(ReversalReport::Kind kind) noexcept;

struct ClusteringResult {
  MultivaluedTree tree;
  MergeTrace trace;
  std::vector<ReversalReport> reversals;
  std::vector<std::string> warnings;
};

// A supercluster about to be formed: constituent sizes, their pairwise
// distances (upper triangle read) and the level it forms at.
struct GroupView {
  std::vector<std::size_t> sizes;
  DistanceBlock within;
  double d_lower = 0.0;
};

// Whether `natural` has a meaning for the method; centroid and joint
// between-within fall back to the shortest distance.
bool has_natural_fusion(Method method) noexcept;

// Throws PolicyUnavailable for the interval policy, InvalidArgument for a
// group with fewer than two clusters.
double fusion_value(const GroupView& group, const MethodSpec& method, FusionPolicy policy);

// Variable-group agglomeration: every connected group of clusters at the
// shortest distance merges at once into a node with interval [D_min, D_max].
// The result does not depend on the order of the input rows. Throws
// EmptyInput for n = 0.
ClusteringResult cluster_variable_group(const ProximityMatrix& m, const MethodSpec& method,
                                        FusionPolicy policy = FusionPolicy::interval);

enum class TieBreak { first_pair, last_pair, seeded_random };

std::string_view to_string(TieBreak tiebreak) noexcept;
std::optional<TieBreak> parse_tiebreak(std::string_view name) noexcept;

// Classical pair-group agglomeration. Among pairs at the shortest distance the
// lexicographically smallest (first_pair) or largest (last_pair) cluster-id
// pair merges, or a uniformly drawn one. Ids start as the input indices and
// a merged cluster keeps the smaller id of its two parts.
ValuedTree cluster_pair_group(const ProximityMatrix& m, const MethodSpec& method,
                              TieBreak tiebreak = TieBreak::first_pair, std::uint64_t seed = 0);

inline constexpr std::size_t kDefaultEnumerationLimit = 1000;

// Every distinct valued tree the pair-group algorithm can produce under some
// resolution of shortest-distance ties, sorted by canonical form. Throws
// TooManySolutions once more than `limit` distinct trees turn up.
std::vector<ValuedTree> enumerate_pair_group(const ProximityMatrix& m, const MethodSpec& method,
                                             std::size_t limit = kDefaultEnumerationLimit);

std::vector<ReversalReport> detect_reversals(const MultivaluedTree& tree);
std::vector<ReversalReport> detect_reversals(const MergeTrace& trace);

}  // namespace mdendro
