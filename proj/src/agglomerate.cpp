#include "mdendro/agglomerate.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "mdendro/decimal.hpp"
#include "mdendro/error.hpp"
#include "mdendro/union_find.hpp"

namespace mdendro {

namespace {

// Upper bound on partial states the pair-group enumeration may visit.
constexpr std::size_t kMaxEnumerationStates = 2'000'000;

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::vector<std::size_t> merged_members(const std::vector<const ClusterRecord*>& parts) {
  std::vector<std::size_t> out;
  for (const auto* p : parts) out.insert(out.end(), p->members.begin(), p->members.end());
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Report>
void check_pair(std::vector<ReversalReport>& out, std::size_t node, std::size_t parent,
                const Report& child, const Report& up) {
  if (child.h_upper > up.h_lower) {
    out.push_back({ReversalReport::Kind::interval_overlap, node, parent, child.h_upper, up.h_lower});
  }
  if (child.fusion && up.fusion && *child.fusion > *up.fusion) {
    out.push_back({ReversalReport::Kind::fusion_inversion, node, parent, *child.fusion, *up.fusion});
  }
}

// Pair-group bookkeeping indexed by cluster id. Ids 0..n-1 start as the
// individuals; a merged cluster takes the smaller id of its two parts.
struct PairGroupState {
  struct Merge {
    std::size_t a;  // tree nodes
    std::size_t b;
    double height;
  };

  std::size_t n = 0;
  std::vector<std::size_t> active;  // ascending ids
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> node;    // tree node currently held by each id
  std::vector<double> dist;
  std::vector<double> keys;
  std::vector<std::string> forms;  // canonical subtree text, enumeration only
  std::vector<Merge> merges;
  std::optional<int> precision;

  PairGroupState(const ProximityMatrix& m, bool with_forms)
      : n(m.size()), precision(m.precision()) {
    sizes.assign(n, 1);
    node.resize(n);
    dist.assign(n * n, 0.0);
    keys.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      active.push_back(i);
      node[i] = i;
      for (std::size_t j = 0; j < n; ++j) set(i, j, m(i, j));
    }
    if (with_forms) {
      forms.assign(n, {});
      for (std::size_t i = 0; i < n; ++i) forms[i] = std::to_string(i);
    }
  }

  void set(std::size_t a, std::size_t b, double d) {
    const double k = decimal::tie_key(d, precision);
    dist[a * n + b] = dist[b * n + a] = d;
    keys[a * n + b] = keys[b * n + a] = k;
  }
  double d(std::size_t a, std::size_t b) const { return dist[a * n + b]; }
  double key(std::size_t a, std::size_t b) const { return keys[a * n + b]; }

  // Pairs at the smallest tie key, lexicographic by id.
  std::vector<std::pair<std::size_t, std::size_t>> shortest_pairs() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) best = std::min(best, key(active[x], active[y]));
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        if (key(active[x], active[y]) == best) out.emplace_back(active[x], active[y]);
      }
    }
    return out;
  }

  // a < b; the union lives on under id a.
  void merge(std::size_t a, std::size_t b, const MethodSpec& method) {
    const double h = d(a, b);
    std::vector<std::pair<std::size_t, double>> updated;
    for (std::size_t c : active) {
      if (c == a || c == b) continue;
      updated.emplace_back(c, pg_distance(method, sizes[a], sizes[b], sizes[c], h, d(a, c), d(b, c)));
    }
    for (auto [c, v] : updated) set(a, c, v);
    merges.push_back({node[a], node[b], h});
    node[a] = n + merges.size() - 1;
    sizes[a] += sizes[b];
    std::erase(active, b);
    if (!forms.empty()) {
      const auto& fa = forms[a];
      const auto& fb = forms[b];
      forms[a] = "(" + std::min(fa, fb) + "," + std::max(fa, fb) + ")" + hex(h);
    }
  }

  std::string forest_key() const {
    std::vector<std::string> parts;
    parts.reserve(active.size());
    for (std::size_t c : active) parts.push_back(forms[c]);
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += p + ";";
    return out;
  }

  ValuedTree to_tree(const ProximityMatrix& m, const MethodSpec& method) const {
    ValuedTree tree(m.labels());
    for (const auto& merge : merges) tree.add_node({merge.a, merge.b}, merge.height, merge.height);
    tree.precision = m.precision();
    tree.method = method;
    return tree;
  }
};

void check_nonempty(const ProximityMatrix& m) {
  if (m.size() == 0) throw Error(ErrorCode::empty_input, "no individuals to cluster");
}

}  // namespace

ClusterState::ClusterState(const ProximityMatrix& m) : precision_(m.precision()) {
  active_.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) active_.push_back({i, {i}});
  distances_.assign(m.values().begin(), m.values().end());
  keys_.reserve(distances_.size());
  for (double d : distances_) keys_.push_back(decimal::tie_key(d, precision_));
}

ClusterState::ClusterState(std::vector<ClusterRecord> active, std::vector<double> distances,
                           std::optional<int> precision)
    : active_(std::move(active)), distances_(std::move(distances)), precision_(precision) {
  const std::size_t n = active_.size();
  if (distances_.size() != (n < 2 ? 0 : n * (n - 1) / 2)) {
    throw Error(ErrorCode::invalid_argument, "cluster state distance count mismatch");
  }
  keys_.reserve(distances_.size());
  for (double d : distances_) keys_.push_back(decimal::tie_key(d, precision_));
}

double ClusterState::shortest() const {
  if (distances_.empty()) throw Error(ErrorCode::invalid_argument, "fewer than two clusters");
  // Rounding is monotone, so the smallest distance also holds the smallest key.
  return *std::min_element(distances_.begin(), distances_.end());
}

std::vector<std::vector<std::size_t>> tie_groups(const ClusterState& state, double d_lower) {
  const double target = decimal::tie_key(d_lower, state.precision());
  UnionFind sets(state.size());
  for (std::size_t a = 0; a < state.size(); ++a) {
    for (std::size_t b = a + 1; b < state.size(); ++b) {
      if (state.key(a, b) == target) sets.unite(a, b);
    }
  }
  return sets.groups();
}

std::string_view to_string(ReversalReport::Kind kind) noexcept {
  return kind == ReversalReport::Kind::interval_overlap ? "interval-overlap" : "fusion-inversion";
}

bool has_natural_fusion(Method method) noexcept {
  switch (method) {
    case Method::single:
    case Method::complete:
    case Method::unweighted_average:
    case Method::weighted_average:
      return true;
    default:
      return false;
  }
}

double fusion_value(const GroupView& group, const MethodSpec& method, FusionPolicy policy) {
  const std::size_t p = group.sizes.size();
  if (p < 2) throw Error(ErrorCode::invalid_argument, "fusion value of a group with one cluster");
  if (group.within.rows() != p || group.within.cols() != p) {
    throw Error(ErrorCode::missing_distance, "group distance block has the wrong shape");
  }
  switch (policy) {
    case FusionPolicy::interval:
      throw Error(ErrorCode::policy_unavailable, "the interval policy has no fusion value");
    case FusionPolicy::shortest:
      return group.d_lower;
    case FusionPolicy::natural:
      break;
  }
  if (!has_natural_fusion(method.kind)) return group.d_lower;
  if (p == 2) return group.within(0, 1);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double weighted = 0.0;
  double weight = 0.0;
  double plain = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t k = i + 1; k < p; ++k) {
      const double d = group.within(i, k);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      const double w = static_cast<double>(group.sizes[i]) * static_cast<double>(group.sizes[k]);
      weighted += w * d;
      weight += w;
      plain += d;
      ++pairs;
    }
  }
  double value = 0.0;
  switch (method.kind) {
    case Method::single: return lo;
    case Method::complete: return hi;
    case Method::unweighted_average: value = weighted / weight; break;
    default: value = plain / static_cast<double>(pairs); break;
  }
  return std::clamp(value, lo, hi);
}

ClusteringResult cluster_variable_group(const ProximityMatrix& m, const MethodSpec& method,
                                        FusionPolicy policy) {
  method.validate();
  check_nonempty(m);
  const std::size_t n = m.size();

  // Work in label order so the arithmetic, and therefore every tie decision,
  // is the same whatever order the rows came in.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return m.labels()[a] < m.labels()[b]; });
  const ProximityMatrix work = m.permuted(order);

  ClusteringResult result;
  result.tree = MultivaluedTree(m.labels());
  result.tree.precision = m.precision();
  result.tree.method = method;
  result.tree.policy = policy;
  for (auto [i, j] : m.zero_pairs()) {
    result.warnings.push_back("individuals '" + m.labels()[i] + "' and '" + m.labels()[j] +
                              "' are at distance zero; their merge sits at height 0");
  }
  if (policy == FusionPolicy::natural && !has_natural_fusion(method.kind)) {
    result.warnings.push_back("no natural fusion value for " + std::string(to_string(method.kind)) +
                              "; using the shortest distance");
  }

  std::vector<ClusterRecord> records;
  records.reserve(n);
  for (std::size_t r = 0; r < n; ++r) records.push_back({order[r], {order[r]}});
  ClusterState state(std::move(records), std::vector<double>(work.values().begin(), work.values().end()),
                     m.precision());

  std::size_t iteration = 0;
  while (state.size() > 1) {
    IterationRecord rec;
    rec.iteration = ++iteration;
    rec.d_lower = state.shortest();
    const auto groups = tie_groups(state, rec.d_lower);

    std::vector<ClusterRecord> next;
    next.reserve(groups.size());
    for (const auto& g : groups) {
      std::vector<std::size_t> nodes;
      for (std::size_t a : g) nodes.push_back(state.cluster(a).node);
      rec.groups.push_back(nodes);
      if (g.size() == 1) {
        next.push_back(state.cluster(g.front()));
        continue;
      }

      GroupView view{{}, DistanceBlock(g.size(), g.size()), 0.0};
      double d_min = std::numeric_limits<double>::infinity();
      double d_max = -d_min;
      std::vector<const ClusterRecord*> parts;
      for (std::size_t x = 0; x < g.size(); ++x) {
        parts.push_back(&state.cluster(g[x]));
        view.sizes.push_back(state.cluster(g[x]).size());
        for (std::size_t y = x + 1; y < g.size(); ++y) {
          const double d = state.distance(g[x], g[y]);
          view.within(x, y) = view.within(y, x) = d;
          d_min = std::min(d_min, d);
          d_max = std::max(d_max, d);
        }
      }
      view.d_lower = d_min;
      std::optional<double> fusion;
      if (policy != FusionPolicy::interval) fusion = fusion_value(view, method, policy);

      MergeRecord merge;
      merge.members = merged_members(parts);
      merge.node = result.tree.add_node(nodes, d_min, d_max, fusion);
      merge.children = result.tree.node(merge.node).children;
      merge.h_lower = d_min;
      merge.h_upper = d_max;
      merge.fusion = fusion;
      rec.merges.push_back(merge);
      next.push_back({merge.node, merge.members});
    }

    const std::size_t k = groups.size();
    std::vector<double> distances(k < 2 ? 0 : k * (k - 1) / 2);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        const auto& ga = groups[a];
        const auto& gb = groups[b];
        double d = 0.0;
        if (ga.size() == 1 && gb.size() == 1) {
          d = state.distance(ga.front(), gb.front());
        } else {
          std::vector<std::size_t> si;
          std::vector<std::size_t> sj;
          for (std::size_t x : ga) si.push_back(state.cluster(x).size());
          for (std::size_t y : gb) sj.push_back(state.cluster(y).size());
          BlockView blocks(std::move(si), std::move(sj));
          for (std::size_t x = 0; x < ga.size(); ++x) {
            for (std::size_t y = x + 1; y < ga.size(); ++y) {
              blocks.within_i(x, y) = state.distance(ga[x], ga[y]);
            }
            for (std::size_t y = 0; y < gb.size(); ++y) {
              blocks.cross(x, y) = state.distance(ga[x], gb[y]);
            }
          }
          for (std::size_t x = 0; x < gb.size(); ++x) {
            for (std::size_t y = x + 1; y < gb.size(); ++y) {
              blocks.within_j(x, y) = state.distance(gb[x], gb[y]);
            }
          }
          d = vg_distance(method, blocks);
        }
        distances[condensed_index(k, a, b)] = d;
      }
    }
    if (!distances.empty()) rec.d_next = *std::min_element(distances.begin(), distances.end());

    result.trace.iterations.push_back(std::move(rec));
    state = ClusterState(std::move(next), std::move(distances), m.precision());
    state.iteration = iteration;
  }

  result.reversals = detect_reversals(result.tree);
  std::set<std::size_t> flagged;
  for (const auto& r : result.reversals) flagged.insert(r.node);
  for (auto& rec : result.trace.iterations) {
    for (auto& merge : rec.merges) {
      merge.reversal = flagged.count(merge.node) > 0;
      rec.reversal = rec.reversal || merge.reversal;
    }
  }
  return result;
}

std::string_view to_string(TieBreak tiebreak) noexcept {
  switch (tiebreak) {
    case TieBreak::first_pair: return "first";
    case TieBreak::last_pair: return "last";
    case TieBreak::seeded_random: return "random";
  }
  return "first";
}

std::optional<TieBreak> parse_tiebreak(std::string_view name) noexcept {
  if (name == "first" || name == "first-pair") return TieBreak::first_pair;
  if (name == "last" || name == "last-pair") return TieBreak::last_pair;
  if (name == "random" || name == "seeded-random") return TieBreak::seeded_random;
  return std::nullopt;
}

ValuedTree cluster_pair_group(const ProximityMatrix& m, const MethodSpec& method,
                              TieBreak tiebreak, std::uint64_t seed) {
  method.validate();
  check_nonempty(m);
  std::mt19937_64 rng(seed);
  PairGroupState state(m, false);
  while (state.active.size() > 1) {
    const auto pairs = state.shortest_pairs();
    std::size_t pick = 0;
    switch (tiebreak) {
      case TieBreak::first_pair: pick = 0; break;
      case TieBreak::last_pair: pick = pairs.size() - 1; break;
      case TieBreak::seeded_random:
        pick = std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng);
        break;
    }
    state.merge(pairs[pick].first, pairs[pick].second, method);
  }
  return state.to_tree(m, method);
}

std::vector<ValuedTree> enumerate_pair_group(const ProximityMatrix& m, const MethodSpec& method,
                                             std::size_t limit) {
  method.validate();
  check_nonempty(m);
  std::map<std::string, ValuedTree> solutions;
  std::set<std::string> visited;

  auto search = [&](auto&& self, const PairGroupState& state) -> void {
    if (state.active.size() == 1) {
      ValuedTree tree = state.to_tree(m, method);
      solutions.emplace(canonical_form(tree), std::move(tree));
      if (solutions.size() > limit) {
        throw Error(ErrorCode::too_many_solutions,
                    "more than " + std::to_string(limit) + " distinct pair-group trees");
      }
      return;
    }
    if (!visited.insert(state.forest_key()).second) return;
    if (visited.size() > kMaxEnumerationStates) {
      throw Error(ErrorCode::too_many_solutions, "tie search space exceeds " +
                                                     std::to_string(kMaxEnumerationStates) +
                                                     " partial states");
    }
    for (const auto& [a, b] : state.shortest_pairs()) {
      PairGroupState child = state;
      child.merge(a, b, method);
      self(self, child);
    }
  };
  search(search, PairGroupState(m, true));

  std::vector<ValuedTree> out;
  out.reserve(solutions.size());
  for (auto& [form, tree] : solutions) out.push_back(std::move(tree));
  return out;
}

std::vector<ReversalReport> detect_reversals(const MultivaluedTree& tree) {
  std::vector<ReversalReport> out;
  const auto parents = tree.parents();
  for (std::size_t k = tree.leaf_count(); k < tree.nodes().size(); ++k) {
    if (parents[k] == k) continue;
    check_pair(out, k, parents[k], tree.node(k), tree.node(parents[k]));
  }
  return out;
}

std::vector<ReversalReport> detect_reversals(const MergeTrace& trace) {
  std::map<std::size_t, const MergeRecord*> by_node;
  std::map<std::size_t, std::size_t> parent_of;
  for (const auto& rec : trace.iterations) {
    for (const auto& merge : rec.merges) {
      by_node[merge.node] = &merge;
      for (std::size_t c : merge.children) parent_of[c] = merge.node;
    }
  }
  std::vector<ReversalReport> out;
  for (const auto& [node, merge] : by_node) {
    const auto up = parent_of.find(node);
    if (up == parent_of.end()) continue;
    check_pair(out, node, up->second, *merge, *by_node.at(up->second));
  }
  return out;
}

}  // namespace mdendro
