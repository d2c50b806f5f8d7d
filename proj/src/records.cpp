#include "mdendro/records.hpp"

#include <map>
#include <set>

#include "json.hpp"
#include "mdendro/error.hpp"

namespace mdendro {

namespace {

using json = nlohmann::ordered_json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional_number(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json method_json(const std::optional<MethodSpec>& method) {
  if (!method) return nullptr;
  json out;
  out["kind"] = std::string(to_string(method->kind));
  out["alpha"] = optional_number(method->alpha);
  return out;
}

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::parse_error, "records: " + what);
}

}  // namespace

std::string to_records(const MultivaluedTree& tree, const MergeTrace& trace,
                       const std::vector<std::string>& warnings) {
  std::set<std::size_t> reversed;
  for (const auto& r : detect_reversals(tree)) reversed.insert(r.node);

  json doc;
  doc["format_version"] = std::string(kRecordsFormatVersion);
  doc["labels"] = tree.labels();
  doc["method"] = method_json(tree.method);
  doc["policy"] = tree.policy ? json(std::string(to_string(*tree.policy))) : json(nullptr);
  doc["precision"] = tree.precision ? json(*tree.precision) : json(nullptr);

  json merges = json::array();
  for (std::size_t k = tree.leaf_count(); k < tree.nodes().size(); ++k) {
    const TreeNode& node = tree.node(k);
    json m;
    m["node"] = k;
    m["children"] = node.children;
    m["members"] = node.members;
    m["h_lower"] = node.h_lower;
    m["h_upper"] = node.h_upper;
    m["fusion"] = optional_number(node.fusion);
    m["reversal"] = reversed.count(k) > 0;
    merges.push_back(std::move(m));
  }
  doc["merges"] = std::move(merges);

  json iterations = json::array();
  for (const auto& rec : trace.iterations) {
    json it;
    it["iteration"] = rec.iteration;
    it["d_lower"] = rec.d_lower;
    it["groups"] = rec.groups;
    json formed = json::array();
    for (const auto& merge : rec.merges) formed.push_back(merge.node);
    it["merges"] = std::move(formed);
    it["d_next"] = optional_number(rec.d_next);
    it["reversal"] = rec.reversal;
    iterations.push_back(std::move(it));
  }
  doc["trace"] = std::move(iterations);
  doc["warnings"] = warnings;
  return doc.dump(2) + "\n";
}

RecordsDocument parse_records(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    bad(e.what());
  }

  RecordsDocument out;
  try {
    if (doc.at("format_version").get<std::string>() != kRecordsFormatVersion) {
      bad("unsupported format_version " + doc.at("format_version").dump());
    }
    out.tree = MultivaluedTree(doc.at("labels").get<std::vector<std::string>>());
    MultivaluedTree& tree = out.tree;

    if (const auto& m = doc.at("method"); !m.is_null()) {
      const auto kind = parse_method(m.at("kind").get<std::string>());
      if (!kind) bad("unknown method " + m.at("kind").dump());
      tree.method = MethodSpec{*kind, read_optional_number(m.at("alpha"))};
    }
    if (const auto& p = doc.at("policy"); !p.is_null()) {
      tree.policy = parse_fusion_policy(p.get<std::string>());
      if (!tree.policy) bad("unknown policy " + p.dump());
    }
    if (const auto& p = doc.at("precision"); !p.is_null()) tree.precision = p.get<int>();

    for (const auto& m : doc.at("merges")) {
      const auto node = m.at("node").get<std::size_t>();
      if (node != tree.nodes().size()) bad("merge records out of node order");
      tree.add_node(m.at("children").get<std::vector<std::size_t>>(), m.at("h_lower").get<double>(),
                    m.at("h_upper").get<double>(), read_optional_number(m.at("fusion")));
      if (tree.node(node).members != m.at("members").get<std::vector<std::size_t>>()) {
        bad("members of node " + std::to_string(node) + " disagree with its children");
      }
    }

    std::set<std::size_t> reversed;
    for (const auto& r : detect_reversals(tree)) reversed.insert(r.node);
    for (const auto& it : doc.at("trace")) {
      IterationRecord rec;
      rec.iteration = it.at("iteration").get<std::size_t>();
      rec.d_lower = it.at("d_lower").get<double>();
      rec.groups = it.at("groups").get<std::vector<std::vector<std::size_t>>>();
      rec.d_next = read_optional_number(it.at("d_next"));
      rec.reversal = it.at("reversal").get<bool>();
      for (const auto& id : it.at("merges")) {
        const auto k = id.get<std::size_t>();
        if (k < tree.leaf_count() || k >= tree.nodes().size()) bad("trace names unknown node");
        const TreeNode& node = tree.node(k);
        MergeRecord merge;
        merge.node = k;
        merge.children = node.children;
        merge.members = node.members;
        merge.h_lower = node.h_lower;
        merge.h_upper = node.h_upper;
        merge.fusion = node.fusion;
        merge.reversal = reversed.count(k) > 0;
        rec.merges.push_back(std::move(merge));
      }
      out.trace.iterations.push_back(std::move(rec));
    }
    out.warnings = doc.at("warnings").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    bad(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse_error) throw;
    bad(e.what());
  }
  return out;
}

}  // namespace mdendro
