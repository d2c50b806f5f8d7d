#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mdendro/agglomerate.hpp"
#include "mdendro/tree.hpp"

namespace mdendro {

inline constexpr std::string_view kRecordsFormatVersion = "1";

struct RecordsDocument {
  MultivaluedTree tree;
  MergeTrace trace;
  std::vector<std::string> warnings;
};

// JSON document with the labels, method, policy, one record per internal
// node and the full merge trace. Doubles are written in shortest round-trip
// form, so parse_records followed by to_records reproduces the bytes.
std::string to_records(const MultivaluedTree& tree, const MergeTrace& trace,
                       const std::vector<std::string>& warnings = {});

// Throws ParseError on malformed or unsupported documents.
RecordsDocument parse_records(std::string_view text);

}  // namespace mdendro
