#pragma once

#include <string>

#include "mdendro/tree.hpp"

namespace mdendro {

struct SvgOptions {
  int width = 640;
  int row_height = 22;
  int margin = 24;
  int label_width = 80;
};

// Horizontal dendrogram. Each node with h_u > h_l gets one shaded
// rect class="band" spanning its interval over its leaves.
std::string render_svg(const MultivaluedTree& tree, const SvgOptions& options = {});

// ASCII drawing, one line per node. Internal nodes read "[h_l..h_u]".
std::string render_text(const MultivaluedTree& tree);

}  // namespace mdendro
