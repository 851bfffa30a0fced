#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wl/core.hpp"

namespace wl {

// One representative per isomorphism class of simple graphs on n vertices,
// built by vertex augmentation and deduplicated by canonical form. Cached per
// n; n ≤ 9.
const std::vector<SimpleGraph>& graph_universe(int n);

// Canonical adjacency code (n ≤ 11) and the vertex order realizing it. With
// vertex colors, only color-preserving relabelings are used and classes are
// ordered by color value; compare codes only between equal color-class sizes.
std::pair<std::uint64_t, std::vector<int>> canonical_form(const SimpleGraph& g,
                                                          const std::vector<int>& vertex_colors = {});

// Index in graph_universe(g.n()) of the class containing g.
int universe_index(const SimpleGraph& g);

}  // namespace wl
