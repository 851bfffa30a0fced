#pragma once

#include <random>
#include <vector>

#include "wl/core.hpp"

namespace wl::graphs {

SimpleGraph empty(int n);
SimpleGraph complete(int n);
SimpleGraph path(int n);
SimpleGraph cycle(int n);
SimpleGraph grid(int rows, int cols);
SimpleGraph petersen();
// Line graph of K_{m,m}: (i,j) ~ (i',j') iff exactly one coordinate agrees.
SimpleGraph rook(int m);
SimpleGraph shrikhande();
SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b);
SimpleGraph complement(const SimpleGraph& g);
SimpleGraph random_graph(int n, double p, std::mt19937_64& rng);
SimpleGraph random_tree(int n, std::mt19937_64& rng);
SimpleGraph relabel(const SimpleGraph& g, const std::vector<int>& p);

// Complete digraph with arc colors drawn from `arc_colors` and loop colors
// from `loop_colors` (both ≥ 1).
ColoredDigraph random_digraph(int n, int loop_colors, int arc_colors, std::mt19937_64& rng);
// Same, but arc (u,v) and (v,u) share a color.
ColoredDigraph random_symmetric_digraph(int n, int loop_colors, int arc_colors, std::mt19937_64& rng);

std::vector<int> random_permutation(int n, std::mt19937_64& rng);

// Directed cycle 0→1→…→n−1→0 with colors loop 0, forward 1, backward 2, other 3.
ColoredDigraph directed_cycle(int n);

}  // namespace wl::graphs
