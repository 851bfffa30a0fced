#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wl/core.hpp"

namespace wl {

using Perm = std::vector<int>;

struct AutGroup {
  std::vector<Perm> generators;
  std::vector<int> base;         // first-path vertices
  std::vector<int> orbit_sizes;  // orbit of base[i] in the stabilizer of base[0..i)
  std::uint64_t order = 1;
  bool order_overflow = false;
};

// Isomorphism g → h preserving color ids exactly: g(u,v) = h(p[u],p[v]).
std::optional<Perm> find_isomorphism(const ColoredDigraph& g, const ColoredDigraph& h);
// Same, with prescribed initial cells (matched by id) on both sides.
std::optional<Perm> find_isomorphism(const ColoredDigraph& g, const ColoredDigraph& h,
                                     const std::vector<int>& cells_g, const std::vector<int>& cells_h);
bool isomorphic(const ColoredDigraph& g, const ColoredDigraph& h);
bool isomorphic(const SimpleGraph& g, const SimpleGraph& h);

AutGroup automorphism_group(const ColoredDigraph& g);
AutGroup automorphism_group(const ColoredDigraph& g, const std::vector<int>& cells);
bool is_automorphism(const ColoredDigraph& g, const Perm& p);

// All group elements generated by `gens` on n points; throws ResourceError past cap.
std::vector<Perm> group_elements(int n, const std::vector<Perm>& gens, std::size_t cap = 1u << 20);

// Orbits of the group generated by gens, as a representative per point.
std::vector<int> orbit_representatives(int n, const std::vector<Perm>& gens);

// Equitable refinement of a single graph's vertex coloring; canonical ids.
std::vector<int> refine_cells(const ColoredDigraph& g, std::vector<int> cells);

}  // namespace wl
