#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wl/refine.hpp"

namespace wl {

// 0/1 relation on n vertices. When `left` ≥ 0 the relation is bipartite: arcs
// run from the first `left` vertices to the remaining ones.
struct RelationGraph {
  int n = 0;
  int left = -1;
  std::vector<std::uint8_t> adj;

  RelationGraph() = default;
  RelationGraph(int n, int left = -1) : n(n), left(left), adj(static_cast<std::size_t>(n) * n, 0) {}
  bool arc(int u, int v) const { return adj[static_cast<std::size_t>(u) * n + v]; }
  void set(int u, int v, bool x = true) { adj[static_cast<std::size_t>(u) * n + v] = x; }
  bool bipartite() const { return left >= 0; }
  int arc_count() const;
  bool symmetric() const;
};

RelationGraph relation_graph(const SimpleGraph& g);
// Constituent of basis relation a: the digraph on its fiber, or the bipartite
// graph source fiber → target fiber.
RelationGraph relation_graph(const CoherentConfiguration& c, Color a);

enum class ConstituentKind {
  Complete,
  Cycle,
  DirectedCycle,
  DisjointCliques,
  DisjointCycles,
  DisjointDirectedCycles,
  Multipartite,
  DirectedCycleBlowup,
  PaleyTournament,
  Rook,
  BicliqueMinusMatching,
  Edgeless,
  FullBipartite,
  Matching,
  DisjointBicliques,
  AlternatingCycle,
  FanoIncidence,
  K4Incidence,
  Complement,
  Other,
};

struct ConstituentType {
  ConstituentKind kind = ConstituentKind::Other;
  std::string name;  // e.g. "C5>", "2K{2,2}", "I(F)", "RxB-I(F)", "other:3fa2..."
  bool operator==(const ConstituentType& o) const { return name == o.name; }
  bool operator<(const ConstituentType& o) const { return name < o.name; }
};

// Unique template tag by isomorphism against generated templates; n ≤ 64.
ConstituentType recognize_constituent(const RelationGraph& g);

using TypeTuple = std::vector<std::string>;
std::string to_string(const TypeTuple& t);

// One entry per transpose pair of non-loop relations inside fiber s, sorted;
// (K1) for a singleton fiber. Any fiber size.
TypeTuple type_tuple(const CoherentConfiguration& c, int s);
// Same with the census bound |S| ≤ 7 (UnsupportedError beyond).
TypeTuple cc_type(const CoherentConfiguration& c, int s);
// Constituents of the relations in I[R,B] (R → B orientation), sorted.
TypeTuple interspace_type(const CoherentConfiguration& c, int r, int b);

// Isomorphism of configurations up to renaming of colors; exhaustive search,
// n ≤ 12.
bool configurations_isomorphic(const CoherentConfiguration& a, const CoherentConfiguration& b);

// Every coherent configuration whose fibers are consecutive blocks of the
// given sizes, up to a symmetry reduction on the first row. Row-by-row
// backtracking with transposition closure, regular valencies, and exact
// intersection-number checks on every pair of completed rows. Labelled
// duplicates are reported; callers dedup.
void for_each_configuration(const std::vector<int>& sizes,
                            const std::function<void(const std::vector<Color>&)>& emit);

struct CensusEntry {
  int order = 0;
  TypeTuple type;
  CoherentConfiguration representative;
};

// All homogeneous coherent configurations of order n ≤ 7 up to isomorphism.
std::vector<CensusEntry> enumerate_homogeneous(int n);

struct InterspaceEntry {
  TypeTuple type;
  CoherentConfiguration representative;  // two fibers: R (index 0), B (index 1)
};

struct InterspaceCensus {
  int r = 0, b = 0;
  bool exhaustive = false;
  std::vector<InterspaceEntry> entries;
  // Types found by exhaustive search but excluded by the star criterion
  // (some relation of degree 1 in either direction).
  std::vector<TypeTuple> excluded;
};

// Non-homogeneous interspace types between fibers of sizes 4 ≤ r ≤ b ≤ 7 that
// can occur in a critical configuration. (4,4) is always exhaustive; other
// sizes are exhaustive only on request.
InterspaceCensus enumerate_small_interspaces(int r, int b, bool exhaustive = false);

struct Implication {
  int rule = 0;
  std::string premise;
  std::string conclusion;
  bool fired = false;
  bool holds = true;
};
struct ImplicationReport {
  int r = -1, b = -1;  // after orienting |R| ≤ |B|
  std::vector<Implication> items;
  bool ok() const;
};
// Constituent implications for a quotient edge between small fibers.
ImplicationReport interspace_implications(const CoherentConfiguration& c, int r, int b);

struct PatternInstance {
  CoherentConfiguration c;
  int l = -1, s = -1;  // fiber ids; for interspace cells, l = B and s = R
  std::string pattern;
  std::string s_type;
};

// Test-instance factory. `spec` is an interspace pattern name, e.g. "(K4,2)",
// "(K6,3‡)", "(C6,2;3K2,2)", or a small-interspace cell type such as
// "(C8,C8)" ("(7,7)" names the Fano cell). For patterns, L consists of
// `multiplicity` copies of each neighborhood in the orbit of a seed under a
// subgroup of Aut(c[S]); `s_type` optionally picks among the fiber types
// available for the pattern.
PatternInstance build_pattern_instance(const std::string& spec, int multiplicity = 1, const std::string& s_type = "");
std::vector<std::string> supported_pattern_specs();

// Adds a fiber of |blocks| vertices to c, vertex i joined to the vertices of
// blocks[i] (all in one fiber), and re-closes.
CoherentConfiguration attach_pendant(const CoherentConfiguration& c, const std::vector<std::vector<int>>& blocks);

// The factory instance with a pendant pair on L, one vertex per side of the
// twin matching of L, so that {S} is no longer dominating. UnsupportedError
// if L has no twin matching or the closure does not keep L and S intact.
PatternInstance nondominating_instance(const std::string& spec, int multiplicity = 2);

}  // namespace wl
