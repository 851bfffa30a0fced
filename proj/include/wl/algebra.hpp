#pragma once

#include <optional>
#include <vector>

#include "wl/refine.hpp"

namespace wl {

enum class FiberClass { Tiny, Small, Large };

FiberClass classify_size(int size);
const char* to_string(FiberClass c);

struct Interspace {
  int source = -1, target = -1;
  std::vector<Color> relations;
  std::vector<int> degrees;  // out-degree from the source side
  bool homogeneous = true;
  int d_min = 0;
};

// Throws RangeError on unknown fiber ids.
Interspace interspace(const CoherentConfiguration& c, int r, int b);

struct Constituent {
  std::vector<int> vertices;  // source fiber, then target fiber when different
  // Loop colors 0 (source) and 1 (target, if distinct); arcs of the relation
  // get the next id, every other pair the one after.
  ColoredDigraph graph;
};
Constituent constituent(const CoherentConfiguration& c, Color a);

// Symmetric graph of A ∪ A* on fiber s (A a relation inside s).
SimpleGraph symmetrized(const CoherentConfiguration& c, Color a);

struct QuotientGraph {
  SimpleGraph graph;  // vertices = fiber indices
  std::vector<int> sizes;
  std::vector<int> degree;
  std::vector<FiberClass> size_class;
  std::vector<bool> relevant;
  std::vector<int> large, small;
  SimpleGraph large_subgraph, small_subgraph;  // induced, indexed like `large`/`small`
};
QuotientGraph quotient_graph(const CoherentConfiguration& c);

// Undirected relation classes {A, A*} of c[S], loop included.
std::vector<std::vector<Color>> underlying_undirected(const CoherentConfiguration& c, int s);
int ul_size(const CoherentConfiguration& c, int s);
bool is_relevant(const CoherentConfiguration& c, int s);

// Every arc from outside M into M carries one color per outside vertex.
bool is_module(const CoherentConfiguration& c, const std::vector<int>& m);
// Proper module partition of fiber s with the fewest parts (at least two
// parts, not all singletons); ties broken by the lexicographically smallest
// sorted part list. |S| ≤ 16.
std::optional<std::vector<std::vector<int>>> find_modules(const CoherentConfiguration& c, int s);

CoherentConfiguration direct_sum(const CoherentConfiguration& a, const CoherentConfiguration& b);

// Designated maximal relation per ordered fiber pair: largest relation by
// arc count, smallest id on ties, with the reverse pair using its transpose.
Color maximal_relation(const CoherentConfiguration& c, int r, int b);
// Largest out-degree among non-maximal relations of I[R,B] (0 if none).
int nonmaximal_degree(const CoherentConfiguration& c, int r, int b);
// Components of the union of all non-maximal basis relations.
std::vector<std::vector<int>> max_modules(const CoherentConfiguration& c);

}  // namespace wl
