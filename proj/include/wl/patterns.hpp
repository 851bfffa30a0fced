#pragma once

#include <string>
#include <vector>

#include "wl/refine.hpp"

namespace wl {

// One group G^i of an interspace pattern: the undirected relation class A^i of
// c[S] and the relations U^i_j whose neighborhoods are d-cliques in ul(S,A^i).
struct PatternGroup {
  std::vector<Color> a;      // A^i and its transpose (one entry if symmetric)
  std::string graph;         // type of ul(S,A^i), e.g. "K6", "3K2", "K{2,2,2}"
  std::vector<Color> u;      // U^i_j, j = 1..t_i
  std::vector<int> d;        // clique sizes
  std::vector<std::string> mark;  // "" for d = 2; "†", "‡" or "?" for d = 3
  std::vector<int> classes;       // |Part^i_j(L,S)|
  int edges = 0, triangles = 0;   // of ul(S,A^i)
};

struct InterspacePattern {
  int l = -1, s = -1;
  std::string name;  // e.g. "(K4,2)", "(C6,2;3K2,2)", "(K{2,2,2},3‡)"
  std::vector<PatternGroup> groups;
  Color omitted = -1;  // the one relation of I[L,S] outside the pattern
  int part_count = 0;  // |Part(L,S)| = |Part^1_1(L,S)|
};

// The 17 pattern names, in the enumeration order of the classification.
const std::vector<std::string>& pattern_names();

// Every pattern whose defining conditions hold for I[L,S], over all choices of
// the omitted relation. Critical inputs give exactly one.
std::vector<std::string> matching_patterns(const CoherentConfiguration& c, int l, int s);

// UnsupportedError unless |S| ∈ {4,6}; ArgumentError if (L,S) is not a quotient
// edge; IntegrityError if no pattern or more than one pattern matches.
InterspacePattern classify_pattern(const CoherentConfiguration& c, int l, int s);

// |Part(L,S)| predicted from the pattern: |A^1| (as undirected edges) for
// d^1_1 = 2, the number x of triangles in G^1 for †, x/2 for ‡.
int predicted_part_count(const InterspacePattern& p);

using VertexPartition = std::vector<std::vector<int>>;  // parts sorted by first vertex

struct EquivalenceClasses {
  int l = -1;
  std::vector<int> small;                          // the fibers of 𝒮
  std::vector<InterspacePattern> patterns;         // per fiber of 𝒮
  std::vector<std::vector<VertexPartition>> part;  // Part^i_j per fiber, in witness order
  std::vector<VertexPartition> per_fiber;          // meet over (i,j) per fiber
  VertexPartition meet;                            // meet over 𝒮
};

// Partition of L by ℓ ~ ℓ' iff ℓU = ℓ'U.
VertexPartition neighborhood_partition(const CoherentConfiguration& c, int l, Color u);
VertexPartition partition_meet(const VertexPartition& a, const VertexPartition& b);

EquivalenceClasses equivalence_classes(const CoherentConfiguration& c, int l, const std::vector<int>& small);

struct PartitionStructure {
  VertexPartition parts;
  CoherentConfiguration config;  // vertex i = parts[i]
  bool coherent = false;
  std::string type;  // type tuple when homogeneous, else the fiber sizes
};

// Configuration on the parts of the meet over 𝒮 whose relations are the level
// sets of (P,P') ↦ (|pU ∩ p'U'|) over all U, U' ∈ I[L,𝒮].
PartitionStructure partition_structure(const CoherentConfiguration& c, int l, const std::vector<int>& small);

// Type of the structure expected for a pattern and fiber type when the table
// of known structures covers it (|Part| ≤ 8); empty otherwise.
std::string expected_structure_type(const std::string& pattern, const std::string& s_type);

// Every part of Part(L,S1) meets every part of Part(L,S2).
bool fully_intersecting(const CoherentConfiguration& c, int s1, int l, int s2);

struct DivisorReport {
  int du = 0, du2 = 0, b_size = 0;
  int common = 0;  // |rU ∩ yU'|, constant over r ∈ R, y ∈ Y
  bool identity = false;
  bool b_prime = false;
};

// For an induced quotient path (R,B,Y), U ∈ I[R,B] and U' ∈ I[Y,B]: checks
// d(U)·d(U') = |B|·|rU ∩ yU'| for all r, y. ArgumentError on a bad path or
// relation; IntegrityError if the intersection size varies or the identity fails.
DivisorReport divisor_check(const CoherentConfiguration& c, int r, int b, int y, Color u, Color u2);

struct EdgeClassification {
  int l = -1, s = -1;
  bool ok = false;
  InterspacePattern pattern;
  std::string structure;
  std::string error;
};

// Classification of every quotient edge (L,S) with |S| ∈ {4,6}, in parallel.
std::vector<EdgeClassification> classify_all(const CoherentConfiguration& c);

}  // namespace wl
