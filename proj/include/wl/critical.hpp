#pragma once

#include <string>
#include <vector>

#include "wl/iso.hpp"
#include "wl/refine.hpp"

namespace wl {

// Fibers of size at most 3.
std::vector<int> detect_tiny(const CoherentConfiguration& c);

struct FiberPair {
  int r = -1, b = -1;
  Color u = -1;  // witnessing relation
  bool operator==(const FiberPair& o) const { return r == o.r && b == o.b; }
};

// Ordered pairs (R,B) on a quotient edge with some U ∈ I[B,R] of degree 1:
// every vertex of B has a unique U-neighbor in R. R is the fiber to remove.
std::vector<FiberPair> detect_star(const CoherentConfiguration& c);

struct AlternatingCycle {
  int r = -1, b = -1;
  Color u = -1;                  // degree-2 relation of I[R,B]
  bool matching_present = false;  // I[R,B] already has a degree-1 relation
  bool matching_emerges = false;  // closure with the antipodal pairs of the
                                  // U-cycles has one
};

// c with the antipodal pairs of the U-cycles of a hit marked, re-closed.
CoherentConfiguration alternating_rewrite(const CoherentConfiguration& c, const AlternatingCycle& hit);

// Pairs R < B on a quotient edge with |R| = |B| odd and a degree-2 relation in
// I[R,B]. Each hit records the matching produced by closure.
std::vector<AlternatingCycle> detect_alternating_cycle(const CoherentConfiguration& c);

struct AutomorphismList {
  std::vector<int> vertices;      // W, ascending; permutations act on indices
  AutGroup group;
  std::vector<Perm> elements;
};

// Every color-preserving automorphism of c[W]. ResourceError if |W| > 20.
AutomorphismList automorphisms(const CoherentConfiguration& c, std::vector<int> w);

struct RemovalCertificate {
  std::vector<int> removed;    // fiber ids of 𝓡
  std::vector<int> neighbors;  // fiber ids of 𝓑
  std::vector<int> r_vertices, b_vertices;
  // Each row: an automorphism of c[𝓑] (on b_vertices indices) and its
  // extension to c[𝓡∪𝓑] (on r_vertices then b_vertices indices).
  std::vector<std::pair<Perm, Perm>> extensions;
};

struct RestorabilityResult {
  bool restorable = false;
  // False when c−𝓡 was over budget and the stronger check (every
  // automorphism of c[𝓑] extends) was run instead.
  bool exact = true;
  RemovalCertificate certificate;
  Perm failing;  // an automorphism of c[𝓑] with no extension, if any
};

// ResourceError if |𝓡 ∪ 𝓑| > 20; ArgumentError on an empty or invalid set.
RestorabilityResult is_restorable(const CoherentConfiguration& c, std::vector<int> fibers);

// Re-checks every row of a certificate against c.
bool check_certificate(const CoherentConfiguration& c, const RemovalCertificate& cert);

bool is_taken_care_of(const CoherentConfiguration& c, int r, int y);

struct ModuleCheck {
  bool violation = false;
  std::vector<std::vector<int>> modules;  // the partition found, if any
  std::vector<int> kept;                  // one vertex per module
};

// Looks for a partition of S into 2 or 3 modules of equal size (fewest parts
// first). ArgumentError if c is homogeneous or S is not small.
ModuleCheck small_module_check(const CoherentConfiguration& c, int s);

enum class StepKind { RemoveTiny, RemoveStarCenter, RemoveRestorable, CycleToStar, ModuleCollapse, Reclosure };
const char* to_string(StepKind k);

struct ReductionStep {
  StepKind kind;
  std::vector<int> fibers;    // fiber ids in the pre-state
  std::vector<int> vertices;  // removed vertices, in input numbering
  Color relation = -1;        // CycleToStar: the degree-2 relation
  std::string tag;
  std::string detail;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  std::vector<std::string> skipped;  // restorability checks over budget
};

struct Reduction {
  CoherentConfiguration result;
  std::vector<int> kept;  // input vertex of each result vertex
  ReductionTrace trace;
};

// Fixpoint of tiny removal, star-center removal, alternating-cycle conversion,
// module collapse and removal of non-dominating restorable singletons or
// adjacent pairs, each followed by re-closure.
Reduction reduce_to_core(const CoherentConfiguration& c);

// Replays the removals of a trace on the input.
CoherentConfiguration replay(const CoherentConfiguration& c, const ReductionTrace& t);

// Least k such that k-WL distinguishes g from every non-isomorphic graph on
// the same vertices. With vertex colors, the candidates are all colorings of
// all graphs with the same color-class sizes. UnsupportedError if n > 7.
int exact_wldim(const SimpleGraph& g, const std::vector<int>& vertex_colors = {});

}  // namespace wl
