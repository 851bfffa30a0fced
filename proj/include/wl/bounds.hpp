#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "wl/critical.hpp"

namespace wl {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);  // "a/b", or "a" when integral
double to_double(const Rational& r);

// Vertices in large fibers, number of large fibers, vertices in small fibers.
struct Parameters {
  long long n_large = 0, k_large = 0, n_small = 0;
  Parameters operator+(const Parameters& o) const { return {n_large + o.n_large, k_large + o.k_large, n_small + o.n_small}; }
  Parameters operator-(const Parameters& o) const { return {n_large - o.n_large, k_large - o.k_large, n_small - o.n_small}; }
  bool operator==(const Parameters& o) const = default;
};

Parameters parameters(const CoherentConfiguration& c);
Parameters parameters(const CoherentConfiguration& c, const std::vector<int>& fibers);
// (3 n_ℓ + n_s − 8 k_ℓ) / 20.
Rational potential(const Parameters& p);

// max{−2/5, −3⌈8a⌉/20}; ArgumentError unless a > 0.
Rational h_function(const Rational& a);

struct ProgressReport {
  std::vector<Rational> t;  // |R_i| / |L| per fiber of the refinement
  Rational before, after, delta, bound;  // bound = Σ h(t_i) + 2/5
  bool holds = false;
};

// ArgumentError unless `before` is a single large fiber and `after` refines it
// on the same vertices.
ProgressReport check_progress_in_large(const CoherentConfiguration& before, const CoherentConfiguration& after);

struct LimitResult {
  std::vector<int> individualized;  // in input numbering, in order
  CoherentConfiguration result;
  long long bound_numerator = 0;   // |S| ≤ bound_numerator / bound_denominator
  long long bound_denominator = 1;
  bool within_bound = false;
};

// Largest non-maximal degree over all ordered fiber pairs, loops included.
int max_nonmaximal_degree(const CoherentConfiguration& c);
// Largest |R ∩ M| over fibers R and max-modules M.
int max_module_fiber_size(const CoherentConfiguration& c);

// Individualizes until every non-maximal degree is ≤ d, halving the degree
// threshold from n down to d. ArgumentError if d < 1.
LimitResult limit_color_valence(const CoherentConfiguration& c, int d);
// Valence limit, then individualizes until every fiber part of every
// max-module has ≤ cap vertices while keeping non-maximal degrees ≤ d.
// With d ≥ cap every vertex is individualized.
LimitResult limit_fiber_size(const CoherentConfiguration& c, int cap, int d);

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> edges;  // tree edges between bag indices
  int width = -1;
  bool exact = false;
};

// Exact treewidth by branch and bound over elimination orders when
// n ≤ exact_limit, else a min-fill upper bound flagged non-exact.
TreeDecomposition treewidth(const SimpleGraph& g, int exact_limit = 15);
TreeDecomposition decomposition_from_order(const SimpleGraph& g, const std::vector<int>& order);
// Cover, edge and connectivity axioms, and that the bags form a tree.
bool verify_decomposition(const SimpleGraph& g, const TreeDecomposition& td);

struct TwBound {
  int t = 0;        // largest fiber size
  int tw = 0;       // treewidth of the quotient graph
  int k = 0;        // t · tw, the bound as stated
  int sound_k = 0;  // t · (tw + 1) − 1, the width of the blown-up decomposition
  bool exact = false;
  TreeDecomposition decomposition;
};

// ArgumentError if t > 0 and some fiber exceeds t.
TwBound tw_dimension_bound(const CoherentConfiguration& c, int t = 0);

struct LocalReduction {
  std::string rule;
  bool applied = false;
  std::string miss;  // why the rule did not apply
  std::vector<int> fibers;          // matched fibers (e.g. L, S)
  std::vector<int> individualized;  // vertices
  bool hypotheses_verified = false;  // false when a detector is partial
  std::string note;
  Rational claimed;          // claimed change of τ
  Rational delta;            // τ after individualization and closure minus τ before
  Rational delta_reduced;    // same, after reduce_to_core
  bool claim_holds = false;  // delta ≤ claimed
  CoherentConfiguration after, reduced;
};

const std::vector<std::string>& local_reduction_rules();
// ArgumentError on an unknown rule id; a miss is reported in the result.
LocalReduction apply_local_reduction(const CoherentConfiguration& c, const std::string& rule);

struct PropertyCheck {
  int id = 0;
  bool ok = true;
  std::string detail;
};

struct ReducedReport {
  std::vector<PropertyCheck> properties;  // ids 1..7
  bool ok() const;
};

// Property 1 is the reduction fixpoint (reduce_to_core changes nothing); the
// others are evaluated exactly.
ReducedReport is_t_reduced(const CoherentConfiguration& c, int t);

struct CFIGraph {
  SimpleGraph graph;
  std::vector<int> origin;  // base vertex of each gadget vertex
};

// Even-subset gadgets of order 2^{deg−1}; twisted edges are wired crossed.
// ArgumentError if the base is disconnected; UnsupportedError on a vertex of
// degree below 2.
CFIGraph cfi(const SimpleGraph& base, const std::vector<std::pair<int, int>>& twist = {});

struct CFICheck {
  bool distinguished = false;
  int k = 0;
  int tw = 0;
  bool tw_exact = false;
  bool consistent = true;  // not distinguished whenever k < tw
};

// Untwisted vs one twisted edge at k-WL. ResourceError for k > 3.
CFICheck cfi_lower_bound_check(const SimpleGraph& base, int k);

struct CertificateLink {
  int individualized = 0;
  std::vector<int> vertices;  // in input numbering
  std::string tag;
  int sub_n = 0, sub_fibers = 0;
};

struct BoundCertificate {
  std::vector<CertificateLink> chain;
  std::string terminal_kind;  // "exact", "treewidth", "components", "empty"
  int terminal = 0;
  int total = 0;  // Σ ℓ_i + max(2, terminal)
  bool conditional = true;
  std::string note;
  std::vector<BoundCertificate> components;
};

BoundCertificate upper_bound_certificate(const CoherentConfiguration& c);
// Uses the exact oracle when n ≤ 7, else the configuration route on the closure.
BoundCertificate upper_bound_certificate(const SimpleGraph& g);
// Recomputes the arithmetic of a certificate.
bool check_certificate_total(const BoundCertificate& b);

}  // namespace wl
