#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "wl/core.hpp"

namespace wl {

struct StableColoring {
  int k = 0;
  int n = 0;
  // Row-major over Ω^k; ids are canonical (sorted signatures per round).
  std::vector<Color> colors;
  int rounds = 0;
  int num_colors = 0;
  ColoredDigraph arcs() const;  // k == 2 only
};

// Memory budget in bytes (WL_LAB_MEM_MB, default 1024 MiB).
std::size_t memory_budget();

StableColoring wl_refine(const ColoredDigraph& g, int k);

// One 2-WL round over a pair coloring. Returns new canonical ids.
namespace kernels {
std::vector<Color> pair_round_serial(int n, const std::vector<Color>& c);
std::vector<Color> pair_round_parallel(int n, const std::vector<Color>& c);
}  // namespace kernels

struct RelationMeta {
  int source = -1;  // fiber index
  int target = -1;
  Color transpose = -1;
  int degree = 0;  // out-degree of any source vertex
  int size = 0;
};

class CoherentConfiguration {
 public:
  CoherentConfiguration() = default;
  // g must already be coherent and canonical; throws IntegrityError otherwise.
  explicit CoherentConfiguration(ColoredDigraph g);

  const ColoredDigraph& base() const { return g_; }
  int n() const { return g_.n(); }
  Color at(int u, int v) const { return g_.at(u, v); }
  int rank() const { return static_cast<int>(meta_.size()); }
  const std::vector<std::vector<int>>& fibers() const { return fibers_; }
  int fiber_of(int v) const { return fiber_of_[v]; }
  int fiber_count() const { return static_cast<int>(fibers_.size()); }
  Color fiber_color(int f) const { return g_.at(fibers_[f][0], fibers_[f][0]); }
  const RelationMeta& meta(Color a) const { return meta_[a]; }
  // Basis relations from fiber r to fiber b, ascending ids.
  const std::vector<Color>& relations(int r, int b) const {
    return inter_[static_cast<std::size_t>(r) * fibers_.size() + b];
  }
  bool homogeneous() const { return fibers_.size() <= 1; }

  // c^{AB}_T: number of u with (v,u) in A and (u,w) in B for (v,w) in T.
  int intersection(Color a, Color b, Color t) const;
  const std::map<std::tuple<Color, Color, Color>, int>& intersection_table() const;

  // Induced sub-configuration on a union of fibers, re-canonicalized.
  CoherentConfiguration restrict_to_fibers(const std::vector<int>& fs,
                                           std::vector<int>* vertex_map = nullptr) const;

  bool operator==(const CoherentConfiguration& o) const { return g_ == o.g_; }

 private:
  ColoredDigraph g_;
  std::vector<std::vector<int>> fibers_;
  std::vector<int> fiber_of_;
  std::vector<RelationMeta> meta_;
  std::vector<std::vector<Color>> inter_;
  mutable std::optional<std::map<std::tuple<Color, Color, Color>, int>> table_;
};

CoherentConfiguration coherent_closure(const ColoredDigraph& g);
// Closure of an arbitrary (possibly incoherent) restriction to a vertex subset.
CoherentConfiguration closure_on(const ColoredDigraph& g, const std::vector<int>& vs);

bool distinguishes(const ColoredDigraph& g, const ColoredDigraph& h, int k);

// Histogram of the stable k-WL coloring of each graph, refined in lockstep with
// shared color ids. Two graphs in the batch are k-WL equivalent iff their
// histograms are equal. k ∈ {1, 2}.
std::vector<std::vector<std::pair<Color, int>>> batch_histograms(
    const std::vector<ColoredDigraph>& gs, int k);

CoherentConfiguration individualize(const CoherentConfiguration& c, const std::vector<int>& vs);

struct CoherenceWitness {
  Color a = -1, b = -1, t = -1;
  std::pair<int, int> arc1, arc2;
  int count1 = 0, count2 = 0;
};

struct CoherenceReport {
  bool cc1 = false, cc2 = false, cc3 = false;
  std::vector<Color> cc1_violations, cc2_violations;
  std::optional<CoherenceWitness> witness;
  std::map<std::tuple<Color, Color, Color>, int> table;
  bool ok() const { return cc1 && cc2 && cc3; }
};

CoherenceReport verify_coherence(const ColoredDigraph& g);
CoherenceReport verify_coherence(int n, const std::vector<Color>& colors);

}  // namespace wl
