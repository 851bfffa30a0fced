#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wl {

using Color = std::int32_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  int line;
  ParseError(int line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line(line) {}
};
struct RangeError : Error { using Error::Error; };
struct ConflictError : Error { using Error::Error; };
struct ArgumentError : Error { using Error::Error; };
struct ResourceError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };
struct IntegrityError : Error { using Error::Error; };

// Complete arc-colored digraph. Loop colors are vertex colors. The constructor
// splits any color used on both loops and non-loop arcs; the arc half gets a
// fresh id one past the current maximum.
class ColoredDigraph {
 public:
  ColoredDigraph() = default;
  ColoredDigraph(int n, std::vector<Color> colors,
                 std::vector<std::string> names = {});

  int n() const { return n_; }
  Color at(int u, int v) const { return c_[static_cast<std::size_t>(u) * n_ + v]; }
  const std::vector<Color>& colors() const { return c_; }
  // One past the largest id in use. Ids may have gaps.
  int color_bound() const { return bound_; }
  int num_colors() const;
  const std::vector<std::string>& names() const { return names_; }
  std::string name(Color c) const;
  bool has_names() const { return !names_.empty(); }

  std::vector<Color> loop_colors() const;
  std::vector<Color> arc_colors() const;
  bool is_loop_color(Color c) const;

  // Equal matrices; names are ignored.
  bool operator==(const ColoredDigraph& o) const { return n_ == o.n_ && c_ == o.c_; }

 private:
  int n_ = 0;
  int bound_ = 0;
  std::vector<Color> c_;
  std::vector<std::string> names_;
};

// Undirected simple graph.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {}
  SimpleGraph(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return n_; }
  bool adj(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v]; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  int degree(int v) const;
  std::vector<int> neighbors(int v) const;
  std::vector<std::pair<int, int>> edges() const;
  int edge_count() const;
  SimpleGraph induced(const std::vector<int>& vs) const;
  bool operator==(const SimpleGraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  int n_ = 0;
  std::vector<std::uint8_t> adj_;
};

// Loop 0, edge 1, non-edge 2; vertex colors shift loop ids when given.
ColoredDigraph to_digraph(const SimpleGraph& g, const std::vector<int>& vertex_colors = {});

ColoredDigraph parse_graph(std::string_view text);
std::string serialize(const ColoredDigraph& g);
// Lines "u v"; an optional leading "n <int>" fixes the vertex count.
SimpleGraph parse_edge_list(std::string_view text);
ColoredDigraph read_graph_file(const std::string& path);

ColoredDigraph canonical_colors(const ColoredDigraph& g);
bool is_canonical(const ColoredDigraph& g);

struct ValidationReport {
  bool cc1 = true;
  bool cc2 = true;
  std::vector<Color> cc1_violations;
  std::vector<Color> cc2_violations;
  bool ok() const { return cc1 && cc2; }
};
ValidationReport validate_partition(const ColoredDigraph& g);
// Raw form; allows matrices the ColoredDigraph constructor would normalize.
ValidationReport validate_partition(int n, const std::vector<Color>& colors);

struct PartitionSignature {
  std::vector<std::pair<Color, int>> classes;  // (canonical id, class size)
  bool joint = false;
  bool operator==(const PartitionSignature& o) const {
    return classes == o.classes && joint == o.joint;
  }
};
PartitionSignature partition_signature(const ColoredDigraph& g);

// Color classes as arc lists, indexed by color id.
std::vector<std::vector<std::pair<int, int>>> color_classes(const ColoredDigraph& g);

// Relabels vertices: result(p[u], p[v]) = g(u, v).
ColoredDigraph permute(const ColoredDigraph& g, const std::vector<int>& p);
ColoredDigraph induced(const ColoredDigraph& g, const std::vector<int>& vs);

}  // namespace wl
