#include "wl/core.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace wl {

ColoredDigraph::ColoredDigraph(int n, std::vector<Color> colors, std::vector<std::string> names)
    : n_(n), c_(std::move(colors)), names_(std::move(names)) {
  if (n < 0) throw ArgumentError("negative vertex count");
  if (c_.size() != static_cast<std::size_t>(n) * n)
    throw ArgumentError("color matrix has wrong size");
  Color mx = -1;
  for (Color c : c_) {
    if (c < 0) throw ArgumentError("negative color id");
    mx = std::max(mx, c);
  }
  bound_ = mx + 1;
  std::vector<char> on_loop(bound_, 0), on_arc(bound_, 0);
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v) (u == v ? on_loop : on_arc)[at(u, v)] = 1;
  std::vector<Color> split(bound_, -1);
  int next = bound_;
  for (Color c = 0; c < bound_; ++c)
    if (on_loop[c] && on_arc[c]) split[c] = next++;
  if (next != bound_) {
    for (int u = 0; u < n_; ++u)
      for (int v = 0; v < n_; ++v) {
        Color& x = c_[static_cast<std::size_t>(u) * n_ + v];
        if (u != v && split[x] >= 0) x = split[x];
      }
    if (!names_.empty()) {
      names_.resize(next);
      for (Color c = 0; c < bound_; ++c)
        if (split[c] >= 0) names_[split[c]] = names_[c] + "~arc";
    }
    bound_ = next;
  }
  if (!names_.empty()) names_.resize(bound_);
}

int ColoredDigraph::num_colors() const {
  std::vector<char> seen(bound_, 0);
  for (Color c : c_) seen[c] = 1;
  return static_cast<int>(std::count(seen.begin(), seen.end(), 1));
}

std::string ColoredDigraph::name(Color c) const {
  if (c >= 0 && static_cast<std::size_t>(c) < names_.size() && !names_[c].empty())
    return names_[c];
  return "#" + std::to_string(c);
}

std::vector<Color> ColoredDigraph::loop_colors() const {
  std::vector<Color> r;
  for (int v = 0; v < n_; ++v) r.push_back(at(v, v));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::vector<Color> ColoredDigraph::arc_colors() const {
  std::vector<char> seen(bound_, 0);
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (u != v) seen[at(u, v)] = 1;
  std::vector<Color> r;
  for (Color c = 0; c < bound_; ++c)
    if (seen[c]) r.push_back(c);
  return r;
}

bool ColoredDigraph::is_loop_color(Color c) const {
  for (int v = 0; v < n_; ++v)
    if (at(v, v) == c) return true;
  return false;
}

SimpleGraph::SimpleGraph(int n, const std::vector<std::pair<int, int>>& edges) : SimpleGraph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void SimpleGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw RangeError("edge endpoint out of range");
  if (u == v) throw ArgumentError("self-loop in simple graph");
  adj_[static_cast<std::size_t>(u) * n_ + v] = adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
}

void SimpleGraph::remove_edge(int u, int v) {
  adj_[static_cast<std::size_t>(u) * n_ + v] = adj_[static_cast<std::size_t>(v) * n_ + u] = 0;
}

int SimpleGraph::degree(int v) const {
  int d = 0;
  for (int w = 0; w < n_; ++w) d += adj(v, w);
  return d;
}

std::vector<int> SimpleGraph::neighbors(int v) const {
  std::vector<int> r;
  for (int w = 0; w < n_; ++w)
    if (adj(v, w)) r.push_back(w);
  return r;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
  std::vector<std::pair<int, int>> r;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (adj(u, v)) r.emplace_back(u, v);
  return r;
}

int SimpleGraph::edge_count() const {
  int m = 0;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v) m += adj(u, v);
  return m;
}

SimpleGraph SimpleGraph::induced(const std::vector<int>& vs) const {
  SimpleGraph h(static_cast<int>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (adj(vs[i], vs[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
  return h;
}

ColoredDigraph to_digraph(const SimpleGraph& g, const std::vector<int>& vertex_colors) {
  int n = g.n();
  std::vector<int> vc = vertex_colors.empty() ? std::vector<int>(n, 0) : vertex_colors;
  if (static_cast<int>(vc.size()) != n) throw ArgumentError("vertex color count mismatch");
  std::vector<int> loops(vc);
  std::sort(loops.begin(), loops.end());
  loops.erase(std::unique(loops.begin(), loops.end()), loops.end());
  std::vector<std::string> names;
  std::map<int, Color> loop_id;
  for (int c : loops) {
    loop_id[c] = static_cast<Color>(names.size());
    names.push_back("v" + std::to_string(c));
  }
  bool has_edge = false, has_non = false;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) (g.adj(u, v) ? has_edge : has_non) = true;
  Color edge = -1, non = -1;
  if (has_edge) { edge = static_cast<Color>(names.size()); names.push_back("edge"); }
  if (has_non) { non = static_cast<Color>(names.size()); names.push_back("nonarc"); }
  std::vector<Color> m(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      m[static_cast<std::size_t>(u) * n + v] = u == v ? loop_id[vc[u]] : (g.adj(u, v) ? edge : non);
  return ColoredDigraph(n, std::move(m), std::move(names));
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> t;
  std::istringstream is(line);
  std::string w;
  while (is >> w) t.push_back(w);
  return t;
}

long long to_int(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    long long x = std::stoll(s, &pos);
    if (pos != s.size()) throw ParseError(line, "not an integer: " + s);
    return x;
  } catch (const std::logic_error&) {
    throw ParseError(line, "not an integer: " + s);
  }
}

std::string strip_comment(const std::string& line) {
  auto p = line.find('#');
  return p == std::string::npos ? line : line.substr(0, p);
}

}  // namespace

ColoredDigraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0, n = -1;
  std::vector<long long> vcol;
  // Arc entries: value >= 0 for "arc", -1 for "edge".
  std::map<std::pair<int, int>, long long> arcs;
  auto vertex = [&](const std::string& s, int line) {
    long long v = to_int(s, line);
    if (v < 0 || v >= n) throw RangeError("line " + std::to_string(line) + ": vertex " + s + " out of range");
    return static_cast<int>(v);
  };
  auto put = [&](int u, int v, long long c, int line) {
    if (u == v) throw ParseError(line, "arc must join distinct vertices");
    auto [it, fresh] = arcs.emplace(std::make_pair(u, v), c);
    if (!fresh && it->second != c)
      throw ConflictError("line " + std::to_string(line) + ": conflicting color for arc " +
                          std::to_string(u) + " " + std::to_string(v));
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto t = tokenize(strip_comment(raw));
    if (t.empty()) continue;
    if (n < 0) {
      if (t[0] != "n" || t.size() != 2) throw ParseError(lineno, "expected 'n <int>'");
      long long x = to_int(t[1], lineno);
      if (x < 0) throw ParseError(lineno, "negative vertex count");
      n = static_cast<int>(x);
      vcol.assign(n, 0);
      continue;
    }
    if (t[0] == "vcolor" && t.size() == 3) {
      int v = vertex(t[1], lineno);
      long long c = to_int(t[2], lineno);
      if (c < 0) throw ParseError(lineno, "negative color");
      vcol[v] = c;
    } else if (t[0] == "arc" && t.size() == 4) {
      int u = vertex(t[1], lineno), v = vertex(t[2], lineno);
      long long c = to_int(t[3], lineno);
      if (c < 0) throw ParseError(lineno, "negative color");
      put(u, v, c, lineno);
    } else if (t[0] == "edge" && t.size() == 3) {
      int u = vertex(t[1], lineno), v = vertex(t[2], lineno);
      put(u, v, -1, lineno);
      put(v, u, -1, lineno);
    } else {
      throw ParseError(lineno, "malformed line: " + raw);
    }
  }
  if (n < 0) throw ParseError(lineno, "missing 'n <int>' line");

  std::vector<std::string> names;
  std::map<long long, Color> loop_id, arc_id;
  for (long long c : vcol) loop_id[c] = 0;
  for (auto& [c, id] : loop_id) {
    id = static_cast<Color>(names.size());
    names.push_back("v" + std::to_string(c));
  }
  bool has_edge = false;
  for (auto& [uv, c] : arcs) {
    if (c >= 0) arc_id[c] = 0;
    else has_edge = true;
  }
  for (auto& [c, id] : arc_id) {
    id = static_cast<Color>(names.size());
    names.push_back("a" + std::to_string(c));
  }
  Color edge = -1, non = -1;
  if (has_edge) { edge = static_cast<Color>(names.size()); names.push_back("edge"); }
  if (static_cast<long long>(arcs.size()) < static_cast<long long>(n) * (n - 1)) {
    non = static_cast<Color>(names.size());
    names.push_back("nonarc");
  }
  std::vector<Color> m(static_cast<std::size_t>(n) * n, non);
  for (int v = 0; v < n; ++v) m[static_cast<std::size_t>(v) * n + v] = loop_id[vcol[v]];
  for (auto& [uv, c] : arcs)
    m[static_cast<std::size_t>(uv.first) * n + uv.second] = c >= 0 ? arc_id[c] : edge;
  return ColoredDigraph(n, std::move(m), std::move(names));
}

std::string serialize(const ColoredDigraph& g) {
  std::ostringstream os;
  os << "n " << g.n() << '\n';
  for (int v = 0; v < g.n(); ++v)
    if (g.at(v, v) != 0) os << "vcolor " << v << ' ' << g.at(v, v) << '\n';
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v)
      if (u != v) os << "arc " << u << ' ' << v << ' ' << g.at(u, v) << '\n';
  return os.str();
}

SimpleGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0, n = -1;
  std::vector<std::pair<int, int>> es;
  int mx = -1;
  while (std::getline(in, raw)) {
    ++lineno;
    auto t = tokenize(strip_comment(raw));
    if (t.empty()) continue;
    if (t[0] == "n" && t.size() == 2 && n < 0 && es.empty()) {
      n = static_cast<int>(to_int(t[1], lineno));
      continue;
    }
    if (t.size() != 2) throw ParseError(lineno, "expected 'u v'");
    long long u = to_int(t[0], lineno), v = to_int(t[1], lineno);
    if (u < 0 || v < 0 || (n >= 0 && (u >= n || v >= n)))
      throw RangeError("line " + std::to_string(lineno) + ": vertex out of range");
    es.emplace_back(static_cast<int>(u), static_cast<int>(v));
    mx = std::max<int>(mx, static_cast<int>(std::max(u, v)));
  }
  return SimpleGraph(n >= 0 ? n : mx + 1, es);
}

ColoredDigraph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_graph(ss.str());
}

ColoredDigraph canonical_colors(const ColoredDigraph& g) {
  int n = g.n(), b = g.color_bound();
  struct Info { bool loop = false; long long size = 0; long long first = -1; };
  std::vector<Info> info(b);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      auto& i = info[g.at(u, v)];
      if (i.first < 0) i.first = static_cast<long long>(u) * n + v;
      i.loop = (u == v);
      ++i.size;
    }
  std::vector<Color> used;
  for (Color c = 0; c < b; ++c)
    if (info[c].size) used.push_back(c);
  std::sort(used.begin(), used.end(), [&](Color x, Color y) {
    const auto &a = info[x], &c = info[y];
    if (a.loop != c.loop) return a.loop;
    if (a.size != c.size) return a.size < c.size;
    return a.first < c.first;
  });
  std::vector<Color> re(b, -1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < used.size(); ++i) {
    re[used[i]] = static_cast<Color>(i);
    if (g.has_names()) names.push_back(g.names()[used[i]]);
  }
  std::vector<Color> m(g.colors().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = re[g.colors()[i]];
  return ColoredDigraph(n, std::move(m), std::move(names));
}

bool is_canonical(const ColoredDigraph& g) { return canonical_colors(g) == g; }

ValidationReport validate_partition(int n, const std::vector<Color>& colors) {
  ValidationReport r;
  if (colors.empty()) return r;
  Color b = *std::max_element(colors.begin(), colors.end()) + 1;
  auto at = [&](int u, int v) { return colors[static_cast<std::size_t>(u) * n + v]; };
  std::vector<char> on_loop(b, 0), on_arc(b, 0);
  std::vector<long long> size(b, 0);
  std::vector<Color> tr(b, -1);
  std::vector<char> tr_bad(b, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      Color c = at(u, v);
      (u == v ? on_loop : on_arc)[c] = 1;
      ++size[c];
      Color t = at(v, u);
      if (tr[c] < 0) tr[c] = t;
      else if (tr[c] != t) tr_bad[c] = 1;
    }
  for (Color c = 0; c < b; ++c) {
    if (!size[c]) continue;
    if (on_loop[c] && on_arc[c]) r.cc1_violations.push_back(c);
    if (tr_bad[c] || size[tr[c]] != size[c]) r.cc2_violations.push_back(c);
  }
  r.cc1 = r.cc1_violations.empty();
  r.cc2 = r.cc2_violations.empty();
  return r;
}

ValidationReport validate_partition(const ColoredDigraph& g) {
  return validate_partition(g.n(), g.colors());
}

PartitionSignature partition_signature(const ColoredDigraph& g) {
  // Class sizes with loop flag form the relabeling-invariant content.
  auto c = canonical_colors(g);
  std::vector<long long> size(c.color_bound(), 0);
  std::vector<char> loop(c.color_bound(), 0);
  for (int u = 0; u < c.n(); ++u)
    for (int v = 0; v < c.n(); ++v) {
      ++size[c.at(u, v)];
      if (u == v) loop[c.at(u, v)] = 1;
    }
  std::vector<std::pair<int, long long>> cls;
  for (Color x = 0; x < c.color_bound(); ++x) cls.emplace_back(loop[x] ? 0 : 1, size[x]);
  std::sort(cls.begin(), cls.end());
  PartitionSignature s;
  for (std::size_t i = 0; i < cls.size(); ++i)
    s.classes.emplace_back(static_cast<Color>(i), static_cast<int>(cls[i].second));
  return s;
}

std::vector<std::vector<std::pair<int, int>>> color_classes(const ColoredDigraph& g) {
  std::vector<std::vector<std::pair<int, int>>> r(g.color_bound());
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v) r[g.at(u, v)].emplace_back(u, v);
  return r;
}

ColoredDigraph permute(const ColoredDigraph& g, const std::vector<int>& p) {
  int n = g.n();
  std::vector<Color> m(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) m[static_cast<std::size_t>(p[u]) * n + p[v]] = g.at(u, v);
  return ColoredDigraph(n, std::move(m), g.names());
}

ColoredDigraph induced(const ColoredDigraph& g, const std::vector<int>& vs) {
  int k = static_cast<int>(vs.size());
  std::vector<Color> m(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m[static_cast<std::size_t>(i) * k + j] = g.at(vs[i], vs[j]);
  return ColoredDigraph(k, std::move(m), g.names());
}

}  // namespace wl
