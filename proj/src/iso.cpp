#include "wl/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace wl {

namespace {

using Key = std::vector<std::uint64_t>;

class Matcher {
 public:
  Matcher(const ColoredDigraph& g, const ColoredDigraph& h) : g_(g), h_(h), n_(g.n()) {}

  // Joint refinement. Cell ids are ranks of signatures over both sides, so
  // corresponding cells get equal ids. Returns false on a size mismatch.
  bool refine(std::vector<int>& pg, std::vector<int>& ph) const {
    int cnt = distinct(pg);
    if (!same_hist(pg, ph)) return false;
    for (;;) {
      std::vector<Key> kg(n_), kh(n_);
      for (int v = 0; v < n_; ++v) {
        kg[v] = key(g_, pg, v);
        kh[v] = key(h_, ph, v);
      }
      std::map<Key, int> ids;
      for (auto& k : kg) ids.emplace(k, 0);
      for (auto& k : kh) ids.emplace(k, 0);
      int next = 0;
      for (auto& [k, id] : ids) id = next++;
      for (int v = 0; v < n_; ++v) {
        pg[v] = ids[kg[v]];
        ph[v] = ids[kh[v]];
      }
      if (!same_hist(pg, ph)) return false;
      int c2 = distinct(pg);
      if (c2 == cnt) return true;
      cnt = c2;
    }
  }

  // DFS over h-side choices; g-side always takes the smallest vertex of the
  // target cell. Returns a leaf mapping g → h that is an isomorphism.
  std::optional<Perm> dfs(std::vector<int> pg, std::vector<int> ph) const {
    if (!refine(pg, ph)) return std::nullopt;
    int t = target_cell(pg);
    if (t < 0) {
      Perm p(n_);
      std::vector<int> where(n_);
      for (int w = 0; w < n_; ++w) where[ph[w]] = w;
      for (int v = 0; v < n_; ++v) p[v] = where[pg[v]];
      if (maps(p)) return p;
      return std::nullopt;
    }
    int x = first_in(pg, t);
    for (int y = 0; y < n_; ++y) {
      if (ph[y] != t) continue;
      auto r = dfs(individualized(pg, x), individualized(ph, y));
      if (r) return r;
    }
    return std::nullopt;
  }

  bool maps(const Perm& p) const {
    for (int u = 0; u < n_; ++u)
      for (int v = 0; v < n_; ++v)
        if (g_.at(u, v) != h_.at(p[u], p[v])) return false;
    return true;
  }

  static int target_cell(const std::vector<int>& p) {
    std::map<int, int> size;
    for (int c : p) ++size[c];
    int best = -1, bs = 0;
    for (auto [c, s] : size)
      if (s > 1 && (best < 0 || s < bs)) best = c, bs = s;
    return best;
  }

  static int first_in(const std::vector<int>& p, int cell) {
    for (std::size_t v = 0; v < p.size(); ++v)
      if (p[v] == cell) return static_cast<int>(v);
    return -1;
  }

  static std::vector<int> individualized(const std::vector<int>& p, int x) {
    std::vector<int> q(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) q[v] = 2 * p[v] + (static_cast<int>(v) == x ? 0 : 1);
    return q;
  }

 private:
  Key key(const ColoredDigraph& g, const std::vector<int>& p, int v) const {
    Key k;
    k.reserve(n_);
    k.push_back(static_cast<std::uint64_t>(p[v]));
    std::size_t mark = k.size();
    for (int w = 0; w < n_; ++w) {
      if (w == v) continue;
      k.push_back((static_cast<std::uint64_t>(p[w]) << 44) |
                  (static_cast<std::uint64_t>(g.at(v, w)) << 22) | static_cast<std::uint64_t>(g.at(w, v)));
    }
    std::sort(k.begin() + static_cast<long>(mark), k.end());
    return k;
  }

  static int distinct(const std::vector<int>& p) { return static_cast<int>(std::set<int>(p.begin(), p.end()).size()); }

  static bool same_hist(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> x(a), y(b);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }

  const ColoredDigraph& g_;
  const ColoredDigraph& h_;
  int n_;
};

void check_sizes(const ColoredDigraph& g) {
  if (g.color_bound() >= (1 << 22)) throw ResourceError("too many colors for the isomorphism search");
}

std::vector<int> loop_cells(const ColoredDigraph& g) {
  std::vector<int> p(g.n());
  for (int v = 0; v < g.n(); ++v) p[v] = g.at(v, v);
  return p;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::optional<Perm> find_isomorphism(const ColoredDigraph& g, const ColoredDigraph& h,
                                     const std::vector<int>& cells_g, const std::vector<int>& cells_h) {
  if (g.n() != h.n()) return std::nullopt;
  check_sizes(g);
  check_sizes(h);
  Matcher m(g, h);
  return m.dfs(cells_g, cells_h);
}

std::optional<Perm> find_isomorphism(const ColoredDigraph& g, const ColoredDigraph& h) {
  if (g.n() != h.n()) return std::nullopt;
  return find_isomorphism(g, h, loop_cells(g), loop_cells(h));
}

bool isomorphic(const ColoredDigraph& g, const ColoredDigraph& h) { return find_isomorphism(g, h).has_value(); }

bool isomorphic(const SimpleGraph& g, const SimpleGraph& h) {
  if (g.n() != h.n() || g.edge_count() != h.edge_count()) return false;
  // Fixed ids: loop 0, edge 1, non-edge 2.
  auto enc = [](const SimpleGraph& s) {
    int n = s.n();
    std::vector<Color> m(static_cast<std::size_t>(n) * n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) m[static_cast<std::size_t>(u) * n + v] = u == v ? 0 : (s.adj(u, v) ? 1 : 2);
    return ColoredDigraph(n, std::move(m));
  };
  return isomorphic(enc(g), enc(h));
}

bool is_automorphism(const ColoredDigraph& g, const Perm& p) {
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v)
      if (g.at(u, v) != g.at(p[u], p[v])) return false;
  return true;
}

AutGroup automorphism_group(const ColoredDigraph& g, const std::vector<int>& cells) {
  check_sizes(g);
  int n = g.n();
  Matcher m(g, g);
  AutGroup out;
  // First path.
  std::vector<std::vector<int>> parts;
  std::vector<int> p = cells, q = cells;
  if (!m.refine(p, q)) throw IntegrityError("refinement mismatch on identical inputs");
  for (;;) {
    parts.push_back(p);
    int t = Matcher::target_cell(p);
    if (t < 0) break;
    int x = Matcher::first_in(p, t);
    out.base.push_back(x);
    p = Matcher::individualized(p, x);
    q = p;
    m.refine(p, q);
  }
  int depth = static_cast<int>(out.base.size());
  out.orbit_sizes.assign(depth, 1);
  UnionFind uf(n);
  for (int i = depth - 1; i >= 0; --i) {
    const auto& pi = parts[i];
    int x = out.base[i];
    int t = pi[x];
    for (int y = 0; y < n; ++y) {
      if (pi[y] != t || y == x || uf.find(y) == uf.find(x)) continue;
      auto r = m.dfs(Matcher::individualized(pi, x), Matcher::individualized(pi, y));
      if (!r) continue;
      out.generators.push_back(*r);
      for (int v = 0; v < n; ++v) uf.unite(v, (*r)[v]);
    }
    int sz = 0;
    for (int v = 0; v < n; ++v) sz += uf.find(v) == uf.find(x);
    out.orbit_sizes[i] = sz;
  }
  for (int s : out.orbit_sizes) {
    if (out.order > UINT64_MAX / static_cast<std::uint64_t>(s)) out.order_overflow = true;
    out.order *= static_cast<std::uint64_t>(s);
  }
  return out;
}

AutGroup automorphism_group(const ColoredDigraph& g) { return automorphism_group(g, loop_cells(g)); }

std::vector<Perm> group_elements(int n, const std::vector<Perm>& gens, std::size_t cap) {
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::vector<Perm> out{id};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto& s : gens) {
      Perm c(n);
      for (int v = 0; v < n; ++v) c[v] = s[out[i][v]];
      if (seen.insert(c).second) {
        out.push_back(c);
        if (out.size() > cap) throw ResourceError("group larger than enumeration cap");
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> orbit_representatives(int n, const std::vector<Perm>& gens) {
  UnionFind uf(n);
  for (auto& s : gens)
    for (int v = 0; v < n; ++v) uf.unite(v, s[v]);
  std::vector<int> r(n);
  for (int v = 0; v < n; ++v) r[v] = uf.find(v);
  return r;
}

std::vector<int> refine_cells(const ColoredDigraph& g, std::vector<int> cells) {
  Matcher m(g, g);
  auto q = cells;
  m.refine(cells, q);
  return cells;
}

}  // namespace wl
