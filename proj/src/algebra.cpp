#include "wl/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace wl {

FiberClass classify_size(int size) {
  if (size >= 8) return FiberClass::Large;
  if (size >= 4) return FiberClass::Small;
  return FiberClass::Tiny;
}

const char* to_string(FiberClass c) {
  switch (c) {
    case FiberClass::Large: return "large";
    case FiberClass::Small: return "small";
    default: return "tiny";
  }
}

namespace {
void check_fiber(const CoherentConfiguration& c, int f) {
  if (f < 0 || f >= c.fiber_count()) throw RangeError("unknown fiber " + std::to_string(f));
}
}  // namespace

Interspace interspace(const CoherentConfiguration& c, int r, int b) {
  check_fiber(c, r);
  check_fiber(c, b);
  Interspace s;
  s.source = r;
  s.target = b;
  s.relations = c.relations(r, b);
  for (Color a : s.relations) s.degrees.push_back(c.meta(a).degree);
  s.homogeneous = s.relations.size() == 1;
  s.d_min = s.degrees.empty() ? 0 : *std::min_element(s.degrees.begin(), s.degrees.end());
  return s;
}

Constituent constituent(const CoherentConfiguration& c, Color a) {
  const auto& m = c.meta(a);
  Constituent out;
  out.vertices = c.fibers()[m.source];
  bool two = m.source != m.target;
  if (two) out.vertices.insert(out.vertices.end(), c.fibers()[m.target].begin(), c.fibers()[m.target].end());
  int k = static_cast<int>(out.vertices.size());
  Color arc = two ? 2 : 1, other = arc + 1;
  std::vector<Color> mat(static_cast<std::size_t>(k) * k, other);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Color& x = mat[static_cast<std::size_t>(i) * k + j];
      if (i == j) x = (two && c.fiber_of(out.vertices[i]) == m.target) ? 1 : 0;
      else if (c.at(out.vertices[i], out.vertices[j]) == a) x = arc;
    }
  out.graph = ColoredDigraph(k, std::move(mat));
  return out;
}

SimpleGraph symmetrized(const CoherentConfiguration& c, Color a) {
  const auto& m = c.meta(a);
  if (m.source != m.target) throw ArgumentError("relation is not inside one fiber");
  const auto& f = c.fibers()[m.source];
  int k = static_cast<int>(f.size());
  SimpleGraph g(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Color x = c.at(f[i], f[j]);
      if (x == a || x == m.transpose) g.add_edge(i, j);
    }
  return g;
}

QuotientGraph quotient_graph(const CoherentConfiguration& c) {
  int f = c.fiber_count();
  QuotientGraph q;
  q.graph = SimpleGraph(f);
  for (int r = 0; r < f; ++r)
    for (int b = r + 1; b < f; ++b)
      if (c.relations(r, b).size() > 1) q.graph.add_edge(r, b);
  for (int r = 0; r < f; ++r) {
    int s = static_cast<int>(c.fibers()[r].size());
    q.sizes.push_back(s);
    q.degree.push_back(q.graph.degree(r));
    q.size_class.push_back(classify_size(s));
    q.relevant.push_back(is_relevant(c, r));
    if (q.size_class.back() == FiberClass::Large) q.large.push_back(r);
    if (q.size_class.back() == FiberClass::Small) q.small.push_back(r);
  }
  q.large_subgraph = q.graph.induced(q.large);
  q.small_subgraph = q.graph.induced(q.small);
  return q;
}

std::vector<std::vector<Color>> underlying_undirected(const CoherentConfiguration& c, int s) {
  check_fiber(c, s);
  std::vector<std::vector<Color>> out;
  for (Color a : c.relations(s, s)) {
    Color t = c.meta(a).transpose;
    if (t < a) continue;
    out.push_back(t == a ? std::vector<Color>{a} : std::vector<Color>{a, t});
  }
  return out;
}

int ul_size(const CoherentConfiguration& c, int s) { return static_cast<int>(underlying_undirected(c, s).size()); }

bool is_relevant(const CoherentConfiguration& c, int s) {
  int size = static_cast<int>(c.fibers()[s].size());
  return (size == 4 || size == 6) && ul_size(c, s) > 2;
}

bool is_module(const CoherentConfiguration& c, const std::vector<int>& m) {
  if (m.empty()) return true;
  std::vector<char> in(c.n(), 0);
  for (int v : m) in[v] = 1;
  for (int b = 0; b < c.n(); ++b) {
    if (in[b]) continue;
    Color x = c.at(b, m[0]);
    for (int v : m)
      if (c.at(b, v) != x) return false;
  }
  return true;
}

std::optional<std::vector<std::vector<int>>> find_modules(const CoherentConfiguration& c, int s) {
  check_fiber(c, s);
  const auto& f = c.fibers()[s];
  int k = static_cast<int>(f.size());
  if (k > 16) throw ResourceError("module search limited to fibers of size ≤ 16");
  if (k < 2) return std::nullopt;
  std::vector<unsigned> mods;
  unsigned full = (1u << k) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    if (__builtin_popcount(mask) < 2) continue;
    std::vector<int> m;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) m.push_back(f[i]);
    if (is_module(c, m)) mods.push_back(mask);
  }
  if (mods.empty()) return std::nullopt;
  // Largest modules first so good partitions are found early.
  std::sort(mods.begin(), mods.end(), [](unsigned a, unsigned b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  auto as_parts = [&](const std::vector<unsigned>& ms) {
    std::vector<std::vector<int>> parts;
    for (unsigned mask : ms) {
      std::vector<int> p;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) p.push_back(f[i]);
      parts.push_back(p);
    }
    std::sort(parts.begin(), parts.end());
    return parts;
  };
  int best = k;
  std::vector<std::vector<int>> best_parts;
  std::vector<unsigned> cur;
  std::function<void(unsigned)> rec = [&](unsigned covered) {
    if (covered == full) {
      int p = static_cast<int>(cur.size());
      auto parts = as_parts(cur);
      if (p < best || (p == best && parts < best_parts)) best = p, best_parts = parts;
      return;
    }
    if (static_cast<int>(cur.size()) + 1 > best) return;
    int v = __builtin_ctz(~covered);
    for (unsigned m : mods)
      if ((m >> v & 1) && !(m & covered)) {
        cur.push_back(m);
        rec(covered | m);
        cur.pop_back();
      }
    cur.push_back(1u << v);
    rec(covered | (1u << v));
    cur.pop_back();
  };
  rec(0);
  if (best >= k) return std::nullopt;
  return best_parts;
}

CoherentConfiguration direct_sum(const CoherentConfiguration& a, const CoherentConfiguration& b) {
  int na = a.n(), nb = b.n(), n = na + nb;
  Color off = a.base().color_bound();
  Color cross = off + b.base().color_bound();
  int fa = a.fiber_count(), fb = b.fiber_count();
  std::vector<Color> m(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      Color& x = m[static_cast<std::size_t>(u) * n + v];
      if (u < na && v < na) x = a.at(u, v);
      else if (u >= na && v >= na) x = off + b.at(u - na, v - na);
      else if (u < na) x = cross + a.fiber_of(u) * fb + b.fiber_of(v - na);
      else x = cross + fa * fb + b.fiber_of(u - na) * fa + a.fiber_of(v);
    }
  return CoherentConfiguration(ColoredDigraph(n, std::move(m)));
}

Color maximal_relation(const CoherentConfiguration& c, int r, int b) {
  check_fiber(c, r);
  check_fiber(c, b);
  if (r > b) return c.meta(maximal_relation(c, b, r)).transpose;
  Color best = -1;
  for (Color x : c.relations(r, b))
    if (best < 0 || c.meta(x).size > c.meta(best).size) best = x;
  return best;
}

int nonmaximal_degree(const CoherentConfiguration& c, int r, int b) {
  Color mx = maximal_relation(c, r, b);
  int d = 0;
  for (Color x : c.relations(r, b))
    if (x != mx) d = std::max(d, c.meta(x).degree);
  return d;
}

std::vector<std::vector<int>> max_modules(const CoherentConfiguration& c) {
  int n = c.n(), f = c.fiber_count();
  std::vector<Color> mx(static_cast<std::size_t>(f) * f);
  for (int r = 0; r < f; ++r)
    for (int b = 0; b < f; ++b) mx[static_cast<std::size_t>(r) * f + b] = maximal_relation(c, r, b);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (c.at(u, v) != mx[static_cast<std::size_t>(c.fiber_of(u)) * f + c.fiber_of(v)]) {
        int a = find(u), b = find(v);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
      }
  std::vector<std::vector<int>> comps(n);
  for (int v = 0; v < n; ++v) comps[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& x : comps)
    if (!x.empty()) out.push_back(x);
  return out;
}

}  // namespace wl
