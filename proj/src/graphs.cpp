#include "wl/graphs.hpp"

#include <algorithm>
#include <numeric>

namespace wl::graphs {

SimpleGraph empty(int n) { return SimpleGraph(n); }

SimpleGraph complete(int n) {
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

SimpleGraph path(int n) {
  SimpleGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

SimpleGraph cycle(int n) {
  SimpleGraph g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

SimpleGraph grid(int rows, int cols) {
  SimpleGraph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  return g;
}

SimpleGraph petersen() {
  SimpleGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

SimpleGraph rook(int m) {
  SimpleGraph g(m * m);
  for (int a = 0; a < m * m; ++a)
    for (int b = a + 1; b < m * m; ++b)
      if ((a / m == b / m) != (a % m == b % m)) g.add_edge(a, b);
  return g;
}

SimpleGraph shrikhande() {
  // Cayley graph on Z4 x Z4 with connection set ±(1,0), ±(0,1), ±(1,1).
  SimpleGraph g(16);
  const int d[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (auto& s : d) {
        int u = x * 4 + y, v = ((x + s[0]) % 4) * 4 + (y + s[1]) % 4;
        g.add_edge(u, v);
      }
  return g;
}

SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b) {
  SimpleGraph g(a.n() + b.n());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  for (auto [u, v] : b.edges()) g.add_edge(a.n() + u, a.n() + v);
  return g;
}

SimpleGraph complement(const SimpleGraph& g) {
  SimpleGraph h(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (!g.adj(u, v)) h.add_edge(u, v);
  return h;
}

SimpleGraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

SimpleGraph random_tree(int n, std::mt19937_64& rng) {
  SimpleGraph g(n);
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    g.add_edge(v, pick(rng));
  }
  return g;
}

SimpleGraph relabel(const SimpleGraph& g, const std::vector<int>& p) {
  SimpleGraph h(g.n());
  for (auto [u, v] : g.edges()) h.add_edge(p[u], p[v]);
  return h;
}

ColoredDigraph random_digraph(int n, int loop_colors, int arc_colors, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> lc(0, loop_colors - 1), ac(0, arc_colors - 1);
  std::vector<Color> m(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      m[static_cast<std::size_t>(u) * n + v] = u == v ? lc(rng) : loop_colors + ac(rng);
  return ColoredDigraph(n, std::move(m));
}

ColoredDigraph random_symmetric_digraph(int n, int loop_colors, int arc_colors, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> lc(0, loop_colors - 1), ac(0, arc_colors - 1);
  std::vector<Color> m(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u) {
    m[static_cast<std::size_t>(u) * n + u] = lc(rng);
    for (int v = u + 1; v < n; ++v)
      m[static_cast<std::size_t>(u) * n + v] = m[static_cast<std::size_t>(v) * n + u] = loop_colors + ac(rng);
  }
  return ColoredDigraph(n, std::move(m));
}

std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

ColoredDigraph directed_cycle(int n) {
  std::vector<Color> m(static_cast<std::size_t>(n) * n, 3);
  for (int v = 0; v < n; ++v) {
    m[static_cast<std::size_t>(v) * n + v] = 0;
    if (n > 1) {
      m[static_cast<std::size_t>(v) * n + (v + 1) % n] = 1;
      m[static_cast<std::size_t>((v + 1) % n) * n + v] = 2;
    }
  }
  return ColoredDigraph(n, std::move(m), {"loop", "fwd", "bwd", "other"});
}

}  // namespace wl::graphs
