#include "wl/universe.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "wl/iso.hpp"

namespace wl {

namespace {

using Cells = std::vector<std::vector<int>>;

struct Canon {
  int n;
  std::uint32_t adj[16];
  std::uint64_t best = ~0ull;
  bool have = false;
  std::vector<int> best_order;

  bool refine(Cells& cells) const {
    for (;;) {
      std::vector<std::uint32_t> mask(cells.size(), 0);
      for (std::size_t i = 0; i < cells.size(); ++i)
        for (int v : cells[i]) mask[i] |= 1u << v;
      Cells next;
      bool split = false;
      for (auto& c : cells) {
        if (c.size() == 1) {
          next.push_back(c);
          continue;
        }
        std::vector<std::pair<std::vector<int>, int>> sig;
        for (int v : c) {
          std::vector<int> s(cells.size());
          for (std::size_t i = 0; i < cells.size(); ++i) s[i] = __builtin_popcount(adj[v] & mask[i]);
          sig.emplace_back(std::move(s), v);
        }
        std::sort(sig.begin(), sig.end());
        std::size_t start = next.size();
        next.push_back({sig[0].second});
        for (std::size_t j = 1; j < sig.size(); ++j) {
          if (sig[j].first != sig[j - 1].first) next.push_back({});
          next.back().push_back(sig[j].second);
        }
        if (next.size() - start > 1) split = true;
      }
      cells = std::move(next);
      if (!split) return true;
    }
  }

  std::uint64_t code(const std::vector<int>& order) const {
    std::uint64_t c = 0;
    int bit = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++bit)
        if (adj[order[i]] >> order[j] & 1) c |= 1ull << (63 - bit);
    return ~c;  // minimizing the complement prefers dense leading rows
  }

  void search(Cells cells) {
    refine(cells);
    int target = -1;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() > 1 && (target < 0 || cells[i].size() < cells[target].size())) target = static_cast<int>(i);
    if (target < 0) {
      std::vector<int> order;
      for (auto& c : cells) order.push_back(c[0]);
      auto k = code(order);
      if (!have || k < best) best = k, best_order = order, have = true;
      return;
    }
    const auto& cell = cells[target];
    std::vector<int> tried;
    for (int v : cell) {
      bool twin = false;
      for (int u : tried)
        if ((adj[u] & ~(1u << v)) == (adj[v] & ~(1u << u))) twin = true;
      if (twin) continue;
      tried.push_back(v);
      Cells next;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (static_cast<int>(i) != target) {
          next.push_back(cells[i]);
          continue;
        }
        next.push_back({v});
        std::vector<int> rest;
        for (int w : cell)
          if (w != v) rest.push_back(w);
        next.push_back(rest);
      }
      search(std::move(next));
    }
  }
};

struct Universe {
  std::vector<SimpleGraph> graphs;
  std::unordered_map<std::uint64_t, int> index;
};

std::mutex mu;
std::map<int, Universe> cache;

SimpleGraph relabeled(const SimpleGraph& g, const std::vector<int>& order) {
  std::vector<int> pos(g.n());
  for (int i = 0; i < g.n(); ++i) pos[order[i]] = i;
  SimpleGraph h(g.n());
  for (auto [a, b] : g.edges()) h.add_edge(pos[a], pos[b]);
  return h;
}

Universe& build(int n) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Universe u;
  auto add = [&](const SimpleGraph& g) {
    auto [code, order] = canonical_form(g);
    if (u.index.emplace(code, static_cast<int>(u.graphs.size())).second) u.graphs.push_back(relabeled(g, order));
  };
  if (n <= 1) {
    add(SimpleGraph(n));
  } else {
    const auto& prev = build(n - 1).graphs;
    for (const auto& g : prev) {
      auto es = g.edges();
      for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        SimpleGraph h(n, es);
        for (int v = 0; v < n - 1; ++v)
          if (mask >> v & 1) h.add_edge(v, n - 1);
        add(h);
      }
    }
  }
  return cache.emplace(n, std::move(u)).first->second;
}

}  // namespace

std::pair<std::uint64_t, std::vector<int>> canonical_form(const SimpleGraph& g, const std::vector<int>& vertex_colors) {
  int n = g.n();
  if (n > 11) throw UnsupportedError("canonical form only for n ≤ 11");
  Canon c;
  c.n = n;
  for (int v = 0; v < n; ++v) {
    c.adj[v] = 0;
    for (int w = 0; w < n; ++w)
      if (g.adj(v, w)) c.adj[v] |= 1u << w;
  }
  Cells cells;
  if (vertex_colors.empty()) {
    if (n) {
      cells.emplace_back();
      for (int v = 0; v < n; ++v) cells[0].push_back(v);
    }
  } else {
    std::map<int, std::vector<int>> by;
    for (int v = 0; v < n; ++v) by[vertex_colors[v]].push_back(v);
    for (auto& [col, vs] : by) cells.push_back(vs);
  }
  c.search(cells);
  return {c.best, c.best_order};
}

const std::vector<SimpleGraph>& graph_universe(int n) {
  if (n < 0 || n > 9) throw UnsupportedError("graph universe only for n ≤ 9");
  std::lock_guard<std::mutex> lk(mu);
  return build(n).graphs;
}

int universe_index(const SimpleGraph& g) {
  if (g.n() > 9) throw UnsupportedError("graph universe only for n ≤ 9");
  std::lock_guard<std::mutex> lk(mu);
  auto& u = build(g.n());
  auto it = u.index.find(canonical_form(g).first);
  return it == u.index.end() ? -1 : it->second;
}

}  // namespace wl
