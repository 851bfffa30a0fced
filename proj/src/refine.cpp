#include "wl/refine.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <set>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wl {

std::size_t memory_budget() {
  std::size_t mb = 1024;
  if (const char* s = std::getenv("WL_LAB_MEM_MB")) {
    char* end = nullptr;
    unsigned long long x = std::strtoull(s, &end, 10);
    if (end != s && x > 0) mb = static_cast<std::size_t>(x);
  }
  return mb << 20;
}

ColoredDigraph StableColoring::arcs() const {
  if (k != 2) throw ArgumentError("arc restriction needs k = 2");
  return ColoredDigraph(n, colors);
}

namespace {

using Key = std::vector<Color>;

// Returns ranks of keys in sorted order of the distinct set.
std::vector<Color> rank_keys(std::vector<Key>& keys) {
  std::map<Key, Color> ids;
  for (auto& k : keys) ids.emplace(k, 0);
  Color next = 0;
  for (auto& [k, id] : ids) id = next++;
  std::vector<Color> r(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) r[i] = ids.at(keys[i]);
  return r;
}

inline std::uint64_t pack2(Color a, Color b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

void pair_signature(int n, const std::vector<Color>& c, int v, int w, std::vector<std::uint64_t>& buf) {
  buf.resize(static_cast<std::size_t>(n) + 1);
  buf[0] = static_cast<std::uint32_t>(c[static_cast<std::size_t>(v) * n + w]);
  const Color* rv = &c[static_cast<std::size_t>(v) * n];
  for (int u = 0; u < n; ++u) buf[u + 1] = pack2(rv[u], c[static_cast<std::size_t>(u) * n + w]);
  std::sort(buf.begin() + 1, buf.end());
}

std::vector<Color> intern_pairs(int n, const std::vector<Color>& c, bool parallel) {
  std::size_t nn = static_cast<std::size_t>(n) * n;
  using Map = std::map<std::vector<std::uint64_t>, Color>;
  Map ids;
  std::vector<Map::iterator> where(nn);
  int block = std::max(1, std::min(n, 64));
  std::vector<std::vector<std::uint64_t>> sig(static_cast<std::size_t>(block) * n);
  for (int v0 = 0; v0 < n; v0 += block) {
    int v1 = std::min(n, v0 + block);
    int rows = v1 - v0;
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
      for (int i = 0; i < rows * n; ++i) pair_signature(n, c, v0 + i / n, i % n, sig[i]);
    } else {
      for (int i = 0; i < rows * n; ++i) pair_signature(n, c, v0 + i / n, i % n, sig[i]);
    }
    for (int i = 0; i < rows * n; ++i) {
      where[static_cast<std::size_t>(v0) * n + i] = ids.emplace(sig[i], 0).first;
    }
  }
  Color next = 0;
  for (auto& [k, id] : ids) id = next++;
  std::vector<Color> r(nn);
  for (std::size_t i = 0; i < nn; ++i) r[i] = where[i]->second;
  return r;
}

int count_distinct(const std::vector<Color>& c) {
  if (c.empty()) return 0;
  return *std::max_element(c.begin(), c.end()) + 1;
}

std::vector<Color> initial_pairs(const ColoredDigraph& g) {
  int n = g.n();
  std::vector<Key> keys(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) keys[static_cast<std::size_t>(u) * n + v] = {g.at(u, v), g.at(v, u)};
  return rank_keys(keys);
}

StableColoring refine1(const ColoredDigraph& g) {
  int n = g.n();
  StableColoring s;
  s.k = 1;
  s.n = n;
  std::vector<Key> keys(n);
  for (int v = 0; v < n; ++v) keys[v] = {g.at(v, v)};
  s.colors = rank_keys(keys);
  int cnt = count_distinct(s.colors);
  for (;;) {
    for (int v = 0; v < n; ++v) {
      std::vector<std::array<Color, 3>> t;
      t.reserve(n);
      for (int w = 0; w < n; ++w)
        if (w != v) t.push_back({g.at(v, w), g.at(w, v), s.colors[w]});
      std::sort(t.begin(), t.end());
      Key k{s.colors[v]};
      for (auto& x : t) k.insert(k.end(), x.begin(), x.end());
      keys[v] = std::move(k);
    }
    auto next = rank_keys(keys);
    int c2 = count_distinct(next);
    ++s.rounds;
    s.colors = std::move(next);
    if (c2 == cnt) break;
    cnt = c2;
  }
  s.num_colors = cnt;
  return s;
}

StableColoring refine2(const ColoredDigraph& g, bool parallel) {
  int n = g.n();
  StableColoring s;
  s.k = 2;
  s.n = n;
  s.colors = initial_pairs(g);
  int cnt = count_distinct(s.colors);
  for (;;) {
    auto next = intern_pairs(n, s.colors, parallel);
    int c2 = count_distinct(next);
    ++s.rounds;
    s.colors = std::move(next);
    if (c2 == cnt) break;
    cnt = c2;
  }
  s.num_colors = cnt;
  return s;
}

StableColoring refine_k(const ColoredDigraph& g, int k) {
  int n = g.n();
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<std::size_t>(n);
  StableColoring s;
  s.k = k;
  s.n = n;
  std::vector<std::size_t> pw(k, 1);
  for (int i = k - 2; i >= 0; --i) pw[i] = pw[i + 1] * n;
  std::vector<Key> keys(total);
  std::vector<int> t(k);
  auto decode = [&](std::size_t idx) {
    for (int i = k - 1; i >= 0; --i) {
      t[i] = static_cast<int>(idx % n);
      idx /= n;
    }
  };
  for (std::size_t idx = 0; idx < total; ++idx) {
    decode(idx);
    Key key;
    key.reserve(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) key.push_back(g.at(t[i], t[j]));
    keys[idx] = std::move(key);
  }
  s.colors = rank_keys(keys);
  int cnt = count_distinct(s.colors);
  std::vector<Key> groups(n);
  for (;;) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      decode(idx);
      for (int w = 0; w < n; ++w) {
        Key& gk = groups[w];
        gk.resize(k);
        for (int i = 0; i < k; ++i) {
          std::size_t j = idx - pw[i] * t[i] + pw[i] * w;
          gk[i] = s.colors[j];
        }
      }
      std::sort(groups.begin(), groups.end());
      Key key{s.colors[idx]};
      key.reserve(1 + static_cast<std::size_t>(k) * n);
      for (auto& gk : groups) key.insert(key.end(), gk.begin(), gk.end());
      keys[idx] = std::move(key);
    }
    auto next = rank_keys(keys);
    int c2 = count_distinct(next);
    ++s.rounds;
    s.colors = std::move(next);
    if (c2 == cnt) break;
    cnt = c2;
  }
  s.num_colors = cnt;
  return s;
}

void check_budget(int n, int k) {
  long double tuples = 1;
  for (int i = 0; i < k; ++i) tuples *= n;
  long double bytes = tuples * (static_cast<long double>(k) * n + 2) * sizeof(Color) * 2;
  if (bytes > static_cast<long double>(memory_budget())) {
    throw ResourceError(std::to_string(k) + "-WL on " + std::to_string(n) + " vertices needs " +
                        std::to_string(static_cast<unsigned long long>(tuples)) +
                        " tuples, over the memory budget (WL_LAB_MEM_MB)");
  }
}

// Shared color ids across graphs: by name when every graph carries names,
// otherwise by raw id.
std::vector<std::vector<Color>> align_colors(const std::vector<const ColoredDigraph*>& gs, Color* bound) {
  bool by_name = std::all_of(gs.begin(), gs.end(), [](auto g) { return g->has_names(); });
  std::map<std::pair<int, std::string>, Color> ids;
  auto key = [&](const ColoredDigraph& g, Color c, bool loop) {
    return std::make_pair(loop ? 0 : 1, by_name ? g.name(c) : std::to_string(c));
  };
  for (auto g : gs)
    for (int u = 0; u < g->n(); ++u)
      for (int v = 0; v < g->n(); ++v) ids.emplace(key(*g, g->at(u, v), u == v), 0);
  Color next = 0;
  for (auto& [k, id] : ids) id = next++;
  *bound = next;
  std::vector<std::vector<Color>> r;
  for (auto g : gs) {
    std::vector<Color> m(g->colors().size());
    for (int u = 0; u < g->n(); ++u)
      for (int v = 0; v < g->n(); ++v)
        m[static_cast<std::size_t>(u) * g->n() + v] = ids.at(key(*g, g->at(u, v), u == v));
    r.push_back(std::move(m));
  }
  return r;
}

}  // namespace

namespace kernels {
std::vector<Color> pair_round_serial(int n, const std::vector<Color>& c) {
  return intern_pairs(n, c, false);
}
std::vector<Color> pair_round_parallel(int n, const std::vector<Color>& c) {
  return intern_pairs(n, c, true);
}
}  // namespace kernels

StableColoring wl_refine(const ColoredDigraph& g, int k) {
  if (k < 1) throw ArgumentError("dimension must be at least 1");
  check_budget(g.n(), k);
  if (k == 1) return refine1(g);
  if (k == 2) return refine2(g, true);
  return refine_k(g, k);
}

CoherentConfiguration::CoherentConfiguration(ColoredDigraph g) : g_(canonical_colors(g)) {
  int n = g_.n();
  auto rep = validate_partition(g_);
  if (!rep.ok()) throw IntegrityError("partition violates loop separation or transposition closure");
  int nf = 0;
  for (int v = 0; v < n; ++v) nf = std::max(nf, g_.at(v, v) + 1);
  fibers_.assign(nf, {});
  fiber_of_.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    fibers_[g_.at(v, v)].push_back(v);
    fiber_of_[v] = g_.at(v, v);
  }
  meta_.assign(g_.color_bound(), {});
  inter_.assign(static_cast<std::size_t>(nf) * nf, {});
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      auto& m = meta_[g_.at(u, v)];
      int fu = fiber_of_[u], fv = fiber_of_[v];
      if (m.size == 0) {
        m.source = fu;
        m.target = fv;
        m.transpose = g_.at(v, u);
        inter_[static_cast<std::size_t>(fu) * nf + fv].push_back(g_.at(u, v));
      } else if (m.source != fu || m.target != fv) {
        throw IntegrityError("relation " + std::to_string(g_.at(u, v)) + " crosses several fiber pairs");
      }
      ++m.size;
    }
  for (auto& rel : inter_) std::sort(rel.begin(), rel.end());
  for (Color a = 0; a < static_cast<Color>(meta_.size()); ++a) {
    auto& m = meta_[a];
    int fs = static_cast<int>(fibers_[m.source].size());
    if (m.size % fs) throw IntegrityError("relation " + std::to_string(a) + " is not regular");
    m.degree = m.size / fs;
    int cnt = 0;
    int u = fibers_[m.source][0];
    for (int v = 0; v < n; ++v) cnt += g_.at(u, v) == a;
    if (cnt != m.degree) throw IntegrityError("relation " + std::to_string(a) + " is not regular");
  }
}

const std::map<std::tuple<Color, Color, Color>, int>& CoherentConfiguration::intersection_table() const {
  if (!table_) {
    std::map<std::tuple<Color, Color, Color>, int> t;
    int n = g_.n();
    std::vector<std::pair<int, int>> rep(meta_.size(), {-1, -1});
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (rep[g_.at(u, v)].first < 0) rep[g_.at(u, v)] = {u, v};
    for (Color c = 0; c < static_cast<Color>(rep.size()); ++c) {
      auto [v, w] = rep[c];
      for (int u = 0; u < n; ++u) ++t[{g_.at(v, u), g_.at(u, w), c}];
    }
    table_ = std::move(t);
  }
  return *table_;
}

int CoherentConfiguration::intersection(Color a, Color b, Color t) const {
  const auto& tab = intersection_table();
  auto it = tab.find({a, b, t});
  return it == tab.end() ? 0 : it->second;
}

CoherentConfiguration CoherentConfiguration::restrict_to_fibers(const std::vector<int>& fs,
                                                                std::vector<int>* vertex_map) const {
  std::vector<char> keep(fibers_.size(), 0);
  for (int f : fs) keep.at(f) = 1;
  std::vector<int> vs;
  for (int v = 0; v < n(); ++v)
    if (keep[fiber_of_[v]]) vs.push_back(v);
  if (vertex_map) *vertex_map = vs;
  return CoherentConfiguration(induced(g_, vs));
}

CoherentConfiguration coherent_closure(const ColoredDigraph& g) {
  auto s = wl_refine(g, 2);
  return CoherentConfiguration(s.arcs());
}

CoherentConfiguration closure_on(const ColoredDigraph& g, const std::vector<int>& vs) {
  return coherent_closure(induced(g, vs));
}

bool distinguishes(const ColoredDigraph& g, const ColoredDigraph& h, int k) {
  if (g.n() != h.n()) return true;
  int n = g.n(), N = 2 * n;
  Color bound = 0;
  auto al = align_colors({&g, &h}, &bound);
  Color cross = bound;
  std::vector<Color> m(static_cast<std::size_t>(N) * N, cross);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      m[static_cast<std::size_t>(u) * N + v] = al[0][static_cast<std::size_t>(u) * n + v];
      m[static_cast<std::size_t>(u + n) * N + v + n] = al[1][static_cast<std::size_t>(u) * n + v];
    }
  ColoredDigraph un(N, std::move(m));
  auto s = wl_refine(un, k);
  std::vector<Color> a, b;
  std::vector<int> t(k);
  std::size_t total = s.colors.size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t x = idx;
    bool all_g = true, all_h = true;
    for (int i = 0; i < k; ++i) {
      int v = static_cast<int>(x % N);
      x /= N;
      (v < n ? all_h : all_g) = false;
    }
    if (all_g) a.push_back(s.colors[idx]);
    else if (all_h) b.push_back(s.colors[idx]);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a != b;
}

std::vector<std::vector<std::pair<Color, int>>> batch_histograms(const std::vector<ColoredDigraph>& gs,
                                                                   int k) {
  if (k != 1 && k != 2) throw ArgumentError("batch refinement supports k = 1 or 2");
  std::vector<const ColoredDigraph*> ptrs;
  for (auto& g : gs) ptrs.push_back(&g);
  Color bound = 0;
  auto al = align_colors(ptrs, &bound);
  std::size_t m = gs.size();
  std::vector<std::vector<Color>> col(m);
  // Initial shared ids.
  {
    std::map<Key, Color> ids;
    std::vector<std::vector<Key>> keys(m);
    for (std::size_t i = 0; i < m; ++i) {
      int n = gs[i].n();
      auto at = [&](int u, int v) { return al[i][static_cast<std::size_t>(u) * n + v]; };
      if (k == 1)
        for (int v = 0; v < n; ++v) keys[i].push_back({at(v, v)});
      else
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) keys[i].push_back({at(u, v), at(v, u)});
      for (auto& x : keys[i]) ids.emplace(x, 0);
    }
    Color next = 0;
    for (auto& [kk, id] : ids) id = next++;
    for (std::size_t i = 0; i < m; ++i)
      for (auto& x : keys[i]) col[i].push_back(ids.at(x));
  }
  auto total_distinct = [&]() {
    Color mx = -1;
    for (auto& c : col)
      for (Color x : c) mx = std::max(mx, x);
    return mx + 1;
  };
  int cnt = total_distinct();
  for (;;) {
    std::map<Key, Color> ids;
    std::vector<std::vector<std::map<Key, Color>::iterator>> where(m);
    for (std::size_t i = 0; i < m; ++i) {
      int n = gs[i].n();
      auto at = [&](int u, int v) { return al[i][static_cast<std::size_t>(u) * n + v]; };
      const auto& c = col[i];
      if (k == 1) {
        for (int v = 0; v < n; ++v) {
          std::vector<std::array<Color, 3>> t;
          for (int w = 0; w < n; ++w)
            if (w != v) t.push_back({at(v, w), at(w, v), c[w]});
          std::sort(t.begin(), t.end());
          Key key{c[v]};
          for (auto& x : t) key.insert(key.end(), x.begin(), x.end());
          where[i].push_back(ids.emplace(std::move(key), 0).first);
        }
      } else {
        std::vector<std::uint64_t> buf;
        for (int v = 0; v < n; ++v)
          for (int w = 0; w < n; ++w) {
            pair_signature(n, c, v, w, buf);
            Key key;
            key.reserve(2 * buf.size());
            for (auto x : buf) {
              key.push_back(static_cast<Color>(x >> 32));
              key.push_back(static_cast<Color>(x & 0xffffffffu));
            }
            where[i].push_back(ids.emplace(std::move(key), 0).first);
          }
      }
    }
    Color next = 0;
    for (auto& [kk, id] : ids) id = next++;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < where[i].size(); ++j) col[i][j] = where[i][j]->second;
    int c2 = next;
    if (c2 == cnt) break;
    cnt = c2;
  }
  std::vector<std::vector<std::pair<Color, int>>> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::map<Color, int> h;
    for (Color x : col[i]) ++h[x];
    out[i].assign(h.begin(), h.end());
  }
  return out;
}

CoherentConfiguration individualize(const CoherentConfiguration& c, const std::vector<int>& vs) {
  std::set<int> seen;
  for (int v : vs) {
    if (v < 0 || v >= c.n()) throw RangeError("vertex " + std::to_string(v) + " out of range");
    if (!seen.insert(v).second) throw ArgumentError("duplicate vertex " + std::to_string(v));
  }
  if (vs.empty()) return c;
  int n = c.n();
  std::vector<Color> m = c.base().colors();
  Color fresh = c.base().color_bound();
  for (int v : vs) m[static_cast<std::size_t>(v) * n + v] = fresh++;
  return coherent_closure(ColoredDigraph(n, std::move(m)));
}

CoherenceReport verify_coherence(int n, const std::vector<Color>& colors) {
  CoherenceReport r;
  auto v = validate_partition(n, colors);
  r.cc1 = v.cc1;
  r.cc2 = v.cc2;
  r.cc1_violations = v.cc1_violations;
  r.cc2_violations = v.cc2_violations;
  if (colors.empty()) {
    r.cc3 = true;
    return r;
  }
  auto at = [&](int a, int b) { return colors[static_cast<std::size_t>(a) * n + b]; };
  Color bound = *std::max_element(colors.begin(), colors.end()) + 1;
  std::vector<std::vector<std::pair<int, int>>> cls(bound);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cls[at(a, b)].emplace_back(a, b);
  auto profile = [&](int x, int y) {
    std::vector<std::uint64_t> p(n);
    for (int u = 0; u < n; ++u) p[u] = pack2(at(x, u), at(u, y));
    std::sort(p.begin(), p.end());
    return p;
  };
  std::vector<std::vector<std::uint64_t>> ref(bound);
  std::vector<std::optional<CoherenceWitness>> bad(bound);
#pragma omp parallel for schedule(dynamic)
  for (Color t = 0; t < bound; ++t) {
    if (cls[t].empty()) continue;
    auto [x0, y0] = cls[t][0];
    ref[t] = profile(x0, y0);
    for (std::size_t i = 1; i < cls[t].size(); ++i) {
      auto [x, y] = cls[t][i];
      auto p = profile(x, y);
      if (p == ref[t]) continue;
      // First differing (A,B) code in merged order.
      std::map<std::uint64_t, std::pair<int, int>> cnt;
      for (auto z : ref[t]) ++cnt[z].first;
      for (auto z : p) ++cnt[z].second;
      for (auto& [code, cc] : cnt)
        if (cc.first != cc.second) {
          CoherenceWitness w;
          w.a = static_cast<Color>(code >> 32);
          w.b = static_cast<Color>(code & 0xffffffffu);
          w.t = t;
          w.arc1 = {x0, y0};
          w.arc2 = {x, y};
          w.count1 = cc.first;
          w.count2 = cc.second;
          bad[t] = w;
          break;
        }
      break;
    }
  }
  r.cc3 = true;
  for (Color t = 0; t < bound; ++t)
    if (bad[t]) {
      r.cc3 = false;
      r.witness = bad[t];
      break;
    }
  if (r.ok()) {
    for (Color t = 0; t < bound; ++t) {
      std::map<std::uint64_t, int> cnt;
      for (auto z : ref[t]) ++cnt[z];
      for (auto& [code, c] : cnt)
        r.table[{static_cast<Color>(code >> 32), static_cast<Color>(code & 0xffffffffu), t}] = c;
    }
  }
  return r;
}

CoherenceReport verify_coherence(const ColoredDigraph& g) { return verify_coherence(g.n(), g.colors()); }

}  // namespace wl
