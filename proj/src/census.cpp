#include "wl/census.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include "wl/iso.hpp"

namespace wl {

int RelationGraph::arc_count() const {
  return static_cast<int>(std::count(adj.begin(), adj.end(), 1));
}

bool RelationGraph::symmetric() const {
  if (bipartite()) return false;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (arc(u, v) != arc(v, u)) return false;
  return true;
}

RelationGraph relation_graph(const SimpleGraph& g) {
  RelationGraph r(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v)
      if (u != v && g.adj(u, v)) r.set(u, v);
  return r;
}

RelationGraph relation_graph(const CoherentConfiguration& c, Color a) {
  const auto& m = c.meta(a);
  const auto& src = c.fibers()[m.source];
  if (m.source == m.target) {
    int k = static_cast<int>(src.size());
    RelationGraph r(k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (c.at(src[i], src[j]) == a) r.set(i, j);
    return r;
  }
  const auto& dst = c.fibers()[m.target];
  int p = static_cast<int>(src.size()), q = static_cast<int>(dst.size());
  RelationGraph r(p + q, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      if (c.at(src[i], dst[j]) == a) r.set(i, p + j);
  return r;
}

namespace {

// ---------------------------------------------------------------- templates

using Kind = ConstituentKind;

struct Template {
  Kind kind;
  std::string name;
  RelationGraph g;
};

RelationGraph one_set(int n, const std::function<bool(int, int)>& f) {
  RelationGraph r(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && f(u, v)) r.set(u, v);
  return r;
}

RelationGraph two_sets(int a, int b, const std::function<bool(int, int)>& f) {
  RelationGraph r(a + b, a);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      if (f(i, j)) r.set(i, a + j);
  return r;
}

RelationGraph complement_of(const RelationGraph& g) {
  RelationGraph r(g.n, g.left);
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v) {
      if (u == v) continue;
      if (g.bipartite() && !(u < g.left && v >= g.left)) continue;
      r.set(u, v, !g.arc(u, v));
    }
  return r;
}

int mod(int x, int m) { return ((x % m) + m) % m; }

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string multipartite_name(int parts, int size) {
  std::string s = "K{";
  for (int i = 0; i < parts; ++i) s += (i ? "," : "") + std::to_string(size);
  return s + "}";
}

std::vector<Template> symmetric_templates(int n) {
  std::vector<Template> t;
  t.push_back({Kind::Complete, "K" + std::to_string(n), one_set(n, [](int, int) { return true; })});
  if (n >= 4)
    t.push_back({Kind::Cycle, "C" + std::to_string(n),
                 one_set(n, [n](int u, int v) { return mod(u - v, n) == 1 || mod(v - u, n) == 1; })});
  for (int m = 2; m < n; ++m)
    if (n % m == 0)
      t.push_back({Kind::DisjointCliques, std::to_string(n / m) + "K" + std::to_string(m),
                   one_set(n, [m](int u, int v) { return u / m == v / m; })});
  for (int m = 4; m < n; ++m)
    if (n % m == 0)
      t.push_back({Kind::DisjointCycles, std::to_string(n / m) + "C" + std::to_string(m), one_set(n, [m](int u, int v) {
                     return u / m == v / m && (mod(u - v, m) == 1 || mod(v - u, m) == 1);
                   })});
  for (int p = 2; p < n; ++p)
    if (n % p == 0 && !(p == 2 && n == 4))
      t.push_back({Kind::Multipartite, multipartite_name(p, n / p),
                   one_set(n, [m = n / p](int u, int v) { return u / m != v / m; })});
  for (int m = 3; m * m <= n; ++m)
    if (m * m == n)
      t.push_back({Kind::Rook, "R(" + std::to_string(m) + ")",
                   one_set(n, [m](int u, int v) { return (u / m == v / m) != (u % m == v % m); })});
  if (n >= 8 && n % 2 == 0) {
    int m = n / 2;
    t.push_back({Kind::BicliqueMinusMatching,
                 "K{" + std::to_string(m) + "," + std::to_string(m) + "}-" + std::to_string(m) + "K2",
                 one_set(n, [m](int u, int v) { return (u < m) != (v < m) && u % m != v % m; })});
  }
  if (n >= 2) t.push_back({Kind::Edgeless, std::to_string(n) + "K1", RelationGraph(n)});
  return t;
}

std::vector<Template> directed_templates(int n) {
  std::vector<Template> t;
  if (n >= 3) t.push_back({Kind::DirectedCycle, "C" + std::to_string(n) + ">",
                           one_set(n, [n](int u, int v) { return mod(v - u, n) == 1; })});
  for (int m = 3; m < n; ++m)
    if (n % m == 0)
      t.push_back({Kind::DisjointDirectedCycles, std::to_string(n / m) + "C" + std::to_string(m) + ">",
                   one_set(n, [m](int u, int v) { return u / m == v / m && mod(v - u, m) == 1; })});
  for (int m = 3; m < n; ++m)
    if (n % m == 0) {
      int s = n / m;
      t.push_back({Kind::DirectedCycleBlowup, "C" + std::to_string(m) + ">[K" + std::to_string(s) + "]",
                   one_set(n, [m, s](int u, int v) { return mod(v / s - u / s, m) == 1; })});
    }
  if (n > 3 && is_prime(n) && n % 4 == 3) {
    std::vector<char> qr(n, 0);
    for (int x = 1; x < n; ++x) qr[x * x % n] = 1;
    t.push_back({Kind::PaleyTournament, "PTr(" + std::to_string(n) + ")",
                 one_set(n, [n, qr](int u, int v) { return qr[mod(v - u, n)] != 0; })});
  }
  return t;
}

std::vector<std::pair<int, int>> k4_edges() { return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}; }

bool fano_incident(int point, int line) {
  int d = mod(point - line, 7);
  return d == 0 || d == 1 || d == 3;
}

std::vector<Template> bipartite_templates(int a, int b) {
  std::vector<Template> t;
  std::string ab = std::to_string(a) + "," + std::to_string(b);
  t.push_back({Kind::FullBipartite, "K{" + ab + "}", two_sets(a, b, [](int, int) { return true; })});
  if (a == b) t.push_back({Kind::Matching, "M" + std::to_string(a), two_sets(a, b, [](int i, int j) { return i == j; })});
  for (int s = 2; s <= std::min(a, b); ++s)
    if (a % s == 0 && b % s == 0 && !(a == b && s == a)) {
      int x = a / s, y = b / s;
      t.push_back({Kind::DisjointBicliques,
                   std::to_string(s) + "K{" + std::to_string(x) + "," + std::to_string(y) + "}",
                   two_sets(a, b, [x, y](int i, int j) { return i / x == j / y; })});
    }
  if (a == b && a >= 3)
    t.push_back({Kind::AlternatingCycle, "C" + std::to_string(2 * a),
                 two_sets(a, b, [a](int i, int j) { return j == i || j == mod(i + 1, a); })});
  if (a == 7 && b == 7)
    t.push_back({Kind::FanoIncidence, "I(F)", two_sets(7, 7, [](int i, int j) { return fano_incident(i, j); })});
  auto e = k4_edges();
  if (a == 4 && b == 6)
    t.push_back({Kind::K4Incidence, "I(K4,6)",
                 two_sets(4, 6, [e](int i, int j) { return e[j].first == i || e[j].second == i; })});
  if (a == 6 && b == 4)
    t.push_back({Kind::K4Incidence, "I(K4,6)^T",
                 two_sets(6, 4, [e](int i, int j) { return e[i].first == j || e[i].second == j; })});
  return t;
}

ColoredDigraph encode(const RelationGraph& g) {
  int n = g.n;
  std::vector<Color> m(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      Color& x = m[static_cast<std::size_t>(u) * n + v];
      if (!g.bipartite()) {
        x = u == v ? 0 : g.arc(u, v) ? 1 : 2;
        continue;
      }
      bool lu = u < g.left, lv = v < g.left;
      if (u == v) x = lu ? 0 : 1;
      else if (lu && !lv) x = g.arc(u, v) ? 2 : 3;
      else if (!lu && lv) x = 4;
      else x = lu ? 5 : 6;
    }
  return ColoredDigraph(n, std::move(m));
}

std::vector<int> degree_profile(const RelationGraph& g) {
  std::vector<int> d;
  for (int u = 0; u < g.n; ++u) {
    int o = 0, i = 0;
    for (int v = 0; v < g.n; ++v) o += g.arc(u, v), i += g.arc(v, u);
    d.push_back(o * 1024 + i);
  }
  std::sort(d.begin(), d.end());
  return d;
}

bool same_graph(const RelationGraph& g, const RelationGraph& h) {
  if (g.n != h.n || g.left != h.left || g.arc_count() != h.arc_count()) return false;
  if (degree_profile(g) != degree_profile(h)) return false;
  return find_isomorphism(encode(g), encode(h)).has_value();
}

std::string invariant_hash(const RelationGraph& g) {
  auto c = coherent_closure(encode(g));
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(g.n));
  for (Color a = 0; a < c.rank(); ++a) {
    const auto& m = c.meta(a);
    mix(static_cast<std::uint64_t>(m.source));
    mix(static_cast<std::uint64_t>(m.target));
    mix(static_cast<std::uint64_t>(m.size));
  }
  for (const auto& [key, val] : c.intersection_table()) {
    auto [a, b, t] = key;
    mix(static_cast<std::uint64_t>(a) << 40 ^ static_cast<std::uint64_t>(b) << 20 ^ static_cast<std::uint64_t>(t));
    mix(static_cast<std::uint64_t>(val));
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("other:") + buf;
}

}  // namespace

ConstituentType recognize_constituent(const RelationGraph& g) {
  if (g.n > 64) throw RangeError("constituent recognition limited to 64 vertices");
  std::vector<Template> ts;
  if (g.bipartite()) {
    ts = bipartite_templates(g.left, g.n - g.left);
  } else if (g.symmetric()) {
    ts = symmetric_templates(g.n);
  } else {
    ts = directed_templates(g.n);
  }
  for (const auto& t : ts)
    if (same_graph(g, t.g)) return {t.kind, t.name};
  // Complements of listed templates (the full and edgeless ones excluded).
  const char* prefix = g.bipartite() ? "RxB-" : "co-";
  if (!g.bipartite() && !g.symmetric()) {
    for (const auto& t : symmetric_templates(g.n)) ts.push_back(t);
  }
  for (const auto& t : ts) {
    if (t.kind == Kind::Complete || t.kind == Kind::Edgeless || t.kind == Kind::FullBipartite) continue;
    if (same_graph(g, complement_of(t.g))) return {Kind::Complement, prefix + t.name};
  }
  return {Kind::Other, invariant_hash(g)};
}

std::string to_string(const TypeTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i];
  return s + ")";
}

TypeTuple type_tuple(const CoherentConfiguration& c, int s) {
  if (s < 0 || s >= c.fiber_count()) throw RangeError("unknown fiber " + std::to_string(s));
  TypeTuple t;
  Color loop = c.fiber_color(s);
  for (Color a : c.relations(s, s)) {
    if (a == loop || c.meta(a).transpose < a) continue;
    t.push_back(recognize_constituent(relation_graph(c, a)).name);
  }
  if (t.empty()) t.push_back("K" + std::to_string(c.fibers()[s].size()));
  std::sort(t.begin(), t.end());
  return t;
}

TypeTuple cc_type(const CoherentConfiguration& c, int s) {
  if (s < 0 || s >= c.fiber_count()) throw RangeError("unknown fiber " + std::to_string(s));
  if (c.fibers()[s].size() > 7) throw UnsupportedError("fiber type census covers fibers of size ≤ 7");
  return type_tuple(c, s);
}

TypeTuple interspace_type(const CoherentConfiguration& c, int r, int b) {
  if (r < 0 || b < 0 || r >= c.fiber_count() || b >= c.fiber_count() || r == b)
    throw RangeError("interspace needs two distinct known fibers");
  TypeTuple t;
  for (Color a : c.relations(r, b)) t.push_back(recognize_constituent(relation_graph(c, a)).name);
  std::sort(t.begin(), t.end());
  return t;
}

bool configurations_isomorphic(const CoherentConfiguration& a, const CoherentConfiguration& b) {
  int n = a.n();
  if (n != b.n() || a.rank() != b.rank()) return false;
  if (n > 12) throw ResourceError("configuration isomorphism search limited to 12 points");
  auto deg = [](const CoherentConfiguration& c) {
    std::vector<std::pair<int, int>> d;
    for (Color x = 0; x < c.rank(); ++x) d.push_back({c.meta(x).size, c.meta(x).degree});
    std::sort(d.begin(), d.end());
    return d;
  };
  if (deg(a) != deg(b)) return false;
  std::vector<Color> fwd(a.rank(), -1), bwd(b.rank(), -1);
  std::vector<int> p(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> rec = [&](int i) {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      std::vector<Color> added;
      bool ok = true;
      auto bind = [&](Color x, Color y) {
        if (fwd[x] == -1 && bwd[y] == -1) {
          fwd[x] = y, bwd[y] = x, added.push_back(x);
          return true;
        }
        return fwd[x] == y;
      };
      p[i] = j;
      for (int k = 0; k <= i && ok; ++k) {
        ok = bind(a.at(i, k), b.at(j, p[k])) && bind(a.at(k, i), b.at(p[k], j));
      }
      if (ok) {
        used[j] = 1;
        if (rec(i + 1)) return true;
        used[j] = 0;
      }
      for (Color x : added) bwd[fwd[x]] = -1, fwd[x] = -1;
      p[i] = -1;
    }
    return false;
  };
  return rec(0);
}

// ---------------------------------------------------------------- enumeration

namespace {

class Enumerator {
 public:
  Enumerator(const std::vector<int>& sizes, const std::function<void(const std::vector<Color>&)>& emit)
      : emit_(emit), size_(sizes) {
    for (int f = 0; f < static_cast<int>(sizes.size()); ++f) {
      if (sizes[f] < 1) throw ArgumentError("fiber sizes must be positive");
      first_.push_back(n_);
      for (int i = 0; i < sizes[f]; ++i) fiber_.push_back(f);
      n_ += sizes[f];
    }
    m_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int v = 0; v < n_; ++v) at(v, v) = fiber_[v];
    for (int f = 0; f < static_cast<int>(sizes.size()); ++f) cols_.push_back({f, f, f, 1});
    ref_.assign(cols_.size(), {});
  }

  void run() { row(0); }

 private:
  struct Col {
    int src, dst;
    Color t;
    int k;  // valency
  };
  using Profile = std::vector<std::pair<int, int>>;

  Color& at(int u, int v) { return m_[static_cast<std::size_t>(u) * n_ + v]; }

  Profile profile(int w, int u) {
    std::map<int, int> cnt;
    for (int x = 0; x < n_; ++x) ++cnt[at(w, x) * 4096 + at(x, u)];
    return Profile(cnt.begin(), cnt.end());
  }

  // Checks every pair between row u and earlier rows; records new references.
  bool check_row(int u, std::vector<Color>& set_refs) {
    for (int w = 0; w <= u; ++w)
      for (int pass = 0; pass < (w == u ? 1 : 2); ++pass) {
        int x = pass ? u : w, y = pass ? w : u;
        Color c = at(x, y);
        auto p = profile(x, y);
        if (ref_[c].empty()) {
          ref_[c] = std::move(p);
          set_refs.push_back(c);
        } else if (ref_[c] != p) {
          return false;
        }
      }
    return true;
  }

  void finish_row(int u) {
    std::vector<Color> set_refs;
    if (check_row(u, set_refs)) row(u + 1);
    for (Color c : set_refs) ref_[c].clear();
  }

  void place(int u, int x, Color c) {
    at(u, x) = c;
    at(x, u) = cols_[c].t;
  }
  void unplace(int u, int x) { at(u, x) = at(x, u) = -1; }

  void row(int u) {
    if (u == n_) {
      emit_(m_);
      return;
    }
    int f = fiber_[u];
    if (u == first_[f]) first_row(u, f);
    else later_row(u, f);
  }

  // ---- rows after the first of a fiber: fixed valencies

  void later_row(int u, int f) {
    std::vector<int> need(cols_.size(), 0);
    for (Color c = 0; c < static_cast<Color>(cols_.size()); ++c)
      if (cols_[c].src == f && c != f) need[c] = cols_[c].k;
    for (int x = 0; x < u; ++x)
      if (--need[at(u, x)] < 0) return;
    std::vector<int> free;
    for (int x = u + 1; x < n_; ++x) free.push_back(x);
    fill(u, f, free, 0, need);
  }

  void fill(int u, int f, const std::vector<int>& free, std::size_t i, std::vector<int>& need) {
    if (i == free.size()) {
      finish_row(u);
      return;
    }
    int x = free[i], g = fiber_[x];
    for (Color c = 0; c < static_cast<Color>(cols_.size()); ++c) {
      if (cols_[c].src != f || cols_[c].dst != g || c == f || need[c] == 0) continue;
      --need[c];
      place(u, x, c);
      fill(u, f, free, i + 1, need);
      unplace(u, x);
      ++need[c];
    }
  }

  // ---- first row of a fiber: new colors

  struct Block {
    int g;
    std::vector<int> pos;
    std::vector<int> label;  // new-color index local to the block
    int parts = 0;
  };

  void first_row(int u, int f) {
    // Transposes of colors created by earlier fibers already carry their valency.
    std::vector<int> seen(cols_.size(), 0);
    for (int x = 0; x < u; ++x) ++seen[at(u, x)];
    for (Color c = 0; c < static_cast<Color>(cols_.size()); ++c)
      if (cols_[c].src == f && cols_[c].dst < f && seen[c] != cols_[c].k) return;
    std::vector<Block> blocks;
    for (int g = f; g < static_cast<int>(size_.size()); ++g) {
      Block b;
      b.g = g;
      for (int x = std::max(u + 1, first_[g]); x < first_[g] + size_[g]; ++x) b.pos.push_back(x);
      if (!b.pos.empty()) blocks.push_back(std::move(b));
    }
    partition_blocks(u, f, blocks, 0);
  }

  // Chooses a set partition of each block's positions into new colors.
  void partition_blocks(int u, int f, std::vector<Block>& blocks, std::size_t bi) {
    if (bi == blocks.size()) {
      assign_new_colors(u, f, blocks);
      return;
    }
    Block& b = blocks[bi];
    int k = static_cast<int>(b.pos.size());
    b.label.assign(k, 0);
    if (u == 0) {
      // Unconstrained targets: contiguous blocks of nondecreasing size.
      std::vector<int> comp;
      std::function<void(int, int)> parts = [&](int left, int minp) {
        if (left == 0) {
          int idx = 0, label = 0;
          for (int p : comp) {
            for (int i = 0; i < p; ++i) b.label[idx++] = label;
            ++label;
          }
          b.parts = label;
          partition_blocks(u, f, blocks, bi + 1);
          return;
        }
        for (int p = minp; p <= left; ++p) {
          comp.push_back(p);
          parts(left - p, p);
          comp.pop_back();
        }
      };
      parts(k, 1);
      return;
    }
    std::function<void(int, int)> rgs = [&](int i, int mx) {
      if (i == k) {
        b.parts = mx;
        partition_blocks(u, f, blocks, bi + 1);
        return;
      }
      for (int l = 0; l <= mx; ++l) {
        b.label[i] = l;
        rgs(i + 1, std::max(mx, l + 1));
      }
    };
    rgs(0, 0);
  }

  void assign_new_colors(int u, int f, std::vector<Block>& blocks) {
    // Own-fiber block (if any) comes first; its colors need a transpose pairing.
    std::size_t base = cols_.size();
    std::vector<std::vector<Color>> ids(blocks.size());
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const Block& b = blocks[bi];
      std::vector<int> cnt(b.parts, 0);
      for (int l : b.label) ++cnt[l];
      for (int l = 0; l < b.parts; ++l) {
        Color c = static_cast<Color>(cols_.size());
        ids[bi].push_back(c);
        cols_.push_back({f, b.g, -1, cnt[l]});
        if (b.g != f) {
          if (cnt[l] * size_[f] % size_[b.g] != 0) {
            cols_.resize(base);
            return;
          }
          Color t = static_cast<Color>(cols_.size());
          cols_.push_back({b.g, f, c, cnt[l] * size_[f] / size_[b.g]});
          cols_[c].t = t;
        }
      }
    }
    ref_.resize(cols_.size());
    std::vector<Color> own;
    if (!blocks.empty() && blocks[0].g == f) own = ids[0];
    pair_transposes(u, f, blocks, ids, own, 0);
    cols_.resize(base);
    ref_.resize(base);
  }

  void pair_transposes(int u, int f, std::vector<Block>& blocks, const std::vector<std::vector<Color>>& ids,
                       const std::vector<Color>& own, std::size_t i) {
    while (i < own.size() && cols_[own[i]].t != -1) ++i;
    if (i == own.size()) {
      write_row(u, blocks, ids);
      return;
    }
    Color c = own[i];
    if (u == 0) {
      // Canonical pairing: among equal valencies, symmetric colors come first,
      // then consecutive antisymmetric pairs.
      bool prev_paired = i > 0 && cols_[own[i - 1]].k == cols_[c].k && cols_[own[i - 1]].t != own[i - 1];
      if (!prev_paired) {
        cols_[c].t = c;
        pair_transposes(u, f, blocks, ids, own, i + 1);
        cols_[c].t = -1;
      }
      if (i + 1 < own.size() && cols_[own[i + 1]].k == cols_[c].k) {
        Color d = own[i + 1];
        cols_[c].t = d, cols_[d].t = c;
        pair_transposes(u, f, blocks, ids, own, i + 2);
        cols_[c].t = cols_[d].t = -1;
      }
      return;
    }
    cols_[c].t = c;
    pair_transposes(u, f, blocks, ids, own, i + 1);
    cols_[c].t = -1;
    for (std::size_t j = i + 1; j < own.size(); ++j) {
      Color d = own[j];
      if (cols_[d].t != -1 || cols_[d].k != cols_[c].k) continue;
      cols_[c].t = d, cols_[d].t = c;
      pair_transposes(u, f, blocks, ids, own, i + 1);
      cols_[c].t = cols_[d].t = -1;
    }
  }

  void write_row(int u, std::vector<Block>& blocks, const std::vector<std::vector<Color>>& ids) {
    for (std::size_t bi = 0; bi < blocks.size(); ++bi)
      for (std::size_t i = 0; i < blocks[bi].pos.size(); ++i) place(u, blocks[bi].pos[i], ids[bi][blocks[bi].label[i]]);
    finish_row(u);
    for (auto& b : blocks)
      for (int x : b.pos) unplace(u, x);
  }

  const std::function<void(const std::vector<Color>&)>& emit_;
  std::vector<int> size_, first_, fiber_;
  int n_ = 0;
  std::vector<Color> m_;
  std::vector<Col> cols_;
  std::vector<Profile> ref_;
};

}  // namespace

void for_each_configuration(const std::vector<int>& sizes,
                            const std::function<void(const std::vector<Color>&)>& emit) {
  Enumerator(sizes, emit).run();
}

std::vector<CensusEntry> enumerate_homogeneous(int n) {
  if (n < 1) throw ArgumentError("order must be positive");
  if (n > 7) throw UnsupportedError("homogeneous census covers orders ≤ 7");
  using Key = std::vector<std::pair<int, int>>;
  std::map<Key, std::vector<CoherentConfiguration>> buckets;
  for_each_configuration({n}, [&](const std::vector<Color>& m) {
    CoherentConfiguration c(ColoredDigraph(n, m));
    Key key;
    for (Color a = 0; a < c.rank(); ++a) key.push_back({c.meta(a).degree, c.meta(a).transpose == a});
    std::sort(key.begin(), key.end());
    auto& reps = buckets[key];
    for (const auto& r : reps)
      if (configurations_isomorphic(r, c)) return;
    reps.push_back(std::move(c));
  });
  std::vector<CensusEntry> out;
  for (auto& [key, reps] : buckets)
    for (auto& r : reps) out.push_back({n, cc_type(r, 0), std::move(r)});
  std::sort(out.begin(), out.end(), [](const CensusEntry& a, const CensusEntry& b) {
    if (a.type.size() != b.type.size()) return a.type.size() < b.type.size();
    return a.type < b.type;
  });
  return out;
}

// ---------------------------------------------------------------- interspaces

namespace {

ColoredDigraph two_fiber(int r, int b, const std::function<int(int, int)>& rel) {
  int n = r + b;
  std::vector<Color> m(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      bool ru = u < r, rv = v < r;
      Color& x = m[static_cast<std::size_t>(u) * n + v];
      if (u == v) x = ru ? 0 : 1;
      else if (ru && rv) x = 2;
      else if (!ru && !rv) x = 3;
      else if (ru) x = 10 + rel(u, v - r);
      else x = 30 + rel(v, u - r);
    }
  return ColoredDigraph(n, std::move(m));
}

struct CellInstance {
  std::string tuple;
  int r, b;
  std::function<int(int, int)> rel;
};

std::vector<CellInstance> cell_instances() {
  auto e = k4_edges();
  return {
      {"(C8,C8)", 4, 4, [](int i, int j) { return mod(j - i, 4) <= 1 ? 0 : 1; }},
      {"(2K{2,2},2K{2,2})", 4, 4, [](int i, int j) { return i / 2 == j / 2 ? 0 : 1; }},
      {"(I(K4,6),I(K4,6))", 4, 6, [e](int i, int j) { return e[j].first == i || e[j].second == i ? 0 : 1; }},
      {"(2K{2,3},2K{2,3})", 4, 6, [](int i, int j) { return i / 2 == j / 3 ? 0 : 1; }},
      {"(3K{2,2},C12,C12)", 6, 6,
       [](int i, int j) {
         int d = mod(j - i, 6);
         return d <= 1 ? 0 : (d == 3 || d == 4) ? 1 : 2;
       }},
      {"(2K{3,3},2K{3,3})", 6, 6, [](int i, int j) { return i / 3 == j / 3 ? 0 : 1; }},
      {"(3K{2,2},3K{2,2},3K{2,2})", 6, 6, [](int i, int j) { return mod(j / 2 - i / 2, 3); }},
      {"(3K{2,2},RxB-3K{2,2})", 6, 6, [](int i, int j) { return i / 2 == j / 2 ? 0 : 1; }},
      {"(I(F),RxB-I(F))", 7, 7, [](int i, int j) { return fano_incident(i, j) ? 0 : 1; }},
  };
}

// Star-free in both directions, and no odd equal-size pair at minimal degree 2.
bool critical_compatible(const CoherentConfiguration& c, int r, int b) {
  int dmin = 1 << 30;
  for (Color a : c.relations(r, b)) dmin = std::min(dmin, c.meta(a).degree);
  for (Color a : c.relations(b, r))
    if (c.meta(a).degree == 1) return false;
  if (dmin == 1) return false;
  int sr = static_cast<int>(c.fibers()[r].size()), sb = static_cast<int>(c.fibers()[b].size());
  if (sr == sb && sr % 2 == 1 && dmin == 2) return false;
  return true;
}

}  // namespace

InterspaceCensus enumerate_small_interspaces(int r, int b, bool exhaustive) {
  if (r > b) std::swap(r, b);
  if (r < 4 || b > 7) throw RangeError("small interspace census needs 4 ≤ |R| ≤ |B| ≤ 7");
  InterspaceCensus out;
  out.r = r, out.b = b;
  out.exhaustive = exhaustive || (r == 4 && b == 4);
  if (out.exhaustive) {
    std::map<TypeTuple, CoherentConfiguration> found;
    std::set<TypeTuple> excluded;
    std::map<std::vector<Color>, std::pair<bool, TypeTuple>> memo;
    for_each_configuration({r, b}, [&](const std::vector<Color>& m) {
      CoherentConfiguration c(ColoredDigraph(r + b, m));
      int fr = c.fiber_of(0), fb = c.fiber_of(r);
      if (c.relations(fr, fb).size() < 2) return;
      // The interspace alone determines the type; memoize on its raw colors.
      std::vector<Color> key;
      for (int i = 0; i < r; ++i)
        for (int j = r; j < r + b; ++j) key.push_back(m[static_cast<std::size_t>(i) * (r + b) + j]);
      auto it = memo.find(key);
      if (it == memo.end()) it = memo.emplace(key, std::make_pair(critical_compatible(c, fr, fb), interspace_type(c, fr, fb))).first;
      auto& [ok, t] = it->second;
      if (!ok) {
        excluded.insert(t);
        return;
      }
      if (!found.count(t)) found.emplace(t, std::move(c));
    });
    for (auto& [t, c] : found) out.entries.push_back({t, std::move(c)});
    for (const auto& t : excluded)
      if (!found.count(t)) out.excluded.push_back(t);
    return out;
  }
  for (const auto& inst : cell_instances()) {
    if (inst.r != r || inst.b != b) continue;
    auto c = coherent_closure(two_fiber(r, b, inst.rel));
    int fr = c.fiber_of(0), fb = c.fiber_of(r);
    out.entries.push_back({interspace_type(c, fr, fb), std::move(c)});
  }
  return out;
}

// ---------------------------------------------------------------- implications

bool ImplicationReport::ok() const {
  return std::all_of(items.begin(), items.end(), [](const Implication& i) { return !i.fired || i.holds; });
}

ImplicationReport interspace_implications(const CoherentConfiguration& c, int r, int b) {
  if (r < 0 || b < 0 || r >= c.fiber_count() || b >= c.fiber_count() || r == b)
    throw RangeError("interspace needs two distinct known fibers");
  if (c.fibers()[r].size() > c.fibers()[b].size()) std::swap(r, b);
  ImplicationReport rep;
  rep.r = r, rep.b = b;
  if (c.relations(r, b).size() < 2) return rep;
  if (c.fibers()[b].size() > 7) throw UnsupportedError("implications cover fibers of size ≤ 7");
  auto inter = interspace_type(c, r, b);
  auto tr = type_tuple(c, r), tb = type_tuple(c, b);
  auto in = [](const TypeTuple& t, const std::string& x) { return std::find(t.begin(), t.end(), x) != t.end(); };
  auto add = [&](int rule, const std::string& premise, const std::string& conclusion, bool holds) {
    Implication i{rule, premise, conclusion, in(inter, premise), holds};
    rep.items.push_back(i);
  };
  add(1, "C8", "C4 in c[R]", in(tr, "C4"));
  add(1, "C12", "C6 in c[R]", in(tr, "C6"));
  add(2, "2K{2,2}", "2K2 in c[R]", in(tr, "2K2"));
  add(2, "3K{2,2}", "3K2 in c[R]", in(tr, "3K2"));
  add(3, "2K{2,3}", "2K2 in c[R], and 2K3 or 2C3> in c[B]", in(tr, "2K2") && (in(tb, "2K3") || in(tb, "2C3>")));
  add(4, "2K{3,3}", "2K3 or 2C3> in c[R]", in(tr, "2K3") || in(tr, "2C3>"));
  add(5, "I(F)", "K7 or PTr(7) in c[R]", in(tr, "K7") || in(tr, "PTr(7)"));
  add(6, "I(K4,6)", "K4 in c[R], and 3K2 with K{2,2,2} or C3>[K2] in c[B]",
      in(tr, "K4") && in(tb, "3K2") && (in(tb, "K{2,2,2}") || in(tb, "C3>[K2]")));
  return rep;
}

// ---------------------------------------------------------------- factory

namespace {

using Sets = std::vector<std::vector<int>>;

struct FiberModel {
  std::string type;
  int size;
  std::function<Color(int, int)> color;  // 0 on the diagonal
  std::vector<Perm> gens;                // subgroup of Aut(c[S]) used for orbits
};

Perm cycle_perm(int n, std::initializer_list<std::vector<int>> cycles) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  for (const auto& cyc : cycles)
    for (std::size_t i = 0; i < cyc.size(); ++i) p[cyc[i]] = cyc[(i + 1) % cyc.size()];
  return p;
}

int s3_color(int g, int h) {
  static const int table[6][6] = {{0, 1, 2, 3, 4, 5}, {1, 0, 4, 5, 2, 3}, {2, 3, 0, 1, 5, 4},
                                  {4, 5, 1, 0, 3, 2}, {3, 2, 5, 4, 0, 1}, {5, 4, 3, 2, 1, 0}};
  return table[g][h];
}

FiberModel fiber_model(const std::string& type) {
  auto full6 = std::vector<Perm>{cycle_perm(6, {{0, 1}}), cycle_perm(6, {{0, 1, 2, 3, 4, 5}})};
  auto wreath = std::vector<Perm>{cycle_perm(6, {{0, 1}}), cycle_perm(6, {{0, 2}, {1, 3}}),
                                  cycle_perm(6, {{0, 2, 4}, {1, 3, 5}})};
  auto blobs = std::vector<Perm>{cycle_perm(6, {{0, 1}}), cycle_perm(6, {{0, 2, 4}, {1, 3, 5}})};
  auto d6 = std::vector<Perm>{cycle_perm(6, {{0, 1, 2, 3, 4, 5}}), cycle_perm(6, {{1, 5}, {2, 4}})};
  auto z6 = std::vector<Perm>{cycle_perm(6, {{0, 1, 2, 3, 4, 5}})};
  auto blocks = std::vector<Perm>{cycle_perm(6, {{0, 1}}), cycle_perm(6, {{0, 1, 2}}),
                                  cycle_perm(6, {{0, 3}, {1, 4}, {2, 5}})};
  auto dblocks = std::vector<Perm>{cycle_perm(6, {{0, 1, 2}}), cycle_perm(6, {{0, 3}, {1, 4}, {2, 5}})};
  auto circ6 = [](int u, int v) { return std::min(mod(u - v, 6), mod(v - u, 6)); };
  if (type == "(K4)")
    return {type, 4, [](int, int) { return 1; }, {cycle_perm(4, {{0, 1}}), cycle_perm(4, {{0, 1, 2, 3}})}};
  if (type == "(2K2,2K2,2K2)")
    return {type, 4, [](int u, int v) { return u ^ v; },
            {cycle_perm(4, {{0, 1}, {2, 3}}), cycle_perm(4, {{0, 2}, {1, 3}})}};
  if (type == "(2K2,C4)")
    return {type, 4, [](int u, int v) { return mod(u - v, 4) == 2 ? 2 : 1; },
            {cycle_perm(4, {{0, 1, 2, 3}}), cycle_perm(4, {{1, 3}})}};
  if (type == "(2K2,C4>)")
    return {type, 4, [](int u, int v) { return mod(v - u, 4); }, {cycle_perm(4, {{0, 1, 2, 3}})}};
  if (type == "(K6)") return {type, 6, [](int, int) { return 1; }, full6};
  if (type == "(K6)/PSL(2,5)")
    return {"(K6)", 6, [](int, int) { return 1; },
            {cycle_perm(6, {{0, 1, 2, 3, 4}}), cycle_perm(6, {{0, 5}, {1, 4}})}};
  if (type == "(3K2,K{2,2,2})") return {type, 6, [](int u, int v) { return u / 2 == v / 2 ? 1 : 2; }, wreath};
  if (type == "(3K2,K{2,2,2})/even")
    return {"(3K2,K{2,2,2})", 6, [](int u, int v) { return u / 2 == v / 2 ? 1 : 2; },
            {cycle_perm(6, {{0, 1}, {2, 3}}), cycle_perm(6, {{2, 3}, {4, 5}}), cycle_perm(6, {{0, 2, 4}, {1, 3, 5}})}};
  if (type == "(3K2,C3>[K2])" || type == "(3K2,C3>[K2])/even") {
    auto col = [](int u, int v) {
      int d = mod(v / 2 - u / 2, 3);
      return d == 0 ? 1 : d == 1 ? 2 : 3;
    };
    if (type == "(3K2,C3>[K2])") return {type, 6, col, blobs};
    return {"(3K2,C3>[K2])", 6, col,
            {cycle_perm(6, {{0, 1}, {2, 3}}), cycle_perm(6, {{2, 3}, {4, 5}}), cycle_perm(6, {{0, 2, 4}, {1, 3, 5}})}};
  }
  if (type == "(2K3,3K2,C6)") return {type, 6, circ6, d6};
  if (type == "(2C3>,3K2,C6>)") return {type, 6, [](int u, int v) { return mod(v - u, 6); }, z6};
  if (type == "(2K3,K{3,3})") return {type, 6, [](int u, int v) { return u / 3 == v / 3 ? 1 : 2; }, blocks};
  if (type == "(2C3>,K{3,3})")
    return {type, 6, [](int u, int v) { return u / 3 != v / 3 ? 1 : mod(v - u, 3) == 1 ? 2 : 3; }, dblocks};
  if (type == "(2C3>,3K2,3K2,3K2)")
    return {type, 6, s3_color,
            {Perm{1, 0, 4, 5, 2, 3}, Perm{3, 2, 5, 4, 0, 1}}};
  throw UnsupportedError("no fiber model for " + type);
}

struct PatternRecipe {
  std::string pattern;
  std::vector<std::pair<std::string, Sets>> models;  // fiber type → seed (omitted relation implicit)
};

const std::vector<PatternRecipe>& recipes() {
  static const std::vector<PatternRecipe> r = {
      {"(K4,2)", {{"(K4)", {{0, 1}}}}},
      {"(2K2,2)", {{"(2K2,2K2,2K2)", {{0, 1}}}, {"(2K2,C4)", {{0, 2}}}, {"(2K2,C4>)", {{0, 2}}}}},
      {"(C4,2)", {{"(2K2,C4)", {{0, 1}}}}},
      {"(K6,2)", {{"(K6)", {{0, 1}}}}},
      {"(K6,2,2)", {{"(K6)", {{0, 1}, {2, 3}}}}},
      {"(3K2,2)", {{"(3K2,K{2,2,2})", {{0, 1}}}, {"(2K3,3K2,C6)", {{0, 3}}}}},
      {"(3K2,2,2)",
       {{"(3K2,K{2,2,2})", {{0, 1}, {2, 3}}},
        {"(2K3,3K2,C6)", {{0, 3}, {1, 4}}},
        {"(3K2,C3>[K2])", {{0, 1}, {2, 3}}},
        {"(2C3>,3K2,C6>)", {{0, 3}, {1, 4}}}}},
      {"(C6,2;3K2,2)", {{"(2K3,3K2,C6)", {{0, 1}, {2, 5}}}}},
      {"(3K2,2;3K2,2)", {{"(2C3>,3K2,3K2,3K2)", {{0, 1}, {2, 4}}}}},
      {"(3K2,2;K{2,2,2},2)", {{"(3K2,K{2,2,2})", {{0, 1}, {2, 4}}}}},
      {"(K{3,3},2)", {{"(2K3,K{3,3})", {{0, 3}}}}},
      {"(K{3,3},2,2)", {{"(2K3,K{3,3})", {{0, 3}, {1, 4}}}}},
      {"(K6,3†)", {{"(K6)", {{0, 1, 2}}}}},
      {"(K6,3‡)", {{"(K6)/PSL(2,5)", {{5, 0, 1}}}}},
      {"(2K3,3)",
       {{"(2K3,K{3,3})", {{0, 1, 2}}},
        {"(2C3>,K{3,3})", {{0, 1, 2}}},
        {"(2K3,3K2,C6)", {{0, 2, 4}}},
        {"(2C3>,3K2,C6>)", {{0, 2, 4}}},
        {"(2C3>,3K2,3K2,3K2)", {{0, 3, 4}}}}},
      {"(K{2,2,2},3†)", {{"(3K2,K{2,2,2})", {{0, 2, 4}}}, {"(3K2,C3>[K2])", {{0, 2, 4}}}}},
      {"(K{2,2,2},3‡)", {{"(3K2,K{2,2,2})/even", {{0, 2, 4}}}, {"(3K2,C3>[K2])/even", {{0, 2, 4}}}}},
  };
  return r;
}

}  // namespace

std::vector<std::string> supported_pattern_specs() {
  std::vector<std::string> out;
  for (const auto& r : recipes()) out.push_back(r.pattern);
  for (const auto& c : cell_instances()) out.push_back(c.tuple);
  out.push_back("(7,7)");
  return out;
}

PatternInstance build_pattern_instance(const std::string& spec, int multiplicity, const std::string& s_type) {
  if (multiplicity < 1) throw ArgumentError("multiplicity must be positive");
  for (const auto& c : cell_instances())
    if (c.tuple == spec || (spec == "(7,7)" && c.r == 7)) {
      auto cc = coherent_closure(two_fiber(c.r, c.b, c.rel));
      int l = cc.fiber_of(c.r), s = cc.fiber_of(0);
      return {std::move(cc), l, s, spec, ""};
    }
  const PatternRecipe* rec = nullptr;
  for (const auto& r : recipes())
    if (r.pattern == spec) rec = &r;
  if (!rec) throw UnsupportedError("unsupported pattern spec " + spec);
  const std::pair<std::string, Sets>* pick = &rec->models.front();
  if (!s_type.empty()) {
    pick = nullptr;
    for (const auto& m : rec->models)
      if (fiber_model(m.first).type == s_type) pick = &m;
    if (!pick) throw UnsupportedError("fiber type " + s_type + " not available for " + spec);
  }
  FiberModel fm = fiber_model(pick->first);
  const Sets& seed = pick->second;
  int s = fm.size;
  // Orbit of the seed neighborhoods; each L vertex records the relation index per S vertex.
  std::vector<int> base(s, static_cast<int>(seed.size()));
  for (std::size_t k = 0; k < seed.size(); ++k)
    for (int v : seed[k]) base[v] = static_cast<int>(k);
  std::set<std::vector<int>> orbit;
  for (const auto& g : group_elements(s, fm.gens)) {
    std::vector<int> img(s);
    for (int v = 0; v < s; ++v) img[g[v]] = base[v];
    orbit.insert(img);
  }
  std::vector<std::vector<int>> parts(orbit.begin(), orbit.end());
  int l = static_cast<int>(parts.size()) * multiplicity, n = s + l;
  std::vector<Color> m(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      Color& x = m[static_cast<std::size_t>(u) * n + v];
      bool su = u < s, sv = v < s;
      if (su && sv) x = u == v ? 0 : fm.color(u, v);
      else if (!su && !sv) x = u == v ? 50 : 51;
      else if (!su) x = 60 + parts[(u - s) / multiplicity][v];
      else x = 80 + parts[(v - s) / multiplicity][u];
    }
  auto c = coherent_closure(ColoredDigraph(n, std::move(m)));
  if (c.fiber_count() != 2) throw IntegrityError("pattern seed for " + spec + " does not keep two fibers");
  int sf = c.fiber_of(0), lf = c.fiber_of(s);
  return {std::move(c), lf, sf, spec, fm.type};
}

CoherentConfiguration attach_pendant(const CoherentConfiguration& c, const std::vector<std::vector<int>>& blocks) {
  int n = c.n(), k = static_cast<int>(blocks.size());
  if (k == 0) throw ArgumentError("no pendant vertices");
  int f = -1;
  for (const auto& b : blocks)
    for (int v : b) {
      if (v < 0 || v >= n) throw RangeError("vertex out of range");
      if (f >= 0 && c.fiber_of(v) != f) throw ArgumentError("blocks span several fibers");
      f = c.fiber_of(v);
    }
  std::vector<int> block_of(n, -1);
  for (int i = 0; i < k; ++i)
    for (int v : blocks[i]) block_of[v] = i;
  Color bound = c.base().color_bound();
  int m = n + k;
  std::vector<Color> x(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Color col;
      if (i < n && j < n) col = c.at(i, j);
      else if (i >= n && j >= n) col = i == j ? bound : bound + 1;
      else {
        int p = i >= n ? i - n : j - n, v = i >= n ? j : i;
        int kind = c.fiber_of(v) != f ? 2 : block_of[v] == p ? 1 : 0;
        col = bound + 2 + (i >= n ? 0 : 3) + kind;
      }
      x[static_cast<std::size_t>(i) * m + j] = col;
    }
  return coherent_closure(ColoredDigraph(m, std::move(x)));
}

PatternInstance nondominating_instance(const std::string& spec, int multiplicity) {
  auto inst = build_pattern_instance(spec, multiplicity);
  const auto& l = inst.c.fibers()[inst.l];
  Color twin = -1;
  for (Color a : inst.c.relations(inst.l, inst.l))
    if (inst.c.meta(a).degree == 1 && inst.c.at(l[0], l[0]) != a) twin = a;
  if (twin < 0) throw UnsupportedError("L has no twin matching");
  std::vector<std::vector<int>> sides(2);
  std::vector<char> seen(inst.c.n(), 0);
  for (int u : l) {
    if (seen[u]) continue;
    for (int v : l)
      if (inst.c.at(u, v) == twin) seen[u] = seen[v] = 1, sides[0].push_back(u), sides[1].push_back(v);
  }
  auto c = attach_pendant(inst.c, sides);
  int lf = c.fiber_of(l[0]), sf = c.fiber_of(inst.c.fibers()[inst.s][0]);
  if (c.fibers()[lf].size() != l.size() || c.fibers()[sf].size() != inst.c.fibers()[inst.s].size() ||
      c.relations(c.fiber_of(inst.c.n()), sf).size() != 1)
    throw UnsupportedError("the pendant pair changes the fibers of " + spec);
  return {std::move(c), lf, sf, spec, inst.s_type};
}

}  // namespace wl
