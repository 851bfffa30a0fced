#include "wl/patterns.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "wl/algebra.hpp"
#include "wl/census.hpp"

namespace wl {

namespace {

struct Definition {
  std::string name;
  std::vector<std::string> groups;  // "graph:d,d", sorted
};

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> defs = [] {
    std::vector<Definition> d = {
        {"(K4,2)", {"K4:2"}},
        {"(2K2,2)", {"2K2:2"}},
        {"(C4,2)", {"C4:2"}},
        {"(K6,2)", {"K6:2"}},
        {"(K6,2,2)", {"K6:2,2"}},
        {"(3K2,2)", {"3K2:2"}},
        {"(3K2,2,2)", {"3K2:2,2"}},
        {"(C6,2;3K2,2)", {"C6:2", "3K2:2"}},
        {"(3K2,2;3K2,2)", {"3K2:2", "3K2:2"}},
        {"(3K2,2;K{2,2,2},2)", {"3K2:2", "K{2,2,2}:2"}},
        {"(K{3,3},2)", {"K{3,3}:2"}},
        {"(K{3,3},2,2)", {"K{3,3}:2,2"}},
        {"(K6,3†)", {"K6:3†"}},
        {"(K6,3‡)", {"K6:3‡"}},
        {"(2K3,3)", {"2K3:3†"}},
        {"(K{2,2,2},3†)", {"K{2,2,2}:3†"}},
        {"(K{2,2,2},3‡)", {"K{2,2,2}:3‡"}},
    };
    for (auto& x : d) std::sort(x.groups.begin(), x.groups.end());
    return d;
  }();
  return defs;
}

using Mask = unsigned;

struct Local {
  const CoherentConfiguration& c;
  int l, s, k;
  std::vector<Color> rel;                // I[L,S]
  std::vector<std::vector<Mask>> nb;     // per relation, ℓU as a mask over S positions
  std::vector<std::vector<Color>> ul;    // non-loop undirected classes of c[S]
  std::vector<int> cls;                  // k×k class index, -1 on the diagonal
  std::vector<int> clique;               // per relation: class hosting every ℓU, or -1
  std::vector<int> distinct;             // per relation: number of distinct ℓU

  Local(const CoherentConfiguration& cc, int l_, int s_) : c(cc), l(l_), s(s_) {
    const auto& sv = c.fibers()[s];
    const auto& lv = c.fibers()[l];
    k = static_cast<int>(sv.size());
    rel = c.relations(l, s);
    Color loop = c.fiber_color(s);
    for (auto& x : underlying_undirected(c, s))
      if (x[0] != loop) ul.push_back(x);
    cls.assign(static_cast<std::size_t>(k) * k, -1);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        Color x = c.at(sv[i], sv[j]);
        for (std::size_t q = 0; q < ul.size(); ++q)
          if (std::find(ul[q].begin(), ul[q].end(), x) != ul[q].end()) cls[i * k + j] = static_cast<int>(q);
      }
    for (Color u : rel) {
      std::vector<Mask> m;
      for (int v : lv) {
        Mask x = 0;
        for (int i = 0; i < k; ++i)
          if (c.at(v, sv[i]) == u) x |= 1u << i;
        m.push_back(x);
      }
      std::set<Mask> ds(m.begin(), m.end());
      distinct.push_back(static_cast<int>(ds.size()));
      clique.push_back(clique_class(m));
      nb.push_back(std::move(m));
    }
  }

  int clique_class(const std::vector<Mask>& m) const {
    int d = __builtin_popcount(m[0]);
    if (d != 2 && d != 3) return -1;
    int host = -2;
    for (Mask x : m) {
      std::vector<int> vs;
      for (int i = 0; i < k; ++i)
        if (x >> i & 1) vs.push_back(i);
      for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
          int q = cls[vs[a] * k + vs[b]];
          if (host == -2) host = q;
          if (q != host) return -1;
        }
    }
    return host;
  }

  std::vector<Mask> triangles(int q) const {
    std::vector<Mask> t;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        for (int x = b + 1; x < k; ++x)
          if (cls[a * k + b] == q && cls[a * k + x] == q && cls[b * k + x] == q) t.push_back(1u << a | 1u << b | 1u << x);
    return t;
  }

  int edges(int q) const {
    int e = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) e += cls[a * k + b] == q;
    return e;
  }

  std::string mark(std::size_t r, int q) const {
    std::set<Mask> seen(nb[r].begin(), nb[r].end());
    auto tri = triangles(q);
    std::set<Mask> ts(tri.begin(), tri.end());
    bool all = std::all_of(tri.begin(), tri.end(), [&](Mask t) { return seen.count(t) > 0; });
    if (all) return "†";
    Mask full = (1u << k) - 1;
    bool paired = std::all_of(tri.begin(), tri.end(), [&](Mask t) {
      return ts.count(full ^ t) && (seen.count(t) > 0) != (seen.count(full ^ t) > 0);
    });
    return paired ? "‡" : "?";
  }

  std::string graph_name(int q) const {
    return recognize_constituent(relation_graph(symmetrized(c, ul[q][0]))).name;
  }

  // Pattern with relation `o` omitted, or nullopt if some remaining relation
  // is not a clique relation.
  std::optional<InterspacePattern> build(std::size_t o) const {
    std::map<int, PatternGroup> by_class;
    for (std::size_t r = 0; r < rel.size(); ++r) {
      if (r == o) continue;
      int q = clique[r];
      if (q < 0) return std::nullopt;
      auto& g = by_class[q];
      g.u.push_back(rel[r]);
    }
    InterspacePattern p;
    p.l = l, p.s = s;
    p.omitted = rel[o];
    for (auto& [q, g] : by_class) {
      g.a = ul[q];
      g.graph = graph_name(q);
      g.edges = edges(q);
      g.triangles = static_cast<int>(triangles(q).size());
      auto idx = [&](Color u) { return static_cast<std::size_t>(std::find(rel.begin(), rel.end(), u) - rel.begin()); };
      std::sort(g.u.begin(), g.u.end(), [&](Color x, Color y) {
        int dx = distinct[idx(x)], dy = distinct[idx(y)];
        return dx != dy ? dx > dy : x < y;
      });
      for (Color u : g.u) {
        std::size_t r = idx(u);
        int d = __builtin_popcount(nb[r][0]);
        g.d.push_back(d);
        g.mark.push_back(d == 3 ? mark(r, q) : "");
        g.classes.push_back(distinct[r]);
      }
      p.groups.push_back(std::move(g));
    }
    std::sort(p.groups.begin(), p.groups.end(), [](const PatternGroup& x, const PatternGroup& y) {
      return x.classes[0] != y.classes[0] ? x.classes[0] > y.classes[0] : x.a[0] < y.a[0];
    });
    p.part_count = p.groups.empty() ? 1 : p.groups[0].classes[0];
    std::vector<std::string> key;
    for (const auto& g : p.groups) {
      std::vector<std::string> ds;
      for (std::size_t j = 0; j < g.d.size(); ++j) ds.push_back(std::to_string(g.d[j]) + g.mark[j]);
      std::sort(ds.begin(), ds.end());
      std::string e = g.graph + ":";
      for (std::size_t j = 0; j < ds.size(); ++j) e += (j ? "," : "") + ds[j];
      key.push_back(e);
    }
    std::sort(key.begin(), key.end());
    for (const auto& d : definitions())
      if (d.groups == key) p.name = d.name;
    return p;
  }
};

void check_edge(const CoherentConfiguration& c, int l, int s) {
  if (l < 0 || s < 0 || l >= c.fiber_count() || s >= c.fiber_count()) throw RangeError("unknown fiber");
  int k = static_cast<int>(c.fibers()[s].size());
  if (k != 4 && k != 6) throw UnsupportedError("interspace patterns need |S| ∈ {4,6}, got " + std::to_string(k));
  if (l == s || c.relations(l, s).size() < 2)
    throw ArgumentError("fibers " + std::to_string(l) + " and " + std::to_string(s) + " are not a quotient edge");
}

std::vector<InterspacePattern> all_matches(const CoherentConfiguration& c, int l, int s) {
  check_edge(c, l, s);
  Local loc(c, l, s);
  std::vector<InterspacePattern> out;
  std::set<std::string> names;
  for (std::size_t o = 0; o < loc.rel.size(); ++o) {
    auto p = loc.build(o);
    if (p && !p->name.empty() && names.insert(p->name).second) out.push_back(std::move(*p));
  }
  return out;
}

VertexPartition normalize(VertexPartition p) {
  for (auto& x : p) std::sort(x.begin(), x.end());
  std::sort(p.begin(), p.end());
  return p;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

}  // namespace

const std::vector<std::string>& pattern_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& d : definitions()) n.push_back(d.name);
    return n;
  }();
  return names;
}

std::vector<std::string> matching_patterns(const CoherentConfiguration& c, int l, int s) {
  std::vector<std::string> out;
  for (const auto& p : all_matches(c, l, s)) out.push_back(p.name);
  return out;
}

InterspacePattern classify_pattern(const CoherentConfiguration& c, int l, int s) {
  auto ms = all_matches(c, l, s);
  if (ms.empty()) throw IntegrityError("no interspace pattern matches (input not critical or not coherent)");
  if (ms.size() > 1) {
    std::vector<std::string> names;
    for (const auto& p : ms) names.push_back(p.name);
    throw IntegrityError("several interspace patterns match: " + join(names));
  }
  return ms[0];
}

int predicted_part_count(const InterspacePattern& p) {
  if (p.groups.empty()) return 1;
  const auto& g = p.groups[0];
  if (g.d[0] == 2) return g.edges;
  if (g.mark[0] == "†") return g.triangles;
  if (g.mark[0] == "‡") return g.triangles / 2;
  return -1;
}

VertexPartition neighborhood_partition(const CoherentConfiguration& c, int l, Color u) {
  const auto& m = c.meta(u);
  if (m.source != l) throw ArgumentError("relation does not start in fiber " + std::to_string(l));
  const auto& sv = c.fibers()[m.target];
  std::map<std::vector<int>, std::vector<int>> classes;
  for (int v : c.fibers()[l]) {
    std::vector<int> nb;
    for (int w : sv)
      if (c.at(v, w) == u) nb.push_back(w);
    classes[nb].push_back(v);
  }
  VertexPartition p;
  for (auto& [nb, vs] : classes) p.push_back(std::move(vs));
  return normalize(std::move(p));
}

VertexPartition partition_meet(const VertexPartition& a, const VertexPartition& b) {
  std::map<int, int> pa, pb;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int v : a[i]) pa[v] = static_cast<int>(i);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (int v : b[i]) pb[v] = static_cast<int>(i);
  std::map<std::pair<int, int>, std::vector<int>> cells;
  for (auto [v, i] : pa) {
    auto it = pb.find(v);
    if (it == pb.end()) throw ArgumentError("partitions cover different sets");
    cells[{i, it->second}].push_back(v);
  }
  if (pa.size() != pb.size()) throw ArgumentError("partitions cover different sets");
  VertexPartition p;
  for (auto& [key, vs] : cells) p.push_back(std::move(vs));
  return normalize(std::move(p));
}

EquivalenceClasses equivalence_classes(const CoherentConfiguration& c, int l, const std::vector<int>& small) {
  if (small.empty()) throw ArgumentError("need at least one small fiber");
  EquivalenceClasses e;
  e.l = l;
  e.small = small;
  e.meet = {c.fibers()[l]};
  for (int s : small) {
    auto p = classify_pattern(c, l, s);
    std::vector<VertexPartition> parts;
    VertexPartition meet = {c.fibers()[l]};
    for (const auto& g : p.groups)
      for (Color u : g.u) {
        parts.push_back(neighborhood_partition(c, l, u));
        meet = partition_meet(meet, parts.back());
      }
    e.meet = partition_meet(e.meet, meet);
    e.patterns.push_back(std::move(p));
    e.part.push_back(std::move(parts));
    e.per_fiber.push_back(std::move(meet));
  }
  return e;
}

PartitionStructure partition_structure(const CoherentConfiguration& c, int l, const std::vector<int>& small) {
  auto e = equivalence_classes(c, l, small);
  PartitionStructure ps;
  ps.parts = e.meet;
  int p = static_cast<int>(ps.parts.size());
  // Neighborhood sets per representative and relation, grouped by target fiber.
  std::vector<std::vector<std::vector<int>>> nb(p);  // [part][relation] → sorted targets
  std::vector<int> target;
  std::vector<Color> rels;
  for (int s : small)
    for (Color u : c.relations(l, s)) rels.push_back(u), target.push_back(s);
  for (int i = 0; i < p; ++i) {
    int v = ps.parts[i][0];
    for (std::size_t r = 0; r < rels.size(); ++r) {
      std::vector<int> x;
      for (int w : c.fibers()[target[r]])
        if (c.at(v, w) == rels[r]) x.push_back(w);
      nb[i].push_back(std::move(x));
    }
  }
  std::map<std::vector<int>, Color> ids;
  std::vector<Color> m(static_cast<std::size_t>(p) * p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      std::vector<int> eta;
      for (std::size_t a = 0; a < rels.size(); ++a)
        for (std::size_t b = 0; b < rels.size(); ++b) {
          if (target[a] != target[b]) continue;
          std::vector<int> both;
          std::set_intersection(nb[i][a].begin(), nb[i][a].end(), nb[j][b].begin(), nb[j][b].end(),
                                std::back_inserter(both));
          eta.push_back(static_cast<int>(both.size()));
        }
      eta.push_back(i == j);
      auto it = ids.emplace(eta, static_cast<Color>(ids.size())).first;
      m[static_cast<std::size_t>(i) * p + j] = it->second;
    }
  ColoredDigraph g(p, std::move(m));
  ps.coherent = verify_coherence(g).ok();
  ps.config = CoherentConfiguration(std::move(g));
  if (p > 64) {
    ps.type = "(" + std::to_string(p) + " parts, rank " + std::to_string(ps.config.rank()) + ")";
  } else if (ps.config.fiber_count() == 1) {
    ps.type = to_string(type_tuple(ps.config, 0));
  } else {
    std::vector<std::string> sizes;
    for (const auto& f : ps.config.fibers()) sizes.push_back(std::to_string(f.size()));
    ps.type = "fibers" + to_string(sizes);
  }
  return ps;
}

std::string expected_structure_type(const std::string& pattern, const std::string& s_type) {
  struct Row {
    std::string pattern;
    std::vector<std::string> s_types;
    std::string structure;
  };
  static const std::vector<Row> rows = {
      {"(K4,2)", {"(K4)"}, "(3K2,K{2,2,2})"},
      {"(2K2,2)", {"(2K2,2K2,2K2)", "(2K2,C4)", "(2K2,C4>)"}, "(K2)"},
      {"(C4,2)", {"(2K2,C4)"}, "(2K2,C4)"},
      {"(3K2,2)", {"(3K2,K{2,2,2})", "(2K3,3K2,C6)"}, "(K3)"},
      {"(3K2,2,2)", {"(3K2,K{2,2,2})", "(2K3,3K2,C6)"}, "(2C3>,3K2,3K2,3K2)"},
      {"(3K2,2,2)", {"(3K2,C3>[K2])", "(2C3>,3K2,C6>)"}, "(C3>)"},
      {"(C6,2;3K2,2)", {"(2K3,3K2,C6)"}, "(2K3,3K2,C6)"},
      {"(2K3,3)",
       {"(2K3,K{3,3})", "(2C3>,K{3,3})", "(2K3,3K2,C6)", "(2C3>,3K2,C6>)", "(2C3>,3K2,3K2,3K2)"},
       "(K2)"},
      {"(3K2,2;3K2,2)", {"(2C3>,3K2,3K2,3K2)"}, "(K3)"},
      {"(K{2,2,2},3†)", {"(3K2,K{2,2,2})", "(3K2,C3>[K2])"}, "(2K4,4K2,K{4,4}-4K2)"},
      {"(K{2,2,2},3‡)", {"(3K2,K{2,2,2})", "(3K2,C3>[K2])"}, "(K4)"},
  };
  for (const auto& r : rows)
    if (r.pattern == pattern && std::find(r.s_types.begin(), r.s_types.end(), s_type) != r.s_types.end())
      return r.structure;
  return "";
}

bool fully_intersecting(const CoherentConfiguration& c, int s1, int l, int s2) {
  if (s1 == s2) throw ArgumentError("fully_intersecting needs two distinct small fibers");
  auto p1 = classify_pattern(c, l, s1), p2 = classify_pattern(c, l, s2);
  auto a = neighborhood_partition(c, l, p1.groups[0].u[0]);
  auto b = neighborhood_partition(c, l, p2.groups[0].u[0]);
  return partition_meet(a, b).size() == a.size() * b.size();
}

DivisorReport divisor_check(const CoherentConfiguration& c, int r, int b, int y, Color u, Color u2) {
  int f = c.fiber_count();
  if (r < 0 || b < 0 || y < 0 || r >= f || b >= f || y >= f || r == b || b == y || r == y)
    throw ArgumentError("path needs three distinct known fibers");
  if (c.relations(r, b).size() < 2 || c.relations(y, b).size() < 2 || c.relations(r, y).size() != 1)
    throw ArgumentError("(R,B,Y) is not an induced path in the quotient graph");
  if (c.meta(u).source != r || c.meta(u).target != b) throw ArgumentError("U must lie in I[R,B]");
  if (c.meta(u2).source != y || c.meta(u2).target != b) throw ArgumentError("U' must lie in I[Y,B]");
  DivisorReport rep;
  rep.du = c.meta(u).degree;
  rep.du2 = c.meta(u2).degree;
  const auto& bv = c.fibers()[b];
  rep.b_size = static_cast<int>(bv.size());
  int common = -1;
  for (int x : c.fibers()[r])
    for (int z : c.fibers()[y]) {
      int q = 0;
      for (int w : bv) q += c.at(x, w) == u && c.at(z, w) == u2;
      if (common >= 0 && q != common) throw IntegrityError("|rU ∩ yU'| is not constant (input not coherent)");
      common = q;
    }
  rep.common = common;
  rep.identity = rep.du * rep.du2 == rep.b_size * common;
  if (!rep.identity)
    throw IntegrityError("d(U)·d(U') = " + std::to_string(rep.du * rep.du2) + " but |B|·|rU ∩ yU'| = " +
                         std::to_string(rep.b_size * common));
  rep.b_prime = rep.b_size > 1;
  for (int d = 2; d * d <= rep.b_size; ++d)
    if (rep.b_size % d == 0) rep.b_prime = false;
  return rep;
}

std::vector<EdgeClassification> classify_all(const CoherentConfiguration& c) {
  std::vector<EdgeClassification> jobs;
  int f = c.fiber_count();
  for (int a = 0; a < f; ++a)
    for (int b = 0; b < f; ++b) {
      if (a == b || c.relations(a, b).size() < 2) continue;
      auto k = c.fibers()[b].size();
      if (k != 4 && k != 6) continue;
      EdgeClassification e;
      e.l = a, e.s = b;
      jobs.push_back(e);
    }
  c.intersection_table();
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto& e = jobs[i];
    try {
      e.pattern = classify_pattern(c, e.l, e.s);
      e.structure = partition_structure(c, e.l, {e.s}).type;
      e.ok = true;
    } catch (const Error& ex) {
      e.error = ex.what();
    }
  }
  return jobs;
}

}  // namespace wl
