#include "wl/critical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "wl/algebra.hpp"
#include "wl/universe.hpp"

namespace wl {

namespace {

constexpr int kAutLimit = 20;
constexpr int kRestBudget = 256;  // vertices of c−𝓡 for the exact extension check

void check_fiber(const CoherentConfiguration& c, int f) {
  if (f < 0 || f >= c.fiber_count()) throw RangeError("fiber " + std::to_string(f) + " out of range");
}

bool edge(const CoherentConfiguration& c, int r, int b) { return r != b && c.relations(r, b).size() > 1; }

std::vector<int> vertices_of(const CoherentConfiguration& c, const std::vector<int>& fs) {
  std::vector<int> vs;
  for (int f : fs) vs.insert(vs.end(), c.fibers()[f].begin(), c.fibers()[f].end());
  std::sort(vs.begin(), vs.end());
  return vs;
}

std::vector<int> complement_of(int n, const std::vector<int>& drop) {
  std::vector<char> out(n, 0);
  for (int v : drop) out[v] = 1;
  std::vector<int> keep;
  for (int v = 0; v < n; ++v)
    if (!out[v]) keep.push_back(v);
  return keep;
}

// Extension of φ (on b) to an automorphism of g = c[r ∪ b], vertices r then b.
std::optional<Perm> extend(const ColoredDigraph& g, int rs, const Perm& phi) {
  int n = g.n();
  int bound = g.color_bound();
  std::vector<int> cg(n), ch(n);
  for (int i = 0; i < rs; ++i) cg[i] = ch[i] = g.at(i, i);
  for (int j = 0; j + rs < n; ++j) {
    cg[rs + j] = bound + j;
    ch[rs + phi[j]] = bound + j;
  }
  return find_isomorphism(g, g, cg, ch);
}

// Restrictions of generators acting on `all` to the positions listed in `sub`.
std::vector<Perm> restrict_gens(const std::vector<Perm>& gens, const std::vector<int>& all, const std::vector<int>& sub) {
  std::map<int, int> pos_all, pos_sub;
  for (std::size_t i = 0; i < all.size(); ++i) pos_all[all[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < sub.size(); ++i) pos_sub[sub[i]] = static_cast<int>(i);
  std::vector<Perm> out;
  for (const auto& g : gens) {
    Perm p(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) p[i] = pos_sub.at(all[g[pos_all.at(sub[i])]]);
    out.push_back(p);
  }
  return out;
}

Perm identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::string list(const std::vector<int>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

}  // namespace

std::vector<int> detect_tiny(const CoherentConfiguration& c) {
  std::vector<int> out;
  for (int f = 0; f < c.fiber_count(); ++f)
    if (c.fibers()[f].size() <= 3) out.push_back(f);
  return out;
}

std::vector<FiberPair> detect_star(const CoherentConfiguration& c) {
  std::vector<FiberPair> out;
  for (int r = 0; r < c.fiber_count(); ++r)
    for (int b = 0; b < c.fiber_count(); ++b) {
      if (!edge(c, r, b)) continue;
      for (Color u : c.relations(b, r))
        if (c.meta(u).degree == 1) {
          out.push_back({r, b, u});
          break;
        }
    }
  return out;
}

CoherentConfiguration alternating_rewrite(const CoherentConfiguration& c, const AlternatingCycle& hit) {
  int n = c.n();
  std::vector<Color> m = c.base().colors();
  Color mark = c.base().color_bound(), mark_t = mark + 1;
  std::map<int, std::vector<int>> nb;
  for (int r : c.fibers()[hit.r])
    for (int b : c.fibers()[hit.b])
      if (c.at(r, b) == hit.u) nb[r].push_back(b), nb[b].push_back(r);
  std::vector<char> seen(n, 0);
  for (int start : c.fibers()[hit.r]) {
    if (seen[start]) continue;
    std::vector<int> cyc = {start};
    seen[start] = 1;
    int prev = -1, cur = start;
    for (;;) {
      const auto& ns = nb[cur];
      int next = ns[0] != prev ? ns[0] : ns[1];
      if (next == start) break;
      seen[next] = 1;
      cyc.push_back(next);
      prev = cur, cur = next;
    }
    int len = static_cast<int>(cyc.size());
    if (len % 4 != 2) continue;  // antipode lies in B only for odd half-length
    for (int i = 0; i < len; i += 2) {
      int r = cyc[i], b = cyc[(i + len / 2) % len];
      m[static_cast<std::size_t>(r) * n + b] = mark;
      m[static_cast<std::size_t>(b) * n + r] = mark_t;
    }
  }
  return coherent_closure(ColoredDigraph(n, std::move(m)));
}

std::vector<AlternatingCycle> detect_alternating_cycle(const CoherentConfiguration& c) {
  std::vector<AlternatingCycle> out;
  for (int r = 0; r < c.fiber_count(); ++r)
    for (int b = r + 1; b < c.fiber_count(); ++b) {
      int sz = static_cast<int>(c.fibers()[r].size());
      if (!edge(c, r, b) || sz % 2 == 0 || static_cast<int>(c.fibers()[b].size()) != sz) continue;
      Color u = -1;
      bool present = false;
      for (Color a : c.relations(r, b)) {
        if (c.meta(a).degree == 2 && u < 0) u = a;
        if (c.meta(a).degree == 1) present = true;
      }
      if (u < 0) continue;
      AlternatingCycle hit{r, b, u, present, present};
      if (!present) {
        auto d = alternating_rewrite(c, hit);
        int v0 = c.fibers()[r][0];
        int r2 = d.fiber_of(v0);
        for (int b2 = 0; b2 < d.fiber_count() && !hit.matching_emerges; ++b2) {
          if (c.fiber_of(d.fibers()[b2][0]) != b) continue;
          for (Color a : d.relations(r2, b2))
            if (d.meta(a).degree == 1 && d.fibers()[b2].size() == d.fibers()[r2].size()) hit.matching_emerges = true;
        }
      }
      out.push_back(hit);
    }
  return out;
}

AutomorphismList automorphisms(const CoherentConfiguration& c, std::vector<int> w) {
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  if (static_cast<int>(w.size()) > kAutLimit)
    throw ResourceError("automorphism search limited to " + std::to_string(kAutLimit) + " vertices");
  for (int v : w)
    if (v < 0 || v >= c.n()) throw RangeError("vertex out of range");
  AutomorphismList out;
  out.vertices = w;
  auto g = induced(c.base(), w);
  out.group = automorphism_group(g);
  out.elements = group_elements(g.n(), out.group.generators);
  return out;
}

RestorabilityResult is_restorable(const CoherentConfiguration& c, std::vector<int> fibers) {
  std::sort(fibers.begin(), fibers.end());
  fibers.erase(std::unique(fibers.begin(), fibers.end()), fibers.end());
  if (fibers.empty()) throw ArgumentError("empty fiber set");
  for (int f : fibers) check_fiber(c, f);
  if (static_cast<int>(fibers.size()) == c.fiber_count()) throw ArgumentError("fiber set must be proper");

  RestorabilityResult res;
  auto& cert = res.certificate;
  cert.removed = fibers;
  std::set<int> in(fibers.begin(), fibers.end());
  for (int f = 0; f < c.fiber_count(); ++f) {
    if (in.count(f)) continue;
    for (int r : fibers)
      if (edge(c, f, r)) {
        cert.neighbors.push_back(f);
        break;
      }
  }
  cert.r_vertices = vertices_of(c, cert.removed);
  cert.b_vertices = vertices_of(c, cert.neighbors);
  int rs = static_cast<int>(cert.r_vertices.size()), bs = static_cast<int>(cert.b_vertices.size());
  if (rs + bs > kAutLimit)
    throw ResourceError("|R ∪ B| = " + std::to_string(rs + bs) + " exceeds " + std::to_string(kAutLimit));

  // G1 = automorphisms of c[𝓑] extending to c−𝓡, as restrictions of Aut(c−𝓡).
  std::vector<Perm> gens;
  auto rest = complement_of(c.n(), cert.r_vertices);
  if (static_cast<int>(rest.size()) <= kRestBudget) {
    gens = restrict_gens(automorphism_group(induced(c.base(), rest)).generators, rest, cert.b_vertices);
  } else {
    res.exact = false;
    gens = automorphism_group(induced(c.base(), cert.b_vertices)).generators;
  }

  std::vector<int> rb = cert.r_vertices;
  rb.insert(rb.end(), cert.b_vertices.begin(), cert.b_vertices.end());
  auto g = induced(c.base(), rb);

  std::vector<Perm> rows;
  try {
    rows = group_elements(bs, gens, 1u << 12);
  } catch (const ResourceError&) {
    rows = gens;  // subgroup membership of the generators decides it
    rows.push_back(identity(bs));
  }
  for (const auto& phi : rows) {
    auto ext = extend(g, rs, phi);
    if (!ext) {
      res.failing = phi;
      res.restorable = false;
      cert.extensions.clear();
      return res;
    }
    cert.extensions.emplace_back(phi, *ext);
  }
  res.restorable = true;
  return res;
}

bool check_certificate(const CoherentConfiguration& c, const RemovalCertificate& cert) {
  std::vector<int> rb = cert.r_vertices;
  rb.insert(rb.end(), cert.b_vertices.begin(), cert.b_vertices.end());
  auto g = induced(c.base(), rb);
  auto gb = induced(c.base(), cert.b_vertices);
  int rs = static_cast<int>(cert.r_vertices.size()), bs = static_cast<int>(cert.b_vertices.size());
  for (const auto& [phi, ext] : cert.extensions) {
    if (static_cast<int>(phi.size()) != bs || static_cast<int>(ext.size()) != rs + bs) return false;
    if (!is_automorphism(gb, phi) || !is_automorphism(g, ext)) return false;
    for (int j = 0; j < bs; ++j)
      if (ext[rs + j] != rs + phi[j]) return false;
  }
  return !cert.extensions.empty();
}

bool is_taken_care_of(const CoherentConfiguration& c, int r, int y) {
  check_fiber(c, r);
  check_fiber(c, y);
  if (r == y) throw ArgumentError("R and Y must differ");
  const auto& rv = c.fibers()[r];
  auto nbhd = [&](int x, Color u) {
    std::vector<char> s(rv.size());
    for (std::size_t i = 0; i < rv.size(); ++i) s[i] = c.at(x, rv[i]) == u;
    return s;
  };
  // Neighborhoods bU_B available from fibers other than R and Y.
  std::vector<std::vector<char>> avail;
  for (int f = 0; f < c.fiber_count(); ++f) {
    if (f == r || f == y) continue;
    for (int b : c.fibers()[f])
      for (Color u : c.relations(f, r)) avail.push_back(nbhd(b, u));
  }
  std::sort(avail.begin(), avail.end());
  avail.erase(std::unique(avail.begin(), avail.end()), avail.end());
  for (int yv : c.fibers()[y])
    for (Color u : c.relations(y, r)) {
      auto target = nbhd(yv, u);
      bool found = false;
      for (const auto& s : avail) {
        bool sub = true;
        for (std::size_t i = 0; i < s.size() && sub; ++i) sub = !s[i] || target[i];
        if (sub) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  return true;
}

ModuleCheck small_module_check(const CoherentConfiguration& c, int s) {
  check_fiber(c, s);
  if (c.homogeneous()) throw ArgumentError("configuration is homogeneous");
  if (classify_size(static_cast<int>(c.fibers()[s].size())) != FiberClass::Small)
    throw ArgumentError("fiber is not small");
  ModuleCheck out;
  const auto& f = c.fibers()[s];
  int k = static_cast<int>(f.size());
  for (int parts : {2, 3}) {
    if (k % parts) continue;
    int sz = k / parts;
    std::vector<unsigned> mods;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      if (__builtin_popcount(mask) != sz) continue;
      std::vector<int> m;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) m.push_back(f[i]);
      if (is_module(c, m)) mods.push_back(mask);
    }
    // Exact cover by modules of equal size; the lowest uncovered vertex picks the next part.
    std::vector<unsigned> cur;
    std::function<bool(unsigned)> cover = [&](unsigned used) {
      if (used == (1u << k) - 1) return true;
      unsigned low = ~used & (used + 1);
      for (unsigned m : mods) {
        if (!(m & low) || (m & used)) continue;
        cur.push_back(m);
        if (cover(used | m)) return true;
        cur.pop_back();
      }
      return false;
    };
    if (!cover(0)) continue;
    for (unsigned m : cur) {
      std::vector<int> part;
      for (int i = 0; i < k; ++i)
        if (m >> i & 1) part.push_back(f[i]);
      out.modules.push_back(part);
      out.kept.push_back(part.front());
    }
    out.violation = true;
    return out;
  }
  return out;
}

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::RemoveTiny: return "remove-tiny";
    case StepKind::RemoveStarCenter: return "remove-star-center";
    case StepKind::RemoveRestorable: return "remove-restorable";
    case StepKind::CycleToStar: return "cycle-to-star";
    case StepKind::ModuleCollapse: return "module-collapse";
    case StepKind::Reclosure: return "re-closure";
  }
  return "?";
}

namespace {

struct State {
  CoherentConfiguration c;
  std::vector<int> kept;

  // Drops vertices (current numbering) and re-closes. Returns true when the
  // closure is finer than the plain restriction.
  bool drop(const std::vector<int>& vs) {
    auto keep = complement_of(c.n(), vs);
    auto sub = induced(c.base(), keep);
    int before = sub.num_colors();
    c = coherent_closure(sub);
    std::vector<int> k2;
    for (int v : keep) k2.push_back(kept[v]);
    kept = std::move(k2);
    return c.base().num_colors() != before;
  }

  std::vector<int> original(const std::vector<int>& vs) const {
    std::vector<int> out;
    for (int v : vs) out.push_back(kept[v]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

bool dominating(const CoherentConfiguration& c, const std::vector<int>& fs) {
  for (int f = 0; f < c.fiber_count(); ++f) {
    bool ok = std::find(fs.begin(), fs.end(), f) != fs.end();
    for (int r : fs) ok = ok || edge(c, f, r);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Reduction reduce_to_core(const CoherentConfiguration& input) {
  State st{input, identity(input.n())};
  ReductionTrace tr;
  std::set<std::string> skipped;

  auto removal = [&](StepKind kind, const std::vector<int>& fs, const std::vector<int>& vs, std::string tag,
                     std::string detail) {
    ReductionStep s{kind, fs, st.original(vs), -1, std::move(tag), std::move(detail)};
    tr.steps.push_back(s);
    if (st.drop(vs)) tr.steps.push_back({StepKind::Reclosure, {}, {}, -1, "re-closure", "closure refined the restriction"});
  };

  for (;;) {
    const auto& c = st.c;
    if (c.n() == 0) break;

    if (auto tiny = detect_tiny(c); !tiny.empty()) {
      removal(StepKind::RemoveTiny, tiny, vertices_of(c, tiny), "tiny-fiber", "fibers of size ≤ 3");
      continue;
    }
    if (auto stars = detect_star(c); !stars.empty()) {
      auto h = stars.front();
      removal(StepKind::RemoveStarCenter, {h.r}, vertices_of(c, {h.r}), "unique-neighbor-star",
              "every vertex of fiber " + std::to_string(h.b) + " has one neighbor in fiber " + std::to_string(h.r));
      continue;
    }
    bool fired = false;
    for (const auto& h : detect_alternating_cycle(c)) {
      if (h.matching_present || !h.matching_emerges) continue;
      tr.steps.push_back({StepKind::CycleToStar, {h.r, h.b}, {}, h.u, "odd-alternating-cycle",
                          "antipodal pairs form a matching"});
      st.c = alternating_rewrite(c, h);
      fired = true;
      break;
    }
    if (fired) continue;

    if (!c.homogeneous()) {
      for (int s = 0; s < c.fiber_count() && !fired; ++s) {
        if (classify_size(static_cast<int>(c.fibers()[s].size())) != FiberClass::Small) continue;
        auto mc = small_module_check(c, s);
        if (!mc.violation) continue;
        std::vector<int> drop;
        for (int v : c.fibers()[s])
          if (std::find(mc.kept.begin(), mc.kept.end(), v) == mc.kept.end()) drop.push_back(v);
        removal(StepKind::ModuleCollapse, {s}, drop, "module-collapse",
                "fiber splits into " + std::to_string(mc.modules.size()) + " modules");
        fired = true;
      }
      if (fired) continue;
    }

    std::vector<std::vector<int>> cands;
    for (int f = 0; f < c.fiber_count(); ++f) cands.push_back({f});
    for (int f = 0; f < c.fiber_count(); ++f)
      for (int g = f + 1; g < c.fiber_count(); ++g)
        if (edge(c, f, g)) cands.push_back({f, g});
    for (const auto& fs : cands) {
      if (dominating(c, fs)) continue;
      RestorabilityResult r;
      try {
        r = is_restorable(c, fs);
      } catch (const ResourceError& e) {
        skipped.insert("fibers " + list(st.original(vertices_of(c, fs))) + ": " + e.what());
        continue;
      }
      if (!r.restorable) continue;
      removal(StepKind::RemoveRestorable, fs, vertices_of(c, fs), "restorable-set",
              std::string(r.exact ? "extension check on c-R" : "stronger check on c[B]") + ", " +
                  std::to_string(r.certificate.extensions.size()) + " extensions");
      fired = true;
      break;
    }
    if (!fired) break;
  }
  tr.skipped.assign(skipped.begin(), skipped.end());
  return {st.c, st.kept, tr};
}

CoherentConfiguration replay(const CoherentConfiguration& c, const ReductionTrace& t) {
  State st{c, identity(c.n())};
  for (const auto& s : t.steps) {
    if (s.kind == StepKind::Reclosure) continue;
    if (s.kind == StepKind::CycleToStar) {
      AlternatingCycle h{s.fibers.at(0), s.fibers.at(1), s.relation, false, true};
      st.c = alternating_rewrite(st.c, h);
      continue;
    }
    std::vector<int> local;
    for (int v = 0; v < st.c.n(); ++v)
      if (std::binary_search(s.vertices.begin(), s.vertices.end(), st.kept[v])) local.push_back(v);
    if (local.size() != s.vertices.size()) throw IntegrityError("trace removes a vertex that is gone");
    st.drop(local);
  }
  return st.c;
}

int exact_wldim(const SimpleGraph& g, const std::vector<int>& vertex_colors) {
  int n = g.n();
  if (n > 7) throw UnsupportedError("exact WL-dimension limited to 7 vertices");
  std::vector<int> vc = vertex_colors.empty() ? std::vector<int>(n, 0) : vertex_colors;
  if (static_cast<int>(vc.size()) != n) throw ArgumentError("vertex color count mismatch");
  auto self = canonical_form(g, vc).first;

  std::vector<std::pair<SimpleGraph, std::vector<int>>> cands;
  std::set<std::uint64_t> codes = {self};
  std::vector<int> sorted = vc;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& h : graph_universe(n)) {
    auto col = sorted;
    do {
      if (codes.insert(canonical_form(h, col).first).second) cands.emplace_back(h, col);
    } while (std::next_permutation(col.begin(), col.end()));
  }

  auto gd = to_digraph(g, vc);
  std::vector<int> need(cands.size(), 1);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cands.size(); ++i) {
    auto hd = to_digraph(cands[i].first, cands[i].second);
    int k = 1;
    while (k < n && !distinguishes(gd, hd, k)) ++k;
    need[i] = k;
  }
  int best = 1;
  for (int k : need) best = std::max(best, k);
  return best;
}

}  // namespace wl
