// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "wl/algebra.hpp"
#include "wl/bounds.hpp"
#include "wl/census.hpp"
#include "wl/critical.hpp"
#include "wl/graphs.hpp"
#include "wl/iso.hpp"
#include "wl/patterns.hpp"
#include "wl/universe.hpp"

using namespace wl;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void fail(const std::string& why) {
    if (ok) note.str("");
    ok = false;
    note << why << "; ";
  }
};

CoherentConfiguration closure_of(const SimpleGraph& g, const std::vector<int>& colors = {}) {
  return coherent_closure(to_digraph(g, colors));
}

SimpleGraph circulant(int n, const std::vector<int>& jumps) {
  SimpleGraph g(n);
  for (int v = 0; v < n; ++v)
    for (int j : jumps)
      if (j % n) g.add_edge(v, (v + j) % n);
  return g;
}

// ---------------------------------------------------------------------------

void census_counts(Outcome& o) {
  const std::map<int, std::multiset<std::string>> expected = {
      {1, {"(K1)"}},
      {2, {"(K2)"}},
      {3, {"(K3)", "(C3>)"}},
      {4, {"(K4)", "(2K2,C4)", "(2K2,2K2,2K2)", "(2K2,C4>)"}},
      {5, {"(K5)", "(C5,C5)", "(C5>,C5>)"}},
      {6,
       {"(K6)", "(2K3,K{3,3})", "(2C3>,K{3,3})", "(3K2,K{2,2,2})", "(3K2,C3>[K2])", "(2K3,3K2,C6)",
        "(2C3>,3K2,C6>)", "(2C3>,3K2,3K2,3K2)"}},
      {7, {"(K7)", "(C7,C7,C7)", "(PTr(7))", "(C7>,C7>,C7>)"}},
  };
  std::size_t total = 0;
  for (const auto& [n, want] : expected) {
    auto es = enumerate_homogeneous(n);
    std::multiset<std::string> got;
    for (const auto& e : es) got.insert(to_string(e.type));
    if (got != want) o.fail("order " + std::to_string(n) + " differs");
    total += es.size();
  }
  if (total != 23) o.fail("total " + std::to_string(total));
  o.note << "23 configurations over orders 1..7";
}

void interspace_table(Outcome& o) {
  const std::map<std::pair<int, int>, std::set<std::string>> cells = {
      {{4, 4}, {"(2K{2,2},2K{2,2})", "(C8,C8)"}},
      {{4, 6}, {"(2K{2,3},2K{2,3})", "(I(K4,6),I(K4,6))"}},
      {{6, 6}, {"(2K{3,3},2K{3,3})", "(3K{2,2},3K{2,2},3K{2,2})", "(3K{2,2},C12,C12)", "(3K{2,2},RxB-3K{2,2})"}},
      {{7, 7}, {"(I(F),RxB-I(F))"}},
  };
  int realized = 0;
  for (const auto& [rb, want] : cells) {
    auto cen = enumerate_small_interspaces(rb.first, rb.second, rb.first == 4 && rb.second == 4);
    std::set<std::string> have;
    for (const auto& e : cen.entries) {
      have.insert(to_string(e.type));
      if (!verify_coherence(e.representative.base()).ok()) o.fail("representative not coherent");
      if (e.representative.fiber_count() != 2) o.fail("representative does not have two fibers");
      ++realized;
    }
    if (have != want) o.fail("cell (" + std::to_string(rb.first) + "," + std::to_string(rb.second) + ") differs");
    if (rb.first == 4 && rb.second == 4 && !cen.exhaustive) o.fail("(4,4) not exhaustive");
  }
  if (realized != 9) o.fail("realized " + std::to_string(realized));
  o.note << realized << " types realized, (4,4) exhaustive";
}

void two_wl_completeness(Outcome& o) {
  long long pairs = 0, buckets = 0;
  for (int n = 1; n <= 7; ++n) {
    const auto& u = graph_universe(n);
    std::vector<ColoredDigraph> gs;
    for (const auto& g : u) gs.push_back(to_digraph(g));
    auto hist = batch_histograms(gs, 2);
    std::map<std::vector<std::pair<Color, int>>, std::vector<int>> bucket;
    for (std::size_t i = 0; i < gs.size(); ++i) bucket[hist[i]].push_back(static_cast<int>(i));
    buckets += static_cast<long long>(bucket.size());
    pairs += static_cast<long long>(gs.size()) * (static_cast<long long>(gs.size()) - 1) / 2;
    for (const auto& [h, members] : bucket)
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          const auto& g = gs[members[a]];
          const auto& k = gs[members[b]];
          if (!distinguishes(g, k, 2) && !find_isomorphism(g, k))
            o.fail("non-isomorphic pair at n=" + std::to_string(n) + " not distinguished");
        }
  }
  // Cross-check the bucketing against pairwise refinement.
  std::mt19937_64 rng(2024);
  const auto& u7 = graph_universe(7);
  for (int t = 0; t < 500; ++t) {
    auto a = u7[rng() % u7.size()], b = u7[rng() % u7.size()];
    if (!(a == b) && !distinguishes(to_digraph(a), to_digraph(b), 2)) o.fail("pairwise check disagrees");
  }
  for (int t = 0; t < 1000; ++t) {
    int n = 1 + static_cast<int>(rng() % 7);
    const auto& u = graph_universe(n);
    auto g = u[rng() % u.size()];
    auto p = graphs::random_permutation(n, rng);
    if (distinguishes(to_digraph(g), to_digraph(graphs::relabel(g, p)), 2)) o.fail("permuted pair distinguished");
  }
  o.note << pairs << " pairs in " << buckets << " buckets, 1000 permuted pairs";
}

void strongly_regular(Outcome& o) {
  auto r = to_digraph(graphs::rook(4)), s = to_digraph(graphs::shrikhande());
  if (distinguishes(r, s, 2)) o.fail("distinguished at k=2");
  if (!distinguishes(r, s, 3)) o.fail("not distinguished at k=3");
  o.note << "k=2 no, k=3 yes";
}

void cfi_harness(Outcome& o) {
  auto k4 = graphs::complete(4);
  auto a = cfi(k4), b = cfi(k4, {{0, 1}});
  if (a.graph.n() != 16 || b.graph.n() != 16) o.fail("wrong order");
  if (find_isomorphism(to_digraph(a.graph), to_digraph(b.graph))) o.fail("isomorphic");
  auto c2 = cfi_lower_bound_check(k4, 2), c3 = cfi_lower_bound_check(k4, 3);
  if (c2.distinguished) o.fail("distinguished at k=2");
  if (!c3.distinguished) o.fail("not distinguished at k=3");
  if (c2.tw != 3 || !c2.tw_exact) o.fail("tw(K4) != 3");
  if (!c2.consistent || !c3.consistent) o.fail("inconsistent with the treewidth lower bound");
  o.note << "16+16 vertices, non-isomorphic, k=2 no, k=3 yes, tw=3";
}

void coherence_suite(Outcome& o) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 1000; ++it) {
    int n = 1 + static_cast<int>(rng() % 12);
    auto g = (it % 2) ? graphs::random_digraph(n, 1 + rng() % 3, 1 + rng() % 3, rng)
                      : graphs::random_symmetric_digraph(n, 1 + rng() % 2, 1 + rng() % 3, rng);
    auto c = coherent_closure(g);
    if (!verify_coherence(c.base()).ok()) o.fail("closure not coherent");
    if (!(coherent_closure(c.base()) == c)) o.fail("closure not idempotent");
    for (Color a = 0; a < c.rank(); ++a) {
      const auto& m = c.meta(a);
      const auto& t = c.meta(m.transpose);
      if (c.fibers()[m.source].size() * m.degree != c.fibers()[m.target].size() * t.degree) o.fail("handshake");
    }
  }
  o.note << "1000 random colored digraphs, n <= 12";
}

void individualization_inequality(Outcome& o) {
  long long checks = 0;
  for (int n = 1; n <= 6; ++n)
    for (const auto& g : graph_universe(n)) {
      int d = exact_wldim(g);
      for (int v = 0; v < n; ++v) {
        std::vector<int> colors(n, 0);
        colors[v] = 1;
        int dv = exact_wldim(g, colors);
        if (d > 1 + std::max(2, dv)) o.fail("violated");
        ++checks;
      }
    }
  o.note << checks << " (graph, vertex) pairs";
}

struct PatternCase {
  std::string pattern, s_type;
  int parts;
};

const std::vector<PatternCase> pattern_cases = {
    {"(K4,2)", "(K4)", 6},
    {"(2K2,2)", "(2K2,2K2,2K2)", 2},
    {"(2K2,2)", "(2K2,C4)", 2},
    {"(2K2,2)", "(2K2,C4>)", 2},
    {"(C4,2)", "(2K2,C4)", 4},
    {"(K6,2)", "(K6)", 15},
    {"(K6,2,2)", "(K6)", 15},
    {"(3K2,2)", "(3K2,K{2,2,2})", 3},
    {"(3K2,2)", "(2K3,3K2,C6)", 3},
    {"(3K2,2,2)", "(3K2,K{2,2,2})", 3},
    {"(3K2,2,2)", "(2K3,3K2,C6)", 3},
    {"(3K2,2,2)", "(3K2,C3>[K2])", 3},
    {"(3K2,2,2)", "(2C3>,3K2,C6>)", 3},
    {"(C6,2;3K2,2)", "(2K3,3K2,C6)", 6},
    {"(3K2,2;3K2,2)", "(2C3>,3K2,3K2,3K2)", 3},
    {"(3K2,2;K{2,2,2},2)", "(3K2,K{2,2,2})", 12},
    {"(K{3,3},2)", "(2K3,K{3,3})", 9},
    {"(K{3,3},2,2)", "(2K3,K{3,3})", 9},
    {"(K6,3†)", "(K6)", 20},
    {"(K6,3‡)", "(K6)", 10},
    {"(2K3,3)", "(2K3,K{3,3})", 2},
    {"(2K3,3)", "(2C3>,K{3,3})", 2},
    {"(2K3,3)", "(2K3,3K2,C6)", 2},
    {"(2K3,3)", "(2C3>,3K2,C6>)", 2},
    {"(2K3,3)", "(2C3>,3K2,3K2,3K2)", 2},
    {"(K{2,2,2},3†)", "(3K2,K{2,2,2})", 8},
    {"(K{2,2,2},3†)", "(3K2,C3>[K2])", 8},
    {"(K{2,2,2},3‡)", "(3K2,K{2,2,2})", 4},
    {"(K{2,2,2},3‡)", "(3K2,C3>[K2])", 4},
};

void pattern_tables(Outcome& o) {
  int structures = 0;
  std::set<std::string> covered;
  for (const auto& pc : pattern_cases)
    for (int mult : {1, 2}) {
      auto inst = build_pattern_instance(pc.pattern, mult, pc.s_type);
      auto names = matching_patterns(inst.c, inst.l, inst.s);
      if (names.size() != 1) {
        o.fail(pc.pattern + " matches " + std::to_string(names.size()) + " patterns");
        continue;
      }
      auto p = classify_pattern(inst.c, inst.l, inst.s);
      if (p.name != pc.pattern) o.fail(pc.pattern + " classified as " + p.name);
      if (to_string(type_tuple(inst.c, inst.s)) != pc.s_type) o.fail(pc.pattern + " fiber type differs");
      if (p.part_count != pc.parts || predicted_part_count(p) != pc.parts) o.fail(pc.pattern + " |Part| differs");
      covered.insert(p.name);
      if (mult != 1 || pc.parts > 8) continue;
      auto want = expected_structure_type(pc.pattern, pc.s_type);
      if (want.empty()) continue;
      if (partition_structure(inst.c, inst.l, {inst.s}).type != want) o.fail(pc.pattern + " structure differs");
      ++structures;
    }
  if (covered.size() != 17) o.fail("patterns covered: " + std::to_string(covered.size()));
  o.note << pattern_cases.size() << " (pattern, fiber type) rows, " << structures << " structure rows";
}

// Closures with induced quotient paths: B = Z_a × Z_b carries a random Cayley
// graph, R = Z_a and Y = Z_b see B through random difference sets in one
// coordinate each, optionally with a pendant fiber W = Z_a on R. The group
// Z_a × Z_b acts regularly on R × Y, so R and Y stay non-adjacent.
CoherentConfiguration product_instance(std::mt19937_64& rng) {
  int a = 2 + static_cast<int>(rng() % 4), b = 2 + static_cast<int>(rng() % 4);
  bool pendant = rng() % 2;
  int nr = a, nb = a * b, ny = b, nw = pendant ? a : 0;
  int n = nr + nb + ny + nw;
  auto part = [&](int v) { return v < nr ? 0 : v < nr + nb ? 1 : v < nr + nb + ny ? 2 : 3; };
  auto subset = [&](int m) {
    std::vector<bool> s(m);
    while (std::count(s.begin(), s.end(), true) == 0 || std::count(s.begin(), s.end(), true) == m)
      for (int i = 0; i < m; ++i) s[i] = rng() % 2;
    return s;
  };
  auto ja = subset(a), jb = subset(b), jw = subset(a);
  std::vector<bool> cay(nb);
  for (int d = 1; d < nb; ++d)
    if (rng() % 3 == 0) cay[d] = cay[(nb - d) % nb] = true;
  std::vector<Color> m(static_cast<std::size_t>(n) * n);
  auto set = [&](int u, int v, Color x) { m[static_cast<std::size_t>(u) * n + v] = x; };
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) set(u, v, u == v ? part(u) : 10 + 4 * part(u) + part(v));
  auto bx = [&](int i) { return i % a; };
  auto by = [&](int i) { return i / a; };
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      int d = ((bx(j) - bx(i) + a) % a) + a * ((by(j) - by(i) + b) % b);
      if (i != j && cay[d]) set(nr + i, nr + j, 40);
    }
    for (int r = 0; r < nr; ++r)
      if (ja[(bx(i) - r + a) % a]) set(r, nr + i, 41), set(nr + i, r, 42);
    for (int y = 0; y < ny; ++y)
      if (jb[(by(i) - y + b) % b]) set(nr + nb + y, nr + i, 43), set(nr + i, nr + nb + y, 44);
  }
  for (int w = 0; w < nw; ++w)
    for (int r = 0; r < nr; ++r)
      if (jw[(r - w + a) % a]) set(nr + nb + ny + w, r, 45), set(r, nr + nb + ny + w, 46);
  return coherent_closure(ColoredDigraph(n, std::move(m)));
}

std::vector<CoherentConfiguration> random_suite(std::mt19937_64& rng, int count) {
  std::vector<CoherentConfiguration> out;
  for (int i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      out.push_back(product_instance(rng));
    } else if (i % 4 == 1) {
      int n = 2 + static_cast<int>(rng() % 10);
      out.push_back(coherent_closure(graphs::random_symmetric_digraph(n, 1 + rng() % 2, 1 + rng() % 3, rng)));
    } else {
      int m = 2 + static_cast<int>(rng() % 3);
      int n = m * (2 + static_cast<int>(rng() % 6));
      std::vector<int> jumps = {1 + static_cast<int>(rng() % (n - 1)), 1 + static_cast<int>(rng() % (n - 1))};
      std::vector<int> colors(n);
      for (int v = 0; v < n; ++v) colors[v] = v % m;
      out.push_back(closure_of(circulant(n, jumps), colors));
    }
  }
  return out;
}

void divisor_identity(Outcome& o) {
  std::mt19937_64 rng(9);
  long long paths = 0, checks = 0;
  for (const auto& c : random_suite(rng, 400)) {
    auto q = quotient_graph(c);
    int f = c.fiber_count();
    for (int b = 0; b < f; ++b)
      for (int r = 0; r < f; ++r)
        for (int y = r + 1; y < f; ++y) {
          if (r == b || y == b || !q.graph.adj(r, b) || !q.graph.adj(y, b) || q.graph.adj(r, y)) continue;
          ++paths;
          for (Color u : c.relations(r, b))
            for (Color u2 : c.relations(y, b)) {
              try {
                auto rep = divisor_check(c, r, b, y, u, u2);
                if (!rep.identity) o.fail("identity fails");
                if (rep.b_prime) o.fail("|B| prime on an induced path");
              } catch (const Error& e) {
                o.fail(e.what());
              }
              ++checks;
            }
        }
  }
  if (paths == 0) o.fail("no induced paths in the suite");
  o.note << paths << " induced paths, " << checks << " relation pairs";
}

void potential_accounting(Outcome& o) {
  auto c8 = closure_of(graphs::cycle(8));
  if (potential(parameters(c8)) != Rational(4, 5)) o.fail("tau(8,1,0)");
  if (potential(Parameters{}) != Rational(0)) o.fail("tau(0,0,0)");
  if (potential(Parameters{0, 0, 6}) != Rational(6, 20)) o.fail("tau(0,0,6)");
  if (h_function(Rational(1, 8)) != Rational(-3, 20)) o.fail("h(1/8)");
  if (h_function(Rational(1, 2)) != Rational(-2, 5)) o.fail("h(1/2)");
  if (h_function(Rational(1, 3)) != Rational(-2, 5)) o.fail("h(1/3)");

  std::mt19937_64 rng(17);
  int splits = 0;
  while (splits < 1000) {
    int n = 8 + static_cast<int>(rng() % 57);
    auto g = circulant(n, {1, 1 + static_cast<int>(rng() % (n - 1))});
    auto base = closure_of(g);
    if (base.fiber_count() != 1) continue;
    std::vector<int> colors(n);
    int k = 1 + static_cast<int>(rng() % 4);
    for (int& x : colors) x = static_cast<int>(rng() % k);
    auto rep = check_progress_in_large(base, closure_of(g, colors));
    if (!rep.holds) o.fail("progress inequality at n=" + std::to_string(n));
    ++splits;
  }
  auto inst = nondominating_instance("(3K2,2,2)");
  auto r = apply_local_reduction(inst.c, "L-S/(3K2,2,2)");
  if (!r.applied) o.fail("rule did not apply: " + r.miss);
  else if (!(r.delta <= Rational(-11, 10))) o.fail("delta tau " + to_string(r.delta));
  o.note << splits << " splits, (3K2,2,2) delta tau = " << to_string(r.delta);
}

void limit_audits(Outcome& o) {
  std::mt19937_64 rng(31);
  int audited = 0;
  for (int i = 0; i < 200; ++i) {
    int n = 8 + static_cast<int>(rng() % 57);
    auto base = closure_of(circulant(n, {1 + static_cast<int>(rng() % (n - 1)), 1 + static_cast<int>(rng() % (n - 1))}));
    int d = 1 + static_cast<int>(rng() % 8);
    if (i % 2 == 0) {
      auto r = limit_color_valence(base, d);
      if (static_cast<long long>(r.individualized.size()) * d > 2LL * n) o.fail("valence bound exceeded");
      if (max_nonmaximal_degree(r.result) > d) o.fail("valence contract");
    } else {
      int cap = 1 + static_cast<int>(rng() % 16);
      auto r = limit_fiber_size(base, cap, d);
      // |S| ≤ 2n/d + dn/cap, cleared of denominators.
      if (static_cast<long long>(r.individualized.size()) * d * cap > 2LL * n * cap + 1LL * d * d * n)
        o.fail("fiber size bound exceeded");
      if (max_nonmaximal_degree(r.result) > d) o.fail("fiber size valence contract");
      if (max_module_fiber_size(r.result) > cap) o.fail("fiber size contract");
    }
    ++audited;
  }
  o.note << audited << " instances";
}

int treewidth_oracle(const SimpleGraph& g) {
  int n = g.n();
  if (n == 0) return -1;
  std::vector<unsigned> adj(n, 0);
  for (auto [u, v] : g.edges()) adj[u] |= 1u << v, adj[v] |= 1u << u;
  // Vertices outside s ∪ {v} reachable from v through s.
  auto q = [&](unsigned s, int v) {
    unsigned comp = 1u << v, frontier = 1u << v;
    while (frontier) {
      int x = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      unsigned nb = adj[x] & s & ~comp;
      comp |= nb;
      frontier |= nb;
    }
    unsigned out = 0;
    for (unsigned m = comp; m; m &= m - 1) out |= adj[__builtin_ctz(m)];
    return __builtin_popcount(out & ~s & ~(1u << v));
  };
  std::vector<int> tw(1u << n, 1 << 20);
  tw[0] = -1;
  for (unsigned s = 1; s < (1u << n); ++s)
    for (unsigned m = s; m; m &= m - 1) {
      int v = __builtin_ctz(m);
      unsigned rest = s & ~(1u << v);
      if (tw[rest] >= tw[s]) continue;
      tw[s] = std::min(tw[s], std::max(tw[rest], q(rest, v)));
    }
  return tw[(1u << n) - 1];
}

void treewidth_oracle_check(Outcome& o) {
  long long graphs_checked = 0;
  for (int n = 1; n <= 9; ++n) {
    const auto& u = graph_universe(n);
    long long bad = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : bad)
    for (std::size_t i = 0; i < u.size(); ++i) {
      auto td = treewidth(u[i]);
      if (!td.exact || td.width != treewidth_oracle(u[i]) || !verify_decomposition(u[i], td)) ++bad;
    }
    if (bad) o.fail(std::to_string(bad) + " mismatches at n=" + std::to_string(n));
    graphs_checked += static_cast<long long>(u.size());
  }
  o.note << graphs_checked << " graphs";
}

void certificate_consistency(Outcome& o) {
  long long checked = 0;
  for (int n = 1; n <= 7; ++n)
    for (const auto& g : graph_universe(n)) {
      if (n == 7 && checked % 5 != 0) {
        ++checked;
        continue;
      }
      int exact = exact_wldim(g);
      auto cert = upper_bound_certificate(coherent_closure(to_digraph(g)));
      if (!check_certificate_total(cert)) o.fail("certificate arithmetic");
      if (cert.total < exact) o.fail("certificate below exact dimension");
      ++checked;
    }
  o.note << "closures of graphs with n <= 7 (every fifth at n = 7)";
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"census counts", census_counts},
      {"interspace type table", interspace_table},
      {"2-WL completeness at n <= 7", two_wl_completeness},
      {"rook 4x4 vs Shrikhande", strongly_regular},
      {"CFI lower-bound harness", cfi_harness},
      {"coherence property suite", coherence_suite},
      {"individualization inequality", individualization_inequality},
      {"interspace pattern tables", pattern_tables},
      {"divisor identity", divisor_identity},
      {"potential accounting", potential_accounting},
      {"valence and fiber size audits", limit_audits},
      {"treewidth against subset oracle", treewidth_oracle_check},
      {"certificate consistency", certificate_consistency},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(static_cast<int>(i) + 1)) continue;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s (%.1fs): %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].name, secs, o.note.str().c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
