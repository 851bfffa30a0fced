#include "wl/bounds.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

#include "wl/algebra.hpp"
#include "wl/patterns.hpp"

namespace wl {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

Parameters parameters(const CoherentConfiguration& c, const std::vector<int>& fibers) {
  Parameters p;
  for (int f : fibers) {
    long long s = static_cast<long long>(c.fibers().at(f).size());
    switch (classify_size(static_cast<int>(s))) {
      case FiberClass::Large: p.n_large += s, ++p.k_large; break;
      case FiberClass::Small: p.n_small += s; break;
      case FiberClass::Tiny: break;
    }
  }
  return p;
}

Parameters parameters(const CoherentConfiguration& c) {
  std::vector<int> all(c.fiber_count());
  std::iota(all.begin(), all.end(), 0);
  return parameters(c, all);
}

Rational potential(const Parameters& p) { return Rational(3 * p.n_large + p.n_small - 8 * p.k_large, 20); }

Rational h_function(const Rational& a) {
  if (a <= 0) throw ArgumentError("h is defined for positive arguments only");
  Rational e = a * 8;
  long long ceil8 = e.numerator() / e.denominator() + (e.numerator() % e.denominator() ? 1 : 0);
  return std::max(Rational(-2, 5), Rational(-3 * ceil8, 20));
}

ProgressReport check_progress_in_large(const CoherentConfiguration& before, const CoherentConfiguration& after) {
  if (before.fiber_count() != 1 || classify_size(before.n()) != FiberClass::Large)
    throw ArgumentError("before must consist of a single large fiber");
  if (after.n() != before.n()) throw ArgumentError("vertex sets differ");
  std::map<Color, Color> coarse;
  for (int u = 0; u < after.n(); ++u)
    for (int v = 0; v < after.n(); ++v) {
      auto [it, fresh] = coarse.emplace(after.at(u, v), before.at(u, v));
      if (!fresh && it->second != before.at(u, v)) throw ArgumentError("after does not refine before");
    }
  ProgressReport r;
  r.before = potential(parameters(before));
  r.after = potential(parameters(after));
  r.delta = r.after - r.before;
  r.bound = Rational(2, 5);
  for (const auto& f : after.fibers()) {
    Rational t(static_cast<long long>(f.size()), before.n());
    r.t.push_back(t);
    r.bound += h_function(t);
  }
  r.holds = r.delta <= r.bound;
  return r;
}

// ---------------------------------------------------------------------------
// Valence and fiber-size limits

int max_nonmaximal_degree(const CoherentConfiguration& c) {
  int best = 0;
  for (int r = 0; r < c.fiber_count(); ++r)
    for (int b = 0; b < c.fiber_count(); ++b) best = std::max(best, nonmaximal_degree(c, r, b));
  return best;
}

int max_module_fiber_size(const CoherentConfiguration& c) {
  int best = 0;
  for (const auto& m : max_modules(c)) {
    std::map<int, int> cnt;
    for (int v : m) best = std::max(best, ++cnt[c.fiber_of(v)]);
  }
  return best;
}

namespace {

struct Tracker {
  CoherentConfiguration c;
  std::vector<int> chosen;

  void pick(int v) {
    chosen.push_back(v);
    c = individualize(c, {v});
  }
};

// Worst (R,B) with a non-maximal degree above `limit`, or (-1,-1).
std::pair<int, int> worst_pair(const CoherentConfiguration& c, int limit) {
  std::pair<int, int> out{-1, -1};
  int best = limit;
  for (int r = 0; r < c.fiber_count(); ++r)
    for (int b = 0; b < c.fiber_count(); ++b) {
      int d = nonmaximal_degree(c, r, b);
      if (d > best) best = d, out = {r, b};
    }
  return out;
}

void valence_pass(Tracker& t, int d) {
  // Thresholds d·2^j, from the first one reaching n down to d.
  std::vector<long long> steps = {d};
  while (steps.back() < t.c.n()) steps.push_back(steps.back() * 2);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    for (;;) {
      auto [r, b] = worst_pair(t.c, static_cast<int>(*it));
      if (r < 0) break;
      t.pick(t.c.fibers()[r].front());
    }
  }
}

}  // namespace

LimitResult limit_color_valence(const CoherentConfiguration& c, int d) {
  if (d < 1) throw ArgumentError("degree bound must be positive");
  Tracker t{c, {}};
  valence_pass(t, d);
  LimitResult out{t.chosen, t.c, 2LL * c.n(), d, false};
  out.within_bound = static_cast<long long>(t.chosen.size()) * out.bound_denominator <= out.bound_numerator;
  return out;
}

LimitResult limit_fiber_size(const CoherentConfiguration& c, int cap, int d) {
  if (cap < 1 || d < 1) throw ArgumentError("cap and degree bound must be positive");
  long long n = c.n();
  LimitResult out;
  out.bound_numerator = 2 * n * cap + static_cast<long long>(d) * d * n;
  out.bound_denominator = static_cast<long long>(d) * cap;
  Tracker t{c, {}};
  if (d >= cap) {
    std::vector<int> all(c.n());
    std::iota(all.begin(), all.end(), 0);
    t.chosen = all;
    t.c = individualize(c, all);
  } else {
    valence_pass(t, d);
    for (;;) {
      // A vertex in the first oversized fiber part of a max-module.
      int pick = -1;
      for (const auto& m : max_modules(t.c)) {
        std::map<int, std::vector<int>> parts;
        for (int v : m) parts[t.c.fiber_of(v)].push_back(v);
        for (const auto& [f, vs] : parts)
          if (static_cast<int>(vs.size()) > cap && (pick < 0 || vs.front() < pick)) pick = vs.front();
      }
      if (pick < 0) break;
      t.pick(pick);
      valence_pass(t, d);
    }
  }
  out.individualized = t.chosen;
  out.result = t.c;
  out.within_bound = static_cast<long long>(t.chosen.size()) * out.bound_denominator <= out.bound_numerator;
  return out;
}

// ---------------------------------------------------------------------------
// Treewidth

namespace {

using Mask = std::uint64_t;

int popcount(Mask m) { return __builtin_popcountll(m); }

struct Elim {
  int n;
  std::vector<Mask> adj;
};

Elim eliminate(const Elim& g, int v) {
  Elim h = g;
  Mask nb = g.adj[v];
  for (int u = 0; u < g.n; ++u)
    if (nb >> u & 1) h.adj[u] = (h.adj[u] | nb) & ~(Mask(1) << u) & ~(Mask(1) << v);
  h.adj[v] = 0;
  return h;
}

// Degeneracy of the graph induced on `alive`, a lower bound on treewidth.
int degeneracy(const Elim& g, Mask alive) {
  int best = 0;
  while (alive) {
    int v = -1, dv = 1 << 30;
    for (Mask m = alive; m; m &= m - 1) {
      int u = __builtin_ctzll(m);
      int du = popcount(g.adj[u] & alive);
      if (du < dv) dv = du, v = u;
    }
    best = std::max(best, dv);
    alive &= ~(Mask(1) << v);
  }
  return best;
}

std::vector<int> min_fill_order(const SimpleGraph& g) {
  int n = g.n();
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges()) adj[u].insert(v), adj[v].insert(u);
  std::vector<char> gone(n, 0);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long bf = 0;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long long fill = 0;
      for (int a : adj[v])
        for (int b : adj[v])
          if (a < b && !adj[a].count(b)) ++fill;
      if (best < 0 || fill < bf || (fill == bf && adj[v].size() < adj[best].size())) best = v, bf = fill;
    }
    order.push_back(best);
    gone[best] = 1;
    for (int a : adj[best])
      for (int b : adj[best])
        if (a != b) adj[a].insert(b);
    for (int a : adj[best]) adj[a].erase(best);
    adj[best].clear();
  }
  return order;
}

int order_width(const SimpleGraph& g, const std::vector<int>& order) {
  int n = g.n();
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges()) adj[u].insert(v), adj[v].insert(u);
  int w = n ? 0 : -1;
  for (int v : order) {
    w = std::max(w, static_cast<int>(adj[v].size()));
    for (int a : adj[v])
      for (int b : adj[v])
        if (a != b) adj[a].insert(b);
    for (int a : adj[v]) adj[a].erase(v);
    adj[v].clear();
  }
  return w;
}

class BranchAndBound {
 public:
  BranchAndBound(const SimpleGraph& g, std::vector<int> heuristic) : n_(g.n()) {
    root_.n = n_;
    root_.adj.assign(n_, 0);
    for (auto [u, v] : g.edges()) root_.adj[u] |= Mask(1) << v, root_.adj[v] |= Mask(1) << u;
    best_order_ = std::move(heuristic);
    ub_ = order_width(g, best_order_);
  }

  int solve() {
    Mask all = n_ == 64 ? ~Mask(0) : (Mask(1) << n_) - 1;
    std::vector<int> prefix;
    dfs(root_, all, 0, prefix);
    return ub_;
  }
  const std::vector<int>& order() const { return best_order_; }

 private:
  void dfs(const Elim& g, Mask alive, int w, std::vector<int>& prefix) {
    int left = popcount(alive);
    if (std::max(w, left - 1) < ub_) {
      // Any completion reaches at most max(w, left − 1).
      if (left - 1 <= w || left <= 1) {
        ub_ = std::max(w, std::max(left - 1, 0));
        best_order_ = prefix;
        for (Mask m = alive; m; m &= m - 1) best_order_.push_back(__builtin_ctzll(m));
        return;
      }
    }
    if (left == 0) return;
    if (std::max(w, degeneracy(g, alive)) >= ub_) return;
    auto it = seen_.find(alive);
    if (it != seen_.end() && it->second <= w) return;
    seen_[alive] = w;

    // A simplicial vertex can always be eliminated first.
    for (Mask m = alive; m; m &= m - 1) {
      int v = __builtin_ctzll(m);
      Mask nb = g.adj[v];
      bool clique = true;
      for (Mask x = nb; x && clique; x &= x - 1) {
        int u = __builtin_ctzll(x);
        clique = (g.adj[u] | (Mask(1) << u)) == ((g.adj[u] | (Mask(1) << u)) | nb);
      }
      if (clique) {
        prefix.push_back(v);
        dfs(eliminate(g, v), alive & ~(Mask(1) << v), std::max(w, popcount(nb)), prefix);
        prefix.pop_back();
        return;
      }
    }
    std::vector<std::pair<int, int>> cand;
    for (Mask m = alive; m; m &= m - 1) {
      int v = __builtin_ctzll(m);
      cand.push_back({popcount(g.adj[v]), v});
    }
    std::sort(cand.begin(), cand.end());
    for (auto [deg, v] : cand) {
      int w2 = std::max(w, deg);
      if (w2 >= ub_) continue;
      prefix.push_back(v);
      dfs(eliminate(g, v), alive & ~(Mask(1) << v), w2, prefix);
      prefix.pop_back();
    }
  }

  int n_;
  Elim root_;
  int ub_;
  std::vector<int> best_order_;
  std::unordered_map<Mask, int> seen_;
};

}  // namespace

TreeDecomposition decomposition_from_order(const SimpleGraph& g, const std::vector<int>& order) {
  int n = g.n();
  if (static_cast<int>(order.size()) != n) throw ArgumentError("order must list every vertex once");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || pos[order[i]] >= 0) throw ArgumentError("order must list every vertex once");
    pos[order[i]] = i;
  }
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges()) adj[u].insert(v), adj[v].insert(u);
  TreeDecomposition td;
  td.bags.resize(n);
  td.width = n ? 0 : -1;
  std::vector<int> roots;
  for (int v : order) {
    std::vector<int> later;
    for (int u : adj[v])
      if (pos[u] > pos[v]) later.push_back(u);
    auto& bag = td.bags[pos[v]];
    bag = later;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.width = std::max(td.width, static_cast<int>(bag.size()) - 1);
    for (int a : later)
      for (int b : later)
        if (a != b) adj[a].insert(b);
    if (later.empty()) {
      roots.push_back(pos[v]);
    } else {
      int parent = *std::min_element(later.begin(), later.end(), [&](int a, int b) { return pos[a] < pos[b]; });
      td.edges.push_back({pos[v], pos[parent]});
    }
  }
  for (std::size_t i = 1; i < roots.size(); ++i) td.edges.push_back({roots[i - 1], roots[i]});
  return td;
}

TreeDecomposition treewidth(const SimpleGraph& g, int exact_limit) {
  auto heuristic = min_fill_order(g);
  if (g.n() > std::min(exact_limit, 64)) {
    auto td = decomposition_from_order(g, heuristic);
    td.exact = false;
    return td;
  }
  BranchAndBound bb(g, heuristic);
  int w = bb.solve();
  auto td = decomposition_from_order(g, bb.order());
  if (td.width != w) throw IntegrityError("elimination order does not realize the solved width");
  td.exact = true;
  return td;
}

bool verify_decomposition(const SimpleGraph& g, const TreeDecomposition& td) {
  int k = static_cast<int>(td.bags.size());
  int n = g.n();
  if (k == 0) return n == 0;
  if (static_cast<int>(td.edges.size()) != k - 1) return false;
  std::vector<std::vector<int>> tree(k);
  for (auto [a, b] : td.edges) {
    if (a < 0 || b < 0 || a >= k || b >= k || a == b) return false;
    tree[a].push_back(b), tree[b].push_back(a);
  }
  auto connected = [&](const std::vector<char>& in) {
    int start = -1, total = 0;
    for (int i = 0; i < k; ++i)
      if (in[i]) ++total, start = start < 0 ? i : start;
    if (total == 0) return false;
    std::vector<char> seen(k, 0);
    std::vector<int> st = {start};
    seen[start] = 1;
    int reached = 0;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      ++reached;
      for (int y : tree[x])
        if (in[y] && !seen[y]) seen[y] = 1, st.push_back(y);
    }
    return reached == total;
  };
  if (!connected(std::vector<char>(k, 1))) return false;
  int width = -1;
  for (const auto& b : td.bags) width = std::max(width, static_cast<int>(b.size()) - 1);
  if (width != td.width) return false;
  for (int v = 0; v < n; ++v) {
    std::vector<char> in(k, 0);
    for (int i = 0; i < k; ++i) in[i] = std::binary_search(td.bags[i].begin(), td.bags[i].end(), v);
    if (!connected(in)) return false;
  }
  for (auto [u, v] : g.edges()) {
    bool found = false;
    for (const auto& b : td.bags)
      if (std::binary_search(b.begin(), b.end(), u) && std::binary_search(b.begin(), b.end(), v)) found = true;
    if (!found) return false;
  }
  return true;
}

TwBound tw_dimension_bound(const CoherentConfiguration& c, int t) {
  int biggest = 0;
  for (const auto& f : c.fibers()) biggest = std::max(biggest, static_cast<int>(f.size()));
  if (t > 0 && biggest > t) throw ArgumentError("a fiber exceeds the size bound");
  TwBound b;
  b.t = t > 0 ? t : biggest;
  auto q = quotient_graph(c);
  b.decomposition = treewidth(q.graph);
  b.exact = b.decomposition.exact;
  b.tw = std::max(b.decomposition.width, 0);
  b.k = b.t * b.tw;
  b.sound_k = c.n() == 0 ? 0 : b.t * (b.tw + 1) - 1;
  return b;
}

// ---------------------------------------------------------------------------
// Local reductions

namespace {

enum class Move { Large, Small, SmallUpTo18, Center };

struct Rule {
  std::string id;
  std::vector<std::string> first;   // patterns allowed on I[L,S]
  std::vector<std::string> second;  // patterns on I[L,S'] (path rules only)
  Move move;
  Rational claimed;
  bool partial;
  bool needs_nondominating;
};

const std::vector<Rule>& rule_table() {
  static const std::vector<Rule> rules = {
      {"L-S/(K{3,3},2)", {"(K{3,3},2)"}, {}, Move::SmallUpTo18, Rational(-11, 10), false, true},
      {"L-S/(3K2,2;3K2,2)", {"(3K2,2;3K2,2)"}, {}, Move::Small, Rational(-11, 10), false, true},
      {"L-S/(C6,2;3K2,2)", {"(C6,2;3K2,2)"}, {}, Move::Large, Rational(-13, 10), false, true},
      {"L-S/(3K2,2,2)", {"(3K2,2,2)"}, {}, Move::Large, Rational(-11, 10), false, true},
      {"L-S/(3K2,2;K{2,2,2},2)", {"(3K2,2;K{2,2,2},2)"}, {}, Move::Large, Rational(-13, 10), false, true},
      {"L-S/(K{2,2,2},3†)", {"(K{2,2,2},3†)"}, {}, Move::Large, Rational(-1), false, true},
      {"L-S/(K{3,3},2,2)", {"(K{3,3},2,2)"}, {}, Move::Large, Rational(-5, 4), false, true},
      {"3-large-neighbors", {}, {}, Move::Center, Rational(-1), false, false},
      {"S-L-S",
       {"(K{2,2,2},3‡)"},
       {"(K{2,2,2},3‡)", "(C4,2)", "(3K2,2)", "(2K2,2)", "(2K3,3)"},
       Move::Large,
       Rational(-11, 10),
       false,
       false},
      {"S-L-S-rest",
       {"(C4,2)", "(3K2,2)", "(2K2,2)", "(2K3,3)"},
       {"(C4,2)", "(3K2,2)", "(2K2,2)", "(2K3,3)"},
       Move::Large,
       Rational(-1),
       true,
       true},
  };
  return rules;
}

bool nondominating(const CoherentConfiguration& c, int s) {
  for (int f = 0; f < c.fiber_count(); ++f)
    if (f != s && c.relations(f, s).size() == 1) return true;
  return false;
}

std::string pattern_of(const CoherentConfiguration& c, int l, int s) {
  try {
    return classify_pattern(c, l, s).name;
  } catch (const Error&) {
    return "";
  }
}

bool contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace

const std::vector<std::string>& local_reduction_rules() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& r : rule_table()) v.push_back(r.id);
    return v;
  }();
  return ids;
}

LocalReduction apply_local_reduction(const CoherentConfiguration& c, const std::string& id) {
  auto it = std::find_if(rule_table().begin(), rule_table().end(), [&](const Rule& r) { return r.id == id; });
  if (it == rule_table().end()) throw ArgumentError("unknown rule: " + id);
  const Rule& rule = *it;
  LocalReduction out;
  out.rule = id;
  out.claimed = rule.claimed;
  out.hypotheses_verified = !rule.partial;
  auto q = quotient_graph(c);
  auto large = [&](int f) { return q.size_class[f] == FiberClass::Large; };
  auto small46 = [&](int f) { return q.sizes[f] == 4 || q.sizes[f] == 6; };
  std::string miss = "no matching location";
  int vertex = -1;

  if (rule.move == Move::Center) {
    for (int r = 0; r < c.fiber_count() && vertex < 0; ++r) {
      int cnt = 0;
      for (int l = 0; l < c.fiber_count(); ++l)
        if (q.graph.adj(r, l) && large(l)) ++cnt;
      if (cnt < 3) continue;
      if (!large(r) && !(q.size_class[r] == FiberClass::Small && ul_size(c, r) >= 3)) {
        miss = "fiber with three large neighbors is neither large nor of |ul| ≥ 3";
        continue;
      }
      out.fibers = {r};
      vertex = c.fibers()[r].front();
    }
  } else if (rule.second.empty()) {
    for (int l = 0; l < c.fiber_count() && vertex < 0; ++l) {
      if (!large(l)) continue;
      for (int s = 0; s < c.fiber_count() && vertex < 0; ++s) {
        if (!q.graph.adj(l, s) || !small46(s)) continue;
        if (!contains(rule.first, pattern_of(c, l, s))) continue;
        if (rule.needs_nondominating && !nondominating(c, s)) {
          miss = "{S} is dominating";
          continue;
        }
        out.fibers = {l, s};
        bool small_move = rule.move == Move::Small || (rule.move == Move::SmallUpTo18 && q.sizes[l] <= 18);
        vertex = small_move ? c.fibers()[s].front() : c.fibers()[l].front();
      }
    }
    if (id == "L-S/(K{3,3},2)") out.note = "existence of a (2K3,3) neighbor of S follows from criticality and is not checked";
  } else {
    for (int l = 0; l < c.fiber_count() && vertex < 0; ++l) {
      if (!large(l)) continue;
      for (int s = 0; s < c.fiber_count() && vertex < 0; ++s) {
        if (!q.graph.adj(l, s) || !small46(s) || !contains(rule.first, pattern_of(c, l, s))) continue;
        for (int s2 = 0; s2 < c.fiber_count() && vertex < 0; ++s2) {
          if (s2 == s || !q.graph.adj(l, s2) || !small46(s2) || !contains(rule.second, pattern_of(c, l, s2))) continue;
          if (rule.needs_nondominating && (!nondominating(c, s) || !nondominating(c, s2))) {
            miss = "{S} or {S'} is dominating";
            continue;
          }
          out.fibers = {s, l, s2};
          vertex = c.fibers()[l].front();
        }
      }
    }
    if (rule.partial) out.note = "the prescribed move depends on a case analysis; a vertex of L is individualized";
  }

  if (vertex < 0) {
    out.miss = miss;
    return out;
  }
  out.applied = true;
  out.individualized = {vertex};
  out.after = individualize(c, {vertex});
  out.reduced = reduce_to_core(out.after).result;
  Rational before = potential(parameters(c));
  out.delta = potential(parameters(out.after)) - before;
  out.delta_reduced = potential(parameters(out.reduced)) - before;
  out.claim_holds = out.delta <= out.claimed;
  return out;
}

// ---------------------------------------------------------------------------
// t-reduced

bool ReducedReport::ok() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyCheck& p) { return p.ok; });
}

ReducedReport is_t_reduced(const CoherentConfiguration& c, int t) {
  ReducedReport rep;
  auto q = quotient_graph(c);
  int f = c.fiber_count();
  auto fail = [](PropertyCheck& p, const std::string& why) {
    if (p.ok) p.detail = why;
    else p.detail += "; " + why;
    p.ok = false;
  };
  auto name = [](int x) { return "fiber " + std::to_string(x); };

  PropertyCheck p1{1, true, "reduction fixpoint reached (sufficient removal rules only)"};
  if (c.n() > 0 && !reduce_to_core(c).trace.steps.empty()) fail(p1, "a removal rule still applies");
  PropertyCheck p2{2, true, ""}, p3{3, true, ""}, p4{4, true, ""}, p5{5, true, ""}, p6{6, true, ""}, p7{7, true, ""};
  for (int r = 0; r < f; ++r) {
    if (q.sizes[r] > t) fail(p2, name(r) + " has " + std::to_string(q.sizes[r]) + " vertices");
    int large_nb = 0, rel_small_nb = 0, small_nb = 0;
    for (int x = 0; x < f; ++x) {
      if (!q.graph.adj(r, x)) continue;
      if (q.size_class[x] == FiberClass::Large) ++large_nb;
      if (q.size_class[x] == FiberClass::Small) ++small_nb;
      if (q.relevant[x]) ++rel_small_nb;
    }
    if (q.size_class[r] == FiberClass::Large) {
      if (large_nb > 2) fail(p3, name(r) + " has " + std::to_string(large_nb) + " large neighbors");
      if (rel_small_nb > 1) fail(p4, name(r) + " has " + std::to_string(rel_small_nb) + " relevant small neighbors");
    }
    if (!q.relevant[r]) continue;
    if (large_nb >= 1 && (q.degree[r] > 2 || ul_size(c, r) != 3))
      fail(p5, name(r) + " has quotient degree " + std::to_string(q.degree[r]) + " and |ul| = " + std::to_string(ul_size(c, r)));
    if (small_nb >= 3)
      for (int s : c.fibers()[r]) {
        auto cs = individualize(c, {s});
        bool discrete = true;
        for (int v : c.fibers()[r]) discrete = discrete && cs.fibers()[cs.fiber_of(v)].size() == 1;
        if (!discrete) {
          fail(p6, name(r) + " is not discrete after individualizing " + std::to_string(s));
          break;
        }
      }
    if (!nondominating(c, r)) fail(p7, name(r) + " is dominating");
  }
  rep.properties = {p1, p2, p3, p4, p5, p6, p7};
  return rep;
}

// ---------------------------------------------------------------------------
// CFI

CFIGraph cfi(const SimpleGraph& base, const std::vector<std::pair<int, int>>& twist) {
  int n = base.n();
  if (n == 0) throw ArgumentError("empty base graph");
  for (int v = 0; v < n; ++v)
    if (base.degree(v) < 2) throw UnsupportedError("base vertex " + std::to_string(v) + " has degree below 2");
  {
    std::vector<char> seen(n, 0);
    std::vector<int> st = {0};
    seen[0] = 1;
    int cnt = 0;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      ++cnt;
      for (int y : base.neighbors(x))
        if (!seen[y]) seen[y] = 1, st.push_back(y);
    }
    if (cnt != n) throw ArgumentError("base graph must be connected");
  }
  std::set<std::pair<int, int>> tw;
  for (auto [a, b] : twist) {
    if (a < 0 || b < 0 || a >= n || b >= n || !base.adj(a, b)) throw ArgumentError("twist is not a base edge");
    auto e = std::minmax(a, b);
    if (!tw.insert(e).second) tw.erase(e);  // a doubled twist cancels
  }
  std::vector<std::vector<int>> nb(n);
  std::vector<std::vector<int>> ids(n);  // vertex id per even subset mask
  CFIGraph out;
  int total = 0;
  for (int v = 0; v < n; ++v) {
    nb[v] = base.neighbors(v);
    int d = static_cast<int>(nb[v].size());
    if (d > 20) throw ResourceError("gadget too large");
    ids[v].assign(1u << d, -1);
    for (unsigned m = 0; m < (1u << d); ++m)
      if (__builtin_popcount(m) % 2 == 0) ids[v][m] = total++, out.origin.push_back(v);
  }
  out.graph = SimpleGraph(total);
  for (auto [u, v] : base.edges()) {
    int i = static_cast<int>(std::find(nb[u].begin(), nb[u].end(), v) - nb[u].begin());
    int j = static_cast<int>(std::find(nb[v].begin(), nb[v].end(), u) - nb[v].begin());
    bool x = tw.count(std::minmax(u, v)) > 0;
    for (unsigned a = 0; a < ids[u].size(); ++a) {
      if (ids[u][a] < 0) continue;
      for (unsigned b = 0; b < ids[v].size(); ++b) {
        if (ids[v][b] < 0) continue;
        if (((a >> i & 1) == (b >> j & 1)) != x) out.graph.add_edge(ids[u][a], ids[v][b]);
      }
    }
  }
  return out;
}

CFICheck cfi_lower_bound_check(const SimpleGraph& base, int k) {
  if (k < 1) throw ArgumentError("k must be positive");
  auto plain = cfi(base);
  auto edges = base.edges();
  auto twisted = cfi(base, {edges.front()});
  if (k > 3 || (k == 3 && plain.graph.n() > 40)) throw ResourceError("k-WL on this CFI pair exceeds the budget");
  CFICheck r;
  r.k = k;
  auto td = treewidth(base);
  r.tw = td.width;
  r.tw_exact = td.exact;
  r.distinguished = distinguishes(to_digraph(plain.graph, plain.origin), to_digraph(twisted.graph, twisted.origin), k);
  r.consistent = !(r.tw_exact && k < r.tw && r.distinguished);
  return r;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

BoundCertificate certify(const CoherentConfiguration& c, const std::vector<int>& kept) {
  BoundCertificate b;
  if (c.n() == 0) {
    b.terminal_kind = "empty";
    b.total = 2;
    return b;
  }
  auto q = quotient_graph(c);
  // Components of the quotient graph.
  std::vector<int> comp(c.fiber_count(), -1);
  int nc = 0;
  for (int s = 0; s < c.fiber_count(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> st = {s};
    comp[s] = nc;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y = 0; y < c.fiber_count(); ++y)
        if (q.graph.adj(x, y) && comp[y] < 0) comp[y] = nc, st.push_back(y);
    }
    ++nc;
  }
  if (nc > 1) {
    b.terminal_kind = "components";
    for (int i = 0; i < nc; ++i) {
      std::vector<int> fs;
      for (int s = 0; s < c.fiber_count(); ++s)
        if (comp[s] == i) fs.push_back(s);
      std::vector<int> vmap;
      auto sub = c.restrict_to_fibers(fs, &vmap);
      std::vector<int> k2;
      for (int v : vmap) k2.push_back(kept[v]);
      b.components.push_back(certify(sub, k2));
      b.terminal = std::max(b.terminal, b.components.back().total);
    }
    b.total = std::max(2, b.terminal);
    return b;
  }
  // Greedy individualization chain; keep the best prefix.
  CoherentConfiguration cur = c;
  std::vector<int> ck = kept;
  auto tb = tw_dimension_bound(cur);
  int best_len = 0, best_total = std::max(2, tb.sound_k), best_terminal = tb.sound_k;
  bool best_exact = tb.exact;
  std::vector<CertificateLink> links;
  std::vector<CertificateLink> chain;
  while (cur.fiber_count() < cur.n() && static_cast<int>(links.size()) < 64) {
    int f = 0;
    for (int x = 1; x < cur.fiber_count(); ++x)
      if (cur.fibers()[x].size() > cur.fibers()[f].size()) f = x;
    int v = cur.fibers()[f].front();
    CertificateLink link;
    link.individualized = 1;
    link.vertices = {ck[v]};
    link.tag = "individualization";
    cur = individualize(cur, {v});
    link.sub_n = cur.n();
    link.sub_fibers = cur.fiber_count();
    links.push_back(link);
    auto t2 = tw_dimension_bound(cur);
    int total = static_cast<int>(links.size()) + std::max(2, t2.sound_k);
    if (total < best_total) {
      best_total = total, best_len = static_cast<int>(links.size()), best_terminal = t2.sound_k, best_exact = t2.exact;
      chain = links;
    }
  }
  b.chain = chain;
  b.terminal_kind = "treewidth";
  b.terminal = best_terminal;
  b.total = best_total;
  b.note = std::string("fiber size times (quotient treewidth + 1) minus 1") +
           (best_exact ? "" : "; treewidth is a heuristic upper bound");
  (void)best_len;
  return b;
}

}  // namespace

BoundCertificate upper_bound_certificate(const CoherentConfiguration& c) {
  std::vector<int> kept(c.n());
  std::iota(kept.begin(), kept.end(), 0);
  auto b = certify(c, kept);
  b.conditional = true;
  return b;
}

BoundCertificate upper_bound_certificate(const SimpleGraph& g) {
  if (g.n() <= 7) {
    BoundCertificate b;
    b.terminal_kind = "exact";
    b.terminal = exact_wldim(g);
    b.total = std::max(2, b.terminal);
    b.conditional = false;
    b.note = "exhaustive comparison against every graph on the same number of vertices";
    return b;
  }
  return upper_bound_certificate(coherent_closure(to_digraph(g)));
}

bool check_certificate_total(const BoundCertificate& b) {
  if (!b.components.empty()) {
    int m = 0;
    for (const auto& x : b.components) {
      if (!check_certificate_total(x)) return false;
      m = std::max(m, x.total);
    }
    return b.terminal == m && b.total == std::max(2, m);
  }
  int l = 0;
  for (const auto& x : b.chain) l += x.individualized;
  return b.total == l + std::max(2, b.terminal);
}

}  // namespace wl
