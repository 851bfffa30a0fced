#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "wl/census.hpp"
#include "wl/graphs.hpp"
#include "wl/iso.hpp"

using namespace wl;

namespace {

RelationGraph bip(int a, int b, const std::vector<std::pair<int, int>>& arcs) {
  RelationGraph g(a + b, a);
  for (auto [i, j] : arcs) g.set(i, a + j);
  return g;
}

std::multiset<std::string> tuples(const std::vector<CensusEntry>& es) {
  std::multiset<std::string> s;
  for (const auto& e : es) s.insert(to_string(e.type));
  return s;
}

}  // namespace

TEST_CASE("constituent recognition") {
  RelationGraph c5(5);
  for (int i = 0; i < 5; ++i) c5.set(i, (i + 1) % 5);
  CHECK(recognize_constituent(c5).name == "C5>");
  CHECK(recognize_constituent(relation_graph(graphs::cycle(7))).name == "C7");
  CHECK(recognize_constituent(relation_graph(graphs::complete(4))).name == "K4");
  CHECK(recognize_constituent(relation_graph(graphs::complete(1))).name == "K1");

  // Fano plane: lines {j, j+1, j+3}, relabelled to hide the cyclic structure.
  std::vector<std::pair<int, int>> fano;
  int perm[7] = {3, 6, 0, 5, 1, 4, 2};
  for (int j = 0; j < 7; ++j)
    for (int d : {0, 1, 3}) fano.push_back({perm[(j + d) % 7], j});
  CHECK(recognize_constituent(bip(7, 7, fano)).name == "I(F)");

  std::vector<std::pair<int, int>> k4;
  int e = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b, ++e) k4.push_back({a, e}), k4.push_back({b, e});
  CHECK(recognize_constituent(bip(4, 6, k4)).name == "I(K4,6)");
  std::vector<std::pair<int, int>> k4t;
  for (auto [a, b] : k4) k4t.push_back({b, a});
  CHECK(recognize_constituent(bip(6, 4, k4t)).name == "I(K4,6)^T");

  CHECK(recognize_constituent(bip(3, 3, {{0, 0}, {1, 1}, {2, 2}})).name == "M3");
  CHECK(recognize_constituent(bip(2, 4, {{0, 0}, {0, 1}, {1, 2}, {1, 3}})).name == "2K{1,2}");
  CHECK(recognize_constituent(relation_graph(graphs::petersen())).name.rfind("other:", 0) == 0);
  CHECK_THROWS_AS(recognize_constituent(RelationGraph(65)), RangeError);
}

TEST_CASE("fiber types") {
  auto c7 = coherent_closure(to_digraph(graphs::cycle(7)));
  CHECK(to_string(cc_type(c7, 0)) == "(C7,C7,C7)");
  auto k4 = coherent_closure(to_digraph(graphs::complete(4)));
  CHECK(to_string(cc_type(k4, 0)) == "(K4)");
  auto one = coherent_closure(to_digraph(graphs::complete(1)));
  CHECK(to_string(cc_type(one, 0)) == "(K1)");
  auto c8 = coherent_closure(to_digraph(graphs::cycle(8)));
  CHECK_THROWS_AS(cc_type(c8, 0), UnsupportedError);
  CHECK(type_tuple(c8, 0).size() == 4);
}

TEST_CASE("homogeneous census") {
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
  for (const auto& [n, want] : expected) {
    CAPTURE(n);
    auto es = enumerate_homogeneous(n);
    CHECK(tuples(es) == want);
    for (std::size_t i = 0; i < es.size(); ++i) {
      CHECK(verify_coherence(es[i].representative.base()).ok());
      CHECK(es[i].representative.fiber_count() == 1);
      for (std::size_t j = i + 1; j < es.size(); ++j)
        CHECK_FALSE(configurations_isomorphic(es[i].representative, es[j].representative));
    }
  }
  CHECK_THROWS_AS(enumerate_homogeneous(8), UnsupportedError);
}

TEST_CASE("configuration isomorphism ignores color names") {
  auto a = coherent_closure(to_digraph(graphs::cycle(6)));
  std::vector<int> p = {3, 5, 1, 0, 2, 4};
  auto b = CoherentConfiguration(permute(a.base(), p));
  CHECK(configurations_isomorphic(a, b));
  auto k = coherent_closure(to_digraph(graphs::complement(graphs::disjoint_union(graphs::complete(3), graphs::complete(3)))));
  CHECK_FALSE(configurations_isomorphic(a, k));
}

TEST_CASE("small interspaces") {
  auto full = enumerate_small_interspaces(4, 4);
  CHECK(full.exhaustive);
  std::set<std::string> got;
  for (const auto& e : full.entries) got.insert(to_string(e.type));
  CHECK(got == std::set<std::string>{"(2K{2,2},2K{2,2})", "(C8,C8)"});
  CHECK_FALSE(full.excluded.empty());

  std::map<std::pair<int, int>, std::set<std::string>> cells = {
      {{4, 6}, {"(2K{2,3},2K{2,3})", "(I(K4,6),I(K4,6))"}},
      {{6, 6}, {"(2K{3,3},2K{3,3})", "(3K{2,2},3K{2,2},3K{2,2})", "(3K{2,2},C12,C12)", "(3K{2,2},RxB-3K{2,2})"}},
      {{7, 7}, {"(I(F),RxB-I(F))"}},
      {{4, 5}, {}},
      {{5, 6}, {}},
      {{5, 7}, {}},
      {{6, 7}, {}},
  };
  for (const auto& [rb, want] : cells) {
    CAPTURE(rb.first);
    CAPTURE(rb.second);
    auto cen = enumerate_small_interspaces(rb.first, rb.second);
    std::set<std::string> have;
    for (const auto& e : cen.entries) {
      have.insert(to_string(e.type));
      CHECK(verify_coherence(e.representative.base()).ok());
      CHECK(e.representative.fiber_count() == 2);
    }
    CHECK(have == want);
  }
  CHECK_THROWS_AS(enumerate_small_interspaces(3, 4), RangeError);
}

TEST_CASE("exhaustive (4,5) and (5,5) find nothing critical") {
  CHECK(enumerate_small_interspaces(4, 5, true).entries.empty());
  CHECK(enumerate_small_interspaces(5, 5, true).entries.empty());
}

TEST_CASE("interspace implications hold on every cell instance") {
  for (const auto& spec : supported_pattern_specs()) {
    auto inst = build_pattern_instance(spec);
    if (inst.c.fibers()[inst.l].size() > 7) {
      CHECK_THROWS_AS(interspace_implications(inst.c, inst.s, inst.l), UnsupportedError);
      continue;
    }
    CAPTURE(spec);
    auto rep = interspace_implications(inst.c, inst.s, inst.l);
    CHECK(rep.ok());
  }
  auto c8 = build_pattern_instance("(C8,C8)");
  auto rep = interspace_implications(c8.c, c8.s, c8.l);
  bool fired = false;
  for (const auto& i : rep.items)
    if (i.premise == "C8") fired = i.fired && i.holds;
  CHECK(fired);
}

TEST_CASE("pattern factory") {
  for (const auto& spec : supported_pattern_specs()) {
    CAPTURE(spec);
    auto inst = build_pattern_instance(spec);
    CHECK(verify_coherence(inst.c.base()).ok());
    CHECK(inst.c.fiber_count() == 2);
    CHECK(inst.pattern == spec);
  }
  auto k4 = build_pattern_instance("(K4,2)");
  CHECK(k4.c.fibers()[k4.s].size() == 4);
  CHECK(k4.c.fibers()[k4.l].size() == 6);
  CHECK(k4.c.relations(k4.l, k4.s).size() == 2);
  auto twice = build_pattern_instance("(K4,2)", 2);
  CHECK(twice.c.fibers()[twice.l].size() == 12);
  auto dag = build_pattern_instance("(K6,3‡)");
  CHECK(dag.c.fibers()[dag.l].size() == 10);
  auto alt = build_pattern_instance("(2K3,3)", 1, "(2C3>,3K2,3K2,3K2)");
  CHECK(to_string(type_tuple(alt.c, alt.s)) == "(2C3>,3K2,3K2,3K2)");
  CHECK_THROWS_AS(build_pattern_instance("(K5,2)"), UnsupportedError);
  CHECK_THROWS_AS(build_pattern_instance("(K4,2)", 1, "(K6)"), UnsupportedError);
}
