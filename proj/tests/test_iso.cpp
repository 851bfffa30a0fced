#include <chrono>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wl/graphs.hpp"
#include "wl/iso.hpp"
#include "wl/refine.hpp"
#include "wl/universe.hpp"

using namespace wl;

TEST_CASE("automorphism group orders") {
  CHECK(automorphism_group(to_digraph(graphs::complete(4))).order == 24);
  CHECK(automorphism_group(to_digraph(graphs::cycle(4))).order == 8);
  CHECK(automorphism_group(to_digraph(graphs::cycle(7))).order == 14);
  CHECK(automorphism_group(to_digraph(graphs::petersen())).order == 120);
  CHECK(automorphism_group(to_digraph(graphs::rook(4))).order == 1152);
  CHECK(automorphism_group(to_digraph(graphs::shrikhande())).order == 192);
  CHECK(automorphism_group(to_digraph(graphs::complete(12))).order == 479001600ull);
  CHECK(automorphism_group(graphs::directed_cycle(5)).order == 5);
  CHECK(automorphism_group(to_digraph(graphs::path(5))).order == 2);
}

TEST_CASE("group elements match the stabilizer-chain order") {
  for (auto g : {to_digraph(graphs::cycle(6)), to_digraph(graphs::petersen()),
                 coherent_closure(to_digraph(graphs::cycle(4))).base()}) {
    auto a = automorphism_group(g);
    auto els = group_elements(g.n(), a.generators);
    CHECK(els.size() == a.order);
    for (auto& p : els) CHECK(is_automorphism(g, p));
  }
}

TEST_CASE("isomorphism search against brute force") {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 300; ++it) {
    int n = 1 + static_cast<int>(rng() % 7);
    auto a = graphs::random_graph(n, 0.5, rng);
    auto b = (it % 2) ? graphs::relabel(a, graphs::random_permutation(n, rng)) : graphs::random_graph(n, 0.5, rng);
    CHECK(isomorphic(a, b) == oracle::isomorphic_bruteforce(a, b));
    auto p = find_isomorphism(to_digraph(a), to_digraph(b));
    if (p) CHECK(to_digraph(graphs::relabel(a, *p)) == to_digraph(b));
  }
  CHECK_FALSE(isomorphic(graphs::rook(4), graphs::shrikhande()));
}

TEST_CASE("graph universe counts") {
  const int expected[] = {1, 1, 2, 4, 11, 34, 156, 1044};
  for (int n = 0; n <= 7; ++n) CHECK(graph_universe(n).size() == static_cast<std::size_t>(expected[n]));
  CHECK(universe_index(graphs::cycle(5)) >= 0);
  for (int n = 1; n <= 5; ++n) {
    const auto& u = graph_universe(n);
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j) CHECK_FALSE(oracle::isomorphic_bruteforce(u[i], u[j]));
  }
}

TEST_CASE("canonical form is a complete invariant on small graphs") {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 400; ++it) {
    int n = 1 + static_cast<int>(rng() % 8);
    auto a = graphs::random_graph(n, 0.5, rng);
    auto b = (it % 2) ? graphs::relabel(a, graphs::random_permutation(n, rng)) : graphs::random_graph(n, 0.5, rng);
    CHECK((canonical_form(a).first == canonical_form(b).first) == oracle::isomorphic_bruteforce(a, b));
  }
  CHECK(canonical_form(graphs::complete(9)).first != canonical_form(graphs::empty(9)).first);
}
