#include "dgame/symmetry.hpp"

#include <set>

#include "dgame/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace dgame;

TEST_SUITE_BEGIN("symmetry");

TEST_CASE("automorphism group orders") {
  CHECK(automorphisms(generate(Family::Cycle, 5)).order() == 10);
  CHECK(automorphisms(generate(Family::Complete, 4)).order() == 24);

  // Relatively prime factors: |Aut| multiplies.  Cross-checked against the
  // plain backtracking oracle.
  Graph t = parse_graph("C3xC5");
  AutomorphismSet auts = automorphisms(t);
  CHECK(auts.order() == 60);
  auto naive = testutil::naive_automorphisms(t);
  REQUIRE(naive.size() == 60);
  for (std::size_t i = 0; i < naive.size(); ++i) {
    CHECK(auts.elements()[i].image() == naive[i]);
  }
}

TEST_CASE("automorphism sets are groups") {
  for (const char* expr : {"C6", "K4", "Q3", "K2xK3"}) {
    Graph g = parse_graph(expr);
    AutomorphismSet auts = automorphisms(g);
    std::set<std::vector<int>> elems;
    for (const auto& p : auts.elements()) elems.insert(p.image());
    CHECK(elems.count(Permutation::identity(g.order()).image()) == 1);
    for (const auto& a : auts.elements()) {
      CHECK(elems.count(a.inverse().image()) == 1);
      for (const auto& b : auts.elements()) {
        CHECK(elems.count(a.compose(b).image()) == 1);
      }
    }
  }
}

TEST_CASE("enumeration cap raises a resource error") {
  CHECK_THROWS_AS(automorphisms(generate(Family::Cycle, 70)), ResourceError);
  CHECK_NOTHROW(automorphisms(generate(Family::Cycle, 70), 128));
}

TEST_CASE("color stabilizers") {
  Graph k2 = generate(Family::Complete, 2);
  CHECK(color_stabilizer(k2, {1, 2}).order() == 1);

  Graph c4 = generate(Family::Cycle, 4);
  CHECK(color_stabilizer(c4, {1, 1, 1, 1}).order() == 8);

  // One reflection survives (1,1,2,2,2) on C5; cross-checked against the
  // arithmetic dihedral group.
  Graph c5 = generate(Family::Cycle, 5);
  Coloring c = {1, 1, 2, 2, 2};
  CHECK(color_stabilizer(c5, c).order() == 2);
  int oracle = 0;
  for (const auto& sigma : testutil::dihedral(5)) {
    if (testutil::preserves_coloring(sigma, c)) ++oracle;
  }
  CHECK(oracle == 2);

  CHECK_THROWS_AS(color_stabilizer(c4, {1, 0, 1, 1}), ParamError);
}

TEST_CASE("distinguishing colorings") {
  CHECK(is_distinguishing(generate(Family::Complete, 2), {1, 2}));

  // D(C5) = 3: every 2-coloring of C5 keeps a symmetry.
  Graph c5 = generate(Family::Cycle, 5);
  for (int mask = 0; mask < (1 << 5); ++mask) {
    Coloring c(5);
    for (int v = 0; v < 5; ++v) c[v] = 1 + ((mask >> v) & 1);
    CHECK_FALSE(is_distinguishing(c5, c));
    CHECK(is_distinguishing(c5, c) == testutil::naive_distinguishing(c5, c));
  }

  // D(C3xC3) = 3: no 2-coloring works, some 3-coloring does.
  Graph t = parse_graph("C3xC3");
  AutomorphismSet auts = automorphisms(t);
  bool two_works = false;
  for (int mask = 0; mask < (1 << 9); ++mask) {
    Coloring c(9);
    for (int v = 0; v < 9; ++v) c[v] = 1 + ((mask >> v) & 1);
    two_works |= is_distinguishing(t, auts, c);
  }
  CHECK_FALSE(two_works);
  bool three_works = false;
  for (long long code = 0; code < 19683 && !three_works; ++code) {
    long long rest = code;
    Coloring c(9);
    for (int v = 0; v < 9; ++v) {
      c[v] = static_cast<std::uint8_t>(1 + rest % 3);
      rest /= 3;
    }
    three_works = is_distinguishing(t, auts, c);
  }
  CHECK(three_works);
}

TEST_CASE("product automorphisms decompose over relatively prime factors") {
  Graph t = parse_graph("C3xC5");
  CHECK(product_decompose(t, Permutation::identity(15)).has_value());

  // Rotation of the C5 coordinate.
  std::vector<int> img(15);
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 5; ++v) img[u * 5 + v] = u * 5 + (v + 1) % 5;
  }
  auto parts = product_decompose(t, Permutation(img));
  REQUIRE(parts.has_value());
  CHECK(parts->first.is_identity());
  CHECK_FALSE(parts->second.is_identity());

  AutomorphismSet all = automorphisms(t);
  for (const auto& sigma : all.elements()) {
    auto split = product_decompose(t, sigma);
    REQUIRE(split.has_value());
    for (int u = 0; u < 3; ++u) {
      for (int v = 0; v < 5; ++v) {
        CHECK(sigma(t.vertex_at({u, v})) ==
              t.vertex_at({split->first(u), split->second(v)}));
      }
    }
  }

  // The factor swap of C4xC4 does not decompose.
  Graph sq = parse_graph("C4xC4");
  std::vector<int> swap_img(16);
  for (int u = 0; u < 4; ++u) {
    for (int v = 0; v < 4; ++v) swap_img[u * 4 + v] = v * 4 + u;
  }
  CHECK_FALSE(product_decompose(sq, Permutation(swap_img)).has_value());
}

TEST_CASE("relatively prime tests") {
  CHECK(relatively_prime(generate(Family::Cycle, 3),
                         generate(Family::Cycle, 5)));
  CHECK_FALSE(relatively_prime(generate(Family::Cycle, 4),
                               generate(Family::Cycle, 4)));
  // |Aut(K2 x K3)| = 12 = 2 * 6.
  Graph k23 = parse_graph("K2xK3");
  CHECK(automorphisms(k23).order() == 12);
  CHECK(relatively_prime(generate(Family::Complete, 2),
                         generate(Family::Complete, 3)));
}

TEST_CASE("canonical keys") {
  Graph c4 = generate(Family::Cycle, 4);
  AutomorphismSet auts = automorphisms(c4);

  CHECK(canonical_key(auts, {1, 0, 0, 0}) == canonical_key(auts, {0, 0, 1, 0}));
  CHECK(canonical_key(auts, {1, 0, 0, 0}) == canonical_key(auts, {2, 0, 0, 0}));
  // Adjacent equal pair vs antipodal equal pair are genuinely different.
  CHECK(canonical_key(auts, {1, 1, 0, 0}) != canonical_key(auts, {1, 0, 1, 0}));

  // Palette normalization off: recoloring is no longer collapsed.
  CHECK(canonical_key(auts, {1, 0, 0, 0}, false) !=
        canonical_key(auts, {2, 0, 0, 0}, false));

  // Keys are invariant under every automorphism (game-value invariance).
  Graph c6 = generate(Family::Cycle, 6);
  AutomorphismSet a6 = automorphisms(c6);
  Coloring state = {1, 2, 0, 1, 0, 2};
  for (std::size_t i = 0; i < a6.order(); ++i) {
    const auto& inv = a6.inverse_image(i);
    Coloring moved(6);
    for (int v = 0; v < 6; ++v) moved[v] = state[inv[v]];
    CHECK(canonical_key(a6, moved) == canonical_key(a6, state));
  }
}

TEST_CASE("vertex transitivity and involutions") {
  CHECK(is_vertex_transitive(generate(Family::Cycle, 5),
                             automorphisms(generate(Family::Cycle, 5))));
  CHECK_FALSE(is_vertex_transitive(generate(Family::Path, 3),
                                   automorphisms(generate(Family::Path, 3))));

  auto invol = first_nontrivial_involution(
      automorphisms(generate(Family::Cycle, 4)));
  REQUIRE(invol.has_value());
  CHECK(invol->is_involution());
  CHECK_FALSE(invol->is_identity());
  CHECK(invol->fixed_points().empty());
}

TEST_SUITE_END();
