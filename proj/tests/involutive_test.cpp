#include "dgame/involutive.hpp"

#include <map>

#include "dgame/errors.hpp"
#include "doctest.h"

using namespace dgame;

TEST_SUITE_BEGIN("involutive");

TEST_CASE("block types") {
  CHECK(block_type(1, 2, 2) == 1);
  CHECK(block_type(3, 3, 5) == 0);
  CHECK(block_type(1, 4, 4) == 1);
  CHECK(block_type(1, 3, 4) == 2);
  for (int d = 1; d <= 6; ++d) {
    for (int a = 1; a <= d; ++a) {
      CHECK(block_type(a, a, d) == 0);
      for (int b = 1; b <= d; ++b) {
        CHECK(block_type(a, b, d) == block_type(b, a, d));
        CHECK(block_type(a, b, d) <= d / 2);
      }
    }
  }
  CHECK_THROWS_AS(block_type(0, 1, 2), ParamError);
  CHECK_THROWS_AS(block_type(1, 3, 2), ParamError);
}

TEST_CASE("detect_involutive finds the antipodal maps") {
  auto c6 = detect_involutive(generate(Family::Cycle, 6));
  REQUIRE(c6.has_value());
  for (int i = 0; i < 6; ++i) CHECK(c6->bar(i) == (i + 3) % 6);

  auto q3 = detect_involutive(generate(Family::Hypercube, 3));
  REQUIRE(q3.has_value());
  for (int v = 0; v < 8; ++v) CHECK(q3->bar(v) == (7 ^ v));

  // K4: Aut = S4 has a trivial center, so no central involution exists.
  // Cross-checked by exhausting every involution and testing commutation.
  Graph k4 = generate(Family::Complete, 4);
  CHECK_FALSE(detect_involutive(k4).has_value());
  AutomorphismSet s4 = automorphisms(k4);
  for (const auto& sigma : s4.elements()) {
    if (sigma.is_identity() || !sigma.is_involution()) continue;
    bool central = true;
    for (const auto& tau : s4.elements()) {
      central &= tau.compose(sigma) == sigma.compose(tau);
    }
    CHECK_FALSE(central);
  }

  CHECK_FALSE(detect_involutive(generate(Family::Cycle, 5)).has_value());
}

TEST_CASE("block lists") {
  Graph c4 = generate(Family::Cycle, 4);
  auto s = detect_involutive(c4);
  REQUIRE(s.has_value());
  CHECK(block_list(*s, {1, 1, 1, 1}, 2) == BlockList({2, 0}));
  CHECK(block_list(*s, {1, 2, 2, 2}, 2) == BlockList({1, 1}));

  Graph c8 = generate(Family::Cycle, 8);
  auto s8 = detect_involutive(c8);
  REQUIRE(s8.has_value());
  for (int mask = 0; mask < 256; mask += 37) {
    Coloring c(8);
    for (int v = 0; v < 8; ++v) c[v] = 1 + ((mask >> v) & 1);
    BlockList bl = block_list(*s8, c, 2);
    CHECK(bl.counts().size() == 2);
    CHECK(bl.total() == 4);
  }
}

TEST_CASE("every block-list of C6 at d=2 is realized") {
  Graph c6 = generate(Family::Cycle, 6);
  auto s = detect_involutive(c6);
  REQUIRE(s.has_value());
  std::map<BlockList, int> census;
  for (int mask = 0; mask < 64; ++mask) {
    Coloring c(6);
    for (int v = 0; v < 6; ++v) c[v] = 1 + ((mask >> v) & 1);
    ++census[block_list(*s, c, 2)];
  }
  auto lists = all_block_lists(3, 2);
  CHECK(lists.size() == weak_composition_count(3, 2));
  for (const auto& bl : lists) CHECK(census.count(bl) == 1);
}

TEST_CASE("meta-colors and parity labels") {
  MetaColor mc = meta_color({1, 1, 2, 3}, 6);
  CHECK(mc.counts == std::vector<int>({2, 1, 1, 0, 0, 0}));
  CHECK(meta_color({2, 2, 2}, 3).counts == std::vector<int>({0, 3, 0}));
  CHECK(meta_color({1, 2, 3}, 3) == meta_color({3, 1, 2}, 3));

  CHECK(parity_label({1, 2, 2}) == 1);
  CHECK(parity_label({1, 1, 2}) == 2);
  CHECK(parity_label({2, 2, 2}) == 2);
  CHECK_THROWS_AS(parity_label({1, 0, 2}), ParamError);
}

TEST_CASE("colors-preserving product automorphisms preserve meta-colors") {
  Graph g = parse_graph("K2xK3");
  AutomorphismSet auts = automorphisms(g);
  auto fibs = fibers(g, 0);
  std::uint64_t seed = 777;
  auto next = [&seed] {
    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
    return seed >> 33;
  };
  for (int it = 0; it < 300; ++it) {
    Coloring c(g.order());
    for (auto& x : c) x = static_cast<std::uint8_t>(1 + next() % 3);
    for (const auto& sigma : auts.elements()) {
      bool preserves = true;
      for (int v = 0; v < g.order(); ++v) preserves &= c[v] == c[sigma(v)];
      if (!preserves) continue;
      auto parts = product_decompose(g, sigma);
      REQUIRE(parts.has_value());
      for (const auto& f : fibs) {
        std::vector<std::uint8_t> here, there;
        for (int u = 0; u < 2; ++u) {
          here.push_back(c[g.vertex_at({u, f.cocoord[0]})]);
          there.push_back(c[g.vertex_at({u, parts->second(f.cocoord[0])})]);
        }
        CHECK(meta_color(here, 3) == meta_color(there, 3));
      }
    }
  }
}

TEST_CASE("weak composition counts") {
  CHECK(weak_composition_count(4, 2) == 5);
  CHECK(weak_composition_count(7, 1) == 1);
  CHECK(weak_composition_count(3, 4) == 10);
  CHECK(all_block_lists(4, 2).size() == 5);
  CHECK(all_block_lists(3, 4).size() == 10);
}

TEST_SUITE_END();
