#include "dgame/game.hpp"

#include "dgame/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace dgame;

TEST_SUITE_BEGIN("game");

TEST_CASE("initial states") {
  GameState s = initial_state(generate(Family::Cycle, 4), 2, Player::Rascal);
  CHECK(s.colored_count() == 0);
  CHECK(s.to_move() == Player::Rascal);
  CHECK_FALSE(s.is_terminal());

  GameState t = initial_state(generate(Family::Cycle, 3), 3, Player::Gentle);
  CHECK(t.to_move() == Player::Gentle);

  GameState u = initial_state(parse_graph("K2xK3"), 3, Player::Rascal);
  CHECK(u.graph().order() == 6);
  CHECK_THROWS_AS(initial_state(generate(Family::Cycle, 3), 0, Player::Gentle),
                  ParamError);
}

TEST_CASE("legal moves shrink as the board fills") {
  GameState s = initial_state(generate(Family::Cycle, 4), 2, Player::Rascal);
  CHECK(s.legal_moves().size() == 8);
  GameState s1 = s.apply({0, 1});
  CHECK(s1.legal_moves().size() == 6);
  CHECK(s.legal_moves().size() == 8);  // value semantics: s unchanged
  CHECK(s1.to_move() == Player::Gentle);

  GameState done = s1;
  for (int v = 1; v < 4; ++v) done = done.apply({v, 1});
  CHECK(done.is_terminal());
  CHECK(done.legal_moves().empty());
}

TEST_CASE("illegal moves are rule errors naming the violation") {
  GameState s = initial_state(generate(Family::Cycle, 4), 2, Player::Rascal);
  GameState s1 = s.apply({0, 1});
  CHECK_THROWS_WITH_AS(s1.apply({0, 2}), doctest::Contains("already colored"),
                       RuleError);
  CHECK_THROWS_WITH_AS(s.apply({1, 3}), doctest::Contains("palette"),
                       RuleError);
  CHECK_THROWS_AS(s.apply({7, 1}), RuleError);
}

TEST_CASE("terminal evaluation") {
  Graph k2 = generate(Family::Complete, 2);
  GameState s = initial_state(k2, 2, Player::Gentle).apply({0, 1}).apply({1, 2});
  Verdict v = evaluate_terminal(s);
  CHECK(v.winner == Player::Gentle);
  CHECK_FALSE(v.witness.has_value());

  Graph c4 = generate(Family::Cycle, 4);
  GameState mono = initial_state(c4, 2, Player::Rascal);
  for (int i = 0; i < 4; ++i) mono = mono.apply({i, 1});
  Verdict w = evaluate_terminal(mono);
  CHECK(w.winner == Player::Rascal);
  REQUIRE(w.witness.has_value());
  CHECK_FALSE(w.witness->is_identity());
  for (int i = 0; i < 4; ++i) {
    CHECK(mono.coloring()[i] == mono.coloring()[(*w.witness)(i)]);
  }

  CHECK_THROWS_AS(evaluate_terminal(initial_state(c4, 2, Player::Rascal)),
                  ParamError);

  // Any 2-coloring of C5 loses for Gentle (D(C5) = 3).
  Graph c5 = generate(Family::Cycle, 5);
  AutomorphismSet auts = automorphisms(c5);
  for (int mask = 0; mask < 32; ++mask) {
    GameState g5 = initial_state(c5, 2, Player::Gentle);
    for (int v = 0; v < 5; ++v) g5 = g5.apply({v, 1 + ((mask >> v) & 1)});
    CHECK(evaluate_terminal(g5, auts).winner == Player::Rascal);
  }
}

TEST_CASE("verdicts are invariant under palette and vertex relabeling") {
  Graph g = parse_graph("K2xK3");
  AutomorphismSet auts = automorphisms(g);
  std::uint64_t seed = 12345;
  auto next = [&seed] {
    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
    return seed >> 33;
  };
  for (int it = 0; it < 200; ++it) {
    Coloring c(g.order());
    for (auto& x : c) x = static_cast<std::uint8_t>(1 + next() % 3);
    auto play = [&](const Coloring& cc) {
      GameState s = initial_state(g, 3, Player::Gentle);
      for (int v = 0; v < g.order(); ++v) s = s.apply({v, cc[v]});
      return evaluate_terminal(s, auts).winner;
    };
    Player base = play(c);

    Coloring swapped(g.order());
    for (int v = 0; v < g.order(); ++v) {
      swapped[v] = static_cast<std::uint8_t>(c[v] == 3 ? 3 : 3 - c[v]);
    }
    CHECK(play(swapped) == base);

    const Permutation& sigma =
        auts.elements()[next() % auts.order()];
    Coloring moved(g.order());
    for (int v = 0; v < g.order(); ++v) moved[v] = c[sigma(v)];
    CHECK(play(moved) == base);
  }
}

TEST_CASE("history determines the mover and supports replay") {
  GameState s = initial_state(generate(Family::Cycle, 5), 2, Player::Rascal);
  GameState t = s.apply({2, 1}).apply({0, 2}).apply({4, 1});
  CHECK(t.history().size() == 3);
  CHECK(t.to_move() == Player::Gentle);
  for (std::size_t i = 0; i < t.history().size(); ++i) {
    CHECK(t.history()[i].by ==
          (i % 2 == 0 ? Player::Rascal : Player::Gentle));
  }

  // Undo by reconstruction: replaying all but the last move restores the
  // previous position.
  GameState rebuilt = initial_state(t.graph(), t.colors(), t.first_player());
  for (std::size_t i = 0; i + 1 < t.history().size(); ++i) {
    rebuilt = rebuilt.apply({t.history()[i].vertex, t.history()[i].color});
  }
  CHECK(rebuilt.coloring() == s.apply({2, 1}).apply({0, 2}).coloring());
  CHECK(rebuilt.to_move() == t.history().back().by);
}

TEST_SUITE_END();
