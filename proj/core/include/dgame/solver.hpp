#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dgame/game.hpp"
#include "dgame/graph.hpp"
#include "dgame/involutive.hpp"
#include "dgame/symmetry.hpp"

namespace dgame {

struct SolveOptions {
  std::uint64_t node_budget = 1'000'000'000;
  double time_budget_seconds = 0.0;  // 0 = unlimited
  bool memoize = true;               // transposition table on canonical keys
  int aut_cap = kDefaultAutCap;
};

struct GameValue {
  Player winner = Player::Gentle;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

// Exact minimax solver for one (graph, palette, first player) instance.
// Memoization keys are full canonical forms, never bare hashes; a terminal
// predicate that is not palette-symmetric disables palette normalization in
// the keys.  Single-threaded and deterministic; instances are independent, so
// callers may run several Solvers concurrently.
class Solver {
 public:
  Solver(Graph g, int colors, Player first, SolveOptions opt = {});

  // Extra conjunct on Gentle's terminal win condition.  palette_symmetric
  // must be false unless pred is invariant under palette permutations.
  void restrict_gentle_wins(std::function<bool(const Coloring&)> pred,
                            bool palette_symmetric);

  GameValue run();

  // Winner under optimal play from a mid-game position (reachable coloring
  // of this solver's instance).  Shares the memo table.
  Player winner_from(const Coloring& position);

  const Graph& graph() const { return graph_; }
  int colors() const { return colors_; }
  Player first_player() const { return first_; }
  const AutomorphismSet& auts() const { return auts_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  Player eval(Coloring& pos, int colored, const std::string* key_hint);
  Player mover_at(int colored) const;
  void check_budget();

  Graph graph_;
  int colors_;
  Player first_;
  SolveOptions opt_;
  AutomorphismSet auts_;
  std::function<bool(const Coloring&)> extra_win_;
  bool palette_symmetric_ = true;
  std::unordered_map<std::string, Player> memo_;
  std::uint64_t nodes_ = 0;
  std::uint64_t budget_check_counter_ = 0;
  std::chrono::steady_clock::time_point start_;
};

GameValue solve(const Graph& g, int colors, Player first,
                SolveOptions opt = {});

// Like solve, but Gentle additionally needs the final block-list to be in
// `allowed`.  The terminal predicate is not palette-symmetric, so keys keep
// colors fixed.
GameValue solve_constrained(const Graph& g, int colors, Player first,
                            const std::vector<BlockList>& allowed,
                            const InvolutiveStructure& bar,
                            SolveOptions opt = {});

GameValue solve_with_fixed_first_move(const Graph& g, int colors, Player first,
                                      Move move, SolveOptions opt = {});

// Proposition-certificate for an infinite game distinguishing number: a
// nontrivial involution exists and the parity matches (|V| even with Gentle
// first, |V| odd with Rascal first).
std::optional<Permutation> infinity_certificate(const Graph& g, Player first,
                                                int aut_cap = kDefaultAutCap);

struct GdnResult {
  enum class Kind { Finite, Infinite, UnknownAtLeast };

  Kind kind = Kind::UnknownAtLeast;
  int value = 0;  // least winning d when Finite; cap+1 when UnknownAtLeast

  // Exactly one of the two certificates is set when Infinite: either the
  // involution route, or saturation (Rascal won for every d <= |V|, and the
  // winner is constant in d from |V| on, because at most |V| colors can ever
  // appear and extra colors are palette-equivalent).
  std::optional<Permutation> involution;
  std::optional<int> saturation_order;

  std::vector<GameValue> solves;  // per-d statistics, d = 1, 2, ...
};

std::string to_string(const GdnResult& r);

// Tries infinity_certificate first, then solves d = 1.. up to min(cap, |V|).
GdnResult game_distinguishing_number(const Graph& g, Player first, int cap,
                                     SolveOptions opt = {});

}  // namespace dgame
