#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgame/involutive.hpp"
#include "dgame/solver.hpp"
#include "dgame/strategy.hpp"

namespace dgame {

// --------------------------------------------------------------------------
// Gentle's constructive strategies on Cartesian products.

// K_n box K_m with d = m+1 colors, driven by matchings of K_n.  Applicable
// when n != m and one of: n even, m >= n-1, Rascal first; n odd, m even,
// m >= 2n-2, Rascal first; n and m odd, m >= 2n-1, Gentle first.
StrategyPtr gentle_matching_strategy(const Graph& g, int d, Player first);

// K_2 box K_m with d = m colors, m >= 5, Rascal first: complete Rascal's
// K_2-fiber, never repeating a completed fiber's color pair.
StrategyPtr gentle_k2_strategy(const Graph& g, int d, Player first);

// H box F with H involutive and relatively prime to F, Rascal first.  Plays
// `inner` (a Gentle-second winning strategy on H whose terminal block-lists
// stay inside inner_lists) in the fiber Rascal opens first, and steers every
// other fiber's block-list to encode the distinguishing coloring f_coloring.
StrategyPtr gentle_blocklist_strategy(const Graph& g, int d, Player first,
                                      InvolutiveStructure bar,
                                      Coloring f_coloring, StrategyPtr inner,
                                      std::vector<BlockList> inner_lists);

// C_n box F for n in {4,6} with two colors, Rascal first; f_coloring is a
// distinguishing 3-coloring of F that uses all three colors.
StrategyPtr gentle_c4c6_strategy(const Graph& g, int d, Player first,
                                 Coloring f_coloring);

// H box F with H vertex transitive and D(F) <= 2: plays `inner` per fiber
// until the first fiber completes, then steers every fiber's parity label to
// a distinguishing 2-coloring of F.
StrategyPtr gentle_parity_strategy(const Graph& g, int d, Player first,
                                   Coloring f_coloring, StrategyPtr inner);

// C_n box C_m with two colors, n prime, n != m odd, m >= 7, Gentle first.
StrategyPtr gentle_prime_cycle_strategy(const Graph& g, int d, Player first);

// --------------------------------------------------------------------------
// Rascal's counter-strategies.

// Mirrors across a nontrivial involution; wins whenever |V| even with Gentle
// first or |V| odd with Rascal first.
StrategyPtr rascal_mirror_strategy(const Graph& g, int d, Player first,
                                   Permutation sigma);

// K_2 box K_m with d < m colors, m >= 5, Rascal first: forces two K_2-fibers
// strictly colored the same.
StrategyPtr rascal_k2km_strategy(const Graph& g, int d, Player first);

// K_n box K_m against a K_n-fiber-strategy-conforming Gentle only:
// (Rascal first, n odd, m even, m < 2n-2) or (Gentle first, n and m odd,
// m < 2n-1).  Clones one K_m-fiber onto another.
StrategyPtr rascal_antifiber_strategy(const Graph& g, int d, Player first);

// --------------------------------------------------------------------------
// Solver-backed strategies.

// Optimal play for `side` extracted from solver values: at each state, the
// first legal move in canonical order whose subgame is winning for `side`.
// Fails with ParamError when solve(g, d, first) is not won by `side`.
StrategyPtr extract_strategy(const Graph& g, int d, Player first, Player side,
                             SolveOptions opt = {});

// Same, for the block-list-constrained game on an involutive graph.
StrategyPtr extract_constrained_strategy(const Graph& h, int d, Player first,
                                         Player side,
                                         const std::vector<BlockList>& allowed,
                                         const InvolutiveStructure& bar,
                                         SolveOptions opt = {});

// --------------------------------------------------------------------------
// Auxiliary constructions.

// Lexicographically first distinguishing coloring with colors 1..d; with
// require_all_colors, every color must appear.  nullopt when none exists.
std::optional<Coloring> find_distinguishing_coloring(const Graph& g, int d,
                                                     bool require_all_colors);

// Least d admitting a distinguishing coloring (the classical invariant).
int distinguishing_number(const Graph& g, int max_d = 8);

// Smallest set L of block-lists (by size, then lexicographic) such that
// Gentle wins the L-constrained game on h playing second.
std::vector<BlockList> derive_blocklist_set(const Graph& h, int d,
                                            const InvolutiveStructure& bar,
                                            SolveOptions opt = {});

// --------------------------------------------------------------------------
// Name registry for the CLI.

std::vector<std::string> strategy_names();

// Builds a named strategy with default auxiliary inputs (detected involution,
// brute-forced distinguishing colorings, solver-extracted inner strategies).
StrategyPtr make_named_strategy(const std::string& name, const Graph& g, int d,
                                Player first, SolveOptions opt = {});

// The adversary filter a named strategy needs, when it only claims wins
// against a conforming opponent (nullptr otherwise).
MoveFilter named_strategy_adversary_filter(const std::string& name,
                                           const Graph& g);

}  // namespace dgame
