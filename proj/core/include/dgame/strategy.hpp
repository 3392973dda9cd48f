#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgame/game.hpp"
#include "dgame/graph.hpp"

namespace dgame {

// A deterministic move-selection rule for one player.  choose() is a pure
// function of the visible state (including history); any bookkeeping is
// recomputed from the history, so strategies are safe to consult from
// concurrent verification branches.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string name() const = 0;
  virtual Player side() const = 0;

  // State must have this strategy's side to move and be reachable under this
  // strategy's own prior moves.
  virtual Move choose(const GameState& s) const = 0;

  // Terminal-state invariants this strategy promises; checked by verifiers.
  // Returns an error description, or nullopt when the invariants hold.
  virtual std::optional<std::string> check_terminal(const GameState&) const {
    return std::nullopt;
  }

  // True for strategies whose claims only hold against a restricted
  // adversary (verification then requires an adversary move filter).
  virtual bool requires_conforming_adversary() const { return false; }
};

using StrategyPtr = std::shared_ptr<const Strategy>;

// ---------------------------------------------------------------------------
// Fiber bookkeeping for the fiber-reply discipline on products.

enum class FiberCase { Zero, One };

struct FiberTracker {
  int axis = 0;
  FiberCase case_tag = FiberCase::Zero;
  int fiber_size = 0;   // order of the copied factor
  int fiber_count = 0;  // number of fibers along the axis
  std::vector<int> colored_in_fiber;
  std::vector<int> opened_by;  // -1 untouched, else 0=Gentle 1=Rascal
  int untouched_fibers = 0;
  int gentle_opens = 0;

  // Derives the tracker from the state's history.  The case tag follows from
  // the fiber-size parity, the fiber count and the first player; throws
  // ApplicabilityError when neither case applies.
  static FiberTracker from_state(const GameState& s, int axis);
};

// Fibers Gentle may answer in, by the fiber-strategy discipline.  Case 0:
// the fiber of Rascal's last move.  Case 1: a fresh fiber when Rascal just
// opened one, otherwise Rascal's fiber; every fiber for Gentle's own opening
// move of the game.
std::vector<int> fiber_constraint(const FiberTracker& t, const GameState& s);

// ---------------------------------------------------------------------------
// Matchings used by the complete-graph and cycle strategies.

struct MatchingSet {
  // partner[m][v]: vertex matched with v in matching m, or -1.
  std::vector<std::vector<int>> partner;
  // uncovered[m]: the vertex missed by matching m, or -1 for perfect ones.
  std::vector<int> uncovered;

  int count() const { return static_cast<int>(partner.size()); }
};

// Canonical round-robin 1-factorization of an even complete graph: n-1
// perfect matchings covering E(K_n).
MatchingSet round_robin_matchings(int n);
// For odd n: the n rotations of a near-perfect matching of K_n; matching j
// misses vertex j and the union covers E(K_n).
MatchingSet rotation_matchings_complete(int n);
// For an odd cycle: `count` rotations of a fixed near-perfect matching of
// C_n; matching k misses vertex k.  Three rotations already cover E(C_n).
MatchingSet rotation_matchings_cycle(int n, int count);

// ---------------------------------------------------------------------------
// Adversarial verification.

enum class VerifyMode { Exhaustive, Sampled, Constrained };

std::optional<VerifyMode> verify_mode_from_string(std::string_view s);

using MoveFilter = std::function<std::vector<Move>(const GameState&)>;

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Exhaustive;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  // Adversary move generator; required for Constrained mode, optional for
  // Sampled (sampling then draws from the filtered move list).
  MoveFilter adversary_moves;
  std::uint64_t node_budget = 1'000'000'000;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::size_t max_recorded_failures = 8;
};

struct VerifyReport {
  bool win_all = false;
  std::uint64_t games = 0;
  std::uint64_t losses = 0;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  // Move list of the first losing line (DFS/sample order), if any.
  std::vector<HistoryEntry> counterexample;
  std::vector<std::string> invariant_failures;
};

// Plays `strat` against every adversary line (Exhaustive/Constrained) or
// against seeded uniform random play (Sampled).  Every strategy move is
// validated; terminal states run the strategy's check_terminal hook.
// Exhaustive adversary branches fan out over worker threads; results are
// deterministic regardless of scheduling.
VerifyReport verify_strategy(const Graph& g, int colors, Player first,
                             const StrategyPtr& strat, VerifyOptions opt = {});

// Adversary filter restricting Gentle to fiber-strategy-conforming replies.
MoveFilter fiber_conforming_filter(int axis);

}  // namespace dgame
