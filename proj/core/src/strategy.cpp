#include "dgame/strategy.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <thread>

#include "dgame/errors.hpp"
#include "dgame/symmetry.hpp"

namespace dgame {

// ---------------------------------------------------------------------------
// Fiber bookkeeping.

FiberTracker FiberTracker::from_state(const GameState& s, int axis) {
  const Graph& g = s.graph();
  if (!g.is_product()) {
    throw ApplicabilityError("fiber tracker: graph is not a product");
  }
  int k = static_cast<int>(g.factors().size());
  if (axis < 0 || axis >= k) {
    throw ParamError("fiber tracker: bad axis " + std::to_string(axis));
  }

  FiberTracker t;
  t.axis = axis;
  t.fiber_size = g.factors()[axis].order();
  t.fiber_count = g.order() / t.fiber_size;

  int cofiber = t.fiber_count;  // |V(F)|: number of fibers along the axis
  if (t.fiber_size % 2 == 0 && s.first_player() == Player::Rascal) {
    t.case_tag = FiberCase::Zero;
  } else if (t.fiber_size % 2 == 1 &&
             ((cofiber % 2 == 0 && s.first_player() == Player::Rascal) ||
              (cofiber % 2 == 1 && s.first_player() == Player::Gentle))) {
    t.case_tag = FiberCase::One;
  } else {
    throw ApplicabilityError(
        "fiber strategy: parities do not match Case 0 (even fibers, Rascal "
        "first) or Case 1 (odd fibers, |V(F)| even with Rascal first or odd "
        "with Gentle first)");
  }

  t.colored_in_fiber.assign(t.fiber_count, 0);
  t.opened_by.assign(t.fiber_count, -1);
  t.untouched_fibers = t.fiber_count;
  // The fiber index of a vertex is its co-coordinate rank: strip the axis
  // coordinate out of the row-major code.
  for (const auto& h : s.history()) {
    int f = 0;
    int mult = 1;
    for (int i = k - 1; i >= 0; --i) {
      if (i == axis) continue;
      f += g.coord(h.vertex, i) * mult;
      mult *= g.factors()[i].order();
    }
    if (t.opened_by[f] < 0) {
      t.opened_by[f] = h.by == Player::Gentle ? 0 : 1;
      --t.untouched_fibers;
      if (h.by == Player::Gentle) ++t.gentle_opens;
    }
    ++t.colored_in_fiber[f];
  }
  return t;
}

namespace {

int fiber_index_of(const Graph& g, int axis, int vertex) {
  int k = static_cast<int>(g.factors().size());
  int f = 0;
  int mult = 1;
  for (int i = k - 1; i >= 0; --i) {
    if (i == axis) continue;
    f += g.coord(vertex, i) * mult;
    mult *= g.factors()[i].order();
  }
  return f;
}

}  // namespace

std::vector<int> fiber_constraint(const FiberTracker& t, const GameState& s) {
  if (s.to_move() != Player::Gentle) {
    throw InternalError("fiber_constraint: not Gentle's turn");
  }
  if (s.history().empty()) {
    // Gentle opens the game (Case 1 with Gentle first): any fiber.
    std::vector<int> all(t.fiber_count);
    for (int i = 0; i < t.fiber_count; ++i) all[i] = i;
    return all;
  }
  const HistoryEntry& last = s.history().back();
  if (last.by != Player::Rascal) {
    throw InternalError("fiber_constraint: last mover was not Rascal");
  }
  int f = fiber_index_of(s.graph(), t.axis, last.vertex);
  if (t.case_tag == FiberCase::Zero) return {f};

  if (t.colored_in_fiber[f] == 1) {
    // Rascal just opened a fresh fiber: Gentle opens another one.
    std::vector<int> fresh;
    for (int i = 0; i < t.fiber_count; ++i) {
      if (t.colored_in_fiber[i] == 0) fresh.push_back(i);
    }
    if (fresh.empty()) {
      throw InternalError("fiber_constraint: no fresh fiber left to pair");
    }
    return fresh;
  }
  return {f};
}

MoveFilter fiber_conforming_filter(int axis) {
  return [axis](const GameState& s) {
    FiberTracker t = FiberTracker::from_state(s, axis);
    std::vector<int> allowed = fiber_constraint(t, s);
    std::vector<char> ok(t.fiber_count, 0);
    for (int f : allowed) ok[f] = 1;
    std::vector<Move> moves;
    for (int v = 0; v < s.graph().order(); ++v) {
      if (s.color_at(v) != 0) continue;
      if (!ok[fiber_index_of(s.graph(), axis, v)]) continue;
      for (int c = 1; c <= s.colors(); ++c) moves.push_back({v, c});
    }
    return moves;
  };
}

// ---------------------------------------------------------------------------
// Matchings.

MatchingSet round_robin_matchings(int n) {
  if (n < 2 || n % 2 != 0) {
    throw ParamError("round_robin_matchings: n must be even and >= 2");
  }
  MatchingSet ms;
  // Circle method: fix n-1, rotate the rest.
  for (int r = 0; r < n - 1; ++r) {
    std::vector<int> partner(n, -1);
    partner[n - 1] = r;
    partner[r] = n - 1;
    for (int i = 1; i <= (n - 2) / 2; ++i) {
      int a = (r + i) % (n - 1);
      int b = (r - i + (n - 1)) % (n - 1);
      partner[a] = b;
      partner[b] = a;
    }
    ms.partner.push_back(std::move(partner));
    ms.uncovered.push_back(-1);
  }
  return ms;
}

MatchingSet rotation_matchings_complete(int n) {
  if (n < 3 || n % 2 != 1) {
    throw ParamError("rotation_matchings_complete: n must be odd and >= 3");
  }
  MatchingSet ms;
  for (int j = 0; j < n; ++j) {
    std::vector<int> partner(n, -1);
    for (int i = 1; i <= (n - 1) / 2; ++i) {
      int a = (j + i) % n;
      int b = (j - i + n) % n;
      partner[a] = b;
      partner[b] = a;
    }
    ms.partner.push_back(std::move(partner));
    ms.uncovered.push_back(j);
  }
  return ms;
}

MatchingSet rotation_matchings_cycle(int n, int count) {
  if (n < 3 || n % 2 != 1) {
    throw ParamError("rotation_matchings_cycle: n must be odd and >= 3");
  }
  if (count < 1 || count > n) {
    throw ParamError("rotation_matchings_cycle: bad rotation count");
  }
  MatchingSet ms;
  for (int k = 0; k < count; ++k) {
    std::vector<int> partner(n, -1);
    // Pairs (k+1, k+2), (k+3, k+4), ...: cycle edges missing vertex k.
    for (int t = 0; t < (n - 1) / 2; ++t) {
      int a = (k + 1 + 2 * t) % n;
      int b = (k + 2 + 2 * t) % n;
      partner[a] = b;
      partner[b] = a;
    }
    ms.partner.push_back(std::move(partner));
    ms.uncovered.push_back(k);
  }
  return ms;
}

// ---------------------------------------------------------------------------
// Verification.

std::optional<VerifyMode> verify_mode_from_string(std::string_view s) {
  if (s == "exhaustive") return VerifyMode::Exhaustive;
  if (s == "sampled") return VerifyMode::Sampled;
  if (s == "constrained") return VerifyMode::Constrained;
  return std::nullopt;
}

namespace {

struct VerifyShared {
  const Strategy* strat;
  const AutomorphismSet* auts;
  const MoveFilter* filter;  // may be null
  std::uint64_t node_budget;
  std::size_t max_failures;
};

struct BranchResult {
  std::uint64_t games = 0;
  std::uint64_t losses = 0;
  std::uint64_t nodes = 0;
  std::vector<HistoryEntry> counterexample;
  std::vector<std::string> invariant_failures;
  bool budget_hit = false;
};

std::vector<Move> adversary_moves(const VerifyShared& sh, const GameState& s) {
  if (sh.filter && *sh.filter) return (*sh.filter)(s);
  return s.legal_moves();
}

Move checked_strategy_move(const VerifyShared& sh, const GameState& s) {
  Move m = sh.strat->choose(s);
  if (!s.is_legal(m)) {
    throw InternalError("verify: strategy '" + sh.strat->name() +
                        "' returned the illegal move (v=" +
                        std::to_string(m.vertex) +
                        ", c=" + std::to_string(m.color) + ")");
  }
  return m;
}

// Depth-first exhaustive play; returns false once a loss is recorded and
// max_failures reached (callers then unwind).
bool dfs_exhaustive(const VerifyShared& sh, const GameState& s,
                    BranchResult& r) {
  if (r.nodes++ > sh.node_budget) {
    r.budget_hit = true;
    return false;
  }
  if (s.is_terminal()) {
    ++r.games;
    Verdict v = evaluate_terminal(s, *sh.auts);
    if (auto fail = sh.strat->check_terminal(s)) {
      if (r.invariant_failures.size() < sh.max_failures) {
        r.invariant_failures.push_back(*fail);
      }
    }
    if (v.winner != sh.strat->side()) {
      ++r.losses;
      if (r.counterexample.empty()) r.counterexample = s.history();
      return false;  // first counterexample is enough
    }
    return true;
  }
  if (s.to_move() == sh.strat->side()) {
    return dfs_exhaustive(sh, s.apply(checked_strategy_move(sh, s)), r);
  }
  for (const Move& m : adversary_moves(sh, s)) {
    if (!dfs_exhaustive(sh, s.apply(m), r)) return false;
  }
  return true;
}

void play_sampled(const VerifyShared& sh, const GameState& root,
                  std::uint64_t game_seed, BranchResult& r) {
  std::mt19937_64 rng(game_seed);
  GameState s = root;
  while (!s.is_terminal()) {
    ++r.nodes;
    if (s.to_move() == sh.strat->side()) {
      s = s.apply(checked_strategy_move(sh, s));
    } else {
      std::vector<Move> moves = adversary_moves(sh, s);
      if (moves.empty()) {
        throw InternalError("verify: adversary has no conforming move");
      }
      s = s.apply(moves[rng() % moves.size()]);
    }
  }
  ++r.games;
  Verdict v = evaluate_terminal(s, *sh.auts);
  if (auto fail = sh.strat->check_terminal(s)) {
    if (r.invariant_failures.size() < sh.max_failures) {
      r.invariant_failures.push_back(*fail);
    }
  }
  if (v.winner != sh.strat->side()) {
    ++r.losses;
    if (r.counterexample.empty()) r.counterexample = s.history();
  }
}

void merge(VerifyReport& rep, std::vector<BranchResult>& branches) {
  bool budget_hit = false;
  for (auto& b : branches) {
    rep.games += b.games;
    rep.losses += b.losses;
    rep.nodes += b.nodes;
    budget_hit |= b.budget_hit;
    if (rep.counterexample.empty() && !b.counterexample.empty()) {
      rep.counterexample = b.counterexample;
    }
    for (auto& f : b.invariant_failures) {
      if (rep.invariant_failures.size() < 64) {
        rep.invariant_failures.push_back(std::move(f));
      }
    }
  }
  if (budget_hit) {
    throw ResourceError("verify: node budget exhausted after " +
                            std::to_string(rep.games) + " completed games",
                        rep.nodes, 0.0);
  }
}

}  // namespace

VerifyReport verify_strategy(const Graph& g, int colors, Player first,
                             const StrategyPtr& strat, VerifyOptions opt) {
  if (!strat) throw ParamError("verify_strategy: null strategy");
  if (strat->requires_conforming_adversary() && !opt.adversary_moves) {
    throw ApplicabilityError(
        "verify_strategy: strategy '" + strat->name() +
        "' only claims wins against a conforming adversary; supply an "
        "adversary move filter (constrained mode)");
  }
  if (opt.mode == VerifyMode::Constrained && !opt.adversary_moves) {
    throw ParamError("verify_strategy: constrained mode needs a move filter");
  }

  auto t0 = std::chrono::steady_clock::now();
  AutomorphismSet auts = automorphisms(g);
  VerifyShared sh{strat.get(), &auts, &opt.adversary_moves, opt.node_budget,
                  opt.max_recorded_failures};

  GameState root = initial_state(g, colors, first);
  VerifyReport rep;

  unsigned threads = opt.threads ? opt.threads
                                 : std::max(1u, std::thread::hardware_concurrency());

  if (opt.mode == VerifyMode::Sampled) {
    std::vector<BranchResult> results(opt.samples);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= opt.samples) break;
        // Per-game seed: reproducible independently of scheduling.
        std::uint64_t seed = opt.seed * 0x9E3779B97F4A7C15ull + i + 1;
        play_sampled(sh, root, seed, results[i]);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    merge(rep, results);
  } else {
    // Exhaustive (optionally with a conforming-adversary filter): fan the
    // first adversary decision out over workers.
    GameState top = root;
    std::vector<HistoryEntry> prefix;
    while (!top.is_terminal() && top.to_move() == strat->side()) {
      top = top.apply(checked_strategy_move(sh, top));
    }
    if (top.is_terminal()) {
      std::vector<BranchResult> one(1);
      dfs_exhaustive(sh, top, one[0]);
      merge(rep, one);
    } else {
      std::vector<Move> first_moves = adversary_moves(sh, top);
      std::vector<BranchResult> results(first_moves.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= first_moves.size()) break;
          dfs_exhaustive(sh, top.apply(first_moves[i]), results[i]);
        }
      };
      std::vector<std::thread> pool;
      for (unsigned i = 1; i < std::min<std::size_t>(threads, first_moves.size());
           ++i) {
        pool.emplace_back(worker);
      }
      worker();
      for (auto& th : pool) th.join();
      merge(rep, results);
    }
  }

  rep.win_all = rep.losses == 0;
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace dgame
