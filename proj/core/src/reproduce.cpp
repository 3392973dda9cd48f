#include "dgame/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "dgame/errors.hpp"
#include "dgame/solver.hpp"
#include "dgame/strategies.hpp"

namespace dgame {

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

Graph G(const std::string& expr) { return parse_graph(expr); }

std::string winner_str(const GameValue& gv) { return to_string(gv.winner); }

void expect_gdn_finite(Check& c, const std::string& expr, Player first,
                       int cap, int want) {
  GdnResult r = game_distinguishing_number(G(expr), first, cap);
  c.expect(r.kind == GdnResult::Kind::Finite && r.value == want,
           expr + " first=" + to_string(first) + ": got " + to_string(r) +
               ", want " + std::to_string(want));
  if (r.kind == GdnResult::Kind::Finite && r.value == want && want + 1 <= cap) {
    // Monotonicity spot check: one more color still wins.
    GameValue up = solve(G(expr), want + 1, first);
    c.expect(up.winner == Player::Gentle,
             expr + ": Gentle loses with d=" + std::to_string(want + 1) +
                 " despite winning with d=" + std::to_string(want));
  }
}

// --- criterion 1: small-cycle values --------------------------------------

Check criterion_cycles(std::ostream* log) {
  Check c;
  struct Row {
    const char* expr;
    Player first;
    int want;
  };
  const Row rows[] = {
      {"C4", Player::Rascal, 3}, {"C6", Player::Rascal, 3},
      {"C8", Player::Rascal, 2}, {"C10", Player::Rascal, 2},
      {"C5", Player::Gentle, 3}, {"C7", Player::Gentle, 3},
      {"C9", Player::Gentle, 2},
  };
  for (const auto& row : rows) {
    auto t0 = std::chrono::steady_clock::now();
    expect_gdn_finite(c, row.expr, row.first, 4, row.want);
    double dt = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    c.expect(dt < 60.0, std::string(row.expr) + " exceeded 60 s");
    if (log) {
      *log << "  " << row.expr << " first=" << to_string(row.first) << " -> "
           << row.want << " (" << std::fixed << std::setprecision(2) << dt
           << " s)\n";
    }
  }
  // D_G(C3) is infinite and certified: Rascal wins for every d <= |V|, which
  // saturates the palette.
  auto t0 = std::chrono::steady_clock::now();
  GdnResult c3 = game_distinguishing_number(G("C3"), Player::Gentle, 4);
  double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  c.expect(c3.kind == GdnResult::Kind::Infinite,
           "D_G(C3): got " + to_string(c3) + ", want infinity");
  c.expect(c3.saturation_order.has_value() || c3.involution.has_value(),
           "D_G(C3): infinite without a certificate");
  c.expect(dt < 60.0, "C3 exceeded 60 s");
  if (log) *log << "  C3 first=gentle -> " << to_string(c3) << "\n";
  return c;
}

// --- criterion 2: infinity certificates ------------------------------------

Check criterion_infinity(std::ostream* log) {
  Check c;
  struct Row {
    const char* expr;
    Player first;
  };
  const Row rows[] = {{"C4", Player::Gentle},
                      {"C6", Player::Gentle},
                      {"C5", Player::Rascal},
                      {"C3xC5", Player::Rascal}};
  for (const auto& row : rows) {
    Graph g = G(row.expr);
    GdnResult r = game_distinguishing_number(g, row.first, 4);
    c.expect(r.kind == GdnResult::Kind::Infinite && r.involution.has_value(),
             std::string(row.expr) + ": expected an involution certificate");
    if (r.involution) {
      const Permutation& s = *r.involution;
      c.expect(s.is_involution() && !s.is_identity(),
               std::string(row.expr) + ": certificate is not an involution");
      bool even = g.order() % 2 == 0;
      c.expect((row.first == Player::Gentle && even) ||
                   (row.first == Player::Rascal && !even),
               std::string(row.expr) + ": certificate parity mismatch");
      bool is_aut = true;
      for (auto [u, v] : g.edges()) is_aut &= g.adjacent(s(u), s(v));
      c.expect(is_aut, std::string(row.expr) +
                           ": certificate is not an automorphism");
      if (log) {
        *log << "  " << row.expr << " -> infinity, sigma = "
             << s.to_cycle_string() << "\n";
      }
    }
  }
  return c;
}

// --- criterion 3: the torus check ------------------------------------------

Check criterion_torus(std::ostream* log) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  expect_gdn_finite(c, "C3xC5", Player::Gentle, 2, 2);
  double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  c.expect(dt < 1800.0, "C3xC5 exceeded 30 min");
  if (log) {
    *log << "  D_G(C3xC5) = 2 (" << std::fixed << std::setprecision(1) << dt
         << " s)\n";
  }
  return c;
}

// --- criterion 4: small product values -------------------------------------

Check criterion_small_products(std::ostream* log) {
  Check c;
  for (const char* expr : {"C4xC3", "P2xP3"}) {
    auto t0 = std::chrono::steady_clock::now();
    expect_gdn_finite(c, expr, Player::Rascal, 2, 2);
    double dt = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    c.expect(dt < 600.0, std::string(expr) + " exceeded 10 min");
    if (log) {
      *log << "  D_R(" << expr << ") = 2 (" << std::fixed
           << std::setprecision(1) << dt << " s)\n";
    }
  }
  return c;
}

// --- criterion 5: K2 x Km exact values --------------------------------------

Check criterion_k2km(std::ostream* log) {
  Check c;
  Graph g = G("K2xK5");

  StrategyPtr win5 = gentle_k2_strategy(g, 5, Player::Rascal);
  VerifyOptions vo;
  vo.mode = VerifyMode::Exhaustive;
  VerifyReport r5 = verify_strategy(g, 5, Player::Rascal, win5, vo);
  c.expect(r5.win_all, "gentle_k2_strategy lost a game at d=5");
  c.expect(r5.invariant_failures.empty(), "gentle_k2_strategy invariants");
  if (log) {
    *log << "  k2-complete d=5 exhaustive: " << r5.games << " games, "
         << r5.losses << " losses\n";
  }

  GameValue lose4 = solve(g, 4, Player::Rascal);
  c.expect(lose4.winner == Player::Rascal,
           "solve(K2xK5, 4, rascal): got " + winner_str(lose4));
  if (log) {
    *log << "  solve(K2xK5,4,rascal) = " << winner_str(lose4) << " ("
         << lose4.nodes << " nodes)\n";
  }

  StrategyPtr rk = rascal_k2km_strategy(g, 4, Player::Rascal);
  VerifyReport r4 = verify_strategy(g, 4, Player::Rascal, rk, vo);
  c.expect(r4.win_all, "rascal_k2km_strategy lost a game at d=4");
  c.expect(r4.invariant_failures.empty(), "rascal_k2km_strategy invariants");
  if (log) {
    *log << "  k2km-rascal d=4 exhaustive: " << r4.games << " games, "
         << r4.losses << " losses\n";
  }

  for (const char* expr : {"K2xK3", "K2xK4"}) {
    expect_gdn_finite(c, expr, Player::Rascal, 3, 3);
    if (log) *log << "  D_R(" << expr << ") = 3\n";
  }
  return c;
}

// --- criterion 6: block-list sets for C8 and C10 ----------------------------

Check criterion_blocklists(std::ostream* log) {
  Check c;
  {
    Graph c8 = G("C8");
    auto bar = detect_involutive(c8);
    c.expect(bar.has_value(), "C8 has no central involution");
    GameValue gv = solve_constrained(
        c8, 2, Player::Rascal,
        {BlockList({3, 1}), BlockList({1, 3})}, *bar);
    c.expect(gv.winner == Player::Gentle,
             "solve_constrained(C8, {(3,1),(1,3)}): got " + winner_str(gv));
    if (log) *log << "  C8 restricted to {(3,1),(1,3)}: Gentle wins\n";
  }
  {
    Graph c10 = G("C10");
    auto bar = detect_involutive(c10);
    c.expect(bar.has_value(), "C10 has no central involution");
    GameValue gv = solve_constrained(
        c10, 2, Player::Rascal,
        {BlockList({4, 1}), BlockList({1, 4})}, *bar);
    c.expect(gv.winner == Player::Gentle,
             "solve_constrained(C10, {(4,1),(1,4)}): got " + winner_str(gv));
    if (gv.winner != Player::Gentle) {
      // Both this solver and an independent full-DP oracle find that the
      // published one-or-four description of the C10 strategy loses; Gentle
      // does win when held to exactly three bi-chromatic blocks.
      GameValue alt = solve_constrained(c10, 2, Player::Rascal,
                                        {BlockList({2, 3})}, *bar);
      c.note("cross-check: {(2,3)} -> " + winner_str(alt) +
             " (exactly three bi-chromatic blocks is a winning restriction)");
    }
    if (log) *log << "  C10 restricted to {(4,1),(1,4)}: Gentle wins\n";
  }
  return c;
}

// --- criterion 7: matching strategy at scale --------------------------------

Check criterion_matching(std::ostream* log) {
  Check c;
  Graph g = G("K4xK5");
  StrategyPtr strat = gentle_matching_strategy(g, 6, Player::Rascal);
  VerifyOptions vo;
  vo.mode = VerifyMode::Sampled;
  vo.samples = 100'000;
  vo.seed = 42;
  VerifyReport r = verify_strategy(g, 6, Player::Rascal, strat, vo);
  c.expect(r.win_all && r.losses == 0,
           "fiber-matching lost " + std::to_string(r.losses) + " of " +
               std::to_string(r.games) + " sampled games");
  c.expect(r.invariant_failures.empty(),
           "fiber-matching terminal invariants failed: " +
               (r.invariant_failures.empty() ? ""
                                             : r.invariant_failures.front()));
  if (log) {
    *log << "  K4xK5 d=6: " << r.games << " sampled games, " << r.losses
         << " losses, invariants clean\n";
  }
  return c;
}

// --- criterion 8: anti-fiber lower bound ------------------------------------

Check criterion_antifiber(std::ostream* log) {
  Check c;
  Graph g = G("K3xK2");
  for (int d : {2, 3}) {
    StrategyPtr strat = rascal_antifiber_strategy(g, d, Player::Rascal);
    VerifyOptions vo;
    vo.mode = VerifyMode::Constrained;
    vo.adversary_moves = fiber_conforming_filter(0);
    VerifyReport r = verify_strategy(g, d, Player::Rascal, strat, vo);
    c.expect(r.win_all,
             "antifiber lost a conforming game at d=" + std::to_string(d));
    c.expect(r.invariant_failures.empty(), "antifiber invariants");
    if (log) {
      *log << "  K3xK2 d=" << d << ": " << r.games
           << " conforming games, all won by Rascal\n";
    }
  }
  return c;
}

// --- criterion 9: oracle equivalence ----------------------------------------

Check criterion_oracle(std::ostream* log) {
  Check c;
  const char* exprs[] = {"C3", "C4", "C5",   "C6",   "P2",
                         "P3", "P4", "K2",   "K3",   "K2xK3"};
  int checked = 0;
  for (const char* expr : exprs) {
    Graph g = G(expr);
    for (int d = 1; d <= 3; ++d) {
      for (Player first : {Player::Gentle, Player::Rascal}) {
        SolveOptions with;
        SolveOptions without;
        without.memoize = false;
        Player a = solve(g, d, first, with).winner;
        Player b = solve(g, d, first, without).winner;
        ++checked;
        c.expect(a == b, std::string(expr) + " d=" + std::to_string(d) +
                             " first=" + to_string(first) +
                             ": memoized and plain minimax disagree");
      }
    }
  }
  c.note(std::to_string(checked) + " instances compared");
  if (log) *log << "  " << checked << " memo/no-memo pairs agree\n";
  return c;
}

// --- criterion 10: property suites ------------------------------------------

struct PropertyCounter {
  std::uint64_t cases = 0;
};

void prop_blocklist_invariance(Check& c, std::mt19937_64& rng,
                               PropertyCounter& pc) {
  for (const char* expr : {"C6", "C8", "Q3"}) {
    Graph g = G(expr);
    auto inv = detect_involutive(g);
    if (!inv) {
      c.expect(false, std::string(expr) + " unexpectedly not involutive");
      continue;
    }
    AutomorphismSet auts = automorphisms(g);
    for (int it = 0; it < 150; ++it) {
      int d = 2 + static_cast<int>(rng() % 2);
      Coloring col(g.order());
      for (auto& x : col) x = static_cast<std::uint8_t>(1 + rng() % d);
      BlockList base = block_list(*inv, col, d);
      for (const auto& sigma : auts.elements()) {
        Coloring moved(g.order());
        for (int v = 0; v < g.order(); ++v) moved[v] = col[sigma(v)];
        ++pc.cases;
        if (!(block_list(*inv, moved, d) == base)) {
          c.expect(false, std::string(expr) +
                              ": block-list not automorphism invariant");
          return;
        }
      }
    }
  }
}

void prop_palette_invariance(Check& c, std::mt19937_64& rng,
                             PropertyCounter& pc) {
  const char* exprs[] = {"C4", "C5", "P3", "K3", "K2xK3"};
  for (const char* expr : exprs) {
    Graph g = G(expr);
    AutomorphismSet auts = automorphisms(g);
    auto shared = std::make_shared<const Graph>(g);
    for (int it = 0; it < 400; ++it) {
      int d = 2 + static_cast<int>(rng() % 3);
      Coloring col(g.order());
      for (auto& x : col) x = static_cast<std::uint8_t>(1 + rng() % d);
      std::vector<int> perm(d);
      for (int i = 0; i < d; ++i) perm[i] = i + 1;
      std::shuffle(perm.begin(), perm.end(), rng);

      auto make_terminal = [&](const Coloring& cc) {
        GameState s(shared, d, Player::Gentle);
        for (int v = 0; v < g.order(); ++v) s = s.apply({v, cc[v]});
        return evaluate_terminal(s, auts).winner;
      };
      Coloring permuted(g.order());
      for (int v = 0; v < g.order(); ++v) permuted[v] = perm[col[v] - 1];
      ++pc.cases;
      if (make_terminal(col) != make_terminal(permuted)) {
        c.expect(false, std::string(expr) +
                            ": verdict not palette-permutation invariant");
        return;
      }
    }
  }
}

void prop_first_move_constancy(Check& c, PropertyCounter& pc,
                               std::ostream* log) {
  struct Row {
    const char* expr;
    int d;
    Player first;
  };
  const Row rows[] = {
      {"C5", 2, Player::Gentle}, {"C5", 3, Player::Gentle},
      {"C6", 2, Player::Rascal}, {"C6", 3, Player::Rascal},
      {"C8", 2, Player::Rascal},
  };
  for (const auto& row : rows) {
    Graph g = G(row.expr);
    Player base = Player::Gentle;
    for (int v = 0; v < g.order(); ++v) {
      GameValue gv =
          solve_with_fixed_first_move(g, row.d, row.first, {v, 1});
      ++pc.cases;
      if (v == 0) {
        base = gv.winner;
      } else {
        c.expect(gv.winner == base,
                 std::string(row.expr) + " d=" + std::to_string(row.d) +
                     ": first-move winner depends on the vertex");
      }
    }
    GameValue whole = solve(g, row.d, row.first);
    c.expect(whole.winner == base,
             std::string(row.expr) +
                 ": forced-first-move winner differs from free play");
    if (log) {
      *log << "  " << row.expr << " d=" << row.d
           << ": all first moves give " << to_string(base) << "\n";
    }
  }
}

void prop_strategy_fuzz(Check& c, PropertyCounter& pc, std::ostream* log) {
  struct Row {
    const char* name;
    const char* expr;
    int d;
    Player first;
    std::uint64_t games;
    bool expect_win_all;
  };
  // Every named strategy, sampled under the fixed seed.  Each strategy move
  // is legality-checked by the verifier; terminal invariants (including the
  // fiber bookkeeping of the reply discipline) run per game.
  const Row rows[] = {
      {"fiber-matching", "K4xK5", 6, Player::Rascal, 400, true},
      {"k2-complete", "K2xK5", 5, Player::Rascal, 400, true},
      {"blocklist", "C8xC3", 2, Player::Rascal, 200, true},
      {"c4c6", "C4xC3", 2, Player::Rascal, 400, true},
      {"parity", "C5xP3", 3, Player::Gentle, 300, true},
      {"prime-cycle", "C3xC7", 2, Player::Gentle, 400, true},
      {"mirror", "C4", 2, Player::Gentle, 200, true},
      {"k2km-rascal", "K2xK5", 4, Player::Rascal, 400, true},
      {"antifiber", "K3xK2", 2, Player::Rascal, 400, true},
      {"solver-optimal", "C8", 2, Player::Rascal, 400, true},
  };
  for (const auto& row : rows) {
    Graph g = G(row.expr);
    StrategyPtr strat;
    try {
      strat = make_named_strategy(row.name, g, row.d, row.first);
    } catch (const std::exception& e) {
      c.expect(false, std::string(row.name) + ": factory failed: " + e.what());
      continue;
    }
    VerifyOptions vo;
    vo.mode = VerifyMode::Sampled;
    vo.samples = row.games;
    vo.seed = kPropertySeed;
    vo.adversary_moves = named_strategy_adversary_filter(row.name, g);
    try {
      VerifyReport r = verify_strategy(g, row.d, row.first, strat, vo);
      pc.cases += r.games;
      if (row.expect_win_all) {
        c.expect(r.win_all, std::string(row.name) + " on " + row.expr +
                                ": lost " + std::to_string(r.losses) +
                                " sampled games");
      }
      c.expect(r.invariant_failures.empty(),
               std::string(row.name) + " on " + row.expr +
                   ": terminal invariants failed" +
                   (r.invariant_failures.empty()
                        ? ""
                        : " (" + r.invariant_failures.front() + ")"));
      if (log) {
        *log << "  " << row.name << " on " << row.expr << ": " << r.games
             << " games, " << r.losses << " losses\n";
      }
    } catch (const std::exception& e) {
      c.expect(false, std::string(row.name) + ": verification failed: " +
                          e.what());
    }
  }
}

Check criterion_properties(std::ostream* log) {
  Check c;
  std::mt19937_64 rng(kPropertySeed);
  PropertyCounter pc;
  prop_blocklist_invariance(c, rng, pc);
  prop_palette_invariance(c, rng, pc);
  prop_first_move_constancy(c, pc, log);
  prop_strategy_fuzz(c, pc, log);
  c.expect(pc.cases >= 10'000,
           "property suites ran only " + std::to_string(pc.cases) +
               " cases (< 10^4)");
  c.note(std::to_string(pc.cases) + " property cases");
  return c;
}

struct CriterionSpec {
  int id;
  const char* name;
  double budget_seconds;
  Check (*fn)(std::ostream*);
};

const CriterionSpec kCriteria[] = {
    {1, "cycle-values", 8 * 60.0 + 60.0, criterion_cycles},
    {2, "infinity-certificates", 120.0, criterion_infinity},
    {3, "torus-check", 1800.0, criterion_torus},
    {4, "small-products", 1200.0, criterion_small_products},
    {5, "k2km-values", 1800.0, criterion_k2km},
    {6, "blocklist-sets", 1200.0, criterion_blocklists},
    {7, "matching-at-scale", 1800.0, criterion_matching},
    {8, "antifiber-bound", 300.0, criterion_antifiber},
    {9, "oracle-equivalence", 600.0, criterion_oracle},
    {10, "property-suites", 1800.0, criterion_properties},
};

}  // namespace

CriterionResult run_criterion(int id, std::ostream* log) {
  for (const auto& spec : kCriteria) {
    if (spec.id != id) continue;
    CriterionResult r;
    r.id = id;
    r.name = spec.name;
    r.budget_seconds = spec.budget_seconds;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Check c = spec.fn(log);
      r.pass = c.ok;
      r.detail = c.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (r.seconds > r.budget_seconds) {
      r.pass = false;
      if (!r.detail.empty()) r.detail += "; ";
      r.detail += "exceeded the time budget";
    }
    return r;
  }
  throw ParamError("run_criterion: unknown id " + std::to_string(id));
}

std::vector<std::string> reproduce_tables() {
  return {"cycles",     "infinity", "tori-small", "k2km",       "blocklists",
          "matching",   "antifiber", "oracle",    "properties", "all"};
}

std::vector<int> reproduce_table(const std::string& table_id) {
  if (table_id == "cycles") return {1};
  if (table_id == "infinity") return {2};
  if (table_id == "tori-small") return {3, 4};
  if (table_id == "k2km") return {5};
  if (table_id == "blocklists") return {6};
  if (table_id == "matching") return {7};
  if (table_id == "antifiber") return {8};
  if (table_id == "oracle") return {9};
  if (table_id == "properties") return {10};
  if (table_id == "all") {
    std::vector<int> ids(kCriterionCount);
    for (int i = 0; i < kCriterionCount; ++i) ids[i] = i + 1;
    return ids;
  }
  std::string names;
  for (const auto& t : reproduce_tables()) names += " " + t;
  throw ParamError("unknown table '" + table_id + "'; known:" + names);
}

std::vector<CriterionResult> run_battery(const std::vector<int>& ids,
                                         std::ostream& out) {
  std::vector<CriterionResult> results;
  for (int id : ids) {
    CriterionResult r = run_criterion(id, &out);
    out << "criterion " << std::setw(2) << r.id << " [" << std::left
        << std::setw(22) << r.name << std::right << "] "
        << (r.pass ? "PASS" : "FAIL") << "  " << std::fixed
        << std::setprecision(1) << r.seconds << " s";
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << "\n";
    results.push_back(std::move(r));
  }
  return results;
}

RunReport battery_report(const std::vector<CriterionResult>& results,
                         const std::string& table_id) {
  RunReport rep;
  rep.command = "reproduce";
  rep.graph = "";
  rep.params["table"] = table_id;
  bool all_pass = true;
  for (const auto& r : results) {
    std::map<std::string, std::string> item;
    item["id"] = std::to_string(r.id);
    item["name"] = r.name;
    item["pass"] = r.pass ? "true" : "false";
    std::ostringstream sec;
    sec << std::fixed << std::setprecision(3) << r.seconds;
    item["seconds"] = sec.str();
    item["detail"] = r.detail;
    rep.items.push_back(std::move(item));
    all_pass &= r.pass;
  }
  rep.results["pass"] = all_pass ? "true" : "false";
  rep.results["criteria"] = std::to_string(results.size());
  return rep;
}

}  // namespace dgame
