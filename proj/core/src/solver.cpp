#include "dgame/solver.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

#include "dgame/errors.hpp"

namespace dgame {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

Solver::Solver(Graph g, int colors, Player first, SolveOptions opt)
    : graph_(std::move(g)), colors_(colors), first_(first), opt_(opt) {
  if (colors_ < 1) throw ParamError("Solver: need at least one color");
  auts_ = automorphisms(graph_, opt_.aut_cap);
  start_ = std::chrono::steady_clock::now();
}

void Solver::restrict_gentle_wins(std::function<bool(const Coloring&)> pred,
                                  bool palette_symmetric) {
  if (!memo_.empty()) {
    throw InternalError("restrict_gentle_wins: solver already ran");
  }
  extra_win_ = std::move(pred);
  palette_symmetric_ = palette_symmetric;
}

Player Solver::mover_at(int colored) const {
  return colored % 2 == 0 ? first_ : opponent(first_);
}

void Solver::check_budget() {
  if (nodes_ > opt_.node_budget) {
    throw ResourceError("solve: node budget exhausted", nodes_,
                        seconds_since(start_));
  }
  if (opt_.time_budget_seconds > 0 && (++budget_check_counter_ & 8191) == 0 &&
      seconds_since(start_) > opt_.time_budget_seconds) {
    throw ResourceError("solve: time budget exhausted", nodes_,
                        seconds_since(start_));
  }
}

Player Solver::eval(Coloring& pos, int colored, const std::string* key_hint) {
  ++nodes_;
  check_budget();

  int n = graph_.order();
  if (colored == n) {
    bool gentle = is_distinguishing(graph_, auts_, pos) &&
                  (!extra_win_ || extra_win_(pos));
    return gentle ? Player::Gentle : Player::Rascal;
  }

  std::string key;
  if (opt_.memoize) {
    key = key_hint ? *key_hint : canonical_key(auts_, pos, palette_symmetric_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  Player mover = mover_at(colored);
  Player result = opponent(mover);

  // Candidate colors up to palette symmetry: all colors already on the board
  // plus one fresh color.  Without palette-symmetric keys, try everything.
  std::vector<int> colors;
  colors.reserve(colors_);
  if (opt_.memoize && palette_symmetric_) {
    std::vector<char> present(colors_ + 1, 0);
    for (auto c : pos)
      if (c) present[c] = 1;
    bool fresh_added = false;
    for (int c = 1; c <= colors_; ++c) {
      if (present[c]) {
        colors.push_back(c);
      } else if (!fresh_added) {
        colors.push_back(c);
        fresh_added = true;
      }
    }
    std::sort(colors.begin(), colors.end());
  } else {
    for (int c = 1; c <= colors_; ++c) colors.push_back(c);
  }

  std::unordered_set<std::string> seen_children;
  for (int v = 0; v < n && result != mover; ++v) {
    if (pos[v] != 0) continue;
    for (int c : colors) {
      pos[v] = static_cast<std::uint8_t>(c);
      Player w;
      if (opt_.memoize) {
        std::string child_key =
            canonical_key(auts_, pos, palette_symmetric_);
        if (!seen_children.insert(child_key).second) {
          pos[v] = 0;
          continue;
        }
        auto it = memo_.find(child_key);
        w = it != memo_.end() ? it->second : eval(pos, colored + 1, &child_key);
      } else {
        w = eval(pos, colored + 1, nullptr);
      }
      pos[v] = 0;
      if (w == mover) {
        result = mover;
        break;
      }
    }
  }

  if (opt_.memoize) memo_.emplace(std::move(key), result);
  return result;
}

GameValue Solver::run() {
  Coloring pos(graph_.order(), 0);
  auto t0 = std::chrono::steady_clock::now();
  Player w = eval(pos, 0, nullptr);
  return GameValue{w, nodes_, seconds_since(t0)};
}

Player Solver::winner_from(const Coloring& position) {
  if (static_cast<int>(position.size()) != graph_.order()) {
    throw ParamError("winner_from: position size mismatch");
  }
  int colored = 0;
  for (auto c : position) {
    if (c > colors_) throw ParamError("winner_from: color outside palette");
    if (c) ++colored;
  }
  Coloring pos = position;
  return eval(pos, colored, nullptr);
}

GameValue solve(const Graph& g, int colors, Player first, SolveOptions opt) {
  Solver s(g, colors, first, opt);
  return s.run();
}

GameValue solve_constrained(const Graph& g, int colors, Player first,
                            const std::vector<BlockList>& allowed,
                            const InvolutiveStructure& bar,
                            SolveOptions opt) {
  if (!(bar.graph == g)) {
    throw ParamError("solve_constrained: bar structure is for another graph");
  }
  Solver s(g, colors, first, opt);
  std::vector<BlockList> sorted = allowed;
  std::sort(sorted.begin(), sorted.end());
  s.restrict_gentle_wins(
      [&g, colors, bar, sorted](const Coloring& c) {
        return std::binary_search(sorted.begin(), sorted.end(),
                                  block_list(bar, c, colors));
      },
      /*palette_symmetric=*/false);
  return s.run();
}

GameValue solve_with_fixed_first_move(const Graph& g, int colors, Player first,
                                      Move move, SolveOptions opt) {
  GameState s0 = initial_state(g, colors, first);
  if (!s0.is_legal(move)) {
    throw ParamError("solve_with_fixed_first_move: illegal forced move");
  }
  Solver s(g, colors, first, opt);
  auto t0 = std::chrono::steady_clock::now();
  Coloring pos(g.order(), 0);
  pos[move.vertex] = static_cast<std::uint8_t>(move.color);
  Player w = s.winner_from(pos);
  return GameValue{w, s.nodes(),
                   std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count()};
}

std::optional<Permutation> infinity_certificate(const Graph& g, Player first,
                                                int aut_cap) {
  bool even = g.order() % 2 == 0;
  if (first == Player::Gentle && !even) return std::nullopt;
  if (first == Player::Rascal && even) return std::nullopt;
  AutomorphismSet auts = automorphisms(g, aut_cap);
  return first_nontrivial_involution(auts);
}

std::string to_string(const GdnResult& r) {
  switch (r.kind) {
    case GdnResult::Kind::Finite:
      return std::to_string(r.value);
    case GdnResult::Kind::Infinite:
      if (r.involution) {
        return "infinity (involution " + r.involution->to_cycle_string() + ")";
      }
      return "infinity (Rascal wins for every d; winners are constant from d=" +
             std::to_string(*r.saturation_order) + " on)";
    case GdnResult::Kind::UnknownAtLeast:
      return ">=" + std::to_string(r.value);
  }
  return "?";
}

GdnResult game_distinguishing_number(const Graph& g, Player first, int cap,
                                     SolveOptions opt) {
  if (cap < 1) throw ParamError("game_distinguishing_number: cap must be >= 1");

  GdnResult out;
  if (auto cert = infinity_certificate(g, first, opt.aut_cap)) {
    out.kind = GdnResult::Kind::Infinite;
    out.involution = cert;
    return out;
  }

  // Winners are constant in d once d reaches |V|: a play never uses more
  // colors than vertices, and unused colors are interchangeable.  So only
  // d <= |V| need solving, and a full sweep of losses certifies infinity.
  int n = g.order();
  int top = std::min(cap, n);
  for (int d = 1; d <= top; ++d) {
    GameValue gv = solve(g, d, first, opt);
    out.solves.push_back(gv);
    if (gv.winner == Player::Gentle) {
      out.kind = GdnResult::Kind::Finite;
      out.value = d;
      return out;
    }
  }
  if (top == n) {
    out.kind = GdnResult::Kind::Infinite;
    out.saturation_order = n;
    return out;
  }
  out.kind = GdnResult::Kind::UnknownAtLeast;
  out.value = cap + 1;
  return out;
}

}  // namespace dgame
