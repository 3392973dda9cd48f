#include "dgame/game.hpp"

#include <algorithm>

#include "dgame/errors.hpp"

namespace dgame {

std::string to_string(Player p) {
  return p == Player::Gentle ? "gentle" : "rascal";
}

std::optional<Player> player_from_string(std::string_view s) {
  if (s == "gentle" || s == "Gentle" || s == "G") return Player::Gentle;
  if (s == "rascal" || s == "Rascal" || s == "R") return Player::Rascal;
  return std::nullopt;
}

GameState::GameState(std::shared_ptr<const Graph> graph, int colors,
                     Player first)
    : graph_(std::move(graph)), colors_(colors), first_(first) {
  if (!graph_) throw ParamError("GameState: null graph");
  if (colors_ < 1) throw ParamError("GameState: need at least one color");
  coloring_.assign(graph_->order(), 0);
}

Player GameState::to_move() const {
  // Players strictly alternate from the first player.
  return colored_count() % 2 == 0 ? first_ : opponent(first_);
}

std::vector<Move> GameState::legal_moves() const {
  std::vector<Move> out;
  if (is_terminal()) return out;
  out.reserve(static_cast<std::size_t>(graph_->order() - colored_count()) *
              colors_);
  for (int v = 0; v < graph_->order(); ++v) {
    if (coloring_[v] != 0) continue;
    for (int c = 1; c <= colors_; ++c) out.push_back({v, c});
  }
  return out;
}

bool GameState::is_legal(Move m) const {
  return m.vertex >= 0 && m.vertex < graph_->order() &&
         coloring_[m.vertex] == 0 && m.color >= 1 && m.color <= colors_;
}

GameState GameState::apply(Move m) const {
  if (m.vertex < 0 || m.vertex >= graph_->order()) {
    throw RuleError("apply: vertex " + std::to_string(m.vertex) +
                    " does not exist");
  }
  if (coloring_[m.vertex] != 0) {
    throw RuleError("apply: vertex " + std::to_string(m.vertex) +
                    " is already colored");
  }
  if (m.color < 1 || m.color > colors_) {
    throw RuleError("apply: color " + std::to_string(m.color) +
                    " outside palette 1.." + std::to_string(colors_));
  }
  GameState next(*this);
  next.coloring_[m.vertex] = static_cast<std::uint8_t>(m.color);
  next.history_.push_back({m.vertex, m.color, to_move()});
  return next;
}

GameState initial_state(const Graph& g, int colors, Player first) {
  return GameState(std::make_shared<const Graph>(g), colors, first);
}

GameState initial_state(std::shared_ptr<const Graph> g, int colors,
                        Player first) {
  return GameState(std::move(g), colors, first);
}

Verdict evaluate_terminal(const GameState& s, const AutomorphismSet& auts) {
  if (!s.is_terminal()) {
    throw ParamError("evaluate_terminal: game is not over");
  }
  const Coloring& c = s.coloring();
  for (const auto& sigma : auts.elements()) {
    if (sigma.is_identity()) continue;
    bool preserves = true;
    for (int v = 0; v < s.graph().order(); ++v) {
      if (c[v] != c[sigma(v)]) {
        preserves = false;
        break;
      }
    }
    if (preserves) return Verdict{Player::Rascal, sigma};
  }
  return Verdict{Player::Gentle, std::nullopt};
}

Verdict evaluate_terminal(const GameState& s) {
  return evaluate_terminal(s, automorphisms(s.graph()));
}

}  // namespace dgame
