#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgame/graph.hpp"
#include "dgame/symmetry.hpp"

namespace dgame {

enum class Player : std::uint8_t { Gentle, Rascal };

inline Player opponent(Player p) {
  return p == Player::Gentle ? Player::Rascal : Player::Gentle;
}

std::string to_string(Player p);
std::optional<Player> player_from_string(std::string_view s);

struct Move {
  int vertex = -1;
  int color = 0;
  bool operator==(const Move&) const = default;
};

struct HistoryEntry {
  int vertex = -1;
  int color = 0;
  Player by = Player::Gentle;
  bool operator==(const HistoryEntry&) const = default;
};

// The evolving position of the distinguishing game.  Value-semantic: apply()
// returns a new state and never mutates its input.  The full move history is
// retained because the constructive strategies are history-dependent.
class GameState {
 public:
  GameState() = default;
  GameState(std::shared_ptr<const Graph> graph, int colors, Player first);

  const Graph& graph() const { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
  int colors() const { return colors_; }
  Player first_player() const { return first_; }

  Player to_move() const;
  int colored_count() const {
    return static_cast<int>(history_.size());
  }
  bool is_terminal() const { return colored_count() == graph_->order(); }

  const Coloring& coloring() const { return coloring_; }
  int color_at(int v) const { return coloring_[v]; }
  const std::vector<HistoryEntry>& history() const { return history_; }

  std::vector<Move> legal_moves() const;
  bool is_legal(Move m) const;
  GameState apply(Move m) const;  // throws RuleError on illegal moves

 private:
  std::shared_ptr<const Graph> graph_;
  int colors_ = 0;
  Player first_ = Player::Gentle;
  Coloring coloring_;
  std::vector<HistoryEntry> history_;
};

GameState initial_state(const Graph& g, int colors, Player first);
GameState initial_state(std::shared_ptr<const Graph> g, int colors,
                        Player first);

// Who won a finished game.  Rascal verdicts carry a nontrivial
// colors-preserving automorphism as witness.
struct Verdict {
  Player winner = Player::Gentle;
  std::optional<Permutation> witness;
};

Verdict evaluate_terminal(const GameState& s);
Verdict evaluate_terminal(const GameState& s, const AutomorphismSet& auts);

}  // namespace dgame
