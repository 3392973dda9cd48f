#include "dgame/strategies.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <utility>

#include "dgame/errors.hpp"

namespace dgame {

namespace {

// ---------------------------------------------------------------------------
// Shared product helpers (binary products, strategy axis 0 unless noted).

int axis_fiber_index(const Graph& g, int axis, int v) {
  int k = static_cast<int>(g.factors().size());
  int f = 0;
  int mult = 1;
  for (int i = k - 1; i >= 0; --i) {
    if (i == axis) continue;
    f += g.coord(v, i) * mult;
    mult *= g.factors()[i].order();
  }
  return f;
}

struct AxisView {
  std::shared_ptr<const Graph> g;  // owned: factory arguments may be rvalues
  int axis = 0;
  int fiber_size = 0;
  int fiber_count = 0;
  std::vector<Fiber> fibs;

  static AxisView make(const Graph& graph, int axis) {
    AxisView v;
    v.g = std::make_shared<const Graph>(graph);
    v.axis = axis;
    v.fiber_size = graph.factors()[axis].order();
    v.fiber_count = graph.order() / v.fiber_size;
    v.fibs = fibers(graph, axis);
    return v;
  }

  int fiber_of(int vertex) const { return axis_fiber_index(*g, axis, vertex); }
  int pos_of(int vertex) const { return g->coord(vertex, axis); }
  int vertex(int fiber, int pos) const { return fibs[fiber].vertices[pos]; }

  std::vector<std::uint8_t> fiber_colors(const Coloring& c, int fiber) const {
    std::vector<std::uint8_t> out(fiber_size);
    for (int p = 0; p < fiber_size; ++p) out[p] = c[vertex(fiber, p)];
    return out;
  }
  int colored_in(const Coloring& c, int fiber) const {
    int k = 0;
    for (int p = 0; p < fiber_size; ++p)
      if (c[vertex(fiber, p)]) ++k;
    return k;
  }
  int lowest_uncolored_pos(const Coloring& c, int fiber) const {
    for (int p = 0; p < fiber_size; ++p)
      if (!c[vertex(fiber, p)]) return p;
    throw InternalError("strategy: fiber unexpectedly complete");
  }
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw ApplicabilityError(msg);
}

bool is_complete_graph(const Graph& g) {
  long long n = g.order();
  return g.edge_count() == n * (n - 1) / 2;
}

// Standard cycle labeling: i adjacent to i+1 mod n.
bool is_standard_cycle(const Graph& g) {
  int n = g.order();
  if (n < 3 || g.edge_count() != n) return false;
  for (int i = 0; i < n; ++i) {
    if (!g.adjacent(i, (i + 1) % n)) return false;
  }
  return true;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

void check_strategy_turn(const GameState& s, Player side, const char* name) {
  if (s.is_terminal()) {
    throw ParamError(std::string(name) + ": game is already over");
  }
  if (s.to_move() != side) {
    throw ParamError(std::string(name) + ": not this strategy's turn");
  }
}

const HistoryEntry& last_move(const GameState& s, const char* name) {
  if (s.history().empty()) {
    throw InternalError(std::string(name) + ": expected a previous move");
  }
  return s.history().back();
}

GameState make_local_state(const std::shared_ptr<const Graph>& h, int colors,
                           Player first,
                           const std::vector<HistoryEntry>& entries) {
  GameState s(h, colors, first);
  for (const auto& e : entries) {
    if (s.to_move() != e.by) {
      throw InternalError("strategy: local game alternation mismatch");
    }
    s = s.apply({e.vertex, e.color});
  }
  return s;
}

// Bookkeeping every fiber strategy must satisfy at the end: Gentle colors
// the last vertex of each fiber; in Case 0 Rascal opens every fiber; in
// Case 1 Gentle opens ceil(#fibers/2) of them.
std::optional<std::string> fiber_bookkeeping_failures(const GameState& s,
                                                      const AxisView& view,
                                                      FiberCase case_tag) {
  std::vector<int> count(view.fiber_count, 0);
  std::vector<Player> opener(view.fiber_count, Player::Gentle);
  std::vector<Player> closer(view.fiber_count, Player::Gentle);
  int gentle_opens = 0;
  for (const auto& e : s.history()) {
    int f = view.fiber_of(e.vertex);
    if (count[f] == 0) {
      opener[f] = e.by;
      if (e.by == Player::Gentle) ++gentle_opens;
    }
    ++count[f];
    if (count[f] == view.fiber_size) closer[f] = e.by;
  }
  for (int f = 0; f < view.fiber_count; ++f) {
    if (count[f] != view.fiber_size) {
      return "fiber " + std::to_string(f) + " not fully colored";
    }
    if (closer[f] != Player::Gentle) {
      return "fiber " + std::to_string(f) + " not closed by Gentle";
    }
    if (case_tag == FiberCase::Zero && opener[f] != Player::Rascal) {
      return "Case 0: fiber " + std::to_string(f) + " not opened by Rascal";
    }
  }
  if (case_tag == FiberCase::One) {
    int expect = (view.fiber_count + 1) / 2;
    if (gentle_opens != expect) {
      return "Case 1: Gentle opened " + std::to_string(gentle_opens) +
             " fibers, expected " + std::to_string(expect);
    }
  }
  return std::nullopt;
}

void require_binary_product(const Graph& g, const char* name) {
  if (!g.is_product() || g.factors().size() != 2) {
    throw ApplicabilityError(std::string(name) +
                             ": needs a binary Cartesian product");
  }
}

// ---------------------------------------------------------------------------
// Rascal's mirror strategy (order-two automorphism).

class MirrorStrategy : public Strategy {
 public:
  MirrorStrategy(Permutation sigma) : sigma_(std::move(sigma)) {}

  std::string name() const override { return "mirror"; }
  Player side() const override { return Player::Rascal; }

  Move choose(const GameState& s) const override {
    check_strategy_turn(s, Player::Rascal, "mirror");
    if (s.history().empty()) {
      // Odd case: open on a fixed point.
      return {lowest_uncolored_fixed_point(s), 1};
    }
    const HistoryEntry& last = last_move(s, "mirror");
    if (last.by != Player::Gentle) {
      throw InternalError("mirror: last move was not Gentle's");
    }
    int u = last.vertex;
    int w = sigma_(u);
    if (w != u) {
      if (s.color_at(w) != 0) {
        throw InternalError("mirror: partner vertex already colored");
      }
      return {w, last.color};
    }
    return {lowest_uncolored_fixed_point(s), 1};
  }

  std::optional<std::string> check_terminal(const GameState& s) const override {
    const Coloring& c = s.coloring();
    for (int v = 0; v < s.graph().order(); ++v) {
      if (c[v] != c[sigma_(v)]) {
        return "mirror: final coloring not sigma-invariant at vertex " +
               std::to_string(v);
      }
    }
    return std::nullopt;
  }

 private:
  int lowest_uncolored_fixed_point(const GameState& s) const {
    for (int v = 0; v < sigma_.size(); ++v) {
      if (sigma_(v) == v && s.color_at(v) == 0) return v;
    }
    throw InternalError("mirror: no uncolored fixed point available");
  }

  Permutation sigma_;
};

// ---------------------------------------------------------------------------
// Gentle on K_2 x K_m with d = m (complete the fiber, never repeat a pair).

class K2CompleteStrategy : public Strategy {
 public:
  K2CompleteStrategy(AxisView view, int m) : view_(std::move(view)), m_(m) {}

  std::string name() const override { return "k2-complete"; }
  Player side() const override { return Player::Gentle; }

  Move choose(const GameState& s) const override {
    check_strategy_turn(s, Player::Gentle, "k2-complete");
    const HistoryEntry& last = last_move(s, "k2-complete");
    int f = view_.fiber_of(last.vertex);
    int p = view_.pos_of(last.vertex);
    int w = view_.vertex(f, 1 - p);
    if (s.color_at(w) != 0) {
      throw InternalError("k2-complete: reply vertex already colored");
    }
    int a = last.color;

    std::set<std::pair<int, int>> used;
    for (int j = 0; j < view_.fiber_count; ++j) {
      if (j == f) continue;
      auto fc = view_.fiber_colors(s.coloring(), j);
      if (fc[0] && fc[1]) {
        used.insert({std::min<int>(fc[0], fc[1]), std::max<int>(fc[0], fc[1])});
      }
    }
    // Prefer a bichromatic completion; a monochromatic one is only forced
    // when every pair {a,b} with b != a is already taken, in which case an
    // earlier fiber is bichromatic.
    for (int b = 1; b <= m_; ++b) {
      if (b == a) continue;
      if (!used.count({std::min(a, b), std::max(a, b)})) return {w, b};
    }
    if (!used.count({a, a})) return {w, a};
    throw InternalError("k2-complete: no fresh fiber pair available");
  }

  std::optional<std::string> check_terminal(const GameState& s) const override {
    std::set<std::pair<int, int>> seen;
    bool bichromatic = false;
    for (int j = 0; j < view_.fiber_count; ++j) {
      auto fc = view_.fiber_colors(s.coloring(), j);
      auto pair = std::make_pair(std::min<int>(fc[0], fc[1]),
                                 std::max<int>(fc[0], fc[1]));
      if (!seen.insert(pair).second) {
        return "k2-complete: two fibers share the color pair " +
               std::to_string(pair.first) + "/" + std::to_string(pair.second);
      }
      bichromatic |= pair.first != pair.second;
    }
    if (!bichromatic) return "k2-complete: no bichromatic fiber";
    return fiber_bookkeeping_failures(s, view_, FiberCase::Zero);
  }

 private:
  AxisView view_;
  int m_;
};

// ---------------------------------------------------------------------------
// Gentle's matching strategy on K_n x K_m with d = m+1.

class MatchingStrategy : public Strategy {
 public:
  MatchingStrategy(AxisView view, MatchingSet ms, int mode, int n, int m)
      : view_(std::move(view)), ms_(std::move(ms)), mode_(mode), n_(n), m_(m) {}

  std::string name() const override { return "fiber-matching"; }
  Player side() const override { return Player::Gentle; }

  Move choose(const GameState& s) const override {
    check_strategy_turn(s, Player::Gentle, "fiber-matching");
    int d = s.colors();

    if (s.history().empty()) {
      // Mode 3 opening: deploy the first matching at its uncovered vertex.
      return {view_.vertex(0, ms_.uncovered[0]), 1};
    }

    std::vector<int> assigned = fiber_assignment(s);
    FiberTracker t = FiberTracker::from_state(s, view_.axis);
    std::vector<int> allowed = fiber_constraint(t, s);
    const HistoryEntry& last = last_move(s, "fiber-matching");
    int a = last.color;

    if (allowed.size() > 1 || t.colored_in_fiber[allowed[0]] == 0) {
      // Pairing open of a fresh fiber.
      int j = allowed[0];
      int next = next_unassigned_matching(assigned);
      int pos = next >= 0 ? (ms_.uncovered[next] >= 0 ? ms_.uncovered[next] : 0)
                          : 0;
      int b = a == 1 ? 2 : 1;
      return {view_.vertex(j, pos), b};
    }

    int f = allowed[0];
    int p = view_.pos_of(last.vertex);
    int pos;
    if (assigned[f] >= 0) {
      pos = ms_.partner[assigned[f]][p];
      if (pos < 0 || s.color_at(view_.vertex(f, pos)) != 0) {
        throw InternalError("fiber-matching: matched partner unavailable");
      }
    } else {
      pos = view_.lowest_uncolored_pos(s.coloring(), f);
    }

    bool completing = view_.colored_in(s.coloring(), f) == view_.fiber_size - 1;
    std::set<MetaColor> taken;
    if (completing) {
      for (int j = 0; j < view_.fiber_count; ++j) {
        if (j == f) continue;
        if (view_.colored_in(s.coloring(), j) == view_.fiber_size) {
          taken.insert(meta_color(view_.fiber_colors(s.coloring(), j), d));
        }
      }
    }
    for (int b = 1; b <= d; ++b) {
      if (b == a) continue;
      if (completing) {
        auto fc = view_.fiber_colors(s.coloring(), f);
        fc[pos] = static_cast<std::uint8_t>(b);
        if (taken.count(meta_color(fc, d))) continue;
      }
      return {view_.vertex(f, pos), b};
    }
    throw InternalError("fiber-matching: no admissible color");
  }

  std::optional<std::string> check_terminal(const GameState& s) const override {
    int d = s.colors();
    std::set<MetaColor> seen;
    for (int j = 0; j < view_.fiber_count; ++j) {
      if (!seen.insert(meta_color(view_.fiber_colors(s.coloring(), j), d))
               .second) {
        return "fiber-matching: duplicated fiber meta-color";
      }
    }
    // Every matching must be deployed, with all its pairs bichromatic.
    std::vector<int> assigned = fiber_assignment(s);
    std::vector<char> used(ms_.count(), 0);
    for (int f = 0; f < view_.fiber_count; ++f) {
      int midx = assigned[f];
      if (midx < 0) continue;
      used[midx] = 1;
      for (int p = 0; p < n_; ++p) {
        int q = ms_.partner[midx][p];
        if (q <= p) continue;
        if (s.color_at(view_.vertex(f, p)) == s.color_at(view_.vertex(f, q))) {
          return "fiber-matching: monochromatic matched pair in fiber " +
                 std::to_string(f);
        }
      }
    }
    for (int midx = 0; midx < ms_.count(); ++midx) {
      if (!used[midx]) {
        return "fiber-matching: matching " + std::to_string(midx) +
               " never deployed";
      }
    }
    return fiber_bookkeeping_failures(
        s, view_, mode_ == 1 ? FiberCase::Zero : FiberCase::One);
  }

 private:
  // fiber -> matching index (or -1): mode 1 is static; modes 2 and 3 assign
  // by replaying the opens in history order.
  std::vector<int> fiber_assignment(const GameState& s) const {
    std::vector<int> assigned(view_.fiber_count, -1);
    if (mode_ == 1) {
      for (int j = 0; j < n_ - 1; ++j) assigned[j] = j;
      return assigned;
    }
    std::vector<char> matched_used(ms_.count(), 0);
    std::vector<int> count(view_.fiber_count, 0);
    for (const auto& e : s.history()) {
      int f = view_.fiber_of(e.vertex);
      if (count[f]++ == 0) {
        if (mode_ == 2 && e.by == Player::Rascal && s.history()[0] == e) {
          int idx = view_.pos_of(e.vertex);  // matching missing this vertex
          assigned[f] = idx;
          matched_used[idx] = 1;
        } else if (e.by == Player::Gentle) {
          int idx = -1;
          for (int i = 0; i < ms_.count(); ++i) {
            if (!matched_used[i]) {
              idx = i;
              break;
            }
          }
          if (idx >= 0) {
            assigned[f] = idx;
            matched_used[idx] = 1;
          }
        }
      }
    }
    return assigned;
  }

  int next_unassigned_matching(const std::vector<int>& assigned) const {
    std::vector<char> used(ms_.count(), 0);
    for (int f = 0; f < view_.fiber_count; ++f) {
      if (assigned[f] >= 0) used[assigned[f]] = 1;
    }
    for (int i = 0; i < ms_.count(); ++i) {
      if (!used[i]) return i;
    }
    return -1;
  }

  AxisView view_;
  MatchingSet ms_;
  int mode_;
  int n_;
  int m_;
};

// ---------------------------------------------------------------------------
// Gentle's block-list strategy on H x F, H involutive (Theorem-style play).

class BlocklistStrategy : public Strategy {
 public:
  BlocklistStrategy(AxisView view, InvolutiveStructure bar, Coloring fcolor,
                    StrategyPtr inner, std::vector<BlockList> inner_lists,
                    std::vector<BlockList> pool, int d)
      : view_(std::move(view)),
        bar_(std::move(bar)),
        fcolor_(std::move(fcolor)),
        inner_(std::move(inner)),
        inner_lists_(std::move(inner_lists)),
        pool_(std::move(pool)),
        d_(d),
        h_(std::make_shared<const Graph>(bar_.graph)) {}

  std::string name() const override { return "blocklist"; }
  Player side() const override { return Player::Gentle; }

  Move choose(const GameState& s) const override {
    check_strategy_turn(s, Player::Gentle, "blocklist");
    const HistoryEntry& last = last_move(s, "blocklist");
    if (last.by != Player::Rascal) {
      throw InternalError("blocklist: last move was not Rascal's");
    }
    int delegated = view_.fiber_of(s.history().front().vertex);
    int f = view_.fiber_of(last.vertex);
    int p = view_.pos_of(last.vertex);

    if (f == delegated) {
      // Delegate to the Gentle-second strategy on H.
      std::vector<HistoryEntry> local;
      for (const auto& e : s.history()) {
        if (view_.fiber_of(e.vertex) == f) {
          local.push_back({view_.pos_of(e.vertex), e.color, e.by});
        }
      }
      GameState ls = make_local_state(h_, d_, Player::Rascal, local);
      Move mv = inner_->choose(ls);
      return {view_.vertex(f, mv.vertex), mv.color};
    }

    int wp = bar_.bar(p);
    int w = view_.vertex(f, wp);
    if (s.color_at(w) != 0) {
      throw InternalError("blocklist: bar partner already colored");
    }
    BlockList target = target_for(fcolor_[f], fcolor_[delegated]);
    std::vector<int> remaining = remaining_types(s, f, target);
    for (int b = 1; b <= d_; ++b) {
      if (remaining[block_type(last.color, b, d_)] > 0) return {w, b};
    }
    throw InternalError("blocklist: no color reaches a needed block type");
  }

  std::optional<std::string> check_terminal(const GameState& s) const override {
    int delegated = view_.fiber_of(s.history().front().vertex);
    std::vector<BlockList> lists(view_.fiber_count);
    for (int f = 0; f < view_.fiber_count; ++f) {
      Coloring local(view_.fiber_size);
      for (int p = 0; p < view_.fiber_size; ++p) {
        local[p] = s.color_at(view_.vertex(f, p));
      }
      lists[f] = block_list(bar_, local, d_);
      if (f == delegated) {
        bool in_l = std::find(inner_lists_.begin(), inner_lists_.end(),
                              lists[f]) != inner_lists_.end();
        if (!in_l) return "blocklist: delegated fiber list outside L";
        if (!is_distinguishing(bar_.graph, local)) {
          return "blocklist: delegated fiber coloring not distinguishing on H";
        }
      } else if (!(lists[f] == target_for(fcolor_[f], fcolor_[delegated]))) {
        return "blocklist: fiber " + std::to_string(f) + " missed its target";
      }
    }
    // (dagger): equal lists only within equal F-colors.
    for (int v = 0; v < view_.fiber_count; ++v) {
      for (int w = v + 1; w < view_.fiber_count; ++w) {
        if (lists[v] == lists[w] && fcolor_[v] != fcolor_[w]) {
          return "blocklist: equal lists across distinct F-colors";
        }
      }
    }
    return fiber_bookkeeping_failures(s, view_, FiberCase::Zero);
  }

 private:
  // Injective color -> block-list assignment.  The color of the delegated
  // fiber stands for "anything in L"; steered same-color fibers aim at the
  // smallest member of L, other colors take fresh non-L lists in order.
  BlockList target_for(int color, int delegated_color) const {
    if (color == delegated_color) {
      return *std::min_element(inner_lists_.begin(), inner_lists_.end());
    }
    int rank = 0;
    for (int c = 1; c < color; ++c) {
      if (c != delegated_color && used_colors_.count(c)) ++rank;
    }
    return pool_[rank];
  }

  std::vector<int> remaining_types(const GameState& s, int f,
                                   const BlockList& target) const {
    std::vector<int> remaining = target.counts();
    for (int p = 0; p < view_.fiber_size; ++p) {
      int q = bar_.bar(p);
      if (q <= p) continue;
      int cp = s.color_at(view_.vertex(f, p));
      int cq = s.color_at(view_.vertex(f, q));
      if (cp && cq) --remaining[block_type(cp, cq, d_)];
    }
    for (int r : remaining) {
      if (r < 0) throw InternalError("blocklist: block census exceeds target");
    }
    return remaining;
  }

 public:
  std::set<int> used_colors_;  // colors appearing in fcolor_

 private:
  AxisView view_;
  InvolutiveStructure bar_;
  Coloring fcolor_;
  StrategyPtr inner_;
  std::vector<BlockList> inner_lists_;
  std::vector<BlockList> pool_;  // non-L lists, lexicographic
  int d_;
  std::shared_ptr<const Graph> h_;
};

// ---------------------------------------------------------------------------
// Gentle on C_4 x F and C_6 x F with two colors.

class C4C6Strategy : public Strategy {
 public:
  C4C6Strategy(AxisView view, Coloring fcolor, int n)
      : view_(std::move(view)), fcolor_(std::move(fcolor)), n_(n) {}

  std::string name() const override { return "c4c6"; }
  Player side() const override { return Player::Gentle; }

  Move choose(const GameState& s) const override {
    check_strategy_turn(s, Player::Gentle, "c4c6");
    const HistoryEntry& last = last_move(s, "c4c6");
    int f = view_.fiber_of(last.vertex);
    int p = view_.pos_of(last.vertex);
    int a = last.color;
    int half = n_ / 2;
    int wp = (p + half) % n_;
    int w = view_.vertex(f, wp);
    if (s.color_at(w) != 0) {
      throw InternalError("c4c6: antipodal partner already colored");
    }

    std::vector<int> target = target_counts(fcolor_[f]);
    bool pinned_block = p % half == 0;  // the block {0, n/2}
    if (target[1] >= 1 && pinned_block) {
      return {w, 3 - a};
    }
    std::vector<int> remaining = target;
    bool pinned_uncolored = s.color_at(view_.vertex(f, 0)) == 0 &&
                            s.color_at(view_.vertex(f, half)) == 0;
    for (int q = 0; q < half; ++q) {
      int cq = s.color_at(view_.vertex(f, q));
      int cq2 = s.color_at(view_.vertex(f, q + half));
      if (cq && cq2) --remaining[block_type(cq, cq2, 2)];
    }
    if (target[1] >= 1 && pinned_uncolored) --remaining[1];  // reserved
    for (int t = 0; t < 2; ++t) {
      if (remaining[t] > 0) return {w, t == 0 ? a : 3 - a};
    }
    throw InternalError("c4c6: no needed block type left");
  }

  std::optional<std::string> check_terminal(const GameState& s) const override {
    int half = n_ / 2;
    for (int f = 0; f < view_.fiber_count; ++f) {
      std::vector<int> counts(2, 0);
      for (int q = 0; q < half; ++q) {
        ++counts[block_type(s.color_at(view_.vertex(f, q)),
                            s.color_at(view_.vertex(f, q + half)), 2)];
      }
      if (counts != target_counts(fcolor_[f])) {
        return "c4c6: fiber " + std::to_string(f) + " missed its block-list";
      }
      if (target_counts(fcolor_[f])[1] >= 1 &&
          block_type(s.color_at(view_.vertex(f, 0)),
                     s.color_at(view_.vertex(f, half)), 2) != 1) {
        return "c4c6: distinguished block not of type 1 in fiber " +
               std::to_string(f);
      }
    }
    return fiber_bookkeeping_failures(s, view_, FiberCase::Zero);
  }

 private:
  std::vector<int> target_counts(int fcolor) const {
    int blocks = n_ / 2;
    switch (fcolor) {
      case 1: return {blocks, 0};
      case 2: return {blocks - 1, 1};
      case 3: return {blocks - 2, 2};
    }
    throw InternalError("c4c6: F-coloring uses a color outside 1..3");
  }

  AxisView view_;
  Coloring fcolor_;
  int n_;
};

// ---------------------------------------------------------------------------
// Gentle's parity strategy on H x F (vertex-transitive H, D(F) <= 2).

class ParityStrategy : public Strategy {
 public:
  ParityStrategy(AxisView view, FiberCase case_tag, Coloring fcolor,
                 StrategyPtr inner, AutomorphismSet auts_h, int d)
      : view_(std::move(view)),
        case_tag_(case_tag),
        fcolor_(std::move(fcolor)),
        inner_(std::move(inner)),
        auts_h_(std::move(auts_h)),
        d_(d),
        h_(std::make_shared<const Graph>(view_.g->factors()[0])) {}

  std::string name() const override { return "parity"; }
  Player side() const override { return Player::Gentle; }

  Move choose(const GameState& s) const override {
    check_strategy_turn(s, Player::Gentle, "parity");

    if (s.history().empty()) {
      // Case 1 with Gentle first: open fiber 0 with inner's opening move.
      Move open = inner_opening();
      return {view_.vertex(0, open.vertex), open.color};
    }

    int complete = first_complete_fiber(s);
    FiberTracker t = FiberTracker::from_state(s, view_.axis);
    std::vector<int> allowed = fiber_constraint(t, s);

    if (complete < 0) {
      // Inner mode: every fiber plays the winning strategy on H.
      if (allowed.size() > 1 || t.colored_in_fiber[allowed[0]] == 0) {
        int j = *std::min_element(allowed.begin(), allowed.end());
        Move open = inner_opening();
        return {view_.vertex(j, open.vertex), open.color};
      }
      int f = allowed[0];
      Move mv = inner_move_in_fiber(s, f);
      return {view_.vertex(f, mv.vertex), mv.color};
    }

    // Post mode: steer parities to the distinguishing coloring of F.
    Coloring cprime = adjusted_fcolor(s, complete);
    if (allowed.size() > 1 || t.colored_in_fiber[allowed[0]] == 0) {
      int j = *std::min_element(allowed.begin(), allowed.end());
      return {view_.vertex(j, 0), 1};
    }
    int f = allowed[0];
    if (t.colored_in_fiber[f] == view_.fiber_size - 1) {
      int pos = view_.lowest_uncolored_pos(s.coloring(), f);
      int ones = 0;
      for (int p = 0; p < view_.fiber_size; ++p) {
        if (s.color_at(view_.vertex(f, p)) == 1) ++ones;
      }
      bool want_odd = cprime[f] == 1;
      int b = (ones % 2 == 1) == want_odd ? 2 : 1;
      return {view_.vertex(f, pos), b};
    }
    return {view_.vertex(f, view_.lowest_uncolored_pos(s.coloring(), f)), 1};
  }

  std::optional<std::string> check_terminal(const GameState& s) const override {
    int complete = first_complete_fiber_in_history(s);
    Coloring cprime = adjusted_fcolor(s, complete);
    for (int f = 0; f < view_.fiber_count; ++f) {
      if (parity_label(view_.fiber_colors(s.coloring(), f)) != cprime[f]) {
        return "parity: fiber " + std::to_string(f) +
               " violates the parity condition";
      }
    }
    Coloring local(view_.fiber_size);
    for (int p = 0; p < view_.fiber_size; ++p) {
      local[p] = s.color_at(view_.vertex(complete, p));
    }
    if (!is_distinguishing(*h_, auts_h_, local)) {
      return "parity: first completed fiber not distinguishing on H";
    }
    return fiber_bookkeeping_failures(s, view_, case_tag_);
  }

 private:
  Move inner_opening() const {
    GameState empty = make_local_state(h_, d_, Player::Gentle, {});
    return inner_->choose(empty);
  }

  // Index of a complete fiber, or -1.
  int first_complete_fiber(const GameState& s) const {
    return first_complete_fiber_in_history(s, true);
  }

  int first_complete_fiber_in_history(const GameState& s,
                                      bool allow_missing = false) const {
    std::vector<int> count(view_.fiber_count, 0);
    for (const auto& e : s.history()) {
      int f = view_.fiber_of(e.vertex);
      if (++count[f] == view_.fiber_size) return f;
    }
    if (allow_missing) return -1;
    throw InternalError("parity: no completed fiber at terminal state");
  }

  Coloring adjusted_fcolor(const GameState& s, int v0) const {
    int p0 = parity_label(view_.fiber_colors(s.coloring(), v0));
    if (fcolor_[v0] == p0) return fcolor_;
    Coloring swapped = fcolor_;
    for (auto& c : swapped) c = static_cast<std::uint8_t>(3 - c);
    return swapped;
  }

  // Inner play inside fiber f, translating Rascal-opened fibers through a
  // vertex-transitivity automorphism so the inner strategy sees its own
  // opening (the Lemma-style absorption of Rascal's double first move).
  Move inner_move_in_fiber(const GameState& s, int f) const {
    std::vector<HistoryEntry> local;
    for (const auto& e : s.history()) {
      if (view_.fiber_of(e.vertex) == f) {
        local.push_back({view_.pos_of(e.vertex), e.color, e.by});
      }
    }
    if (local.empty()) {
      throw InternalError("parity: reply into an untouched fiber");
    }
    if (case_tag_ == FiberCase::Zero) {
      GameState ls = make_local_state(h_, d_, Player::Rascal, local);
      return inner_->choose(ls);
    }
    if (local.front().by == Player::Gentle) {
      GameState ls = make_local_state(h_, d_, Player::Gentle, local);
      return inner_->choose(ls);
    }
    // Rascal opened this fiber: translate his opening onto inner's.
    Move open = inner_opening();
    int u0 = local.front().vertex;
    int a0 = local.front().color;
    const Permutation* sigma = nullptr;
    for (const auto& cand : auts_h_.elements()) {
      if (cand(u0) == open.vertex) {
        sigma = &cand;
        break;
      }
    }
    if (!sigma) {
      throw InternalError("parity: no automorphism maps Rascal's opening");
    }
    auto pi = [&](int c) {
      if (c == a0) return open.color;
      if (c == open.color) return a0;
      return c;
    };
    std::vector<HistoryEntry> imagined;
    imagined.push_back({open.vertex, open.color, Player::Gentle});
    for (std::size_t i = 1; i < local.size(); ++i) {
      imagined.push_back(
          {(*sigma)(local[i].vertex), pi(local[i].color), local[i].by});
    }
    GameState ls = make_local_state(h_, d_, Player::Gentle, imagined);
    Move mv = inner_->choose(ls);
    Permutation inv = sigma->inverse();
    return {inv(mv.vertex), pi(mv.color)};
  }

  AxisView view_;
  FiberCase case_tag_;
  Coloring fcolor_;
  StrategyPtr inner_;
  AutomorphismSet auts_h_;
  int d_;
  std::shared_ptr<const Graph> h_;
};

// ---------------------------------------------------------------------------
// Gentle on C_n x C_m, n prime, with two colors.

class PrimeCycleStrategy : public Strategy {
 public:
  PrimeCycleStrategy(AxisView view, MatchingSet ms, Coloring fcolor, int n)
      : view_(std::move(view)),
        ms_(std::move(ms)),
        fcolor_(std::move(fcolor)),
        n_(n),
        flip_open_(((n - 1) / 2) % 2 == 1) {}

  std::string name() const override { return "prime-cycle"; }
  Player side() const override { return Player::Gentle; }

  Move choose(const GameState& s) const override {
    check_strategy_turn(s, Player::Gentle, "prime-cycle");

    if (s.history().empty()) {
      return {view_.vertex(0, ms_.uncovered[0]), open_color(0)};
    }

    std::vector<int> designated = designated_fibers(s);
    FiberTracker t = FiberTracker::from_state(s, view_.axis);
    std::vector<int> allowed = fiber_constraint(t, s);
    const HistoryEntry& last = last_move(s, "prime-cycle");

    if (allowed.size() > 1 || t.colored_in_fiber[allowed[0]] == 0) {
      int j = *std::min_element(allowed.begin(), allowed.end());
      int k = static_cast<int>(designated.size());
      if (k < 3) {
        return {view_.vertex(j, ms_.uncovered[k]), open_color(j)};
      }
      return {view_.vertex(j, 0), 1};
    }

    int f = allowed[0];
    int which = -1;
    for (int k = 0; k < static_cast<int>(designated.size()) && k < 3; ++k) {
      if (designated[k] == f) which = k;
    }
    if (which >= 0) {
      int p = view_.pos_of(last.vertex);
      int pos = ms_.partner[which][p];
      if (pos < 0 || s.color_at(view_.vertex(f, pos)) != 0) {
        throw InternalError("prime-cycle: matched partner unavailable");
      }
      return {view_.vertex(f, pos), 3 - last.color};
    }
    if (t.colored_in_fiber[f] == view_.fiber_size - 1) {
      int pos = view_.lowest_uncolored_pos(s.coloring(), f);
      int ones = 0;
      for (int p = 0; p < view_.fiber_size; ++p) {
        if (s.color_at(view_.vertex(f, p)) == 1) ++ones;
      }
      bool want_odd = fcolor_[f] == 1;
      int b = (ones % 2 == 1) == want_odd ? 2 : 1;
      return {view_.vertex(f, pos), b};
    }
    return {view_.vertex(f, view_.lowest_uncolored_pos(s.coloring(), f)), 1};
  }

  std::optional<std::string> check_terminal(const GameState& s) const override {
    for (int f = 0; f < view_.fiber_count; ++f) {
      if (parity_label(view_.fiber_colors(s.coloring(), f)) != fcolor_[f]) {
        return "prime-cycle: fiber " + std::to_string(f) +
               " violates the parity condition";
      }
    }
    std::vector<int> designated = designated_fibers(s);
    if (designated.size() < 3) {
      return "prime-cycle: fewer than three designated fibers";
    }
    for (int k = 0; k < 3; ++k) {
      int f = designated[k];
      for (int p = 0; p < n_; ++p) {
        int q = ms_.partner[k][p];
        if (q <= p) continue;
        if (s.color_at(view_.vertex(f, p)) == s.color_at(view_.vertex(f, q))) {
          return "prime-cycle: monochromatic matched pair in fiber " +
                 std::to_string(f);
        }
      }
    }
    return fiber_bookkeeping_failures(s, view_, FiberCase::One);
  }

 private:
  // The final number of vertices colored 1 in a designated fiber is
  // (n-1)/2 + [opening color == 1]; pick the opening color so the fiber's
  // parity label lands on the prescribed F-color.
  int open_color(int fiber) const {
    int want = fcolor_[fiber];
    return flip_open_ ? 3 - want : want;
  }

  // Gentle's self-opened fibers in order; the first three carry matchings.
  std::vector<int> designated_fibers(const GameState& s) const {
    std::vector<int> out;
    std::vector<int> count(view_.fiber_count, 0);
    for (const auto& e : s.history()) {
      int f = view_.fiber_of(e.vertex);
      if (count[f]++ == 0 && e.by == Player::Gentle) out.push_back(f);
    }
    return out;
  }

  AxisView view_;
  MatchingSet ms_;
  Coloring fcolor_;
  int n_;
  bool flip_open_;
};

// ---------------------------------------------------------------------------
// Rascal on K_2 x K_m with d < m.

class K2KmRascalStrategy : public Strategy {
 public:
  explicit K2KmRascalStrategy(AxisView view) : view_(std::move(view)) {}

  std::string name() const override { return "k2km-rascal"; }
  Player side() const override { return Player::Rascal; }

  Move choose(const GameState& s) const override {
    check_strategy_turn(s, Player::Rascal, "k2km-rascal");
    if (s.history().empty()) return {base(0), 1};

    if (strictly_same_pair(s)) return dont_care(s);

    const auto& hist = s.history();
    bool case1 = view_.fiber_of(hist[1].vertex) == view_.fiber_of(hist[0].vertex);
    return case1 ? case1_move(s) : case2_move(s);
  }

  std::optional<std::string> check_terminal(const GameState& s) const override {
    if (!strictly_same_pair(s)) {
      return "k2km-rascal: no two fibers strictly colored the same";
    }
    return std::nullopt;
  }

 private:
  int base(int fiber) const { return view_.vertex(fiber, 0); }
  int top(int fiber) const { return view_.vertex(fiber, 1); }

  bool strictly_same_pair(const GameState& s) const {
    std::map<std::pair<int, int>, int> seen;
    for (int j = 0; j < view_.fiber_count; ++j) {
      int b = s.color_at(base(j));
      int t = s.color_at(top(j));
      if (b && t && !seen.emplace(std::make_pair(b, t), j).second) return true;
    }
    return false;
  }

  Move dont_care(const GameState& s) const {
    for (int v = 0; v < s.graph().order(); ++v) {
      if (s.color_at(v) == 0) return {v, 1};
    }
    throw InternalError("k2km-rascal: no uncolored vertex left");
  }

  // Ladder: color the base of a fresh rung with 1; if Gentle ever fails to
  // answer on the rung's top, clone the first rung's top color there.
  Move case1_move(const GameState& s) const {
    const auto& hist = s.history();
    const HistoryEntry& my_last = hist[hist.size() - 2];
    const HistoryEntry& gentle_last = hist.back();
    int rung = view_.fiber_of(my_last.vertex);
    if (gentle_last.vertex != top(rung)) {
      int ref_top = top(view_.fiber_of(hist[0].vertex));
      if (s.color_at(ref_top) == 0 || s.color_at(top(rung)) != 0) {
        // Gentle deviated in a way the ladder does not cover.
        throw InternalError("k2km-rascal: ladder bookkeeping broken");
      }
      return {top(rung), s.color_at(ref_top)};
    }
    for (int j = 0; j < view_.fiber_count; ++j) {
      if (s.color_at(base(j)) == 0) return {base(j), 1};
    }
    throw InternalError("k2km-rascal: ladder ran out of bases");
  }

  Move case2_move(const GameState& s) const {
    const auto& hist = s.history();
    int s0 = view_.fiber_of(hist[0].vertex);
    std::uint64_t my_moves = hist.size() / 2;

    if (my_moves == 1) {
      return {base(lowest_untouched_fiber(s)), 1};
    }

    int j1 = view_.fiber_of(hist[2].vertex);
    std::vector<int> specials = {s0, j1};
    if (hist.size() > 4) {
      const HistoryEntry& third = hist[4];
      int f3 = view_.fiber_of(third.vertex);
      if (view_.pos_of(third.vertex) == 0 && f3 != s0 && f3 != j1) {
        specials.push_back(f3);
      }
    }

    std::vector<int> colored_tops, uncolored_tops;
    for (int f : specials) {
      (s.color_at(top(f)) ? colored_tops : uncolored_tops).push_back(f);
    }

    if (specials.size() == 2) {
      if (!colored_tops.empty() && !uncolored_tops.empty()) {
        return {top(uncolored_tops.front()),
                s.color_at(top(colored_tops.front()))};
      }
      return {base(lowest_untouched_fiber(s)), 1};
    }

    if (!colored_tops.empty() && !uncolored_tops.empty()) {
      return {top(uncolored_tops.front()),
              s.color_at(top(colored_tops.front()))};
    }
    if (colored_tops.empty()) {
      for (int v = 0; v < s.graph().order(); ++v) {
        if (s.color_at(v) != 0) continue;
        bool special_top = false;
        for (int f : specials) special_top |= v == top(f);
        if (!special_top) return {v, 1};
      }
      throw InternalError("k2km-rascal: no waiting move available");
    }
    throw InternalError("k2km-rascal: all special tops colored without a pair");
  }

  int lowest_untouched_fiber(const GameState& s) const {
    for (int j = 0; j < view_.fiber_count; ++j) {
      if (s.color_at(base(j)) == 0 && s.color_at(top(j)) == 0) return j;
    }
    throw InternalError("k2km-rascal: no untouched fiber available");
  }

  AxisView view_;
};

// ---------------------------------------------------------------------------
// Rascal's anti-fiber strategy on K_n x K_m (conforming Gentle only).

class AntiFiberStrategy : public Strategy {
 public:
  AntiFiberStrategy(AxisView columns, int n, int m)
      : columns_(std::move(columns)), n_(n), m_(m) {}

  std::string name() const override { return "antifiber"; }
  Player side() const override { return Player::Rascal; }
  bool requires_conforming_adversary() const override { return true; }

  Move choose(const GameState& s) const override {
    check_strategy_turn(s, Player::Rascal, "antifiber");
    const Graph& g = s.graph();

    if (cloned_row(s) >= 0) return dont_care(s);

    // Phase 1: open fresh columns on row 0.
    for (int j = 0; j < m_; ++j) {
      if (columns_.colored_in(s.coloring(), j) == 0) {
        return {cell(g, 0, j), 1};
      }
    }
    // Phase 2: copy each column's color onto its free row-0 cell.
    for (int j = 0; j < m_; ++j) {
      int c0 = s.color_at(cell(g, 0, j));
      if (c0 == 0) {
        int donor = 0;
        int count = 0;
        for (int r = 1; r < n_; ++r) {
          int c = s.color_at(cell(g, r, j));
          if (c) {
            donor = c;
            ++count;
          }
        }
        if (count != 1) {
          throw InternalError("antifiber: column has no unique donor cell");
        }
        return {cell(g, 0, j), donor};
      }
    }
    // Phase 3: clone row 0 onto a row Gentle never used in phase 2.
    int r = clone_row(s);
    for (int j = 0; j < m_; ++j) {
      if (s.color_at(cell(g, r, j)) == 0) {
        return {cell(g, r, j), s.color_at(cell(g, 0, j))};
      }
    }
    return dont_care(s);
  }

  std::optional<std::string> check_terminal(const GameState& s) const override {
    if (cloned_row(s) < 0) {
      return "antifiber: no two rows strictly colored the same";
    }
    return std::nullopt;
  }

 private:
  static int cell(const Graph& g, int row, int col) {
    return g.vertex_at({row, col});
  }

  // A row strictly equal to another complete row, or -1.
  int cloned_row(const GameState& s) const {
    const Graph& g = s.graph();
    for (int a = 0; a < n_; ++a) {
      for (int b = a + 1; b < n_; ++b) {
        bool same = true;
        for (int j = 0; j < m_; ++j) {
          int ca = s.color_at(cell(g, a, j));
          int cb = s.color_at(cell(g, b, j));
          if (ca == 0 || ca != cb) {
            same = false;
            break;
          }
        }
        if (same) return b;
      }
    }
    return -1;
  }

  // Lowest row (not 0) in which Gentle placed no phase-2 reply.  Phase-2
  // moves are my row-0 moves into already-touched columns; Gentle's reply is
  // the entry right after.
  int clone_row(const GameState& s) const {
    const Graph& g = s.graph();
    const auto& hist = s.history();
    std::vector<int> col_count(m_, 0);
    std::vector<char> barred(n_, 0);
    barred[0] = 1;
    for (std::size_t i = 0; i < hist.size(); ++i) {
      const auto& e = hist[i];
      int col = g.coord(e.vertex, 1);
      int row = g.coord(e.vertex, 0);
      if (e.by == Player::Rascal && row == 0 && col_count[col] > 0 &&
          i + 1 < hist.size()) {
        barred[g.coord(hist[i + 1].vertex, 0)] = 1;
      }
      ++col_count[col];
    }
    for (int r = 1; r < n_; ++r) {
      if (!barred[r]) return r;
    }
    throw InternalError("antifiber: every row was touched in phase 2");
  }

  Move dont_care(const GameState& s) const {
    for (int v = 0; v < s.graph().order(); ++v) {
      if (s.color_at(v) == 0) return {v, 1};
    }
    throw InternalError("antifiber: no uncolored vertex left");
  }

  AxisView columns_;  // K_n-fibers (the fiber-strategy columns)
  int n_;
  int m_;
};

// ---------------------------------------------------------------------------
// Solver-extracted optimal play.

class ExtractedStrategy : public Strategy {
 public:
  ExtractedStrategy(std::shared_ptr<Solver> solver, Player side,
                    std::string label)
      : solver_(std::move(solver)), side_(side), label_(std::move(label)) {}

  std::string name() const override { return label_; }
  Player side() const override { return side_; }

  Move choose(const GameState& s) const override {
    check_strategy_turn(s, side_, label_.c_str());
    if (s.graph().order() != solver_->graph().order() ||
        s.colors() != solver_->colors() ||
        s.first_player() != solver_->first_player()) {
      throw ParamError(label_ + ": state from a different game instance");
    }
    std::lock_guard<std::mutex> lock(mu_);
    Coloring pos = s.coloring();
    for (int v = 0; v < s.graph().order(); ++v) {
      if (pos[v] != 0) continue;
      for (int c = 1; c <= s.colors(); ++c) {
        pos[v] = static_cast<std::uint8_t>(c);
        Player w = solver_->winner_from(pos);
        pos[v] = 0;
        if (w == side_) return {v, c};
      }
    }
    throw InternalError(label_ + ": no winning move from a won position");
  }

 private:
  std::shared_ptr<Solver> solver_;
  Player side_;
  std::string label_;
  mutable std::mutex mu_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Factories.

StrategyPtr rascal_mirror_strategy(const Graph& g, int d, Player first,
                                   Permutation sigma) {
  (void)d;
  if (sigma.size() != g.order()) {
    throw ApplicabilityError("mirror: involution size mismatch");
  }
  require(!sigma.is_identity() && sigma.is_involution(),
          "mirror: sigma must be a nontrivial involution");
  for (auto [u, v] : g.edges()) {
    if (!g.adjacent(sigma(u), sigma(v))) {
      throw ApplicabilityError("mirror: sigma is not an automorphism");
    }
  }
  bool even = g.order() % 2 == 0;
  require((even && first == Player::Gentle) ||
              (!even && first == Player::Rascal),
          "mirror: needs |V| even with Gentle first or |V| odd with Rascal "
          "first");
  return std::make_shared<MirrorStrategy>(std::move(sigma));
}

StrategyPtr gentle_k2_strategy(const Graph& g, int d, Player first) {
  require_binary_product(g, "k2-complete");
  const Graph& h = g.factors()[0];
  const Graph& f = g.factors()[1];
  require(h.order() == 2, "k2-complete: first factor must be K2");
  require(is_complete_graph(f), "k2-complete: second factor must be complete");
  int m = f.order();
  require(m >= 5, "k2-complete: needs m >= 5 (got m=" + std::to_string(m) +
                      "; for m in {2,3,4} the value is 3)");
  require(d == m, "k2-complete: needs d = m = " + std::to_string(m));
  require(first == Player::Rascal, "k2-complete: Rascal must start");
  return std::make_shared<K2CompleteStrategy>(AxisView::make(g, 0), m);
}

StrategyPtr gentle_matching_strategy(const Graph& g, int d, Player first) {
  require_binary_product(g, "fiber-matching");
  const Graph& hn = g.factors()[0];
  const Graph& km = g.factors()[1];
  require(is_complete_graph(hn) && is_complete_graph(km),
          "fiber-matching: both factors must be complete graphs");
  int n = hn.order();
  int m = km.order();
  require(n != m, "fiber-matching: factors must have distinct orders");
  require(d == m + 1,
          "fiber-matching: needs d = m+1 = " + std::to_string(m + 1));
  int mode;
  if (n % 2 == 0) {
    require(m >= n - 1, "fiber-matching: needs m >= n-1 (" +
                            std::to_string(m) + " < " + std::to_string(n - 1) +
                            ")");
    require(first == Player::Rascal, "fiber-matching: Rascal must start");
    mode = 1;
  } else if (m % 2 == 0) {
    require(m >= 2 * n - 2, "fiber-matching: needs m >= 2n-2 (" +
                                std::to_string(m) + " < " +
                                std::to_string(2 * n - 2) + ")");
    require(first == Player::Rascal, "fiber-matching: Rascal must start");
    mode = 2;
  } else {
    require(m >= 2 * n - 1, "fiber-matching: needs m >= 2n-1 (" +
                                std::to_string(m) + " < " +
                                std::to_string(2 * n - 1) + ")");
    require(first == Player::Gentle, "fiber-matching: Gentle must start");
    mode = 3;
  }
  MatchingSet ms =
      mode == 1 ? round_robin_matchings(n) : rotation_matchings_complete(n);
  return std::make_shared<MatchingStrategy>(AxisView::make(g, 0),
                                            std::move(ms), mode, n, m);
}

StrategyPtr gentle_blocklist_strategy(const Graph& g, int d, Player first,
                                      InvolutiveStructure bar,
                                      Coloring f_coloring, StrategyPtr inner,
                                      std::vector<BlockList> inner_lists) {
  require_binary_product(g, "blocklist");
  const Graph& h = g.factors()[0];
  const Graph& f = g.factors()[1];
  require(bar.graph == h, "blocklist: bar structure is not on the H factor");
  require(first == Player::Rascal, "blocklist: Rascal must start");
  require(h.order() % 2 == 0, "blocklist: H must have even order");
  if (!inner || inner->side() != Player::Gentle) {
    throw ApplicabilityError("blocklist: inner must be a Gentle strategy");
  }
  require(!inner_lists.empty(), "blocklist: empty terminal block-list set");
  require(relatively_prime(h, f),
          "blocklist: factors must be relatively prime");
  if (static_cast<int>(f_coloring.size()) != f.order()) {
    throw ParamError("blocklist: F-coloring size mismatch");
  }
  if (!is_distinguishing(f, f_coloring)) {
    throw ParamError("blocklist: F-coloring is not distinguishing");
  }

  std::set<int> used;
  for (auto c : f_coloring) used.insert(c);
  int df = static_cast<int>(used.size());
  std::uint64_t lists = weak_composition_count(h.order() / 2, d);
  std::uint64_t need = static_cast<std::uint64_t>(df - 1) + inner_lists.size();
  require(lists >= need,
          "blocklist: needs weak_composition_count >= (D(F)-1)+|L|: " +
              std::to_string(lists) + " < " + std::to_string(need));

  std::vector<BlockList> all = all_block_lists(h.order() / 2, d);
  std::vector<BlockList> sorted_inner = inner_lists;
  std::sort(sorted_inner.begin(), sorted_inner.end());
  std::vector<BlockList> pool;
  for (const auto& bl : all) {
    if (!std::binary_search(sorted_inner.begin(), sorted_inner.end(), bl)) {
      pool.push_back(bl);
    }
  }
  auto strat = std::make_shared<BlocklistStrategy>(
      AxisView::make(g, 0), std::move(bar), std::move(f_coloring),
      std::move(inner), std::move(inner_lists), std::move(pool), d);
  strat->used_colors_ = used;
  return strat;
}

StrategyPtr gentle_c4c6_strategy(const Graph& g, int d, Player first,
                                 Coloring f_coloring) {
  require_binary_product(g, "c4c6");
  const Graph& h = g.factors()[0];
  const Graph& f = g.factors()[1];
  require(is_standard_cycle(h) && (h.order() == 4 || h.order() == 6),
          "c4c6: first factor must be C4 or C6 in standard labeling");
  require(f.order() >= 3, "c4c6: F needs at least three vertices");
  require(d == 2, "c4c6: needs exactly two colors");
  require(first == Player::Rascal, "c4c6: Rascal must start");
  require(relatively_prime(h, f), "c4c6: factors must be relatively prime");
  if (static_cast<int>(f_coloring.size()) != f.order()) {
    throw ParamError("c4c6: F-coloring size mismatch");
  }
  if (!is_distinguishing(f, f_coloring)) {
    throw ParamError("c4c6: F-coloring is not distinguishing");
  }
  std::set<int> used(f_coloring.begin(), f_coloring.end());
  require(used == std::set<int>({1, 2, 3}),
          "c4c6: F-coloring must use exactly the colors 1, 2, 3");
  return std::make_shared<C4C6Strategy>(AxisView::make(g, 0),
                                        std::move(f_coloring), h.order());
}

StrategyPtr gentle_parity_strategy(const Graph& g, int d, Player first,
                                   Coloring f_coloring, StrategyPtr inner) {
  require_binary_product(g, "parity");
  const Graph& h = g.factors()[0];
  const Graph& f = g.factors()[1];
  AutomorphismSet auts_h = automorphisms(h);
  require(is_vertex_transitive(h, auts_h),
          "parity: H must be vertex transitive");
  require(auts_h.order() > 1, "parity: needs D(H) >= 2");
  require(d >= 2, "parity: needs at least two colors");
  if (!inner || inner->side() != Player::Gentle) {
    throw ApplicabilityError("parity: inner must be a Gentle strategy");
  }
  require(relatively_prime(h, f), "parity: factors must be relatively prime");
  if (static_cast<int>(f_coloring.size()) != f.order()) {
    throw ParamError("parity: F-coloring size mismatch");
  }
  for (auto c : f_coloring) {
    if (c != 1 && c != 2) {
      throw ParamError("parity: F-coloring must use colors 1 and 2 only");
    }
  }
  if (!is_distinguishing(f, f_coloring)) {
    throw ParamError("parity: F-coloring is not distinguishing");
  }

  FiberCase tag;
  if (h.order() % 2 == 1 && f.order() % 2 == 1) {
    require(first == Player::Gentle,
            "parity: odd-by-odd case needs Gentle first");
    tag = FiberCase::One;
  } else if (h.order() % 2 == 1 && f.order() % 2 == 0) {
    require(first == Player::Rascal,
            "parity: odd-by-even case needs Rascal first");
    tag = FiberCase::One;
  } else if (h.order() % 2 == 0) {
    require(first == Player::Rascal, "parity: even-H case needs Rascal first");
    tag = FiberCase::Zero;
  } else {
    throw ApplicabilityError("parity: parities match no case");
  }
  return std::make_shared<ParityStrategy>(AxisView::make(g, 0), tag,
                                          std::move(f_coloring),
                                          std::move(inner), std::move(auts_h),
                                          d);
}

StrategyPtr gentle_prime_cycle_strategy(const Graph& g, int d, Player first) {
  require_binary_product(g, "prime-cycle");
  const Graph& cn = g.factors()[0];
  const Graph& cm = g.factors()[1];
  require(is_standard_cycle(cn) && is_standard_cycle(cm),
          "prime-cycle: both factors must be cycles in standard labeling");
  int n = cn.order();
  int m = cm.order();
  require(n % 2 == 1 && m % 2 == 1, "prime-cycle: both orders must be odd");
  require(n != m, "prime-cycle: factors must have distinct orders");
  require(is_prime(n), "prime-cycle: n = " + std::to_string(n) +
                           " must be prime");
  require(m >= 7, "prime-cycle: needs m >= 7");
  require(d == 2, "prime-cycle: needs exactly two colors");
  require(first == Player::Gentle, "prime-cycle: Gentle must start");

  auto fc = find_distinguishing_coloring(cm, 2, false);
  if (!fc) throw ApplicabilityError("prime-cycle: no 2-distinguishing C_m");
  return std::make_shared<PrimeCycleStrategy>(
      AxisView::make(g, 0), rotation_matchings_cycle(n, 3), std::move(*fc), n);
}

StrategyPtr rascal_k2km_strategy(const Graph& g, int d, Player first) {
  require_binary_product(g, "k2km-rascal");
  const Graph& h = g.factors()[0];
  const Graph& f = g.factors()[1];
  require(h.order() == 2, "k2km-rascal: first factor must be K2");
  require(is_complete_graph(f),
          "k2km-rascal: second factor must be complete");
  int m = f.order();
  require(m >= 5, "k2km-rascal: needs m >= 5");
  require(d < m, "k2km-rascal: needs d < m (d=" + std::to_string(d) +
                     ", m=" + std::to_string(m) + ")");
  require(first == Player::Rascal, "k2km-rascal: Rascal must start");
  return std::make_shared<K2KmRascalStrategy>(AxisView::make(g, 0));
}

StrategyPtr rascal_antifiber_strategy(const Graph& g, int d, Player first) {
  (void)d;
  require_binary_product(g, "antifiber");
  const Graph& hn = g.factors()[0];
  const Graph& km = g.factors()[1];
  require(is_complete_graph(hn) && is_complete_graph(km),
          "antifiber: both factors must be complete graphs");
  int n = hn.order();
  int m = km.order();
  require(n != m, "antifiber: factors must have distinct orders");
  require(n % 2 == 1, "antifiber: n must be odd");
  if (first == Player::Rascal) {
    require(m % 2 == 0, "antifiber: Rascal-first case needs m even");
    require(m < 2 * n - 2, "antifiber: Rascal-first case needs m < 2n-2 (" +
                               std::to_string(m) + " >= " +
                               std::to_string(2 * n - 2) + ")");
  } else {
    require(m % 2 == 1, "antifiber: Gentle-first case needs m odd");
    require(m < 2 * n - 1, "antifiber: Gentle-first case needs m < 2n-1 (" +
                               std::to_string(m) + " >= " +
                               std::to_string(2 * n - 1) + ")");
  }
  return std::make_shared<AntiFiberStrategy>(AxisView::make(g, 0), n, m);
}

StrategyPtr extract_strategy(const Graph& g, int d, Player first, Player side,
                             SolveOptions opt) {
  auto solver = std::make_shared<Solver>(g, d, first, opt);
  GameValue gv = solver->run();
  if (gv.winner != side) {
    throw ParamError("extract_strategy: " + to_string(side) +
                     " does not win this instance (winner is " +
                     to_string(gv.winner) + ")");
  }
  return std::make_shared<ExtractedStrategy>(std::move(solver), side,
                                             "solver-optimal");
}

StrategyPtr extract_constrained_strategy(const Graph& h, int d, Player first,
                                         Player side,
                                         const std::vector<BlockList>& allowed,
                                         const InvolutiveStructure& bar,
                                         SolveOptions opt) {
  if (!(bar.graph == h)) {
    throw ParamError("extract_constrained_strategy: bar is for another graph");
  }
  auto solver = std::make_shared<Solver>(h, d, first, opt);
  std::vector<BlockList> sorted = allowed;
  std::sort(sorted.begin(), sorted.end());
  InvolutiveStructure bar_copy = bar;
  int colors = d;
  solver->restrict_gentle_wins(
      [bar_copy, sorted, colors](const Coloring& c) {
        return std::binary_search(sorted.begin(), sorted.end(),
                                  block_list(bar_copy, c, colors));
      },
      /*palette_symmetric=*/false);
  GameValue gv = solver->run();
  if (gv.winner != side) {
    throw ParamError("extract_constrained_strategy: " + to_string(side) +
                     " does not win the constrained instance");
  }
  return std::make_shared<ExtractedStrategy>(std::move(solver), side,
                                             "solver-optimal-constrained");
}

// ---------------------------------------------------------------------------
// Auxiliary constructions.

std::optional<Coloring> find_distinguishing_coloring(const Graph& g, int d,
                                                     bool require_all_colors) {
  int n = g.order();
  if (n == 0) return std::nullopt;
  double space = 1;
  for (int i = 0; i < n; ++i) space *= d;

  AutomorphismSet auts = automorphisms(g);
  if (space <= double(1 << 22)) {
    Coloring c(n, 1);
    for (;;) {
      bool all = true;
      if (require_all_colors) {
        std::vector<char> present(d + 1, 0);
        for (auto col : c) present[col] = 1;
        for (int i = 1; i <= d; ++i) all &= present[i] != 0;
      }
      if (all && is_distinguishing(g, auts, c)) return c;
      // Lexicographic increment, last vertex fastest.
      int i = n - 1;
      while (i >= 0 && c[i] == d) {
        c[i] = 1;
        --i;
      }
      if (i < 0) return std::nullopt;
      ++c[i];
    }
  }

  // Large instance: find a 2-distinguishing coloring and, when a third color
  // is required, recolor one repeated-color vertex with it (a unique color
  // pins its vertex, so the coloring stays distinguishing).
  if (d == 3 && require_all_colors) {
    auto two = find_distinguishing_coloring(g, 2, false);
    if (!two) return std::nullopt;
    std::vector<int> count(3, 0);
    for (auto col : *two) ++count[col];
    for (int v = 0; v < n; ++v) {
      if (count[(*two)[v]] >= 2) {
        Coloring c = *two;
        c[v] = 3;
        std::vector<char> present(4, 0);
        for (auto col : c) present[col] = 1;
        if (present[1] && present[2] && present[3]) return c;
      }
    }
    return std::nullopt;
  }
  throw ParamError("find_distinguishing_coloring: search space too large");
}

int distinguishing_number(const Graph& g, int max_d) {
  for (int d = 1; d <= max_d; ++d) {
    if (find_distinguishing_coloring(g, d, false)) return d;
  }
  throw ParamError("distinguishing_number: exceeds max_d = " +
                   std::to_string(max_d));
}

std::vector<BlockList> derive_blocklist_set(const Graph& h, int d,
                                            const InvolutiveStructure& bar,
                                            SolveOptions opt) {
  std::vector<BlockList> all = all_block_lists(h.order() / 2, d);
  int total = static_cast<int>(all.size());
  for (int size = 1; size <= total; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      std::vector<BlockList> subset;
      for (int i : idx) subset.push_back(all[i]);
      if (solve_constrained(h, d, Player::Rascal, subset, bar, opt).winner ==
          Player::Gentle) {
        return subset;
      }
      // Next combination.
      int i = size - 1;
      while (i >= 0 && idx[i] == total - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw ParamError(
      "derive_blocklist_set: Gentle wins no block-list-constrained game");
}

// ---------------------------------------------------------------------------
// Name registry.

std::vector<std::string> strategy_names() {
  return {"fiber-matching", "k2-complete", "blocklist",   "c4c6",
          "parity",         "prime-cycle", "mirror",      "k2km-rascal",
          "antifiber",      "solver-optimal"};
}

StrategyPtr make_named_strategy(const std::string& name, const Graph& g, int d,
                                Player first, SolveOptions opt) {
  if (name == "mirror") {
    AutomorphismSet auts = automorphisms(g, opt.aut_cap);
    auto sigma = first_nontrivial_involution(auts);
    if (!sigma) {
      throw ApplicabilityError("mirror: graph has no nontrivial involution");
    }
    return rascal_mirror_strategy(g, d, first, *sigma);
  }
  if (name == "k2-complete") return gentle_k2_strategy(g, d, first);
  if (name == "fiber-matching") return gentle_matching_strategy(g, d, first);
  if (name == "blocklist") {
    require_binary_product(g, "blocklist");
    const Graph& h = g.factors()[0];
    const Graph& f = g.factors()[1];
    auto bar = detect_involutive(h, opt.aut_cap);
    if (!bar) {
      throw ApplicabilityError("blocklist: H factor is not involutive");
    }
    std::vector<BlockList> lists = derive_blocklist_set(h, d, *bar, opt);
    StrategyPtr inner = extract_constrained_strategy(h, d, Player::Rascal,
                                                     Player::Gentle, lists,
                                                     *bar, opt);
    int df = distinguishing_number(f);
    auto fc = find_distinguishing_coloring(f, df, false);
    if (!fc) throw InternalError("blocklist: lost the distinguishing coloring");
    return gentle_blocklist_strategy(g, d, first, *bar, std::move(*fc),
                                     std::move(inner), std::move(lists));
  }
  if (name == "c4c6") {
    require_binary_product(g, "c4c6");
    auto fc = find_distinguishing_coloring(g.factors()[1], 3, true);
    if (!fc) {
      throw ApplicabilityError("c4c6: F has no 3-distinguishing coloring");
    }
    return gentle_c4c6_strategy(g, d, first, std::move(*fc));
  }
  if (name == "parity") {
    require_binary_product(g, "parity");
    const Graph& h = g.factors()[0];
    const Graph& f = g.factors()[1];
    auto fc = find_distinguishing_coloring(f, 2, false);
    if (!fc) throw ApplicabilityError("parity: needs D(F) <= 2");
    Player inner_first =
        h.order() % 2 == 0 ? Player::Rascal : Player::Gentle;
    StrategyPtr inner =
        extract_strategy(h, d, inner_first, Player::Gentle, opt);
    return gentle_parity_strategy(g, d, first, std::move(*fc),
                                  std::move(inner));
  }
  if (name == "prime-cycle") return gentle_prime_cycle_strategy(g, d, first);
  if (name == "k2km-rascal") return rascal_k2km_strategy(g, d, first);
  if (name == "antifiber") return rascal_antifiber_strategy(g, d, first);
  if (name == "solver-optimal") {
    GameValue gv = solve(g, d, first, opt);
    return extract_strategy(g, d, first, gv.winner, opt);
  }
  std::string names;
  for (const auto& n : strategy_names()) names += " " + n;
  throw ParamError("unknown strategy '" + name + "'; known:" + names);
}

MoveFilter named_strategy_adversary_filter(const std::string& name,
                                           const Graph& g) {
  (void)g;
  if (name == "antifiber") return fiber_conforming_filter(0);
  return nullptr;
}

}  // namespace dgame
