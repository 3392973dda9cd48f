#include "dgame/involutive.hpp"

#include <algorithm>

#include "dgame/errors.hpp"

namespace dgame {

namespace {

bool commutes_with_all(const Permutation& bar, const AutomorphismSet& auts) {
  for (const auto& sigma : auts.elements()) {
    for (int v = 0; v < bar.size(); ++v) {
      if (sigma(bar(v)) != bar(sigma(v))) return false;
    }
  }
  return true;
}

}  // namespace

InvolutiveStructure make_involutive(Graph graph, Permutation bar,
                                    const AutomorphismSet& auts) {
  if (bar.size() != graph.order()) {
    throw ParamError("make_involutive: bar size mismatch");
  }
  if (!bar.is_involution() || bar.is_identity()) {
    throw ParamError("make_involutive: bar must be a nontrivial involution");
  }
  if (!bar.fixed_points().empty()) {
    throw ParamError("make_involutive: bar must be fixed-point-free");
  }
  if (!commutes_with_all(bar, auts)) {
    throw ParamError("make_involutive: bar must commute with Aut(H)");
  }
  return InvolutiveStructure{std::move(graph), std::move(bar)};
}

std::optional<InvolutiveStructure> detect_involutive(const Graph& g,
                                                     int vertex_cap) {
  if (g.order() % 2 != 0) return std::nullopt;
  AutomorphismSet auts = automorphisms(g, vertex_cap);
  for (const auto& sigma : auts.elements()) {
    if (sigma.is_identity() || !sigma.is_involution()) continue;
    if (!sigma.fixed_points().empty()) continue;
    if (commutes_with_all(sigma, auts)) {
      return InvolutiveStructure{g, sigma};
    }
  }
  return std::nullopt;
}

int BlockList::total() const {
  int t = 0;
  for (int c : counts_) t += c;
  return t;
}

std::string BlockList::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts_[i]);
  }
  out += ')';
  return out;
}

std::vector<BlockList> all_block_lists(int blocks, int d) {
  if (blocks < 0 || d < 1) throw ParamError("all_block_lists: bad arguments");
  int parts = d / 2 + 1;
  std::vector<BlockList> out;
  std::vector<int> cur(parts, 0);
  // Lexicographic enumeration of weak compositions of `blocks`.
  auto rec = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == parts - 1) {
      cur[idx] = remaining;
      out.emplace_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[idx] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  rec(rec, 0, blocks);
  return out;
}

int block_type(int a, int b, int d) {
  if (d < 1) throw ParamError("block_type: palette size must be >= 1");
  if (a < 1 || a > d || b < 1 || b > d) {
    throw ParamError("block_type: colors must lie in 1..d");
  }
  int diff = ((a - b) % d + d) % d;
  if (diff <= d / 2) return diff;
  return d - diff;
}

BlockList block_list(const InvolutiveStructure& s, const Coloring& c, int d) {
  int n = s.graph.order();
  if (static_cast<int>(c.size()) != n) {
    throw ParamError("block_list: coloring size mismatch");
  }
  std::vector<int> counts(d / 2 + 1, 0);
  for (int v = 0; v < n; ++v) {
    int w = s.bar(v);
    if (v < w) {
      if (c[v] == 0 || c[w] == 0) {
        throw ParamError("block_list: coloring must be total");
      }
      ++counts[block_type(c[v], c[w], d)];
    }
  }
  return BlockList(std::move(counts));
}

MetaColor meta_color(const std::vector<std::uint8_t>& fiber_colors, int d) {
  MetaColor mc;
  mc.counts.assign(d, 0);
  for (auto col : fiber_colors) {
    if (col < 1 || col > d) {
      throw ParamError("meta_color: color out of palette");
    }
    ++mc.counts[col - 1];
  }
  return mc;
}

int parity_label(const std::vector<std::uint8_t>& fiber_colors) {
  int ones = 0;
  for (auto col : fiber_colors) {
    if (col == 0) throw ParamError("parity_label: fiber must be fully colored");
    if (col == 1) ++ones;
  }
  return (ones % 2 == 1) ? 1 : 2;
}

std::uint64_t weak_composition_count(int blocks, int d) {
  if (blocks < 0 || d < 1) {
    throw ParamError("weak_composition_count: bad arguments");
  }
  int k = d / 2;  // choose(blocks + k, k)
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(blocks + i) / static_cast<unsigned>(i);
    if (acc > UINT64_MAX) {
      throw ParamError("weak_composition_count: overflow");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace dgame
