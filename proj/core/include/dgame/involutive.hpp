#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dgame/graph.hpp"
#include "dgame/symmetry.hpp"

namespace dgame {

// A graph together with a fixed-point-free involution `bar` that commutes
// with every automorphism.  {u, bar(u)} pairs are the blocks.
struct InvolutiveStructure {
  Graph graph;
  Permutation bar;

  int block_count() const { return graph.order() / 2; }
  int partner(int v) const { return bar(v); }
};

// Validates bar o bar == id, no fixed point, and commutation with all of
// Aut(graph); throws ParamError otherwise.
InvolutiveStructure make_involutive(Graph graph, Permutation bar,
                                    const AutomorphismSet& auts);

// Searches Aut(g) in enumeration order for a central fixed-point-free
// involution; returns the first one found.
std::optional<InvolutiveStructure> detect_involutive(
    const Graph& g, int vertex_cap = kDefaultAutCap);

// Census (n_0, ..., n_{floor(d/2)}) of blocks by type.
class BlockList {
 public:
  BlockList() = default;
  explicit BlockList(std::vector<int> counts) : counts_(std::move(counts)) {}

  const std::vector<int>& counts() const { return counts_; }
  int total() const;

  bool operator==(const BlockList&) const = default;
  auto operator<=>(const BlockList&) const = default;

  std::string to_string() const;  // "(3,1)"

 private:
  std::vector<int> counts_;
};

// All block-lists with the given block total, in lexicographic order.
std::vector<BlockList> all_block_lists(int blocks, int d);

// Palette-distance class of the two colors of a block; colors are 1-based.
int block_type(int a, int b, int d);

BlockList block_list(const InvolutiveStructure& s, const Coloring& c, int d);

// Per-fiber color census (c_1, ..., c_d).
struct MetaColor {
  std::vector<int> counts;
  bool operator==(const MetaColor&) const = default;
  auto operator<=>(const MetaColor&) const = default;
};

MetaColor meta_color(const std::vector<std::uint8_t>& fiber_colors, int d);

// 1 if the fiber has an odd number of vertices colored 1, else 2.
int parity_label(const std::vector<std::uint8_t>& fiber_colors);

// binomial(blocks + floor(d/2), floor(d/2)): the number of possible
// block-lists over `blocks` blocks with palette size d.
std::uint64_t weak_composition_count(int blocks, int d);

}  // namespace dgame
