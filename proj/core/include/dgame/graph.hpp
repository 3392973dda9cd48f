#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dgame {

// Per-vertex color assignment, 0 = uncolored, colors are 1..d.
using Coloring = std::vector<std::uint8_t>;

enum class Family { Cycle, Path, Complete, Hypercube };

std::optional<Family> family_from_letter(char c);

// Immutable simple graph on vertices 0..n-1.  A graph built by
// cartesian_product additionally carries its factor list; vertex numbering is
// row-major over factor coordinates, so fiber membership is plain arithmetic.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges,
                          std::string label = {});

  int order() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int u, int v) const;
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::string& label() const { return label_; }
  bool connected() const;

  bool is_product() const { return !factors_.empty(); }
  const std::vector<Graph>& factors() const { return factors_; }
  // Decode/encode the row-major vertex numbering of a product.
  std::vector<int> coords(int v) const;
  int coord(int v, int axis) const;
  int vertex_at(const std::vector<int>& coords) const;

  // Structural equality: vertex count and edge set (labels ignored).
  bool operator==(const Graph& o) const {
    return n_ == o.n_ && edges_ == o.edges_;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;  // normalized u < v, sorted
  std::vector<std::vector<int>> adj_;       // sorted neighbor lists
  std::vector<std::uint8_t> matrix_;        // n*n adjacency matrix
  std::string label_;
  std::vector<Graph> factors_;  // empty unless built as a product
  std::vector<int> strides_;    // row-major stride per axis

  friend Graph cartesian_product(const std::vector<Graph>& factors);
};

// One copy of factor `axis` inside a product, at fixed other coordinates.
struct Fiber {
  int axis = 0;
  int index = 0;                // rank among this axis' fibers
  std::vector<int> cocoord;     // the fixed coordinates of the other axes
  std::vector<int> vertices;    // product vertices in factor-vertex order
};

Graph generate(Family family, int size);

// Requires >= 2 factors, each connected with >= 2 vertices.
Graph cartesian_product(const std::vector<Graph>& factors);

std::vector<Fiber> fibers(const Graph& product, int axis);

// Graph DSL: C<n>, P<n>, K<n>, Q<k>, infix `x` for products, or an edge-list
// block introduced by the header token `edges:`.
Graph parse_graph(std::string_view text);

// Canonical edge-list form; parse_graph(render_edge_list(g)) == g.
std::string render_edge_list(const Graph& g);

}  // namespace dgame
