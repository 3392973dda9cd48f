#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgame/graph.hpp"

namespace dgame {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> image);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int v) const { return img_[v]; }
  const std::vector<int>& image() const { return img_; }

  // (a.compose(b))(v) == a(b(v))
  Permutation compose(const Permutation& inner) const;
  Permutation inverse() const;

  bool is_identity() const;
  bool is_involution() const;  // sigma o sigma == id (identity included)
  std::vector<int> fixed_points() const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

  std::string to_cycle_string() const;

 private:
  std::vector<int> img_;
};

// The full automorphism group, enumerated explicitly (desk scale).
class AutomorphismSet {
 public:
  AutomorphismSet() = default;
  AutomorphismSet(int n, std::vector<Permutation> elements);

  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  // Cached inverse image arrays, aligned with elements().
  const std::vector<int>& inverse_image(std::size_t i) const {
    return inverses_[i];
  }
  int vertex_count() const { return n_; }

 private:
  int n_ = 0;
  std::vector<Permutation> elements_;
  std::vector<std::vector<int>> inverses_;
};

inline constexpr int kDefaultAutCap = 64;

// Complete enumeration of adjacency-preserving bijections by backtracking
// over a degree/neighborhood-refined partition.  Elements come out in
// lexicographic image order.  Throws ResourceError when order(g) > vertex_cap.
AutomorphismSet automorphisms(const Graph& g, int vertex_cap = kDefaultAutCap);

// { sigma in Aut : c == c o sigma }.  Requires a total coloring.
AutomorphismSet color_stabilizer(const Graph& g, const AutomorphismSet& auts,
                                 const Coloring& c);
AutomorphismSet color_stabilizer(const Graph& g, const Coloring& c);

bool is_distinguishing(const Graph& g, const AutomorphismSet& auts,
                       const Coloring& c);
bool is_distinguishing(const Graph& g, const Coloring& c);

// For a binary product: splits sigma into (psi, phi) with
// sigma((u,v)) = (psi(u), phi(v)) when sigma maps fibers to fibers.
std::optional<std::pair<Permutation, Permutation>> product_decompose(
    const Graph& g, const Permutation& sigma);

// Desk-scale test: |Aut(h box f)| == |Aut(h)| * |Aut(f)| and every product
// automorphism decomposes.
bool relatively_prime(const Graph& h, const Graph& f,
                      int vertex_cap = kDefaultAutCap);

// Exact canonical form of a partial coloring: minimum over the automorphism
// group of the vertex-relabeled color sequence, with colors renamed by first
// occurrence when normalize_palette is set.  Equal keys iff the states are
// equivalent under vertex symmetry (and palette permutation).
std::string canonical_key(const AutomorphismSet& auts, const Coloring& partial,
                          bool normalize_palette = true);

bool is_vertex_transitive(const Graph& g, const AutomorphismSet& auts);

// First nontrivial involution in enumeration order; fixed-point-free ones are
// preferred when present.
std::optional<Permutation> first_nontrivial_involution(
    const AutomorphismSet& auts, bool prefer_fixed_point_free = true);

}  // namespace dgame
