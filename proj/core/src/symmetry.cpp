#include "dgame/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dgame/errors.hpp"

namespace dgame {

Permutation::Permutation(std::vector<int> image) : img_(std::move(image)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v]) {
      throw ParamError("Permutation: image is not a bijection on 0..n-1");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (size() != inner.size()) {
    throw ParamError("Permutation::compose: size mismatch");
  }
  std::vector<int> img(img_.size());
  for (int v = 0; v < size(); ++v) img[v] = img_[inner.img_[v]];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(img_.size());
  for (int v = 0; v < size(); ++v) img[img_[v]] = v;
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (int v = 0; v < size(); ++v)
    if (img_[v] != v) return false;
  return true;
}

bool Permutation::is_involution() const {
  for (int v = 0; v < size(); ++v)
    if (img_[img_[v]] != v) return false;
  return true;
}

std::vector<int> Permutation::fixed_points() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (img_[v] == v) out.push_back(v);
  return out;
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  std::vector<char> done(img_.size(), 0);
  for (int v = 0; v < size(); ++v) {
    if (done[v] || img_[v] == v) continue;
    out += '(';
    int w = v;
    bool first = true;
    while (!done[w]) {
      done[w] = 1;
      if (!first) out += ' ';
      out += std::to_string(w);
      first = false;
      w = img_[w];
    }
    out += ')';
  }
  if (out.empty()) out = "id";
  return out;
}

AutomorphismSet::AutomorphismSet(int n, std::vector<Permutation> elements)
    : n_(n), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  inverses_.reserve(elements_.size());
  for (const auto& p : elements_) inverses_.push_back(p.inverse().image());
}

namespace {

// Iterated degree/neighborhood refinement (1-dimensional WL): vertices that
// end up in different classes cannot be mapped onto each other.
std::vector<int> refine_classes(const Graph& g) {
  int n = g.order();
  std::vector<int> cls(n);
  for (int v = 0; v < n; ++v) cls[v] = g.degree(v);
  // Re-index to dense ids.
  for (;;) {
    std::map<std::pair<int, std::vector<int>>, int> sig_ids;
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> nb;
      nb.reserve(g.degree(v));
      for (int w : g.neighbors(v)) nb.push_back(cls[w]);
      std::sort(nb.begin(), nb.end());
      auto key = std::make_pair(cls[v], std::move(nb));
      auto [it, _] = sig_ids.emplace(std::move(key),
                                     static_cast<int>(sig_ids.size()));
      next[v] = it->second;
    }
    if (next == cls) return cls;
    cls = std::move(next);
  }
}

struct AutSearch {
  const Graph& g;
  const std::vector<int>& cls;
  int n;
  std::vector<int> img;
  std::vector<char> used;
  std::vector<Permutation>& out;

  void dfs(int v) {
    if (v == n) {
      out.emplace_back(img);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || cls[w] != cls[v]) continue;
      bool ok = true;
      for (int u = 0; u < v; ++u) {
        if (g.adjacent(u, v) != g.adjacent(img[u], w)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      img[v] = w;
      used[w] = 1;
      dfs(v + 1);
      used[w] = 0;
    }
  }
};

}  // namespace

AutomorphismSet automorphisms(const Graph& g, int vertex_cap) {
  if (g.order() > vertex_cap) {
    throw ResourceError(
        "automorphisms: graph order " + std::to_string(g.order()) +
            " exceeds the enumeration cap " + std::to_string(vertex_cap) +
            " (raise --aut-cap)",
        0, 0.0);
  }
  std::vector<int> cls = refine_classes(g);
  std::vector<Permutation> elems;
  AutSearch search{g, cls, g.order(), std::vector<int>(g.order(), -1),
                   std::vector<char>(g.order(), 0), elems};
  search.dfs(0);
  return AutomorphismSet(g.order(), std::move(elems));
}

namespace {

void check_total(const Graph& g, const Coloring& c, const char* who) {
  if (static_cast<int>(c.size()) != g.order()) {
    throw ParamError(std::string(who) + ": coloring size mismatch");
  }
  for (auto col : c) {
    if (col == 0) {
      throw ParamError(std::string(who) +
                       ": partial coloring where a total one is required");
    }
  }
}

}  // namespace

AutomorphismSet color_stabilizer(const Graph& g, const AutomorphismSet& auts,
                                 const Coloring& c) {
  check_total(g, c, "color_stabilizer");
  std::vector<Permutation> keep;
  for (const auto& sigma : auts.elements()) {
    bool preserves = true;
    for (int v = 0; v < g.order(); ++v) {
      if (c[v] != c[sigma(v)]) {
        preserves = false;
        break;
      }
    }
    if (preserves) keep.push_back(sigma);
  }
  return AutomorphismSet(g.order(), std::move(keep));
}

AutomorphismSet color_stabilizer(const Graph& g, const Coloring& c) {
  return color_stabilizer(g, automorphisms(g), c);
}

bool is_distinguishing(const Graph& g, const AutomorphismSet& auts,
                       const Coloring& c) {
  check_total(g, c, "is_distinguishing");
  for (const auto& sigma : auts.elements()) {
    if (sigma.is_identity()) continue;
    bool preserves = true;
    for (int v = 0; v < g.order(); ++v) {
      if (c[v] != c[sigma(v)]) {
        preserves = false;
        break;
      }
    }
    if (preserves) return false;
  }
  return true;
}

bool is_distinguishing(const Graph& g, const Coloring& c) {
  return is_distinguishing(g, automorphisms(g), c);
}

std::optional<std::pair<Permutation, Permutation>> product_decompose(
    const Graph& g, const Permutation& sigma) {
  if (!g.is_product() || g.factors().size() != 2) {
    throw ParamError("product_decompose: needs a binary product graph");
  }
  if (sigma.size() != g.order()) {
    throw ParamError("product_decompose: permutation size mismatch");
  }
  int nh = g.factors()[0].order();
  int nf = g.factors()[1].order();

  // psi from the first column, phi from the first row, then verify globally.
  std::vector<int> psi(nh), phi(nf);
  for (int u = 0; u < nh; ++u) psi[u] = g.coord(sigma(g.vertex_at({u, 0})), 0);
  for (int v = 0; v < nf; ++v) phi[v] = g.coord(sigma(g.vertex_at({0, v})), 1);

  std::vector<char> seen_psi(nh, 0), seen_phi(nf, 0);
  for (int u : psi) {
    if (seen_psi[u]) return std::nullopt;
    seen_psi[u] = 1;
  }
  for (int v : phi) {
    if (seen_phi[v]) return std::nullopt;
    seen_phi[v] = 1;
  }
  for (int u = 0; u < nh; ++u) {
    for (int v = 0; v < nf; ++v) {
      if (sigma(g.vertex_at({u, v})) != g.vertex_at({psi[u], phi[v]})) {
        return std::nullopt;
      }
    }
  }
  return std::make_pair(Permutation(std::move(psi)),
                        Permutation(std::move(phi)));
}

bool relatively_prime(const Graph& h, const Graph& f, int vertex_cap) {
  if (!h.connected() || !f.connected()) {
    throw ParamError("relatively_prime: factors must be connected");
  }
  Graph p = cartesian_product({h, f});
  if (p.order() > vertex_cap) {
    throw ResourceError("relatively_prime: product order " +
                            std::to_string(p.order()) +
                            " exceeds the enumeration cap",
                        0, 0.0);
  }
  AutomorphismSet ap = automorphisms(p, vertex_cap);
  AutomorphismSet ah = automorphisms(h, vertex_cap);
  AutomorphismSet af = automorphisms(f, vertex_cap);
  if (ap.order() != ah.order() * af.order()) return false;
  for (const auto& sigma : ap.elements()) {
    if (!product_decompose(p, sigma)) return false;
  }
  return true;
}

std::string canonical_key(const AutomorphismSet& auts, const Coloring& partial,
                          bool normalize_palette) {
  int n = auts.vertex_count();
  if (static_cast<int>(partial.size()) != n) {
    throw ParamError("canonical_key: coloring size mismatch");
  }
  std::string best;
  best.resize(n);
  std::string cand;
  cand.resize(n);
  // relabel[color] is per-candidate; epoch stamping avoids clearing.
  std::vector<int> relabel(256, -1);
  std::vector<int> stamp(256, -1);

  for (std::size_t i = 0; i < auts.order(); ++i) {
    const std::vector<int>& inv = auts.inverse_image(i);
    int next_color = 1;
    bool better = i == 0;
    bool worse = false;
    for (int v = 0; v < n; ++v) {
      int raw = partial[inv[v]];
      char out;
      if (raw == 0) {
        out = 0;
      } else if (normalize_palette) {
        if (stamp[raw] != static_cast<int>(i)) {
          stamp[raw] = static_cast<int>(i);
          relabel[raw] = next_color++;
        }
        out = static_cast<char>(relabel[raw]);
      } else {
        out = static_cast<char>(raw);
      }
      cand[v] = out;
      if (!better) {
        if (out < best[v]) {
          better = true;
        } else if (out > best[v]) {
          worse = true;
          break;
        }
      }
    }
    if (!worse && (better || best.empty())) best = cand;
  }
  return best;
}

bool is_vertex_transitive(const Graph& g, const AutomorphismSet& auts) {
  if (g.order() == 0) return true;
  std::vector<char> orbit(g.order(), 0);
  int count = 0;
  for (const auto& sigma : auts.elements()) {
    int w = sigma(0);
    if (!orbit[w]) {
      orbit[w] = 1;
      ++count;
    }
  }
  return count == g.order();
}

std::optional<Permutation> first_nontrivial_involution(
    const AutomorphismSet& auts, bool prefer_fixed_point_free) {
  if (prefer_fixed_point_free) {
    for (const auto& sigma : auts.elements()) {
      if (!sigma.is_identity() && sigma.is_involution() &&
          sigma.fixed_points().empty()) {
        return sigma;
      }
    }
  }
  for (const auto& sigma : auts.elements()) {
    if (!sigma.is_identity() && sigma.is_involution()) return sigma;
  }
  return std::nullopt;
}

}  // namespace dgame
