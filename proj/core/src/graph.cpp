#include "dgame/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <queue>
#include <sstream>

#include "dgame/errors.hpp"

namespace dgame {

namespace {

void check_vertex(const char* who, int v, int n) {
  if (v < 0 || v >= n) {
    throw ParamError(std::string(who) + ": vertex " + std::to_string(v) +
                     " out of range 0.." + std::to_string(n - 1));
  }
}

}  // namespace

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges,
                        std::string label) {
  if (n < 0) throw ParamError("from_edges: negative vertex count");
  Graph g;
  g.n_ = n;
  g.label_ = std::move(label);
  for (auto& [u, v] : edges) {
    check_vertex("from_edges", u, n);
    check_vertex("from_edges", v, n);
    if (u == v) {
      throw ParamError("from_edges: loop at vertex " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw ParamError("from_edges: duplicate edge");
  }
  g.edges_ = std::move(edges);
  g.adj_.assign(n, {});
  g.matrix_.assign(static_cast<std::size_t>(n) * n, 0);
  for (auto [u, v] : g.edges_) {
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
    g.matrix_[static_cast<std::size_t>(u) * n + v] = 1;
    g.matrix_[static_cast<std::size_t>(v) * n + u] = 1;
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  return g;
}

bool Graph::adjacent(int u, int v) const {
  check_vertex("adjacent", u, n_);
  check_vertex("adjacent", v, n_);
  return matrix_[static_cast<std::size_t>(u) * n_ + v] != 0;
}

const std::vector<int>& Graph::neighbors(int v) const {
  check_vertex("neighbors", v, n_);
  return adj_[v];
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  return reached == n_;
}

std::vector<int> Graph::coords(int v) const {
  if (!is_product()) throw ParamError("coords: not a product graph");
  check_vertex("coords", v, n_);
  std::vector<int> c(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    c[i] = (v / strides_[i]) % factors_[i].order();
  }
  return c;
}

int Graph::coord(int v, int axis) const {
  if (!is_product()) throw ParamError("coord: not a product graph");
  if (axis < 0 || axis >= static_cast<int>(factors_.size())) {
    throw ParamError("coord: bad axis " + std::to_string(axis));
  }
  return (v / strides_[axis]) % factors_[axis].order();
}

int Graph::vertex_at(const std::vector<int>& coords) const {
  if (!is_product()) throw ParamError("vertex_at: not a product graph");
  if (coords.size() != factors_.size()) {
    throw ParamError("vertex_at: coordinate arity mismatch");
  }
  int v = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    check_vertex("vertex_at", coords[i], factors_[i].order());
    v += coords[i] * strides_[i];
  }
  return v;
}

std::optional<Family> family_from_letter(char c) {
  switch (c) {
    case 'C': return Family::Cycle;
    case 'P': return Family::Path;
    case 'K': return Family::Complete;
    case 'Q': return Family::Hypercube;
    default: return std::nullopt;
  }
}

Graph generate(Family family, int size) {
  std::vector<std::pair<int, int>> edges;
  switch (family) {
    case Family::Cycle: {
      if (size < 3) throw ParamError("cycle: size must be >= 3");
      for (int i = 0; i < size; ++i) edges.emplace_back(i, (i + 1) % size);
      return Graph::from_edges(size, std::move(edges),
                               "C" + std::to_string(size));
    }
    case Family::Path: {
      if (size < 2) throw ParamError("path: size must be >= 2");
      for (int i = 0; i + 1 < size; ++i) edges.emplace_back(i, i + 1);
      return Graph::from_edges(size, std::move(edges),
                               "P" + std::to_string(size));
    }
    case Family::Complete: {
      if (size < 2) throw ParamError("complete: size must be >= 2");
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j) edges.emplace_back(i, j);
      return Graph::from_edges(size, std::move(edges),
                               "K" + std::to_string(size));
    }
    case Family::Hypercube: {
      if (size < 1) throw ParamError("hypercube: dimension must be >= 1");
      if (size > 20) throw ParamError("hypercube: dimension too large");
      int n = 1 << size;
      for (int v = 0; v < n; ++v) {
        for (int b = 0; b < size; ++b) {
          int w = v ^ (1 << b);
          if (v < w) edges.emplace_back(v, w);
        }
      }
      return Graph::from_edges(n, std::move(edges),
                               "Q" + std::to_string(size));
    }
  }
  throw InternalError("generate: unknown family");
}

Graph cartesian_product(const std::vector<Graph>& factors) {
  if (factors.size() < 2) {
    throw ParamError("cartesian_product: needs at least 2 factors");
  }
  long long total = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Graph& f = factors[i];
    if (f.order() < 2) {
      throw ParamError("cartesian_product: factor " + std::to_string(i) +
                       " is trivial (needs >= 2 vertices)");
    }
    if (!f.connected()) {
      throw ParamError("cartesian_product: factor " + std::to_string(i) +
                       " is disconnected");
    }
    total *= f.order();
    if (total > 1'000'000) {
      throw ParamError("cartesian_product: product order too large");
    }
  }
  int k = static_cast<int>(factors.size());
  int n = static_cast<int>(total);

  std::vector<int> strides(k);
  int s = 1;
  for (int i = k - 1; i >= 0; --i) {
    strides[i] = s;
    s *= factors[i].order();
  }

  // Edges: fix all coordinates but one and copy that factor's edges.
  std::vector<std::pair<int, int>> edges;
  for (int axis = 0; axis < k; ++axis) {
    int co_count = n / factors[axis].order();
    for (int rank = 0; rank < co_count; ++rank) {
      // Decode the rank into the base vertex id with coordinate `axis` = 0.
      int base = 0;
      int rest = rank;
      for (int i = k - 1; i >= 0; --i) {
        if (i == axis) continue;
        int ni = factors[i].order();
        base += (rest % ni) * strides[i];
        rest /= ni;
      }
      for (auto [a, b] : factors[axis].edges()) {
        edges.emplace_back(base + a * strides[axis],
                           base + b * strides[axis]);
      }
    }
  }

  std::string label;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) label += 'x';
    label += factors[i].label().empty() ? "G" : factors[i].label();
  }

  Graph g = Graph::from_edges(n, std::move(edges), label);
  g.factors_ = factors;
  g.strides_ = std::move(strides);
  return g;
}

std::vector<Fiber> fibers(const Graph& product, int axis) {
  if (!product.is_product()) {
    throw ParamError("fibers: not a product graph");
  }
  int k = static_cast<int>(product.factors().size());
  if (axis < 0 || axis >= k) {
    throw ParamError("fibers: axis " + std::to_string(axis) +
                     " out of range 0.." + std::to_string(k - 1));
  }
  int fiber_size = product.factors()[axis].order();
  int count = product.order() / fiber_size;

  std::vector<Fiber> out;
  out.reserve(count);
  for (int rank = 0; rank < count; ++rank) {
    Fiber f;
    f.axis = axis;
    f.index = rank;
    int rest = rank;
    std::vector<int> coords(k, 0);
    for (int i = k - 1; i >= 0; --i) {
      if (i == axis) continue;
      int ni = product.factors()[i].order();
      coords[i] = rest % ni;
      rest /= ni;
    }
    for (int i = 0; i < k; ++i) {
      if (i != axis) f.cocoord.push_back(coords[i]);
    }
    f.vertices.reserve(fiber_size);
    for (int u = 0; u < fiber_size; ++u) {
      coords[axis] = u;
      f.vertices.push_back(product.vertex_at(coords));
    }
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

[[noreturn]] void syntax_error(std::string_view text, std::size_t pos,
                               const std::string& what) {
  throw ParamError("parse_graph: " + what + " at position " +
                   std::to_string(pos) + " in \"" + std::string(text) + "\"");
}

Graph parse_edge_list(std::string_view text) {
  std::string body(text.substr(text.find(':') + 1));
  std::istringstream in(body);
  std::vector<std::pair<int, int>> edges;
  std::string tok;
  int max_vertex = -1;
  while (in >> tok) {
    auto dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size()) {
      throw ParamError("parse_graph: bad edge token \"" + tok +
                       "\" (want u-v)");
    }
    int u = 0, v = 0;
    auto r1 = std::from_chars(tok.data(), tok.data() + dash, u);
    auto r2 =
        std::from_chars(tok.data() + dash + 1, tok.data() + tok.size(), v);
    if (r1.ec != std::errc{} || r1.ptr != tok.data() + dash ||
        r2.ec != std::errc{} || r2.ptr != tok.data() + tok.size()) {
      throw ParamError("parse_graph: bad edge token \"" + tok + "\"");
    }
    max_vertex = std::max({max_vertex, u, v});
    edges.emplace_back(u, v);
  }
  return Graph::from_edges(max_vertex + 1, std::move(edges));
}

}  // namespace

Graph parse_graph(std::string_view text) {
  // Strip surrounding whitespace.
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view body = text.substr(b, e - b);
  if (body.empty()) syntax_error(text, 0, "empty graph expression");

  if (body.starts_with("edges:")) return parse_edge_list(body);

  std::vector<Graph> factors;
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() &&
           std::isspace(static_cast<unsigned char>(body[i])))
      ++i;
    if (i >= body.size()) syntax_error(text, b + i, "missing factor");
    auto fam = family_from_letter(body[i]);
    if (!fam) {
      syntax_error(text, b + i,
                   std::string("expected family letter C/P/K/Q, got '") +
                       body[i] + "'");
    }
    std::size_t num_start = ++i;
    while (i < body.size() &&
           std::isdigit(static_cast<unsigned char>(body[i])))
      ++i;
    if (i == num_start) syntax_error(text, b + i, "missing family size");
    int size = 0;
    std::from_chars(body.data() + num_start, body.data() + i, size);
    factors.push_back(generate(*fam, size));

    while (i < body.size() &&
           std::isspace(static_cast<unsigned char>(body[i])))
      ++i;
    if (i >= body.size()) break;
    if (body[i] != 'x') {
      syntax_error(text, b + i,
                   std::string("expected 'x' between factors, got '") +
                       body[i] + "'");
    }
    ++i;
  }
  if (factors.size() == 1) return factors[0];
  return cartesian_product(factors);
}

std::string render_edge_list(const Graph& g) {
  std::string out = "edges:";
  for (auto [u, v] : g.edges()) {
    out += ' ';
    out += std::to_string(u);
    out += '-';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace dgame
