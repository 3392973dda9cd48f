#pragma once

// Test-only oracles, kept independent of the library's production paths.

#include <algorithm>
#include <vector>

#include "dgame/graph.hpp"
#include "dgame/symmetry.hpp"

namespace dgame::testutil {

// Plain backtracking over all adjacency-preserving bijections: no partition
// refinement, no candidate pruning beyond adjacency consistency.
inline void naive_aut_rec(const Graph& g, std::vector<int>& img,
                          std::vector<char>& used, int v,
                          std::vector<std::vector<int>>& out) {
  int n = g.order();
  if (v == n) {
    out.push_back(img);
    return;
  }
  for (int w = 0; w < n; ++w) {
    if (used[w]) continue;
    bool ok = g.degree(v) == g.degree(w);
    for (int u = 0; ok && u < v; ++u) {
      ok = g.adjacent(u, v) == g.adjacent(img[u], w);
    }
    if (!ok) continue;
    img[v] = w;
    used[w] = 1;
    naive_aut_rec(g, img, used, v + 1, out);
    used[w] = 0;
  }
}

inline std::vector<std::vector<int>> naive_automorphisms(const Graph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> img(g.order(), -1);
  std::vector<char> used(g.order(), 0);
  naive_aut_rec(g, img, used, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

// The dihedral group of the standard cycle C_n, constructed arithmetically.
inline std::vector<std::vector<int>> dihedral(int n) {
  std::vector<std::vector<int>> out;
  for (int r = 0; r < n; ++r) {
    std::vector<int> rot(n), refl(n);
    for (int v = 0; v < n; ++v) {
      rot[v] = (v + r) % n;
      refl[v] = ((r - v) % n + n) % n;
    }
    out.push_back(rot);
    out.push_back(refl);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool preserves_coloring(const std::vector<int>& sigma,
                               const Coloring& c) {
  for (std::size_t v = 0; v < sigma.size(); ++v) {
    if (c[v] != c[sigma[v]]) return false;
  }
  return true;
}

inline bool naive_distinguishing(const Graph& g, const Coloring& c) {
  for (const auto& sigma : naive_automorphisms(g)) {
    bool ident = true;
    for (std::size_t v = 0; v < sigma.size(); ++v) ident &= sigma[v] == int(v);
    if (!ident && preserves_coloring(sigma, c)) return false;
  }
  return true;
}

// Full retrograde analysis over all (d+1)^n positions: no memoization, no
// canonical forms, nothing shared with the production solver.  gentle_wins
// decides terminal positions; rascal_first fixes the move order.
template <typename TerminalFn>
bool dp_gentle_wins(int n, int d, bool rascal_first, TerminalFn gentle_wins) {
  std::vector<long long> pw(n + 1, 1);
  for (int i = 1; i <= n; ++i) pw[i] = pw[i - 1] * (d + 1);
  const long long total = pw[n];
  auto digit = [&](long long code, int v) {
    return static_cast<int>((code / pw[v]) % (d + 1));
  };

  std::vector<signed char> value(total, -1);
  std::vector<std::vector<long long>> by_count(n + 1);
  for (long long code = 0; code < total; ++code) {
    int colored = 0;
    for (int v = 0; v < n; ++v) colored += digit(code, v) != 0;
    by_count[colored].push_back(code);
  }
  for (long long code : by_count[n]) {
    Coloring c(n);
    for (int v = 0; v < n; ++v) c[v] = static_cast<std::uint8_t>(digit(code, v));
    value[code] = gentle_wins(c) ? 1 : 0;
  }
  for (int colored = n - 1; colored >= 0; --colored) {
    for (long long code : by_count[colored]) {
      bool gentle_to_move = rascal_first ? colored % 2 == 1 : colored % 2 == 0;
      bool any_gentle = false, any_rascal = false;
      for (int v = 0; v < n; ++v) {
        if (digit(code, v) != 0) continue;
        for (int c = 1; c <= d; ++c) {
          signed char w = value[code + c * pw[v]];
          any_gentle |= w == 1;
          any_rascal |= w == 0;
        }
      }
      value[code] =
          gentle_to_move ? (any_gentle ? 1 : 0) : (any_rascal ? 0 : 1);
    }
  }
  return value[0] == 1;
}

}  // namespace dgame::testutil
