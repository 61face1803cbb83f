#pragma once

// Shared helpers for the test binaries: random graphs and brute-force oracles.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "graphmark/graph.hpp"
#include "graphmark/rng.hpp"

namespace gmtest {

using graphmark::Engine;
using graphmark::GraphMark;
using graphmark::Matrix;

inline GraphMark random_binary_graph(Engine& eng, int n, double p) {
  Matrix a = Matrix::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (graphmark::uniform01(eng) < p) a(s, t) = a(t, s) = 1.0;
    }
  }
  return GraphMark(a);
}

inline GraphMark random_weighted_graph(Engine& eng, int n, double p) {
  Matrix a = Matrix::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (graphmark::uniform01(eng) < p) a(s, t) = a(t, s) = 0.1 + 2.0 * graphmark::uniform01(eng);
    }
  }
  return GraphMark(a);
}

inline GraphMark k3() { return GraphMark::complete(3); }
inline GraphMark p3() { return GraphMark::path(3); }

// Edge list of the graph with the given bitmask over the pairs (s < t) of n
// vertices in row-major order.
inline std::vector<std::pair<int, int>> edges_from_mask(int n, unsigned mask) {
  std::vector<std::pair<int, int>> e;
  int bit = 0;
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t, ++bit) {
      if (mask & (1u << bit)) e.emplace_back(s, t);
    }
  }
  return e;
}

inline int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Number of spanning trees by enumerating every (n-1)-edge subset.
inline long long enumerate_spanning_trees(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n == 1) return 1;
  const int m = static_cast<int>(edges.size());
  long long count = 0;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != n - 1) continue;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    bool acyclic = true;
    for (int k = 0; k < m && acyclic; ++k) {
      if (!(mask & (1u << k))) continue;
      const int a = find_root(parent, edges[k].first);
      const int b = find_root(parent, edges[k].second);
      if (a == b) acyclic = false;
      parent[a] = b;
    }
    if (acyclic) ++count;
  }
  return count;
}

inline bool connected_by_union_find(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [s, t] : edges) parent[find_root(parent, s)] = find_root(parent, t);
  for (int v = 1; v < n; ++v) {
    if (find_root(parent, v) != find_root(parent, 0)) return false;
  }
  return true;
}

// Power series sum_{k=0..terms-1} (eps A - eps^2 D)^k of [I + eps^2 D - eps A]^{-1}.
inline Matrix fbp_series(const GraphMark& g, double eps, int terms = 31) {
  const int n = g.order();
  const Matrix step = eps * g.adjacency() - eps * eps * graphmark::degree_matrix(g);
  Matrix term = Matrix::Identity(n, n);
  Matrix sum = term;
  for (int k = 1; k < terms; ++k) {
    term = term * step;
    sum += term;
  }
  return sum;
}

}  // namespace gmtest
