#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "bfly/graph.hpp"

namespace bfly::test {

inline bipartite_graph random_graph(std::mt19937_64& rng, std::size_t nl, std::size_t nr,
                                    double density) {
  std::bernoulli_distribution coin(density);
  std::vector<edge> edges;
  for (node_id u = 0; u < nl; ++u)
    for (node_id a = 0; a < nr; ++a)
      if (coin(rng)) edges.push_back({u, a});
  return bipartite_graph::build(nl, nr, edges);
}

inline bipartite_graph random_graph(std::mt19937_64& rng, std::size_t max_side = 12) {
  std::uniform_int_distribution<std::size_t> side(1, max_side);
  std::uniform_real_distribution<double> dens(0.1, 0.9);
  const auto nl = side(rng);
  const auto nr = side(rng);
  return random_graph(rng, nl, nr, dens(rng));
}

/// Every right node gets degree 0, 1 or 2.
inline bipartite_graph random_right_degree_two(std::mt19937_64& rng, std::size_t nl,
                                               std::size_t nr) {
  std::uniform_int_distribution<int> deg(0, 2);
  std::uniform_int_distribution<node_id> pick(0, static_cast<node_id>(nl - 1));
  std::vector<edge> edges;
  for (node_id a = 0; a < nr; ++a) {
    const int d = std::min<int>(deg(rng), static_cast<int>(nl));
    std::set<node_id> ends;
    while (static_cast<int>(ends.size()) < d) ends.insert(pick(rng));
    for (auto u : ends) edges.push_back({u, a});
  }
  return bipartite_graph::build(nl, nr, edges);
}

inline bipartite_graph random_relabel(std::mt19937_64& rng, const bipartite_graph& g) {
  std::vector<node_id> lp(g.left_count()), rp(g.right_count());
  std::iota(lp.begin(), lp.end(), 0);
  std::iota(rp.begin(), rp.end(), 0);
  std::shuffle(lp.begin(), lp.end(), rng);
  std::shuffle(rp.begin(), rp.end(), rng);
  std::vector<edge> edges;
  for (const edge& e : g.edges()) edges.push_back({lp[e.left], rp[e.right]});
  return bipartite_graph::build(g.left_count(), g.right_count(), edges);
}

/// Butterflies through both u and v, by scanning every right pair.
inline std::uint64_t brute_pair_butterflies(const bipartite_graph& g, node_id u, node_id v) {
  std::uint64_t n = 0;
  for (node_id a = 0; a < g.right_count(); ++a)
    for (node_id b = a + 1; b < g.right_count(); ++b)
      n += g.has_edge(u, a) && g.has_edge(u, b) && g.has_edge(v, a) && g.has_edge(v, b);
  return n;
}

/// Butterflies through left node u.
inline std::uint64_t brute_node_butterflies(const bipartite_graph& g, node_id u) {
  std::uint64_t n = 0;
  for (node_id v = 0; v < g.left_count(); ++v)
    if (v != u) n += brute_pair_butterflies(g, u, v);
  return n;
}

/// Simple paths with three edges, by walking all vertex sequences.
inline std::uint64_t brute_caterpillars(const bipartite_graph& g) {
  // Directed walks l0-r0-l1-r1 and r0-l0-r1-l1 with distinct vertices; each
  // undirected path appears once in each of two orientations overall.
  std::uint64_t directed = 0;
  for (node_id u = 0; u < g.left_count(); ++u)
    for (node_id a : g.left_neighbors(u))
      for (node_id v : g.right_neighbors(a)) {
        if (v == u) continue;
        for (node_id b : g.left_neighbors(v))
          if (b != a) ++directed;
      }
  for (node_id a = 0; a < g.right_count(); ++a)
    for (node_id u : g.right_neighbors(a))
      for (node_id b : g.left_neighbors(u)) {
        if (b == a) continue;
        for (node_id v : g.right_neighbors(b))
          if (v != u) ++directed;
      }
  return directed / 2;
}

/// Number of 0/1 matrices with the given row and column sums, filled cell by
/// cell in row-major order.
inline std::uint64_t count_margin_matrices(const std::vector<std::size_t>& rows,
                                           const std::vector<std::size_t>& cols) {
  const std::size_t nr = rows.size();
  const std::size_t nc = cols.size();
  std::vector<std::size_t> row_left = rows;
  std::vector<std::size_t> col_left = cols;
  std::function<std::uint64_t(std::size_t)> rec = [&](std::size_t cell) -> std::uint64_t {
    if (cell == nr * nc) {
      return std::all_of(col_left.begin(), col_left.end(), [](auto c) { return c == 0; }) ? 1 : 0;
    }
    const std::size_t i = cell / nc;
    const std::size_t j = cell % nc;
    // a row must be complete when leaving its last cell
    const std::size_t cells_after_in_row = nc - 1 - j;
    std::uint64_t total = 0;
    for (int bit = 0; bit <= 1; ++bit) {
      if (bit == 1 && (row_left[i] == 0 || col_left[j] == 0)) continue;
      row_left[i] -= bit;
      col_left[j] -= bit;
      if (row_left[i] <= cells_after_in_row && col_left[j] <= nr - 1 - i) total += rec(cell + 1);
      row_left[i] += bit;
      col_left[j] += bit;
    }
    return total;
  };
  if (nr == 0 || nc == 0) {
    const bool zero = std::all_of(rows.begin(), rows.end(), [](auto r) { return r == 0; }) &&
                      std::all_of(cols.begin(), cols.end(), [](auto c) { return c == 0; });
    return zero ? 1 : 0;
  }
  return rec(0);
}

/// Side-respecting isomorphism by trying every pair of permutations.
inline bool brute_isomorphic(const bipartite_graph& a, const bipartite_graph& b) {
  if (a.left_count() != b.left_count() || a.right_count() != b.right_count() ||
      a.edge_count() != b.edge_count()) {
    return false;
  }
  std::vector<node_id> lp(a.left_count()), rp(a.right_count());
  std::iota(lp.begin(), lp.end(), 0);
  do {
    std::iota(rp.begin(), rp.end(), 0);
    do {
      bool ok = true;
      for (const edge& e : a.edges()) {
        if (!b.has_edge(lp[e.left], rp[e.right])) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    } while (std::next_permutation(rp.begin(), rp.end()));
  } while (std::next_permutation(lp.begin(), lp.end()));
  return false;
}

/// Node x_i is left id i-1 and y_j right id j-1, as in the construction.
inline edge xy(std::size_t x, std::size_t y) {
  return {static_cast<node_id>(x - 1), static_cast<node_id>(y - 1)};
}

/// A β=10 graph carrying the four-edge swap
/// [(x1,y5), (x5,y1), (x6,y10), (x10,y6)] with sigma = (3 4 1 2): the two
/// butterflies {x1,x5,y1,y5} and {x6,x10,y6,y10} are traded for
/// {x1,x10,y1,y10} and {x5,x6,y5,y6}. The remaining eight butterflies sit on
/// a K_{2,4} and two disjoint K_{2,2}.
inline bipartite_graph four_swap_fixture() {
  std::vector<edge> e = {
      xy(1, 1),  xy(1, 5),  xy(5, 1),  xy(5, 5),             // {x1,x5,y1,y5}
      xy(6, 6),  xy(6, 10), xy(10, 6), xy(10, 10),           // {x6,x10,y6,y10}
      xy(2, 2),  xy(2, 3),  xy(2, 4),  xy(2, 7),             // K_{2,4} on x2,x3
      xy(3, 2),  xy(3, 3),  xy(3, 4),  xy(3, 7),
      xy(4, 8),  xy(4, 9),  xy(7, 8),  xy(7, 9),             // K_{2,2} on x4,x7
      xy(8, 11), xy(8, 12), xy(9, 11), xy(9, 12),            // K_{2,2} on x8,x9
  };
  return bipartite_graph::build(10, 12, e);
}

}  // namespace bfly::test
