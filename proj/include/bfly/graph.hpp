#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bfly/error.hpp"

namespace bfly {

using node_id = std::uint32_t;

struct edge {
  node_id left = 0;
  node_id right = 0;

  friend auto operator<=>(const edge&, const edge&) = default;
};

enum class side { left, right };

/// C(k, 2), with C(0,2) = C(1,2) = 0.
constexpr std::uint64_t choose2(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }

struct degree_pair {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;

  friend bool operator==(const degree_pair&, const degree_pair&) = default;
};

/// Labeled simple bipartite graph. Immutable once built; left ids are
/// 0..left_count-1 and right ids 0..right_count-1.
class bipartite_graph {
 public:
  bipartite_graph() = default;

  /// Validating constructor. Throws IdOutOfRange or DuplicateEdge.
  static bipartite_graph build(std::size_t left_count, std::size_t right_count,
                               std::span<const edge> edges) {
    std::vector<edge> sorted(edges.begin(), edges.end());
    for (const edge& e : sorted) {
      if (e.left >= left_count || e.right >= right_count) {
        throw error(errc::id_out_of_range, "edge (" + std::to_string(e.left) + "," +
                                               std::to_string(e.right) + ") outside " +
                                               std::to_string(left_count) + "x" +
                                               std::to_string(right_count));
      }
    }
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      throw error(errc::duplicate_edge, "edge (" + std::to_string(dup->left) + "," +
                                            std::to_string(dup->right) + ") repeated");
    }
    return bipartite_graph(left_count, right_count, std::move(sorted));
  }

  static bipartite_graph build(std::size_t left_count, std::size_t right_count,
                               std::initializer_list<edge> edges) {
    return build(left_count, right_count, std::span<const edge>(edges.begin(), edges.size()));
  }

  /// Trusted constructor for already sorted, duplicate-free, in-range edges.
  static bipartite_graph from_sorted_unchecked(std::size_t left_count, std::size_t right_count,
                                               std::vector<edge> sorted_edges) {
    return bipartite_graph(left_count, right_count, std::move(sorted_edges));
  }

  std::size_t left_count() const noexcept { return left_adj_.size(); }
  std::size_t right_count() const noexcept { return right_adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t count(side s) const noexcept { return s == side::left ? left_count() : right_count(); }

  /// Edges sorted by (left, right).
  std::span<const edge> edges() const noexcept { return edges_; }

  std::span<const node_id> neighbors(side s, node_id v) const {
    return s == side::left ? std::span<const node_id>(left_adj_[v])
                           : std::span<const node_id>(right_adj_[v]);
  }
  std::span<const node_id> left_neighbors(node_id u) const { return left_adj_[u]; }
  std::span<const node_id> right_neighbors(node_id a) const { return right_adj_[a]; }

  std::size_t degree(side s, node_id v) const { return neighbors(s, v).size(); }

  bool has_edge(node_id u, node_id a) const {
    if (u >= left_count() || a >= right_count()) return false;
    const auto& adj = left_adj_[u];
    return std::binary_search(adj.begin(), adj.end(), a);
  }
  bool has_edge(const edge& e) const { return has_edge(e.left, e.right); }

  friend bool operator==(const bipartite_graph& a, const bipartite_graph& b) {
    return a.left_count() == b.left_count() && a.right_count() == b.right_count() &&
           a.edges_ == b.edges_;
  }

 private:
  bipartite_graph(std::size_t left_count, std::size_t right_count, std::vector<edge> sorted)
      : edges_(std::move(sorted)), left_adj_(left_count), right_adj_(right_count) {
    for (const edge& e : edges_) {
      left_adj_[e.left].push_back(e.right);
      right_adj_[e.right].push_back(e.left);
    }
    // left lists are sorted by construction; right lists too, since edges are
    // visited in increasing left id.
  }

  std::vector<edge> edges_;
  std::vector<std::vector<node_id>> left_adj_;
  std::vector<std::vector<node_id>> right_adj_;
};

inline degree_pair degree_sequences(const bipartite_graph& g) {
  degree_pair d;
  d.left.resize(g.left_count());
  d.right.resize(g.right_count());
  for (node_id u = 0; u < g.left_count(); ++u) d.left[u] = g.left_neighbors(u).size();
  for (node_id a = 0; a < g.right_count(); ++a) d.right[a] = g.right_neighbors(a).size();
  return d;
}

/// |N(u) ∩ N(v)| for two distinct nodes on the same side.
inline std::size_t shared_neighbors(const bipartite_graph& g, node_id u, node_id v,
                                    side s = side::left) {
  if (u == v) throw error(errc::same_node, "node " + std::to_string(u) + " paired with itself");
  if (u >= g.count(s) || v >= g.count(s)) {
    throw error(errc::id_out_of_range, "node id outside its side");
  }
  auto nu = g.neighbors(s, u);
  auto nv = g.neighbors(s, v);
  std::size_t shared = 0;
  auto i = nu.begin();
  auto j = nv.begin();
  while (i != nu.end() && j != nv.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return shared;
}

/// Butterflies containing both u and v.
inline std::uint64_t butterflies_pair(const bipartite_graph& g, node_id u, node_id v,
                                      side s = side::left) {
  return choose2(shared_neighbors(g, u, v, s));
}

namespace detail {

// Wedge counts from `u` to every node on the same side: counts[v] = |N(u) ∩ N(v)|.
// `touched` collects the v with a nonzero count so resetting stays local.
inline void wedge_counts(const bipartite_graph& g, side s, node_id u,
                         std::vector<std::uint32_t>& counts, std::vector<node_id>& touched) {
  const side other = s == side::left ? side::right : side::left;
  for (node_id a : g.neighbors(s, u)) {
    for (node_id v : g.neighbors(other, a)) {
      if (v == u) continue;
      if (counts[v]++ == 0) touched.push_back(v);
    }
  }
}

}  // namespace detail

/// Butterflies containing left node u.
inline std::uint64_t butterflies_node(const bipartite_graph& g, node_id u, side s = side::left) {
  if (u >= g.count(s)) throw error(errc::id_out_of_range, "node id outside its side");
  std::vector<std::uint32_t> counts(g.count(s), 0);
  std::vector<node_id> touched;
  detail::wedge_counts(g, s, u, counts, touched);
  std::uint64_t total = 0;
  for (node_id v : touched) total += choose2(counts[v]);
  return total;
}

/// Total butterflies, summing C(shared, 2) over unordered pairs of the
/// smaller side.
inline std::uint64_t butterfly_count(const bipartite_graph& g) {
  const side s = g.left_count() <= g.right_count() ? side::left : side::right;
  const std::size_t n = g.count(s);
  std::vector<std::uint32_t> counts(n, 0);
  std::vector<node_id> touched;
  std::uint64_t total = 0;
  for (node_id u = 0; u < n; ++u) {
    touched.clear();
    detail::wedge_counts(g, s, u, counts, touched);
    for (node_id v : touched) {
      if (v > u) total += choose2(counts[v]);
      counts[v] = 0;
    }
  }
  return total;
}

/// Literal enumeration of {u, v, a, b} with all four cross edges present.
/// Quartic; meant as a reference for small graphs only.
inline std::uint64_t butterfly_count_oracle(const bipartite_graph& g) {
  std::uint64_t total = 0;
  const auto nl = static_cast<node_id>(g.left_count());
  const auto nr = static_cast<node_id>(g.right_count());
  for (node_id u = 0; u < nl; ++u)
    for (node_id v = u + 1; v < nl; ++v)
      for (node_id a = 0; a < nr; ++a)
        for (node_id b = a + 1; b < nr; ++b)
          if (g.has_edge(u, a) && g.has_edge(u, b) && g.has_edge(v, a) && g.has_edge(v, b))
            ++total;
  return total;
}

/// Paths with three edges: every middle edge (u, a) extends to
/// (d(u) - 1)(d(a) - 1) paths.
inline std::uint64_t caterpillar_count(const bipartite_graph& g) {
  std::uint64_t total = 0;
  for (const edge& e : g.edges()) {
    total += static_cast<std::uint64_t>(g.left_neighbors(e.left).size() - 1) *
             (g.right_neighbors(e.right).size() - 1);
  }
  return total;
}

inline std::uint64_t edge_sum(std::span<const std::size_t> degrees) {
  return std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
}

}  // namespace bfly
