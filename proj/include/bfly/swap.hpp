#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string_view>
#include <vector>

#include "bfly/graph.hpp"

namespace bfly {

/// A q-edge swap: edge i = (u_i, a_i) of `edges` is replaced by
/// (u_i, a_{sigma[i]}). Valid only when sigma is a derangement.
struct qswap {
  std::vector<edge> edges;
  std::vector<std::uint32_t> sigma;

  std::size_t q() const noexcept { return edges.size(); }

  friend bool operator==(const qswap&, const qswap&) = default;
};

enum class swap_reason {
  valid,
  malformed,  // q < 2, sigma not a permutation of the right size, repeated edges in S
  not_derangement,
  edge_not_present,
  replacement_exists,
  duplicate_replacement,
};

inline std::string_view to_string(swap_reason r) {
  switch (r) {
    case swap_reason::valid: return "Valid";
    case swap_reason::malformed: return "Malformed";
    case swap_reason::not_derangement: return "NotDerangement";
    case swap_reason::edge_not_present: return "EdgeNotPresent";
    case swap_reason::replacement_exists: return "ReplacementExists";
    case swap_reason::duplicate_replacement: return "DuplicateReplacement";
  }
  return "Unknown";
}

struct swap_outcome {
  bipartite_graph graph_after;
  std::int64_t butterfly_delta = 0;
};

inline std::vector<edge> replacement_edges(const qswap& sw) {
  std::vector<edge> out(sw.q());
  for (std::size_t j = 0; j < sw.q(); ++j) out[j] = {sw.edges[j].left, sw.edges[sw.sigma[j]].right};
  return out;
}

inline bool is_derangement(std::span<const std::uint32_t> sigma) {
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i] == i) return false;
  return true;
}

/// Checks a swap against g. Replacement edges must also be pairwise distinct,
/// otherwise the result would lose an edge and change two degrees.
inline swap_reason validate_qbso(const bipartite_graph& g, const qswap& sw) {
  const std::size_t q = sw.q();
  if (q < 2 || sw.sigma.size() != q) return swap_reason::malformed;
  std::vector<bool> seen(q, false);
  for (auto s : sw.sigma) {
    if (s >= q || seen[s]) return swap_reason::malformed;
    seen[s] = true;
  }
  std::vector<edge> removed = sw.edges;
  std::sort(removed.begin(), removed.end());
  if (std::adjacent_find(removed.begin(), removed.end()) != removed.end()) {
    return swap_reason::malformed;
  }
  if (!is_derangement(sw.sigma)) return swap_reason::not_derangement;
  for (const edge& e : sw.edges)
    if (!g.has_edge(e)) return swap_reason::edge_not_present;
  auto added = replacement_edges(sw);
  for (const edge& e : added)
    if (g.has_edge(e)) return swap_reason::replacement_exists;
  std::sort(added.begin(), added.end());
  if (std::adjacent_find(added.begin(), added.end()) != added.end()) {
    return swap_reason::duplicate_replacement;
  }
  return swap_reason::valid;
}

/// The swap that undoes `sw`: replacement edges in the same order with the
/// inverse permutation.
inline qswap reverse_qswap(const qswap& sw) {
  qswap rev;
  rev.edges = replacement_edges(sw);
  rev.sigma.resize(sw.q());
  for (std::uint32_t j = 0; j < sw.q(); ++j) rev.sigma[sw.sigma[j]] = j;
  return rev;
}

namespace detail {

inline bipartite_graph rewire(const bipartite_graph& g, const qswap& sw) {
  std::vector<edge> removed = sw.edges;
  std::sort(removed.begin(), removed.end());
  std::vector<edge> kept;
  kept.reserve(g.edge_count());
  std::set_difference(g.edges().begin(), g.edges().end(), removed.begin(), removed.end(),
                      std::back_inserter(kept));
  auto added = replacement_edges(sw);
  std::sort(added.begin(), added.end());
  std::vector<edge> merged;
  merged.reserve(g.edge_count());
  std::merge(kept.begin(), kept.end(), added.begin(), added.end(), std::back_inserter(merged));
  return bipartite_graph::from_sorted_unchecked(g.left_count(), g.right_count(), std::move(merged));
}

// Sum of C(shared, 2) over unordered left pairs with at least one member in
// `touched`. Pairs away from touched nodes keep their shared sets under a swap.
inline std::uint64_t touched_pair_butterflies(const bipartite_graph& g,
                                              std::span<const node_id> touched) {
  std::vector<bool> in_touched(g.left_count(), false);
  for (node_id u : touched) in_touched[u] = true;
  std::vector<std::uint32_t> counts(g.left_count(), 0);
  std::vector<node_id> hit;
  std::uint64_t total = 0;
  for (node_id u : touched) {
    hit.clear();
    wedge_counts(g, side::left, u, counts, hit);
    for (node_id v : hit) {
      if (!in_touched[v] || v > u) total += choose2(counts[v]);
      counts[v] = 0;
    }
  }
  return total;
}

inline std::vector<node_id> touched_left(const qswap& sw) {
  std::vector<node_id> t;
  for (const edge& e : sw.edges) t.push_back(e.left);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

// β(after) - β(before) read off g and the swap alone, without building the
// rewired graph. Only left pairs with a rewired member can change.
inline std::int64_t swap_delta(const bipartite_graph& g, const qswap& sw) {
  const auto touched = touched_left(sw);
  const auto added = replacement_edges(sw);
  auto removed = [&](node_id u, node_id a) {
    for (const edge& e : sw.edges)
      if (e.left == u && e.right == a) return true;
    return false;
  };
  auto in_touched = [&](node_id v) {
    return std::binary_search(touched.begin(), touched.end(), v);
  };
  std::vector<std::uint32_t> counts(g.left_count(), 0);
  std::vector<node_id> hit;

  auto pair_sum = [&](node_id u, bool after) {
    hit.clear();
    auto bump = [&](node_id w) {
      if (w != u && counts[w]++ == 0) hit.push_back(w);
    };
    auto walk_right = [&](node_id a) {
      for (node_id w : g.right_neighbors(a)) {
        if (after && removed(w, a)) continue;
        bump(w);
      }
      if (after) {
        for (const edge& e : added)
          if (e.right == a) bump(e.left);
      }
    };
    for (node_id a : g.left_neighbors(u)) {
      if (after && removed(u, a)) continue;
      walk_right(a);
    }
    if (after) {
      for (const edge& e : added)
        if (e.left == u) walk_right(e.right);
    }
    std::uint64_t total = 0;
    for (node_id w : hit) {
      if (!in_touched(w) || w > u) total += choose2(counts[w]);
      counts[w] = 0;
    }
    return total;
  };

  std::int64_t delta = 0;
  for (node_id u : touched) {
    delta += static_cast<std::int64_t>(pair_sum(u, true));
    delta -= static_cast<std::int64_t>(pair_sum(u, false));
  }
  return delta;
}

// Same quantity, recounted on an already rewired graph.
inline std::int64_t local_delta(const bipartite_graph& before, const bipartite_graph& after,
                                const qswap& sw) {
  const auto t = touched_left(sw);
  return static_cast<std::int64_t>(touched_pair_butterflies(after, t)) -
         static_cast<std::int64_t>(touched_pair_butterflies(before, t));
}

inline void require_valid(const bipartite_graph& g, const qswap& sw) {
  const auto reason = validate_qbso(g, sw);
  if (reason != swap_reason::valid) {
    throw error(errc::invalid_swap, std::string(to_string(reason)),
                static_cast<std::uint64_t>(reason));
  }
}

}  // namespace detail

inline swap_outcome apply_qbso(const bipartite_graph& g, const qswap& sw) {
  detail::require_valid(g, sw);
  swap_outcome out{detail::rewire(g, sw), 0};
  out.butterfly_delta = detail::local_delta(g, out.graph_after, sw);
  return out;
}

/// β(after) - β(before), recounting only left pairs that involve a rewired node.
inline std::int64_t butterfly_delta(const bipartite_graph& g, const qswap& sw) {
  detail::require_valid(g, sw);
  return detail::swap_delta(g, sw);
}

/// All valid 2-edge swaps, ordered by the positions of their edges in
/// g.edges().
inline std::vector<qswap> enumerate_bsos(const bipartite_graph& g) {
  std::vector<qswap> out;
  auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const edge a = edges[i];
      const edge b = edges[j];
      if (a.left == b.left || a.right == b.right) continue;
      if (g.has_edge(a.left, b.right) || g.has_edge(b.left, a.right)) continue;
      out.push_back({{a, b}, {1, 0}});
    }
  }
  return out;
}

/// All derangements of {0..q-1} in lexicographic order.
inline std::vector<std::vector<std::uint32_t>> derangements(std::size_t q) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> p(q);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (is_derangement(p)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct qbso_enumeration_options {
  std::size_t max_q = 6;
  std::size_t max_edges = 64;
  bool allow_large = false;
};

struct qbso_enumeration {
  std::vector<qswap> moves;  // one per distinct outcome
  std::size_t raw_count = 0;  // valid (S, sigma) encodings with S in edge order
};

/// Streams every valid q-swap of g, one per distinct resulting graph. The
/// removed edges are taken as increasing combinations of g.edges(); among
/// derangements producing the same replacement set only the
/// lexicographically first is reported. Returns the raw count of valid
/// encodings; `visit` returning false stops the stream.
inline std::size_t for_each_qbso(const bipartite_graph& g, std::size_t q,
                                 const std::function<bool(const qswap&)>& visit,
                                 const qbso_enumeration_options& opts = {}) {
  const std::size_t m = g.edge_count();
  if (q < 2 || q > m) {
    throw error(errc::infeasible_size,
                "q=" + std::to_string(q) + " with " + std::to_string(m) + " edges");
  }
  if (!opts.allow_large && (q > opts.max_q || m > opts.max_edges)) {
    throw error(errc::infeasible_size, "q=" + std::to_string(q) + ", |E|=" + std::to_string(m) +
                                           " exceeds the enumeration cap");
  }
  const auto perms = derangements(q);
  auto edges = g.edges();
  std::vector<std::size_t> idx(q);
  std::iota(idx.begin(), idx.end(), 0);
  std::size_t raw = 0;
  qswap sw;
  sw.edges.resize(q);
  std::vector<edge> added(q);
  std::vector<std::vector<edge>> seen_added;

  while (true) {
    for (std::size_t k = 0; k < q; ++k) sw.edges[k] = edges[idx[k]];
    seen_added.clear();
    for (const auto& p : perms) {
      bool ok = true;
      for (std::size_t j = 0; j < q && ok; ++j) {
        added[j] = {sw.edges[j].left, sw.edges[p[j]].right};
        ok = !g.has_edge(added[j]);
      }
      if (!ok) continue;
      std::vector<edge> key = added;
      std::sort(key.begin(), key.end());
      if (std::adjacent_find(key.begin(), key.end()) != key.end()) continue;
      ++raw;
      if (std::find(seen_added.begin(), seen_added.end(), key) != seen_added.end()) continue;
      seen_added.push_back(std::move(key));
      sw.sigma = p;
      if (!visit(sw)) return raw;
    }
    // next combination
    std::size_t k = q;
    while (k > 0 && idx[k - 1] == m - q + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t r = k; r < q; ++r) idx[r] = idx[r - 1] + 1;
  }
  return raw;
}

inline qbso_enumeration enumerate_qbsos(const bipartite_graph& g, std::size_t q,
                                        const qbso_enumeration_options& opts = {}) {
  qbso_enumeration out;
  out.raw_count = for_each_qbso(
      g, q,
      [&](const qswap& sw) {
        out.moves.push_back(sw);
        return true;
      },
      opts);
  return out;
}

/// One naive proposal: q distinct edges uniformly at random (in draw order)
/// and a uniform derangement. `reason` is valid when the proposal is a
/// legal swap on g.
struct qbso_attempt {
  qswap proposal;
  swap_reason reason = swap_reason::valid;

  bool accepted() const noexcept { return reason == swap_reason::valid; }
};

template <class Rng>
qbso_attempt sample_qbso_attempt(const bipartite_graph& g, std::size_t q, Rng& rng) {
  const std::size_t m = g.edge_count();
  if (q < 2 || q > m) {
    throw error(errc::infeasible_size,
                "q=" + std::to_string(q) + " with " + std::to_string(m) + " edges");
  }
  qbso_attempt att;
  auto& sw = att.proposal;
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::vector<std::size_t> chosen;
  chosen.reserve(q);
  while (chosen.size() < q) {
    const std::size_t i = pick(rng);
    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
  }
  for (auto i : chosen) sw.edges.push_back(g.edges()[i]);

  sw.sigma.resize(q);
  do {
    std::iota(sw.sigma.begin(), sw.sigma.end(), 0);
    for (std::size_t i = q - 1; i > 0; --i) {
      std::uniform_int_distribution<std::size_t> j(0, i);
      std::swap(sw.sigma[i], sw.sigma[j(rng)]);
    }
  } while (!is_derangement(sw.sigma));

  att.reason = validate_qbso(g, sw);
  return att;
}

}  // namespace bfly
