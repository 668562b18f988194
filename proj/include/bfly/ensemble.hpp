#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "bfly/graph.hpp"

namespace bfly {

/// Degree pair plus an optional butterfly total; the set of labeled graphs
/// meeting both is the ensemble.
struct ensemble_spec {
  degree_pair degrees;
  std::optional<std::uint64_t> butterfly_target;
};

struct ensemble_catalog {
  ensemble_spec spec;
  std::vector<bipartite_graph> members;  // sorted by edge list
  std::vector<std::uint64_t> butterflies;

  std::size_t size() const noexcept { return members.size(); }

  std::map<std::uint64_t, std::size_t> butterfly_histogram() const {
    std::map<std::uint64_t, std::size_t> h;
    for (auto b : butterflies) ++h[b];
    return h;
  }
};

struct enumeration_limits {
  std::size_t members = 10'000'000;
  std::size_t realizations = 100'000'000;
};

namespace detail {

// Gale–Ryser with `left` sorted non-increasing.
inline bool gale_ryser_sorted(std::span<const std::size_t> left, std::span<const std::size_t> right) {
  std::uint64_t lhs = 0;
  for (std::size_t k = 1; k <= left.size(); ++k) {
    lhs += left[k - 1];
    std::uint64_t rhs = 0;
    for (auto b : right) rhs += std::min<std::uint64_t>(b, k);
    if (lhs > rhs) return false;
  }
  return true;
}

}  // namespace detail

/// True iff some simple bipartite graph has exactly these degrees.
inline bool realization_exists(const degree_pair& d) {
  if (edge_sum(d.left) != edge_sum(d.right)) return false;
  std::vector<std::size_t> left = d.left;
  std::sort(left.begin(), left.end(), std::greater<>());
  return detail::gale_ryser_sorted(left, d.right);
}

/// Streams every labeled realization of `d` in depth-first order (left nodes
/// by non-increasing degree, right subsets lexicographically). `visit`
/// returning false stops the walk. Returns the number of realizations seen.
inline std::size_t for_each_realization(const degree_pair& d,
                                        const std::function<bool(const bipartite_graph&)>& visit) {
  if (!realization_exists(d)) return 0;
  const std::size_t nl = d.left.size();
  const std::size_t nr = d.right.size();
  std::vector<node_id> order(nl);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](node_id a, node_id b) { return d.left[a] > d.left[b]; });
  std::vector<std::size_t> sorted_left(nl);
  for (std::size_t i = 0; i < nl; ++i) sorted_left[i] = d.left[order[i]];

  std::vector<std::size_t> caps = d.right;
  std::vector<edge> edges;
  std::size_t seen = 0;
  bool stop = false;

  std::function<void(std::size_t)> place_node;
  std::function<void(std::size_t, node_id, std::size_t, node_id)> choose;

  place_node = [&](std::size_t pos) {
    if (stop) return;
    if (pos == nl) {
      std::vector<edge> sorted = edges;
      std::sort(sorted.begin(), sorted.end());
      ++seen;
      if (!visit(bipartite_graph::from_sorted_unchecked(nl, nr, std::move(sorted)))) stop = true;
      return;
    }
    choose(pos, order[pos], sorted_left[pos], 0);
  };

  // Pick `need` more right nodes >= `from` for left node u at position pos.
  choose = [&](std::size_t pos, node_id u, std::size_t need, node_id from) {
    if (stop) return;
    if (need == 0) {
      if (detail::gale_ryser_sorted(std::span(sorted_left).subspan(pos + 1), caps)) place_node(pos + 1);
      return;
    }
    std::size_t available = 0;
    for (node_id a = from; a < nr; ++a) available += caps[a] > 0;
    if (available < need) return;
    for (node_id a = from; a < nr; ++a) {
      if (caps[a] == 0) continue;
      --caps[a];
      edges.push_back({u, a});
      choose(pos, u, need - 1, a + 1);
      edges.pop_back();
      ++caps[a];
      if (stop) return;
    }
  };

  place_node(0);
  return seen;
}

/// Materializes the ensemble. Throws InfeasibleDegrees when no realization
/// exists and LimitExceeded (detail = members found so far) when either cap
/// is crossed.
inline ensemble_catalog enumerate_ensemble(const ensemble_spec& spec,
                                           const enumeration_limits& limits = {}) {
  if (!realization_exists(spec.degrees)) {
    throw error(errc::infeasible_degrees, "degree pair has no bipartite realization");
  }
  ensemble_catalog cat;
  cat.spec = spec;
  std::size_t realizations = 0;
  bool over = false;
  for_each_realization(spec.degrees, [&](const bipartite_graph& g) {
    if (++realizations > limits.realizations) {
      over = true;
      return false;
    }
    const auto b = butterfly_count(g);
    if (spec.butterfly_target && *spec.butterfly_target != b) return true;
    if (cat.members.size() == limits.members) {
      over = true;
      return false;
    }
    cat.members.push_back(g);
    cat.butterflies.push_back(b);
    return true;
  });
  if (over) {
    throw error(errc::limit_exceeded,
                "ensemble exceeds enumeration limits after " + std::to_string(cat.members.size()) +
                    " members",
                cat.members.size());
  }
  std::vector<std::size_t> idx(cat.members.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(cat.members[a].edges().begin(), cat.members[a].edges().end(),
                                        cat.members[b].edges().begin(), cat.members[b].edges().end());
  });
  ensemble_catalog sorted;
  sorted.spec = spec;
  for (auto i : idx) {
    sorted.members.push_back(std::move(cat.members[i]));
    sorted.butterflies.push_back(cat.butterflies[i]);
  }
  return sorted;
}

}  // namespace bfly
