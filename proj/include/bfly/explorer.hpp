#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "bfly/canonical.hpp"
#include "bfly/ensemble.hpp"
#include "bfly/graph.hpp"
#include "bfly/swap.hpp"

namespace bfly {

struct edge_list_hash {
  std::size_t operator()(const std::vector<edge>& edges) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (const edge& e : edges) {
      h ^= (std::uint64_t{e.left} << 32) | e.right;
      h *= 1099511628211ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Single swap turning `from` into `to`: every edge only in `from` is removed
/// and every edge only in `to` is added. Each removed (u, v) is paired with
/// the first unused added edge (u, w); sigma then points at an unused removed
/// edge whose right endpoint is w. Equal degree sequences guarantee both
/// choices exist.
inline qswap direct_qbso(const bipartite_graph& from, const bipartite_graph& to) {
  if (from.left_count() != to.left_count() || from.right_count() != to.right_count() ||
      degree_sequences(from) != degree_sequences(to)) {
    throw error(errc::degree_mismatch, "graphs do not share node sets and degree sequences");
  }
  std::vector<edge> removed;
  std::vector<edge> added;
  std::set_difference(from.edges().begin(), from.edges().end(), to.edges().begin(),
                      to.edges().end(), std::back_inserter(removed));
  std::set_difference(to.edges().begin(), to.edges().end(), from.edges().begin(),
                      from.edges().end(), std::back_inserter(added));
  if (removed.empty()) throw error(errc::identical_graphs, "graphs are identical");

  const std::size_t q = removed.size();
  std::vector<bool> added_used(added.size(), false);
  std::vector<bool> removed_used(q, false);
  qswap sw;
  sw.edges = removed;
  sw.sigma.assign(q, 0);
  for (std::size_t i = 0; i < q; ++i) {
    const node_id u = removed[i].left;
    std::size_t k = 0;
    while (k < added.size() && (added_used[k] || added[k].left != u)) ++k;
    if (k == added.size()) throw error(errc::degree_mismatch, "no added edge left for a removed edge");
    added_used[k] = true;
    const node_id w = added[k].right;
    std::size_t j = 0;
    while (j < q && (removed_used[j] || removed[j].right != w)) ++j;
    if (j == q) throw error(errc::degree_mismatch, "right endpoint multiset mismatch");
    removed_used[j] = true;
    sw.sigma[i] = static_cast<std::uint32_t>(j);
  }
  // A fixed point would mean (u, w) is both removed and added.
  if (!is_derangement(sw.sigma)) throw std::logic_error("direct_qbso produced a fixed point");
  return sw;
}

enum class exploration_status { closed, target_found, budget_exceeded };

inline std::string_view to_string(exploration_status s) {
  switch (s) {
    case exploration_status::closed: return "closed";
    case exploration_status::target_found: return "target_found";
    case exploration_status::budget_exceeded: return "budget_exceeded";
  }
  return "unknown";
}

struct exploration_options {
  std::size_t q_max = 2;
  bool preserve_butterflies = false;
  bool iso_mode = false;
  std::optional<bipartite_graph> target;
  std::size_t visited_cap = 10'000'000;
  std::size_t moves_cap = 100'000'000;
  unsigned jobs = 1;
  /// Try the one-shot swap to the target from each expanded state when it is
  /// within q_max.
  bool direct_to_target = true;
  qbso_enumeration_options enumeration{};
};

struct exploration_report {
  canonical_form start;
  std::size_t q_max = 0;
  bool preserve_butterflies = false;
  bool iso_mode = false;
  exploration_status status = exploration_status::closed;
  std::size_t visited_count = 0;
  bool target_found = false;
  std::size_t depth_reached = 0;
  std::size_t moves_expanded = 0;
  std::vector<qswap> witness;  // replayable from the start graph when target_found
};

namespace detail {

struct successor {
  std::vector<edge> edges;
  std::vector<edge> key;
  qswap move;
  bool hits_target = false;
};

struct explorer_context {
  const exploration_options& opts;
  std::optional<canonical_form> target_form;
  std::uint64_t start_butterflies = 0;
  std::atomic<std::size_t> moves{0};
  std::atomic<bool> abort{false};

  std::vector<edge> key_of(const bipartite_graph& g) const {
    if (!opts.iso_mode) return {g.edges().begin(), g.edges().end()};
    return canonical_form_of(g).edges;
  }

  bool is_target(const bipartite_graph& g, const std::vector<edge>& key) const {
    if (!opts.target) return false;
    if (!opts.iso_mode) return g == *opts.target;
    return key == target_form->edges;
  }

  // All distinct admissible successors of g, in enumeration order.
  std::vector<successor> expand(const bipartite_graph& g) {
    std::vector<successor> out;
    if (opts.target && opts.direct_to_target && !(g == *opts.target) &&
        degree_sequences(g) == degree_sequences(*opts.target) &&
        (!opts.preserve_butterflies || butterfly_count(*opts.target) == start_butterflies)) {
      const auto sw = direct_qbso(g, *opts.target);
      if (sw.q() <= opts.q_max) {
        moves.fetch_add(1);
        successor s{{opts.target->edges().begin(), opts.target->edges().end()},
                    key_of(*opts.target), sw, true};
        out.push_back(std::move(s));
        return out;
      }
    }
    const std::size_t q_top = std::min(opts.q_max, g.edge_count());
    for (std::size_t q = 2; q <= q_top && !abort.load(); ++q) {
      for_each_qbso(
          g, q,
          [&](const qswap& sw) {
            if (moves.fetch_add(1) + 1 > opts.moves_cap) {
              abort.store(true);
              return false;
            }
            if (opts.preserve_butterflies && swap_delta(g, sw) != 0) return true;
            auto after = rewire(g, sw);
            successor s;
            s.move = sw;
            s.edges.assign(after.edges().begin(), after.edges().end());
            if (opts.iso_mode) {
              s.key = canonical_form_of(after).edges;
            }
            s.hits_target = opts.target && (opts.iso_mode ? s.key == target_form->edges
                                                          : after == *opts.target);
            out.push_back(std::move(s));
            return true;
          },
          opts.enumeration);
    }
    return out;
  }
};

}  // namespace detail

/// Level-synchronous BFS from `start` over valid swaps of size 2..q_max.
/// States are labeled graphs, or isomorphism classes when iso_mode is set.
/// Results do not depend on `jobs`: successor lists are merged in frontier
/// order.
inline exploration_report reachable_set(const bipartite_graph& start,
                                        const exploration_options& opts) {
  if (opts.q_max < 2) throw error(errc::infeasible_size, "q_max must be at least 2");
  detail::explorer_context ctx{opts, std::nullopt, butterfly_count(start)};
  if (opts.target && opts.iso_mode) ctx.target_form = canonical_form_of(*opts.target);

  exploration_report rep;
  rep.start = canonical_form_of(start);
  rep.q_max = opts.q_max;
  rep.preserve_butterflies = opts.preserve_butterflies;
  rep.iso_mode = opts.iso_mode;

  struct node_info {
    std::vector<edge> edges;
    std::size_t parent;
    qswap move;
  };
  std::vector<node_info> nodes;
  std::unordered_map<std::vector<edge>, std::size_t, edge_list_hash> index;

  auto start_key = opts.iso_mode ? rep.start.edges
                                 : std::vector<edge>(start.edges().begin(), start.edges().end());
  nodes.push_back({{start.edges().begin(), start.edges().end()}, 0, {}});
  index.emplace(start_key, 0);

  auto finish_found = [&](std::size_t idx, std::size_t depth) {
    rep.status = exploration_status::target_found;
    rep.target_found = true;
    rep.depth_reached = depth;
    std::vector<qswap> path;
    while (idx != 0) {
      path.push_back(nodes[idx].move);
      idx = nodes[idx].parent;
    }
    rep.witness.assign(path.rbegin(), path.rend());
  };

  if (ctx.is_target(start, start_key)) {
    finish_found(0, 0);
    rep.visited_count = 1;
    return rep;
  }

  std::vector<std::size_t> frontier{0};
  std::size_t depth = 0;
  const unsigned jobs = std::max(1u, opts.jobs);
  while (!frontier.empty()) {
    std::vector<std::vector<detail::successor>> expanded(frontier.size());
    auto work = [&](unsigned w) {
      for (std::size_t i = w; i < frontier.size(); i += jobs) {
        if (ctx.abort.load()) return;
        const auto& info = nodes[frontier[i]];
        auto g = bipartite_graph::from_sorted_unchecked(start.left_count(), start.right_count(),
                                                        info.edges);
        expanded[i] = ctx.expand(g);
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }

    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto& s : expanded[i]) {
        std::vector<edge> key = opts.iso_mode ? std::move(s.key) : s.edges;
        auto [it, inserted] = index.emplace(std::move(key), nodes.size());
        if (!inserted) continue;
        nodes.push_back({std::move(s.edges), frontier[i], std::move(s.move)});
        if (s.hits_target) {
          rep.moves_expanded = ctx.moves.load();
          rep.visited_count = nodes.size();
          finish_found(nodes.size() - 1, depth + 1);
          return rep;
        }
        if (nodes.size() > opts.visited_cap) ctx.abort.store(true);
        if (ctx.abort.load()) break;
        next.push_back(nodes.size() - 1);
      }
      if (ctx.abort.load()) break;
    }
    if (!next.empty()) depth += 1;
    rep.depth_reached = depth;
    if (ctx.abort.load()) {
      rep.status = exploration_status::budget_exceeded;
      break;
    }
    frontier = std::move(next);
  }
  rep.visited_count = nodes.size();
  rep.moves_expanded = std::min(ctx.moves.load(), opts.moves_cap);
  return rep;
}

struct connectivity_report {
  bool connected = false;
  std::size_t members = 0;
  std::size_t transitions = 0;  // directed member -> member moves found
  std::vector<std::size_t> component_sizes;  // sorted descending
  std::map<std::size_t, std::size_t> component_size_histogram;
};

/// Builds the full move graph on the enumerated ensemble. Moves must keep the
/// butterfly count when the spec fixes one.
inline connectivity_report is_connected_under(const ensemble_spec& spec, std::size_t q_max,
                                              const enumeration_limits& limits = {},
                                              const qbso_enumeration_options& enum_opts = {}) {
  if (q_max < 2) throw error(errc::infeasible_size, "q_max must be at least 2");
  const auto cat = enumerate_ensemble(spec, limits);
  std::unordered_map<std::vector<edge>, std::size_t, edge_list_hash> index;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    index.emplace(std::vector<edge>(cat.members[i].edges().begin(), cat.members[i].edges().end()), i);
  }
  std::vector<std::size_t> parent(cat.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  connectivity_report rep;
  rep.members = cat.size();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const auto& g = cat.members[i];
    const std::size_t q_top = std::min(q_max, g.edge_count());
    for (std::size_t q = 2; q <= q_top; ++q) {
      for_each_qbso(
          g, q,
          [&](const qswap& sw) {
            if (spec.butterfly_target && detail::swap_delta(g, sw) != 0) return true;
            auto after = detail::rewire(g, sw);
            auto it = index.find(std::vector<edge>(after.edges().begin(), after.edges().end()));
            if (it == index.end()) throw std::logic_error("move left the enumerated ensemble");
            ++rep.transitions;
            parent[find(i)] = find(it->second);
            return true;
          },
          enum_opts);
    }
  }
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t i = 0; i < cat.size(); ++i) ++sizes[find(i)];
  for (auto& [root, size] : sizes) rep.component_sizes.push_back(size);
  std::sort(rep.component_sizes.begin(), rep.component_sizes.end(), std::greater<>());
  for (auto size : rep.component_sizes) ++rep.component_size_histogram[size];
  rep.connected = rep.component_sizes.size() <= 1;
  return rep;
}

struct single_swap_options {
  std::size_t q_cap = 4;
  bool iso_mode = false;
  bool preserve_butterflies = false;
  qbso_enumeration_options enumeration{};
};

/// Smallest q <= q_cap such that one valid q-swap takes `from` to `to` (or,
/// in iso_mode, to a graph isomorphic to `to`). Exhaustive; nullopt when no
/// such swap exists up to the cap.
inline std::optional<std::size_t> min_single_swap_size(const bipartite_graph& from,
                                                       const bipartite_graph& to,
                                                       const single_swap_options& opts) {
  if (opts.q_cap < 2) throw error(errc::infeasible_size, "q_cap must be at least 2");
  if (from.left_count() != to.left_count() || from.right_count() != to.right_count() ||
      degree_sequences(from) != degree_sequences(to)) {
    throw error(errc::degree_mismatch, "graphs do not share degree sequences");
  }
  const auto target_profile = butterfly_profile(to);
  std::optional<canonical_form> target_form;
  if (opts.iso_mode) target_form = canonical_form_of(to);
  const std::size_t q_top = std::min(opts.q_cap, from.edge_count());
  for (std::size_t q = 2; q <= q_top; ++q) {
    bool found = false;
    for_each_qbso(
        from, q,
        [&](const qswap& sw) {
          if (opts.preserve_butterflies && detail::swap_delta(from, sw) != 0) return true;
          auto after = detail::rewire(from, sw);
          if (!opts.iso_mode) {
            found = after == to;
          } else if (butterfly_profile(after) == target_profile) {
            found = canonical_form_of(after) == *target_form;
          }
          return !found;
        },
        opts.enumeration);
    if (found) return q;
  }
  return std::nullopt;
}

}  // namespace bfly
