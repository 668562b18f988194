#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "bfly/canonical.hpp"
#include "bfly/ensemble.hpp"
#include "bfly/graph.hpp"
#include "bfly/swap.hpp"

namespace bfly {

struct chain_config {
  bipartite_graph start;
  std::size_t move_size_q = 2;
  bool preserve_butterflies = false;
  std::size_t steps = 0;
  std::size_t burn_in = 0;
  std::size_t thinning = 1;
  std::uint64_t seed = 0;
  /// Count steps whose state is isomorphic to this graph.
  std::optional<bipartite_graph> watch;
  /// Recompute degrees and butterflies for every sample and throw on drift.
  bool check_invariants = false;
};

struct chain_stats {
  std::size_t steps = 0;
  std::size_t accepted = 0;
  std::map<std::string, std::size_t> rejected_by_reason;
  std::size_t samples = 0;
  std::size_t visited_canonical_count = 0;
  std::size_t watch_hits = 0;
  /// Post burn-in, thinned visits keyed by labeled edge list.
  std::map<std::vector<edge>, std::size_t> state_visit_histogram;

  std::size_t rejected() const {
    std::size_t r = 0;
    for (const auto& [reason, n] : rejected_by_reason) r += n;
    return r;
  }
};

/// Called for every recorded sample with its step index.
using sample_callback = std::function<void(std::size_t step, const bipartite_graph&)>;

/// Lazy chain with the naive q-swap proposal: invalid proposals, and
/// butterfly-changing ones when preserve_butterflies is set, leave the state
/// unchanged. The proposal is symmetric, so the stationary law is uniform on
/// the component of the start state. Deterministic given the seed.
inline chain_stats run_chain(const chain_config& cfg, const sample_callback& on_sample = {}) {
  if (cfg.move_size_q < 2) throw error(errc::invalid_config, "move size must be at least 2");
  if (cfg.move_size_q > cfg.start.edge_count()) {
    throw error(errc::invalid_config, "move size exceeds the number of edges");
  }
  if (cfg.steps <= cfg.burn_in) throw error(errc::invalid_config, "steps must exceed burn-in");
  if (cfg.thinning < 1) throw error(errc::invalid_config, "thinning must be at least 1");

  std::mt19937_64 rng(cfg.seed);
  chain_stats stats;
  stats.steps = cfg.steps;
  bipartite_graph current = cfg.start;
  const auto start_degrees = degree_sequences(cfg.start);
  const auto start_butterflies = butterfly_count(cfg.start);

  std::optional<canonical_form> watch_form;
  std::vector<std::uint64_t> watch_profile;
  if (cfg.watch) {
    watch_form = canonical_form_of(*cfg.watch);
    watch_profile = butterfly_profile(*cfg.watch);
  }
  auto matches_watch = [&](const bipartite_graph& g) {
    if (!watch_form || g.left_count() != watch_form->left_count ||
        g.right_count() != watch_form->right_count) {
      return false;
    }
    return butterfly_profile(g) == watch_profile && canonical_form_of(g) == *watch_form;
  };
  bool current_is_watch = matches_watch(current);

  for (std::size_t step = 0; step < cfg.steps; ++step) {
    auto att = sample_qbso_attempt(current, cfg.move_size_q, rng);
    if (!att.accepted()) {
      ++stats.rejected_by_reason[std::string(to_string(att.reason))];
    } else {
      if (cfg.preserve_butterflies && detail::swap_delta(current, att.proposal) != 0) {
        ++stats.rejected_by_reason["ButterflyChange"];
      } else {
        current = detail::rewire(current, att.proposal);
        ++stats.accepted;
        current_is_watch = matches_watch(current);
      }
    }
    if (current_is_watch) ++stats.watch_hits;

    if (step >= cfg.burn_in && (step - cfg.burn_in) % cfg.thinning == 0) {
      ++stats.samples;
      ++stats.state_visit_histogram[std::vector<edge>(current.edges().begin(), current.edges().end())];
      if (cfg.check_invariants) {
        if (degree_sequences(current) != start_degrees) {
          throw std::logic_error("chain changed the degree sequences");
        }
        if (cfg.preserve_butterflies && butterfly_count(current) != start_butterflies) {
          throw std::logic_error("restricted chain changed the butterfly count");
        }
      }
      if (on_sample) on_sample(step, current);
    }
  }

  std::unordered_set<std::uint64_t> classes;
  for (const auto& [edges, n] : stats.state_visit_histogram) {
    auto g = bipartite_graph::from_sorted_unchecked(cfg.start.left_count(), cfg.start.right_count(),
                                                    edges);
    classes.insert(canonical_form_of(g).hash());
  }
  stats.visited_canonical_count = classes.size();
  return stats;
}

/// Total-variation distance between the sampled state frequencies and the
/// uniform law on the catalog. Sampled states outside the catalog count as
/// full mismatch.
inline double uniformity_distance(const chain_stats& stats, const ensemble_catalog& catalog) {
  if (catalog.size() == 0) throw error(errc::empty_catalog, "catalog has no members");
  if (stats.samples == 0) return 1.0;
  const double uniform = 1.0 / static_cast<double>(catalog.size());
  const double total = static_cast<double>(stats.samples);
  double tv = 0.0;
  std::size_t covered = 0;
  for (const auto& g : catalog.members) {
    auto it = stats.state_visit_histogram.find(std::vector<edge>(g.edges().begin(), g.edges().end()));
    const std::size_t n = it == stats.state_visit_histogram.end() ? 0 : it->second;
    covered += n;
    tv += std::abs(static_cast<double>(n) / total - uniform);
  }
  tv += static_cast<double>(stats.samples - covered) / total;
  return 0.5 * tv;
}

}  // namespace bfly
