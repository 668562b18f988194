#pragma once

#include <string>

#include "json.hpp"

#include "bfly/canonical.hpp"
#include "bfly/constructor.hpp"
#include "bfly/ensemble.hpp"
#include "bfly/explorer.hpp"
#include "bfly/mcmc.hpp"
#include "bfly/swap.hpp"

namespace bfly {

using json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "bfly/1";

inline json edges_to_json(std::span<const edge> edges) {
  json arr = json::array();
  for (const edge& e : edges) arr.push_back({e.left, e.right});
  return arr;
}

/// {"edges": [[u,a],...], "sigma": [...]}
inline json to_json(const qswap& sw) {
  json j;
  j["edges"] = edges_to_json(sw.edges);
  j["sigma"] = sw.sigma;
  return j;
}

inline qswap qswap_from_json(const json& j) {
  qswap sw;
  try {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw error(errc::parse_error, "edge must be [u, a]");
      sw.edges.push_back({e.at(0).get<node_id>(), e.at(1).get<node_id>()});
    }
    sw.sigma = j.at("sigma").get<std::vector<std::uint32_t>>();
  } catch (const nlohmann::json::exception& ex) {
    throw error(errc::parse_error, std::string("bad swap encoding: ") + ex.what());
  }
  return sw;
}

inline json rejection_to_json(const qswap& proposal, swap_reason reason) {
  json j;
  j["rejected"] = true;
  j["reason"] = std::string(to_string(reason));
  j["proposal"] = to_json(proposal);
  return j;
}

inline json to_json(const degree_pair& d) {
  return json{{"left", d.left}, {"right", d.right}};
}

inline json to_json(const construction_report& r) {
  json j;
  j["schema"] = schema_version;
  j["s"] = r.s;
  j["t"] = r.t;
  j["n"] = r.n;
  j["add"] = r.add;
  j["text_padding"] = r.text_padding;
  j["butterflies"] = {{"begin", r.butterflies_begin},
                      {"end", r.butterflies_end},
                      {"expected", r.butterflies_expected}};
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["checks"] = checks;
  j["all_passed"] = r.all_passed();
  return j;
}

inline json to_json(const exploration_report& r) {
  json j;
  j["schema"] = schema_version;
  j["start_canonical_hash"] = r.start.hash();
  j["q_max"] = r.q_max;
  j["preserve_butterflies"] = r.preserve_butterflies;
  j["iso_mode"] = r.iso_mode;
  j["status"] = std::string(to_string(r.status));
  j["visited_count"] = r.visited_count;
  j["target_found"] = r.target_found;
  j["depth_reached"] = r.depth_reached;
  j["moves_expanded"] = r.moves_expanded;
  json w = json::array();
  for (const auto& sw : r.witness) w.push_back(to_json(sw));
  j["witness"] = w;
  return j;
}

inline json to_json(const chain_stats& s) {
  json j;
  j["schema"] = schema_version;
  j["steps"] = s.steps;
  j["accepted"] = s.accepted;
  j["rejected_by_reason"] = s.rejected_by_reason;
  j["samples"] = s.samples;
  j["distinct_labeled_states"] = s.state_visit_histogram.size();
  j["visited_canonical_count"] = s.visited_canonical_count;
  j["watch_hits"] = s.watch_hits;
  return j;
}

/// Index written next to a catalog's "bip v1" blocks.
inline json catalog_index(const ensemble_catalog& cat) {
  json j;
  j["schema"] = schema_version;
  j["degrees"] = to_json(cat.spec.degrees);
  if (cat.spec.butterfly_target) {
    j["butterfly_target"] = *cat.spec.butterfly_target;
  } else {
    j["butterfly_target"] = nullptr;
  }
  j["count"] = cat.size();
  json hist = json::object();
  for (const auto& [b, n] : cat.butterfly_histogram()) hist[std::to_string(b)] = n;
  j["butterfly_histogram"] = hist;
  return j;
}

}  // namespace bfly
