#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "bfly/graph.hpp"

namespace bfly {

/// Side-respecting canonical labeling. Two graphs have equal forms (counts
/// plus edge list) iff some left->left, right->right relabeling maps one
/// onto the other. The relabelings map original ids to canonical ids.
struct canonical_form {
  std::size_t left_count = 0;
  std::size_t right_count = 0;
  std::vector<edge> edges;
  std::vector<node_id> left_relabeling;
  std::vector<node_id> right_relabeling;

  friend bool operator==(const canonical_form& a, const canonical_form& b) {
    return a.left_count == b.left_count && a.right_count == b.right_count && a.edges == b.edges;
  }

  std::uint64_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffU;
        h *= 1099511628211ULL;
      }
    };
    mix(left_count);
    mix(right_count);
    for (const edge& e : edges) mix((std::uint64_t{e.left} << 32) | e.right);
    return h;
  }
};

struct canonical_form_hash {
  std::size_t operator()(const canonical_form& f) const noexcept {
    return static_cast<std::size_t>(f.hash());
  }
};

namespace detail {

// One connected component, nodes renumbered locally: left nodes first.
struct component {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<node_id> members;  // global ids; right nodes offset by left_count
  std::vector<std::vector<std::uint32_t>> adj;
};

struct component_canon {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<edge> edges;
  std::vector<std::uint32_t> order;  // local node -> canonical position within its side
};

class component_canonizer {
 public:
  explicit component_canonizer(const component& c) : c_(c), n_(c.adj.size()) {
    neighbor_sets_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      neighbor_sets_[v] = c.adj[v];
      std::sort(neighbor_sets_[v].begin(), neighbor_sets_[v].end());
    }
  }

  component_canon run() {
    std::vector<std::uint32_t> colors(n_);
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keys(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      const std::uint64_t side_bit = v < c_.left ? 0 : 1;
      keys[v] = {(side_bit << 32) | c_.adj[v].size(), static_cast<std::uint32_t>(v)};
    }
    rank_by_key(keys, colors);
    refine(colors);
    search(colors);
    return std::move(best_);
  }

 private:
  static void rank_by_key(std::vector<std::pair<std::uint64_t, std::uint32_t>>& keys,
                          std::vector<std::uint32_t>& colors) {
    std::sort(keys.begin(), keys.end());
    std::uint32_t color = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i > 0 && keys[i].first != keys[i - 1].first) ++color;
      colors[keys[i].second] = color;
    }
  }

  static std::uint32_t distinct(const std::vector<std::uint32_t>& colors) {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  // Equitable refinement: recolor by (own color, sorted neighbor colors) until
  // the number of cells stops growing.
  void refine(std::vector<std::uint32_t>& colors) const {
    std::uint32_t cells = distinct(colors);
    std::vector<std::vector<std::uint32_t>> sig(n_);
    std::vector<std::uint32_t> idx(n_);
    while (true) {
      for (std::size_t v = 0; v < n_; ++v) {
        auto& s = sig[v];
        s.clear();
        s.push_back(colors[v]);
        for (auto w : c_.adj[v]) s.push_back(colors[w]);
        std::sort(s.begin() + 1, s.end());
      }
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return sig[a] < sig[b]; });
      std::uint32_t color = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0 && sig[idx[i]] != sig[idx[i - 1]]) ++color;
        colors[idx[i]] = color;
      }
      const std::uint32_t next = n_ == 0 ? 0 : color + 1;
      if (next == cells) return;
      cells = next;
    }
  }

  void leaf(const std::vector<std::uint32_t>& colors) {
    // Discrete partition; left colors precede right colors.
    component_canon cand;
    cand.left = c_.left;
    cand.right = c_.right;
    cand.order.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      cand.order[v] = v < c_.left ? colors[v] : colors[v] - static_cast<std::uint32_t>(c_.left);
    }
    for (std::size_t u = 0; u < c_.left; ++u) {
      for (auto w : c_.adj[u]) cand.edges.push_back({cand.order[u], cand.order[w]});
    }
    std::sort(cand.edges.begin(), cand.edges.end());
    if (!have_best_ || cand.edges < best_.edges) {
      best_ = std::move(cand);
      have_best_ = true;
    }
  }

  void search(const std::vector<std::uint32_t>& colors) {
    const std::uint32_t cells = distinct(colors);
    if (cells == n_) {
      leaf(colors);
      return;
    }
    std::vector<std::uint32_t> cell_size(cells, 0);
    for (auto c : colors) ++cell_size[c];
    std::uint32_t target = 0;
    while (cell_size[target] == 1) ++target;

    std::vector<std::uint32_t> cell;
    for (std::size_t v = 0; v < n_; ++v)
      if (colors[v] == target) cell.push_back(static_cast<std::uint32_t>(v));

    std::vector<std::uint32_t> tried;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keys(n_);
    std::vector<std::uint32_t> next(n_);
    for (auto v : cell) {
      // Swapping two twins (equal neighbor sets) is an automorphism fixing
      // everything else, so their subtrees yield the same certificates.
      bool twin = std::any_of(tried.begin(), tried.end(),
                              [&](auto w) { return neighbor_sets_[w] == neighbor_sets_[v]; });
      if (twin) continue;
      tried.push_back(v);
      for (std::size_t w = 0; w < n_; ++w) {
        keys[w] = {std::uint64_t{colors[w]} * 2 + (w == v ? 0 : 1), static_cast<std::uint32_t>(w)};
      }
      rank_by_key(keys, next);
      refine(next);
      search(next);
    }
  }

  const component& c_;
  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> neighbor_sets_;
  component_canon best_;
  bool have_best_ = false;
};

inline std::vector<component> split_components(const bipartite_graph& g) {
  const std::size_t nl = g.left_count();
  const std::size_t n = nl + g.right_count();
  std::vector<int> comp(n, -1);
  std::vector<component> out;
  std::vector<node_id> stack;
  for (node_id start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<node_id> nodes;
    comp[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      node_id v = stack.back();
      stack.pop_back();
      nodes.push_back(v);
      if (v < nl) {
        for (node_id a : g.left_neighbors(v)) {
          node_id w = static_cast<node_id>(nl) + a;
          if (comp[w] < 0) {
            comp[w] = id;
            stack.push_back(w);
          }
        }
      } else {
        for (node_id u : g.right_neighbors(v - static_cast<node_id>(nl))) {
          if (comp[u] < 0) {
            comp[u] = id;
            stack.push_back(u);
          }
        }
      }
    }
    std::sort(nodes.begin(), nodes.end());
    component c;
    c.members = nodes;
    c.left = static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [nl](node_id v) { return v < nl; }));
    c.right = nodes.size() - c.left;
    std::vector<std::uint32_t> local(n, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<std::uint32_t>(i);
    c.adj.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      node_id v = nodes[i];
      if (v < nl) {
        for (node_id a : g.left_neighbors(v)) c.adj[i].push_back(local[nl + a]);
      } else {
        for (node_id u : g.right_neighbors(v - static_cast<node_id>(nl))) c.adj[i].push_back(local[u]);
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

/// Canonical form via per-component color refinement and individualization
/// search over the remaining symmetric cells. Worst case is exponential;
/// intended for graphs with a few dozen nodes.
inline canonical_form canonical_form_of(const bipartite_graph& g) {
  auto comps = detail::split_components(g);
  std::vector<detail::component_canon> canons;
  canons.reserve(comps.size());
  for (const auto& c : comps) canons.push_back(detail::component_canonizer(c).run());

  std::vector<std::size_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(canons[a].left, canons[a].right, canons[a].edges) <
           std::tie(canons[b].left, canons[b].right, canons[b].edges);
  });

  canonical_form f;
  f.left_count = g.left_count();
  f.right_count = g.right_count();
  f.left_relabeling.assign(g.left_count(), 0);
  f.right_relabeling.assign(g.right_count(), 0);
  const auto nl = static_cast<node_id>(g.left_count());
  node_id left_off = 0;
  node_id right_off = 0;
  for (std::size_t k : order) {
    const auto& c = comps[k];
    const auto& cc = canons[k];
    for (const edge& e : cc.edges) f.edges.push_back({e.left + left_off, e.right + right_off});
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      node_id v = c.members[i];
      if (v < nl) {
        f.left_relabeling[v] = left_off + cc.order[i];
      } else {
        f.right_relabeling[v - nl] = right_off + cc.order[i];
      }
    }
    left_off += static_cast<node_id>(c.left);
    right_off += static_cast<node_id>(c.right);
  }
  std::sort(f.edges.begin(), f.edges.end());
  return f;
}

inline bool isomorphic(const bipartite_graph& a, const bipartite_graph& b) {
  if (a.left_count() != b.left_count() || a.right_count() != b.right_count() ||
      a.edge_count() != b.edge_count()) {
    return false;
  }
  return canonical_form_of(a) == canonical_form_of(b);
}

/// Relabeling-invariant fingerprint (sorted per-node butterfly counts on both
/// sides). Unequal profiles rule out isomorphism without a canonical search.
inline std::vector<std::uint64_t> butterfly_profile(const bipartite_graph& g) {
  std::vector<std::uint64_t> left(g.left_count());
  std::vector<std::uint64_t> right(g.right_count());
  for (node_id u = 0; u < g.left_count(); ++u) left[u] = butterflies_node(g, u, side::left);
  for (node_id a = 0; a < g.right_count(); ++a) right[a] = butterflies_node(g, a, side::right);
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  left.push_back(~std::uint64_t{0});
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

/// Applies id maps (old -> new) to both sides.
inline bipartite_graph relabel(const bipartite_graph& g, std::span<const node_id> left_map,
                               std::span<const node_id> right_map) {
  std::vector<edge> edges;
  edges.reserve(g.edge_count());
  for (const edge& e : g.edges()) edges.push_back({left_map[e.left], right_map[e.right]});
  return bipartite_graph::build(g.left_count(), g.right_count(), edges);
}

}  // namespace bfly
