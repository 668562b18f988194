#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfly/canonical.hpp"
#include "bfly/graph.hpp"

namespace bfly {

/// Output of the two-graph construction for parameters (s, t).
struct construction_pair {
  std::size_t s = 0;
  std::size_t t = 0;
  std::size_t n = 0;    // C(s,2) + C(t,2)
  std::size_t add = 0;  // padding nodes on each side
  bipartite_graph g_begin;
  bipartite_graph g_end;
};

/// Builds (G_b, G_e): same degree sequences, C(n+1, 2) butterflies each, but
/// in G_b the butterflies spread over three left pairs while in G_e they all
/// sit on (x5, x6). Node x_i is left id i-1 and y_j is right id j-1.
inline construction_pair construct_pair(std::size_t s, std::size_t t) {
  if (s == t || s < 2 || t < 2) {
    throw error(errc::invalid_params, "need s != t and s, t >= 2 (got s=" + std::to_string(s) +
                                          ", t=" + std::to_string(t) + ")");
  }
  const std::size_t n = choose2(s) + choose2(t);
  std::size_t add = s + t - 2;
  if (s % 2 == 0) ++add;
  if (t % 2 == 0) ++add;
  const std::size_t left_count = 7 + add;
  const std::size_t right_count = s + t + n + 2 + add;

  // 1-based names, as in the construction's description.
  auto xy = [](std::size_t x, std::size_t y) {
    return edge{static_cast<node_id>(x - 1), static_cast<node_id>(y - 1)};
  };

  std::vector<edge> eb;
  for (std::size_t l = 1; l <= s; ++l) {  // butterflies between x1 and x2
    eb.push_back(xy(1, l));
    eb.push_back(xy(2, l));
  }
  for (std::size_t l = 1; l <= t; ++l) {  // between x3 and x4
    eb.push_back(xy(3, s + l));
    eb.push_back(xy(4, s + l));
  }
  for (std::size_t l = 1; l <= n; ++l) {  // between x5 and x6
    eb.push_back(xy(5, s + t + l));
    eb.push_back(xy(6, s + t + l));
  }
  eb.push_back(xy(5, s + t + n + 1));
  eb.push_back(xy(6, s + t + n + 2));
  eb.push_back(xy(7, s + t + n + 1));
  for (std::size_t l = 1; l <= add; ++l) eb.push_back(xy(7 + l, s + t + n + 2 + l));

  std::vector<edge> ee;
  for (std::size_t l = 1; l <= n + 1; ++l) {
    ee.push_back(xy(5, s + t + l));
    ee.push_back(xy(6, s + t + l));
  }
  // x1,x2 share only y1; x3,x4 share only y_{s+1}
  ee.push_back(xy(1, 1));
  ee.push_back(xy(2, 1));
  ee.push_back(xy(3, s + 1));
  ee.push_back(xy(4, s + 1));
  const std::size_t h1 = (s - 1) / 2;
  const std::size_t h2 = (t - 1) / 2;
  for (std::size_t l = 1; l <= h1; ++l) {
    ee.push_back(xy(1, 1 + l));
    ee.push_back(xy(2, 1 + h1 + l));
  }
  for (std::size_t l = 1; l <= h2; ++l) {
    ee.push_back(xy(3, s + 1 + l));
    ee.push_back(xy(4, s + 1 + h2 + l));
  }
  const std::size_t a1 = s - (1 + h1);
  const std::size_t a2 = t - (1 + h2);
  const std::size_t base = s + t + n + 2;
  for (std::size_t l = 1; l <= a1; ++l) {
    ee.push_back(xy(1, base + l));
    ee.push_back(xy(2, base + a1 + l));
  }
  for (std::size_t l = 1; l <= a2; ++l) {
    ee.push_back(xy(3, base + 2 * a1 + l));
    ee.push_back(xy(4, base + 2 * a1 + a2 + l));
  }
  ee.push_back(xy(7, s + t + n + 2));
  // first s+t right nodes back to degree 2
  for (std::size_t l = 1; l <= s - 1; ++l) ee.push_back(xy(7 + l, 1 + l));
  for (std::size_t l = 1; l <= t - 1; ++l) ee.push_back(xy(7 + s - 1 + l, s + 1 + l));
  std::size_t extra = 0;
  if (s % 2 == 0) {
    ee.push_back(xy(7 + s + t - 1, s));
    ++extra;
  }
  if (t % 2 == 0) ee.push_back(xy(7 + s + t - 1 + extra, s + t));

  construction_pair cp;
  cp.s = s;
  cp.t = t;
  cp.n = n;
  cp.add = add;
  cp.g_begin = bipartite_graph::build(left_count, right_count, eb);
  cp.g_end = bipartite_graph::build(left_count, right_count, ee);
  return cp;
}

struct property_check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct construction_report {
  std::size_t s = 0;
  std::size_t t = 0;
  std::size_t n = 0;
  std::size_t add = 0;
  std::size_t text_padding = 0;  // ((s+1) mod 2) + ((t+1) mod 2)
  std::uint64_t butterflies_begin = 0;
  std::uint64_t butterflies_end = 0;
  std::uint64_t butterflies_expected = 0;
  std::vector<property_check> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Checks the node counts, degree roles, butterfly totals, the shared
/// neighborhoods of (x1,x2), (x3,x4), (x5,x6), and non-isomorphism.
inline construction_report verify_construction(const construction_pair& cp) {
  construction_report rep;
  rep.s = cp.s;
  rep.t = cp.t;
  rep.n = cp.n;
  rep.add = cp.add;
  rep.text_padding = (cp.s + 1) % 2 + (cp.t + 1) % 2;
  const auto& gb = cp.g_begin;
  const auto& ge = cp.g_end;
  const std::size_t s = cp.s, t = cp.t, n = cp.n;

  auto check = [&rep](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    const std::size_t want_l = 7 + cp.add;
    const std::size_t want_r = s + t + n + 2 + cp.add;
    const bool ok = gb.left_count() == want_l && ge.left_count() == want_l &&
                    gb.right_count() == want_r && ge.right_count() == want_r;
    check("P1_node_counts", ok,
          "left " + std::to_string(gb.left_count()) + "/" + std::to_string(want_l) + ", right " +
              std::to_string(gb.right_count()) + "/" + std::to_string(want_r));
  }

  const auto db = degree_sequences(gb);
  const auto de = degree_sequences(ge);
  {
    bool roles = db.left.size() >= 7 && db.right.size() >= s + t + n + 1;
    if (roles) {
      for (std::size_t i = 0; i < db.left.size(); ++i) {
        std::size_t want = 1;
        if (i < 2) want = s;
        else if (i < 4) want = t;
        else if (i < 6) want = n + 1;
        roles = roles && db.left[i] == want;
      }
      for (std::size_t j = 0; j < db.right.size(); ++j) {
        roles = roles && db.right[j] == (j < s + t + n + 1 ? 2u : 1u);
      }
    }
    check("P2_degrees", roles && db == de,
          db == de ? "indexed degree sequences equal" : "degree sequences differ");
  }

  const auto bb = butterfly_count(gb);
  const auto be = butterfly_count(ge);
  rep.butterflies_begin = bb;
  rep.butterflies_end = be;
  rep.butterflies_expected = n + choose2(n);
  check("P3_butterflies", bb == rep.butterflies_expected && be == rep.butterflies_expected,
        std::to_string(bb) + "/" + std::to_string(be) + " vs " +
            std::to_string(rep.butterflies_expected));

  auto shared = [](const bipartite_graph& g, node_id u, node_id v) -> std::size_t {
    return u < g.left_count() && v < g.left_count() ? shared_neighbors(g, u, v) : 0;
  };
  {
    const auto sh = shared(ge, 4, 5);
    const bool all_on_pair = ge.left_count() > 5 && butterflies_pair(ge, 4, 5) == be;
    check("P4_end_concentrated", sh == n + 1 && all_on_pair,
          "shared(x5,x6)=" + std::to_string(sh) + (all_on_pair ? "" : ", butterflies elsewhere"));
  }
  {
    const auto s56 = shared(gb, 4, 5);
    const auto s12 = shared(gb, 0, 1);
    const auto s34 = shared(gb, 2, 3);
    const bool ok = s56 == n && s12 == s && s34 == t &&
                    (gb.left_count() > 5 && butterflies_pair(gb, 4, 5) < bb);
    check("P5_begin_spread", ok,
          "shared(x5,x6)=" + std::to_string(s56) + ", (x1,x2)=" + std::to_string(s12) +
              ", (x3,x4)=" + std::to_string(s34));
  }
  check("non_isomorphic", !isomorphic(gb, ge), "");
  return rep;
}

/// Lower bound 2(s-1) on the largest swap needed to connect the pair built
/// with parameter s, where s is the larger of the two parameters.
constexpr std::size_t min_qbar_for(std::size_t s) { return s < 1 ? 0 : 2 * (s - 1); }

}  // namespace bfly
