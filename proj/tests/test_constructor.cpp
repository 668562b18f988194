#include <catch2/catch_amalgamated.hpp>

#include "bfly/constructor.hpp"
#include "bfly/json_io.hpp"
#include "support.hpp"

using namespace bfly;
using test::xy;

namespace {

const property_check* find_check(const construction_report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("construct_pair(2,3) against the hand trace") {
  auto cp = construct_pair(2, 3);
  CHECK(cp.n == 4);
  CHECK(cp.add == 4);
  CHECK(cp.g_begin.left_count() == 11);
  CHECK(cp.g_begin.right_count() == 15);
  CHECK(cp.g_begin.edge_count() == 25);
  CHECK(cp.g_end.edge_count() == 25);
  CHECK(butterfly_count_oracle(cp.g_begin) == 10);
  CHECK(butterfly_count_oracle(cp.g_end) == 10);

  // traced edge lists, 1-based
  std::vector<edge> gb = {xy(1, 1),  xy(2, 1),  xy(1, 2),  xy(2, 2),  xy(3, 3),  xy(4, 3),
                          xy(3, 4),  xy(4, 4),  xy(3, 5),  xy(4, 5),  xy(5, 6),  xy(6, 6),
                          xy(5, 7),  xy(6, 7),  xy(5, 8),  xy(6, 8),  xy(5, 9),  xy(6, 9),
                          xy(5, 10), xy(6, 11), xy(7, 10), xy(8, 12), xy(9, 13), xy(10, 14),
                          xy(11, 15)};
  CHECK(cp.g_begin == bipartite_graph::build(11, 15, gb));
  std::vector<edge> ge = {xy(5, 6),  xy(6, 6),  xy(5, 7),  xy(6, 7),  xy(5, 8),  xy(6, 8),
                          xy(5, 9),  xy(6, 9),  xy(5, 10), xy(6, 10), xy(1, 1),  xy(2, 1),
                          xy(3, 3),  xy(4, 3),  xy(3, 4),  xy(4, 5),  xy(1, 12), xy(2, 13),
                          xy(7, 11), xy(8, 2),  xy(9, 4),  xy(10, 5), xy(11, 2), xy(3, 14),
                          xy(4, 15)};
  CHECK(cp.g_end == bipartite_graph::build(11, 15, ge));
}

TEST_CASE("construct_pair is symmetric in n and rejects bad input") {
  auto cp = construct_pair(3, 2);
  CHECK(cp.n == 4);
  CHECK(butterfly_count(cp.g_begin) == 10);
  CHECK(butterfly_count(cp.g_end) == 10);
  for (auto [s, t] : {std::pair{2, 2}, {1, 3}, {3, 1}, {0, 0}, {5, 5}}) {
    try {
      construct_pair(s, t);
      FAIL("expected InvalidParams");
    } catch (const error& e) {
      CHECK(e.code() == errc::invalid_params);
    }
  }
}

TEST_CASE("verify_construction passes for every small parameter pair") {
  for (std::size_t s = 2; s <= 6; ++s)
    for (std::size_t t = 2; t <= 6; ++t) {
      if (s == t) continue;
      auto cp = construct_pair(s, t);
      auto rep = verify_construction(cp);
      INFO("s=" << s << " t=" << t);
      for (const auto& c : rep.checks) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
      }
      const std::uint64_t n = choose2(s) + choose2(t);
      CHECK(rep.butterflies_expected == n + choose2(n));
      CHECK(rep.butterflies_expected == choose2(n + 1));
      CHECK(butterfly_count_oracle(cp.g_begin) == rep.butterflies_expected);
      CHECK(butterfly_count_oracle(cp.g_end) == rep.butterflies_expected);
      CHECK(cp.add == s + t - 2 + (s % 2 == 0) + (t % 2 == 0));
      CHECK(rep.text_padding == (s + 1) % 2 + (t + 1) % 2);
    }
}

TEST_CASE("construct_pair(4,3) gives n=9 and 45 butterflies") {
  auto cp = construct_pair(4, 3);
  CHECK(cp.n == 9);
  CHECK(butterfly_count_oracle(cp.g_begin) == 45);
  CHECK(butterfly_count_oracle(cp.g_end) == 45);
  CHECK(verify_construction(cp).all_passed());
}

TEST_CASE("butterfly-supporting left pairs") {
  for (std::size_t s = 2; s <= 6; ++s)
    for (std::size_t t = 2; t <= 6; ++t) {
      if (s == t) continue;
      auto cp = construct_pair(s, t);
      const std::size_t n = cp.n;
      const auto& gb = cp.g_begin;
      const auto& ge = cp.g_end;
      for (node_id u = 0; u < gb.left_count(); ++u)
        for (node_id v = u + 1; v < gb.left_count(); ++v) {
          std::uint64_t want_b = 0;
          if (u == 0 && v == 1) want_b = choose2(s);
          if (u == 2 && v == 3) want_b = choose2(t);
          if (u == 4 && v == 5) want_b = choose2(n);
          REQUIRE(butterflies_pair(gb, u, v) == want_b);
          REQUIRE(butterflies_pair(ge, u, v) == (u == 4 && v == 5 ? choose2(n + 1) : 0));
        }
      CHECK(shared_neighbors(gb, 0, 1) == s);
      CHECK(shared_neighbors(gb, 2, 3) == t);
      CHECK(shared_neighbors(gb, 4, 5) == n);
      CHECK(shared_neighbors(ge, 4, 5) == n + 1);
    }
}

TEST_CASE("a mutated pair fails verification") {
  auto cp = construct_pair(2, 3);
  // move one G_e edge of x5 to a padding right node
  std::vector<edge> e(cp.g_end.edges().begin(), cp.g_end.edges().end());
  auto it = std::find(e.begin(), e.end(), xy(5, 6));
  REQUIRE(it != e.end());
  *it = xy(5, 15);
  cp.g_end = bipartite_graph::build(11, 15, e);
  auto rep = verify_construction(cp);
  CHECK_FALSE(rep.all_passed());
  CHECK_FALSE(find_check(rep, "P2_degrees")->passed);

  auto swapped = construct_pair(2, 3);
  swapped.g_end = swapped.g_begin;
  auto rep2 = verify_construction(swapped);
  CHECK_FALSE(find_check(rep2, "non_isomorphic")->passed);
  CHECK_FALSE(find_check(rep2, "P4_end_concentrated")->passed);
}

TEST_CASE("min_qbar_for") {
  CHECK(min_qbar_for(2) == 2);
  CHECK(min_qbar_for(3) == 4);
  CHECK(min_qbar_for(10) == 18);
}

TEST_CASE("construction report json") {
  auto j = to_json(verify_construction(construct_pair(2, 3)));
  CHECK(j["schema"] == "bfly/1");
  CHECK(j["butterflies"]["begin"] == 10);
  CHECK(j["butterflies"]["end"] == 10);
  CHECK(j["add"] == 4);
  CHECK(j["text_padding"] == 1);
  CHECK(j["all_passed"] == true);
}
