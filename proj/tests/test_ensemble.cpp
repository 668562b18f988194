#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "bfly/ensemble.hpp"
#include "bfly/json_io.hpp"
#include "support.hpp"

using namespace bfly;

namespace {

ensemble_spec spec_of(std::vector<std::size_t> l, std::vector<std::size_t> r,
                      std::optional<std::uint64_t> target = std::nullopt) {
  return {{std::move(l), std::move(r)}, target};
}

}  // namespace

TEST_CASE("enumerate_ensemble on tiny specs") {
  CHECK(enumerate_ensemble(spec_of({1, 1}, {1, 1})).size() == 2);
  CHECK(enumerate_ensemble(spec_of({2, 1}, {2, 1})).size() == 1);
  auto k22 = enumerate_ensemble(spec_of({2, 2}, {2, 2}, 1));
  REQUIRE(k22.size() == 1);
  CHECK(k22.members[0] == bipartite_graph::build(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  CHECK(enumerate_ensemble(spec_of({2, 2}, {2, 2}, 0)).size() == 0);

  try {
    enumerate_ensemble(spec_of({3}, {1, 1}));
    FAIL("expected InfeasibleDegrees");
  } catch (const error& e) {
    CHECK(e.code() == errc::infeasible_degrees);
  }
}

TEST_CASE("realization_exists") {
  CHECK(realization_exists({{2, 2}, {2, 2}}));
  CHECK_FALSE(realization_exists({{3}, {1, 1}}));
  CHECK_FALSE(realization_exists({{2, 2}, {4}}));
  CHECK(realization_exists({{}, {}}));
  CHECK(realization_exists({{0, 0}, {0}}));
}

TEST_CASE("limits report the partial count") {
  enumeration_limits lim;
  lim.members = 5;
  try {
    enumerate_ensemble(spec_of({1, 1, 1}, {1, 1, 1}), lim);  // 6 members
    FAIL("expected LimitExceeded");
  } catch (const error& e) {
    CHECK(e.code() == errc::limit_exceeded);
    CHECK(e.detail() >= 5);
  }
  lim.members = 6;
  CHECK(enumerate_ensemble(spec_of({1, 1, 1}, {1, 1, 1}), lim).size() == 6);
}

TEST_CASE("members are distinct, sorted and match the spec") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    auto g = test::random_graph(rng, 2 + i % 4, 2 + (i / 2) % 4, 0.45);
    auto d = degree_sequences(g);
    const auto beta = butterfly_count(g);
    for (bool constrained : {false, true}) {
      auto cat = enumerate_ensemble({d, constrained ? std::optional<std::uint64_t>(beta) : std::nullopt});
      std::set<std::vector<edge>> seen;
      std::vector<edge> prev;
      bool has_g = false;
      for (std::size_t k = 0; k < cat.size(); ++k) {
        const auto& m = cat.members[k];
        std::vector<edge> e(m.edges().begin(), m.edges().end());
        REQUIRE(bipartite_graph::build(m.left_count(), m.right_count(), e) == m);
        REQUIRE(degree_sequences(m) == d);
        REQUIRE(cat.butterflies[k] == butterfly_count_oracle(m));
        if (constrained) REQUIRE(cat.butterflies[k] == beta);
        REQUIRE(seen.insert(e).second);
        if (k > 0) REQUIRE(prev < e);
        prev = e;
        has_g = has_g || m == g;
      }
      REQUIRE(has_g);
    }
  }
}

TEST_CASE("unconstrained counts match the margin-matrix oracle") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 60; ++i) {
    const std::size_t nl = 1 + i % 6;
    const std::size_t nr = 1 + (i * 7 / 3) % 6;
    auto g = test::random_graph(rng, nl, nr, 0.5);
    auto d = degree_sequences(g);
    REQUIRE(enumerate_ensemble({d, std::nullopt}).size() == test::count_margin_matrices(d.left, d.right));
  }
  // a fixed bigger instance near the 8+8 bound
  std::vector<std::size_t> l = {2, 2, 2, 2, 1, 1, 1, 1};
  std::vector<std::size_t> r = {2, 2, 2, 2, 1, 1, 1, 1};
  CHECK(enumerate_ensemble(spec_of(l, r)).size() == test::count_margin_matrices(l, r));
}

TEST_CASE("count does not depend on the order of the degree vectors") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 30; ++i) {
    auto g = test::random_graph(rng, 5);
    auto d = degree_sequences(g);
    auto shuffled = d;
    std::shuffle(shuffled.left.begin(), shuffled.left.end(), rng);
    std::shuffle(shuffled.right.begin(), shuffled.right.end(), rng);
    const auto beta = butterfly_count(g);
    REQUIRE(enumerate_ensemble({d, beta}).size() == enumerate_ensemble({shuffled, beta}).size());
    REQUIRE(enumerate_ensemble({d, std::nullopt}).butterfly_histogram() ==
            enumerate_ensemble({shuffled, std::nullopt}).butterfly_histogram());
  }
}

TEST_CASE("catalog index json") {
  auto cat = enumerate_ensemble(spec_of({2, 1, 1}, {2, 1, 1}));
  auto j = catalog_index(cat);
  CHECK(j["schema"] == "bfly/1");
  CHECK(j["count"] == cat.size());
  CHECK(j["butterfly_target"].is_null());
  std::size_t total = 0;
  for (auto& [k, v] : j["butterfly_histogram"].items()) total += v.get<std::size_t>();
  CHECK(total == cat.size());
}
