#include <catch2/catch_amalgamated.hpp>

#include "fragmenta/interval_set.hpp"
#include "fragmenta/rng.hpp"
#include "support/oracles.hpp"

using namespace frag;

namespace {

OpenSet random_open_set(RngStream& rng, int max_components = 4) {
  int k = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(max_components)));
  std::vector<double> cuts;
  for (int i = 0; i < 2 * k; ++i) cuts.push_back(rng.uniform());
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> parts;
  for (int i = 0; i < k; ++i) {
    double l = cuts[2 * i], r = cuts[2 * i + 1];
    if (r - l > 1e-6) parts.emplace_back(l, r);
  }
  return OpenSet::from_intervals(parts);
}

}  // namespace

TEST_CASE("ranked lengths", "[interval]") {
  SECTION("full interval") {
    auto mp = ranked_lengths(OpenSet::full());
    REQUIRE(mp.masses() == std::vector<double>{1.0});
    REQUIRE(mp.dust() == 0.0);
  }
  SECTION("two components with dust") {
    OpenSet u({Interval(0.0, 0.3), Interval(0.5, 1.0)});
    auto mp = ranked_lengths(u);
    REQUIRE(mp.masses().size() == 2);
    REQUIRE(mp.masses()[0] == Catch::Approx(0.5));
    REQUIRE(mp.masses()[1] == Catch::Approx(0.3));
    REQUIRE(mp.dust() == Catch::Approx(0.2));
  }
  SECTION("empty set is all dust") {
    auto mp = ranked_lengths(OpenSet::empty());
    REQUIRE(mp.masses().empty());
    REQUIRE(mp.dust() == 1.0);
  }
}

TEST_CASE("distance basics", "[interval]") {
  OpenSet full = OpenSet::full();
  OpenSet empty = OpenSet::empty();
  OpenSet half({Interval(0.0, 0.5)});

  REQUIRE(distance(full, full) == 0.0);
  REQUIRE(distance(full, empty) == Catch::Approx(0.5));
  REQUIRE(distance(half, full) == Catch::Approx(0.5));

  SECTION("matches the dense-grid oracle") {
    REQUIRE(distance(full, empty) ==
            Catch::Approx(oracles::dense_grid_distance(full, empty)).margin(1e-5));
    REQUIRE(distance(half, full) ==
            Catch::Approx(oracles::dense_grid_distance(half, full)).margin(1e-5));
    RngStream rng(11, 0);
    for (int i = 0; i < 20; ++i) {
      OpenSet u = random_open_set(rng);
      OpenSet v = random_open_set(rng);
      REQUIRE(distance(u, v) ==
              Catch::Approx(oracles::dense_grid_distance(u, v)).margin(2e-5));
    }
  }
}

TEST_CASE("distance is a pseudometric", "[interval]") {
  RngStream rng(12, 0);
  for (int i = 0; i < 200; ++i) {
    OpenSet u = random_open_set(rng);
    OpenSet v = random_open_set(rng);
    OpenSet w = random_open_set(rng);
    double duv = distance(u, v);
    REQUIRE(duv == distance(v, u));
    REQUIRE(duv <= distance(u, w) + distance(w, v) + 1e-12);
    REQUIRE(distance(u, u) == 0.0);
  }
}

TEST_CASE("distance separates canonical forms", "[interval]") {
  RngStream rng(13, 0);
  for (int i = 0; i < 100; ++i) {
    OpenSet u = random_open_set(rng);
    OpenSet v = random_open_set(rng);
    bool same = u == v;
    bool zero = distance(u, v) == 0.0;
    REQUIRE(same == zero);
  }
  // touching components are genuinely distinct from the merged interval
  OpenSet split({Interval(0.0, 0.5), Interval(0.5, 1.0)});
  REQUIRE(distance(split, OpenSet::full()) > 0.0);
}

TEST_CASE("embed", "[interval]") {
  OpenSet v({Interval(0.0, 0.5)});
  SECTION("identity map") {
    REQUIRE(embed(Interval(0.0, 1.0), v) == v);
  }
  SECTION("affine image") {
    OpenSet got = embed(Interval(0.2, 0.6), v);
    REQUIRE(got.count() == 1);
    REQUIRE(got.components()[0].left == Catch::Approx(0.2));
    REQUIRE(got.components()[0].right == Catch::Approx(0.4));
  }
  SECTION("touching components stay distinct") {
    OpenSet u({Interval(0.0, 0.5), Interval(0.5, 1.0)});
    OpenSet got = embed(Interval(0.2, 0.6), u);
    REQUIRE(got.count() == 2);
    REQUIRE(got.components()[0].left == Catch::Approx(0.2));
    REQUIRE(got.components()[0].right == Catch::Approx(0.4));
    REQUIRE(got.components()[1].left == Catch::Approx(0.4));
    REQUIRE(got.components()[1].right == Catch::Approx(0.6));
  }
  SECTION("ranked lengths scale by the interval length") {
    RngStream rng(14, 0);
    for (int i = 0; i < 100; ++i) {
      OpenSet u = random_open_set(rng);
      double a = 0.3 * rng.uniform();
      double b = a + 0.1 + 0.5 * rng.uniform();
      Interval target(a, b);
      auto scaled = ranked_lengths(embed(target, u));
      auto base = ranked_lengths(u);
      REQUIRE(scaled.masses().size() == base.masses().size());
      for (std::size_t j = 0; j < base.masses().size(); ++j) {
        REQUIRE(scaled.masses()[j] ==
                Catch::Approx(target.length() * base.masses()[j]).margin(1e-12));
      }
    }
  }
}

TEST_CASE("nestedness", "[interval]") {
  OpenSet u({Interval(0.2, 0.4)});
  OpenSet v({Interval(0.0, 0.5)});
  OpenSet w({Interval(0.4, 0.6)});
  REQUIRE(is_nested(u, u));
  REQUIRE(is_nested(u, v));
  REQUIRE_FALSE(is_nested(w, v));

  SECTION("partial order on random sets") {
    RngStream rng(15, 0);
    for (int i = 0; i < 300; ++i) {
      OpenSet a = random_open_set(rng);
      OpenSet b = random_open_set(rng);
      OpenSet c = random_open_set(rng);
      REQUIRE(is_nested(a, a));
      if (is_nested(a, b) && is_nested(b, a)) REQUIRE(a == b);
      if (is_nested(a, b) && is_nested(b, c)) REQUIRE(is_nested(a, c));
    }
  }
  SECTION("nested sets via embedding") {
    RngStream rng(16, 0);
    for (int i = 0; i < 50; ++i) {
      OpenSet a = random_open_set(rng);
      REQUIRE(is_nested(embed(Interval(0.1, 0.9), a), OpenSet::full()));
    }
  }
}

TEST_CASE("open set validation", "[interval]") {
  REQUIRE_THROWS_AS(Interval(0.5, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(Interval(-0.1, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(OpenSet({Interval(0.0, 0.6), Interval(0.5, 1.0)}),
                    std::invalid_argument);
  // sub-floor components are dropped into dust
  OpenSet u = OpenSet::from_intervals(
      {Interval(0.0, 0.5), Interval(0.6, 0.6 + 1e-13)});
  REQUIRE(u.count() == 1);
}

TEST_CASE("mass partition validation", "[interval]") {
  REQUIRE_THROWS_AS(MassPartition({0.3, 0.5}, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(MassPartition({0.8, 0.5}, 0.0), std::invalid_argument);
  MassPartition ok({0.5, 0.3}, 0.2);
  REQUIRE(ok.sum_of_squares() == Catch::Approx(0.34));
  REQUIRE(ok.largest() == 0.5);
}
