#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "fragmenta/paintbox.hpp"
#include "fragmenta/stats.hpp"
#include "support/oracles.hpp"
#include "support/retry.hpp"

using namespace frag;

TEST_CASE("exact composition law", "[paintbox]") {
  SECTION("single component puts all mass on the one-block composition") {
    auto law = exact_composition_law(OpenSet::full(), 3);
    REQUIRE(law.size() == 1);
    REQUIRE(law.at(Composition::one_block(3)) == Catch::Approx(1.0));
  }
  SECTION("half split, n = 2") {
    OpenSet u({Interval(0.0, 0.5), Interval(0.5, 1.0)});
    auto law = exact_composition_law(u, 2);
    REQUIRE(law.at(Composition(2, {{1, 2}})) == Catch::Approx(0.5));
    REQUIRE(law.at(Composition(2, {{1}, {2}})) == Catch::Approx(0.25));
    REQUIRE(law.at(Composition(2, {{2}, {1}})) == Catch::Approx(0.25));
  }
  SECTION("third split, n = 2") {
    OpenSet u({Interval(0.0, 1.0 / 3.0), Interval(1.0 / 3.0, 1.0)});
    auto law = exact_composition_law(u, 2);
    REQUIRE(law.at(Composition(2, {{1, 2}})) == Catch::Approx(5.0 / 9.0));
    REQUIRE(law.at(Composition(2, {{1}, {2}})) == Catch::Approx(2.0 / 9.0));
    REQUIRE(law.at(Composition(2, {{2}, {1}})) == Catch::Approx(2.0 / 9.0));
  }
  SECTION("empty set gives the order statistics of dust points") {
    auto law = exact_composition_law(OpenSet::empty(), 2);
    REQUIRE(law.at(Composition(2, {{1}, {2}})) == Catch::Approx(0.5));
    REQUIRE(law.at(Composition(2, {{2}, {1}})) == Catch::Approx(0.5));
    REQUIRE(law.find(Composition(2, {{1, 2}})) == law.end());
  }
  SECTION("law sums to one") {
    OpenSet u({Interval(0.05, 0.3), Interval(0.4, 0.65), Interval(0.7, 0.9)});
    for (int n = 1; n <= 4; ++n) {
      auto law = exact_composition_law(u, n);
      double total = 0.0;
      for (const auto& [gamma, p] : law) total += p;
      REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
    }
  }
  SECTION("agrees with the 2-d grid oracle on a set with dust") {
    OpenSet u({Interval(0.1, 0.35), Interval(0.5, 0.8)});
    auto law = exact_composition_law(u, 2);
    auto grid = oracles::grid_paintbox_law_n2(u, 2000);
    for (const auto& [gamma, p] : law) {
      REQUIRE(p == Catch::Approx(grid[gamma]).margin(2e-3));
    }
  }
  REQUIRE_THROWS_AS(exact_composition_law(OpenSet::full(), 6), std::invalid_argument);
}

TEST_CASE("paintbox sampling matches the exact law", "[paintbox][slow]") {
  OpenSet u({Interval(0.0, 0.2), Interval(0.2, 0.5), Interval(0.6, 1.0)});
  auto check = [&](std::uint64_t seed) {
    const int n = 3;
    const int reps = 100000;
    auto law = exact_composition_law(u, n);
    std::map<Composition, int> counts;
    RngStream rng(seed, 1, StreamTag::paintbox);
    for (int i = 0; i < reps; ++i) {
      counts[sample_composition(u, n, rng).composition] += 1;
    }
    // every composition within 3 binomial standard errors
    for (const auto& [gamma, p] : law) {
      double se = std::sqrt(p * (1.0 - p) / reps);
      double freq = counts[gamma] / static_cast<double>(reps);
      if (std::fabs(freq - p) > 3.0 * se + 1e-12) return false;
    }
    return true;
  };
  REQUIRE(passes_with_retry(check));
}

TEST_CASE("paintbox sample is exchangeable", "[paintbox][slow]") {
  OpenSet u({Interval(0.0, 0.35), Interval(0.35, 0.75)});
  auto all3 = enumerate_compositions(3);
  std::map<Composition, std::size_t> index;
  for (std::size_t i = 0; i < all3.size(); ++i) index[all3[i]] = i;
  auto check = [&](std::uint64_t seed) {
    const int reps = 100000;
    const std::vector<int> sigma{3, 1, 2};
    std::vector<double> plain(all3.size(), 0.0), permuted(all3.size(), 0.0);
    RngStream rng(seed, 2, StreamTag::paintbox);
    for (int i = 0; i < 2 * reps; ++i) {
      Composition gamma = sample_composition(u, 3, rng).composition;
      if (i < reps) {
        plain[index[gamma]] += 1.0;
      } else {
        permuted[index[apply_permutation(sigma, gamma)]] += 1.0;
      }
    }
    return chi_square_two_sample(plain, permuted).p_value > 0.01;
  };
  REQUIRE(passes_with_retry(check));
}

TEST_CASE("empirical open set", "[paintbox]") {
  REQUIRE(empirical_open_set(Composition::one_block(5)) == OpenSet::full());

  OpenSet expected({Interval(0.0, 1.0 / 3.0), Interval(1.0 / 3.0, 1.0)});
  REQUIRE(empirical_open_set(Composition(3, {{2}, {1, 3}})) == expected);

  OpenSet quarters({Interval(0.0, 0.25), Interval(0.25, 0.5), Interval(0.5, 0.75),
                    Interval(0.75, 1.0)});
  REQUIRE(empirical_open_set(Composition::singletons(4)) == quarters);
}

TEST_CASE("empirical open sets converge to the paintbox", "[paintbox][slow]") {
  // quantified version of the a.s. convergence of U_n
  OpenSet u({Interval(0.0, 0.2), Interval(0.2, 0.5), Interval(0.5, 1.0)});
  auto check = [&](std::uint64_t seed) {
    const int n = 10000;
    const int reps = 100;
    std::vector<double> dists(reps);
    parallel_for(reps, 2, [&](std::size_t r) {
      RngStream rng(seed, r, StreamTag::paintbox);
      auto sample = sample_composition(u, n, rng);
      dists[r] = distance(empirical_open_set(sample.composition), u);
    });
    std::sort(dists.begin(), dists.end());
    double median = dists[reps / 2];
    return median <= 0.02;
  };
  REQUIRE(passes_with_retry(check));
}

TEST_CASE("uniform order lift", "[paintbox]") {
  RngStream rng(31, 0);
  SECTION("single mass") {
    REQUIRE(uniform_order_lift(MassPartition({1.0}, 0.0), rng) == OpenSet::full());
  }
  SECTION("lengths are preserved") {
    MassPartition s({0.5, 0.25, 0.25}, 0.0);
    for (int i = 0; i < 50; ++i) {
      auto lifted = uniform_order_lift(s, rng);
      REQUIRE(ranked_lengths(lifted) == s);  // dyadic masses: exact float equality
    }
    MassPartition messy({0.41, 0.33, 0.26}, 0.0);
    for (int i = 0; i < 50; ++i) {
      auto lifted = ranked_lengths(uniform_order_lift(messy, rng));
      for (std::size_t j = 0; j < 3; ++j) {
        REQUIRE(lifted.masses()[j] == Catch::Approx(messy.masses()[j]).margin(1e-15));
      }
    }
  }
  SECTION("dust is rejected") {
    REQUIRE_THROWS_AS(uniform_order_lift(MassPartition({0.5}, 0.5), rng),
                      std::invalid_argument);
  }
}

TEST_CASE("uniform order lift hits each arrangement equally", "[paintbox][slow]") {
  // masses 0.5/0.3/0.2: all 6 left-to-right orders should be uniform
  auto check = [&](std::uint64_t seed) {
    MassPartition s({0.5, 0.3, 0.2}, 0.0);
    const int reps = 100000;
    std::map<std::vector<int>, int> counts;
    RngStream rng(seed, 3, StreamTag::paintbox);
    for (int i = 0; i < reps; ++i) {
      auto lifted = uniform_order_lift(s, rng);
      std::vector<int> order;
      for (const auto& iv : lifted.components()) {
        double len = iv.length();
        order.push_back(len > 0.45 ? 0 : (len > 0.25 ? 1 : 2));
      }
      counts[order] += 1;
    }
    if (counts.size() != 6) return false;
    std::vector<double> observed, expected;
    for (const auto& [order, c] : counts) {
      observed.push_back(c);
      expected.push_back(reps / 6.0);
    }
    return chi_square(observed, expected).p_value > 0.01;
  };
  REQUIRE(passes_with_retry(check));
}
