#ifndef FRAGMENTA_PAINTBOX_HPP
#define FRAGMENTA_PAINTBOX_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fragmenta/composition.hpp"
#include "fragmenta/interval_set.hpp"
#include "fragmenta/rng.hpp"

namespace frag {

struct PaintboxSample {
  Composition composition;
  std::vector<double> uniforms;
};

/// Builds the composition induced by a fixed open set and fixed point
/// positions: i ~ j iff the points share a component, otherwise order by
/// position. Points in the complement become singletons.
inline Composition composition_from_points(const OpenSet& u,
                                           const std::vector<double>& points) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw std::invalid_argument("composition_from_points: need n >= 1");
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&points](int a, int b) { return points[a] < points[b]; });
  std::vector<std::vector<int>> blocks;
  int prev_component = -2;  // -1 marks dust; -2 marks "no previous point"
  for (int idx : order) {
    int comp = u.component_containing(points[static_cast<std::size_t>(idx)]);
    if (comp >= 0 && comp == prev_component) {
      blocks.back().push_back(idx + 1);
    } else {
      blocks.push_back({idx + 1});
    }
    prev_component = comp;
  }
  for (auto& block : blocks) std::sort(block.begin(), block.end());
  return Composition(n, std::move(blocks));
}

/// Paintbox draw: n iid uniforms classified by the components of U.
inline PaintboxSample sample_composition(const OpenSet& u, int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_composition: need n >= 1");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) x = rng.uniform();
  Composition gamma = composition_from_points(u, xs);
  return PaintboxSample{std::move(gamma), std::move(xs)};
}

/// Exact law of the paintbox composition on compositions of {1..n}, n <= 5.
/// Enumerates assignments of blocks to components and to complement gaps;
/// r dust points falling in one gap of length d in a prescribed relative
/// order contribute d^r / r!.
inline std::map<Composition, double> exact_composition_law(const OpenSet& u, int n) {
  if (n < 1 || n > 5) {
    throw std::invalid_argument("exact_composition_law: need 1 <= n <= 5");
  }
  const auto& comps = u.components();
  const std::size_t k = comps.size();
  std::vector<double> comp_len(k);
  for (std::size_t c = 0; c < k; ++c) comp_len[c] = comps[c].length();
  // gap g sits before component g; gap k is after the last component
  std::vector<double> gap_len(k + 1, 0.0);
  double cursor = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    gap_len[c] = comps[c].left - cursor;
    cursor = comps[c].right;
  }
  gap_len[k] = 1.0 - cursor;

  std::map<Composition, double> law;
  for (const auto& gamma : enumerate_compositions(n)) {
    const auto& blocks = gamma.blocks();
    const std::size_t m = blocks.size();
    // Slot s in [0, 2k]: even s = gap s/2, odd s = component (s-1)/2.
    std::function<double(std::size_t, std::size_t)> prob =
        [&](std::size_t j, std::size_t slot_from) -> double {
      if (j == m) return 1.0;
      double total = 0.0;
      for (std::size_t s = slot_from; s <= 2 * k; ++s) {
        if (s % 2 == 1) {
          std::size_t c = (s - 1) / 2;
          if (comp_len[c] <= 0.0) continue;
          total += std::pow(comp_len[c], static_cast<double>(blocks[j].size())) *
                   prob(j + 1, s + 1);
        } else {
          std::size_t g = s / 2;
          if (gap_len[g] <= 0.0) continue;
          // consume a maximal run of consecutive singleton blocks in this gap
          double gap_pow = 1.0;
          double factorial = 1.0;
          for (std::size_t r = 1; j + r <= m && blocks[j + r - 1].size() == 1; ++r) {
            gap_pow *= gap_len[g];
            factorial *= static_cast<double>(r);
            total += (gap_pow / factorial) * prob(j + r, s + 1);
          }
        }
      }
      return total;
    };
    double p = prob(0, 0);
    if (p > 0.0) law[gamma] = p;
  }
  return law;
}

/// Gnedin's empirical open set: block sizes n_1..n_k in gamma's order give
/// the union of ](N_{i-1})/n, N_i/n[ at the partial sums N_i.
inline OpenSet empirical_open_set(const Composition& gamma) {
  const double n = static_cast<double>(gamma.n());
  std::vector<Interval> parts;
  parts.reserve(gamma.block_count());
  long cum = 0;
  for (const auto& block : gamma.blocks()) {
    long next = cum + static_cast<long>(block.size());
    parts.emplace_back(static_cast<double>(cum) / n, static_cast<double>(next) / n);
    cum = next;
  }
  return OpenSet(std::move(parts));
}

/// Places intervals of the given lengths in uniform random order: one iid
/// uniform score per mass, concatenated in score order. Requires a dust-free
/// partition (the lift is only defined when the masses sum to 1).
inline OpenSet uniform_order_lift(const MassPartition& s, RngStream& rng) {
  if (s.dust() > 1e-9) {
    throw std::invalid_argument("uniform_order_lift: partition has dust");
  }
  if (s.count() == 0) throw std::invalid_argument("uniform_order_lift: no masses");
  const auto& masses = s.masses();
  std::vector<std::pair<double, double>> scored;  // (score, mass)
  scored.reserve(masses.size());
  for (double m : masses) scored.emplace_back(rng.uniform(), m);
  std::sort(scored.begin(), scored.end());
  std::vector<Interval> parts;
  parts.reserve(scored.size());
  double cursor = 0.0;
  for (const auto& [score, mass] : scored) {
    double next = std::min(cursor + mass, 1.0);
    parts.emplace_back(cursor, next);
    cursor = next;
  }
  return OpenSet(std::move(parts));
}

}  // namespace frag

#endif  // FRAGMENTA_PAINTBOX_HPP
