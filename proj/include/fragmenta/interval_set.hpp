#ifndef FRAGMENTA_INTERVAL_SET_HPP
#define FRAGMENTA_INTERVAL_SET_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace frag {

/// Default floor below which interval components are dropped into dust.
inline constexpr double kComponentFloor = 1e-12;
inline constexpr double kMassTolerance = 1e-12;

/// Open interval ]left,right[ inside [0,1]; never empty.
struct Interval {
  double left;
  double right;

  Interval(double l, double r) : left(l), right(r) {
    if (!(l < r)) throw std::invalid_argument("Interval: need left < right");
    if (l < 0.0 || r > 1.0) throw std::invalid_argument("Interval: outside [0,1]");
  }

  double length() const { return right - left; }
  bool contains(double x) const { return left < x && x < right; }
  bool operator==(const Interval& other) const = default;
};

/// Nonincreasing fragment masses plus the dust (mass of the complement).
class MassPartition {
 public:
  MassPartition() : dust_(1.0) {}

  MassPartition(std::vector<double> masses, double dust)
      : masses_(std::move(masses)), dust_(dust) {
    double total = dust_;
    double prev = 1.0;
    for (double m : masses_) {
      if (m <= 0.0) throw std::invalid_argument("MassPartition: masses must be > 0");
      if (m > prev + kMassTolerance) {
        throw std::invalid_argument("MassPartition: masses must be nonincreasing");
      }
      prev = m;
      total += m;
    }
    if (dust_ < 0.0) throw std::invalid_argument("MassPartition: dust must be >= 0");
    if (total > 1.0 + kMassTolerance) {
      throw std::invalid_argument("MassPartition: total mass exceeds 1");
    }
  }

  /// Builds from unsorted masses; anything below `floor` is folded into dust.
  static MassPartition from_masses(std::vector<double> masses,
                                   double floor = 0.0) {
    std::vector<double> kept;
    kept.reserve(masses.size());
    double sum = 0.0;
    for (double m : masses) {
      if (m > floor && m > 0.0) {
        kept.push_back(m);
        sum += m;
      }
    }
    std::sort(kept.begin(), kept.end(), std::greater<>());
    double dust = std::max(0.0, 1.0 - sum);
    return MassPartition(std::move(kept), dust);
  }

  const std::vector<double>& masses() const { return masses_; }
  double dust() const { return dust_; }
  std::size_t count() const { return masses_.size(); }
  double largest() const { return masses_.empty() ? 0.0 : masses_.front(); }

  double sum_of_squares() const {
    double s = 0.0;
    for (double m : masses_) s += m * m;
    return s;
  }

  bool operator==(const MassPartition& other) const = default;

 private:
  std::vector<double> masses_;
  double dust_;
};

/// Finite union of disjoint open subintervals of (0,1), sorted by left
/// endpoint. Components may share a boundary point (]0,1/2[ and ]1/2,1[ stay
/// distinct); they are never merged.
class OpenSet {
 public:
  OpenSet() = default;

  explicit OpenSet(std::vector<Interval> components)
      : components_(std::move(components)) {
    for (std::size_t i = 0; i + 1 < components_.size(); ++i) {
      if (!(components_[i].right <= components_[i + 1].left)) {
        throw std::invalid_argument("OpenSet: components must be sorted and disjoint");
      }
    }
  }

  /// Sorts, validates, and drops components shorter than `floor`.
  static OpenSet from_intervals(std::vector<Interval> intervals,
                                double floor = kComponentFloor) {
    std::vector<Interval> kept;
    kept.reserve(intervals.size());
    for (const auto& iv : intervals) {
      if (iv.length() > floor) kept.push_back(iv);
    }
    std::sort(kept.begin(), kept.end(),
              [](const Interval& a, const Interval& b) { return a.left < b.left; });
    return OpenSet(std::move(kept));
  }

  static OpenSet full() { return OpenSet({Interval(0.0, 1.0)}); }
  static OpenSet empty() { return OpenSet(); }

  const std::vector<Interval>& components() const { return components_; }
  std::size_t count() const { return components_.size(); }
  bool is_empty() const { return components_.empty(); }

  double total_length() const {
    double s = 0.0;
    for (const auto& iv : components_) s += iv.length();
    return s;
  }

  bool contains_point(double x) const {
    auto idx = component_containing(x);
    return idx >= 0;
  }

  /// Index of the component containing x, or -1.
  int component_containing(double x) const {
    std::size_t lo = 0, hi = components_.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (components_[mid].right <= x) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo < components_.size() && components_[lo].contains(x)) {
      return static_cast<int>(lo);
    }
    return -1;
  }

  bool operator==(const OpenSet& other) const = default;

 private:
  std::vector<Interval> components_;
};

/// Decreasing component lengths of U; dust is 1 minus their sum.
inline MassPartition ranked_lengths(const OpenSet& u) {
  std::vector<double> lengths;
  lengths.reserve(u.count());
  for (const auto& iv : u.components()) lengths.push_back(iv.length());
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  double dust = std::max(0.0, 1.0 - u.total_length());
  return MassPartition(std::move(lengths), dust);
}

/// chi_U(x) = min distance from x to the complement of U in [0,1].
inline double complement_gap(const OpenSet& u, double x) {
  int idx = u.component_containing(x);
  if (idx < 0) return 0.0;
  const Interval& iv = u.components()[static_cast<std::size_t>(idx)];
  return std::min(x - iv.left, iv.right - x);
}

/// Sup distance between chi_U and chi_V. Both functions are piecewise linear
/// with slope +-1 and kinks only at component endpoints and midpoints, so the
/// sup is attained on the merged breakpoint set; no grid is involved.
inline double distance(const OpenSet& u, const OpenSet& v) {
  std::vector<double> breakpoints{0.0, 1.0};
  auto add = [&breakpoints](const OpenSet& w) {
    for (const auto& iv : w.components()) {
      breakpoints.push_back(iv.left);
      breakpoints.push_back(iv.right);
      breakpoints.push_back(0.5 * (iv.left + iv.right));
    }
  };
  add(u);
  add(v);
  double best = 0.0;
  for (double x : breakpoints) {
    best = std::max(best, std::fabs(complement_gap(u, x) - complement_gap(v, x)));
  }
  return best;
}

/// Image of V under the affine map of (0,1) onto I.
inline OpenSet embed(const Interval& target, const OpenSet& v) {
  const double scale = target.length();
  std::vector<Interval> mapped;
  mapped.reserve(v.count());
  for (const auto& iv : v.components()) {
    mapped.emplace_back(target.left + iv.left * scale,
                        target.left + iv.right * scale);
  }
  return OpenSet(std::move(mapped));
}

/// True iff U is a subset of V (each component of U inside a component of V).
inline bool is_nested(const OpenSet& u, const OpenSet& v) {
  std::size_t j = 0;
  for (const auto& iv : u.components()) {
    while (j < v.count() && v.components()[j].right < iv.right) ++j;
    if (j == v.count()) return false;
    const Interval& host = v.components()[j];
    if (!(host.left <= iv.left && iv.right <= host.right)) return false;
  }
  return true;
}

}  // namespace frag

#endif  // FRAGMENTA_INTERVAL_SET_HPP
