#ifndef FRAGMENTA_MEASURES_HPP
#define FRAGMENTA_MEASURES_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fragmenta/interval_set.hpp"
#include "fragmenta/numeric.hpp"
#include "fragmenta/paintbox.hpp"
#include "fragmenta/rng.hpp"

namespace frag {

inline constexpr double kDefaultTruncation = 1e-4;

/// Finitely many weighted open-set atoms.
struct DiscreteAtoms {
  struct Atom {
    double weight;
    OpenSet target;
  };
  std::vector<Atom> atoms;
};

/// Density f(x) on (0,1) for the measure carried by splits ]0,x[ u ]x,1[;
/// x is the length of the left piece. May have infinite total mass at the
/// endpoints (only delta-truncated restrictions are ever sampled).
struct BinarySplitDensity {
  std::function<double(double)> density;
  std::string name;        // "aldous_pitman", "beta", or free-form
  double param_a = 0.0;    // beta family exponents, when name == "beta"
  double param_b = 0.0;
};

/// Measure on ranked mass partitions, lifted to open sets by placing the
/// intervals in uniform random order.
struct RankedLift {
  struct Atom {
    double weight;
    MassPartition masses;
  };
  std::vector<Atom> atoms;  // discrete variant (used when pd is absent)

  struct PoissonDirichlet {
    double alpha;
    double theta;
    int sticks;
    double weight;
  };
  std::optional<PoissonDirichlet> pd;
};

/// Residual-allocation (stick-breaking) sampler for PD(alpha, theta), ranked,
/// truncated at k sticks; the unallocated remainder is reported as dust.
inline MassPartition pd_masses(double alpha, double theta, int k, RngStream& rng) {
  if (alpha < 0.0 || alpha >= 1.0) {
    throw std::invalid_argument("pd_masses: need 0 <= alpha < 1");
  }
  if (theta <= -alpha) throw std::invalid_argument("pd_masses: need theta > -alpha");
  if (k < 1) throw std::invalid_argument("pd_masses: need k >= 1");
  std::vector<double> sticks;
  sticks.reserve(static_cast<std::size_t>(k));
  double remaining = 1.0;
  for (int i = 1; i <= k; ++i) {
    double w = rng.beta(1.0 - alpha, theta + static_cast<double>(i) * alpha);
    sticks.push_back(remaining * w);
    remaining *= (1.0 - w);
  }
  return MassPartition::from_masses(std::move(sticks));
}

/// Folds dust proportionally into the kept masses so they sum to 1.
inline MassPartition fold_dust(const MassPartition& s) {
  if (s.count() == 0) throw std::invalid_argument("fold_dust: no masses");
  double total = 0.0;
  for (double m : s.masses()) total += m;
  if (total <= 0.0) throw std::invalid_argument("fold_dust: zero mass");
  std::vector<double> scaled;
  scaled.reserve(s.count());
  for (double m : s.masses()) scaled.push_back(m / total);
  return MassPartition(std::move(scaled), 0.0);
}

namespace detail {

/// Precomputed inverse CDF of a split density restricted to [lo, hi].
class SplitSampler {
 public:
  SplitSampler(const std::function<double(double)>& f, double lo, double hi,
               double knot_spacing = 1e-4) {
    const int segments =
        std::max(1024, static_cast<int>(std::ceil((hi - lo) / knot_spacing)));
    std::vector<double> xs(static_cast<std::size_t>(segments) + 1);
    for (int i = 0; i <= segments; ++i) {
      xs[static_cast<std::size_t>(i)] =
          lo + (hi - lo) * static_cast<double>(i) / segments;
    }
    std::vector<double> cdf(xs.size(), 0.0);
    for (std::size_t i = 1; i < xs.size(); ++i) {
      cdf[i] = cdf[i - 1] + integrate_smooth(f, xs[i - 1], xs[i], 1e-13);
    }
    total_ = cdf.back();
    if (!(total_ > 0.0) || !std::isfinite(total_)) {
      throw DivergentIntegral("split density not integrable on truncated region");
    }
    // strictly increasing knots for the inverse interpolant
    std::vector<double> u_knots, x_vals;
    u_knots.reserve(cdf.size());
    x_vals.reserve(cdf.size());
    double prev = -1.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
      double u = cdf[i] / total_;
      if (u > prev + 1e-15) {
        u_knots.push_back(u);
        x_vals.push_back(xs[i]);
        prev = u;
      }
    }
    inverse_ = MonotoneCubic(std::move(u_knots), std::move(x_vals));
  }

  double total_mass() const { return total_; }
  double sample(RngStream& rng) const { return inverse_(rng.uniform()); }

 private:
  double total_ = 0.0;
  MonotoneCubic inverse_;
};

}  // namespace detail

/// Dislocation measure: sudden-split component of a fragmentation law.
/// Carries its truncation threshold delta; the Poissonian construction only
/// ever samples the finite restriction {1 - s_1 >= delta}.
class DislocationMeasure {
 public:
  using Variant = std::variant<DiscreteAtoms, BinarySplitDensity, RankedLift>;

  DislocationMeasure(Variant impl, double truncation = kDefaultTruncation)
      : impl_(std::move(impl)), truncation_(truncation) {
    validate();
    if (const auto* d = std::get_if<BinarySplitDensity>(&impl_)) {
      double lo = truncation_;
      double hi = 1.0 - truncation_;
      if (lo < hi) {
        sampler_ = std::make_shared<detail::SplitSampler>(d->density, lo, hi);
      }
    }
  }

  const Variant& impl() const { return impl_; }
  double truncation() const { return truncation_; }

  bool is_finite() const {
    if (std::holds_alternative<BinarySplitDensity>(impl_)) return false;
    return true;
  }

  /// nu{1 - s_1 >= delta}; exact for atoms, quadrature for densities.
  double truncated_mass(double delta) const {
    if (delta < 0.0 || delta >= 1.0) {
      throw std::invalid_argument("truncated_mass: need 0 <= delta < 1");
    }
    if (const auto* d = std::get_if<DiscreteAtoms>(&impl_)) {
      double total = 0.0;
      for (const auto& atom : d->atoms) {
        if (1.0 - ranked_lengths(atom.target).largest() >= delta) total += atom.weight;
      }
      return total;
    }
    if (const auto* d = std::get_if<BinarySplitDensity>(&impl_)) {
      if (delta == 0.0) {
        throw DivergentIntegral(
            "truncated_mass: binary split density requires delta > 0");
      }
      if (delta >= 0.5) return 0.0;
      if (sampler_ && delta == truncation_) return sampler_->total_mass();
      return integrate(d->density, delta, 1.0 - delta, 1e-9);
    }
    const auto& lift = std::get<RankedLift>(impl_);
    if (lift.pd) {
      if (delta > 0.0) {
        throw std::invalid_argument(
            "truncated_mass: PD lifts are finite; use delta = 0");
      }
      return lift.pd->weight;
    }
    double total = 0.0;
    for (const auto& atom : lift.atoms) {
      if (1.0 - atom.masses.largest() >= delta) total += atom.weight;
    }
    return total;
  }

  double truncated_mass() const { return truncated_mass(truncation_); }

  /// Draw from nu conditioned on {1 - s_1 >= delta}.
  OpenSet sample_atom(double delta, RngStream& rng) const {
    if (const auto* d = std::get_if<DiscreteAtoms>(&impl_)) {
      double total = truncated_mass(delta);
      if (total <= 0.0) throw std::invalid_argument("sample_atom: empty truncated measure");
      double u = rng.uniform() * total;
      for (const auto& atom : d->atoms) {
        if (1.0 - ranked_lengths(atom.target).largest() >= delta) {
          u -= atom.weight;
          if (u <= 0.0) return atom.target;
        }
      }
      return d->atoms.back().target;
    }
    if (std::holds_alternative<BinarySplitDensity>(impl_)) {
      double x;
      if (sampler_ && delta == truncation_) {
        x = sampler_->sample(rng);
      } else {
        if (delta <= 0.0 || delta >= 0.5) {
          throw std::invalid_argument("sample_atom: need 0 < delta < 1/2 for densities");
        }
        detail::SplitSampler fresh(std::get<BinarySplitDensity>(impl_).density,
                                   delta, 1.0 - delta);
        x = fresh.sample(rng);
      }
      return OpenSet({Interval(0.0, x), Interval(x, 1.0)});
    }
    const auto& lift = std::get<RankedLift>(impl_);
    if (lift.pd) {
      MassPartition masses =
          pd_masses(lift.pd->alpha, lift.pd->theta, lift.pd->sticks, rng);
      return uniform_order_lift(fold_dust(masses), rng);
    }
    double total = truncated_mass(delta);
    if (total <= 0.0) throw std::invalid_argument("sample_atom: empty truncated measure");
    double u = rng.uniform() * total;
    for (const auto& atom : lift.atoms) {
      if (1.0 - atom.masses.largest() >= delta) {
        u -= atom.weight;
        if (u <= 0.0) return uniform_order_lift(atom.masses, rng);
      }
    }
    return uniform_order_lift(lift.atoms.back().masses, rng);
  }

  OpenSet sample_atom(RngStream& rng) const {
    return sample_atom(effective_truncation(), rng);
  }

  /// Truncation actually used by samplers: finite measures need none.
  double effective_truncation() const { return is_finite() ? 0.0 : truncation_; }

  /// Integral term of the Laplace exponent: int (1 - sum |U_i|^{q+1}) dnu.
  double laplace_integral(double q) const {
    if (q < 0.0) throw std::invalid_argument("laplace_integral: need q >= 0");
    if (const auto* d = std::get_if<DiscreteAtoms>(&impl_)) {
      double total = 0.0;
      for (const auto& atom : d->atoms) {
        double s = 0.0;
        for (const auto& iv : atom.target.components()) {
          s += std::pow(iv.length(), q + 1.0);
        }
        total += atom.weight * (1.0 - s);
      }
      return total;
    }
    if (const auto* d = std::get_if<BinarySplitDensity>(&impl_)) {
      auto integrand = [&](double x) {
        return (1.0 - std::pow(x, q + 1.0) - std::pow(1.0 - x, q + 1.0)) *
               d->density(x);
      };
      return integrate(integrand, 0.0, 1.0, 1e-10);
    }
    const auto& lift = std::get<RankedLift>(impl_);
    if (lift.pd) {
      // E[sum P_i^s] under PD(alpha, theta) has the closed Gamma-ratio form
      const double a = lift.pd->alpha;
      const double t = lift.pd->theta;
      const double s = q + 1.0;
      double log_ratio = std::lgamma(t + 1.0) + std::lgamma(s - a) -
                         std::lgamma(t + s) - std::lgamma(1.0 - a);
      return lift.pd->weight * (1.0 - std::exp(log_ratio));
    }
    double total = 0.0;
    for (const auto& atom : lift.atoms) {
      double s = 0.0;
      for (double m : atom.masses.masses()) s += std::pow(m, q + 1.0);
      total += atom.weight * (1.0 - s);
    }
    return total;
  }

 private:
  void validate() const {
    if (truncation_ <= 0.0 || truncation_ >= 1.0) {
      throw std::invalid_argument("DislocationMeasure: need 0 < truncation < 1");
    }
    if (const auto* d = std::get_if<DiscreteAtoms>(&impl_)) {
      if (d->atoms.empty()) throw std::invalid_argument("DiscreteAtoms: no atoms");
      for (const auto& atom : d->atoms) {
        if (atom.weight <= 0.0) throw std::invalid_argument("DiscreteAtoms: weight <= 0");
        if (atom.target == OpenSet::full()) {
          throw std::invalid_argument("DiscreteAtoms: nu(]0,1[) must be 0");
        }
      }
      return;
    }
    if (const auto* d = std::get_if<BinarySplitDensity>(&impl_)) {
      if (!d->density) throw std::invalid_argument("BinarySplitDensity: no density");
      // Def-style integrability: int min(x,1-x) f(x) dx must converge.
      auto integrand = [&](double x) { return std::min(x, 1.0 - x) * d->density(x); };
      double check = integrate(integrand, 0.0, 1.0, 1e-8);
      if (!std::isfinite(check)) {
        throw DivergentIntegral("BinarySplitDensity: int (1 - s_1) dnu diverges");
      }
      return;
    }
    const auto& lift = std::get<RankedLift>(impl_);
    if (lift.pd) {
      const auto& pd = *lift.pd;
      if (pd.alpha < 0.0 || pd.alpha >= 1.0 || pd.theta <= -pd.alpha) {
        throw std::invalid_argument("RankedLift: bad PD parameters");
      }
      if (pd.alpha == 0.0 && pd.theta == 0.0) {
        throw std::invalid_argument("RankedLift: PD(0,0) is the trivial split");
      }
      if (pd.sticks < 1 || pd.weight <= 0.0) {
        throw std::invalid_argument("RankedLift: bad sticks/weight");
      }
      return;
    }
    if (lift.atoms.empty()) throw std::invalid_argument("RankedLift: no atoms");
    for (const auto& atom : lift.atoms) {
      if (atom.weight <= 0.0) throw std::invalid_argument("RankedLift: weight <= 0");
      if (atom.masses.dust() > 1e-9) {
        throw std::invalid_argument("RankedLift: atoms must be conservative");
      }
      if (atom.masses.count() == 1 && atom.masses.largest() >= 1.0 - 1e-15) {
        throw std::invalid_argument("RankedLift: nu(]0,1[) must be 0");
      }
    }
  }

  Variant impl_;
  double truncation_;
  std::shared_ptr<const detail::SplitSampler> sampler_;
};

/// The law of a self-similar fragmentation: dislocation measure, left/right
/// erosion rates, self-similarity index.
struct FragmentationCharacteristics {
  std::optional<DislocationMeasure> nu;
  double c_l = 0.0;
  double c_r = 0.0;
  double alpha = 0.0;

  double erosion_rate() const { return c_l + c_r; }
};

/// Laplace exponent of the tagged-fragment subordinator:
/// phi(q) = (c_l + c_r)(q+1) + int (1 - sum |U_i|^{q+1}) dnu.
inline double laplace_exponent(const FragmentationCharacteristics& chars, double q) {
  if (q < 0.0) throw std::invalid_argument("laplace_exponent: need q >= 0");
  double value = (chars.c_l + chars.c_r) * (q + 1.0);
  if (chars.nu) value += chars.nu->laplace_integral(q);
  return value;
}

/// Interval-form dislocation density of the Brownian (Aldous-Pitman)
/// fragmentation: the left piece has length x with density
/// (2 pi x (1-x)^3)^{-1/2}, which encodes the size-biased left-block rule.
inline double aldous_pitman_density(double x) {
  return 1.0 / std::sqrt(2.0 * M_PI * x * (1.0 - x) * (1.0 - x) * (1.0 - x));
}

inline DislocationMeasure aldous_pitman_measure(double truncation = kDefaultTruncation) {
  BinarySplitDensity d;
  d.density = [](double x) { return aldous_pitman_density(x); };
  d.name = "aldous_pitman";
  return DislocationMeasure(std::move(d), truncation);
}

/// Uniform binary split at 1/2 with the given rate.
inline DislocationMeasure half_split_measure(double weight = 1.0,
                                             double truncation = kDefaultTruncation) {
  DiscreteAtoms atoms;
  atoms.atoms.push_back(
      {weight, OpenSet({Interval(0.0, 0.5), Interval(0.5, 1.0)})});
  return DislocationMeasure(std::move(atoms), truncation);
}

}  // namespace frag

#endif  // FRAGMENTA_MEASURES_HPP
