#ifndef FRAGMENTA_NUMERIC_HPP
#define FRAGMENTA_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace frag {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A measure whose defining integral does not converge; reported distinctly
/// from a quadrature that merely failed to reach tolerance.
struct DivergentIntegral : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Integrate f over (a,b). tanh-sinh handles integrable endpoint
/// singularities (the x^{-1/2}-type endpoints that split densities have).
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("integrate: empty interval");
  }
  boost::math::quadrature::tanh_sinh<double> quad;
  double error = 0.0, l1 = 0.0;
  double value;
  try {
    value = quad.integrate(f, a, b, rel_tol, &error, &l1);
  } catch (const std::exception& e) {
    throw QuadratureError(std::string("tanh_sinh failed: ") + e.what());
  }
  if (!std::isfinite(value) || !std::isfinite(l1)) {
    throw DivergentIntegral("integral does not converge");
  }
  // tanh-sinh reports error relative to L1 norm
  if (error > 1e-6 && error * l1 > 1e-6 * std::max(1.0, std::fabs(value))) {
    throw QuadratureError("tanh_sinh did not reach requested tolerance");
  }
  return value;
}

/// Adaptive Gauss-Kronrod for smooth integrands on finite intervals.
template <typename F>
double integrate_smooth(F&& f, double a, double b, double abs_tol = 1e-12) {
  if (a == b) return 0.0;
  double error = 0.0;
  double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, 15, abs_tol, &error);
  if (!std::isfinite(value)) throw DivergentIntegral("integral does not converge");
  return value;
}

inline double chi2_sf(double stat, double dof) {
  if (stat <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

/// Kolmogorov distribution survival function Q(lambda) = 2 sum (-1)^{k-1} e^{-2k^2 l^2}.
inline double kolmogorov_sf(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& x,
                            const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("linear_fit: need >= 2 points");
  }
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = y[i] - (fit.intercept + fit.slope * x[i]);
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (static_cast<double>(n) - 2.0) / sxx);
  }
  return fit;
}

/// Monotone cubic Hermite interpolant (Fritsch-Carlson limited slopes).
/// Monotone data in, monotone interpolant out; used for inverse-CDF tables.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;

  MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
      : x_(std::move(xs)), y_(std::move(ys)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
      throw std::invalid_argument("MonotoneCubic: need >= 2 knots");
    }
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      double h = x_[i + 1] - x_[i];
      if (h <= 0.0) throw std::invalid_argument("MonotoneCubic: knots not increasing");
      delta[i] = (y_[i + 1] - y_[i]) / h;
    }
    m_.assign(n, 0.0);
    m_[0] = delta[0];
    m_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        m_[i] = 0.0;
      } else {
        m_[i] = 0.5 * (delta[i - 1] + delta[i]);
      }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (delta[i] == 0.0) {
        m_[i] = m_[i + 1] = 0.0;
        continue;
      }
      double a = m_[i] / delta[i];
      double b = m_[i + 1] / delta[i];
      double s = a * a + b * b;
      if (s > 9.0) {
        double tau = 3.0 / std::sqrt(s);
        m_[i] = tau * a * delta[i];
        m_[i + 1] = tau * b * delta[i];
      }
    }
  }

  double operator()(double q) const {
    if (q <= x_.front()) return y_.front();
    if (q >= x_.back()) return y_.back();
    auto it = std::upper_bound(x_.begin(), x_.end(), q);
    std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    double h = x_[i + 1] - x_[i];
    double t = (q - x_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1;
    double h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2;
    double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
  }

  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace frag

#endif  // FRAGMENTA_NUMERIC_HPP
