#ifndef FRAGMENTA_STATS_HPP
#define FRAGMENTA_STATS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fragmenta/numeric.hpp"

namespace frag {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

struct MeanSE {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

inline MeanSE mean_se(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean_se: empty sample");
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - m) * (x - m);
  if (xs.size() > 1) var /= static_cast<double>(xs.size() - 1);
  return MeanSE{m, std::sqrt(var / static_cast<double>(xs.size())), xs.size()};
}

/// One-sample Kolmogorov-Smirnov against a CDF, asymptotic p-value.
template <typename Cdf>
TestResult ks_test(std::vector<double> samples, Cdf&& cdf) {
  if (samples.size() < 10) throw std::invalid_argument("ks_test: need >= 10 samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, std::fabs(f - lo), std::fabs(hi - f)});
  }
  double sqrt_n = std::sqrt(n);
  double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  return TestResult{d, kolmogorov_sf(lambda)};
}

/// Two-sample Kolmogorov-Smirnov, asymptotic p-value.
inline TestResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 10 || b.size() < 10) {
    throw std::invalid_argument("ks_test_two_sample: need >= 10 samples each");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    double fa = static_cast<double>(i) / static_cast<double>(a.size());
    double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::fabs(fa - fb));
  }
  double na = static_cast<double>(a.size());
  double nb = static_cast<double>(b.size());
  double ne = std::sqrt(na * nb / (na + nb));
  double lambda = (ne + 0.12 + 0.11 / ne) * d;
  return TestResult{d, kolmogorov_sf(lambda)};
}

/// Pearson chi-square. Cells whose expected count falls below `min_expected`
/// are pooled with the following cells until the threshold is met; a trailing
/// underfull group merges backwards.
inline TestResult chi_square(const std::vector<double>& observed,
                             const std::vector<double>& expected,
                             double min_expected = 5.0) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw std::invalid_argument("chi_square: size mismatch");
  }
  std::vector<double> obs_pooled, exp_pooled;
  double o_acc = 0.0, e_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o_acc += observed[i];
    e_acc += expected[i];
    if (e_acc >= min_expected) {
      obs_pooled.push_back(o_acc);
      exp_pooled.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (exp_pooled.empty()) {
      obs_pooled.push_back(o_acc);
      exp_pooled.push_back(e_acc);
    } else {
      obs_pooled.back() += o_acc;
      exp_pooled.back() += e_acc;
    }
  }
  if (exp_pooled.size() < 2) {
    throw std::invalid_argument("chi_square: fewer than 2 cells after pooling");
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < exp_pooled.size(); ++i) {
    if (exp_pooled[i] <= 0.0) throw std::invalid_argument("chi_square: zero expected cell");
    double diff = obs_pooled[i] - exp_pooled[i];
    stat += diff * diff / exp_pooled[i];
  }
  double dof = static_cast<double>(exp_pooled.size() - 1);
  return TestResult{stat, chi2_sf(stat, dof)};
}

/// Two-sample chi-square homogeneity test over matched count vectors.
inline TestResult chi_square_two_sample(const std::vector<double>& counts_a,
                                        const std::vector<double>& counts_b,
                                        double min_expected = 5.0) {
  if (counts_a.size() != counts_b.size() || counts_a.empty()) {
    throw std::invalid_argument("chi_square_two_sample: size mismatch");
  }
  double na = 0.0, nb = 0.0;
  for (double c : counts_a) na += c;
  for (double c : counts_b) nb += c;
  if (na <= 0.0 || nb <= 0.0) {
    throw std::invalid_argument("chi_square_two_sample: empty sample");
  }
  // pool jointly so both vectors stay aligned
  std::vector<double> a_pooled, b_pooled;
  double a_acc = 0.0, b_acc = 0.0;
  for (std::size_t i = 0; i < counts_a.size(); ++i) {
    a_acc += counts_a[i];
    b_acc += counts_b[i];
    double pooled_expected =
        std::min(na, nb) * (a_acc + b_acc) / (na + nb);
    if (pooled_expected >= min_expected) {
      a_pooled.push_back(a_acc);
      b_pooled.push_back(b_acc);
      a_acc = b_acc = 0.0;
    }
  }
  if ((a_acc > 0.0 || b_acc > 0.0) && !a_pooled.empty()) {
    a_pooled.back() += a_acc;
    b_pooled.back() += b_acc;
  }
  if (a_pooled.size() < 2) {
    throw std::invalid_argument("chi_square_two_sample: fewer than 2 cells after pooling");
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < a_pooled.size(); ++i) {
    double pooled = (a_pooled[i] + b_pooled[i]) / (na + nb);
    double ea = na * pooled;
    double eb = nb * pooled;
    stat += (a_pooled[i] - ea) * (a_pooled[i] - ea) / ea;
    stat += (b_pooled[i] - eb) * (b_pooled[i] - eb) / eb;
  }
  double dof = static_cast<double>(a_pooled.size() - 1);
  return TestResult{stat, chi2_sf(stat, dof)};
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items are
/// claimed from a shared counter; callers make results deterministic by
/// writing into slot i and seeding any randomness from i alone.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = std::min<int>(threads, static_cast<int>(count));
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace frag

#endif  // FRAGMENTA_STATS_HPP
