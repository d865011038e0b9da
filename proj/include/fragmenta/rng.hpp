#ifndef FRAGMENTA_RNG_HPP
#define FRAGMENTA_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace frag {

/// Module tags used when deriving replicate streams, so that two modules
/// drawing from the same (seed, replicate) pair never share a stream.
enum class StreamTag : std::uint64_t {
  generic = 0,
  paintbox = 1,
  measures = 2,
  engine = 3,
  brownian = 4,
  ruelle = 5,
  dimension = 6,
  harness = 7,
  oracle = 8,
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Layered rejection tables for the standard normal (256 layers).
struct ZigguratTables {
  std::array<double, 257> x{};
  std::array<double, 257> y{};

  ZigguratTables() {
    const double r = 3.6541528853610088;
    const double v = 0.00492867323399        /* layer area */;
    auto g = [](double t) { return std::exp(-0.5 * t * t); };
    x[1] = r;
    y[1] = g(r);
    x[0] = v / y[1];  // base layer extends past r to account for the tail
    y[0] = 0.0;
    for (int i = 2; i <= 256; ++i) {
      y[i] = y[i - 1] + v / x[i - 1];
      if (y[i] >= 1.0) {
        x[i] = 0.0;
        y[i] = 1.0;
      } else {
        x[i] = std::sqrt(-2.0 * std::log(y[i]));
      }
    }
    x[256] = 0.0;
    y[256] = 1.0;
  }
};

inline const ZigguratTables& ziggurat_tables() {
  static const ZigguratTables tables;
  return tables;
}

}  // namespace detail

/// One replicate-local random stream. Streams are derived from
/// (master_seed, replicate, tag) with a counter-based mix, so results do not
/// depend on which worker thread processes which replicate.
class RngStream {
 public:
  explicit RngStream(std::uint64_t raw_seed) : engine_(raw_seed) {}

  RngStream(std::uint64_t master_seed, std::uint64_t replicate,
            StreamTag tag = StreamTag::generic)
      : engine_(derive_seed(master_seed, replicate, tag)) {}

  static std::uint64_t derive_seed(std::uint64_t master_seed,
                                   std::uint64_t replicate, StreamTag tag) {
    std::uint64_t s = master_seed;
    std::uint64_t a = detail::splitmix64(s);
    s ^= replicate * 0xda942042e4dd58b5ULL;
    std::uint64_t b = detail::splitmix64(s);
    s ^= static_cast<std::uint64_t>(tag) * 0x9e3779b97f4a7c15ULL;
    std::uint64_t c = detail::splitmix64(s);
    return a ^ (b + 0x165667b19e3779f9ULL) ^ (c << 1);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0,1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in {0, ..., n-1}.
  std::uint64_t uniform_int(std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
    return dist(engine_);
  }

  double exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("exponential: rate must be > 0");
    return -std::log(uniform()) / rate;
  }

  /// Standard normal via 256-layer ziggurat.
  double normal() {
    const auto& t = detail::ziggurat_tables();
    for (;;) {
      std::uint64_t bits = next_u64();
      int layer = static_cast<int>(bits & 255u);
      bits >>= 8;
      // 55 remaining bits -> uniform in (-1,1)
      double u =
          (static_cast<double>(static_cast<std::int64_t>(bits << 9) >> 9) + 0.5) *
          0x1.0p-54;
      double x = u * t.x[layer];
      if (std::fabs(x) < t.x[layer + 1]) return x;
      if (layer == 0) {
        // Marsaglia tail beyond r
        const double r = t.x[1];
        double xt, yt;
        do {
          xt = -std::log(uniform()) / r;
          yt = -std::log(uniform());
        } while (yt + yt < xt * xt);
        return u > 0 ? r + xt : -(r + xt);
      }
      double gx = std::exp(-0.5 * x * x);
      if (t.y[layer] + uniform() * (t.y[layer + 1] - t.y[layer]) < gx) return x;
    }
  }

  /// Gamma(shape, scale 1), Marsaglia-Tsang squeeze.
  double gamma(double shape) {
    if (shape <= 0.0) throw std::invalid_argument("gamma: shape must be > 0");
    if (shape < 1.0) {
      double u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double z = normal();
      double t = 1.0 + c * z;
      if (t <= 0.0) continue;
      double v = t * t * t;
      double u = uniform();
      if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
      if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    return x / (x + y);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace frag

#endif  // FRAGMENTA_RNG_HPP
