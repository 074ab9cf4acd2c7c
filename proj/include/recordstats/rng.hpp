#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace recordstats {

// SplitMix64 step; used to derive decorrelated substream seeds from
// (master_seed, index) pairs so replica streams never depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// One random stream per worker/replica. All variate transforms are
// implemented here explicitly (not via std:: distributions) so that a seed
// pins the exact sequence on every platform and standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Deterministic substream for replica `index` of a master seed.
  static RandomStream substream(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t state = master_seed ^ (0xA24BAED4963EE407ULL * (index + 1));
    std::uint64_t seed = splitmix64(state);
    seed ^= splitmix64(state);
    return RandomStream(seed);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0,1), 53-bit resolution.
  double u01() {
    double u;
    do {
      u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    } while (u <= 0.0);
    return u;
  }

  // Standard normal via the Marsaglia polar method, one spare cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * u01() - 1.0;
      v = 2.0 * u01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  // Gamma(shape, 1) via Marsaglia-Tsang; boosted for shape < 1.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be > 0");
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(u01(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = gaussian();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = u01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace recordstats
