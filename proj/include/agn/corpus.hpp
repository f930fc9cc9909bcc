#ifndef AGN_CORPUS_HPP
#define AGN_CORPUS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "agn/extremals.hpp"
#include "agn/grid.hpp"

namespace agn {

// Uniform double in [lo, hi) from the raw engine output; avoids the
// implementation-defined std distributions so streams are reproducible.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u =
      static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return lo + (hi - lo) * u;
}

// Smooth positive test functions: sums of a few anisotropic Gaussian bumps
// with randomized centers, widths and orientations, kept away from the box
// boundary.
inline GridFunction random_smooth_function(const GridSpec& spec,
                                           std::mt19937_64& rng,
                                           int min_bumps = 3,
                                           int max_bumps = 6) {
  const int n = spec.dim;
  const double L = spec.half_width;
  const int bumps =
      min_bumps + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                             max_bumps - min_bumps + 1));
  struct Bump {
    std::array<double, 3> center;
    std::array<double, 3> inv_two_sigma2;
    double angle;  // rotation in the (0,1) plane
    double amplitude;
  };
  std::vector<Bump> spec_bumps;
  for (int b = 0; b < bumps; ++b) {
    Bump bump{};
    for (int a = 0; a < n; ++a) bump.center[a] = uniform(rng, -L / 3.0, L / 3.0);
    for (int a = 0; a < n; ++a) {
      const double sigma = uniform(rng, 0.35, 1.1) * (L / 6.0);
      bump.inv_two_sigma2[a] = 1.0 / (2.0 * sigma * sigma);
    }
    bump.angle = uniform(rng, 0.0, 2.0 * pi_v);
    bump.amplitude = uniform(rng, 0.5, 2.0);
    spec_bumps.push_back(bump);
  }
  return sample(spec, [spec_bumps, n](std::span<const double> x) {
    double total = 0.0;
    for (const auto& b : spec_bumps) {
      std::array<double, 3> d{};
      for (int a = 0; a < n; ++a) d[a] = x[a] - b.center[a];
      if (n >= 2) {
        const double c = std::cos(b.angle), s = std::sin(b.angle);
        const double d0 = c * d[0] - s * d[1];
        const double d1 = s * d[0] + c * d[1];
        d[0] = d0;
        d[1] = d1;
      }
      double expo = 0.0;
      for (int a = 0; a < n; ++a) expo += d[a] * d[a] * b.inv_two_sigma2[a];
      total += b.amplitude * std::exp(-expo);
    }
    return total;
  });
}

inline std::vector<GridFunction> random_corpus(const GridSpec& spec, int count,
                                               std::uint64_t seed = 20240817) {
  std::mt19937_64 rng(seed);
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(random_smooth_function(spec, rng));
  return out;
}

// Named radial profiles used across the verification suites.

inline PointwiseRule gaussian_rule(double width = 1.0) {
  return [width](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::exp(-r2 / (width * width));
  };
}

// C^infinity compactly supported bump exp(1 - 1/(1 - (r/R)^2)).
inline PointwiseRule bump_rule(double radius = 1.0) {
  return [radius](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    const double t = r2 / (radius * radius);
    if (t >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t));
  };
}

// cone profile (1 - r)_+
inline PointwiseRule cone_rule() {
  return [](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    const double r = std::sqrt(r2);
    return r < 1.0 ? 1.0 - r : 0.0;
  };
}

inline PointwiseRule disc_indicator_rule(double radius = 1.0) {
  return [radius](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return r2 < radius * radius ? 1.0 : 0.0;
  };
}

// Truncated logarithm profile: amplitude * min(1, log(R/r)/log(R/rho)),
// supported on r < R. The classical near-critical family for the p = n
// exponential-class inequality.
inline PointwiseRule truncated_log_rule(double amplitude, double inner = 0.1,
                                        double outer = 1.0) {
  return [=](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    const double r = std::sqrt(r2);
    if (r >= outer) return 0.0;
    if (r <= inner) return amplitude;
    return amplitude * std::log(outer / r) / std::log(outer / inner);
  };
}

}  // namespace agn

#endif  // AGN_CORPUS_HPP
