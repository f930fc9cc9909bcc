#ifndef AGN_QUADRATURE_HPP
#define AGN_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <vector>

#include "agn/constants.hpp"
#include "agn/errors.hpp"

namespace agn {

// Unit directions with weights approximating integration over S^(n-1).
// Sum of weights equals the sphere surface area (2 pi for n = 2, 4 pi for
// n = 3).
struct SphericalQuadrature {
  int dim = 2;
  std::vector<std::array<double, 3>> directions;
  std::vector<double> weights;

  std::size_t size() const { return directions.size(); }

  double weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  // True when direction j + M/2 is the bitwise negation of direction j,
  // which the n = 2 constructor guarantees for even M.
  bool antipodal_pairs() const {
    const std::size_t m = directions.size();
    if (m % 2 != 0) return false;
    const std::size_t half = m / 2;
    for (std::size_t j = 0; j < half; ++j) {
      for (int a = 0; a < dim; ++a)
        if (directions[j + half][a] != -directions[j][a]) return false;
      if (weights[j + half] != weights[j]) return false;
    }
    return true;
  }
};

// n = 2: equally spaced angles (trapezoid rule on the circle, spectrally
// accurate for smooth integrands); for even M the second half is the exact
// negation of the first. n = 3: Fibonacci sphere with equal weights.
inline SphericalQuadrature build_quadrature(int n, int directions) {
  if (n != 2 && n != 3)
    throw parameter_error("build_quadrature: dim must be 2 or 3");
  if (directions < 4)
    throw parameter_error("build_quadrature: need at least 4 directions");
  SphericalQuadrature quad;
  quad.dim = n;
  quad.directions.reserve(static_cast<std::size_t>(directions));
  if (n == 2) {
    const double w = 2.0 * pi_v / directions;
    const int half = directions / 2;
    const int first = (directions % 2 == 0) ? half : directions;
    for (int j = 0; j < first; ++j) {
      const double angle = 2.0 * pi_v * j / directions;
      quad.directions.push_back({std::cos(angle), std::sin(angle), 0.0});
    }
    if (directions % 2 == 0) {
      for (int j = 0; j < half; ++j) {
        const auto& d = quad.directions[static_cast<std::size_t>(j)];
        quad.directions.push_back({-d[0], -d[1], 0.0});
      }
    }
    quad.weights.assign(static_cast<std::size_t>(directions), w);
  } else {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const double w = 4.0 * pi_v / directions;
    for (int k = 0; k < directions; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / directions;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double angle = 2.0 * pi_v * k / golden;
      quad.directions.push_back(
          {rho * std::cos(angle), rho * std::sin(angle), z});
    }
    quad.weights.assign(static_cast<std::size_t>(directions), w);
  }
  return quad;
}

}  // namespace agn

#endif  // AGN_QUADRATURE_HPP
