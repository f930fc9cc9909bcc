#ifndef AGN_EXTREMALS_HPP
#define AGN_EXTREMALS_HPP

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "agn/constants.hpp"
#include "agn/grid.hpp"
#include "agn/numeric.hpp"

namespace agn {

enum class ExtremalFamily { gn_superquadratic, gn_compact, log_sobolev, morrey };

inline std::string to_string(ExtremalFamily f) {
  switch (f) {
    case ExtremalFamily::gn_superquadratic: return "gn_extremal";
    case ExtremalFamily::gn_compact: return "gn_compact";
    case ExtremalFamily::log_sobolev: return "log_sobolev_extremal";
    case ExtremalFamily::morrey: return "morrey_extremal";
  }
  return "?";
}

// Closed-form optimizer families, evaluated pointwise. `shape` is the decay
// parameter (beta for the interpolation families, sigma for the exponential
// one; unused by the supremum-norm family whose support radius is 1 before
// the affine map).
struct ExtremalSpec {
  ExtremalFamily family = ExtremalFamily::gn_superquadratic;
  int n = 2;
  double p = 1.5;
  double q = 2.0;          // gn families only
  double amplitude = 1.0;  // alpha / a; log_sobolev ignores it (normalized)
  double shape = 1.0;      // beta or sigma
  std::vector<double> center;
  AffineMap map;

  void validate() const {
    const double nn = static_cast<double>(n);
    if (amplitude == 0.0)
      throw parameter_error("ExtremalSpec: amplitude must be nonzero");
    switch (family) {
      case ExtremalFamily::gn_superquadratic:
        if (!(p > 1.0 && p < nn))
          throw parameter_error("gn_extremal: need 1 < p < n");
        if (!(q > p && q <= p * (nn - 1.0) / (nn - p)))
          throw parameter_error("gn_extremal: need p < q <= p(n-1)/(n-p)");
        if (!(shape > 0.0)) throw parameter_error("gn_extremal: beta must be > 0");
        break;
      case ExtremalFamily::gn_compact:
        if (!(p > 1.0 && p < nn))
          throw parameter_error("gn_compact: need 1 < p < n");
        if (!(q > 1.0 && q < p))
          throw parameter_error("gn_compact: need 1 < q < p");
        if (!(shape > 0.0)) throw parameter_error("gn_compact: beta must be > 0");
        break;
      case ExtremalFamily::log_sobolev:
        if (!(p > 1.0 && p < nn))
          throw parameter_error("log_sobolev_extremal: need 1 < p < n");
        if (!(shape > 0.0))
          throw parameter_error("log_sobolev_extremal: sigma must be > 0");
        break;
      case ExtremalFamily::morrey:
        if (!(p > nn)) throw parameter_error("morrey_extremal: need p > n");
        break;
    }
  }
};

namespace detail {

// Scalar profile phi(r) of the family with the affine map stripped; the
// full rule is amplitude-scaled phi(|A(x - center)|).
inline std::function<double(double)> radial_profile(const ExtremalSpec& spec) {
  const double p = spec.p;
  const double q = spec.q;
  const double nn = static_cast<double>(spec.n);
  const double shape = spec.shape;
  const double pp = p / (p - 1.0);
  switch (spec.family) {
    case ExtremalFamily::gn_superquadratic: {
      const double outer = -(p - 1.0) / (q - p);
      const double amp = spec.amplitude;
      return [=](double r) {
        return amp * std::pow(1.0 + shape * std::pow(r, pp), outer);
      };
    }
    case ExtremalFamily::gn_compact: {
      // literal display: exponent -(p-1)/(q-p), positive since q < p
      const double outer = -(p - 1.0) / (q - p);
      const double amp = spec.amplitude;
      return [=](double r) {
        const double base = 1.0 - shape * std::pow(r, pp);
        return base > 0.0 ? amp * std::pow(base, outer) : 0.0;
      };
    }
    case ExtremalFamily::log_sobolev: {
      // amplitude fixed by ||f||_p = 1 (for volume-preserving maps)
      const double amp =
          std::pow(gamma_fn(nn / 2.0 + 1.0) /
                       (std::pow(pi_v, nn / 2.0) *
                        gamma_fn(nn * (p - 1.0) / p + 1.0)),
                   1.0 / p) *
          std::pow(p / shape, nn * (p - 1.0) / (p * p));
      return [=](double r) {
        return amp * std::exp(-std::pow(r, pp) / shape);
      };
    }
    case ExtremalFamily::morrey: {
      const double kappa = (p - nn) / (p - 1.0);
      const double amp = spec.amplitude;
      return [=](double r) {
        const double base = 1.0 - std::pow(r, kappa);
        return base > 0.0 ? amp * base : 0.0;
      };
    }
  }
  throw parameter_error("ExtremalSpec: unknown family");
}

}  // namespace detail

inline PointwiseRule make_rule(const ExtremalSpec& spec) {
  spec.validate();
  auto profile = detail::radial_profile(spec);
  AffineMap map = spec.map.matrix.empty() ? AffineMap::identity(spec.n) : spec.map;
  map.validate();
  if (!spec.center.empty()) {
    if (spec.center.size() != static_cast<std::size_t>(spec.n))
      throw parameter_error("ExtremalSpec: center dimension mismatch");
    map.shift = spec.center;
  }
  const int n = spec.n;
  return [profile = std::move(profile), map = std::move(map),
          n](std::span<const double> x) {
    std::array<double, 3> y{};
    map.transform(x, std::span<double>(y.data(), static_cast<std::size_t>(n)));
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += y[a] * y[a];
    return profile(std::sqrt(r2));
  };
}

// Radius of the support ball of the unmapped profile; infinity for the
// decaying families.
inline double profile_support_radius(const ExtremalSpec& spec) {
  switch (spec.family) {
    case ExtremalFamily::gn_compact:
      return std::pow(spec.shape, -(spec.p - 1.0) / spec.p);
    case ExtremalFamily::morrey:
      return 1.0;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

// Half-width such that the ball tail beyond it carries less than `tail`
// of the radial mass integral of phi^mass_exponent (a conservative bound
// for the box tail). Compact families get their support radius plus a
// margin.
inline double suggest_half_width(const ExtremalSpec& spec,
                                 double mass_exponent, double tail = 1e-6) {
  spec.validate();
  if (!(mass_exponent >= 1.0))
    throw parameter_error("suggest_half_width: mass exponent must be >= 1");
  const double support = profile_support_radius(spec);
  if (std::isfinite(support)) return 1.25 * support;

  auto profile = detail::radial_profile(spec);
  const double nn = static_cast<double>(spec.n);
  const auto mass = [&](double a, double b) {
    return adaptive_simpson(
        [&](double r) {
          return pow_abs(profile(r), mass_exponent) * std::pow(r, nn - 1.0);
        },
        a, b, 1e-13);
  };
  double r_hi = 1.0;
  double total = mass(0.0, r_hi);
  for (int round = 0; round < 60; ++round) {
    const double inc = mass(r_hi, 2.0 * r_hi);
    r_hi *= 2.0;
    total += inc;
    if (inc < 1e-11 * total && round > 2) break;
  }
  // smallest R with tail fraction below the target
  double lo = 0.0, hi = r_hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double tail_mass = total - mass(0.0, mid);
    if (tail_mass > tail * total)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace agn

#endif  // AGN_EXTREMALS_HPP
