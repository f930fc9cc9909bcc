#ifndef AGN_REARRANGEMENT_HPP
#define AGN_REARRANGEMENT_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "agn/grid.hpp"

namespace agn {

// Piecewise-constant decreasing rearrangement over measure s: level k holds
// on [breakpoints[k], breakpoints[k+1]), zero from the last breakpoint on.
struct RearrangementProfile {
  std::vector<double> breakpoints;  // s_0 = 0 < s_1 < ... < s_K
  std::vector<double> levels;       // K nonincreasing values

  double value(double s) const {
    if (s < 0.0 || levels.empty()) return 0.0;
    // interval [b_k, b_{k+1}) containing s
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), s);
    if (it == breakpoints.begin()) return levels.front();
    const std::size_t k = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    if (k >= levels.size()) return 0.0;
    return levels[k];
  }

  double support_measure() const {
    return breakpoints.empty() ? 0.0 : breakpoints.back();
  }
};

// m_f(t) = |{ |f| > t }|, nonincreasing and right-continuous in t.
inline double distribution_function(const GridFunction& f, double t) {
  if (t < 0.0) throw parameter_error("distribution_function: t must be >= 0");
  std::size_t count = 0;
  for (double v : f.values())
    if (std::fabs(v) > t) ++count;
  return static_cast<double>(count) * f.spec().cell_volume();
}

namespace detail {

// Cell order realizing f*: values by magnitude descending, ties broken by
// cell index so the result is deterministic.
inline std::vector<std::size_t> descending_value_order(const GridFunction& f) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::span<const double> v = f.values();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::fabs(v[a]) > std::fabs(v[b]);
                   });
  return order;
}

}  // namespace detail

// f*(s) realized by exact sorting of cell values: the k-th largest |value|
// holds on [k cv, (k+1) cv). Equal consecutive levels are merged.
inline RearrangementProfile decreasing_rearrangement(const GridFunction& f) {
  const double cv = f.spec().cell_volume();
  const auto order = detail::descending_value_order(f);
  std::span<const double> v = f.values();

  RearrangementProfile profile;
  profile.breakpoints.push_back(0.0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double level = std::fabs(v[order[k]]);
    if (level <= 0.0) break;  // zero tail carries no profile mass
    const double s_next = static_cast<double>(k + 1) * cv;
    if (!profile.levels.empty() && profile.levels.back() == level) {
      profile.breakpoints.back() = s_next;  // extend the run
    } else {
      profile.levels.push_back(level);
      profile.breakpoints.push_back(s_next);
    }
  }
  return profile;
}

// f_star(x) = f*(omega_n |x|^n), realized as the measure-preserving
// permutation of cell values: the cell with the k-th smallest center radius
// receives the k-th largest |value|. This makes equimeasurability exact up
// to floating point for every integrand.
inline GridFunction spherical_rearrangement(const GridFunction& f) {
  const GridSpec& spec = f.spec();
  const std::size_t total = spec.cell_count();

  const auto value_order = detail::descending_value_order(f);

  std::vector<double> radius2(total);
  std::array<double, 3> x{};
  std::span<double> xs(x.data(), static_cast<std::size_t>(spec.dim));
  for (std::size_t i = 0; i < total; ++i) {
    spec.cell_center(i, xs);
    double r2 = 0.0;
    for (int a = 0; a < spec.dim; ++a) r2 += x[a] * x[a];
    radius2[i] = r2;
  }
  std::vector<std::size_t> radial_order(total);
  std::iota(radial_order.begin(), radial_order.end(), std::size_t{0});
  std::stable_sort(radial_order.begin(), radial_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return radius2[a] < radius2[b];
                   });

  std::span<const double> v = f.values();
  std::vector<double> out(total, 0.0);
  for (std::size_t k = 0; k < total; ++k)
    out[radial_order[k]] = std::fabs(v[value_order[k]]);

  return GridFunction(spec, std::move(out));
}

}  // namespace agn

#endif  // AGN_REARRANGEMENT_HPP
