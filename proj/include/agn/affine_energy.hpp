#ifndef AGN_AFFINE_ENERGY_HPP
#define AGN_AFFINE_ENERGY_HPP

#include <cmath>
#include <span>
#include <vector>

#include "agn/constants.hpp"
#include "agn/grid.hpp"
#include "agn/numeric.hpp"
#include "agn/quadrature.hpp"
#include "agn/runtime.hpp"

namespace agn {

namespace detail {

inline double directional_lp_norm_of_field(const VectorField& g,
                                           std::span<const double> v,
                                           double p) {
  const int n = g.spec.dim;
  const std::size_t total = g.spec.cell_count();
  kahan_sum acc;
  if (n == 2) {
    const double v0 = v[0], v1 = v[1];
    const double* g0 = g.components[0].data();
    const double* g1 = g.components[1].data();
    for (std::size_t i = 0; i < total; ++i)
      acc.add(pow_abs(v0 * g0[i] + v1 * g1[i], p));
  } else if (n == 3) {
    const double v0 = v[0], v1 = v[1], v2 = v[2];
    const double* g0 = g.components[0].data();
    const double* g1 = g.components[1].data();
    const double* g2 = g.components[2].data();
    for (std::size_t i = 0; i < total; ++i)
      acc.add(pow_abs(v0 * g0[i] + v1 * g1[i] + v2 * g2[i], p));
  } else {
    for (std::size_t i = 0; i < total; ++i) {
      double d = 0.0;
      for (int a = 0; a < n; ++a) d += v[a] * g.components[a][i];
      acc.add(pow_abs(d, p));
    }
  }
  return std::pow(acc.value() * g.spec.cell_volume(), 1.0 / p);
}

inline double gradient_lp_norm_of_field(const VectorField& g, double p) {
  const std::size_t total = g.spec.cell_count();
  kahan_sum acc;
  for (std::size_t i = 0; i < total; ++i)
    acc.add(pow_abs(g.euclidean_norm_at(i), p));
  return std::pow(acc.value() * g.spec.cell_volume(), 1.0 / p);
}

// Core quadrature assembly. The per-direction norms may be computed
// concurrently; the final weighted reduction runs in direction order, in
// log space, so the result is independent of the worker count and immune
// to overflow of the -n power.
inline double affine_energy_of_field(const VectorField& g, double p,
                                     const SphericalQuadrature& quad,
                                     double grad_norm) {
  const int n = g.spec.dim;
  if (quad.dim != n)
    throw parameter_error("affine_energy: quadrature dim does not match grid");
  if (!(grad_norm > 0.0))
    throw degenerate_input_error(
        "affine_energy: input has vanishing gradient (f identically zero?)");

  const bool halved = (n == 2) && quad.antipodal_pairs();
  const std::size_t m = halved ? quad.size() / 2 : quad.size();

  std::vector<double> norms(m);
  parallel_for(m, [&](std::size_t j) {
    std::span<const double> v(quad.directions[j].data(),
                              static_cast<std::size_t>(n));
    norms[j] = directional_lp_norm_of_field(g, v, p);
  });

  const double floor = 1e-14 * grad_norm;
  std::vector<double> terms(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (norms[j] < floor)
      throw degenerate_input_error(
          "affine_energy: derivative vanishes along direction " +
          std::to_string(j) + " (flat input along this direction)");
    const double w = halved ? 2.0 * quad.weights[j] : quad.weights[j];
    terms[j] = std::log(w) - static_cast<double>(n) * std::log(norms[j]);
  }
  double peak = terms[0];
  for (std::size_t j = 1; j < m; ++j) peak = std::max(peak, terms[j]);
  kahan_sum acc;
  for (std::size_t j = 0; j < m; ++j) acc.add(std::exp(terms[j] - peak));
  const double log_integral = peak + std::log(acc.value());
  return c_np(n, p) * std::exp(-log_integral / static_cast<double>(n));
}

}  // namespace detail

// || v . grad f ||_p for a unit direction v.
inline double directional_lp_norm(const GridFunction& f,
                                  std::span<const double> v, double p) {
  if (!(p >= 1.0)) throw parameter_error("directional_lp_norm: p must be >= 1");
  double len2 = 0.0;
  for (int a = 0; a < f.spec().dim; ++a) len2 += v[a] * v[a];
  if (std::fabs(std::sqrt(len2) - 1.0) > 1e-9)
    throw parameter_error("directional_lp_norm: direction must be unit length");
  return detail::directional_lp_norm_of_field(gradient(f), v, p);
}

// || |grad f| ||_p with the Euclidean vector norm.
inline double gradient_lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0)) throw parameter_error("gradient_lp_norm: p must be >= 1");
  return detail::gradient_lp_norm_of_field(gradient(f), p);
}

// Affine energy: c_np (sum_j w_j ||D_{v_j} f||_p^{-n})^{-1/n}.
inline double affine_energy(const GridFunction& f, double p,
                            const SphericalQuadrature& quad) {
  if (!(p >= 1.0)) throw parameter_error("affine_energy: p must be >= 1");
  const VectorField g = gradient(f);
  const double grad_norm = detail::gradient_lp_norm_of_field(g, p);
  return detail::affine_energy_of_field(g, p, quad, grad_norm);
}

struct EnergyPair {
  double affine;     // E_p(f)
  double euclidean;  // || grad f ||_p
};

// Both functionals from a single shared gradient field.
inline EnergyPair energy_pair(const GridFunction& f, double p,
                              const SphericalQuadrature& quad) {
  if (!(p >= 1.0)) throw parameter_error("energy_pair: p must be >= 1");
  const VectorField g = gradient(f);
  const double grad_norm = detail::gradient_lp_norm_of_field(g, p);
  return {detail::affine_energy_of_field(g, p, quad, grad_norm), grad_norm};
}

}  // namespace agn

#endif  // AGN_AFFINE_ENERGY_HPP
