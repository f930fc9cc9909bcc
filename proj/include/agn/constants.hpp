#ifndef AGN_CONSTANTS_HPP
#define AGN_CONSTANTS_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "agn/errors.hpp"
#include "agn/numeric.hpp"

namespace agn {

inline constexpr double pi_v = 3.14159265358979323846264338327950288;

// Gamma function, Lanczos approximation (g = 7, 9 terms), reflection for
// x < 0.5. Relative error stays below 1e-13 across (0, 50].
inline double gamma_fn(double x) {
  if (!(x > 0.0))
    throw parameter_error("gamma_fn: argument must be positive, got " +
                          std::to_string(x));
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> coeff = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return pi_v / (std::sin(pi_v * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double a = coeff[0];
  for (std::size_t i = 1; i < coeff.size(); ++i)
    a += coeff[i] / (z + static_cast<double>(i));
  const double t = z + g + 0.5;
  return std::sqrt(2.0 * pi_v) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

// Volume of the unit ball of real dimension t: pi^(t/2) / Gamma(t/2 + 1).
// Fractional t appear through c_np with non-integer p.
inline double omega(double t) {
  if (t < 0.0) throw parameter_error("omega: index must be >= 0");
  return std::pow(pi_v, 0.5 * t) / gamma_fn(0.5 * t + 1.0);
}

// Normalization of the affine energy:
// c_np = (n omega_n omega_{p-1} / (2 omega_{n+p-2}))^(1/p) (n omega_n)^(1/n).
inline double c_np(int n, double p) {
  if (n < 1) throw parameter_error("c_np: n must be >= 1");
  if (!(p >= 1.0)) throw parameter_error("c_np: p must be >= 1");
  const double nn = static_cast<double>(n);
  const double inner =
      nn * omega(nn) * omega(p - 1.0) / (2.0 * omega(nn + p - 2.0));
  return std::pow(inner, 1.0 / p) * std::pow(nn * omega(nn), 1.0 / nn);
}

// Parameter block of the general interpolation inequality:
// 1 < p < n and 1 <= q < s < p* = np/(n-p).
struct GNParameters {
  int n = 2;
  double p = 1.5;
  double q = 2.0;
  double s = 3.0;

  double p_star() const {
    return static_cast<double>(n) * p / (static_cast<double>(n) - p);
  }

  void validate() const {
    if (n <= 1) throw parameter_error("GNParameters: n must be > 1");
    if (!(p > 1.0 && p < static_cast<double>(n)))
      throw parameter_error("GNParameters: need 1 < p < n");
    if (!(q >= 1.0)) throw parameter_error("GNParameters: need q >= 1");
    if (!(q < s && s < p_star()))
      throw parameter_error("GNParameters: need q < s < np/(n-p)");
  }
};

// theta = np(s-q) / (s [np - q(n-p)]).
inline double theta_gn(const GNParameters& gp) {
  gp.validate();
  const double n = static_cast<double>(gp.n);
  return n * gp.p * (gp.s - gp.q) /
         (gp.s * (n * gp.p - gp.q * (n - gp.p)));
}

struct InterpolationConstant {
  double alpha;
  double beta;
  double value;
};

// alpha = np - s(n-p), beta = n(s-q),
// C = (alpha+beta) / ((q alpha)^(alpha/(alpha+beta)) (p beta)^(beta/(alpha+beta))).
inline InterpolationConstant C_of_npqs(const GNParameters& gp) {
  gp.validate();
  const double n = static_cast<double>(gp.n);
  const double alpha = n * gp.p - gp.s * (n - gp.p);
  const double beta = n * (gp.s - gp.q);
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw parameter_error("C_of_npqs: need alpha > 0 and beta > 0");
  const double ab = alpha + beta;
  const double value = ab / (std::pow(gp.q * alpha, alpha / ab) *
                             std::pow(gp.p * beta, beta / ab));
  return {alpha, beta, value};
}

// Superquadratic regime p < q <= p(n-1)/(n-p), s = p(q-1)/(p-1).
inline double c2(int n, double p, double q) {
  const double nn = static_cast<double>(n);
  if (!(p > 1.0 && p < nn)) throw parameter_error("c2: need 1 < p < n");
  if (!(q > p && q <= p * (nn - 1.0) / (nn - p)))
    throw parameter_error("c2: need p < q <= p(n-1)/(n-p)");
  const double s = p * (q - 1.0) / (p - 1.0);
  const double theta = (q - p) * nn / ((q - 1.0) * (nn * p - (nn - p) * q));
  const double delta = nn * p - q * (nn - p);
  if (!(delta > 0.0)) throw parameter_error("c2: need np - q(n-p) > 0");
  const double t1 = std::pow((q - p) / (p * std::sqrt(pi_v)), theta);
  const double t2 = std::pow(p * q / (nn * (q - p)), theta / p);
  const double t3 = std::pow(delta / (p * q), 1.0 / s);
  const double gammas =
      gamma_fn(q * (p - 1.0) / (q - p)) * gamma_fn(nn / 2.0 + 1.0) /
      (gamma_fn(((p - 1.0) / p) * (delta / (q - p))) *
       gamma_fn(nn * (p - 1.0) / p + 1.0));
  return t1 * t2 * t3 * std::pow(gammas, theta / nn);
}

// Subquadratic regime 1 < q < p, r = p(q-1)/(p-1).
inline double c3(int n, double p, double q) {
  const double nn = static_cast<double>(n);
  if (!(p > 1.0 && p < nn)) throw parameter_error("c3: need 1 < p < n");
  if (!(q > 1.0 && q < p)) throw parameter_error("c3: need 1 < q < p");
  const double delta = nn * p - q * (nn - p);
  if (!(delta > 0.0)) throw parameter_error("c3: need np - q(n-p) > 0");
  const double r = p * (q - 1.0) / (p - 1.0);
  const double theta =
      (p - q) * nn / (q * (nn * (nn - q) + p * (q - 1.0)));
  const double t1 = std::pow((p - q) / (p * std::sqrt(pi_v)), theta);
  const double t2 = std::pow(p * q / (nn * (p - q)), theta / p);
  const double t3 = std::pow(p * q / delta, (1.0 - theta) / r);
  const double gammas =
      gamma_fn(((p - 1.0) / p) * (delta / (p - q)) + 1.0) *
      gamma_fn(nn / 2.0 + 1.0) /
      (gamma_fn(q * (p - 1.0) / (p - q) + 1.0) *
       gamma_fn(nn * (p - 1.0) / p + 1.0));
  return t1 * t2 * t3 * std::pow(gammas, theta / nn);
}

// Logarithmic Sobolev constant:
// C4 = (p/n) ((p-1)/e)^(p-1) pi^(-p/2) [Gamma(n/2+1)/Gamma(n(p-1)/p+1)]^(p/n).
inline double c4(int n, double p) {
  const double nn = static_cast<double>(n);
  if (!(p > 1.0 && p < nn)) throw parameter_error("c4: need 1 < p < n");
  const double gammas =
      gamma_fn(nn / 2.0 + 1.0) / gamma_fn(nn * (p - 1.0) / p + 1.0);
  return (p / nn) * std::pow((p - 1.0) / std::exp(1.0), p - 1.0) *
         std::pow(pi_v, -0.5 * p) * std::pow(gammas, p / nn);
}

// K_opt = [C(n,p,q,s) / E(u_inf)]^((np+ps-nq)/(s[np-q(n-p)])).
inline double k_opt_from_energy(const GNParameters& gp, double e_inf) {
  if (!(e_inf > 0.0))
    throw parameter_error("k_opt_from_energy: energy must be positive");
  const double n = static_cast<double>(gp.n);
  const double c = C_of_npqs(gp).value;
  const double expo = (n * gp.p + gp.p * gp.s - n * gp.q) /
                      (gp.s * (n * gp.p - gp.q * (n - gp.p)));
  return std::pow(c / e_inf, expo);
}

// Supremum-norm constant of the p > n regime, defined operationally as the
// ratio ||f||_inf / (|sprt f|^(1/n-1/p) ||grad f||_p) on the radial profile
// f(r) = (1 - (r/R)^kappa)_+, kappa = (p-n)/(p-1). The gradient integral is
// evaluated by adaptive radial quadrature after the substitution r = R u^m,
// which absorbs the integrable singularity of |f'|^p at r = 0.
inline double b_np(int n, double p, double support_radius = 1.0) {
  const double nn = static_cast<double>(n);
  if (!(p > nn)) throw parameter_error("b_np: need p > n");
  if (!(support_radius > 0.0))
    throw parameter_error("b_np: support radius must be positive");
  const double kappa = (p - nn) / (p - 1.0);
  const double R = support_radius;
  const int m = std::max(1, static_cast<int>(std::ceil(2.0 / kappa)));

  // integrand of ||grad f||_p^p in radial coordinates, transformed to u
  const double surface = nn * omega(nn);  // |S^{n-1}|
  const auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double r = R * std::pow(u, static_cast<double>(m));
    const double slope = (kappa / R) * std::pow(r / R, kappa - 1.0);
    const double jac = R * static_cast<double>(m) *
                       std::pow(u, static_cast<double>(m) - 1.0);
    return pow_abs(slope, p) * std::pow(r, nn - 1.0) * surface * jac;
  };
  const double grad_pp = adaptive_simpson(integrand, 0.0, 1.0, 1e-14);
  const double support = omega(nn) * std::pow(R, nn);
  return 1.0 / (std::pow(support, 1.0 / nn - 1.0 / p) *
                std::pow(grad_pp, 1.0 / p));
}

// All closed-form constants applicable to a parameter point. Optional
// fields are absent when the corresponding regime hypotheses fail.
struct SharpConstantSet {
  std::optional<double> theta;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> C_npqs;
  std::optional<double> c2;
  std::optional<double> c3;
  std::optional<double> c4;
  std::optional<double> delta;
  double c_np = 0.0;
  double omega_n = 0.0;
};

inline SharpConstantSet sharp_constant_set(int n, double p,
                                           std::optional<double> q,
                                           std::optional<double> s) {
  if (n < 1) throw parameter_error("sharp_constant_set: n must be >= 1");
  if (!(p >= 1.0)) throw parameter_error("sharp_constant_set: p must be >= 1");
  const double nn = static_cast<double>(n);
  SharpConstantSet set;
  set.omega_n = omega(nn);
  set.c_np = c_np(n, p);
  if (p > 1.0 && p < nn) set.c4 = c4(n, p);
  if (q) {
    set.delta = nn * p - *q * (nn - p);
    if (p > 1.0 && p < nn && *q > p && *q <= p * (nn - 1.0) / (nn - p))
      set.c2 = c2(n, p, *q);
    if (p > 1.0 && p < nn && *q > 1.0 && *q < p) set.c3 = c3(n, p, *q);
  }
  if (q && s) {
    GNParameters gp{n, p, *q, *s};
    gp.validate();
    const auto cc = C_of_npqs(gp);
    set.theta = theta_gn(gp);
    set.alpha = cc.alpha;
    set.beta = cc.beta;
    set.C_npqs = cc.value;
  } else if (q && set.c2) {
    set.theta = (*q - p) * nn / ((*q - 1.0) * (nn * p - (nn - p) * *q));
  } else if (q && set.c3) {
    set.theta = (p - *q) * nn / (*q * (nn * (nn - *q) + p * (*q - 1.0)));
  }
  return set;
}

}  // namespace agn

#endif  // AGN_CONSTANTS_HPP
