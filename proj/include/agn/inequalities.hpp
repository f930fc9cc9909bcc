#ifndef AGN_INEQUALITIES_HPP
#define AGN_INEQUALITIES_HPP

#include <cmath>
#include <map>
#include <string>

#include "agn/affine_energy.hpp"
#include "agn/constants.hpp"
#include "agn/grid.hpp"
#include "agn/quadrature.hpp"
#include "agn/rearrangement.hpp"

namespace agn {

enum class InequalityId {
  affine_gn,
  euclidean_gn,
  affine_sobolev,
  affine_nash,
  log_sobolev,
  affine_moser_trudinger,
  euclidean_moser_trudinger,
  affine_morrey_sobolev,
  euclidean_morrey_sobolev,
};

inline std::string to_string(InequalityId id) {
  switch (id) {
    case InequalityId::affine_gn: return "affine_gn";
    case InequalityId::euclidean_gn: return "euclidean_gn";
    case InequalityId::affine_sobolev: return "affine_sobolev";
    case InequalityId::affine_nash: return "affine_nash";
    case InequalityId::log_sobolev: return "log_sobolev";
    case InequalityId::affine_moser_trudinger: return "affine_moser_trudinger";
    case InequalityId::euclidean_moser_trudinger:
      return "euclidean_moser_trudinger";
    case InequalityId::affine_morrey_sobolev: return "affine_morrey_sobolev";
    case InequalityId::euclidean_morrey_sobolev:
      return "euclidean_morrey_sobolev";
  }
  return "?";
}

inline InequalityId inequality_id_from_string(const std::string& s) {
  if (s == "affine_gn") return InequalityId::affine_gn;
  if (s == "euclidean_gn") return InequalityId::euclidean_gn;
  if (s == "affine_sobolev") return InequalityId::affine_sobolev;
  if (s == "affine_nash") return InequalityId::affine_nash;
  if (s == "log_sobolev") return InequalityId::log_sobolev;
  if (s == "affine_moser_trudinger") return InequalityId::affine_moser_trudinger;
  if (s == "euclidean_moser_trudinger")
    return InequalityId::euclidean_moser_trudinger;
  if (s == "affine_morrey_sobolev") return InequalityId::affine_morrey_sobolev;
  if (s == "euclidean_morrey_sobolev")
    return InequalityId::euclidean_morrey_sobolev;
  throw parameter_error("unknown inequality id: " + s);
}

// Default acceptance tolerances, keyed by what dominates the error budget.
struct ToleranceTable {
  double radial_identity = 1e-3;     // radial inputs, spectral quadrature
  double power_law_extremal = 1e-2;  // truncation-limited families
  double affine_transformed = 2e-2;  // interpolation-limited inputs
  double generic = 1e-2;
};

// One inequality evaluation. Both sides are positive; the inequality in
// canonical orientation reads lhs <= rhs, so passed means
// ratio = lhs/rhs <= 1 + tol.
struct InequalityReport {
  InequalityId inequality_id;
  std::map<std::string, double> parameters;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double slack = 0.0;
  int quadrature_directions = 0;
  bool passed = false;
  std::string note;
};

namespace detail {

inline InequalityReport finish_report(InequalityId id, double lhs, double rhs,
                                      int directions, double tol,
                                      std::map<std::string, double> params) {
  if (!(rhs > 0.0) || !std::isfinite(rhs) || !std::isfinite(lhs))
    throw degenerate_input_error(to_string(id) +
                                 ": degenerate evaluation (rhs = " +
                                 std::to_string(rhs) + ")");
  InequalityReport rep;
  rep.inequality_id = id;
  rep.parameters = std::move(params);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.ratio = lhs / rhs;
  rep.slack = 1.0 - rep.ratio;
  rep.quadrature_directions = directions;
  rep.passed = rep.ratio <= 1.0 + tol;
  return rep;
}

}  // namespace detail

// ||f||_s <= K_opt E_p(f)^theta ||f||_q^(1-theta).
inline InequalityReport check_affine_gn(const GridFunction& f,
                                        const GNParameters& gp,
                                        const SphericalQuadrature& quad,
                                        double k_opt, double tol = 1e-2) {
  gp.validate();
  if (!(k_opt > 0.0)) throw parameter_error("check_affine_gn: k_opt must be > 0");
  const double theta = theta_gn(gp);
  const double lhs = lp_norm(f, gp.s);
  const double energy = affine_energy(f, gp.p, quad);
  const double rhs =
      k_opt * std::pow(energy, theta) * std::pow(lp_norm(f, gp.q), 1.0 - theta);
  return detail::finish_report(
      InequalityId::affine_gn, lhs, rhs, static_cast<int>(quad.size()), tol,
      {{"n", static_cast<double>(gp.n)}, {"p", gp.p}, {"q", gp.q},
       {"s", gp.s}, {"theta", theta}, {"k_opt", k_opt}});
}

// Same with the Euclidean gradient norm in place of the affine energy.
inline InequalityReport check_euclidean_gn(const GridFunction& f,
                                           const GNParameters& gp,
                                           double k_opt, double tol = 1e-2) {
  gp.validate();
  if (!(k_opt > 0.0))
    throw parameter_error("check_euclidean_gn: k_opt must be > 0");
  const double theta = theta_gn(gp);
  const double lhs = lp_norm(f, gp.s);
  const double rhs = k_opt * std::pow(gradient_lp_norm(f, gp.p), theta) *
                     std::pow(lp_norm(f, gp.q), 1.0 - theta);
  return detail::finish_report(
      InequalityId::euclidean_gn, lhs, rhs, 0, tol,
      {{"n", static_cast<double>(gp.n)}, {"p", gp.p}, {"q", gp.q},
       {"s", gp.s}, {"theta", theta}, {"k_opt", k_opt}});
}

// C_pn ||f||_{p*} <= E_p(f); C_pn realized as the theta = 1 endpoint of the
// superquadratic constant family (q = p(n-1)/(n-p)).
inline InequalityReport check_affine_sobolev(const GridFunction& f, int n,
                                             double p,
                                             const SphericalQuadrature& quad,
                                             double tol = 1e-2) {
  const double nn = static_cast<double>(n);
  if (!(p > 1.0 && p < nn))
    throw parameter_error("check_affine_sobolev: need 1 < p < n");
  const double q_endpoint = p * (nn - 1.0) / (nn - p);
  const double c_pn = c2(n, p, q_endpoint);
  const double p_star = nn * p / (nn - p);
  const double lhs = c_pn * lp_norm(f, p_star);
  const double rhs = affine_energy(f, p, quad);
  return detail::finish_report(
      InequalityId::affine_sobolev, lhs, rhs, static_cast<int>(quad.size()),
      tol,
      {{"n", nn}, {"p", p}, {"p_star", p_star}, {"C_pn", c_pn}});
}

// (int |f|^p)^(1 + p/(n(p-1))) <=
//   K_opt^(p + p^2/(n(p-1))) E_p(f)^p (int |f|)^(p^2/(n(p-1))).
inline InequalityReport check_affine_nash(const GridFunction& f, int n,
                                          double p,
                                          const SphericalQuadrature& quad,
                                          double k_opt, double tol = 1e-2) {
  const double nn = static_cast<double>(n);
  if (!(p > 1.0 && p < nn))
    throw parameter_error("check_affine_nash: need 1 < p < n");
  if (!(k_opt > 0.0)) throw parameter_error("check_affine_nash: k_opt must be > 0");
  const double mass_p = std::pow(lp_norm(f, p), p);
  const double mass_1 = lp_norm(f, 1.0);
  const double energy = affine_energy(f, p, quad);
  const double e1 = 1.0 + p / (nn * (p - 1.0));
  const double e2 = p + p * p / (nn * (p - 1.0));
  const double e3 = p * p / (nn * (p - 1.0));
  const double lhs = std::pow(mass_p, e1);
  const double rhs =
      std::pow(k_opt, e2) * std::pow(energy, p) * std::pow(mass_1, e3);
  return detail::finish_report(
      InequalityId::affine_nash, lhs, rhs, static_cast<int>(quad.size()), tol,
      {{"n", nn}, {"p", p}, {"k_opt", k_opt}});
}

// Entropy bound int |f|^p log |f| <= (n/p^2) log(C4 E_p(f)^p) for
// ||f||_p = 1 (enforced by internal normalization). Both report sides are
// exponentiated so that they are positive and the ratio keeps its usual
// meaning: lhs = exp((p^2/n) int |f|^p log |f|), rhs = C4 E_p(f)^p. The raw
// entropy sides are kept in the parameters map.
inline InequalityReport check_log_sobolev(const GridFunction& f, int n,
                                          double p,
                                          const SphericalQuadrature& quad,
                                          double tol = 1e-2) {
  const double nn = static_cast<double>(n);
  if (!(p > 1.0 && p < nn))
    throw parameter_error("check_log_sobolev: need 1 < p < n");
  const double norm_p = lp_norm(f, p);
  if (!(norm_p > 0.0))
    throw degenerate_input_error("check_log_sobolev: f is identically zero");

  const double inv = 1.0 / norm_p;
  kahan_sum entropy_acc;
  for (double v : f.values()) {
    const double a = std::fabs(v) * inv;
    if (a > 0.0) entropy_acc.add(pow_abs(a, p) * std::log(a));
  }
  const double entropy = entropy_acc.value() * f.spec().cell_volume();

  // E_p is 1-homogeneous, so normalize by scaling the energy directly
  const double energy = affine_energy(f, p, quad) * inv;
  const double c4_val = c4(n, p);
  const double entropy_rhs =
      (nn / (p * p)) * std::log(c4_val * std::pow(energy, p));

  const double lhs = std::exp((p * p / nn) * entropy);
  const double rhs = c4_val * std::pow(energy, p);
  auto rep = detail::finish_report(
      InequalityId::log_sobolev, lhs, rhs, static_cast<int>(quad.size()), tol,
      {{"n", nn}, {"p", p}, {"C4", c4_val},
       {"entropy_lhs", entropy}, {"entropy_rhs", entropy_rhs}});
  rep.note = "sides exponentiated; raw entropy values in parameters";
  return rep;
}

// Exponential-class bound at p = n:
// mean over supp f of exp((n omega_n^(1/n) |f| / D)^(n/(n-1))) <= m_n,
// D = E_n(f) (affine) or ||grad f||_n (euclidean). m_n is a configured
// constant with no claim of correctness; the exponent uses the
// n omega_n^(1/n) convention.
inline InequalityReport check_moser_trudinger(const GridFunction& f, int n,
                                              const SphericalQuadrature& quad,
                                              double m_n_config, bool affine,
                                              double tol = 1e-2) {
  const double nn = static_cast<double>(n);
  if (n < 2) throw parameter_error("check_moser_trudinger: need n > 1");
  if (!(m_n_config > 0.0))
    throw parameter_error("check_moser_trudinger: m_n must be > 0");
  const double max_abs = f.max_abs();
  if (!(max_abs > 0.0))
    throw degenerate_input_error("check_moser_trudinger: f is identically zero");
  const double threshold = 1e-12 * max_abs;
  const double support = support_measure(f, threshold);
  if (!(support > 0.0) || !(support < f.spec().box_volume()))
    throw degenerate_input_error(
        "check_moser_trudinger: need 0 < |supp f| < box volume");

  const EnergyPair energies = energy_pair(f, nn, quad);
  const double coeff = nn * std::pow(omega(nn), 1.0 / nn);
  const double conjugate = nn / (nn - 1.0);

  const auto mean_exp = [&](double denom) {
    kahan_sum acc;
    for (double v : f.values()) {
      const double a = std::fabs(v);
      if (a > threshold)
        acc.add(std::exp(std::pow(coeff * a / denom, conjugate)));
    }
    return acc.value() * f.spec().cell_volume() / support;
  };
  const double lhs_affine = mean_exp(energies.affine);
  const double lhs_euclidean = mean_exp(energies.euclidean);

  auto rep = detail::finish_report(
      affine ? InequalityId::affine_moser_trudinger
             : InequalityId::euclidean_moser_trudinger,
      affine ? lhs_affine : lhs_euclidean, m_n_config,
      static_cast<int>(quad.size()), tol,
      {{"n", nn}, {"support", support}, {"exponent_coefficient", coeff},
       {"lhs_affine", lhs_affine}, {"lhs_euclidean", lhs_euclidean},
       {"affine_energy", energies.affine},
       {"gradient_norm", energies.euclidean}});
  rep.note = "exponent constant n*omega_n^(1/n); m_n is configured, not derived";
  return rep;
}

// ||f||_inf <= b_np |supp f|^(1/n - 1/p) D, p > n.
inline InequalityReport check_morrey_sobolev(const GridFunction& f, int n,
                                             double p,
                                             const SphericalQuadrature& quad,
                                             bool affine, double tol = 1e-2) {
  const double nn = static_cast<double>(n);
  if (!(p > nn)) throw parameter_error("check_morrey_sobolev: need p > n");
  const double max_abs = f.max_abs();
  if (!(max_abs > 0.0))
    throw degenerate_input_error("check_morrey_sobolev: f is identically zero");
  const double threshold = 1e-12 * max_abs;
  const double support = support_measure(f, threshold);
  if (!(support < f.spec().box_volume()))
    throw degenerate_input_error(
        "check_morrey_sobolev: support must be smaller than the box");

  const EnergyPair energies = energy_pair(f, p, quad);
  const double b = b_np(n, p);
  const double denom = affine ? energies.affine : energies.euclidean;
  const double rhs = b * std::pow(support, 1.0 / nn - 1.0 / p) * denom;
  return detail::finish_report(
      affine ? InequalityId::affine_morrey_sobolev
             : InequalityId::euclidean_morrey_sobolev,
      max_abs, rhs, static_cast<int>(quad.size()), tol,
      {{"n", nn}, {"p", p}, {"b_np", b}, {"support", support},
       {"affine_energy", energies.affine},
       {"gradient_norm", energies.euclidean}});
}

}  // namespace agn

#endif  // AGN_INEQUALITIES_HPP
