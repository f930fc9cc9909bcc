#ifndef AGN_MINIMIZE_HPP
#define AGN_MINIMIZE_HPP

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "agn/affine_energy.hpp"
#include "agn/constants.hpp"
#include "agn/extremals.hpp"
#include "agn/grid.hpp"
#include "agn/numeric.hpp"

namespace agn {

enum class SeedProfile { gaussian, gn_extremal_guess };

struct MinimizeOptions {
  int max_iterations = 600;
  double step_size = 0.25;  // initial pseudo-time step
  // absolute smoothing is regularization * (initial max |grad u|)
  double regularization = 1e-6;
  double stop_tol = 1e-6;  // relative iterate change per unit step
  SeedProfile seed_profile = SeedProfile::gaussian;

  void validate() const {
    if (max_iterations < 1)
      throw parameter_error("MinimizeOptions: max_iterations must be >= 1");
    if (!(step_size > 0.0))
      throw parameter_error("MinimizeOptions: step_size must be > 0");
    if (!(regularization > 0.0))
      throw parameter_error("MinimizeOptions: regularization must be > 0");
    if (!(stop_tol > 0.0))
      throw parameter_error("MinimizeOptions: stop_tol must be > 0");
  }
};

struct MinimizeResult {
  GridFunction u_inf;
  double energy = 0.0;
  double k_opt = 0.0;
  int iterations_used = 0;
  bool converged = false;
};

// E(u) = (1/p) int |grad u|^p + (1/q) int |u|^q.
inline double energy_functional(const GridFunction& u, double p, double q) {
  if (!(p >= 1.0 && q >= 1.0))
    throw parameter_error("energy_functional: p, q must be >= 1");
  const double gp = gradient_lp_norm(u, p);
  const double uq = lp_norm(u, q);
  return std::pow(gp, p) / p + std::pow(uq, q) / q;
}

namespace detail {

// The finite-difference gradient operator G and its exact transpose. Using
// the true adjoint of the stencil that defines the discrete energy keeps
// div := -G^T consistent with descent on that energy.
struct FdOperator {
  GridSpec spec;
  std::array<std::size_t, 3> stride{};

  explicit FdOperator(const GridSpec& s) : spec(s) {
    const int n = spec.dim;
    stride[static_cast<std::size_t>(n) - 1] = 1;
    for (int a = n - 2; a >= 0; --a)
      stride[a] = stride[a + 1] * static_cast<std::size_t>(spec.points_per_axis);
  }

  // stencil of the derivative along axis a at axis-index ia:
  // offsets (in units of the axis stride) and coefficients (units 1/h)
  int stencil(int ia, std::array<int, 4>& off,
              std::array<double, 4>& coef) const {
    const int N = spec.points_per_axis;
    const double h = spec.cell_width();
    if (ia == 0) {
      off = {0, 1, 0, 0};
      coef = {-1.0 / h, 1.0 / h, 0.0, 0.0};
      return 2;
    }
    if (ia == N - 1) {
      off = {-1, 0, 0, 0};
      coef = {-1.0 / h, 1.0 / h, 0.0, 0.0};
      return 2;
    }
    if (ia == 1 || ia == N - 2) {
      off = {-1, 1, 0, 0};
      coef = {-0.5 / h, 0.5 / h, 0.0, 0.0};
      return 2;
    }
    off = {-2, -1, 1, 2};
    coef = {1.0 / (12.0 * h), -8.0 / (12.0 * h), 8.0 / (12.0 * h),
            -1.0 / (12.0 * h)};
    return 4;
  }

  void apply(const std::vector<double>& u, VectorField& out) const {
    const int n = spec.dim;
    const std::size_t total = spec.cell_count();
    std::array<int, 3> idx{};
    std::array<int, 4> off{};
    std::array<double, 4> coef{};
    for (std::size_t i = 0; i < total; ++i) {
      spec.unflatten(i, std::span<int>(idx.data(), static_cast<std::size_t>(n)));
      for (int a = 0; a < n; ++a) {
        const int count = stencil(idx[a], off, coef);
        double d = 0.0;
        for (int k = 0; k < count; ++k)
          d += coef[k] * u[i + static_cast<std::size_t>(
                                   static_cast<long long>(off[k]) *
                                   static_cast<long long>(stride[a]))];
        out.components[a][i] = d;
      }
    }
  }

  // out += G_a^T in_a summed over axes
  void apply_transpose_accumulate(const VectorField& in,
                                  std::vector<double>& out) const {
    const int n = spec.dim;
    const std::size_t total = spec.cell_count();
    std::array<int, 3> idx{};
    std::array<int, 4> off{};
    std::array<double, 4> coef{};
    for (std::size_t i = 0; i < total; ++i) {
      spec.unflatten(i, std::span<int>(idx.data(), static_cast<std::size_t>(n)));
      for (int a = 0; a < n; ++a) {
        const double v = in.components[a][i];
        if (v == 0.0) continue;
        const int count = stencil(idx[a], off, coef);
        for (int k = 0; k < count; ++k)
          out[i + static_cast<std::size_t>(
                      static_cast<long long>(off[k]) *
                      static_cast<long long>(stride[a]))] += coef[k] * v;
      }
    }
  }

  // diagonal of G^T W G for the Jacobi preconditioner
  void weighted_normal_diagonal(const std::vector<double>& w,
                                std::vector<double>& diag) const {
    const int n = spec.dim;
    const std::size_t total = spec.cell_count();
    std::fill(diag.begin(), diag.end(), 0.0);
    std::array<int, 3> idx{};
    std::array<int, 4> off{};
    std::array<double, 4> coef{};
    for (std::size_t i = 0; i < total; ++i) {
      spec.unflatten(i, std::span<int>(idx.data(), static_cast<std::size_t>(n)));
      for (int a = 0; a < n; ++a) {
        const int count = stencil(idx[a], off, coef);
        for (int k = 0; k < count; ++k)
          diag[i + static_cast<std::size_t>(
                       static_cast<long long>(off[k]) *
                       static_cast<long long>(stride[a]))] +=
              w[i] * coef[k] * coef[k];
      }
    }
  }
};

inline double energy_of_values(const GridSpec& spec,
                               const std::vector<double>& values,
                               const VectorField& grad, double p, double q) {
  kahan_sum grad_acc, mass_acc;
  const std::size_t total = values.size();
  for (std::size_t i = 0; i < total; ++i) {
    grad_acc.add(pow_abs(grad.euclidean_norm_at(i), p));
    mass_acc.add(pow_abs(values[i], q));
  }
  const double cv = spec.cell_volume();
  return grad_acc.value() * cv / p + mass_acc.value() * cv / q;
}

inline double s_norm_of_values(const GridSpec& spec,
                               const std::vector<double>& values, double s) {
  kahan_sum acc;
  for (double v : values) acc.add(pow_abs(v, s));
  return std::pow(acc.value() * spec.cell_volume(), 1.0 / s);
}

inline void normalize_s(const GridSpec& spec, std::vector<double>& values,
                        double s) {
  const double norm = s_norm_of_values(spec, values, s);
  if (!(norm > 0.0))
    throw solver_error("minimize: iterate collapsed to zero");
  const double inv = 1.0 / norm;
  for (double& v : values) v *= inv;
}

inline GridFunction seed_function(const GNParameters& gp, const GridSpec& grid,
                                  SeedProfile profile) {
  if (profile == SeedProfile::gn_extremal_guess) {
    const double s_match = gp.p * (gp.q - 1.0) / (gp.p - 1.0);
    if (!(gp.q > gp.p) || std::fabs(gp.s - s_match) > 1e-9 * gp.s)
      throw parameter_error(
          "minimize: gn_extremal_guess seed requires q > p and "
          "s = p(q-1)/(p-1)");
    // family scale that minimizes E on the constraint manifold
    const auto energy_at = [&](double log_beta) {
      ExtremalSpec es;
      es.family = ExtremalFamily::gn_superquadratic;
      es.n = gp.n;
      es.p = gp.p;
      es.q = gp.q;
      es.shape = std::exp(log_beta);
      GridFunction f = sample(grid, make_rule(es));
      std::vector<double> vals(f.values().begin(), f.values().end());
      normalize_s(grid, vals, gp.s);
      GridFunction fn(grid, std::move(vals));
      return energy_functional(fn, gp.p, gp.q);
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = -3.0, b = 3.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = energy_at(x1), f2 = energy_at(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = energy_at(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = energy_at(x2);
      }
    }
    ExtremalSpec es;
    es.family = ExtremalFamily::gn_superquadratic;
    es.n = gp.n;
    es.p = gp.p;
    es.q = gp.q;
    es.shape = std::exp(0.5 * (a + b));
    return sample(grid, make_rule(es));
  }
  const double sigma = grid.half_width / 3.0;
  return sample(grid, [sigma](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::exp(-r2 / (2.0 * sigma * sigma));
  });
}

}  // namespace detail

// Constrained minimization inf { E(u) : ||u||_s = 1 } over nonnegative u.
// The descent flow du/dt = div((|grad u|^2 + delta^2)^((p-2)/2) grad u)
// - u^(q-1) is advanced by semi-implicit steps: the diffusion operator with
// frozen weights is solved implicitly (matrix-free Jacobi-preconditioned
// CG), which removes the explicit-step stiffness of the degenerate p < 2
// weight. Every step clamps to u >= 0, renormalizes ||u||_s = 1, and is
// accepted only if the energy does not increase (backtracking halves the
// step otherwise).
inline MinimizeResult minimize(const GNParameters& gp, const GridSpec& grid,
                               const MinimizeOptions& opts = {}) {
  gp.validate();
  grid.validate();
  opts.validate();

  GridFunction seed = detail::seed_function(gp, grid, opts.seed_profile);
  std::vector<double> u(seed.values().begin(), seed.values().end());
  for (double& v : u) v = std::fabs(v);
  detail::normalize_s(grid, u, gp.s);

  const double p = gp.p;
  const double q = gp.q;
  const std::size_t total = grid.cell_count();
  const detail::FdOperator fd(grid);

  VectorField grad_u;
  grad_u.spec = grid;
  grad_u.components.assign(static_cast<std::size_t>(grid.dim),
                           std::vector<double>(total, 0.0));
  fd.apply(u, grad_u);

  double grad_max = 0.0;
  for (std::size_t i = 0; i < total; ++i)
    grad_max = std::max(grad_max, grad_u.euclidean_norm_at(i));
  const double delta = opts.regularization * (grad_max > 0.0 ? grad_max : 1.0);
  const double delta2 = delta * delta;

  double energy = detail::energy_of_values(grid, u, grad_u, p, q);
  double step = opts.step_size;
  const double step_cap = 64.0 * opts.step_size;
  int iterations = 0;
  bool converged = false;
  int uphill_streak = 0;

  std::vector<double> weights(total), diag(total), rhs(total), sol(total);
  std::vector<double> cg_r(total), cg_z(total), cg_pv(total), cg_ap(total);
  VectorField scratch;
  scratch.spec = grid;
  scratch.components.assign(static_cast<std::size_t>(grid.dim),
                            std::vector<double>(total, 0.0));

  // A x = x + step * G^T (W (G x)), SPD for any step > 0
  const auto apply_operator = [&](double tau, const std::vector<double>& x,
                                  std::vector<double>& out) {
    fd.apply(x, scratch);
    for (int a = 0; a < grid.dim; ++a) {
      auto& comp = scratch.components[a];
      for (std::size_t i = 0; i < total; ++i) comp[i] *= weights[i];
    }
    std::copy(x.begin(), x.end(), out.begin());
    // out += tau * G^T scratch, folded through a temporary scale
    for (int a = 0; a < grid.dim; ++a) {
      auto& comp = scratch.components[a];
      for (std::size_t i = 0; i < total; ++i) comp[i] *= tau;
    }
    fd.apply_transpose_accumulate(scratch, out);
  };

  const auto cg_solve = [&](double tau, const std::vector<double>& b,
                            std::vector<double>& x) {
    fd.weighted_normal_diagonal(weights, diag);
    for (std::size_t i = 0; i < total; ++i) diag[i] = 1.0 / (1.0 + tau * diag[i]);
    apply_operator(tau, x, cg_ap);
    double b_norm2 = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      cg_r[i] = b[i] - cg_ap[i];
      b_norm2 += b[i] * b[i];
    }
    if (b_norm2 == 0.0) {
      std::fill(x.begin(), x.end(), 0.0);
      return;
    }
    double rz = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      cg_z[i] = diag[i] * cg_r[i];
      rz += cg_r[i] * cg_z[i];
    }
    std::copy(cg_z.begin(), cg_z.end(), cg_pv.begin());
    const double tol2 = 1e-20 * b_norm2;
    for (int it = 0; it < 500; ++it) {
      double r_norm2 = 0.0;
      for (std::size_t i = 0; i < total; ++i) r_norm2 += cg_r[i] * cg_r[i];
      if (r_norm2 <= tol2) break;
      apply_operator(tau, cg_pv, cg_ap);
      double p_ap = 0.0;
      for (std::size_t i = 0; i < total; ++i) p_ap += cg_pv[i] * cg_ap[i];
      if (!(p_ap > 0.0)) break;
      const double alpha = rz / p_ap;
      for (std::size_t i = 0; i < total; ++i) {
        x[i] += alpha * cg_pv[i];
        cg_r[i] -= alpha * cg_ap[i];
      }
      double rz_next = 0.0;
      for (std::size_t i = 0; i < total; ++i) {
        cg_z[i] = diag[i] * cg_r[i];
        rz_next += cg_r[i] * cg_z[i];
      }
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < total; ++i)
        cg_pv[i] = cg_z[i] + beta * cg_pv[i];
    }
  };

  for (int it = 0; it < opts.max_iterations; ++it) {
    iterations = it + 1;

    for (std::size_t i = 0; i < total; ++i) {
      double g2 = 0.0;
      for (int a = 0; a < grid.dim; ++a) {
        const double c = grad_u.components[a][i];
        g2 += c * c;
      }
      weights[i] = std::pow(g2 + delta2, 0.5 * (p - 2.0));
    }

    // Euclidean energy gradient e = G^T W G u + u^(q-1) and the
    // constraint-tangent multiplier lambda = <e, u^(s-1)> / <u^(s-1), u^(s-1)>.
    // Stepping along -(e - lambda u^(s-1)) keeps the iterate on the
    // constraint manifold to first order, so the rescaling retraction is a
    // second-order correction and accepted steps genuinely descend.
    fd.apply(u, scratch);
    for (int a = 0; a < grid.dim; ++a) {
      auto& comp = scratch.components[a];
      for (std::size_t i = 0; i < total; ++i) comp[i] *= weights[i];
    }
    std::vector<double>& e_grad = rhs;  // reuse storage
    std::fill(e_grad.begin(), e_grad.end(), 0.0);
    fd.apply_transpose_accumulate(scratch, e_grad);
    if (q == 1.0) {
      for (std::size_t i = 0; i < total; ++i)
        if (u[i] > 0.0) e_grad[i] += 1.0;
    } else {
      for (std::size_t i = 0; i < total; ++i)
        e_grad[i] += pow_abs(u[i], q - 1.0);
    }
    double e_dot_n = 0.0, n_dot_n = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      const double ni = pow_abs(u[i], gp.s - 1.0);
      e_dot_n += e_grad[i] * ni;
      n_dot_n += ni * ni;
    }
    const double lambda = n_dot_n > 0.0 ? e_dot_n / n_dot_n : 0.0;

    bool accepted = false;
    bool backtracked = false;
    double rel_change = 0.0;
    for (int half = 0; half <= 30; ++half) {
      if (q == 1.0) {
        for (std::size_t i = 0; i < total; ++i)
          rhs[i] = u[i] - step * ((u[i] > 0.0 ? 1.0 : 0.0) -
                                  lambda * pow_abs(u[i], gp.s - 1.0));
      } else {
        for (std::size_t i = 0; i < total; ++i)
          rhs[i] = u[i] - step * (pow_abs(u[i], q - 1.0) -
                                  lambda * pow_abs(u[i], gp.s - 1.0));
      }
      std::copy(u.begin(), u.end(), sol.begin());
      cg_solve(step, rhs, sol);

      for (std::size_t i = 0; i < total; ++i)
        if (sol[i] < 0.0) sol[i] = 0.0;
      GridFunction tf(grid, sol);  // zeroes the boundary layer
      std::vector<double> tv(tf.values().begin(), tf.values().end());
      detail::normalize_s(grid, tv, gp.s);
      fd.apply(tv, scratch);
      const double te = detail::energy_of_values(grid, tv, scratch, p, q);
      if (te <= energy + 1e-14) {
        double diff2 = 0.0, base2 = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
          const double d = tv[i] - u[i];
          diff2 += d * d;
          base2 += u[i] * u[i];
        }
        rel_change = base2 > 0.0 ? std::sqrt(diff2 / base2) : 0.0;
        // count genuine increases, not rounding dust at the accept slack
        if (te > energy + 1e-16 * (1.0 + std::fabs(energy)))
          ++uphill_streak;
        else
          uphill_streak = 0;
        u = std::move(tv);
        for (int a = 0; a < grid.dim; ++a)
          grad_u.components[a].swap(scratch.components[a]);
        energy = te;
        accepted = true;
        break;
      }
      step *= 0.5;
      backtracked = true;
    }
    if (uphill_streak >= 50)
      throw solver_error(
          "minimize: energy increased on 50 consecutive accepted steps");
    if (accepted && rel_change < opts.stop_tol * std::min(step, 1.0)) {
      converged = true;
      break;
    }
    if (accepted && !backtracked) step = std::min(step * 1.3, step_cap);
    if (!accepted || step < 1e-12 * opts.step_size) break;
  }

  GridFunction u_inf(grid, std::move(u));
  MinimizeResult result{std::move(u_inf), energy,
                        k_opt_from_energy(gp, energy), iterations, converged};
  return result;
}

}  // namespace agn

#endif  // AGN_MINIMIZE_HPP
