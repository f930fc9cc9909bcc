#ifndef AGN_NUMERIC_HPP
#define AGN_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <limits>

#include "agn/errors.hpp"

namespace agn {

// Compensated (Kahan) accumulator. Summation error stays O(eps) regardless
// of term count, which keeps norm evaluations independent of traversal
// order to well below the 1e-12 determinism contract.
class kahan_sum {
public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

namespace detail {

inline double powi(double base, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace detail

// |t|^p. Norm kernels evaluate this once per cell per direction, so the
// common exponents bypass std::pow.
inline double pow_abs(double t, double p) {
  const double a = std::fabs(t);
  if (p == 2.0) return a * a;
  if (p == 1.0) return a;
  if (p == 3.0) return a * a * a;
  if (p == 4.0) {
    const double s = a * a;
    return s * s;
  }
  if (a == 0.0) return 0.0;
  const double r = std::round(p);
  if (r == p && r > 0.0 && r < 64.0) return detail::powi(a, static_cast<int>(r));
  const double h = std::round(2.0 * p);
  if (h == 2.0 * p && h > 0.0 && h < 128.0) {
    // half-integer exponent: integer part times sqrt
    const int ip = static_cast<int>(h) / 2;
    double r2 = detail::powi(a, ip);
    if (static_cast<int>(h) % 2 != 0) r2 *= std::sqrt(a);
    return r2;
  }
  return std::pow(a, p);
}

// Adaptive Simpson on [a, b], absolute tolerance refined against the
// running whole-interval estimate.
namespace detail {

template <typename F>
double simpson(F&& f, double a, double fa, double b, double fb, double m,
               double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(F&& f, double a, double fa, double b, double fb,
                            double m, double fm, double whole, double tol,
                            int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace detail

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        int max_depth = 48) {
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = detail::simpson(f, a, fa, b, fb, m, fm);
  return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol,
                                      max_depth);
}

}  // namespace agn

#endif  // AGN_NUMERIC_HPP
