#ifndef AGN_GRID_HPP
#define AGN_GRID_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agn/errors.hpp"
#include "agn/numeric.hpp"

namespace agn {

// Uniform Cartesian grid over the centered box [-L, L]^n. Cell centers sit
// at -L + (i + 1/2) h with h = 2L/N, so an even N never places a center on
// a coordinate axis.
struct GridSpec {
  int dim = 2;
  double half_width = 1.0;
  int points_per_axis = 64;

  void validate() const {
    if (dim < 1 || dim > 3)
      throw parameter_error("GridSpec: dim must be 1, 2 or 3, got " +
                            std::to_string(dim));
    if (!(half_width > 0.0) || !std::isfinite(half_width))
      throw parameter_error("GridSpec: half_width must be positive");
    if (points_per_axis < 8)
      throw parameter_error("GridSpec: points_per_axis must be >= 8");
    if (points_per_axis % 2 != 0)
      throw parameter_error("GridSpec: points_per_axis must be even");
  }

  double cell_width() const { return 2.0 * half_width / points_per_axis; }

  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= cell_width();
    return v;
  }

  std::size_t cell_count() const {
    std::size_t c = 1;
    for (int a = 0; a < dim; ++a) c *= static_cast<std::size_t>(points_per_axis);
    return c;
  }

  double box_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= 2.0 * half_width;
    return v;
  }

  // Row-major: axis 0 slowest, axis dim-1 fastest.
  std::size_t flatten(std::span<const int> idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim; ++a)
      flat = flat * static_cast<std::size_t>(points_per_axis) +
             static_cast<std::size_t>(idx[a]);
    return flat;
  }

  void unflatten(std::size_t flat, std::span<int> idx) const {
    for (int a = dim - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(flat % static_cast<std::size_t>(points_per_axis));
      flat /= static_cast<std::size_t>(points_per_axis);
    }
  }

  double axis_center(int i) const {
    return -half_width + (i + 0.5) * cell_width();
  }

  void cell_center(std::size_t flat, std::span<double> x) const {
    std::array<int, 3> idx{};
    unflatten(flat, std::span<int>(idx.data(), static_cast<std::size_t>(dim)));
    for (int a = 0; a < dim; ++a) x[a] = axis_center(idx[a]);
  }

  bool on_boundary_layer(std::size_t flat) const {
    std::array<int, 3> idx{};
    unflatten(flat, std::span<int>(idx.data(), static_cast<std::size_t>(dim)));
    for (int a = 0; a < dim; ++a)
      if (idx[a] == 0 || idx[a] == points_per_axis - 1) return true;
    return false;
  }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.dim == b.dim && a.half_width == b.half_width &&
           a.points_per_axis == b.points_per_axis;
  }
};

// Grid-sampled function. Compact support inside the box is an invariant:
// the outermost cell layer is zeroed at construction, so all R^n integrals
// reduce to box integrals.
class GridFunction {
public:
  GridFunction(GridSpec spec, std::vector<double> values)
      : spec_(spec), values_(std::move(values)) {
    spec_.validate();
    if (values_.size() != spec_.cell_count())
      throw io_error("malformed_grid_file",
                     "GridFunction: expected " +
                         std::to_string(spec_.cell_count()) + " values, got " +
                         std::to_string(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        std::array<int, 3> idx{};
        spec_.unflatten(i, std::span<int>(idx.data(),
                                          static_cast<std::size_t>(spec_.dim)));
        std::string where = "(";
        for (int a = 0; a < spec_.dim; ++a)
          where += std::to_string(idx[a]) + (a + 1 < spec_.dim ? "," : ")");
        throw parameter_error("GridFunction: non-finite value at cell " + where);
      }
    }
    zero_boundary_layer();
  }

  const GridSpec& spec() const { return spec_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
  }

  // f at an arbitrary point by multilinear interpolation of cell-center
  // samples; reads outside the box (or beyond the outer centers) as 0.
  double interpolate(std::span<const double> x) const {
    const int n = spec_.dim;
    const int N = spec_.points_per_axis;
    const double h = spec_.cell_width();
    std::array<int, 3> base{};
    std::array<double, 3> frac{};
    for (int a = 0; a < n; ++a) {
      const double u = (x[a] + spec_.half_width) / h - 0.5;
      const double fl = std::floor(u);
      base[a] = static_cast<int>(fl);
      frac[a] = u - fl;
      if (base[a] < -1 || base[a] > N - 1) return 0.0;
    }
    const int corners = 1 << n;
    double acc = 0.0;
    for (int c = 0; c < corners; ++c) {
      double w = 1.0;
      std::size_t flat = 0;
      bool outside = false;
      for (int a = 0; a < n; ++a) {
        const int bit = (c >> a) & 1;
        const int idx = base[a] + bit;
        w *= bit ? frac[a] : 1.0 - frac[a];
        if (idx < 0 || idx >= N) {
          outside = true;
          break;
        }
        flat = flat * static_cast<std::size_t>(N) + static_cast<std::size_t>(idx);
      }
      if (outside || w == 0.0) continue;
      // flat above accumulated axis 0..n-1 in order, matching flatten()
      acc += w * values_[flat];
    }
    return acc;
  }

  // Internal mutation hooks used by operators that construct new functions.
  std::vector<double>&& take_values() && { return std::move(values_); }

private:
  void zero_boundary_layer() {
    const int N = spec_.points_per_axis;
    const std::size_t total = values_.size();
    std::array<int, 3> idx{};
    for (std::size_t i = 0; i < total; ++i) {
      spec_.unflatten(i, std::span<int>(idx.data(),
                                        static_cast<std::size_t>(spec_.dim)));
      for (int a = 0; a < spec_.dim; ++a) {
        if (idx[a] == 0 || idx[a] == N - 1) {
          values_[i] = 0.0;
          break;
        }
      }
    }
  }

  GridSpec spec_;
  std::vector<double> values_;
};

// Componentwise field on the same grid, holding nabla f.
struct VectorField {
  GridSpec spec;
  std::vector<std::vector<double>> components;  // dim arrays of N^n values

  double euclidean_norm_at(std::size_t i) const {
    double s = 0.0;
    for (const auto& c : components) s += c[i] * c[i];
    return std::sqrt(s);
  }
};

// x -> A (x - shift) with A in GL(n), n <= 3.
struct AffineMap {
  int dim = 2;
  std::vector<double> matrix;  // row-major n*n
  std::vector<double> shift;   // n

  static AffineMap identity(int n) {
    AffineMap m;
    m.dim = n;
    m.matrix.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) m.matrix[static_cast<std::size_t>(i) * n + i] = 1.0;
    m.shift.assign(static_cast<std::size_t>(n), 0.0);
    return m;
  }

  static AffineMap rotation2d(double angle) {
    AffineMap m = identity(2);
    const double c = std::cos(angle), s = std::sin(angle);
    m.matrix = {c, -s, s, c};
    return m;
  }

  double determinant() const {
    const auto& a = matrix;
    switch (dim) {
      case 1:
        return a[0];
      case 2:
        return a[0] * a[3] - a[1] * a[2];
      case 3:
        return a[0] * (a[4] * a[8] - a[5] * a[7]) -
               a[1] * (a[3] * a[8] - a[5] * a[6]) +
               a[2] * (a[3] * a[7] - a[4] * a[6]);
      default:
        throw parameter_error("AffineMap: dim must be 1, 2 or 3");
    }
  }

  void validate() const {
    if (dim < 1 || dim > 3)
      throw parameter_error("AffineMap: dim must be 1, 2 or 3");
    if (matrix.size() != static_cast<std::size_t>(dim) * dim ||
        shift.size() != static_cast<std::size_t>(dim))
      throw parameter_error("AffineMap: matrix/shift size mismatch");
    if (determinant() == 0.0)
      throw parameter_error("AffineMap: matrix must be invertible");
  }

  // y = A (x - shift)
  void transform(std::span<const double> x, std::span<double> y) const {
    std::array<double, 3> d{};
    for (int i = 0; i < dim; ++i) d[i] = x[i] - shift[i];
    for (int i = 0; i < dim; ++i) {
      double s = 0.0;
      for (int j = 0; j < dim; ++j) s += matrix[static_cast<std::size_t>(i) * dim + j] * d[j];
      y[i] = s;
    }
  }
};

using PointwiseRule = std::function<double(std::span<const double>)>;

// Evaluate a pointwise rule at every cell center. Non-finite samples are
// construction errors; the outermost layer is forced to zero.
inline GridFunction sample(const GridSpec& spec, const PointwiseRule& rule) {
  spec.validate();
  const std::size_t total = spec.cell_count();
  std::vector<double> values(total);
  std::array<double, 3> x{};
  std::span<double> xs(x.data(), static_cast<std::size_t>(spec.dim));
  for (std::size_t i = 0; i < total; ++i) {
    spec.cell_center(i, xs);
    values[i] = rule(xs);
  }
  return GridFunction(spec, std::move(values));
}

// Midpoint-rule L^p norm: (sum |f|^p cellvol)^(1/p).
inline double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0))
    throw parameter_error("lp_norm: p must be >= 1, got " + std::to_string(p));
  kahan_sum acc;
  for (double v : f.values()) acc.add(pow_abs(v, p));
  const double integral = acc.value() * f.spec().cell_volume();
  return std::pow(integral, 1.0 / p);
}

// Central differences: fourth-order five-point stencil in the deep
// interior, second-order three-point next to the boundary layer, one-sided
// on the layer itself (where values are zero anyway).
inline VectorField gradient(const GridFunction& f) {
  const GridSpec& spec = f.spec();
  const int n = spec.dim;
  const int N = spec.points_per_axis;
  const double h = spec.cell_width();
  const std::size_t total = spec.cell_count();
  VectorField out;
  out.spec = spec;
  out.components.assign(static_cast<std::size_t>(n),
                        std::vector<double>(total, 0.0));
  std::span<const double> v = f.values();

  std::array<std::size_t, 3> stride{};
  stride[static_cast<std::size_t>(n) - 1] = 1;
  for (int a = n - 2; a >= 0; --a)
    stride[a] = stride[a + 1] * static_cast<std::size_t>(N);

  std::array<int, 3> idx{};
  for (std::size_t i = 0; i < total; ++i) {
    spec.unflatten(i, std::span<int>(idx.data(), static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a) {
      const std::size_t s = stride[a];
      double d;
      if (idx[a] == 0) {
        d = (v[i + s] - v[i]) / h;
      } else if (idx[a] == N - 1) {
        d = (v[i] - v[i - s]) / h;
      } else if (idx[a] == 1 || idx[a] == N - 2) {
        d = (v[i + s] - v[i - s]) / (2.0 * h);
      } else {
        d = (8.0 * (v[i + s] - v[i - s]) - (v[i + 2 * s] - v[i - 2 * s])) /
            (12.0 * h);
      }
      out.components[a][i] = d;
    }
  }
  return out;
}

// Lebesgue measure of { |f| > threshold } in the cell-counting sense.
inline double support_measure(const GridFunction& f, double threshold = 0.0) {
  if (threshold < 0.0)
    throw parameter_error("support_measure: threshold must be >= 0");
  std::size_t count = 0;
  for (double v : f.values())
    if (std::fabs(v) > threshold) ++count;
  return static_cast<double>(count) * f.spec().cell_volume();
}

// (apply_affine(f, m))(x) = f(A(x - x0)) through multilinear interpolation;
// points mapping outside the box read as zero.
inline GridFunction apply_affine(const GridFunction& f, const AffineMap& map) {
  map.validate();
  const GridSpec& spec = f.spec();
  if (map.dim != spec.dim)
    throw parameter_error("apply_affine: map dimension does not match grid");
  const std::size_t total = spec.cell_count();
  std::vector<double> values(total);
  std::array<double, 3> x{}, y{};
  std::span<double> xs(x.data(), static_cast<std::size_t>(spec.dim));
  std::span<double> ys(y.data(), static_cast<std::size_t>(spec.dim));
  for (std::size_t i = 0; i < total; ++i) {
    spec.cell_center(i, xs);
    map.transform(xs, ys);
    values[i] = f.interpolate(ys);
  }
  return GridFunction(spec, std::move(values));
}

}  // namespace agn

#endif  // AGN_GRID_HPP
