#include "slepian/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slepian {

namespace {

constexpr double pi = std::numbers::pi;

std::int64_t checked_power(int base, int dim) {
  std::int64_t out = 1;
  for (int i = 0; i < dim; ++i) {
    if (out > (std::int64_t{1} << 40) / base) throw domain_error("grid too large");
    out *= base;
  }
  return out;
}

double squared_distance(std::span<const double> x, const point& c) {
  double s = 0.0;
  for (std::size_t m = 0; m < x.size(); ++m) {
    const double cm = c.empty() ? 0.0 : c.at(m);
    s += (x[m] - cm) * (x[m] - cm);
  }
  return s;
}

double quadric_form(const general_quadric_shape& q, std::span<const double> x) {
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  return v.dot(q.matrix * v) + q.linear.dot(v) + q.constant;
}

bool in_polygon(const polygon& poly, double x, double y) {
  // crossing number test
  const auto& v = poly.vertices;
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const double xi = v[i][0], yi = v[i][1], xj = v[j][0], yj = v[j][1];
    if ((yi > y) != (yj > y)) {
      const double xc = xj + (y - yj) * (xi - xj) / (yi - yj);
      if (x <= xc) inside = !inside;
    }
  }
  return inside;
}

bool in_disc(const disc& d, double x, double y, double scale) {
  const double r = d.r * scale;
  return (x - d.cx) * (x - d.cx) + (y - d.cy) * (y - d.cy) <= r * r;
}

double scaled_value(const mask_shape& shape, double s, std::span<const double> x) {
  // s = mu(eps); s == 1 must reproduce the base evaluation bit for bit
  return std::visit(
      [&](const auto& sh) -> double {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, interval_shape>) {
          const double h = sh.half_width * s;
          for (double xm : x)
            if (std::abs(xm - sh.center) > h) return 0.0;
          return 1.0;
        } else if constexpr (std::is_same_v<T, ball_shape>) {
          const double r = sh.radius * s;
          return squared_distance(x, sh.center) <= r * r ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, quadric_shape>) {
          double q = 0.0;
          for (std::size_t m = 0; m < x.size(); ++m) {
            const double cm = sh.center.empty() ? 0.0 : sh.center.at(m);
            q += sh.axes.at(m) * (x[m] - cm) * (x[m] - cm);
          }
          return q <= sh.level * s * s ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, general_quadric_shape>) {
          if (s == 1.0) return quadric_form(sh, x) <= 0.0 ? 1.0 : 0.0;
          const Eigen::VectorXd w0 = sh.center();
          std::vector<double> y(x.size());
          for (std::size_t m = 0; m < x.size(); ++m)
            y[m] = w0(static_cast<Eigen::Index>(m)) + (x[m] - w0(static_cast<Eigen::Index>(m))) / s;
          return quadric_form(sh, y) <= 0.0 ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, raster_shape>) {
          if (x.size() != 2) throw dimension_error("raster shapes are two-dimensional");
          const double hole_scale = sh.holes_follow == hole_law::shrink ? s : 1.0;
          for (const auto& h : sh.holes)
            if (in_disc(h, x[0], x[1], hole_scale)) return 0.0;
          if (s == 1.0) return sh.outer_contains(x[0], x[1]) ? 1.0 : 0.0;
          const double px = sh.centroid[0] + (x[0] - sh.centroid[0]) / s;
          const double py = sh.centroid[1] + (x[1] - sh.centroid[1]) / s;
          return sh.outer_contains(px, py) ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, gaussian_shape>) {
          const double g = sh.gamma / (s * s);
          return std::exp(-0.5 * g * squared_distance(x, sh.center));
        } else {
          return 1.0;
        }
      },
      shape);
}

}  // namespace

grid::grid(int dim, int n) : dim_(dim), n_(n) {
  if (dim < 1) throw domain_error("grid dimension must be positive");
  if (n < 1) throw domain_error("grid needs at least one node per dimension");
  space_size_ = checked_power(n, dim);
  fourier_size_ = checked_power(2 * n - 1, dim);
}

double grid::dxi() const { return 2.0 * pi / m(); }

double grid::space_node(int k) const { return static_cast<double>(2 * k + 1 - n_) / n_; }

double grid::fourier_node(int l) const { return pi * static_cast<double>(2 * l + 1 - m()) / m(); }

void grid::space_point(std::int64_t flat, std::span<double> out) const {
  for (int a = dim_ - 1; a >= 0; --a) {
    out[a] = space_node(static_cast<int>(flat % n_));
    flat /= n_;
  }
}

void grid::fourier_point(std::int64_t flat, std::span<double> out) const {
  const int side = m();
  for (int a = dim_ - 1; a >= 0; --a) {
    out[a] = fourier_node(static_cast<int>(flat % side));
    flat /= side;
  }
}

void grid::space_multi_index(std::int64_t flat, std::span<int> out) const {
  for (int a = dim_ - 1; a >= 0; --a) {
    out[a] = static_cast<int>(flat % n_);
    flat /= n_;
  }
}

std::int64_t grid::space_flat(std::span<const int> index) const {
  std::int64_t f = 0;
  for (int a = 0; a < dim_; ++a) f = f * n_ + index[a];
  return f;
}

std::int64_t grid::space_reflect(std::int64_t flat) const {
  std::int64_t out = 0, stride = 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    const std::int64_t k = flat % n_;
    out += (n_ - 1 - k) * stride;
    stride *= n_;
    flat /= n_;
  }
  return out;
}

std::vector<point> space_grid(int n, int dim) {
  const grid g(dim, n);
  std::vector<point> out(static_cast<std::size_t>(g.space_size()), point(dim));
  for (std::int64_t i = 0; i < g.space_size(); ++i) g.space_point(i, out[i]);
  return out;
}

std::vector<point> fourier_grid(int n, int dim) {
  const grid g(dim, n);
  std::vector<point> out(static_cast<std::size_t>(g.fourier_size()), point(dim));
  for (std::int64_t i = 0; i < g.fourier_size(); ++i) g.fourier_point(i, out[i]);
  return out;
}

double shrink_law::operator()(double eps) const {
  if (!(eps >= 0.0)) throw domain_error("shrink law needs eps >= 0, got " + std::to_string(eps));
  if (!(exponent > 0.0)) throw domain_error("shrink exponent must be positive");
  if (eps == 0.0) return 1.0;
  return std::pow(1.0 + std::pow(eps, exponent), -1.0 / exponent);
}

double mu(double eps) { return shrink_law{}(eps); }

Eigen::VectorXd general_quadric_shape::center() const {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(matrix);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw domain_error("general quadric matrix must be symmetric positive definite");
  return -0.5 * ldlt.solve(linear);
}

bool raster_shape::outer_contains(double x, double y) const {
  for (const auto& d : outer_discs)
    if (in_disc(d, x, y, 1.0)) return true;
  for (const auto& p : outer_polygons)
    if (in_polygon(p, x, y)) return true;
  return false;
}

bool mask_spec::is_binary() const {
  return !std::holds_alternative<gaussian_shape>(shape) && !std::holds_alternative<full_shape>(shape);
}

double mask_spec::value(std::span<const double> x) const { return scaled_value(shape, 1.0, x); }

double mask_family::value(double eps, std::span<const double> x) const {
  if (!varies) {
    if (!(eps >= 0.0)) throw domain_error("eps must be nonnegative");
    return base.value(x);
  }
  return scaled_value(base.shape, law(eps), x);
}

std::vector<double> sample_mask(const mask_family& family, double eps, const grid& g) {
  const bool space = family.base.role == mask_role::space;
  const std::int64_t size = space ? g.space_size() : g.fourier_size();
  std::vector<double> out(static_cast<std::size_t>(size));
  point x(g.dim());
  for (std::int64_t i = 0; i < size; ++i) {
    if (space)
      g.space_point(i, x);
    else
      g.fourier_point(i, x);
    out[i] = family.value(eps, x);
  }
  return out;
}

std::vector<double> sample_mask(const mask_spec& spec, const grid& g) {
  return sample_mask(mask_family{spec, shrink_law{}, false}, 0.0, g);
}

raster_shape cat_head(hole_law holes) {
  raster_shape s;
  s.holes_follow = holes;
  s.outer_discs.push_back({0.0, 0.0, 0.7});
  const double r = 0.7;
  const double a_out = 150.0 * pi / 180.0, a_in = 100.0 * pi / 180.0;
  for (double side : {-1.0, 1.0}) {
    polygon ear;
    ear.vertices = {{side * 0.45, 0.85},
                    {side * (-r * std::cos(a_out)), r * std::sin(a_out)},
                    {side * (-r * std::cos(a_in)), r * std::sin(a_in)}};
    s.outer_polygons.push_back(ear);
  }
  s.holes = {{-0.25, 0.15, 0.12}, {0.25, 0.15, 0.12}, {0.0, -0.2, 0.10}};

  // The outline is mirror symmetric, so the centroid sits on the vertical axis.
  // Its height is the area-weighted mean over a fine raster of the head region.
  const int samples = 2000;
  double area = 0.0, moment = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double y = -1.0 + (2.0 * i + 1.0) / samples;
    for (int j = 0; j < samples; ++j) {
      const double x = -1.0 + (2.0 * j + 1.0) / samples;
      if (!s.outer_contains(x, y)) continue;
      bool hole = false;
      for (const auto& h : s.holes) hole = hole || in_disc(h, x, y, 1.0);
      if (hole) continue;
      area += 1.0;
      moment += y;
    }
  }
  s.centroid = {0.0, moment / area};
  return s;
}

int cat_head_indicator(const mask_family& family, double eps, std::array<double, 2> p) {
  if (!std::holds_alternative<raster_shape>(family.base.shape))
    throw std::invalid_argument("cat_head_indicator needs a raster-shape family");
  return family.value(eps, p) > 0.5 ? 1 : 0;
}

void validate_support(const mask_spec& spec, int dim, double gaussian_tail) {
  const double limit = spec.role == mask_role::space ? 1.0 : pi;
  const char* where = spec.role == mask_role::space ? "space domain [-1,1]^d" : "Fourier domain [-pi,pi]^d";
  auto fail = [&](const std::string& what) {
    throw domain_error(shape_name(spec.shape) + " mask " + what + " leaves the " + where);
  };
  auto check_center = [&](const point& c) {
    if (!c.empty() && static_cast<int>(c.size()) != dim) throw dimension_error("mask center has wrong dimension");
  };
  std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, interval_shape>) {
          if (sh.half_width <= 0) fail("half-width");
          if (std::abs(sh.center) + sh.half_width > limit) fail("support");
        } else if constexpr (std::is_same_v<T, ball_shape>) {
          check_center(sh.center);
          if (sh.radius <= 0) fail("radius");
          for (int m = 0; m < dim; ++m)
            if (std::abs(sh.center.empty() ? 0.0 : sh.center[m]) + sh.radius > limit) fail("support");
        } else if constexpr (std::is_same_v<T, quadric_shape>) {
          check_center(sh.center);
          if (static_cast<int>(sh.axes.size()) != dim) throw dimension_error("quadric axes have wrong dimension");
          if (sh.level <= 0) fail("level");
          for (int m = 0; m < dim; ++m) {
            if (sh.axes[m] <= 0) fail("axis coefficient");
            const double half = std::sqrt(sh.level / sh.axes[m]);
            if (std::abs(sh.center.empty() ? 0.0 : sh.center[m]) + half > limit) fail("support");
          }
        } else if constexpr (std::is_same_v<T, general_quadric_shape>) {
          if (sh.matrix.rows() != dim || sh.matrix.cols() != dim || sh.linear.size() != dim)
            throw dimension_error("general quadric has wrong dimension");
          const Eigen::VectorXd w0 = sh.center();
          const double level = w0.dot(sh.matrix * w0) - sh.constant;
          if (level <= 0) fail("level");
          const Eigen::MatrixXd inv = sh.matrix.inverse();
          for (int m = 0; m < dim; ++m)
            if (std::abs(w0(m)) + std::sqrt(level * inv(m, m)) > limit) fail("support");
        } else if constexpr (std::is_same_v<T, raster_shape>) {
          if (dim != 2) throw dimension_error("raster shapes are two-dimensional");
          for (const auto& d : sh.outer_discs)
            if (std::max(std::abs(d.cx), std::abs(d.cy)) + d.r > limit) fail("support");
          for (const auto& p : sh.outer_polygons)
            for (const auto& v : p.vertices)
              if (std::max(std::abs(v[0]), std::abs(v[1])) > limit) fail("support");
        } else if constexpr (std::is_same_v<T, gaussian_shape>) {
          check_center(sh.center);
          if (sh.gamma <= 0) fail("coefficient");
          double nearest = limit;
          for (int m = 0; m < dim; ++m) {
            const double c = sh.center.empty() ? 0.0 : sh.center[m];
            nearest = std::min(nearest, limit - std::abs(c));
          }
          if (std::exp(-0.5 * sh.gamma * nearest * nearest) > gaussian_tail) fail("tail above threshold");
        }
      },
      spec.shape);
}

std::string shape_name(const mask_shape& shape) {
  static const char* names[] = {"interval", "ball", "quadric", "general_quadric", "cat_head", "gaussian", "full"};
  return names[shape.index()];
}

}  // namespace slepian
