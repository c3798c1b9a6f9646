#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "slepian/errors.hpp"

namespace slepian {

using point = std::vector<double>;

// Uniform midpoint grids on [-1,1]^d (N nodes per axis) and on
// [-pi,pi]^d (M = 2N-1 nodes per axis). Flat indices are lexicographic
// with the last axis varying fastest.
class grid {
 public:
  grid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  int m() const { return 2 * n_ - 1; }
  double dx() const { return 2.0 / n_; }
  double dxi() const;
  std::int64_t space_size() const { return space_size_; }
  std::int64_t fourier_size() const { return fourier_size_; }

  // Written as an integer ratio so that node k and node N-1-k are exact negatives.
  double space_node(int k) const;
  double fourier_node(int l) const;

  void space_point(std::int64_t flat, std::span<double> out) const;
  void fourier_point(std::int64_t flat, std::span<double> out) const;
  void space_multi_index(std::int64_t flat, std::span<int> out) const;
  std::int64_t space_flat(std::span<const int> index) const;
  // Flat index of the node mirrored through the origin on every axis.
  std::int64_t space_reflect(std::int64_t flat) const;

  bool operator==(const grid& other) const { return dim_ == other.dim_ && n_ == other.n_; }

 private:
  int dim_;
  int n_;
  std::int64_t space_size_;
  std::int64_t fourier_size_;
};

std::vector<point> space_grid(int n, int dim);
std::vector<point> fourier_grid(int n, int dim);

// mu(eps) = (1 + eps^p)^(-1/p); p = 4 by default.
struct shrink_law {
  double exponent = 4.0;
  double operator()(double eps) const;
};

double mu(double eps);

enum class mask_role { space, fourier };

struct interval_shape {
  double center = 0.0;
  double half_width = 1.0;
};

struct ball_shape {
  point center;
  double radius = 1.0;
};

// Q(c, a, b) = { x : sum_m a_m (x_m - c_m)^2 <= b }
struct quadric_shape {
  point center;
  std::vector<double> axes;
  double level = 1.0;
};

// D(M, v, c) = { x : x^T M x + v^T x + c <= 0 }, M symmetric positive definite.
struct general_quadric_shape {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd linear;
  double constant = -1.0;
  Eigen::VectorXd center() const;
};

struct disc {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
};

struct polygon {
  std::vector<std::array<double, 2>> vertices;
};

enum class hole_law { fixed, shrink };

// Union of discs and polygons minus hole discs, 2D only. The outer part
// scales about the centroid; hole centers never move.
struct raster_shape {
  std::vector<disc> outer_discs;
  std::vector<polygon> outer_polygons;
  std::vector<disc> holes;
  std::array<double, 2> centroid{0.0, 0.0};
  hole_law holes_follow = hole_law::fixed;

  bool outer_contains(double x, double y) const;
};

// e^{-gamma |x - c|^2 / 2}
struct gaussian_shape {
  point center;
  double gamma = 1.0;
};

// The constant mask 1; used for flat masks and identity checks.
struct full_shape {};

using mask_shape = std::variant<interval_shape, ball_shape, quadric_shape, general_quadric_shape,
                                raster_shape, gaussian_shape, full_shape>;

struct mask_spec {
  mask_shape shape = full_shape{};
  mask_role role = mask_role::space;

  bool is_binary() const;
  // Evaluates the unscaled mask at a point of the matching domain.
  double value(std::span<const double> x) const;
};

// A mask together with the way eps deforms it. When `varies` is false the
// family is constant in eps.
struct mask_family {
  mask_spec base;
  shrink_law law;
  bool varies = true;

  double value(double eps, std::span<const double> x) const;
};

std::vector<double> sample_mask(const mask_family& family, double eps, const grid& g);
std::vector<double> sample_mask(const mask_spec& spec, const grid& g);

// The default cat head: disc of radius 0.7 plus two ear triangles, two eyes and a nose.
raster_shape cat_head(hole_law holes = hole_law::fixed);
int cat_head_indicator(const mask_family& family, double eps, std::array<double, 2> p);

// Checks that the base support lies in the domain of its role. Gaussian
// masks are checked against a relative tail threshold at the boundary.
void validate_support(const mask_spec& spec, int dim, double gaussian_tail = 1e-12);

std::string shape_name(const mask_shape& shape);

}  // namespace slepian
