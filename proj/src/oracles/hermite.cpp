#include <cmath>
#include <numbers>

#include "slepian/oracles.hpp"

namespace slepian {

double hermite_function(int n, double x) {
  if (n < 0) throw domain_error("Hermite order must be nonnegative");
  // Run the recurrence on phi_k e^{x^2/2} with a running log-scale so that
  // neither the polynomial growth nor the Gaussian factor over/underflows.
  const double c0 = std::pow(std::numbers::pi, -0.25);
  double prev = 0.0, cur = c0, log_scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > 1e100) {
      prev /= mag;
      cur /= mag;
      log_scale += std::log(mag);
    }
  }
  if (cur == 0.0) return 0.0;
  const double log_mag = std::log(std::abs(cur)) + log_scale - 0.5 * x * x;
  return std::copysign(std::exp(log_mag), cur);
}

Eigen::MatrixXd hermite_basis::gram() const { return spacing * values.transpose() * values; }

hermite_basis make_hermite_basis(int max_order, std::vector<double> nodes, double spacing) {
  if (max_order < 0) throw domain_error("Hermite order must be nonnegative");
  hermite_basis b;
  b.max_order = max_order;
  b.nodes = std::move(nodes);
  b.spacing = spacing;
  b.values.resize(static_cast<Eigen::Index>(b.nodes.size()), max_order + 1);
  for (std::size_t i = 0; i < b.nodes.size(); ++i)
    for (int n = 0; n <= max_order; ++n) b.values(static_cast<Eigen::Index>(i), n) = hermite_function(n, b.nodes[i]);
  return b;
}

double gaussian_eigenvalue(double alpha, double beta, int n) {
  if (!(alpha > 0) || !(beta > 0)) throw domain_error("Gaussian coefficients must be positive");
  if (n < 0) throw domain_error("order must be nonnegative");
  return std::exp(-std::asinh(std::sqrt(alpha * beta)) * (2.0 * n + 1.0));
}

double gaussian_scale_squared(double alpha, double beta) {
  if (!(alpha > 0) || !(beta > 0)) throw domain_error("Gaussian coefficients must be positive");
  return std::sqrt(alpha * (1.0 + alpha * beta) / beta);
}

namespace {

// Largest |phi_n| at the outermost sample relative to its peak, for a
// scaled Hermite function phi_n(scale * t) sampled up to |t| = edge.
double edge_ratio(int n, double scale, double edge) {
  double peak = 0.0;
  const int probes = 2000;
  const double reach = std::max(edge * scale, std::sqrt(2.0 * n + 1.0) + 1.0);
  for (int i = 0; i <= probes; ++i) peak = std::max(peak, std::abs(hermite_function(n, reach * i / probes)));
  return std::abs(hermite_function(n, edge * scale)) / peak;
}

}  // namespace

gaussian_mode gaussian_eigenpairs(double alpha, double beta, std::span<const int> orders, const grid& g) {
  if (static_cast<int>(orders.size()) != g.dim()) throw dimension_error("need one Hermite order per axis");
  const double dx = g.dx();
  const double alpha_s = alpha * dx * dx;
  const double mu = std::sqrt(gaussian_scale_squared(alpha_s, beta));
  gaussian_mode out;
  out.value = 1.0;
  for (int n : orders) {
    out.value *= gaussian_eigenvalue(alpha_s, beta, n);
    // space edge at |s| = N/2, frequency edge at pi; the transform of
    // phi_n(mu s) is a multiple of phi_n(xi / mu)
    if (edge_ratio(n, mu, 0.5 * g.n()) > 1e-8 || edge_ratio(n, 1.0 / mu, std::numbers::pi) > 1e-8)
      throw resolution_error("grid does not resolve Hermite mode " + std::to_string(n) + " at N=" +
                             std::to_string(g.n()));
  }
  out.samples.resize(g.space_size());
  std::vector<int> idx(g.dim());
  for (std::int64_t j = 0; j < g.space_size(); ++j) {
    g.space_multi_index(j, idx);
    double v = 1.0;
    for (int a = 0; a < g.dim(); ++a) v *= hermite_function(orders[a], mu * 0.5 * (2 * idx[a] + 1 - g.n()));
    out.samples(j) = v;
  }
  out.samples /= out.samples.norm();
  return out;
}

gaussian_mode gaussian_eigenpairs(double alpha, double beta, int n, const grid& g) {
  std::vector<int> orders(g.dim(), 0);
  orders[0] = n;
  return gaussian_eigenpairs(alpha, beta, orders, g);
}

concentration_problem gaussian_problem(double alpha, double beta, const grid& g) {
  concentration_problem p;
  p.g = g;
  p.space.base = {gaussian_shape{point(g.dim(), 0.0), alpha}, mask_role::space};
  p.fourier.base = {gaussian_shape{point(g.dim(), 0.0), beta}, mask_role::fourier};
  return p;
}

}  // namespace slepian
