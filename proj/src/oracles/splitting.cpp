#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "slepian/oracles.hpp"

namespace slepian {

namespace {

// exp(i pi t (1 - M) / M) for integer t, i.e. the offset phase of the frequency grid
cplx offset_phase(std::int64_t t, int m, double sign) {
  const std::int64_t r = (((t * (1 - m)) % (2 * m)) + 2 * m) % (2 * m);
  const double angle = sign * std::numbers::pi * static_cast<double>(r) / m;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

cvec splitting_apply(std::span<const double> v, std::span<const double> h, const grid& g, const cvec& f) {
  if (static_cast<std::int64_t>(v.size()) != g.space_size() || f.size() != g.space_size())
    throw dimension_error("space samples need N^d entries");
  if (static_cast<std::int64_t>(h.size()) != g.fourier_size()) throw dimension_error("H needs (2N-1)^d entries");
  for (double x : v)
    if (!(x >= 0.0)) throw domain_error("V samples must be nonnegative");
  for (double x : h)
    if (!(x >= 0.0)) throw domain_error("H samples must be nonnegative");

  const int dim = g.dim(), m = g.m();
  const std::size_t total = static_cast<std::size_t>(g.fourier_size());
  std::vector<cplx> work(total, cplx(0.0, 0.0)), spec(total);
  std::vector<int> idx(dim);
  auto padded = [&](std::int64_t j, std::int64_t& sum) {
    g.space_multi_index(j, idx);
    std::int64_t flat = 0;
    sum = 0;
    for (int a = 0; a < dim; ++a) {
      flat = flat * m + idx[a];
      sum += idx[a];
    }
    return flat;
  };
  // F f(xi_l) = sum_k f_k e^{-i xi_l . k}, with xi_l = -pi + pi/M + 2 pi l / M
  for (std::int64_t j = 0; j < g.space_size(); ++j) {
    std::int64_t sum;
    const std::int64_t flat = padded(j, sum);
    work[flat] = std::exp(-0.5 * v[j]) * f(j) * offset_phase(sum, m, -1.0);
  }
  detail::fft_plan forward(std::vector<int>(dim, m), detail::fft_plan::direction::forward);
  detail::fft_plan backward(std::vector<int>(dim, m), detail::fft_plan::direction::backward);
  forward.execute(work.data(), spec.data());
  for (std::size_t l = 0; l < total; ++l) spec[l] *= std::exp(-h[l]);
  backward.execute(spec.data(), work.data());
  cvec out(g.space_size());
  const double scale = 1.0 / static_cast<double>(total);
  for (std::int64_t j = 0; j < g.space_size(); ++j) {
    std::int64_t sum;
    const std::int64_t flat = padded(j, sum);
    out(j) = std::exp(-0.5 * v[j]) * work[flat] * scale * offset_phase(sum, m, 1.0);
  }
  return out;
}

double quasimode_omega(int n, const grid& g, const quasimode_options& opt) {
  if (n < 0) throw domain_error("order must be nonnegative");
  if (!(opt.a > 0) || !(opt.b > 0)) throw domain_error("quadratic coefficients must be positive");
  return g.dx() * std::sqrt(opt.a * opt.b) * (2.0 * n + 1.0);
}

cvec quasimode(int n, const grid& g, const quasimode_options& opt) {
  if (g.dim() != 1) throw dimension_error("quasimodes are one-dimensional");
  const double dx = g.dx();
  const double scale = std::pow(opt.a * dx * dx / opt.b, 0.25);
  cvec psi(g.n());
  double peak = 0.0;
  for (int k = 0; k < g.n(); ++k) {
    psi(k) = hermite_function(n, scale * 0.5 * (2 * k + 1 - g.n()));
    peak = std::max(peak, std::abs(psi(k)));
  }
  const double space_edge = std::abs(hermite_function(n, scale * 0.5 * g.n())) / peak;
  const double freq_edge = std::abs(hermite_function(n, std::numbers::pi / scale)) / peak;
  if (space_edge > opt.edge_tolerance || freq_edge > opt.edge_tolerance)
    throw resolution_error("quasimode " + std::to_string(n) + " is not resolved at N=" + std::to_string(g.n()));
  return psi / psi.norm();
}

double quasimode_residual(double eps, int n, const grid& g, const quasimode_options& opt) {
  if (!(eps >= 0.0)) throw domain_error("eps must be nonnegative");
  const cvec psi = quasimode(n, g, opt);
  std::vector<double> v(g.n()), h(g.fourier_size());
  for (int k = 0; k < g.n(); ++k) {
    const double x = g.space_node(k);
    v[k] = eps * opt.a * x * x;
  }
  for (int l = 0; l < g.m(); ++l) {
    const double xi = g.fourier_node(l);
    h[l] = eps * opt.b * xi * xi;
  }
  if (opt.exact_eigenvalue && eps > 0.0) {
    // masks e^{-eps a x^2 / 2} and e^{-eps b xi^2 / 2} are Gaussian with a closed-form eigenpair
    const gaussian_mode exact = gaussian_eigenpairs(eps * opt.a, eps * opt.b, n, g);
    const cvec e = exact.samples.cast<cplx>();
    return (splitting_apply(v, h, g, e) - exact.value * e).norm();
  }
  const cvec k_psi = splitting_apply(v, h, g, psi);
  return (k_psi - std::exp(-eps * quasimode_omega(n, g, opt)) * psi).norm();
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw dimension_error("need at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw domain_error("log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace slepian
