#include <algorithm>
#include <cmath>

#include "slepian/oracles.hpp"

namespace slepian {

namespace {

constexpr double alignment_tolerance = 1e-9;

void check_length(const cvec& psi, const grid& g) {
  if (psi.size() != g.space_size()) throw dimension_error("sample vector does not match the grid");
}

void check_params(std::size_t size, const grid& g) {
  if (size != static_cast<std::size_t>(g.dim())) throw dimension_error("parameter needs one entry per axis");
}

// Multilinear interpolation of grid samples at a physical point; zero outside
// the hull of the nodes.
cplx interpolate(const cvec& psi, const grid& g, std::span<const double> x) {
  const int dim = g.dim(), n = g.n();
  std::vector<int> lo(dim);
  std::vector<double> frac(dim);
  for (int a = 0; a < dim; ++a) {
    const double s = (x[a] * n + n - 1) / 2.0;  // fractional node index
    if (s < -alignment_tolerance || s > n - 1 + alignment_tolerance) return {0.0, 0.0};
    const double c = std::clamp(s, 0.0, static_cast<double>(n - 1));
    lo[a] = std::min(static_cast<int>(std::floor(c)), std::max(n - 2, 0));
    frac[a] = n == 1 ? 0.0 : c - lo[a];
  }
  cplx out(0.0, 0.0);
  std::vector<int> idx(dim);
  for (int corner = 0; corner < (1 << dim); ++corner) {
    double w = 1.0;
    for (int a = 0; a < dim; ++a) {
      const int bit = (corner >> (dim - 1 - a)) & 1;
      idx[a] = std::min(lo[a] + bit, n - 1);
      w *= bit ? frac[a] : 1.0 - frac[a];
    }
    if (w != 0.0) out += w * psi(g.space_flat(idx));
  }
  return out;
}

}  // namespace

cvec space_translation(const cvec& psi, const grid& g, std::span<const double> p) {
  check_length(psi, g);
  check_params(p.size(), g);
  std::vector<int> shift(g.dim());
  for (int a = 0; a < g.dim(); ++a) {
    const double steps = p[a] / g.dx();
    shift[a] = static_cast<int>(std::lround(steps));
    if (std::abs(steps - shift[a]) > alignment_tolerance)
      throw alignment_error("translation " + std::to_string(p[a]) + " is not a multiple of the grid step " +
                            std::to_string(g.dx()));
  }
  cvec out = cvec::Zero(psi.size());
  std::vector<int> idx(g.dim());
  for (std::int64_t j = 0; j < g.space_size(); ++j) {
    g.space_multi_index(j, idx);
    bool ok = true;
    for (int a = 0; a < g.dim(); ++a) {
      idx[a] += shift[a];
      ok = ok && idx[a] >= 0 && idx[a] < g.n();
    }
    if (ok) out(j) = psi(g.space_flat(idx));
  }
  return out;
}

cvec fourier_translation(const cvec& psi, const grid& g, std::span<const double> p) {
  check_length(psi, g);
  check_params(p.size(), g);
  cvec out(psi.size());
  std::vector<int> idx(g.dim());
  for (std::int64_t j = 0; j < g.space_size(); ++j) {
    g.space_multi_index(j, idx);
    double phase = 0.0;
    for (int a = 0; a < g.dim(); ++a) phase += p[a] * 0.5 * (2 * idx[a] + 1 - g.n());
    out(j) = psi(j) * cplx(std::cos(phase), -std::sin(phase));
  }
  return out;
}

cvec affine_map(const cvec& psi, const grid& source, const Eigen::MatrixXd& a, const grid& target) {
  check_length(psi, source);
  const int dim = source.dim();
  if (target.dim() != dim || a.rows() != dim || a.cols() != dim) throw dimension_error("affine map dimensions differ");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw domain_error("affine map must be invertible");
  if (a.isIdentity(0.0) && source == target) return psi;
  const Eigen::MatrixXd inv_t = lu.inverse().transpose();
  cvec out(target.space_size());
  Eigen::VectorXd u(dim);
  std::vector<double> x(dim);
  for (std::int64_t j = 0; j < target.space_size(); ++j) {
    target.space_point(j, {u.data(), static_cast<std::size_t>(dim)});
    const Eigen::VectorXd y = inv_t * u;
    for (int k = 0; k < dim; ++k) x[k] = y(k);
    out(j) = interpolate(psi, source, x);
  }
  return out;
}

field space_translation(field psi, std::vector<double> p) {
  return [psi = std::move(psi), p = std::move(p)](std::span<const double> x) {
    if (x.size() != p.size()) throw dimension_error("point and translation sizes differ");
    std::vector<double> y(x.begin(), x.end());
    for (std::size_t a = 0; a < y.size(); ++a) y[a] += p[a];
    return psi(y);
  };
}

field fourier_translation(field psi, std::vector<double> p) {
  return [psi = std::move(psi), p = std::move(p)](std::span<const double> x) {
    if (x.size() != p.size()) throw dimension_error("point and translation sizes differ");
    double phase = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) phase += p[a] * x[a];
    return psi(x) * cplx(std::cos(phase), -std::sin(phase));
  };
}

field affine_map(field psi, const Eigen::MatrixXd& a) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (a.rows() != a.cols()) throw dimension_error("affine map must be square");
  if (!lu.isInvertible()) throw domain_error("affine map must be invertible");
  const Eigen::MatrixXd inv_t = lu.inverse().transpose();
  return [psi = std::move(psi), inv_t](std::span<const double> x) {
    if (static_cast<Eigen::Index>(x.size()) != inv_t.rows()) throw dimension_error("point has the wrong dimension");
    const Eigen::VectorXd y = inv_t * Eigen::Map<const Eigen::VectorXd>(x.data(), inv_t.rows());
    return psi(std::vector<double>(y.data(), y.data() + y.size()));
  };
}

}  // namespace slepian
