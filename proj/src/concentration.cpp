#include "slepian/concentration.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace slepian {

namespace {

// Offsets along one axis for a flat index of a cube with the given side.
void unflatten(std::int64_t flat, int side, int dim, int* out) {
  for (int a = dim - 1; a >= 0; --a) {
    out[a] = static_cast<int>(flat % side);
    flat /= side;
  }
}

}  // namespace

linear_operator dense_operator(const cmat& a) {
  if (a.rows() != a.cols()) throw dimension_error("dense operator needs a square matrix");
  return {a.rows(), [&a](const cvec& in, cvec& out) { out.noalias() = a * in; }};
}

cplx kernel_samples::at(std::span<const int> u) const {
  std::int64_t flat = 0;
  for (int a = 0; a < dim; ++a) {
    if (u[a] < -(n - 1) || u[a] > n - 1) throw dimension_error("kernel offset outside the difference grid");
    flat = flat * side() + (u[a] + n - 1);
  }
  return values[static_cast<std::size_t>(flat)];
}

kernel_samples sample_kernel(std::span<const double> fourier_weights, int n, int dim) {
  const grid g(dim, n);
  const int m = g.m();
  const std::int64_t total = g.fourier_size();
  if (static_cast<std::int64_t>(fourier_weights.size()) != total)
    throw dimension_error("Fourier weights need (2N-1)^d entries, got " + std::to_string(fourier_weights.size()));
  for (double w : fourier_weights)
    if (!(w >= 0.0) || !std::isfinite(w)) throw domain_error("Fourier weights must be finite and nonnegative");

  std::vector<cplx> in(fourier_weights.begin(), fourier_weights.end()), raw(static_cast<std::size_t>(total));
  detail::fft_plan plan(std::vector<int>(dim, m), detail::fft_plan::direction::backward);
  plan.execute(in.data(), raw.data());

  kernel_samples out;
  out.dim = dim;
  out.n = n;
  out.values.resize(static_cast<std::size_t>(total));
  const double scale = 1.0 / static_cast<double>(total);
  std::vector<int> idx(dim);
  for (std::int64_t f = 0; f < total; ++f) {
    unflatten(f, m, dim, idx.data());
    // idx = u + N - 1; the DFT bin is u mod M and the grid offset -pi + dxi/2
    // contributes exp(i pi u (1-M) / M), reduced exactly modulo 2M.
    std::int64_t bin = 0, turns = 0;
    for (int a = 0; a < dim; ++a) {
      const int u = idx[a] - (n - 1);
      bin = bin * m + ((u % m) + m) % m;
      turns += static_cast<std::int64_t>(u) * (1 - m);
    }
    const std::int64_t r = ((turns % (2 * m)) + 2 * m) % (2 * m);
    const double angle = std::numbers::pi * static_cast<double>(r) / m;
    out.values[f] = raw[bin] * scale * cplx(std::cos(angle), std::sin(angle));
  }

  // Weights that are mirror symmetric along an axis give a kernel even in that
  // axis; average each pair so this holds bit for bit.
  {
    std::vector<int> l(dim);
    for (int a = 0; a < dim; ++a) {
      std::int64_t stride = 1;
      for (int b = a + 1; b < dim; ++b) stride *= m;
      auto partner = [&](std::int64_t f) {
        unflatten(f, m, dim, l.data());
        return f + static_cast<std::int64_t>(m - 1 - 2 * l[a]) * stride;
      };
      bool symmetric = true;
      for (std::int64_t f = 0; f < total && symmetric; ++f) symmetric = fourier_weights[f] == fourier_weights[partner(f)];
      if (!symmetric) continue;
      for (std::int64_t f = 0; f < total; ++f) {
        const std::int64_t p = partner(f);
        if (p <= f) continue;
        const cplx avg = 0.5 * (out.values[f] + out.values[p]);
        out.values[f] = avg;
        out.values[p] = avg;
      }
    }
  }

  // Enforce kappa(-u) = conj(kappa(u)) exactly; u -> -u is f -> total-1-f.
  bool even = true;
  {
    std::vector<int> l(dim);
    for (std::int64_t f = 0; f < total && even; ++f) {
      unflatten(f, m, dim, l.data());
      std::int64_t mirror = 0;
      for (int a = 0; a < dim; ++a) mirror = mirror * m + (m - 1 - l[a]);
      even = fourier_weights[f] == fourier_weights[mirror];
    }
  }
  for (std::int64_t f = 0; f <= (total - 1) / 2; ++f) {
    const std::int64_t g2 = total - 1 - f;
    const cplx avg = 0.5 * (out.values[f] + std::conj(out.values[g2]));
    out.values[f] = avg;
    out.values[g2] = std::conj(avg);
  }
  if (even)
    for (auto& v : out.values) v = cplx(v.real(), 0.0);
  out.real_valued = true;
  for (const auto& v : out.values) out.real_valued = out.real_valued && v.imag() == 0.0;
  return out;
}

concentration_matrix assemble_dense(std::span<const double> space_mask, const kernel_samples& kernel) {
  const grid g(kernel.dim, kernel.n);
  const std::int64_t size = g.space_size();
  if (static_cast<std::int64_t>(space_mask.size()) != size)
    throw dimension_error("space mask needs N^d entries, got " + std::to_string(space_mask.size()));
  concentration_matrix k;
  k.g = g;
  k.mask.assign(space_mask.begin(), space_mask.end());
  k.kernel = kernel;
  k.dense.resize(size, size);

  const int dim = g.dim(), n = g.n(), side = kernel.side();
  std::vector<int> rj(dim), ck(dim);
  for (std::int64_t j = 0; j < size; ++j) {
    g.space_multi_index(j, rj);
    const double mj = k.mask[j];
    for (std::int64_t c = j; c < size; ++c) {
      g.space_multi_index(c, ck);
      std::int64_t flat = 0;
      for (int a = 0; a < dim; ++a) flat = flat * side + (rj[a] - ck[a] + n - 1);
      // the mask product first, so swapping j and c gives the same bits
      const cplx v = (mj * k.mask[c]) * kernel.values[flat];
      k.dense(j, c) = v;
      k.dense(c, j) = std::conj(v);
    }
    k.dense(j, j) = cplx(k.dense(j, j).real(), 0.0);
  }
  return k;
}

fast_operator::fast_operator(std::span<const double> space_mask, const kernel_samples& kernel)
    : dim_(kernel.dim), n_(kernel.n), mask_(space_mask.begin(), space_mask.end()) {
  const grid g(dim_, n_);
  if (static_cast<std::int64_t>(mask_.size()) != g.space_size())
    throw dimension_error("space mask needs N^d entries, got " + std::to_string(mask_.size()));
  const int m = g.m();
  const std::int64_t total = g.fourier_size();
  std::vector<int> dims(dim_, m);
  forward_ = std::make_shared<detail::fft_plan>(dims, detail::fft_plan::direction::forward);
  backward_ = std::make_shared<detail::fft_plan>(dims, detail::fft_plan::direction::backward);

  // c(t) = kappa(t) for t <= N-1 and kappa(t - M) otherwise, per axis
  std::vector<cplx> c(static_cast<std::size_t>(total));
  std::vector<int> t(dim_);
  for (std::int64_t f = 0; f < total; ++f) {
    unflatten(f, m, dim_, t.data());
    std::int64_t src = 0;
    for (int a = 0; a < dim_; ++a) {
      const int u = t[a] <= n_ - 1 ? t[a] : t[a] - m;
      src = src * m + (u + n_ - 1);
    }
    c[f] = kernel.values[src];
  }
  const double scale = 1.0 / static_cast<double>(total);
  if (kernel.real_valued) {
    forward_.reset();
    backward_.reset();
    real_forward_ = std::make_shared<detail::real_fft_plan>(dims, detail::real_fft_plan::direction::forward);
    real_backward_ = std::make_shared<detail::real_fft_plan>(dims, detail::real_fft_plan::direction::backward);
    std::vector<double> cr(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) cr[i] = c[i].real();
    circulant_hat_.resize(real_forward_->half_size());
    real_forward_->execute(cr.data(), circulant_hat_.data());
  } else {
    circulant_hat_.resize(c.size());
    forward_->execute(c.data(), circulant_hat_.data());
  }
  for (auto& v : circulant_hat_) v *= scale;
}

void fast_operator::apply_real(const cvec& in, bool imag_part, std::vector<double>& result) const {
  const int m = 2 * n_ - 1;
  std::vector<double> work(real_forward_->real_size(), 0.0);
  std::vector<cplx> spec(real_forward_->half_size());
  std::vector<int> idx(dim_);
  const Eigen::Index size = this->size();
  for (Eigen::Index j = 0; j < size; ++j) {
    unflatten(j, n_, dim_, idx.data());
    std::int64_t f = 0;
    for (int a = 0; a < dim_; ++a) f = f * m + idx[a];
    work[f] = mask_[j] * (imag_part ? in(j).imag() : in(j).real());
  }
  real_forward_->execute(work.data(), spec.data());
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= circulant_hat_[i];
  real_backward_->execute(work.data(), spec.data());
  result.resize(static_cast<std::size_t>(size));
  for (Eigen::Index j = 0; j < size; ++j) {
    unflatten(j, n_, dim_, idx.data());
    std::int64_t f = 0;
    for (int a = 0; a < dim_; ++a) f = f * m + idx[a];
    result[j] = mask_[j] * work[f];
  }
}

void fast_operator::apply(const cvec& in, cvec& out) const {
  if (in.size() != size()) throw dimension_error("vector length does not match the operator");
  if (real_forward_) {
    std::vector<double> re, im;
    apply_real(in, false, re);
    const bool has_imag = (in.imag().array() != 0.0).any();
    if (has_imag) apply_real(in, true, im);
    out.resize(size());
    for (Eigen::Index j = 0; j < size(); ++j) out(j) = cplx(re[j], has_imag ? im[j] : 0.0);
    return;
  }
  const int m = 2 * n_ - 1;
  const std::size_t total = circulant_hat_.size();
  std::vector<cplx> work(total, cplx(0.0, 0.0)), spec(total);
  std::vector<int> idx(dim_);
  const Eigen::Index size = this->size();
  for (Eigen::Index j = 0; j < size; ++j) {
    unflatten(j, n_, dim_, idx.data());
    std::int64_t f = 0;
    for (int a = 0; a < dim_; ++a) f = f * m + idx[a];
    work[f] = mask_[j] * in(j);
  }
  forward_->execute(work.data(), spec.data());
  for (std::size_t i = 0; i < total; ++i) spec[i] *= circulant_hat_[i];
  backward_->execute(spec.data(), work.data());
  out.resize(size);
  for (Eigen::Index j = 0; j < size; ++j) {
    unflatten(j, n_, dim_, idx.data());
    std::int64_t f = 0;
    for (int a = 0; a < dim_; ++a) f = f * m + idx[a];
    out(j) = mask_[j] * work[f];
  }
}

cvec fast_operator::operator()(const cvec& in) const {
  cvec out;
  apply(in, out);
  return out;
}

linear_operator fast_operator::as_linear_operator() const {
  auto self = std::make_shared<fast_operator>(*this);
  return {size(), [self](const cvec& in, cvec& out) { self->apply(in, out); }};
}

cvec apply_fast(std::span<const double> space_mask, const kernel_samples& kernel, const cvec& v) {
  return fast_operator(space_mask, kernel)(v);
}

std::vector<double> concentration_problem::space_samples(double eps) const {
  if (space.base.role != mask_role::space) throw std::invalid_argument("space family must have the space role");
  return sample_mask(space, eps, g);
}

std::vector<double> concentration_problem::fourier_weights(double eps) const {
  if (fourier.base.role != mask_role::fourier) throw std::invalid_argument("Fourier family must have the Fourier role");
  auto w = sample_mask(fourier, eps, g);
  for (auto& v : w) v *= v;
  return w;
}

kernel_samples concentration_problem::kernel(double eps) const {
  return sample_kernel(fourier_weights(eps), g.n(), g.dim());
}

fast_operator concentration_problem::fast(double eps) const { return {space_samples(eps), kernel(eps)}; }

concentration_matrix concentration_problem::dense(double eps) const {
  return assemble_dense(space_samples(eps), kernel(eps));
}

structural_report hilbert_schmidt_checks(const concentration_matrix& k, const spectrum& s) {
  structural_report r;
  const Eigen::Index n = k.dense.rows();
  if (s.size() != n) throw dimension_error("spectrum does not match the matrix");
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index c = 0; c < n; ++c)
      r.hermiticity_max = std::max(r.hermiticity_max, std::abs(k.dense(j, c) - std::conj(k.dense(c, j))));
  r.hermitian_ok = r.hermiticity_max == 0.0;
  r.frobenius_squared = k.dense.squaredNorm();
  r.eigen_square_sum = s.values.squaredNorm();
  r.frobenius_relative =
      r.frobenius_squared > 0 ? std::abs(r.eigen_square_sum - r.frobenius_squared) / r.frobenius_squared : 0.0;
  r.frobenius_ok = r.frobenius_relative <= 1e-10;
  r.lambda_max = s.values(0);
  r.lambda_min = s.values(n - 1);
  r.psd_ok = r.lambda_min >= -1e-10 * std::abs(r.lambda_max);
  for (Eigen::Index i = 0; i + 1 < n; ++i) r.sorted = r.sorted && s.values(i) >= s.values(i + 1);
  double mass = 0.0;
  for (double m : k.mask) mass += m * m;
  const std::vector<int> zero(k.g.dim(), 0);
  r.norm_bound = k.kernel.at(zero).real() * mass;
  r.norm_bound_ok = r.lambda_max <= r.norm_bound * (1.0 + 1e-12) + 1e-14;
  r.identity = k.dense.isIdentity(1e-12);
  return r;
}

double dense_bytes(const grid& g) {
  const double n = static_cast<double>(g.space_size());
  return n * n * static_cast<double>(sizeof(cplx));
}

}  // namespace slepian
