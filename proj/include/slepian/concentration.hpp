#pragma once

#include <memory>
#include <string>
#include <vector>

#include "slepian/geometry.hpp"
#include "slepian/spectrum.hpp"

namespace slepian {

namespace detail {
class fft_plan;
class real_fft_plan;
}

// kappa(u) for u in [-(N-1), N-1]^d, stored with side 2N-1 per axis at
// offset u + N - 1 (last axis fastest).
struct kernel_samples {
  int dim = 1;
  int n = 1;
  std::vector<cplx> values;
  bool real_valued = false;  // every imaginary part is exactly zero

  int side() const { return 2 * n - 1; }
  cplx at(std::span<const int> u) const;
};

// kappa(u) = M^-d sum_l g_l e^{i xi_l . u} with g = |Fourier mask|^2 on the
// Fourier grid, computed with one inverse FFT of size M^d.
kernel_samples sample_kernel(std::span<const double> fourier_weights, int n, int dim);

// K_{jk} = conj(m_j) kappa(j-k) m_k with a real mask m.
struct concentration_matrix {
  grid g{1, 1};
  std::vector<double> mask;
  kernel_samples kernel;
  cmat dense;

  bool real_valued() const { return kernel.real_valued; }
};

concentration_matrix assemble_dense(std::span<const double> space_mask, const kernel_samples& kernel);

// Matrix-free K via circulant embedding of the block-Toeplitz kernel. With a
// real kernel the real and imaginary parts go through real transforms, so
// real vectors map to exactly real vectors.
class fast_operator {
 public:
  fast_operator(std::span<const double> space_mask, const kernel_samples& kernel);

  Eigen::Index size() const { return static_cast<Eigen::Index>(mask_.size()); }
  void apply(const cvec& in, cvec& out) const;
  cvec operator()(const cvec& in) const;
  linear_operator as_linear_operator() const;

  const std::vector<double>& mask() const { return mask_; }

 private:
  int dim_;
  int n_;
  std::vector<double> mask_;
  std::vector<cplx> circulant_hat_;
  std::shared_ptr<detail::fft_plan> forward_;
  std::shared_ptr<detail::fft_plan> backward_;
  std::shared_ptr<detail::real_fft_plan> real_forward_;
  std::shared_ptr<detail::real_fft_plan> real_backward_;

  void apply_real(const cvec& in, bool imag_part, std::vector<double>& result) const;
};

cvec apply_fast(std::span<const double> space_mask, const kernel_samples& kernel, const cvec& v);

// A grid with two mask families; K(eps) on demand.
struct concentration_problem {
  grid g{1, 1};
  mask_family space;
  mask_family fourier;

  std::vector<double> space_samples(double eps) const;
  // |Fourier mask|^2 on the Fourier grid.
  std::vector<double> fourier_weights(double eps) const;
  kernel_samples kernel(double eps) const;
  fast_operator fast(double eps) const;
  concentration_matrix dense(double eps) const;
};

struct structural_report {
  double hermiticity_max = 0.0;   // max |K_jk - conj(K_kj)|
  double frobenius_squared = 0.0;
  double eigen_square_sum = 0.0;
  double frobenius_relative = 0.0;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double norm_bound = 0.0;        // kappa(0) * sum |m|^2
  bool sorted = true;
  bool hermitian_ok = true;
  bool frobenius_ok = true;
  bool psd_ok = true;
  bool norm_bound_ok = true;
  bool identity = false;

  bool ok() const { return hermitian_ok && frobenius_ok && psd_ok && sorted && norm_bound_ok; }
};

structural_report hilbert_schmidt_checks(const concentration_matrix& k, const spectrum& s);

// Bytes a dense N^d x N^d complex matrix needs.
double dense_bytes(const grid& g);

}  // namespace slepian
