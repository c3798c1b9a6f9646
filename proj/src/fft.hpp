#pragma once

#include <complex>
#include <vector>

namespace slepian::detail {

// Unnormalized multi-dimensional complex DFT backed by FFTW. One plan may be
// executed concurrently on different arrays (new-array execute).
class fft_plan {
 public:
  enum class direction { forward, backward };

  fft_plan(std::vector<int> dims, direction dir);
  ~fft_plan();
  fft_plan(const fft_plan&) = delete;
  fft_plan& operator=(const fft_plan&) = delete;

  std::size_t size() const { return size_; }
  void execute(std::complex<double>* in, std::complex<double>* out) const;

 private:
  void* plan_ = nullptr;
  std::size_t size_ = 1;
};

// Real-to-half-complex forward and half-complex-to-real backward DFTs. The
// half spectrum keeps dims.back() / 2 + 1 entries along the last axis.
class real_fft_plan {
 public:
  enum class direction { forward, backward };

  real_fft_plan(std::vector<int> dims, direction dir);
  ~real_fft_plan();
  real_fft_plan(const real_fft_plan&) = delete;
  real_fft_plan& operator=(const real_fft_plan&) = delete;

  std::size_t real_size() const { return real_size_; }
  std::size_t half_size() const { return half_size_; }
  // Forward reads `real` and writes `half`; backward reads `half` (clobbered) and writes `real`.
  void execute(double* real, std::complex<double>* half) const;

 private:
  void* plan_ = nullptr;
  direction dir_;
  std::size_t real_size_ = 1;
  std::size_t half_size_ = 1;
};

}  // namespace slepian::detail
