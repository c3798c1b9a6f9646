#include "fft.hpp"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace slepian::detail {

namespace {
// Planner calls are not thread-safe in FFTW; execution is.
std::mutex planner_mutex;
}  // namespace

fft_plan::fft_plan(std::vector<int> dims, direction dir) {
  for (int d : dims) size_ *= static_cast<std::size_t>(d);
  std::vector<std::complex<double>> scratch_in(size_), scratch_out(size_);
  const int sign = dir == direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  std::lock_guard lock(planner_mutex);
  plan_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(),
                        reinterpret_cast<fftw_complex*>(scratch_in.data()),
                        reinterpret_cast<fftw_complex*>(scratch_out.data()), sign,
                        FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan_) throw std::runtime_error("FFTW could not create a plan");
}

fft_plan::~fft_plan() {
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void fft_plan::execute(std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(static_cast<fftw_plan>(plan_), reinterpret_cast<fftw_complex*>(in),
                   reinterpret_cast<fftw_complex*>(out));
}

real_fft_plan::real_fft_plan(std::vector<int> dims, direction dir) : dir_(dir) {
  if (dims.empty()) throw std::invalid_argument("real DFT needs at least one axis");
  for (int d : dims) real_size_ *= static_cast<std::size_t>(d);
  half_size_ = real_size_ / static_cast<std::size_t>(dims.back()) * static_cast<std::size_t>(dims.back() / 2 + 1);
  std::vector<double> scratch_real(real_size_);
  std::vector<std::complex<double>> scratch_half(half_size_);
  const int rank = static_cast<int>(dims.size());
  auto* half = reinterpret_cast<fftw_complex*>(scratch_half.data());
  std::lock_guard lock(planner_mutex);
  plan_ = dir == direction::forward
              ? fftw_plan_dft_r2c(rank, dims.data(), scratch_real.data(), half, FFTW_ESTIMATE | FFTW_UNALIGNED)
              : fftw_plan_dft_c2r(rank, dims.data(), half, scratch_real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan_) throw std::runtime_error("FFTW could not create a plan");
}

real_fft_plan::~real_fft_plan() {
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void real_fft_plan::execute(double* real, std::complex<double>* half) const {
  auto* h = reinterpret_cast<fftw_complex*>(half);
  if (dir_ == direction::forward)
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_), real, h);
  else
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_), h, real);
}

}  // namespace slepian::detail
