#include "floquet/fourier.hpp"

#include <mutex>

#include <fftw3.h>

#include "floquet/error.hpp"

namespace floquet {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace

struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

FourierTransform::FourierTransform(int n) : n_(n) {
  if (n < 1) throw PreconditionError("FFT size must be positive");
  plans_ = std::make_unique<Plans>();
  Eigen::VectorXcd probe(n);
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->forward = fftw_plan_dft_1d(n, as_fftw(probe.data()),
                                     as_fftw(probe.data()), FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft_1d(
      n, as_fftw(probe.data()), as_fftw(probe.data()), FFTW_BACKWARD, flags);
}

FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept =
    default;

void FourierTransform::forward(Eigen::VectorXcd& data) const {
  if (data.size() != n_) throw PreconditionError("FFT size mismatch");
  fftw_execute_dft(plans_->forward, as_fftw(data.data()), as_fftw(data.data()));
}

void FourierTransform::backward(Eigen::VectorXcd& data) const {
  if (data.size() != n_) throw PreconditionError("FFT size mismatch");
  fftw_execute_dft(plans_->backward, as_fftw(data.data()),
                   as_fftw(data.data()));
  data /= static_cast<double>(n_);
}

void apply_fourier_multiplier(const FourierTransform& fft,
                              const Eigen::VectorXcd& multiplier,
                              Eigen::VectorXcd& samples) {
  fft.forward(samples);
  samples.array() *= multiplier.array();
  fft.backward(samples);
}

const char* fftw_version_string() { return fftw_version; }

}  // namespace floquet
