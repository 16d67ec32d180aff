#pragma once

#include <complex>
#include <memory>

#include <Eigen/Dense>

namespace floquet {

/// Unitary-normalized 1D DFT pair backed by FFTW. Plans are created with
/// FFTW_ESTIMATE so results are reproducible run to run.
class FourierTransform {
 public:
  explicit FourierTransform(int n);
  ~FourierTransform();
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  int size() const { return n_; }

  /// Unnormalized forward transform (sign −1), in place.
  void forward(Eigen::VectorXcd& data) const;
  /// Backward transform scaled by 1/n, in place.
  void backward(Eigen::VectorXcd& data) const;

 private:
  struct Plans;
  int n_;
  std::unique_ptr<Plans> plans_;
};

/// Version string reported by the linked FFTW.
const char* fftw_version_string();

/// Multiplies the spectrum of `samples` by `multiplier` (FFT order).
void apply_fourier_multiplier(const FourierTransform& fft,
                              const Eigen::VectorXcd& multiplier,
                              Eigen::VectorXcd& samples);

}  // namespace floquet
