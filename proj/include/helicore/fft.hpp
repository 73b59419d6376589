#pragma once

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "helicore/grid.hpp"

namespace helicore {

using Complex = std::complex<double>;

namespace detail {

// Number of FFTW threads requested through HELICORE_THREADS (default 1).
inline int requested_threads() {
  const char* env = std::getenv("HELICORE_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min(v, 256L));
}

template <typename T>
struct FftwDeleter {
  void operator()(T* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double, FftwDeleter<double>>;
using HalfBuffer = std::unique_ptr<fftw_complex, FftwDeleter<fftw_complex>>;

/// Real-to-complex and complex-to-real plans for an n^3 grid. Plans are made
/// on SIMD-aligned scratch and executed on fresh fftw_malloc buffers, so every
/// execution sees the alignment the planner assumed.
class FftPlans {
 public:
  explicit FftPlans(int n) : n_(n) {
    RealBuffer r(alloc_real());
    HalfBuffer c(alloc_half());
    forward_ = fftw_plan_dft_r2c_3d(n, n, n, r.get(), c.get(), FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_3d(n, n, n, c.get(), r.get(), FFTW_ESTIMATE);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
  ~FftPlans() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  std::size_t real_size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  std::size_t half_size() const { return static_cast<std::size_t>(n_) * n_ * (n_ / 2 + 1); }
  double* alloc_real() const { return fftw_alloc_real(real_size()); }
  fftw_complex* alloc_half() const { return fftw_alloc_complex(half_size()); }

  // Unnormalized sum_x r(x) e^{-ik.x} written to the full n^3 spectrum;
  // the k3 < 0 half is filled from Hermitian symmetry.
  void forward(const double* in, Complex* full) const {
    RealBuffer r(alloc_real());
    HalfBuffer c(alloc_half());
    std::copy(in, in + real_size(), r.get());
    fftw_execute_dft_r2c(forward_, r.get(), c.get());
    const int n = n_;
    const int h = n / 2 + 1;
    const auto* half = reinterpret_cast<const Complex*>(c.get());
    for (int i1 = 0; i1 < n; ++i1) {
      const int j1 = i1 == 0 ? 0 : n - i1;
      for (int i2 = 0; i2 < n; ++i2) {
        const int j2 = i2 == 0 ? 0 : n - i2;
        const Complex* src = half + (static_cast<std::size_t>(i1) * n + i2) * h;
        Complex* dst = full + (static_cast<std::size_t>(i1) * n + i2) * n;
        for (int i3 = 0; i3 < h; ++i3) dst[i3] = src[i3];
        const Complex* mirror = half + (static_cast<std::size_t>(j1) * n + j2) * h;
        for (int i3 = h; i3 < n; ++i3) dst[i3] = std::conj(mirror[n - i3]);
      }
    }
  }

  // sum_k c(k) e^{ik.x} for a Hermitian spectrum, read from the k3 >= 0 half.
  void backward(const Complex* full, double* out) const {
    RealBuffer r(alloc_real());
    HalfBuffer c(alloc_half());
    const int n = n_;
    const int h = n / 2 + 1;
    auto* half = reinterpret_cast<Complex*>(c.get());
    for (std::size_t row = 0; row < static_cast<std::size_t>(n) * n; ++row)
      for (int i3 = 0; i3 < h; ++i3) half[row * h + i3] = full[row * n + i3];
    fftw_execute_dft_c2r(backward_, c.get(), r.get());
    std::copy(r.get(), r.get() + real_size(), out);
  }

 private:
  int n_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

inline const FftPlans& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<FftPlans>> cache;
  static const bool threads_ready = [] {
    const int nthreads = requested_threads();
    if (nthreads > 1 && fftw_init_threads() != 0) {
      fftw_plan_with_nthreads(nthreads);
    }
    return true;
  }();
  (void)threads_ready;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlans>(n);
  return *slot;
}

}  // namespace detail

/// Fourier coefficients c^(k) of real samples, normalized so that
/// c(x) = sum_k c^(k) exp(i k.x).
inline std::vector<Complex> transform_forward(const GridSpec& grid,
                                              std::span<const double> samples) {
  if (samples.size() != grid.size()) {
    throw InvalidArgument("transform_forward: expected n^3 samples");
  }
  std::vector<Complex> out(grid.size());
  detail::plans_for(grid.n()).forward(samples.data(), out.data());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : out) c *= scale;
  return out;
}

/// Real samples synthesized from coefficients. The spectrum is taken to be
/// Hermitian: only the k3 >= 0 half is read.
inline std::vector<double> transform_inverse(const GridSpec& grid,
                                             std::span<const Complex> coeffs) {
  if (coeffs.size() != grid.size()) {
    throw InvalidArgument("transform_inverse: expected n^3 coefficients");
  }
  std::vector<double> samples(grid.size());
  detail::plans_for(grid.n()).backward(coeffs.data(), samples.data());
  return samples;
}

/// Zeroes every coefficient with max_j |k_j| above the dealias cutoff.
inline std::vector<Complex> dealias(std::span<const Complex> coeffs,
                                    const GridSpec& grid) {
  if (coeffs.size() != grid.size()) {
    throw InvalidArgument("dealias: expected n^3 coefficients");
  }
  const auto& mask = wave_table(grid).inside_mask;
  std::vector<Complex> out(coeffs.begin(), coeffs.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!mask[i]) out[i] = 0.0;
  }
  return out;
}

}  // namespace helicore
