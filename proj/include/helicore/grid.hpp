#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <compare>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "helicore/errors.hpp"

namespace helicore {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
// |T^3| for the flat torus [0, 2pi)^3.
inline constexpr double kTorusVolume = kTwoPi * kTwoPi * kTwoPi;

struct WaveVector {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;

  int norm2() const { return k1 * k1 + k2 * k2 + k3 * k3; }
  double norm() const { return std::sqrt(static_cast<double>(norm2())); }
  int max_abs() const {
    return std::max({std::abs(k1), std::abs(k2), std::abs(k3)});
  }
  bool is_zero() const { return k1 == 0 && k2 == 0 && k3 == 0; }
  WaveVector operator-() const { return {-k1, -k2, -k3}; }

  friend auto operator<=>(const WaveVector&, const WaveVector&) = default;
};

/// Uniform discretization of [0, 2pi)^3 with n samples per axis.
///
/// Storage index of sample (i1, i2, i3) is (i1 * n + i2) * n + i3, i3 fastest.
/// The same layout indexes Fourier coefficients, with storage index i on an
/// axis holding wavenumber i for i < n/2 and i - n otherwise (so the Nyquist
/// slot carries -n/2).
class GridSpec {
 public:
  explicit GridSpec(int n, int dealias_num = 2, int dealias_den = 3)
      : n_(n), dealias_num_(dealias_num), dealias_den_(dealias_den) {
    if (n < 8 || n % 2 != 0) {
      throw InvalidArgument("grid: n must be even and >= 8, got " +
                            std::to_string(n));
    }
    if (dealias_den <= 0 || dealias_num <= 0 || dealias_num > dealias_den) {
      throw InvalidArgument("grid: dealias fraction must lie in (0, 1]");
    }
  }

  int n() const { return n_; }
  std::size_t size() const {
    return static_cast<std::size_t>(n_) * n_ * n_;
  }
  double spacing() const { return kTwoPi / n_; }
  int dealias_num() const { return dealias_num_; }
  int dealias_den() const { return dealias_den_; }

  /// Largest retained |k_j| after dealiasing: floor(fraction * n / 2).
  int dealias_cutoff() const { return (dealias_num_ * n_) / (2 * dealias_den_); }

  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * n_ + i2) * n_ + i3;
  }

  int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }

  // Odd derivatives of real data vanish on the Nyquist slot.
  int derivative_wavenumber(int i) const { return i == n_ / 2 ? 0 : wavenumber(i); }

  int slot(int k) const { return k >= 0 ? k : k + n_; }

  /// Storage index for k; requires -n/2 <= k_j < n/2.
  std::size_t index_of(const WaveVector& k) const {
    return index(slot(k.k1), slot(k.k2), slot(k.k3));
  }

  bool holds(const WaveVector& k) const {
    auto ok = [&](int c) { return c >= -n_ / 2 && c < n_ / 2; };
    return ok(k.k1) && ok(k.k2) && ok(k.k3);
  }

  WaveVector wavevector(std::size_t idx) const {
    const int i3 = static_cast<int>(idx % n_);
    const int i2 = static_cast<int>((idx / n_) % n_);
    const int i1 = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
    return {wavenumber(i1), wavenumber(i2), wavenumber(i3)};
  }

  /// Storage index of -k (the Hermitian partner) for storage index idx.
  std::size_t conjugate_index(std::size_t idx) const {
    const int i3 = static_cast<int>(idx % n_);
    const int i2 = static_cast<int>((idx / n_) % n_);
    const int i1 = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
    auto neg = [&](int i) { return i == 0 ? 0 : n_ - i; };
    return index(neg(i1), neg(i2), neg(i3));
  }

  bool operator==(const GridSpec&) const = default;

 private:
  int n_;
  int dealias_num_;
  int dealias_den_;
};

/// Derivative wavevector per storage index, laid out like the coefficients.
struct WaveTable {
  std::vector<double> kx, ky, kz, k2;
  std::vector<unsigned char> inside_mask;

  explicit WaveTable(const GridSpec& grid) {
    const int n = grid.n();
    const int cut = grid.dealias_cutoff();
    kx.resize(grid.size());
    ky.resize(grid.size());
    kz.resize(grid.size());
    k2.resize(grid.size());
    inside_mask.resize(grid.size());
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        for (int i3 = 0; i3 < n; ++i3) {
          const std::size_t idx = grid.index(i1, i2, i3);
          kx[idx] = grid.derivative_wavenumber(i1);
          ky[idx] = grid.derivative_wavenumber(i2);
          kz[idx] = grid.derivative_wavenumber(i3);
          k2[idx] = kx[idx] * kx[idx] + ky[idx] * ky[idx] + kz[idx] * kz[idx];
          const int m = std::max({std::abs(grid.wavenumber(i1)),
                                  std::abs(grid.wavenumber(i2)),
                                  std::abs(grid.wavenumber(i3))});
          inside_mask[idx] = m <= cut ? 1 : 0;
        }
      }
    }
  }
};

/// Shared, immutable wave table for a grid; built once per configuration.
inline const WaveTable& wave_table(const GridSpec& grid) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<WaveTable>> cache;
  const auto key = std::make_tuple(grid.n(), grid.dealias_num(), grid.dealias_den());
  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<WaveTable>(grid);
  return *slot;
}

/// All k with max_j |k_j| <= kmax, lexicographic in (k1, k2, k3).
inline std::vector<WaveVector> enumerate_wavevectors(const GridSpec& grid,
                                                     int kmax) {
  if (kmax < 0 || kmax > grid.n() / 2) {
    throw InvalidArgument("enumerate_wavevectors: kmax must lie in [0, n/2]");
  }
  std::vector<WaveVector> out;
  out.reserve(static_cast<std::size_t>(2 * kmax + 1) * (2 * kmax + 1) *
              (2 * kmax + 1));
  for (int a = -kmax; a <= kmax; ++a)
    for (int b = -kmax; b <= kmax; ++b)
      for (int c = -kmax; c <= kmax; ++c) out.push_back({a, b, c});
  return out;
}

}  // namespace helicore
