#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "helicore/fft.hpp"
#include "helicore/grid.hpp"

namespace helicore {

using Vec3 = std::array<double, 3>;

/// Real vector field on T^3 stored as Fourier coefficients, one complex array
/// per Cartesian component. The same value stands in for a vector field X,
/// its 1-form w_X, and its 2-form i_X mu.
class SpectralVectorField {
 public:
  explicit SpectralVectorField(const GridSpec& grid)
      : grid_(grid),
        coeffs_{std::vector<Complex>(grid.size()), std::vector<Complex>(grid.size()),
                std::vector<Complex>(grid.size())} {}

  const GridSpec& grid() const { return grid_; }

  std::span<Complex> component(int j) { return coeffs_.at(j); }
  std::span<const Complex> component(int j) const { return coeffs_.at(j); }

  Complex& operator()(int j, std::size_t idx) { return coeffs_[j][idx]; }
  const Complex& operator()(int j, std::size_t idx) const { return coeffs_[j][idx]; }

  Complex& at(int j, const WaveVector& k) { return coeffs_.at(j).at(grid_.index_of(k)); }
  const Complex& at(int j, const WaveVector& k) const {
    return coeffs_.at(j).at(grid_.index_of(k));
  }

  SpectralVectorField& operator+=(const SpectralVectorField& other) {
    check_same_grid(other);
    for (int j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < grid_.size(); ++i) coeffs_[j][i] += other.coeffs_[j][i];
    return *this;
  }
  SpectralVectorField& operator-=(const SpectralVectorField& other) {
    check_same_grid(other);
    for (int j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < grid_.size(); ++i) coeffs_[j][i] -= other.coeffs_[j][i];
    return *this;
  }
  SpectralVectorField& operator*=(double s) {
    for (auto& c : coeffs_)
      for (auto& v : c) v *= s;
    return *this;
  }

  /// this += s * other
  SpectralVectorField& add_scaled(double s, const SpectralVectorField& other) {
    check_same_grid(other);
    for (int j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < grid_.size(); ++i) coeffs_[j][i] += s * other.coeffs_[j][i];
    return *this;
  }

  friend SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) {
    a += b;
    return a;
  }
  friend SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) {
    a -= b;
    return a;
  }
  friend SpectralVectorField operator*(double s, SpectralVectorField a) {
    a *= s;
    return a;
  }
  friend SpectralVectorField operator-(SpectralVectorField a) {
    a *= -1.0;
    return a;
  }

  bool operator==(const SpectralVectorField&) const = default;

  void check_same_grid(const SpectralVectorField& other) const {
    if (!(grid_ == other.grid_)) throw InvalidArgument("field grids differ");
  }

 private:
  GridSpec grid_;
  std::array<std::vector<Complex>, 3> coeffs_;
};

/// Physical samples of a vector field, component-major, i3 fastest.
struct PhysicalVectorField {
  GridSpec grid;
  std::array<std::vector<double>, 3> samples;

  explicit PhysicalVectorField(const GridSpec& g)
      : grid(g),
        samples{std::vector<double>(g.size()), std::vector<double>(g.size()),
                std::vector<double>(g.size())} {}
};

inline PhysicalVectorField to_physical(const SpectralVectorField& field) {
  PhysicalVectorField out(field.grid());
  for (int j = 0; j < 3; ++j) out.samples[j] = transform_inverse(field.grid(), field.component(j));
  return out;
}

inline SpectralVectorField to_spectral(const PhysicalVectorField& phys) {
  SpectralVectorField out(phys.grid);
  for (int j = 0; j < 3; ++j) {
    const auto coeffs = transform_forward(phys.grid, phys.samples[j]);
    std::copy(coeffs.begin(), coeffs.end(), out.component(j).begin());
  }
  return out;
}

/// Samples f(x1, x2, x3) at the grid points x_i = 2 pi i / n and transforms.
inline SpectralVectorField sample_field(
    const GridSpec& grid, const std::function<Vec3(double, double, double)>& f) {
  PhysicalVectorField phys(grid);
  const int n = grid.n();
  const double h = grid.spacing();
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      for (int i3 = 0; i3 < n; ++i3) {
        const Vec3 v = f(i1 * h, i2 * h, i3 * h);
        const std::size_t idx = grid.index(i1, i2, i3);
        for (int j = 0; j < 3; ++j) phys.samples[j][idx] = v[j];
      }
  return to_spectral(phys);
}

inline SpectralVectorField constant_field(const GridSpec& grid, const Vec3& value) {
  SpectralVectorField out(grid);
  for (int j = 0; j < 3; ++j) out(j, 0) = value[j];
  return out;
}

inline SpectralVectorField dealias(const SpectralVectorField& field) {
  SpectralVectorField out = field;
  const auto& mask = wave_table(field.grid()).inside_mask;
  for (int j = 0; j < 3; ++j) {
    auto c = out.component(j);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!mask[i]) c[i] = 0.0;
  }
  return out;
}

/// sqrt(sum_k |X^(k)|^2) over all components.
inline double coefficient_norm(const SpectralVectorField& field) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j)
    for (const auto& c : field.component(j)) s += std::norm(c);
  return std::sqrt(s);
}

/// max_{j,k} |X^_j(-k) - conj(X^_j(k))|, relative to the largest coefficient.
inline double reality_defect(const SpectralVectorField& field) {
  const GridSpec& g = field.grid();
  double worst = 0.0, scale = 0.0;
  for (int j = 0; j < 3; ++j) {
    auto c = field.component(j);
    for (std::size_t i = 0; i < g.size(); ++i) {
      scale = std::max(scale, std::abs(c[i]));
      worst = std::max(worst, std::abs(c[g.conjugate_index(i)] - std::conj(c[i])));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

struct ExactnessDefects {
  double divergence = 0.0;  // |k (k.X^)/|k|^2| / |X^|
  double mean = 0.0;        // content on derivative-null slots / |X^|
};

/// Single pass over the spectrum measuring how far a field is from being
/// exact divergence-free. Derivative-null slots are the mean and the
/// pure-Nyquist wavevectors, which no grid derivative resolves.
inline ExactnessDefects exactness_defects(const SpectralVectorField& field) {
  const auto& w = wave_table(field.grid());
  double div = 0.0, mean = 0.0, total = 0.0;
  for (std::size_t i = 0; i < field.grid().size(); ++i) {
    const Complex x0 = field(0, i), x1 = field(1, i), x2 = field(2, i);
    const double sq = std::norm(x0) + std::norm(x1) + std::norm(x2);
    total += sq;
    if (w.k2[i] == 0.0) {
      mean += sq;
    } else {
      div += std::norm(w.kx[i] * x0 + w.ky[i] * x1 + w.kz[i] * x2) / w.k2[i];
    }
  }
  if (total == 0.0) return {};
  const double norm = std::sqrt(total);
  return {std::sqrt(div) / norm, std::sqrt(mean) / norm};
}

inline double divergence_defect(const SpectralVectorField& field) {
  return exactness_defects(field).divergence;
}

inline double mean_defect(const SpectralVectorField& field) { return exactness_defects(field).mean; }

// Relative tolerance used when operators validate their domain.
inline constexpr double kDomainTolerance = 1e-10;

inline void require_divergence_free(const SpectralVectorField& field, const char* who) {
  const double d = divergence_defect(field);
  if (d > kDomainTolerance) {
    throw DomainError(std::string(who) + ": field is not divergence-free (relative defect " +
                      std::to_string(d) + ")");
  }
}

/// Exact divergence-free: div X = 0 and zero mean, i.e. X lies in im(curl).
inline void require_exact(const SpectralVectorField& field, const char* who) {
  const ExactnessDefects d = exactness_defects(field);
  if (d.divergence > kDomainTolerance) {
    throw DomainError(std::string(who) + ": field is not divergence-free (relative defect " +
                      std::to_string(d.divergence) + ")");
  }
  const double m = d.mean;
  if (m > kDomainTolerance) {
    throw DomainError(std::string(who) + ": field has a harmonic (mean) component (relative " +
                      std::to_string(m) + ")");
  }
}

inline bool is_exact(const SpectralVectorField& field, double tol = kDomainTolerance) {
  const ExactnessDefects d = exactness_defects(field);
  return d.divergence <= tol && d.mean <= tol;
}

}  // namespace helicore
