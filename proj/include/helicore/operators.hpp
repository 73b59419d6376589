#pragma once

#include <vector>

#include "helicore/field.hpp"
#include "helicore/fields.hpp"

namespace helicore {

/// Scalar field as Fourier coefficients (same layout as one vector component).
using SpectralScalar = std::vector<Complex>;

/// (curl X)^(k) = i k x X^(k). Divergence-free; kills gradients and constants.
inline SpectralVectorField curl(const SpectralVectorField& x) {
  const GridSpec& g = x.grid();
  const auto& w = wave_table(g);
  const Complex I(0.0, 1.0);
  SpectralVectorField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    out(0, i) = I * (w.ky[i] * x(2, i) - w.kz[i] * x(1, i));
    out(1, i) = I * (w.kz[i] * x(0, i) - w.kx[i] * x(2, i));
    out(2, i) = I * (w.kx[i] * x(1, i) - w.ky[i] * x(0, i));
  }
  return out;
}

namespace detail {

// curl^-1 without domain validation; the caller guarantees exactness.
inline SpectralVectorField curl_inv_unchecked(const SpectralVectorField& x) {
  const GridSpec& g = x.grid();
  const auto& w = wave_table(g);
  const Complex I(0.0, 1.0);
  SpectralVectorField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (w.k2[i] == 0.0) continue;
    const Complex f = I / w.k2[i];
    out(0, i) = f * (w.ky[i] * x(2, i) - w.kz[i] * x(1, i));
    out(1, i) = f * (w.kz[i] * x(0, i) - w.kx[i] * x(2, i));
    out(2, i) = f * (w.kx[i] * x(1, i) - w.ky[i] * x(0, i));
  }
  return out;
}

}  // namespace detail

/// Inverse of curl on exact divergence-free fields: (curl^-1 X)^ = i k x X^ / |k|^2,
/// which multiplies each helical amplitude a_s(k) by 1/(s|k|).
///
/// With strict = true (the default) a field with a mean or divergent part
/// beyond kDomainTolerance is rejected with DomainError; otherwise the
/// input is first projected with leray_project.
inline SpectralVectorField curl_inv(const SpectralVectorField& x, bool strict = true) {
  if (strict) {
    require_exact(x, "curl_inv");
    return detail::curl_inv_unchecked(x);
  }
  return detail::curl_inv_unchecked(leray_project(x));
}

inline SpectralVectorField gradient(const GridSpec& g, const SpectralScalar& phi) {
  if (phi.size() != g.size()) throw InvalidArgument("gradient: size mismatch");
  const auto& w = wave_table(g);
  const Complex I(0.0, 1.0);
  SpectralVectorField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    out(0, i) = I * w.kx[i] * phi[i];
    out(1, i) = I * w.ky[i] * phi[i];
    out(2, i) = I * w.kz[i] * phi[i];
  }
  return out;
}

inline SpectralScalar divergence(const SpectralVectorField& x) {
  const GridSpec& g = x.grid();
  const auto& w = wave_table(g);
  const Complex I(0.0, 1.0);
  SpectralScalar out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = I * (w.kx[i] * x(0, i) + w.ky[i] * x(1, i) + w.kz[i] * x(2, i));
  return out;
}

/// max_x |div X(x)| evaluated on the grid.
inline double max_divergence(const SpectralVectorField& x) {
  const auto samples = transform_inverse(x.grid(), divergence(x));
  double m = 0.0;
  for (double v : samples) m = std::max(m, std::abs(v));
  return m;
}

/// Pointwise g(X, Y) as a dealiased scalar.
inline SpectralScalar dot(const SpectralVectorField& x, const SpectralVectorField& y) {
  x.check_same_grid(y);
  const GridSpec& g = x.grid();
  const auto px = to_physical(x);
  const auto py = to_physical(y);
  std::vector<double> prod(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    prod[i] = px.samples[0][i] * py.samples[0][i] + px.samples[1][i] * py.samples[1][i] +
              px.samples[2][i] * py.samples[2][i];
  return dealias(transform_forward(g, prod), g);
}

/// Pointwise X x Y computed on the grid, transformed back and dealiased.
/// Alias-free when both inputs are band-limited to the dealias cutoff.
inline SpectralVectorField cross(const SpectralVectorField& x, const SpectralVectorField& y) {
  x.check_same_grid(y);
  const GridSpec& g = x.grid();
  const auto px = to_physical(x);
  const auto py = to_physical(y);
  PhysicalVectorField out(g);
  const auto& a = px.samples;
  const auto& b = py.samples;
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.samples[0][i] = a[1][i] * b[2][i] - a[2][i] * b[1][i];
    out.samples[1][i] = a[2][i] * b[0][i] - a[0][i] * b[2][i];
    out.samples[2][i] = a[0][i] * b[1][i] - a[1][i] * b[0][i];
  }
  return dealias(to_spectral(out));
}

/// (X . grad) Y on the flat torus, pseudo-spectral with dealiasing.
inline SpectralVectorField advective_derivative(const SpectralVectorField& x,
                                                const SpectralVectorField& y) {
  x.check_same_grid(y);
  const GridSpec& g = x.grid();
  const auto& w = wave_table(g);
  const Complex I(0.0, 1.0);
  const auto px = to_physical(x);
  PhysicalVectorField out(g);
  SpectralScalar dy(g.size());
  const std::vector<double>* kdir[3] = {&w.kx, &w.ky, &w.kz};
  for (int j = 0; j < 3; ++j) {
    auto yj = y.component(j);
    for (int d = 0; d < 3; ++d) {
      const auto& kd = *kdir[d];
      for (std::size_t i = 0; i < g.size(); ++i) dy[i] = I * kd[i] * yj[i];
      const auto grad = transform_inverse(g, dy);
      auto& acc = out.samples[j];
      const auto& xd = px.samples[d];
      for (std::size_t i = 0; i < g.size(); ++i) acc[i] += xd[i] * grad[i];
    }
  }
  return dealias(to_spectral(out));
}

/// Commutator [X, Y] = (X.grad)Y - (Y.grad)X computed directly.
inline SpectralVectorField lie_bracket_advective(const SpectralVectorField& x,
                                                 const SpectralVectorField& y) {
  return advective_derivative(x, y) - advective_derivative(y, x);
}

/// Lie bracket of divergence-free fields via [X, Y] = curl(Y x X).
///
/// The result is divergence-free and mean-free exactly, which keeps the
/// exact subalgebra closed under time stepping.
inline SpectralVectorField lie_bracket(const SpectralVectorField& x, const SpectralVectorField& y) {
  require_divergence_free(x, "lie_bracket");
  require_divergence_free(y, "lie_bracket");
  return curl(cross(y, x));
}

namespace detail {

inline SpectralVectorField lie_bracket_unchecked(const SpectralVectorField& x,
                                                 const SpectralVectorField& y) {
  return curl(cross(y, x));
}

}  // namespace detail

}  // namespace helicore
