#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "helicore/field.hpp"
#include "helicore/helical.hpp"

namespace helicore {

/// Orthogonal projection onto exact divergence-free fields:
/// X^(k) -> X^(k) - k (k.X^(k)) / |k|^2 for k != 0, mean removed.
inline SpectralVectorField leray_project(const SpectralVectorField& field) {
  const GridSpec& g = field.grid();
  const auto& w = wave_table(g);
  SpectralVectorField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (w.k2[i] == 0.0) continue;
    const Complex d = (w.kx[i] * field(0, i) + w.ky[i] * field(1, i) + w.kz[i] * field(2, i)) / w.k2[i];
    out(0, i) = field(0, i) - w.kx[i] * d;
    out(1, i) = field(1, i) - w.ky[i] * d;
    out(2, i) = field(2, i) - w.kz[i] * d;
  }
  return out;
}

struct HodgeParts {
  SpectralVectorField gradient;
  SpectralVectorField exact;
  SpectralVectorField harmonic;
};

/// X = gradient + exact + harmonic. The harmonic part is the constant mode;
/// content on pure-Nyquist slots (which no grid derivative resolves) is
/// assigned to the gradient part.
inline HodgeParts hodge_decompose(const SpectralVectorField& field) {
  const GridSpec& g = field.grid();
  SpectralVectorField exact = leray_project(field);
  SpectralVectorField harmonic(g);
  for (int j = 0; j < 3; ++j) harmonic(j, 0) = field(j, 0);
  SpectralVectorField gradient = field - exact - harmonic;
  return {std::move(gradient), std::move(exact), std::move(harmonic)};
}

/// Arnold-Beltrami-Childress field, curl V = V:
/// V = (A sin x3 + C cos x2, B sin x1 + A cos x3, C sin x2 + B cos x1).
inline SpectralVectorField abc_field(const GridSpec& grid, double a, double b, double c) {
  SpectralVectorField v(grid);
  const Complex half_i(0.0, 0.5);
  // sin t = (e^{it} - e^{-it}) / 2i, cos t = (e^{it} + e^{-it}) / 2
  const WaveVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  auto add_sin = [&](int comp, const WaveVector& k, double amp) {
    v.at(comp, k) += -half_i * amp;
    v.at(comp, -k) += half_i * amp;
  };
  auto add_cos = [&](int comp, const WaveVector& k, double amp) {
    v.at(comp, k) += 0.5 * amp;
    v.at(comp, -k) += 0.5 * amp;
  };
  add_sin(0, e3, a);
  add_cos(0, e2, c);
  add_sin(1, e1, b);
  add_cos(1, e3, a);
  add_sin(2, e2, c);
  add_cos(2, e1, b);
  return v;
}

/// Deterministic random exact field supported on 0 < max_j |k_j| <= kband.
///
/// Each helical amplitude on the half-lattice (first nonzero component of k
/// positive) is a unit-variance complex Gaussian; partners at -k follow the
/// reality rule a_s(-k) = -conj(a_s(k)). The field is projected, then scaled.
inline SpectralVectorField random_exact_field(const GridSpec& grid, std::uint64_t seed, int kband,
                                              double amplitude = 1.0) {
  if (kband < 1 || kband > grid.dealias_cutoff()) {
    throw InvalidArgument("random_exact_field: kband must lie in [1, dealias cutoff]");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  HelicalCoefficients coeffs(grid);
  for (const WaveVector& k : enumerate_wavevectors(grid, kband)) {
    const bool upper = k.k1 > 0 || (k.k1 == 0 && (k.k2 > 0 || (k.k2 == 0 && k.k3 > 0)));
    if (!upper) continue;
    for (Helicity s : {Helicity::plus, Helicity::minus}) {
      const double re = normal(rng);
      const double im = normal(rng);
      const Complex a(re, im);
      coeffs.amplitudes(s)[grid.index_of(k)] = a;
      coeffs.amplitudes(s)[grid.index_of(-k)] = -std::conj(a);
    }
  }
  SpectralVectorField out = leray_project(helical_compose(coeffs));
  out *= amplitude;
  return out;
}

/// Random curl eigenfield: a Hermitian superposition of helicity-s modes on
/// the lattice shell |k|^2 = norm2, so curl X = s sqrt(norm2) X.
inline SpectralVectorField random_beltrami_field(const GridSpec& grid, std::uint64_t seed,
                                                 int norm2, Helicity s) {
  const int reach = static_cast<int>(std::sqrt(static_cast<double>(norm2)));
  if (norm2 < 1 || reach > grid.dealias_cutoff()) {
    throw InvalidArgument("random_beltrami_field: shell outside the dealiased band");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  HelicalCoefficients coeffs(grid);
  bool any = false;
  for (const WaveVector& k : enumerate_wavevectors(grid, reach)) {
    if (k.norm2() != norm2) continue;
    const bool upper = k.k1 > 0 || (k.k1 == 0 && (k.k2 > 0 || (k.k2 == 0 && k.k3 > 0)));
    if (!upper) continue;
    const double re = normal(rng);
    const double im = normal(rng);
    coeffs.amplitudes(s)[grid.index_of(k)] = Complex(re, im);
    coeffs.amplitudes(s)[grid.index_of(-k)] = -Complex(re, -im);
    any = true;
  }
  if (!any) throw InvalidArgument("random_beltrami_field: no lattice vectors with |k|^2 = " +
                                  std::to_string(norm2));
  return helical_compose(coeffs);
}

}  // namespace helicore
