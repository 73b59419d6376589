#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "helicore/field.hpp"

namespace helicore {

enum class Helicity : int { plus = 1, minus = -1 };

inline int sign_of(Helicity s) { return static_cast<int>(s); }

using CVec3 = std::array<Complex, 3>;

/// Orthonormal frame (e1, e2, k^) and curl eigenvectors h_+/h_- for k != 0.
///
/// e1 = k x a / |k x a| with a = z^, or a = x^ when k is parallel to z^;
/// e2 = k^ x e1; h_s = (e1 + i s e2) / sqrt(2). Then i k x h_s = s|k| h_s.
struct HelicalFrame {
  Vec3 e1{}, e2{}, khat{};
  CVec3 plus{}, minus{};

  const CVec3& basis(Helicity s) const { return s == Helicity::plus ? plus : minus; }
};

inline HelicalFrame helical_frame(double k1, double k2, double k3) {
  const double kn = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
  HelicalFrame f;
  f.khat = {k1 / kn, k2 / kn, k3 / kn};
  Vec3 c;
  if (k1 == 0.0 && k2 == 0.0) {
    c = {0.0, k3, -k2};  // k x x^
  } else {
    c = {k2, -k1, 0.0};  // k x z^
  }
  const double cn = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  f.e1 = {c[0] / cn, c[1] / cn, c[2] / cn};
  const Vec3& h = f.khat;
  f.e2 = {h[1] * f.e1[2] - h[2] * f.e1[1], h[2] * f.e1[0] - h[0] * f.e1[2],
          h[0] * f.e1[1] - h[1] * f.e1[0]};
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < 3; ++j) {
    f.plus[j] = Complex(f.e1[j] * r, f.e2[j] * r);
    f.minus[j] = Complex(f.e1[j] * r, -f.e2[j] * r);
  }
  return f;
}

inline HelicalFrame helical_frame(const WaveVector& k) {
  return helical_frame(k.k1, k.k2, k.k3);
}

/// Helical amplitudes a_+(k), a_-(k) per storage index; zero on the mean and
/// on derivative-null (Nyquist) slots.
struct HelicalCoefficients {
  GridSpec grid;
  std::vector<Complex> plus;
  std::vector<Complex> minus;

  explicit HelicalCoefficients(const GridSpec& g)
      : grid(g), plus(g.size()), minus(g.size()) {}

  std::vector<Complex>& amplitudes(Helicity s) { return s == Helicity::plus ? plus : minus; }
  const std::vector<Complex>& amplitudes(Helicity s) const {
    return s == Helicity::plus ? plus : minus;
  }
  Complex at(Helicity s, const WaveVector& k) const {
    return amplitudes(s).at(grid.index_of(k));
  }
};

/// a_s(k) = conj(h_s(k)) . X^(k). Longitudinal and mean content are dropped,
/// so this decomposes the exact divergence-free part of any input.
inline HelicalCoefficients helical_decompose(const SpectralVectorField& field) {
  const GridSpec& g = field.grid();
  const auto& w = wave_table(g);
  HelicalCoefficients out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (w.k2[i] == 0.0) continue;
    const HelicalFrame f = helical_frame(w.kx[i], w.ky[i], w.kz[i]);
    Complex ap = 0.0, am = 0.0;
    for (int j = 0; j < 3; ++j) {
      ap += std::conj(f.plus[j]) * field(j, i);
      am += std::conj(f.minus[j]) * field(j, i);
    }
    out.plus[i] = ap;
    out.minus[i] = am;
  }
  return out;
}

/// X^(k) = a_+(k) h_+(k) + a_-(k) h_-(k).
inline SpectralVectorField helical_compose(const HelicalCoefficients& coeffs) {
  const GridSpec& g = coeffs.grid;
  const auto& w = wave_table(g);
  SpectralVectorField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (w.k2[i] == 0.0) continue;
    if (coeffs.plus[i] == 0.0 && coeffs.minus[i] == 0.0) continue;
    const HelicalFrame f = helical_frame(w.kx[i], w.ky[i], w.kz[i]);
    for (int j = 0; j < 3; ++j) out(j, i) = coeffs.plus[i] * f.plus[j] + coeffs.minus[i] * f.minus[j];
  }
  return out;
}

/// Real eigenfield of curl with eigenvalue s|k|:
/// X = amplitude * (h_s(k) e^{ik.x} + c.c.), i.e. a_s(k) = amplitude,
/// a_s(-k) = -amplitude.
inline SpectralVectorField helical_mode(const GridSpec& grid, const WaveVector& k, Helicity s,
                                        double amplitude = 1.0) {
  if (k.is_zero()) throw InvalidArgument("helical_mode: k must be nonzero");
  if (k.max_abs() >= grid.n() / 2) {
    throw InvalidArgument("helical_mode: k must lie strictly below the Nyquist wavenumber");
  }
  HelicalCoefficients c(grid);
  c.amplitudes(s)[grid.index_of(k)] = amplitude;
  c.amplitudes(s)[grid.index_of(-k)] = -amplitude;
  return helical_compose(c);
}

}  // namespace helicore
