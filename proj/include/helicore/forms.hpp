#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "helicore/helical.hpp"
#include "helicore/operators.hpp"

namespace helicore {

// Floor for residual normalizers so degenerate inputs report 0 instead of 0/0.
inline constexpr double kResidualFloor = 1e-30;

/// (X, Y) = int_M g(X, Y) dmu, evaluated exactly by Parseval:
/// (2 pi)^3 Re sum_k X^(k) . conj(Y^(k)).
inline double l2_inner(const SpectralVectorField& x, const SpectralVectorField& y) {
  x.check_same_grid(y);
  double s = 0.0;
  for (int j = 0; j < 3; ++j) {
    auto a = x.component(j);
    auto b = y.component(j);
    for (std::size_t i = 0; i < a.size(); ++i)
      s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  }
  return kTorusVolume * s;
}

inline double l2_norm(const SpectralVectorField& x) { return std::sqrt(l2_inner(x, x)); }

/// <X, Y>_e = (X, curl^-1 Y), the bi-invariant form on exact fields.
inline double biinvariant_form(const SpectralVectorField& x, const SpectralVectorField& y) {
  require_exact(x, "biinvariant_form");
  return l2_inner(x, curl_inv(y));
}

/// Q(i_X mu, i_Y mu) = (i_X mu, A^-1 i_Y mu) evaluated in the curl eigenbasis,
/// where A^-1 is diagonal: (2 pi)^3 Re sum_{k,s} a_s^X(k) conj(a_s^Y(k)) / (s|k|).
/// Agrees with biinvariant_form, which goes through curl_inv instead.
inline double q_form(const SpectralVectorField& x, const SpectralVectorField& y) {
  x.check_same_grid(y);
  require_exact(x, "q_form");
  require_exact(y, "q_form");
  const auto& w = wave_table(x.grid());
  const HelicalCoefficients ax = helical_decompose(x);
  const HelicalCoefficients ay = helical_decompose(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.grid().size(); ++i) {
    if (w.k2[i] == 0.0) continue;
    const double kn = std::sqrt(w.k2[i]);
    const Complex p = ax.plus[i] * std::conj(ay.plus[i]);
    const Complex m = ax.minus[i] * std::conj(ay.minus[i]);
    s += p.real() / kn - m.real() / kn;
  }
  return kTorusVolume * s;
}

/// Kinetic energy T(V) = (V, V) / 2.
inline double energy(const SpectralVectorField& v) { return 0.5 * l2_inner(v, v); }

/// Kinetic moment m = (curl V, V) = <X, X>_e with X = curl V.
inline double helicity(const SpectralVectorField& v) {
  require_exact(v, "helicity");
  return l2_inner(curl(v), v);
}

/// Invariance of Q under the full diffeomorphism group, on proxies:
/// |<curl(Y x X), Z> + <Y, curl(Z x X)>| / normalizer. X need not be
/// divergence-free; L_X(i_Y mu) = i_{curl(Y x X)} mu holds regardless.
///
/// Each summand <A, B> is normalized by its Cauchy-Schwarz bound
/// |A| |curl^-1 B|, so analytically vanishing summands do not inflate the result.
inline double d0_invariance_residual(const SpectralVectorField& x, const SpectralVectorField& y,
                                     const SpectralVectorField& z) {
  require_exact(y, "d0_invariance_residual");
  require_exact(z, "d0_invariance_residual");
  const SpectralVectorField ly = curl(cross(y, x));
  const SpectralVectorField lz = curl(cross(z, x));
  const SpectralVectorField zi = curl_inv(z);
  const SpectralVectorField lzi = curl_inv(lz);
  const double t1 = l2_inner(ly, zi);
  const double t2 = l2_inner(y, lzi);
  const double scale = std::max({l2_norm(ly) * l2_norm(zi), l2_norm(y) * l2_norm(lzi), kResidualFloor});
  return std::abs(t1 + t2) / scale;
}

/// ad-invariance of the bi-invariant form: |<[X,Y],Z> + <Y,[X,Z]>| / normalizer.
inline double adjoint_invariance_residual(const SpectralVectorField& x, const SpectralVectorField& y,
                                          const SpectralVectorField& z) {
  require_exact(x, "adjoint_invariance_residual");
  require_exact(y, "adjoint_invariance_residual");
  require_exact(z, "adjoint_invariance_residual");
  const SpectralVectorField xy = lie_bracket(x, y);
  const SpectralVectorField xz = lie_bracket(x, z);
  const SpectralVectorField zi = curl_inv(z);
  const SpectralVectorField xzi = curl_inv(xz);
  const double t1 = l2_inner(xy, zi);
  const double t2 = l2_inner(y, xzi);
  const double scale = std::max({l2_norm(xy) * l2_norm(zi), l2_norm(y) * l2_norm(xzi), kResidualFloor});
  return std::abs(t1 + t2) / scale;
}

/// Symmetry defect |<X,Y> - <Y,X>| relative to the Cauchy-Schwarz scale.
inline double biinvariant_symmetry_residual(const SpectralVectorField& x,
                                            const SpectralVectorField& y) {
  const SpectralVectorField xi = curl_inv(x);
  const SpectralVectorField yi = curl_inv(y);
  const double a = l2_inner(x, yi);
  const double b = l2_inner(y, xi);
  const double scale = std::max({l2_norm(x) * l2_norm(yi), l2_norm(y) * l2_norm(xi), kResidualFloor});
  return std::abs(a - b) / scale;
}

struct ShellMultiplicity {
  int norm2 = 0;          // |k|^2
  int lattice_count = 0;  // lattice vectors on the shell
  int plus = 0;           // eigenvalues +|k|
  int minus = 0;          // eigenvalues -|k|
};

struct EtaReport {
  int kmax = 0;
  double s = 0.0;
  double eta_partial = 0.0;
  int positive_count = 0;
  int negative_count = 0;
  std::vector<ShellMultiplicity> multiplicity_table;
};

/// Partial sum eta(s) = sum_i sign(lambda_i) |lambda_i|^-s over the curl
/// spectrum on lattice vectors 0 < max_j |k_j| <= kmax.
///
/// On each k the curl symbol i k x (.) is applied to the frame (h_+, h_-, k^);
/// its Rayleigh quotients give the eigenvalue signs, the gradient direction
/// (eigenvalue 0) is dropped. Signs are tallied per |k|^2 shell and the sum is
/// accumulated shell by shell as (plus - minus) |k|^-s.
inline EtaReport eta_partial(double s, int kmax, const GridSpec& grid) {
  if (kmax < 1 || kmax > grid.n() / 2) {
    throw InvalidArgument("eta_partial: kmax must lie in [1, n/2]");
  }
  if (!std::isfinite(s)) throw InvalidArgument("eta_partial: s must be finite");
  std::map<int, ShellMultiplicity> shells;
  const Complex I(0.0, 1.0);
  for (const WaveVector& k : enumerate_wavevectors(grid, kmax)) {
    if (k.is_zero()) continue;
    const HelicalFrame f = helical_frame(k);
    const double kv[3] = {static_cast<double>(k.k1), static_cast<double>(k.k2),
                          static_cast<double>(k.k3)};
    auto rayleigh = [&](const CVec3& h) {
      const CVec3 mh = {I * (kv[1] * h[2] - kv[2] * h[1]), I * (kv[2] * h[0] - kv[0] * h[2]),
                        I * (kv[0] * h[1] - kv[1] * h[0])};
      Complex q = 0.0;
      for (int j = 0; j < 3; ++j) q += std::conj(h[j]) * mh[j];
      return q.real();
    };
    auto& shell = shells[k.norm2()];
    shell.norm2 = k.norm2();
    ++shell.lattice_count;
    const CVec3 longitudinal = {f.khat[0], f.khat[1], f.khat[2]};
    const double tol = 1e-12 * k.norm();
    for (const CVec3* h : {&f.plus, &f.minus, &longitudinal}) {
      const double lambda = rayleigh(*h);
      if (lambda > tol) {
        ++shell.plus;
      } else if (lambda < -tol) {
        ++shell.minus;
      }
    }
  }
  EtaReport report;
  report.kmax = kmax;
  report.s = s;
  for (const auto& [norm2, shell] : shells) {
    report.multiplicity_table.push_back(shell);
    report.positive_count += shell.plus;
    report.negative_count += shell.minus;
    const double magnitude = std::pow(static_cast<double>(norm2), -0.5 * s);
    report.eta_partial += static_cast<double>(shell.plus - shell.minus) * magnitude;
  }
  return report;
}

}  // namespace helicore
