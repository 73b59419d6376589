#pragma once

#include <algorithm>
#include <utility>

#include "helicore/forms.hpp"
#include "helicore/operators.hpp"

namespace helicore {

/// |a - b| / max(|a|, |b|) in L^2, floored at kResidualFloor.
inline double relative_difference(const SpectralVectorField& a, const SpectralVectorField& b) {
  const double scale = std::max({l2_norm(a), l2_norm(b), kResidualFloor});
  return l2_norm(a - b) / scale;
}

/// curl(Y x X) against the advective commutator (X.grad)Y - (Y.grad)X.
inline double bracket_route_residual(const SpectralVectorField& x, const SpectralVectorField& y) {
  return relative_difference(lie_bracket(x, y), lie_bracket_advective(x, y));
}

/// A^-1 L_X = p * i_X on exact 2-forms, on vector proxies:
/// curl^-1 [X, Y] = P(Y x X).
inline double lemma1_residual(const SpectralVectorField& x, const SpectralVectorField& y) {
  require_exact(y, "lemma1_residual");
  const SpectralVectorField lhs = curl_inv(lie_bracket(x, y));
  const SpectralVectorField rhs = leray_project(cross(y, x));
  return relative_difference(lhs, rhs);
}

/// Skew-symmetry of p * i_X: (P(Y x X), Z) + (Y, P(Z x X)) = 0.
inline double lemma2_residual(const SpectralVectorField& x, const SpectralVectorField& y,
                              const SpectralVectorField& z) {
  require_exact(y, "lemma2_residual");
  require_exact(z, "lemma2_residual");
  const SpectralVectorField py = leray_project(cross(y, x));
  const SpectralVectorField pz = leray_project(cross(z, x));
  const double t1 = l2_inner(py, z);
  const double t2 = l2_inner(y, pz);
  const double scale = std::max({l2_norm(py) * l2_norm(z), l2_norm(y) * l2_norm(pz), kResidualFloor});
  return std::abs(t1 + t2) / scale;
}

/// Residuals of
///   P(grad_X Y + grad_Y X) = curl^-1([X, curl Y] + [Y, curl X])
///   P(grad_X X)            = curl^-1 [X, curl X]
inline std::pair<double, double> projector_identity_residuals(const SpectralVectorField& x,
                                                              const SpectralVectorField& y) {
  require_exact(x, "projector_identity_residuals");
  require_exact(y, "projector_identity_residuals");
  const SpectralVectorField cx = curl(x);
  const SpectralVectorField cy = curl(y);
  const SpectralVectorField sym_lhs =
      leray_project(advective_derivative(x, y) + advective_derivative(y, x));
  const SpectralVectorField sym_rhs = curl_inv(lie_bracket(x, cy) + lie_bracket(y, cx));
  const SpectralVectorField self_lhs = leray_project(advective_derivative(x, x));
  const SpectralVectorField self_rhs = curl_inv(lie_bracket(x, cx));
  return {relative_difference(sym_lhs, sym_rhs), relative_difference(self_lhs, self_rhs)};
}

/// Residuals of the pointwise identities
///   X x curl Y + Y x curl X = -(grad_X Y + grad_Y X) + grad g(X, Y)
///   grad_X X = curl X x X + grad g(X, X) / 2
inline std::pair<double, double> vector_identity_residuals(const SpectralVectorField& x,
                                                           const SpectralVectorField& y) {
  x.check_same_grid(y);
  const GridSpec& g = x.grid();
  const SpectralVectorField cx = curl(x);
  const SpectralVectorField cy = curl(y);
  const SpectralVectorField lhs1 = cross(x, cy) + cross(y, cx);
  const SpectralVectorField rhs1 =
      gradient(g, dot(x, y)) - advective_derivative(x, y) - advective_derivative(y, x);
  const SpectralVectorField lhs2 = advective_derivative(x, x);
  const SpectralVectorField rhs2 = cross(cx, x) + 0.5 * gradient(g, dot(x, x));
  return {relative_difference(lhs1, rhs1), relative_difference(lhs2, rhs2)};
}

/// |[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]| relative to the largest term.
inline double jacobi_residual(const SpectralVectorField& x, const SpectralVectorField& y,
                              const SpectralVectorField& z) {
  const SpectralVectorField a = lie_bracket(x, lie_bracket(y, z));
  const SpectralVectorField b = lie_bracket(y, lie_bracket(z, x));
  const SpectralVectorField c = lie_bracket(z, lie_bracket(x, y));
  const double scale = std::max({l2_norm(a), l2_norm(b), l2_norm(c), kResidualFloor});
  return l2_norm(a + b + c) / scale;
}

}  // namespace helicore
