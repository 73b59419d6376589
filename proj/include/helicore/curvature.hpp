#pragma once

#include <array>
#include <cmath>
#include <string>

#include "helicore/forms.hpp"
#include "helicore/operators.hpp"

namespace helicore {

/// Levi-Civita connection of the bi-invariant form: grad0_X Y = [X, Y] / 2.
inline SpectralVectorField biinv_connection(const SpectralVectorField& x,
                                            const SpectralVectorField& y) {
  require_exact(x, "biinv_connection");
  require_exact(y, "biinv_connection");
  return 0.5 * lie_bracket(x, y);
}

/// R0(X, Y) Z = -[[X, Y], Z] / 4.
inline SpectralVectorField biinv_curvature_tensor(const SpectralVectorField& x,
                                                  const SpectralVectorField& y,
                                                  const SpectralVectorField& z) {
  require_exact(x, "biinv_curvature_tensor");
  require_exact(y, "biinv_curvature_tensor");
  require_exact(z, "biinv_curvature_tensor");
  return -0.25 * lie_bracket(lie_bracket(x, y), z);
}

enum class PairForm { l2, biinvariant };

struct OrthonormalPair {
  SpectralVectorField x;
  SpectralVectorField y;
  std::array<int, 2> signs{1, 1};  // signs of <x,x> and <y,y>
};

namespace detail {

inline double pair_form(PairForm form, const SpectralVectorField& a, const SpectralVectorField& b) {
  return form == PairForm::l2 ? l2_inner(a, b) : l2_inner(a, curl_inv(b));
}

// Cauchy-Schwarz scale of a vector under the chosen form.
inline double pair_scale(PairForm form, const SpectralVectorField& a) {
  return form == PairForm::l2 ? l2_inner(a, a) : l2_norm(a) * l2_norm(curl_inv(a));
}

}  // namespace detail

/// Gram-Schmidt for a possibly indefinite form: returns X', Y' spanning the
/// same plane with |<X',X'>| = |<Y',Y'>| = 1 and <X',Y'> = 0, plus the signs
/// of the diagonal. A null first vector is replaced by Y (or X + Y).
inline OrthonormalPair orthonormalize_pair(const SpectralVectorField& x,
                                           const SpectralVectorField& y, PairForm form) {
  x.check_same_grid(y);
  if (form == PairForm::biinvariant) {
    require_exact(x, "orthonormalize_pair");
    require_exact(y, "orthonormalize_pair");
  }
  constexpr double tol = 1e-12;
  const double sx = detail::pair_scale(form, x);
  const double sy = detail::pair_scale(form, y);
  const double g11 = detail::pair_form(form, x, x);
  const double g12 = detail::pair_form(form, x, y);
  const double g22 = detail::pair_form(form, y, y);
  if (!(sx > 0.0) || !(sy > 0.0) || std::abs(g11 * g22 - g12 * g12) <= tol * sx * sy) {
    throw DomainError("orthonormalize_pair: Gram matrix is singular (degenerate plane)");
  }
  SpectralVectorField a = x;
  SpectralVectorField b = y;
  if (std::abs(g11) <= tol * sx) {
    if (std::abs(g22) > tol * sy) {
      std::swap(a, b);
    } else {
      a += b;
    }
  }
  const double aa = detail::pair_form(form, a, a);
  OrthonormalPair out{a, b, {aa > 0.0 ? 1 : -1, 1}};
  out.x *= 1.0 / std::sqrt(std::abs(aa));
  const double proj = detail::pair_form(form, b, out.x);
  out.y.add_scaled(-out.signs[0] * proj, out.x);
  const double bb = detail::pair_form(form, out.y, out.y);
  if (std::abs(bb) <= tol * detail::pair_scale(form, out.y) || bb == 0.0) {
    throw DomainError("orthonormalize_pair: second vector is null after projection");
  }
  out.signs[1] = bb > 0.0 ? 1 : -1;
  out.y *= 1.0 / std::sqrt(std::abs(bb));
  return out;
}

struct BiinvariantSectional {
  double value = 0.0;        // <[X,Y],[X,Y]>_e / 4
  double cross_value = 0.0;  // int g([X,Y], Y x X) dmu / 4
  std::array<int, 2> signs{1, 1};
  bool normalized = false;
};

/// Sectional curvature of the bi-invariant form, K0 = <[X,Y],[X,Y]>_e / 4,
/// evaluated both through curl^-1 and through the pointwise Y x X integral.
/// With normalize the pair is first made orthonormal for the bi-invariant form.
inline BiinvariantSectional sectional_biinv(const SpectralVectorField& x,
                                            const SpectralVectorField& y, bool normalize = false) {
  require_exact(x, "sectional_biinv");
  require_exact(y, "sectional_biinv");
  BiinvariantSectional out;
  const SpectralVectorField* px = &x;
  const SpectralVectorField* py = &y;
  OrthonormalPair pair{x, y};
  if (normalize) {
    pair = orthonormalize_pair(x, y, PairForm::biinvariant);
    px = &pair.x;
    py = &pair.y;
    out.signs = pair.signs;
    out.normalized = true;
  }
  const SpectralVectorField b = lie_bracket(*px, *py);
  out.value = 0.25 * l2_inner(b, curl_inv(b));
  out.cross_value = 0.25 * l2_inner(b, cross(*py, *px));
  return out;
}

struct RightInvariantSectional {
  std::array<double, 5> terms{};
  double total = 0.0;
};

/// The five-term sectional curvature expression
///   -1/2 (X, [[X,Y],Y]) - 1/2 ([X,[X,Y]], Y) - 3/4 ([X,Y],[X,Y])
///   + (curl^-1 [X, curl X], Y x curl Y)
///   - 1/4 (curl^-1([X, curl Y] - [curl X, Y]), X x curl Y - curl X x Y),
/// evaluated on the pair as given; each term is reported separately.
inline RightInvariantSectional sectional_rightinv(const SpectralVectorField& x,
                                                  const SpectralVectorField& y) {
  require_exact(x, "sectional_rightinv");
  require_exact(y, "sectional_rightinv");
  const SpectralVectorField cx = curl(x);
  const SpectralVectorField cy = curl(y);
  const SpectralVectorField xy = lie_bracket(x, y);
  RightInvariantSectional out;
  out.terms[0] = -0.5 * l2_inner(x, lie_bracket(xy, y));
  out.terms[1] = -0.5 * l2_inner(lie_bracket(x, xy), y);
  out.terms[2] = -0.75 * l2_inner(xy, xy);
  out.terms[3] = l2_inner(curl_inv(lie_bracket(x, cx)), cross(y, cy));
  out.terms[4] = -0.25 * l2_inner(curl_inv(lie_bracket(x, cy) - lie_bracket(cx, y)),
                                  cross(x, cy) - cross(cx, y));
  for (double t : out.terms) out.total += t;
  return out;
}

struct EigenSectional {
  std::array<double, 4> terms{};
  double total = 0.0;
};

// Relative eigen-residual accepted by sectional_rightinv_eigen.
inline constexpr double kEigenTolerance = 1e-10;

/// Four-term form valid when curl X = lambda X and curl Y = mu Y:
///   -1/2 (X, [[X,Y],Y]) - 1/2 ([X,[X,Y]], Y) - 3/4 ([X,Y],[X,Y])
///   - (lambda - mu)^2 / 4 (curl^-1 [X,Y], X x Y).
inline EigenSectional sectional_rightinv_eigen(const SpectralVectorField& x,
                                               const SpectralVectorField& y, double lambda,
                                               double mu) {
  require_exact(x, "sectional_rightinv_eigen");
  require_exact(y, "sectional_rightinv_eigen");
  auto check = [](const SpectralVectorField& f, double ev, const char* name) {
    SpectralVectorField r = curl(f);
    const double scale = std::max({l2_norm(r), std::abs(ev) * l2_norm(f), kResidualFloor});
    r.add_scaled(-ev, f);
    const double rel = l2_norm(r) / scale;
    if (rel > kEigenTolerance) {
      throw DomainError(std::string("sectional_rightinv_eigen: ") + name +
                        " is not a curl eigenfield for the given eigenvalue (relative residual " +
                        std::to_string(rel) + ")");
    }
  };
  check(x, lambda, "X");
  check(y, mu, "Y");
  const SpectralVectorField xy = lie_bracket(x, y);
  EigenSectional out;
  out.terms[0] = -0.5 * l2_inner(x, lie_bracket(xy, y));
  out.terms[1] = -0.5 * l2_inner(lie_bracket(x, xy), y);
  out.terms[2] = -0.75 * l2_inner(xy, xy);
  const double d = lambda - mu;
  out.terms[3] = -0.25 * d * d * l2_inner(curl_inv(xy), cross(x, y));
  for (double t : out.terms) out.total += t;
  return out;
}

}  // namespace helicore
