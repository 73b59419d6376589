#include <catch_amalgamated.hpp>

#include <cmath>

#include "helicore/helicore.hpp"
#include "oracles.hpp"

using namespace helicore;

namespace {

double rel(const SpectralVectorField& a, const SpectralVectorField& b) { return relative_difference(a, b); }

SpectralVectorField sin_x1_y(const GridSpec& g) {
  return sample_field(g, [](double x, double, double) { return Vec3{0, std::sin(x), 0}; });
}

}  // namespace

TEST_CASE("curl", "[operators]") {
  const GridSpec g(16);
  SECTION("ABC is its own curl") {
    const auto v = abc_field(g, 1, 1, 1);
    CHECK(rel(curl(v), v) <= 1e-13);
  }
  SECTION("helical modes are eigenfields") {
    for (const WaveVector k : {WaveVector{1, 0, 0}, WaveVector{1, 2, -1}, WaveVector{0, 0, 3}}) {
      for (Helicity s : {Helicity::plus, Helicity::minus}) {
        const auto m = helical_mode(g, k, s);
        CHECK(rel(curl(m), sign_of(s) * k.norm() * m) <= 1e-14);
      }
    }
  }
  SECTION("gradients and constants are annihilated") {
    const auto grad = sample_field(g, [](double x, double, double) { return Vec3{std::cos(x), 0, 0}; });
    CHECK(coefficient_norm(curl(grad)) == 0.0);
    CHECK(coefficient_norm(curl(constant_field(g, {1, 2, 3}))) == 0.0);
  }
  SECTION("self-adjoint in L2") {
    const auto x = random_exact_field(g, 1, 3);
    const auto y = random_exact_field(g, 2, 3);
    const double a = l2_inner(curl(x), y);
    const double b = l2_inner(x, curl(y));
    CHECK(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)));
  }
}

TEST_CASE("curl_inv", "[operators]") {
  const GridSpec g(16);
  SECTION("ABC") {
    const auto v = abc_field(g, 1, 1, 1);
    CHECK(rel(curl_inv(v), v) <= 1e-13);
  }
  SECTION("minus mode scales by -1/|k|") {
    const WaveVector k{2, 1, 0};
    const auto m = helical_mode(g, k, Helicity::minus);
    CHECK(rel(curl_inv(m), (-1.0 / k.norm()) * m) <= 1e-14);
  }
  SECTION("inverse on both sides") {
    const auto x = random_exact_field(g, 3, 5);
    CHECK(rel(curl(curl_inv(x)), x) <= 1e-12);
    CHECK(rel(curl_inv(curl(x)), x) <= 1e-12);
    CHECK(is_exact(curl_inv(x), 1e-14));
  }
  SECTION("constant field is rejected") {
    CHECK_THROWS_AS(curl_inv(constant_field(g, {1, 0, 0})), DomainError);
  }
  SECTION("gradient content is rejected, or projected when not strict") {
    const auto x = random_exact_field(g, 3, 2);
    const auto w = x + sample_field(g, [](double a, double, double) { return Vec3{std::cos(a), 0, 0}; });
    CHECK_THROWS_AS(curl_inv(w), DomainError);
    CHECK(rel(curl_inv(w, false), curl_inv(x)) <= 1e-15);
  }
}

TEST_CASE("cross", "[operators]") {
  const GridSpec g(16);
  const auto x = random_exact_field(g, 4, 3);
  const auto y = random_exact_field(g, 5, 3);
  CHECK(coefficient_norm(cross(x, x)) <= 1e-15 * coefficient_norm(x) * coefficient_norm(x));
  const auto c = cross(constant_field(g, {1, 0, 0}), constant_field(g, {0, 1, 0}));
  CHECK(rel(c, constant_field(g, {0, 0, 1})) <= 1e-15);
  CHECK(cross(x, y) == -cross(y, x));
  CHECK_THROWS_AS(cross(x, SpectralVectorField(GridSpec(8))), InvalidArgument);
}

TEST_CASE("dealiased products equal the exact coefficient convolution", "[operators]") {
  // Inputs at band floor(n/3): products reach |k_j| <= 10, aliases land
  // outside the mask, so every retained coefficient is exact.
  const GridSpec g(16);
  const int band = g.dealias_cutoff();
  const auto x = random_exact_field(g, 21, band);
  const auto y = random_exact_field(g, 22, band);
  const auto conv = oracle::convolve_cross(x, y);
  const auto c = cross(x, y);
  double err = 0.0, scale = 0.0;
  for (const auto& [k, v] : conv) {
    if (k.max_abs() > band) continue;
    for (int j = 0; j < 3; ++j) {
      err = std::max(err, std::abs(c.at(j, k) - v[j]));
      scale = std::max(scale, std::abs(v[j]));
    }
  }
  CHECK(scale > 0.0);
  CHECK(err <= 1e-13 * scale);
  double outside = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.wavevector(i).max_abs() > band)
      for (int j = 0; j < 3; ++j) outside = std::max(outside, std::abs(c(j, i)));
  CHECK(outside == 0.0);
}

TEST_CASE("lie_bracket", "[operators]") {
  const GridSpec g(32);
  const auto x = random_exact_field(g, 7, 2);
  const auto y = random_exact_field(g, 8, 2);
  SECTION("[X,X] = 0 and antisymmetry") {
    CHECK(coefficient_norm(lie_bracket(x, x)) == 0.0);
    CHECK(lie_bracket(x, y) == -lie_bracket(y, x));
  }
  SECTION("agrees with the advective commutator") {
    CHECK(bracket_route_residual(x, y) <= 1e-12);
  }
  SECTION("exact divergence-free, mean zero") {
    const auto b = lie_bracket(x, y);
    CHECK(divergence_defect(b) <= 1e-14);
    for (int j = 0; j < 3; ++j) CHECK(b(j, 0) == Complex(0.0));
  }
  SECTION("two helical modes: support on k +- k' matching direct convolution") {
    const WaveVector k{1, 0, 0}, kp{0, 1, 1};
    const auto hx = helical_mode(g, k, Helicity::plus);
    const auto hy = helical_mode(g, kp, Helicity::minus);
    const auto b = lie_bracket(hx, hy);
    const auto ref = oracle::convolve_bracket(hx, hy);
    double err = 0.0, scale = 0.0;
    for (const auto& [kk, v] : ref)
      for (int j = 0; j < 3; ++j) {
        err = std::max(err, std::abs(b.at(j, kk) - v[j]));
        scale = std::max(scale, std::abs(v[j]));
      }
    CHECK(scale > 0.1);
    CHECK(err <= 1e-14 * scale);
    for (const auto& m : oracle::support(b, 1e-14 * scale)) {
      const WaveVector q = m.k;
      auto sum = [](const WaveVector& a, const WaveVector& b) {
        return WaveVector{a.k1 + b.k1, a.k2 + b.k2, a.k3 + b.k3};
      };
      const bool ok = q == sum(k, kp) || q == sum(k, -kp) || q == sum(-k, kp) || q == sum(-k, -kp);
      CHECK(ok);
    }
  }
  SECTION("rejects divergent inputs") {
    const auto w = x + sample_field(g, [](double a, double, double) { return Vec3{std::cos(a), 0, 0}; });
    CHECK_THROWS_AS(lie_bracket(w, y), DomainError);
  }
  SECTION("Jacobi") {
    const auto z = random_exact_field(g, 9, 2);
    CHECK(jacobi_residual(x, y, z) <= 1e-11);
  }
}

TEST_CASE("advective_derivative", "[operators]") {
  const GridSpec g(16);
  SECTION("constant direction differentiates") {
    const auto d = advective_derivative(constant_field(g, {1, 0, 0}), sin_x1_y(g));
    const auto ref = sample_field(g, [](double x, double, double) { return Vec3{0, std::cos(x), 0}; });
    CHECK(relative_difference(d, ref) <= 1e-14);
  }
  SECTION("grad_X X of ABC is half the gradient of |X|^2") {
    const auto v = abc_field(g, 1, 1, 1);
    const auto half_grad = 0.5 * gradient(g, dot(v, v));
    CHECK(relative_difference(advective_derivative(v, v), half_grad) <= 1e-13);
  }
}

TEST_CASE("gradient and divergence", "[operators]") {
  const GridSpec g(16);
  const auto x = random_exact_field(g, 1, 3);
  CHECK(max_divergence(x) <= 1e-12);
  const auto phi = transform_forward(g, to_physical(x).samples[0]);
  const auto gp = gradient(g, phi);
  CHECK(coefficient_norm(curl(gp)) <= 1e-14 * coefficient_norm(gp));
  CHECK_THROWS_AS(gradient(g, std::vector<Complex>(3)), InvalidArgument);
}

TEST_CASE("inverse curl of a bracket and interior product skewness", "[operators]") {
  const GridSpec g(32);
  SECTION("curl^-1 [X,Y] = P(Y x X)") {
    const auto x = random_exact_field(g, 3, 2);
    const auto y = random_exact_field(g, 5, 2);
    CHECK(lemma1_residual(x, y) <= 1e-12);
    CHECK(lemma1_residual(x, x) == 0.0);
    const auto hx = helical_mode(g, {1, 1, 0}, Helicity::plus);
    const auto hy = helical_mode(g, {0, 1, 2}, Helicity::minus);
    CHECK(lemma1_residual(hx, hy) <= 1e-12);
  }
  SECTION("p i_X is skew for non-solenoidal X") {
    const auto x = random_exact_field(g, 1, 2);
    const auto y = random_exact_field(g, 2, 2);
    const auto z = random_exact_field(g, 3, 2);
    CHECK(lemma2_residual(x, y, z) <= 1e-12);
    CHECK(lemma2_residual(SpectralVectorField(g), y, z) == 0.0);
    CHECK(lemma2_residual(x, y, y) <= 1e-12);
  }
}

TEST_CASE("projector and vector identities", "[operators]") {
  const GridSpec g(32);
  const auto x = random_exact_field(g, 11, 2);
  const auto y = random_exact_field(g, 12, 2);
  SECTION("random pair") {
    const auto [p1, p2] = projector_identity_residuals(x, y);
    CHECK(p1 <= 1e-11);
    CHECK(p2 <= 1e-11);
    const auto [v1, v2] = vector_identity_residuals(x, y);
    CHECK(v1 <= 1e-11);
    CHECK(v2 <= 1e-11);
  }
  SECTION("X = Y reduces the symmetric identity to twice the self one") {
    const auto cx = curl(x);
    const auto lhs = leray_project(advective_derivative(x, x) + advective_derivative(x, x));
    const auto rhs = 2.0 * curl_inv(lie_bracket(x, cx));
    CHECK(relative_difference(lhs, rhs) <= 1e-11);
    const auto [p1, p2] = projector_identity_residuals(x, x);
    CHECK(p1 <= 1e-11);
    CHECK(p2 <= 1e-11);
  }
  SECTION("helical eigenpair") {
    const auto a = helical_mode(g, {1, 0, 1}, Helicity::plus);
    const auto b = helical_mode(g, {0, 2, 1}, Helicity::minus);
    const auto [p1, p2] = projector_identity_residuals(a, b);
    CHECK(p1 <= 1e-11);
    // Both sides of the self identity vanish for an eigenfield, so the
    // relative residual is roundoff over roundoff; check the sides directly.
    (void)p2;
    const double scale = l2_inner(a, a);
    CHECK(l2_norm(leray_project(advective_derivative(a, a))) <= 1e-14 * scale);
    CHECK(l2_norm(curl_inv(lie_bracket(a, curl(a)))) <= 1e-14 * scale);
  }
  SECTION("constant X") {
    const auto c = constant_field(g, {0.3, -0.2, 0.5});
    const auto [v1, v2] = vector_identity_residuals(c, y);
    CHECK(v1 <= 1e-11);
    CHECK(v2 <= 1e-11);
    CHECK(coefficient_norm(advective_derivative(y, c)) == 0.0);
  }
  SECTION("Beltrami X") {
    const auto v = abc_field(g, 1, 1, 1);
    const auto [v1, v2] = vector_identity_residuals(v, y);
    CHECK(v1 <= 1e-11);
    CHECK(v2 <= 1e-11);
  }
}
