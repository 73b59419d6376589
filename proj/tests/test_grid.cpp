#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helicore/helicore.hpp"

using namespace helicore;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("grid rejects odd or small n", "[grid]") {
  CHECK_THROWS_AS(GridSpec(6), InvalidArgument);
  CHECK_THROWS_AS(GridSpec(9), InvalidArgument);
  CHECK_THROWS_AS(GridSpec(0), InvalidArgument);
  CHECK_NOTHROW(GridSpec(8));
}

TEST_CASE("dealias cutoff follows the two-thirds rule", "[grid]") {
  CHECK(GridSpec(8).dealias_cutoff() == 2);
  CHECK(GridSpec(16).dealias_cutoff() == 5);
  CHECK(GridSpec(32).dealias_cutoff() == 10);
}

TEST_CASE("wavenumber layout and Hermitian partner", "[grid]") {
  const GridSpec g(8);
  CHECK(g.wavenumber(3) == 3);
  CHECK(g.wavenumber(4) == -4);
  CHECK(g.wavenumber(7) == -1);
  CHECK(g.derivative_wavenumber(4) == 0);
  const WaveVector k{1, -2, 3};
  const auto idx = g.index_of(k);
  CHECK(g.wavevector(idx) == k);
  CHECK(g.wavevector(g.conjugate_index(idx)) == -k);
  CHECK(g.conjugate_index(0) == 0);
}

TEST_CASE("enumerate_wavevectors", "[grid]") {
  const GridSpec g8(8);
  const auto k0 = enumerate_wavevectors(g8, 0);
  REQUIRE(k0.size() == 1);
  CHECK(k0[0].is_zero());
  CHECK(enumerate_wavevectors(g8, 1).size() == 27);
  CHECK(enumerate_wavevectors(GridSpec(16), 2).size() == 125);

  const auto ks = enumerate_wavevectors(g8, 2);
  CHECK(std::is_sorted(ks.begin(), ks.end()));
  CHECK(ks.front() == WaveVector{-2, -2, -2});

  CHECK_THROWS_AS(enumerate_wavevectors(g8, 5), InvalidArgument);
  CHECK_THROWS_AS(enumerate_wavevectors(g8, -1), InvalidArgument);
}

TEST_CASE("wavevector norm is zero only at the origin", "[grid]") {
  CHECK(WaveVector{0, 0, 0}.norm() == 0.0);
  CHECK(WaveVector{0, 0, 1}.norm() == 1.0);
  CHECK(WaveVector{2, -3, 6}.norm() == 7.0);
}

namespace {

std::vector<double> sample_scalar(const GridSpec& g, auto&& f) {
  std::vector<double> out(g.size());
  const double h = g.spacing();
  for (int a = 0; a < g.n(); ++a)
    for (int b = 0; b < g.n(); ++b)
      for (int c = 0; c < g.n(); ++c) out[g.index(a, b, c)] = f(a * h, b * h, c * h);
  return out;
}

}  // namespace

TEST_CASE("forward transform of single modes", "[grid]") {
  const GridSpec g(8);
  SECTION("constant") {
    const auto c = transform_forward(g, sample_scalar(g, [](double, double, double) { return 1.0; }));
    CHECK_THAT(c[0].real(), WithinAbs(1.0, 1e-15));
    double rest = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) rest += std::abs(c[i]);
    CHECK(rest < 1e-14);
  }
  SECTION("cos x1") {
    const auto c =
        transform_forward(g, sample_scalar(g, [](double x, double, double) { return std::cos(x); }));
    CHECK_THAT(std::abs(c[g.index_of({1, 0, 0})] - Complex(0.5, 0)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(c[g.index_of({-1, 0, 0})] - Complex(0.5, 0)), WithinAbs(0.0, 1e-15));
    double rest = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) rest += std::abs(c[i]);
    CHECK_THAT(rest, WithinAbs(1.0, 1e-14));
  }
  SECTION("size mismatch") {
    std::vector<double> bad(10);
    CHECK_THROWS_AS(transform_forward(g, bad), InvalidArgument);
    std::vector<Complex> badc(10);
    CHECK_THROWS_AS(transform_inverse(g, badc), InvalidArgument);
    CHECK_THROWS_AS(dealias(badc, g), InvalidArgument);
  }
}

TEST_CASE("random samples round-trip and are Hermitian", "[grid]") {
  for (int n : {8, 12, 32}) {
    const GridSpec g(n);
    std::mt19937_64 rng(42 + n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> s(g.size());
    for (auto& v : s) v = u(rng);
    const auto c = transform_forward(g, s);
    double herm = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      herm = std::max(herm, std::abs(c[g.conjugate_index(i)] - std::conj(c[i])));
      scale = std::max(scale, std::abs(c[i]));
    }
    CHECK(herm <= 1e-15 * scale);
    const auto back = transform_inverse(g, c);
    double err = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      err += (back[i] - s[i]) * (back[i] - s[i]);
      norm += s[i] * s[i];
    }
    CHECK(std::sqrt(err / norm) <= 1e-13);
  }
}

TEST_CASE("dealias mask", "[grid]") {
  const GridSpec g(8);
  SECTION("band 1 survives") {
    std::vector<Complex> c(g.size());
    for (const auto& k : enumerate_wavevectors(g, 1))
      c[g.index_of(k)] = Complex(k.k1 + 0.5 * k.k2, k.k3 - 0.25 * k.k1);
    CHECK(dealias(c, g) == c);
  }
  SECTION("k = (4,0,0) is removed") {
    std::vector<Complex> c(g.size());
    c[g.index_of({-4, 0, 0})] = 1.0;
    for (const auto& v : dealias(c, g)) CHECK(v == Complex(0.0));
  }
  SECTION("k = (3,0,0) is removed, (2,2,2) kept") {
    std::vector<Complex> c(g.size());
    c[g.index_of({3, 0, 0})] = 1.0;
    c[g.index_of({2, 2, 2})] = 1.0;
    const auto d = dealias(c, g);
    CHECK(d[g.index_of({3, 0, 0})] == Complex(0.0));
    CHECK(d[g.index_of({2, 2, 2})] == Complex(1.0));
  }
  SECTION("idempotent") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    std::vector<double> s(g.size());
    for (auto& v : s) v = nd(rng);
    const auto once = dealias(transform_forward(g, s), g);
    CHECK(dealias(once, g) == once);
  }
}

TEST_CASE("Parseval matches grid quadrature for band-limited data", "[grid]") {
  const GridSpec g(16);
  const auto s = sample_scalar(g, [](double x, double y, double z) {
    return 0.3 + std::sin(2 * x - y) + 0.5 * std::cos(3 * z + x) * std::sin(y);
  });
  double quad = 0.0;
  for (double v : s) quad += v * v;
  quad *= std::pow(g.spacing(), 3);
  double spec = 0.0;
  for (const auto& c : transform_forward(g, s)) spec += std::norm(c);
  spec *= kTorusVolume;
  CHECK_THAT(spec, WithinRel(quad, 1e-12));
}

TEST_CASE("thread count does not change transforms", "[grid]") {
  // The plan cache is keyed on n only; repeated calls must be bitwise stable.
  const GridSpec g(16);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  std::vector<double> s(g.size());
  for (auto& v : s) v = nd(rng);
  CHECK(transform_forward(g, s) == transform_forward(g, s));
}
