// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "helicore/allocator.hpp"
#include "helicore/commands.hpp"

using namespace helicore;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %d  %-34s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void identity_suite_criterion() {
  double worst = 0.0;
  bool ok = true;
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    for (const auto& row : identity_suite({32, seed, 2})) {
      ok = ok && row.pass();
      if (row.threshold == 1e-11) worst = std::max(worst, row.residual);
    }
  }
  ok = ok && worst <= 1e-11;
  report(1, "identity suite, seeds 7 8 9", ok, fmt("max residual %.2e (limit 1e-11)", worst));
}

void bracket_criterion() {
  const GridSpec g(32);
  double worst = 0.0;
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    const auto x = random_exact_field(g, seed, 2);
    const auto y = random_exact_field(g, seed + 100, 2);
    worst = std::max(worst, bracket_route_residual(x, y));
  }
  report(2, "bracket routes agree", worst <= 1e-12, fmt("max residual %.2e (limit 1e-12)", worst));
}

void form_criterion() {
  const GridSpec g(32);
  double sym = 0.0, compat = 0.0, min_xx = INFINITY;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto x = random_exact_field(g, seed, 2);
    const auto y = random_exact_field(g, seed + 50, 2);
    sym = std::max(sym, biinvariant_symmetry_residual(x, y));
    const double xx = l2_inner(x, x);
    min_xx = std::min(min_xx, xx);
    compat = std::max(compat, std::abs(biinvariant_form(x, curl(x)) - xx) / xx);
  }
  const auto witness = helical_mode(g, {1, 1, 0}, Helicity::minus);
  const double neg = biinvariant_form(witness, witness);
  const bool ok = sym <= 1e-12 && compat <= 1e-12 && min_xx > 0.0 && neg < 0.0;
  report(3, "bi-invariant form structure", ok,
         fmt("symmetry %.2e, <X,rot X>/(X,X)-1 %.2e over 10 fields, witness <X,X> = %.4g", sym, compat,
             neg));
}

void conservation_criterion() {
  const GridSpec g(32);
  const auto x0 = random_exact_field(g, 7, 2, 0.5);
  const auto coarse = evolve(x0, {1e-3, 1000, 1000, 0});
  const auto fine = evolve(x0, {5e-4, 2000, 2000, 0});
  const double re = coarse.energy_drift / fine.energy_drift;
  const double rm = coarse.helicity_drift / fine.helicity_drift;
  const bool ok = coarse.energy_drift <= 1e-8 && coarse.helicity_drift <= 1e-8 && re >= 8.0 && rm >= 8.0;
  report(4, "energy and helicity conservation", ok,
         fmt("dH/H %.2e, dm/m %.2e at dt=1e-3; dt/2 reduces by %.1fx and %.1fx", coarse.energy_drift,
             coarse.helicity_drift, re, rm));
}

void beltrami_criterion() {
  const GridSpec g(32);
  struct Case {
    const char* name;
    SpectralVectorField x;
  };
  const std::vector<Case> cases = {{"abc(1,1,1)", abc_field(g, 1, 1, 1)},
                                   {"helical (1,0,0)+", helical_mode(g, {1, 0, 0}, Helicity::plus)},
                                   {"helical (1,2,1)-", helical_mode(g, {1, 2, 1}, Helicity::minus)}};
  double stat = 0.0, drift = 0.0;
  for (const auto& c : cases) {
    stat = std::max(stat, stationarity_residual(c.x));
    const auto r = evolve(c.x, {1e-3, 1000, 1000, 0});
    drift = std::max(drift, relative_difference(r.final_state, c.x));
  }
  report(5, "Beltrami fields are stationary", stat <= 1e-13 && drift <= 1e-9,
         fmt("stationarity %.2e (limit 1e-13), 1000-step change %.2e (limit 1e-9)", stat, drift));
}

void curvature_criterion() {
  const GridSpec g(32);
  double k0 = 0.0;
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    const auto s = sectional_biinv(random_exact_field(g, seed, 2), random_exact_field(g, seed + 100, 2));
    k0 = std::max(k0, std::abs(s.value - s.cross_value) / std::max(std::abs(s.value), kResidualFloor));
  }
  double eig = 0.0;
  struct Pair {
    SpectralVectorField x, y;
    double lambda, mu;
  };
  const std::vector<Pair> pairs = {
      {abc_field(g, 1, 1, 1), helical_mode(g, {1, 1, 0}, Helicity::plus), 1.0, std::sqrt(2.0)},
      {random_beltrami_field(g, 1, 1, Helicity::plus), random_beltrami_field(g, 2, 2, Helicity::minus), 1.0,
       -std::sqrt(2.0)},
      {random_beltrami_field(g, 3, 3, Helicity::minus), random_beltrami_field(g, 4, 2, Helicity::minus),
       -std::sqrt(3.0), -std::sqrt(2.0)}};
  for (const auto& p : pairs) {
    const auto full = sectional_rightinv(p.x, p.y);
    const auto red = sectional_rightinv_eigen(p.x, p.y, p.lambda, p.mu);
    double scale = std::max(std::abs(full.total), kResidualFloor);
    for (double t : full.terms) scale = std::max(scale, std::abs(t));
    eig = std::max(eig, std::abs(full.total - red.total) / scale);
  }
  const auto x = random_exact_field(g, 7, 2);
  const auto h = helical_mode(g, {0, 1, 1}, Helicity::plus);
  const auto c1 = sectional_biinv(x, x);
  const auto c2 = sectional_biinv(x, -2.0 * x);
  const auto c3 = sectional_biinv(h, 0.5 * h);
  const bool zero = c1.value == 0.0 && c2.value == 0.0 && c3.value == 0.0 && c1.cross_value == 0.0 &&
                    c2.cross_value == 0.0 && c3.cross_value == 0.0;
  report(6, "curvature cross-checks", k0 <= 1e-11 && eig <= 1e-10 && zero,
         fmt("K0 routes %.2e (1e-11), five-term vs eigen %.2e (1e-10), commuting K0 %s", k0, eig,
             zero ? "exactly 0" : "nonzero"));
}

void eta_criterion() {
  bool ok = true;
  int cases = 0;
  for (int kmax : {1, 2, 3, 5, 8, 12}) {
    const GridSpec g(std::max(8, 2 * kmax));
    for (double s : {0.5, 1.0, 2.0, 3.0, -1.0}) {
      const auto r = eta_partial(s, kmax, g);
      ok = ok && r.eta_partial == 0.0 && r.positive_count == r.negative_count;
      ++cases;
    }
  }
  report(7, "eta sums vanish exactly", ok, fmt("%d (s, kmax) cases, eta == 0 and counts balanced", cases));
}

void io_criterion() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "helicore_acceptance";
  fs::create_directories(dir);
  const GridSpec g(32);
  const auto x = random_exact_field(g, 7, 2);
  const auto snap = dir / "x.hfd";
  write_snapshot(snap, x);
  const auto back = read_snapshot(snap);
  const auto orig = to_physical(x);
  bool snap_ok = true;
  for (int j = 0; j < 3; ++j) snap_ok = snap_ok && back.samples[j] == orig.samples[j];

  const auto run = evolve(random_exact_field(GridSpec(16), 3, 2, 0.5), {1e-3, 50, 1, 0});
  const auto csv = dir / "run.csv";
  write_diagnostics_csv(csv, run.series);
  const auto reread = read_diagnostics_csv(csv);
  bool csv_ok = reread.size() == run.series.size();
  for (std::size_t i = 0; csv_ok && i < reread.size(); ++i) {
    const auto& a = reread[i];
    const auto& b = run.series[i];
    csv_ok = a.step == b.step && a.t == b.t && a.energy == b.energy && a.helicity == b.helicity &&
             a.stationarity_residual == b.stationarity_residual && a.max_divergence == b.max_divergence;
  }

  std::ostringstream sink;
  const int pass_code = run_check({32, 7, 2}, sink);
  const int bad_code = run_check({8, 7, 2}, sink);
  const bool codes_ok = pass_code == kExitOk && bad_code == kExitInvalid;
  report(8, "snapshot, CSV and exit codes", snap_ok && csv_ok && codes_ok,
         fmt("snapshot %s, CSV %s, check exit %d / %d (expect 0 / 2)", snap_ok ? "bit-exact" : "differs",
             csv_ok ? "exact" : "differs", pass_code, bad_code));
}

}  // namespace

int main() {
  retain_heap();
  identity_suite_criterion();
  bracket_criterion();
  form_criterion();
  conservation_criterion();
  beltrami_criterion();
  curvature_criterion();
  eta_criterion();
  io_criterion();
  std::printf("%s\n", failures == 0 ? "acceptance: all criteria PASS"
                                    : fmt("acceptance: %d criteria FAIL", failures).c_str());
  return failures == 0 ? 0 : 1;
}
