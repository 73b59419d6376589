#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "helicore/forms.hpp"
#include "helicore/operators.hpp"

namespace helicore {

struct EvolveConfig {
  double dt = 1e-3;
  int steps = 1;
  int record_every = 1;
  int snapshot_every = 0;  // 0 = never

  double total_time() const { return dt * steps; }

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("evolve: dt must be positive");
    if (steps < 1) throw InvalidArgument("evolve: steps must be positive");
    if (record_every < 1 || record_every > steps) {
      throw InvalidArgument("evolve: record_every must lie in [1, steps]");
    }
    if (snapshot_every < 0) throw InvalidArgument("evolve: snapshot_every must be >= 0");
  }
};

struct DiagnosticsRow {
  int step = 0;
  double t = 0.0;
  double energy = 0.0;
  double helicity = 0.0;
  double stationarity_residual = 0.0;
  double max_divergence = 0.0;
};

using DiagnosticsSeries = std::vector<DiagnosticsRow>;

/// Right-hand side of the Euler equation on the Lie algebra,
/// dX/dt = [X, curl^-1 X], with X the vorticity (grad H(X) = curl^-1 X).
inline SpectralVectorField euler_rhs(const SpectralVectorField& x) {
  require_exact(x, "euler_rhs");
  return detail::lie_bracket_unchecked(x, detail::curl_inv_unchecked(x));
}

namespace detail {

// RK4 stages of an exact state stay exact: the bracket is a curl.
inline SpectralVectorField rk4_unchecked(const SpectralVectorField& x, double dt) {
  auto rhs = [](const SpectralVectorField& s) {
    return lie_bracket_unchecked(s, curl_inv_unchecked(s));
  };
  const SpectralVectorField k1 = rhs(x);
  SpectralVectorField stage = x;
  stage.add_scaled(0.5 * dt, k1);
  const SpectralVectorField k2 = rhs(stage);
  stage = x;
  stage.add_scaled(0.5 * dt, k2);
  const SpectralVectorField k3 = rhs(stage);
  stage = x;
  stage.add_scaled(dt, k3);
  const SpectralVectorField k4 = rhs(stage);
  SpectralVectorField out = x;
  out.add_scaled(dt / 6.0, k1);
  out.add_scaled(dt / 3.0, k2);
  out.add_scaled(dt / 3.0, k3);
  out.add_scaled(dt / 6.0, k4);
  return out;
}

}  // namespace detail

/// One classical fourth-order Runge-Kutta step of euler_rhs.
inline SpectralVectorField step_rk4(const SpectralVectorField& x, double dt) {
  require_exact(x, "step_rk4");
  return detail::rk4_unchecked(x, dt);
}

/// |[Y, curl^-1 Y]| / (|Y|^2 / sqrt|T^3|); zero exactly on critical points of
/// the energy on the orbit, which are the stationary flows.
inline double stationarity_residual(const SpectralVectorField& y) {
  const SpectralVectorField r = euler_rhs(y);
  const double scale = std::max(l2_inner(y, y) / std::sqrt(kTorusVolume), kResidualFloor);
  return l2_norm(r) / scale;
}

struct BeltramiEstimate {
  double lambda = 0.0;    // Rayleigh quotient (curl Y, Y) / (Y, Y)
  double residual = 0.0;  // |curl Y - lambda Y| / |Y|
};

inline BeltramiEstimate beltrami_check(const SpectralVectorField& y) {
  require_exact(y, "beltrami_check");
  const double yy = l2_inner(y, y);
  if (!(yy > 0.0)) throw InvalidArgument("beltrami_check: zero field");
  const SpectralVectorField cy = curl(y);
  BeltramiEstimate out;
  out.lambda = l2_inner(cy, y) / yy;
  SpectralVectorField r = cy;
  r.add_scaled(-out.lambda, y);
  out.residual = l2_norm(r) / std::sqrt(yy);
  return out;
}

/// Diagnostics for vorticity state X: energy and helicity of V = curl^-1 X.
inline DiagnosticsRow diagnose(const SpectralVectorField& x, int step, double t) {
  const SpectralVectorField v = detail::curl_inv_unchecked(x);
  DiagnosticsRow row;
  row.step = step;
  row.t = t;
  row.energy = energy(v);
  row.helicity = l2_inner(x, v);
  row.stationarity_residual = l2_norm(detail::lie_bracket_unchecked(x, v)) /
                              std::max(l2_inner(x, x) / std::sqrt(kTorusVolume), kResidualFloor);
  row.max_divergence = max_divergence(x);
  return row;
}

struct EvolveResult {
  SpectralVectorField final_state;
  DiagnosticsSeries series;
  double energy_drift = 0.0;    // |H(T) - H(0)| / H(0)
  double helicity_drift = 0.0;  // |m(T) - m(0)| / max(|m(0)|, floor)
};

/// Called with (step, t, state) at step 0 and every snapshot_every steps.
using SnapshotSink = std::function<void(int, double, const SpectralVectorField&)>;

inline bool all_finite(const SpectralVectorField& x) {
  for (int j = 0; j < 3; ++j)
    for (const auto& c : x.component(j))
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

/// Integrates dX/dt = [X, curl^-1 X] with fixed-step RK4 from vorticity x0.
///
/// Rows are recorded at step 0, every record_every steps and at the final
/// step. Throws BlowUpError as soon as the state stops being finite.
inline EvolveResult evolve(const SpectralVectorField& x0, const EvolveConfig& cfg,
                           const SnapshotSink& sink = {}) {
  cfg.validate();
  require_exact(x0, "evolve");
  EvolveResult result{x0, {}, 0.0, 0.0};
  SpectralVectorField& x = result.final_state;
  result.series.push_back(diagnose(x, 0, 0.0));
  if (sink && cfg.snapshot_every > 0) sink(0, 0.0, x);
  for (int step = 1; step <= cfg.steps; ++step) {
    x = detail::rk4_unchecked(x, cfg.dt);
    const double t = step * cfg.dt;
    if (!all_finite(x)) {
      throw BlowUpError(step, "evolve: non-finite state at step " + std::to_string(step) +
                                  " (blow-up or dt too large)");
    }
    if (step % cfg.record_every == 0 || step == cfg.steps) {
      result.series.push_back(diagnose(x, step, t));
    }
    if (sink && cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) sink(step, t, x);
  }
  const DiagnosticsRow& first = result.series.front();
  const DiagnosticsRow& last = result.series.back();
  result.energy_drift =
      std::abs(last.energy - first.energy) / std::max(std::abs(first.energy), kResidualFloor);
  result.helicity_drift =
      std::abs(last.helicity - first.helicity) / std::max(std::abs(first.helicity), kResidualFloor);
  return result;
}

}  // namespace helicore
