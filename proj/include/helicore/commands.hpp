#pragma once

// Command implementations behind the helicore CLI. Each command validates its
// input, writes a human-readable report to the given stream and returns the
// process exit code: 0 success, 1 failed check, 2 invalid input, 3 blow-up.

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helicore/curvature.hpp"
#include "helicore/dynamics.hpp"
#include "helicore/fields.hpp"
#include "helicore/forms.hpp"
#include "helicore/identities.hpp"
#include "helicore/io.hpp"

namespace helicore {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInvalid = 2, kExitBlowUp = 3 };

// ---------------------------------------------------------------------------
// Field specifications
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw InvalidArgument(what + ": not a number: '" + s + "'");
  }
  return v;
}

inline long long parse_int(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end == s.c_str() || *end != '\0') {
    throw InvalidArgument(what + ": not an integer: '" + s + "'");
  }
  return v;
}

inline Helicity parse_helicity(const std::string& s) {
  if (s == "+" || s == "+1" || s == "plus") return Helicity::plus;
  if (s == "-" || s == "-1" || s == "minus") return Helicity::minus;
  throw InvalidArgument("helicity sign must be + or -, got '" + s + "'");
}

}  // namespace detail

inline SpectralVectorField load_snapshot_field(const std::filesystem::path& path,
                                               const GridSpec& grid) {
  const PhysicalVectorField phys = read_snapshot(path);
  if (phys.grid.n() != grid.n()) {
    throw InvalidArgument("snapshot " + path.string() + " has n=" + std::to_string(phys.grid.n()) +
                          ", expected " + std::to_string(grid.n()));
  }
  return to_spectral(phys);
}

/// Builds a field from a spec string:
///   abc:A,B,C            Arnold-Beltrami-Childress field
///   helical:k1,k2,k3,s[,amp]   single helical mode, s in {+,-}
///   random:seed,band[,amp]     random exact field
///   zero                 zero field
///   file:PATH or PATH.hfd      snapshot file (physical samples)
inline SpectralVectorField parse_field_spec(const std::string& spec, const GridSpec& grid) {
  const auto colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto args = detail::split(rest, ',');
  if (kind == "zero") return SpectralVectorField(grid);
  if (kind == "abc") {
    if (args.size() != 3) throw InvalidArgument("abc spec needs A,B,C");
    return abc_field(grid, detail::parse_double(args[0], "abc A"),
                     detail::parse_double(args[1], "abc B"), detail::parse_double(args[2], "abc C"));
  }
  if (kind == "helical") {
    if (args.size() != 4 && args.size() != 5) throw InvalidArgument("helical spec needs k1,k2,k3,sign[,amp]");
    const WaveVector k{static_cast<int>(detail::parse_int(args[0], "k1")),
                       static_cast<int>(detail::parse_int(args[1], "k2")),
                       static_cast<int>(detail::parse_int(args[2], "k3"))};
    if (k.max_abs() > grid.dealias_cutoff()) {
      throw InvalidArgument("helical spec: k outside the dealiased band");
    }
    const double amp = args.size() == 5 ? detail::parse_double(args[4], "amplitude") : 1.0;
    return helical_mode(grid, k, detail::parse_helicity(args[3]), amp);
  }
  if (kind == "random") {
    if (args.size() != 2 && args.size() != 3) throw InvalidArgument("random spec needs seed,band[,amp]");
    const long long seed = detail::parse_int(args[0], "seed");
    const long long band = detail::parse_int(args[1], "band");
    const double amp = args.size() == 3 ? detail::parse_double(args[2], "amplitude") : 1.0;
    if (band < 1 || band > grid.dealias_cutoff()) throw InvalidArgument("random spec: band out of range");
    return random_exact_field(grid, static_cast<std::uint64_t>(seed), static_cast<int>(band), amp);
  }
  if (kind == "file") return load_snapshot_field(rest, grid);
  if (colon == std::string::npos && std::filesystem::path(spec).extension() == ".hfd") {
    return load_snapshot_field(spec, grid);
  }
  throw InvalidArgument("unknown field spec '" + spec + "'");
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckOptions {
  int n = 32;
  std::uint64_t seed = 7;
  int band = 2;
};

struct CheckRow {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass() const { return residual <= threshold; }
};

/// Residual table of the operator identity suite on random band-limited data.
inline std::vector<CheckRow> identity_suite(const CheckOptions& opt) {
  const GridSpec grid(opt.n);
  const SpectralVectorField x = random_exact_field(grid, opt.seed, opt.band);
  const SpectralVectorField y = random_exact_field(grid, opt.seed + 1000003, opt.band);
  const SpectralVectorField z = random_exact_field(grid, opt.seed + 2000003, opt.band);
  // Not divergence-free: exact field plus the gradient of a band-limited potential.
  const SpectralVectorField pot = random_exact_field(grid, opt.seed + 3000003, opt.band);
  const std::vector<Complex> phi(pot.component(0).begin(), pot.component(0).end());
  const SpectralVectorField w = x + gradient(grid, phi);
  // Curl eigenpair: helicity + on |k|^2 = 1, helicity - on |k|^2 = 2.
  const SpectralVectorField ex = random_beltrami_field(grid, opt.seed + 4000003, 1, Helicity::plus);
  const SpectralVectorField ey = random_beltrami_field(grid, opt.seed + 5000003, 2, Helicity::minus);

  std::vector<CheckRow> rows;
  rows.push_back({"curl^-1[X,Y] = P(YxX)", lemma1_residual(x, y), 1e-11});
  rows.push_back({"p*i_X skew (X non-div-free)", lemma2_residual(w, y, z), 1e-11});
  rows.push_back({"Q D0-invariance (X div-free)", d0_invariance_residual(x, y, z), 1e-11});
  rows.push_back({"Q D0-invariance (X non-div-free)", d0_invariance_residual(w, y, z), 1e-11});
  rows.push_back({"ad-invariance <[X,Y],Z>+<Y,[X,Z]>", adjoint_invariance_residual(x, y, z), 1e-11});
  const auto [v1, v2] = vector_identity_residuals(x, y);
  rows.push_back({"vector identity XxrotY+YxrotX", v1, 1e-11});
  rows.push_back({"vector identity grad_X X", v2, 1e-11});
  const auto [p1, p2] = projector_identity_residuals(x, y);
  rows.push_back({"projector P(grad_XY+grad_YX)", p1, 1e-11});
  rows.push_back({"projector P(grad_X X)", p2, 1e-11});
  rows.push_back({"Jacobi identity", jacobi_residual(x, y, z), 1e-11});
  rows.push_back({"bracket routes curl(YxX) vs advective", bracket_route_residual(x, y), 1e-12});
  rows.push_back({"bi-invariant form symmetry", biinvariant_symmetry_residual(x, y), 1e-12});
  {
    const double q = q_form(x, y);
    const double b = biinvariant_form(x, y);
    const double scale = std::max(l2_norm(x) * l2_norm(curl_inv(y)), kResidualFloor);
    rows.push_back({"Q-form (helical) vs <X,Y>_e", std::abs(q - b) / scale, 1e-12});
  }
  {
    const BiinvariantSectional k0 = sectional_biinv(x, y);
    const double scale = std::max({std::abs(k0.value), std::abs(k0.cross_value), kResidualFloor});
    rows.push_back({"K0 routes <B,B>_e vs int g(B,YxX)", std::abs(k0.value - k0.cross_value) / scale, 1e-11});
  }
  {
    const double lambda = 1.0;
    const double mu = -std::sqrt(2.0);
    const RightInvariantSectional full = sectional_rightinv(ex, ey);
    const EigenSectional reduced = sectional_rightinv_eigen(ex, ey, lambda, mu);
    double scale = std::max({std::abs(full.total), std::abs(reduced.total), kResidualFloor});
    for (double t : full.terms) scale = std::max(scale, std::abs(t));
    for (double t : reduced.terms) scale = std::max(scale, std::abs(t));
    rows.push_back({"sectional five-term vs eigen form", std::abs(full.total - reduced.total) / scale, 1e-10});
  }
  return rows;
}

inline int run_check(const CheckOptions& opt, std::ostream& out) {
  try {
    if (opt.band < 1) throw InvalidArgument("check: band must be >= 1");
    if (opt.n < 6 * opt.band) {
      throw InvalidArgument("check: n must be >= 6*band for alias-free nested products");
    }
    const GridSpec grid(opt.n);
    (void)grid;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  const auto rows = identity_suite(opt);
  char line[160];
  std::snprintf(line, sizeof line, "%-40s %12s %10s  %s\n", "identity", "residual", "threshold", "result");
  out << line;
  bool all = true;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-40s %12.3e %10.1e  %s\n", r.name.c_str(), r.residual,
                  r.threshold, r.pass() ? "PASS" : "FAIL");
    out << line;
    all = all && r.pass();
  }
  out << (all ? "all identities PASS" : "some identities FAIL") << '\n';
  return all ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

struct RunConfig {
  int n = 32;
  std::string init = "abc:1,1,1";  // field spec, see parse_field_spec
  double dt = 1e-3;
  int steps = 1000;
  int record_every = 1;
  int snapshot_every = 0;
  std::string out = "helicore_run";

  EvolveConfig evolve_config() const { return {dt, steps, record_every, snapshot_every}; }

  void validate() const {
    (void)GridSpec(n);
    evolve_config().validate();
    if (out.empty()) throw InvalidArgument("config: out must not be empty");
  }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw InvalidArgument(where + ": unknown key '" + it.key() + "'");
  }
}

template <typename T>
T json_get(const nlohmann::json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(where + ": missing or mistyped key '" + key + "'");
  }
}

inline std::string format_number(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace detail

/// Parses the JSON run configuration. "init" is an object:
///   {"kind":"abc","A":..,"B":..,"C":..}
///   {"kind":"helical","k":[k1,k2,k3],"sign":"+"|"-","amplitude":..}
///   {"kind":"random","seed":..,"band":..,"amplitude":..}
///   {"kind":"file","path":"..."}
/// Unknown keys are rejected; ranges are validated before any compute.
inline RunConfig parse_run_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("config: top level must be an object");
  detail::reject_unknown(doc, {"n", "init", "dt", "steps", "record_every", "snapshot_every", "out"},
                         "config");
  RunConfig cfg;
  if (doc.contains("n")) cfg.n = detail::json_get<int>(doc, "n", "config");
  if (doc.contains("dt")) cfg.dt = detail::json_get<double>(doc, "dt", "config");
  if (doc.contains("steps")) cfg.steps = detail::json_get<int>(doc, "steps", "config");
  if (doc.contains("record_every")) cfg.record_every = detail::json_get<int>(doc, "record_every", "config");
  if (doc.contains("snapshot_every")) cfg.snapshot_every = detail::json_get<int>(doc, "snapshot_every", "config");
  if (doc.contains("out")) cfg.out = detail::json_get<std::string>(doc, "out", "config");
  if (doc.contains("init")) {
    const auto& init = doc.at("init");
    if (!init.is_object()) throw InvalidArgument("config: init must be an object");
    const auto kind = detail::json_get<std::string>(init, "kind", "config.init");
    using detail::format_number;
    if (kind == "abc") {
      detail::reject_unknown(init, {"kind", "A", "B", "C"}, "config.init");
      cfg.init = "abc:" + format_number(init.value("A", 1.0)) + "," + format_number(init.value("B", 1.0)) +
                 "," + format_number(init.value("C", 1.0));
    } else if (kind == "helical") {
      detail::reject_unknown(init, {"kind", "k", "sign", "amplitude"}, "config.init");
      const auto k = detail::json_get<std::vector<int>>(init, "k", "config.init");
      if (k.size() != 3) throw InvalidArgument("config.init: k must have three entries");
      const auto sign = init.contains("sign") ? detail::json_get<std::string>(init, "sign", "config.init")
                                              : std::string("+");
      cfg.init = "helical:" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," +
                 std::to_string(k[2]) + "," + sign + "," + format_number(init.value("amplitude", 1.0));
    } else if (kind == "random") {
      detail::reject_unknown(init, {"kind", "seed", "band", "amplitude"}, "config.init");
      cfg.init = "random:" + std::to_string(init.value("seed", 7LL)) + "," +
                 std::to_string(init.value("band", 2)) + "," + format_number(init.value("amplitude", 1.0));
    } else if (kind == "file") {
      detail::reject_unknown(init, {"kind", "path"}, "config.init");
      cfg.init = "file:" + detail::json_get<std::string>(init, "path", "config.init");
    } else {
      throw InvalidArgument("config.init: unknown kind '" + kind + "'");
    }
  }
  cfg.validate();
  return cfg;
}

inline std::string snapshot_path(const std::string& prefix, int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_step%06d.hfd", step);
  return prefix + buf;
}

inline int run_evolve(const RunConfig& cfg, std::ostream& out) {
  std::optional<SpectralVectorField> x0;
  try {
    cfg.validate();
    const GridSpec grid(cfg.n);
    x0 = parse_field_spec(cfg.init, grid);
    require_exact(*x0, "evolve: initial vorticity");
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  const SnapshotSink sink = [&](int step, double, const SpectralVectorField& x) {
    write_snapshot(snapshot_path(cfg.out, step), x);
  };
  try {
    const EvolveResult result = evolve(*x0, cfg.evolve_config(), sink);
    write_diagnostics_csv(cfg.out + ".csv", result.series);
    const auto& first = result.series.front();
    const auto& last = result.series.back();
    char line[200];
    std::snprintf(line, sizeof line, "steps %d  dt %.6g  T %.6g  rows %zu\n", cfg.steps, cfg.dt,
                  cfg.evolve_config().total_time(), result.series.size());
    out << line;
    std::snprintf(line, sizeof line, "energy    %.17g -> %.17g  relative drift %.3e\n", first.energy,
                  last.energy, result.energy_drift);
    out << line;
    std::snprintf(line, sizeof line, "helicity  %.17g -> %.17g  relative drift %.3e\n", first.helicity,
                  last.helicity, result.helicity_drift);
    out << line;
    std::snprintf(line, sizeof line, "final stationarity residual %.3e  max divergence %.3e\n",
                  last.stationarity_residual, last.max_divergence);
    out << line;
    out << "wrote " << cfg.out << ".csv\n";
  } catch (const BlowUpError& e) {
    out << "abort: " << e.what() << '\n';
    return kExitBlowUp;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// curvature
// ---------------------------------------------------------------------------

struct CurvatureOptions {
  int n = 32;
  std::string x_spec;
  std::string y_spec;
};

inline int run_curvature(const CurvatureOptions& opt, std::ostream& out) {
  try {
    const GridSpec grid(opt.n);
    const SpectralVectorField x = parse_field_spec(opt.x_spec, grid);
    const SpectralVectorField y = parse_field_spec(opt.y_spec, grid);
    require_exact(x, "curvature: X");
    require_exact(y, "curvature: Y");
    char line[200];
    const BiinvariantSectional raw = sectional_biinv(x, y);
    out << "bi-invariant sectional curvature K0 (raw pair)\n";
    std::snprintf(line, sizeof line, "  <[X,Y],[X,Y]>_e / 4        %.17g\n", raw.value);
    out << line;
    std::snprintf(line, sizeof line, "  int g([X,Y], YxX) / 4      %.17g\n", raw.cross_value);
    out << line;
    try {
      const BiinvariantSectional nrm = sectional_biinv(x, y, true);
      out << "bi-invariant sectional curvature K0 (orthonormalized pair)\n";
      std::snprintf(line, sizeof line, "  signs                      (%+d, %+d)\n", nrm.signs[0], nrm.signs[1]);
      out << line;
      std::snprintf(line, sizeof line, "  <[X,Y],[X,Y]>_e / 4        %.17g\n", nrm.value);
      out << line;
      std::snprintf(line, sizeof line, "  int g([X,Y], YxX) / 4      %.17g\n", nrm.cross_value);
      out << line;
    } catch (const DomainError&) {
      out << "normalization: degenerate pair (Gram matrix singular), raw values only\n";
    }
    const RightInvariantSectional five = sectional_rightinv(x, y);
    out << "five-term sectional curvature (raw pair)\n";
    for (int i = 0; i < 5; ++i) {
      std::snprintf(line, sizeof line, "  term %d                     %.17g\n", i + 1, five.terms[i]);
      out << line;
    }
    std::snprintf(line, sizeof line, "  total                      %.17g\n", five.total);
    out << line;
    const bool nonzero = l2_norm(x) > 0.0 && l2_norm(y) > 0.0;
    if (nonzero) {
      const BeltramiEstimate bx = beltrami_check(x);
      const BeltramiEstimate by = beltrami_check(y);
      if (bx.residual <= kEigenTolerance && by.residual <= kEigenTolerance) {
        const EigenSectional eig = sectional_rightinv_eigen(x, y, bx.lambda, by.lambda);
        std::snprintf(line, sizeof line, "eigenfield form (lambda %.17g, mu %.17g)\n", bx.lambda, by.lambda);
        out << line;
        for (int i = 0; i < 4; ++i) {
          std::snprintf(line, sizeof line, "  term %d                     %.17g\n", i + 1, eig.terms[i]);
          out << line;
        }
        std::snprintf(line, sizeof line, "  total                      %.17g\n", eig.total);
        out << line;
      } else {
        out << "eigenfield form: skipped (not both curl eigenfields)\n";
      }
    }
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumOptions {
  double s = 1.0;
  int kmax = 1;
  int n = 0;  // 0: smallest valid grid holding kmax
  std::string csv;
};

inline std::string format_eta_csv(const EtaReport& r) {
  std::string out = "norm2,lattice_count,plus,minus\n";
  for (const auto& m : r.multiplicity_table) {
    out += std::to_string(m.norm2) + ',' + std::to_string(m.lattice_count) + ',' +
           std::to_string(m.plus) + ',' + std::to_string(m.minus) + '\n';
  }
  return out;
}

inline int run_spectrum(const SpectrumOptions& opt, std::ostream& out) {
  EtaReport report;
  try {
    if (opt.kmax < 1) throw InvalidArgument("spectrum: kmax must be >= 1 (empty spectrum)");
    const int n = opt.n > 0 ? opt.n : std::max(8, 2 * opt.kmax);
    report = eta_partial(opt.s, opt.kmax, GridSpec(n));
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  char line[160];
  std::snprintf(line, sizeof line, "%8s %10s %8s %8s\n", "|k|^2", "lattice", "plus", "minus");
  out << line;
  for (const auto& m : report.multiplicity_table) {
    std::snprintf(line, sizeof line, "%8d %10d %8d %8d\n", m.norm2, m.lattice_count, m.plus, m.minus);
    out << line;
  }
  std::snprintf(line, sizeof line, "s %.17g  kmax %d  positive %d  negative %d\n", report.s, report.kmax,
                report.positive_count, report.negative_count);
  out << line;
  out << "eta_partial " << format_real(report.eta_partial) << '\n';
  if (!opt.csv.empty()) {
    detail::write_file_atomic(opt.csv, format_eta_csv(report));
    out << "wrote " << opt.csv << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

struct DecomposeOptions {
  int n = 32;
  std::string field;
};

inline int run_decompose(const DecomposeOptions& opt, std::ostream& out) {
  try {
    const GridSpec grid(opt.n);
    const SpectralVectorField x = parse_field_spec(opt.field, grid);
    const HodgeParts parts = hodge_decompose(x);
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %.17g\n", "total", l2_norm(x));
    out << line;
    std::snprintf(line, sizeof line, "%-12s %.17g\n", "gradient", l2_norm(parts.gradient));
    out << line;
    std::snprintf(line, sizeof line, "%-12s %.17g\n", "exact", l2_norm(parts.exact));
    out << line;
    std::snprintf(line, sizeof line, "%-12s %.17g\n", "harmonic", l2_norm(parts.harmonic));
    out << line;
    const double cross_terms = std::abs(l2_inner(parts.gradient, parts.exact)) +
                               std::abs(l2_inner(parts.gradient, parts.harmonic)) +
                               std::abs(l2_inner(parts.exact, parts.harmonic));
    std::snprintf(line, sizeof line, "%-12s %.3e\n", "overlap", cross_terms);
    out << line;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace helicore
