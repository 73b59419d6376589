// helicore: identity checks, Euler evolution, curvature tables and curl
// spectrum reports for divergence-free fields on the flat 3-torus.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "helicore/allocator.hpp"
#include "helicore/commands.hpp"

int main(int argc, char** argv) {
  helicore::retain_heap();
  CLI::App app{"Spectral calculus of divergence-free fields on the flat 3-torus"};
  app.require_subcommand(1);

  helicore::CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "run the operator identity suite");
  check->add_option("--n", check_opt.n, "samples per axis")->capture_default_str();
  check->add_option("--seed", check_opt.seed, "random seed")->capture_default_str();
  check->add_option("--band", check_opt.band, "max |k_j| of random fields")->capture_default_str();

  helicore::RunConfig run_cfg;
  std::string config_path;
  auto* evolve = app.add_subcommand("evolve", "integrate the Euler equation with RK4");
  auto* cfg_opt = evolve->add_option("--config", config_path, "JSON run configuration");
  std::vector<CLI::Option*> flag_opts = {
      evolve->add_option("--n", run_cfg.n, "samples per axis"),
      evolve->add_option("--init", run_cfg.init, "initial vorticity (abc:A,B,C | helical:k1,k2,k3,s | random:seed,band[,amp] | file:PATH)"),
      evolve->add_option("--dt", run_cfg.dt, "time step"),
      evolve->add_option("--steps", run_cfg.steps, "number of steps"),
      evolve->add_option("--record-every", run_cfg.record_every, "diagnostics cadence"),
      evolve->add_option("--snapshot-every", run_cfg.snapshot_every, "snapshot cadence (0 = never)"),
      evolve->add_option("--out", run_cfg.out, "output prefix")};
  for (auto* o : flag_opts) {
    o->capture_default_str();
    cfg_opt->excludes(o);
  }

  helicore::CurvatureOptions curv_opt;
  auto* curvature = app.add_subcommand("curvature", "sectional curvature tables for a pair of fields");
  curvature->add_option("--n", curv_opt.n, "samples per axis")->capture_default_str();
  curvature->add_option("--x", curv_opt.x_spec, "first field spec")->required();
  curvature->add_option("--y", curv_opt.y_spec, "second field spec")->required();

  helicore::SpectrumOptions spec_opt;
  auto* spectrum = app.add_subcommand("spectrum", "signed eta sum over the curl spectrum");
  spectrum->add_option("--s", spec_opt.s, "exponent s")->capture_default_str();
  spectrum->add_option("--kmax", spec_opt.kmax, "max |k_j|")->required();
  spectrum->add_option("--n", spec_opt.n, "samples per axis (default: smallest holding kmax)");
  spectrum->add_option("--csv", spec_opt.csv, "write the multiplicity table as CSV");

  helicore::DecomposeOptions dec_opt;
  auto* decompose = app.add_subcommand("decompose", "Hodge component norms of a field");
  decompose->add_option("--n", dec_opt.n, "samples per axis")->capture_default_str();
  decompose->add_option("--field", dec_opt.field, "field spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : helicore::kExitInvalid;
  }

  if (check->parsed()) return helicore::run_check(check_opt, std::cout);
  if (evolve->parsed()) {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot open " << config_path << '\n';
        return helicore::kExitInvalid;
      }
      std::stringstream text;
      text << in.rdbuf();
      try {
        run_cfg = helicore::parse_run_config(text.str());
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return helicore::kExitInvalid;
      }
    }
    return helicore::run_evolve(run_cfg, std::cout);
  }
  if (curvature->parsed()) return helicore::run_curvature(curv_opt, std::cout);
  if (spectrum->parsed()) return helicore::run_spectrum(spec_opt, std::cout);
  if (decompose->parsed()) return helicore::run_decompose(dec_opt, std::cout);
  return helicore::kExitInvalid;
}
