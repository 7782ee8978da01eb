// Batch front end: run one experiment, sweep a refinement parameter,
// re-audit a stored run, or decompose a stored field.
//
// Exit codes: 0 success, 2 blow-up, 3 audit failure, 4 configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "t3ns/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw t3ns::ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral Galerkin solver for the rot-free Navier-Stokes-type "
               "system on the flat 3-torus"};
  app.require_subcommand(1);

  std::string config_path, vary_field, vary_values, audit_dir, input_path, out_dir;
  double pressure_tol = 1e-8;

  auto* run = app.add_subcommand("run", "execute one configured experiment");
  run->add_option("-c,--config", config_path, "JSON configuration file")->required();

  auto* sweep = app.add_subcommand("sweep", "refinement study over dt, K or M");
  sweep->add_option("-c,--config", config_path, "base JSON configuration file")->required();
  sweep->add_option("--vary", vary_field, "field to vary: dt, K or M")->required();
  sweep->add_option("--values", vary_values, "comma-separated values")->required();

  auto* audit = app.add_subcommand("audit", "re-check a stored run directory");
  audit->add_option("-d,--dir", audit_dir, "run output directory")->required();

  auto* decomp = app.add_subcommand("decompose",
                                    "apply the Hodge/Helmholtz tools to a stored field");
  decomp->add_option("-i,--input", input_path, "form JSON file")->required();
  decomp->add_option("-o,--out", out_dir, "output directory")->required();
  decomp->add_option("--pressure-tol", pressure_tol,
                     "relative solenoidal tolerance for the pressure solve");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const t3ns::RunSpec spec = t3ns::parse_config(read_file(config_path));
      const t3ns::ExperimentResult result = t3ns::run_experiment(spec);
      std::cout << result.report.dump(2) << std::endl;
      return result.exit_code;
    }
    if (sweep->parsed()) {
      const t3ns::RunSpec spec = t3ns::parse_config(read_file(config_path));
      std::vector<double> values;
      std::stringstream ss(vary_values);
      std::string item;
      while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
      return t3ns::run_sweep(spec, vary_field, values);
    }
    if (audit->parsed()) return t3ns::audit_stored(audit_dir);
    if (decomp->parsed()) return t3ns::decompose_stored(input_path, out_dir, pressure_tol);
  } catch (const t3ns::ConfigError& err) {
    std::cerr << err.what() << std::endl;
    return t3ns::kConfigError;
  } catch (const std::invalid_argument& err) {
    std::cerr << "configuration error: " << err.what() << std::endl;
    return t3ns::kConfigError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << std::endl;
    return t3ns::kFailure;
  }
  return t3ns::kFailure;
}
