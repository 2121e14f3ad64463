#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrlab/analysis.hpp"
#include "lrlab/experiment.hpp"
#include "lrlab/statics.hpp"
#include "lrlab/trajectory.hpp"
#include "lrlab/version.hpp"

namespace {

int report(const lrlab::ExperimentOutcome& outcome) {
  if (outcome.exit_code != 0)
    std::fprintf(stderr, "error: %s\n", outcome.message.c_str());
  else
    for (const auto& f : outcome.files)
      std::fprintf(stdout, "wrote %s\n", f.c_str());
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lrlab: learning-rate schedule experiments in rough landscapes"};
  app.set_version_flag("--version", lrlab::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run an experiment config");
  run_cmd->add_option("config", config_path, "JSON config file")->required();

  std::string sweep_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
  sweep_cmd->add_option("config", sweep_path, "JSON sweep config")->required();

  std::string spectrum_path;
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "dump instance spectra as CSV");
  spectrum_cmd->add_option("config", spectrum_path, "JSON config")->required();

  int statics_p = 3;
  double statics_d2 = 0.0, statics_dp = 0.0;
  auto* statics_cmd =
      app.add_subcommand("statics", "replica-symmetric ground state table");
  statics_cmd->add_option("p", statics_p, "interaction order")->required();
  statics_cmd->add_option("delta2", statics_d2, "matrix channel noise")
      ->required();
  statics_cmd->add_option("deltap", statics_dp, "tensor channel noise")
      ->required();

  std::string fit_csv, fit_window, fit_column = "loss";
  double fit_offset = 0.0;
  auto* fit_cmd =
      app.add_subcommand("fit", "power-law exponent fit on a trajectory CSV");
  fit_cmd->add_option("csv", fit_csv, "trajectory CSV file")->required();
  fit_cmd->add_option("--offset", fit_offset, "asymptote subtracted")
      ->required();
  fit_cmd->add_option("--window", fit_window, "fit window a:b")->required();
  fit_cmd->add_option("--column", fit_column, "value column (default loss)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return report(lrlab::run_experiment(config_path));
    if (*sweep_cmd) return report(lrlab::run_sweep(sweep_path));
    if (*spectrum_cmd) return report(lrlab::run_spectrum(spectrum_path));

    if (*statics_cmd) {
      const lrlab::Potential pot =
          lrlab::Potential::spiked(statics_p, statics_d2, statics_dp);
      const lrlab::RSSolution bayes = lrlab::nishimori_solution(pot);
      const lrlab::RSSolution zero = lrlab::zero_temperature_solution(pot);
      const lrlab::BoundaryResult boundary =
          lrlab::langevin_easy_boundary(statics_dp, statics_p);
      std::printf("quantity,value\n");
      std::printf("m_bayes,%.12g\n", bayes.m);
      std::printf("loss_gs_bayes,%.12g\n", bayes.loss_gs);
      std::printf("residual_bayes,%.3e\n", bayes.residual);
      std::printf("m_zero_t,%.12g\n", zero.m);
      std::printf("chi_zero_t,%.12g\n", zero.chi);
      std::printf("loss_gs_zero_t,%.12g\n", zero.loss_gs);
      std::printf("residual_zero_t,%.3e\n", zero.residual);
      std::printf("delta2_star,%.12g\n", boundary.delta2_star);
      std::printf("boundary_inside_unit_interval,%d\n",
                  boundary.inside_unit_interval ? 1 : 0);
      std::printf("langevin_easy,%d\n",
                  statics_d2 < boundary.delta2_star ? 1 : 0);
      return 0;
    }

    if (*fit_cmd) {
      const auto sep = fit_window.find(':');
      if (sep == std::string::npos) {
        std::fprintf(stderr, "error: --window must look like a:b\n");
        return 2;
      }
      const double lo = std::stod(fit_window.substr(0, sep));
      const double hi = std::stod(fit_window.substr(sep + 1));
      const lrlab::Trajectory traj = lrlab::Trajectory::read_csv_file(fit_csv);
      const auto times =
          traj.column(traj.column_index("t") >= 0 ? "t" : "step");
      const lrlab::ExponentFit fit = lrlab::fit_power_law(
          times, traj.column(fit_column), fit_offset, lo, hi);
      nlohmann::json out{{"exponent", fit.exponent},
                         {"stderr", fit.stderr_exponent},
                         {"window", {fit.t_lo, fit.t_hi}},
                         {"offset_used", fit_offset},
                         {"n_points", fit.n_points}};
      std::printf("%s\n", out.dump(2).c_str());
      return 0;
    }
  } catch (const lrlab::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
