#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lrlab/schedule.hpp"

namespace lrlab {

/// Config file problem: unknown key, missing field, out-of-range value.
/// Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure during a run (instability, divergence).
/// Maps to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentOutcome {
  int exit_code = 0;
  std::string message;
  std::vector<std::string> files;
};

/// Runs the experiment described by a JSON config file and writes the
/// trajectory CSVs, summary.json and manifest.json into its output
/// directory. Exit codes: 0 success, 2 config error, 3 numerical abort.
ExperimentOutcome run_experiment(const std::string& config_path);

/// Parameter sweep: runs every (axis value, seed) point on a bounded
/// worker pool and writes sweep.csv with one row per axis value.
ExperimentOutcome run_sweep(const std::string& config_path);

/// Dumps instance spectra (index, eigenvalue CSV) for a config of kind
/// sk or sk-planted.
ExperimentOutcome run_spectrum(const std::string& config_path);

/// Worker count: LRLAB_WORKERS when set, hardware concurrency otherwise.
int worker_count();

/// Parses {"kind": "constant"|"power"|"switch", "eta0":..., "beta":...,
/// "t_switch":..., "t_start":...} given as serialized JSON text.
Schedule schedule_from_json_text(const std::string& text);

}  // namespace lrlab
