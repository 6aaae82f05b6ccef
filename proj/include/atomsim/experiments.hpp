#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "atomsim/mapping.hpp"

namespace atomsim {

struct ExperimentConfig {
  std::string experiment;
  size_t shots = 2000;
  uint64_t seed = 1;          // mandatory for noisy runs
  std::string noise_file;     // "", "zero", or a path
  std::string out_dir = ".";

  // entropy pipeline knobs
  std::string initial = "ground";  // ground | z2
  double tmax_us = 1.5;
  double dt_us = 0.1;
  int n_traj = 6;  // trajectory pool size per time point

  std::string echo() const;
};

struct RunManifest {
  std::string experiment;
  std::string version = "atomarray-sim 0.1.0";
  std::string config_echo;
  uint64_t input_hash = 0;
  std::string started, finished;  // wall-clock stamps live only here
  std::vector<std::string> outputs;

  std::string to_json() const;
};

std::vector<std::string> known_experiments();

// Execute a named reproduction pipeline; writes result files plus
// manifest.json under cfg.out_dir. Result files are byte-stable for a fixed
// config and seed.
RunManifest run_experiment(const ExperimentConfig& cfg);

// Structured diff of two report JSON files from the same experiment:
// per-metric deltas with 3-sigma significance flags where standard errors
// are available.
std::string diff_reports(const std::string& report_json_a,
                         const std::string& report_json_b);

// Mapping-noise file loader ({doppler_sigma_hz, gap_time_ns,
// final_pulse_omega_scale, empirical_decay_rate_hz, t0_purity_scale}).
MappingErrorModel mapping_noise_from_file(const std::string& path_or_tag);

}  // namespace atomsim
