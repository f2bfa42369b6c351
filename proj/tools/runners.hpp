// One runner per CLI subcommand. Each validates the config, materializes it
// into the output directory and writes headered CSV result files whose bytes
// are a pure function of (config, seed).
#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace ssmlab {

void run_dims(const ExperimentConfig& config);
void run_check(const ExperimentConfig& config);
void run_spectrum(const ExperimentConfig& config);
void run_density(const ExperimentConfig& config);
void run_hoelder(const ExperimentConfig& config);
void run_moments(const ExperimentConfig& config);
void run_interior(const ExperimentConfig& config);
void run_controls(const ExperimentConfig& config);

/// Convert result CSVs into gnuplot-style whitespace-separated .dat files.
void run_plotdata(const std::vector<std::string>& files, const std::string& out_dir);

}  // namespace ssmlab
