// Experiment configuration: JSON in, fully resolved JSON out. Every run
// validates its config, materializes all defaults, and emits the resolved
// copy next to the results so they are self-describing; the digest of the
// resolved copy is embedded in every result file.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssm/bernoulli.hpp"
#include "ssm/ifs.hpp"
#include "ssm/perturbation.hpp"

namespace ssmlab {

struct FrequencyGrid {
    double min = 0.5;
    double max = 40.0;
    std::size_t points = 17;
    bool log_scale = true;
    std::vector<double> explicit_values;  // overrides the range when nonempty

    std::vector<double> values() const;
};

struct SpatialGrid {
    std::optional<double> min;  // defaults to the perturbed attractor hull
    std::optional<double> max;
    std::size_t points = 512;
};

struct MomentConfig {
    int order = 2;
    std::optional<double> base_point;  // defaults to the hull midpoint
    double sep_min = 3e-3;
    double sep_max = 0.3;
    std::size_t sep_points = 9;
};

struct ExperimentConfig {
    std::vector<double> ratios;
    std::vector<double> translations;
    bool natural_measure = true;
    std::vector<double> probabilities;  // used when natural_measure is false

    std::string perturbation_kind = "spline";  // uniform | spline | none
    int perturbation_order = 3;
    double half_width = 0.1;

    std::uint64_t base_seed = 1;
    std::size_t trials = 100;
    std::size_t depth = 10;
    std::size_t depth_min = 6;  // shallow end of cover scans

    FrequencyGrid frequencies;
    SpatialGrid grid;
    double ball_radius_tails = 4.0;  // ball radius = this * tail_radius
    double fourier_cutoff = 200.0;
    std::vector<double> lq_exponents = {2, 4, 8, 16, 32, 64};
    MomentConfig moment;

    std::string output_dir = "out";
    std::uint64_t atom_budget = std::uint64_t{1} << 22;
    unsigned threads = 1;

    // --- derived objects (constructed by validate()) ---
    ssm::SelfSimilarIFS ifs() const;
    ssm::BernoulliMeasure measure() const;
    ssm::Perturbation perturbation() const;

    void validate() const;  // throws std::invalid_argument with a field path

    nlohmann::json resolved() const;  // all defaults materialized
    std::string digest() const;       // fnv1a of the resolved dump
};

/// Parse a config file. Unknown keys are rejected (typo safety).
ExperimentConfig load_config(const std::string& path);

/// Apply command-line overrides (seed/trials/depth/out/threads).
struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> depth;
    std::optional<std::string> out;
    std::optional<unsigned> threads;
};
void apply_overrides(ExperimentConfig& config, const CliOverrides& overrides);

}  // namespace ssmlab
