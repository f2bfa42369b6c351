#include "runners.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "parallel.hpp"
#include "ssm/csv.hpp"
#include "ssm/regularity.hpp"
#include "ssm/spectral.hpp"

namespace ssmlab {

namespace fs = std::filesystem;
using ssm::format_sig17;

namespace {

// Materialize the resolved config next to the results; return its digest.
std::string prepare_output(const ExperimentConfig& config) {
    config.validate();
    fs::create_directories(config.output_dir);
    std::ofstream out(fs::path(config.output_dir) / "config.resolved.json");
    out << config.resolved().dump(2) << "\n";
    return config.digest();
}

std::ofstream open_result(const ExperimentConfig& config, const std::string& name,
                          const std::string& digest) {
    std::ofstream out(fs::path(config.output_dir) / name);
    out << "# config_digest=" << digest << "\n";
    return out;
}

ssm::Interval perturbed_hull(const ExperimentConfig& config) {
    return config.ifs().attractor_bounds(config.perturbation().support_radius());
}

std::vector<double> spatial_grid(const ExperimentConfig& config) {
    const ssm::Interval hull = perturbed_hull(config);
    const double lo = config.grid.min.value_or(hull.lo);
    const double hi = config.grid.max.value_or(hull.hi);
    return ssm::uniform_grid(lo, hi, config.grid.points);
}

const char* flag_str(bool b) { return b ? "1" : "0"; }

}  // namespace

void run_dims(const ExperimentConfig& config) {
    const std::string digest = prepare_output(config);
    const ssm::SelfSimilarIFS ifs = config.ifs();
    const ssm::BernoulliMeasure measure = config.measure();

    const double s = ssm::similarity_dimension(ifs);
    const ssm::TypicalDimensions typical = ssm::typical_dimensions(ifs, measure);
    const ssm::LocalDimension local = ssm::local_dimension_exponent(measure, ifs);

    auto out = open_result(config, "dims.csv", digest);
    out << "quantity,value\n";
    out << "similarity_dimension," << format_sig17(s) << "\n";
    out << "typical_dim_set," << format_sig17(typical.dim_set) << "\n";
    out << "typical_dim_measure," << format_sig17(typical.dim_measure) << "\n";
    out << "s_prime," << format_sig17(local.s_prime) << "\n";
    for (double q : config.lq_exponents) {
        out << "lq_dimension_q" << q << ","
            << format_sig17(ssm::lq_dimension(measure, ifs, q)) << "\n";
    }
    std::cout << "dims: s=" << s << " dim_set=" << typical.dim_set
              << " dim_measure=" << typical.dim_measure << " s'=" << local.s_prime << "\n";
}

void run_check(const ExperimentConfig& config) {
    const std::string digest = prepare_output(config);
    const ssm::SelfSimilarIFS ifs = config.ifs();
    const ssm::BernoulliMeasure measure = config.measure();
    const ssm::Perturbation dist = config.perturbation();

    const double s = ssm::similarity_dimension(ifs);
    const ssm::LocalDimension local = ssm::local_dimension_exponent(measure, ifs);
    const double slack = ssm::local_dimension_bound_slack(measure, ifs, local.s_prime, 1.0, 6);

    auto out = open_result(config, "check.csv", digest);
    out << "check,value,flag\n";
    out << "similarity_dimension," << format_sig17(s) << "," << flag_str(s > 1.0) << "\n";
    out << "s_prime," << format_sig17(local.s_prime) << ","
        << flag_str(local.satisfies_assumption) << "\n";
    out << "cylinder_bound_slack_depth6," << format_sig17(slack) << ","
        << flag_str(slack >= -1e-9) << "\n";
    out << "decay_order," << format_sig17(dist.decay_order()) << ","
        << flag_str(dist.decay_order() > 0) << "\n";
    if (dist.support_radius() > 0.0) {
        const double x_lo = 5.0 / dist.support_radius();
        const ssm::DecayFit fit = ssm::decay_exponent_estimate(dist, x_lo, 400.0 * x_lo, 4000);
        out << "decay_exponent_fit," << format_sig17(fit.exponent) << ","
            << flag_str(std::abs(fit.exponent - dist.decay_order()) < 0.5) << "\n";
    }
    const bool adm_measure = dist.admissible_for(local.s_prime);
    const bool adm_corollary = dist.admissible_for(s);
    out << "admissible_for_measure,," << flag_str(adm_measure) << "\n";
    out << "admissible_for_corollary,," << flag_str(adm_corollary) << "\n";
    std::cout << "check: s=" << s << " s'=" << local.s_prime << " M=" << dist.decay_order()
              << " admissible=" << (adm_measure ? "yes" : "no") << "\n";
}

void run_spectrum(const ExperimentConfig& config) {
    const std::string digest = prepare_output(config);
    const ssm::SelfSimilarIFS ifs = config.ifs();
    const ssm::BernoulliMeasure measure = config.measure();
    const ssm::Perturbation dist = config.perturbation();
    const std::vector<double> freqs = config.frequencies.values();

    std::vector<std::vector<ssm::Complex>> per_trial(config.trials);
    parallel_trials(config.trials, config.threads, [&](std::size_t t) {
        ssm::AtomicApproximation cloud =
            ssm::atomic_approximation(ifs, measure, dist, {config.base_seed + t}, config.depth,
                                      config.atom_budget);
        per_trial[t] = ssm::empirical_characteristic(cloud, freqs);
    });

    std::vector<ssm::Complex> mean(freqs.size()), se(freqs.size()), oracle(freqs.size());
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        double sr = 0, si = 0, srr = 0, sii = 0;
        for (const auto& row : per_trial) {
            sr += row[k].real();
            si += row[k].imag();
            srr += row[k].real() * row[k].real();
            sii += row[k].imag() * row[k].imag();
        }
        const double n = static_cast<double>(config.trials);
        mean[k] = {sr / n, si / n};
        se[k] = {std::sqrt(std::max(0.0, srr / n - (sr / n) * (sr / n)) / n),
                 std::sqrt(std::max(0.0, sii / n - (si / n) * (si / n)) / n)};
        oracle[k] = ssm::mean_characteristic(ifs, measure, dist, freqs[k]);
    }

    std::vector<ssm::SpectralProfile> profiles(2);
    profiles[0] = {freqs, mean, "empirical_mean"};
    profiles[1] = {freqs, oracle, "mean_oracle"};
    auto out = open_result(config, "spectrum.csv", digest);
    ssm::write_spectral_csv(out, profiles);

    auto stats = open_result(config, "spectrum_stats.csv", digest);
    stats << "xi,re_mc,im_mc,se_re,se_im,re_oracle,im_oracle\n";
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        stats << format_sig17(freqs[k]) << ',' << format_sig17(mean[k].real()) << ','
              << format_sig17(mean[k].imag()) << ',' << format_sig17(se[k].real()) << ','
              << format_sig17(se[k].imag()) << ',' << format_sig17(oracle[k].real()) << ','
              << format_sig17(oracle[k].imag()) << "\n";
    }
    std::cout << "spectrum: " << freqs.size() << " frequencies, " << config.trials
              << " trials at depth " << config.depth << "\n";
}

void run_density(const ExperimentConfig& config) {
    const std::string digest = prepare_output(config);
    const ssm::SelfSimilarIFS ifs = config.ifs();
    const ssm::BernoulliMeasure measure = config.measure();
    const ssm::Perturbation dist = config.perturbation();

    ssm::AtomicApproximation cloud = ssm::atomic_approximation(
        ifs, measure, dist, {config.base_seed}, config.depth, config.atom_budget);
    const double r = config.ball_radius_tails * cloud.tail_radius;
    if (!(r > 0.0) || !(r < 1.0))
        throw std::invalid_argument("density: ball radius must land in (0,1); adjust depth");
    std::vector<double> grid = spatial_grid(config);

    using Kind = ssm::DensityMethod::Kind;
    const struct {
        Kind kind;
        double parameter;
        const char* file;
    } methods[] = {{Kind::Ball, r, "density_ball.csv"},
                   {Kind::Smoothed, r, "density_smoothed.csv"},
                   {Kind::Fourier, config.fourier_cutoff, "density_fourier.csv"}};
    for (const auto& m : methods) {
        ssm::DensityEstimate est =
            ssm::density_estimate(cloud, grid, {m.kind, m.parameter}, config.base_seed);
        auto out = open_result(config, m.file, digest);
        ssm::write_density_csv(out, est);
    }
    std::cout << "density: grid " << grid.size() << " points, r=" << r
              << " cutoff=" << config.fourier_cutoff << "\n";
}

void run_hoelder(const ExperimentConfig& config) {
    const std::string digest = prepare_output(config);
    const ssm::SelfSimilarIFS ifs = config.ifs();
    const ssm::BernoulliMeasure measure = config.measure();
    const ssm::Perturbation dist = config.perturbation();

    struct Row {
        std::uint64_t seed;
        ssm::HoelderFit fit;
    };
    std::vector<Row> rows(config.trials);
    parallel_trials(config.trials, config.threads, [&](std::size_t t) {
        const std::uint64_t seed = config.base_seed + t;
        ssm::AtomicApproximation cloud =
            ssm::atomic_approximation(ifs, measure, dist, {seed}, config.depth,
                                      config.atom_budget);
        ssm::SortedAtoms sorted(cloud);
        const double r = config.ball_radius_tails * cloud.tail_radius;
        std::vector<double> grid =
            ssm::uniform_grid(sorted.min_position(), sorted.max_position(), config.grid.points);
        ssm::DensityEstimate est = ssm::density_estimate(
            cloud, std::move(grid), {ssm::DensityMethod::Kind::Ball, r}, seed);
        rows[t] = {seed, ssm::hoelder_exponent_estimate(est)};
    });

    auto out = open_result(config, "hoelder.csv", digest);
    out << "seed,h_hat,residual,flat\n";
    std::size_t positive = 0;
    for (const Row& row : rows) {
        out << row.seed << ',' << format_sig17(row.fit.exponent) << ','
            << format_sig17(row.fit.residual) << ',' << flag_str(row.fit.flat) << "\n";
        if (row.fit.exponent > 0.0) ++positive;
    }
    std::cout << "hoelder: " << positive << "/" << config.trials
              << " seeds with positive exponent\n";
}

void run_moments(const ExperimentConfig& config) {
    const std::string digest = prepare_output(config);
    const ssm::SelfSimilarIFS ifs = config.ifs();
    const ssm::BernoulliMeasure measure = config.measure();
    const ssm::Perturbation dist = config.perturbation();

    const ssm::Interval hull = perturbed_hull(config);
    const double x0 = config.moment.base_point.value_or(0.5 * (hull.lo + hull.hi));
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t k = 0; k < config.moment.sep_points; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(config.moment.sep_points - 1);
        const double sep = config.moment.sep_min *
                           std::pow(config.moment.sep_max / config.moment.sep_min, t);
        pairs.emplace_back(x0, x0 + sep);
    }
    ssm::MomentScaling scaling =
        ssm::moment_scaling(ifs, measure, dist, pairs, config.moment.order, config.trials,
                            config.depth, config.fourier_cutoff, {config.base_seed},
                            config.atom_budget);
    ssm::BootstrapCI ci = ssm::bootstrap_alpha_ci(scaling, 1000, 0.95, config.base_seed);

    auto out = open_result(config, "moments.csv", digest);
    out << "# alpha_hat=" << format_sig17(scaling.alpha_hat)
        << " intercept=" << format_sig17(scaling.intercept)
        << " ci95_lo=" << format_sig17(ci.lo) << " ci95_hi=" << format_sig17(ci.hi) << "\n";
    out << "separation,mean_moment,log_separation,log_mean_moment\n";
    for (std::size_t k = 0; k < scaling.separations.size(); ++k) {
        const double m = scaling.mean_moments[k];
        out << format_sig17(scaling.separations[k]) << ',' << format_sig17(m) << ','
            << format_sig17(std::log(scaling.separations[k])) << ','
            << format_sig17(m > 0 ? std::log(m) : std::nan("")) << "\n";
    }
    std::cout << "moments: alpha_hat=" << scaling.alpha_hat << " ci95=[" << ci.lo << ", "
              << ci.hi << "]\n";
}

void run_interior(const ExperimentConfig& config) {
    const std::string digest = prepare_output(config);
    const ssm::SelfSimilarIFS ifs = config.ifs();
    const ssm::Perturbation dist = config.perturbation();

    std::vector<std::vector<ssm::Interval>> covers;
    auto out = open_result(config, "interior.csv", digest);
    out << "depth,component_count,lebesgue_bound,candidate_lo,candidate_hi,candidate_width,"
           "nonempty\n";
    for (std::size_t depth = config.depth_min; depth <= config.depth; ++depth) {
        covers.push_back(
            ssm::attractor_cover(ifs, dist, {config.base_seed}, depth, config.atom_budget));
        const double bound = ssm::lebesgue_upper_bound(covers.back());
        const double floor = ssm::interior_width_floor(ifs, dist);
        const ssm::InteriorCandidate cand = ssm::interior_candidate(covers, floor);
        out << depth << ',' << covers.back().size() << ',' << format_sig17(bound) << ',';
        if (cand.interval) {
            out << format_sig17(cand.interval->lo) << ',' << format_sig17(cand.interval->hi)
                << ',' << format_sig17(cand.interval->length()) << ",1\n";
        } else {
            out << ",,,0\n";
        }
    }
    std::cout << "interior: scanned depths " << config.depth_min << ".." << config.depth << "\n";
}

void run_controls(const ExperimentConfig& config) {
    const std::string digest = prepare_output(config);
    auto out = open_result(config, "controls.csv", digest);
    out << "control,seed,quantity,value,flag\n";

    // Subcritical control: s < 1, so the Lebesgue bound must decay like
    // (N * ratio)^depth and no interior candidate may survive depth >= 6.
    const ssm::SelfSimilarIFS sub({0.3, 0.3}, {0.0, 1.0});
    const ssm::Perturbation dist = config.perturbation();
    const double s_sub = ssm::similarity_dimension(sub);
    out << "subcritical,,similarity_dimension," << format_sig17(s_sub) << ","
        << flag_str(s_sub < 1.0) << "\n";
    const double expected_ratio = 2.0 * 0.3;
    const std::size_t n_seeds = std::min<std::size_t>(config.trials, 20);
    const std::size_t max_depth = 12;
    bool all_ok = true;
    for (std::size_t t = 0; t < n_seeds; ++t) {
        const std::uint64_t seed = config.base_seed + t;
        std::vector<std::vector<ssm::Interval>> covers;
        std::vector<double> bounds;
        bool interior_none = true;
        for (std::size_t depth = 1; depth <= max_depth; ++depth) {
            covers.push_back(ssm::attractor_cover(sub, dist, {seed}, depth, config.atom_budget));
            bounds.push_back(ssm::lebesgue_upper_bound(covers.back()));
            if (depth >= 6) {
                const double floor = ssm::interior_width_floor(sub, dist);
                if (ssm::interior_candidate(covers, floor).interval) interior_none = false;
            }
        }
        bool ratio_ok = true;
        double worst_ratio = expected_ratio;
        for (std::size_t d = 6; d + 1 <= max_depth; ++d) {
            const double ratio = bounds[d] / bounds[d - 1];
            if (std::abs(ratio - expected_ratio) > 0.1 * expected_ratio) ratio_ok = false;
            if (std::abs(ratio - expected_ratio) > std::abs(worst_ratio - expected_ratio))
                worst_ratio = ratio;
        }
        out << "subcritical," << seed << ",lebesgue_decay_ratio," << format_sig17(worst_ratio)
            << "," << flag_str(ratio_ok) << "\n";
        out << "subcritical," << seed << ",interior_none_depth6plus,," << flag_str(interior_none)
            << "\n";
        all_ok = all_ok && ratio_ok && interior_none;
    }

    // Uniform-perturbation control: the uniform law never satisfies the
    // Fourier-decay assumption once s' > 1.
    const ssm::SelfSimilarIFS ifs = config.ifs();
    const ssm::BernoulliMeasure measure = config.measure();
    const ssm::LocalDimension local = ssm::local_dimension_exponent(measure, ifs);
    const double hw = config.half_width > 0.0 ? config.half_width : 0.1;
    const ssm::Perturbation uniform = ssm::Perturbation::uniform(hw);
    const bool inadmissible = !uniform.admissible_for(local.s_prime);
    out << "uniform_inadmissible,,s_prime," << format_sig17(local.s_prime) << ","
        << flag_str(local.s_prime > 1.0) << "\n";
    out << "uniform_inadmissible,,admissible,," << flag_str(!inadmissible) << "\n";
    const bool uniform_ok = local.s_prime <= 1.0 || inadmissible;
    out << "uniform_inadmissible,,control_passed,," << flag_str(uniform_ok) << "\n";

    std::cout << "controls: subcritical=" << (all_ok ? "pass" : "FAIL")
              << " uniform_inadmissible=" << (uniform_ok ? "pass" : "FAIL") << "\n";
}

void run_plotdata(const std::vector<std::string>& files, const std::string& out_dir) {
    if (files.empty()) throw std::invalid_argument("plotdata: no input files given");
    fs::create_directories(out_dir);
    for (const std::string& file : files) {
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("plotdata: missing input " + file);
        std::vector<std::string> comments;
        std::string header;
        std::vector<std::vector<std::string>> rows;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line[0] == '#') {
                comments.push_back(line);
                continue;
            }
            std::vector<std::string> fields;
            std::stringstream ss(line);
            std::string field;
            while (std::getline(ss, field, ',')) fields.push_back(field);
            if (header.empty()) {
                header = line;
                continue;
            }
            rows.push_back(std::move(fields));
        }
        const std::string stem = fs::path(file).stem().string();
        if (header.rfind("xi,re,im,provenance", 0) == 0) {
            // Spectrum profiles: one file per provenance with (xi, |value|).
            std::vector<std::string> seen;
            for (const auto& row : rows) {
                if (std::find(seen.begin(), seen.end(), row[3]) == seen.end())
                    seen.push_back(row[3]);
            }
            for (const std::string& prov : seen) {
                std::ofstream dat(fs::path(out_dir) / (stem + "_" + prov + ".dat"));
                for (const std::string& c : comments) dat << c << "\n";
                dat << "# columns: xi abs\n";
                for (const auto& row : rows) {
                    if (row[3] != prov) continue;
                    const double re = std::stod(row[1]);
                    const double im = std::stod(row[2]);
                    dat << row[0] << ' ' << format_sig17(std::hypot(re, im)) << "\n";
                }
            }
        } else if (header.rfind("separation,", 0) == 0) {
            // Moment scaling: log-log pairs; the fit line lives in comments.
            std::ofstream dat(fs::path(out_dir) / (stem + ".dat"));
            for (const std::string& c : comments) dat << c << "\n";
            dat << "# columns: log_separation log_mean_moment\n";
            for (const auto& row : rows) dat << row[2] << ' ' << row[3] << "\n";
        } else {
            // Generic two-column results (density grids, dimension tables...).
            std::ofstream dat(fs::path(out_dir) / (stem + ".dat"));
            for (const std::string& c : comments) dat << c << "\n";
            for (const auto& row : rows) {
                if (row.size() >= 2) dat << row[0] << ' ' << row[1] << "\n";
            }
        }
    }
    std::cout << "plotdata: converted " << files.size() << " file(s)\n";
}

}  // namespace ssmlab
