// ssmlab: config-driven experiment runner for randomly perturbed
// self-similar measures on the line.
//
// Exit codes: 0 success, 2 validation error, 3 atom/recursion budget
// exceeded. Validation failures emit a one-line JSON error record on stderr.
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "runners.hpp"
#include "ssm/common.hpp"

namespace {

void print_error(const std::string& type, const std::string& message) {
    nlohmann::json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation lab for randomly perturbed self-similar measures"};
    app.require_subcommand(1);

    std::string config_path;
    ssmlab::CliOverrides overrides;

    auto add_run_options = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { overrides.seed = v; }, "base seed override");
        sub->add_option_function<std::size_t>(
            "--trials", [&](std::size_t v) { overrides.trials = v; }, "trial count override");
        sub->add_option_function<std::size_t>(
            "--depth", [&](std::size_t v) { overrides.depth = v; }, "tree depth override");
        sub->add_option_function<std::string>(
            "--out", [&](const std::string& v) { overrides.out = v; }, "output directory");
        sub->add_option_function<unsigned>(
            "--threads", [&](unsigned v) { overrides.threads = v; }, "worker threads");
    };

    struct Entry {
        const char* name;
        const char* help;
        void (*fn)(const ssmlab::ExperimentConfig&);
    };
    const Entry entries[] = {
        {"dims", "similarity, typical and Lq dimension report", ssmlab::run_dims},
        {"check", "assumption report: local dimension and Fourier-decay admissibility",
         ssmlab::run_check},
        {"spectrum", "empirical vs averaged characteristic function", ssmlab::run_spectrum},
        {"density", "density estimates by ball, smoothed and Fourier methods",
         ssmlab::run_density},
        {"hoelder", "Hoelder exponent scan across seeds", ssmlab::run_hoelder},
        {"moments", "Kolmogorov moment-scaling regression", ssmlab::run_moments},
        {"interior", "interior-interval candidates and Lebesgue bounds across depths",
         ssmlab::run_interior},
        {"controls", "subcritical and uniform-perturbation negative controls",
         ssmlab::run_controls},
    };
    for (const Entry& e : entries) add_run_options(app.add_subcommand(e.name, e.help));

    CLI::App* plot = app.add_subcommand("plotdata", "convert result CSVs to plot-ready .dat");
    std::vector<std::string> plot_files;
    std::string plot_out = ".";
    plot->add_option("files", plot_files, "result CSV files")->required();
    plot->add_option("--out", plot_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plot->parsed()) {
            ssmlab::run_plotdata(plot_files, plot_out);
            return 0;
        }
        ssmlab::ExperimentConfig config = ssmlab::load_config(config_path);
        ssmlab::apply_overrides(config, overrides);
        for (const Entry& e : entries) {
            if (app.get_subcommand(e.name)->parsed()) {
                e.fn(config);
                return 0;
            }
        }
        print_error("internal", "no subcommand dispatched");
        return 1;
    } catch (const ssm::BudgetExceeded& e) {
        print_error("budget", e.what());
        return 3;
    } catch (const ssm::RecursionLimit& e) {
        print_error("budget", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        print_error("validation", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 1;
    }
}
