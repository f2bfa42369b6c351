#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "ssm/csv.hpp"

namespace ssmlab {

using nlohmann::json;

std::vector<double> FrequencyGrid::values() const {
    if (!explicit_values.empty()) return explicit_values;
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = min;
        return out;
    }
    for (std::size_t k = 0; k < points; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(points - 1);
        out[k] = log_scale ? min * std::pow(max / min, t) : min + (max - min) * t;
    }
    return out;
}

ssm::SelfSimilarIFS ExperimentConfig::ifs() const { return {ratios, translations}; }

ssm::BernoulliMeasure ExperimentConfig::measure() const {
    if (natural_measure) return ssm::BernoulliMeasure::natural(ifs());
    return ssm::BernoulliMeasure(probabilities);
}

ssm::Perturbation ExperimentConfig::perturbation() const {
    if (perturbation_kind == "none" || half_width == 0.0) return ssm::Perturbation::none();
    if (perturbation_kind == "uniform") return ssm::Perturbation::uniform(half_width);
    if (perturbation_kind == "spline")
        return ssm::Perturbation::spline(perturbation_order, half_width);
    throw std::invalid_argument("perturbation.kind must be uniform, spline or none");
}

void ExperimentConfig::validate() const {
    ifs();           // throws with its own message on bad ratios/translations
    measure();
    perturbation();
    if (trials == 0) throw std::invalid_argument("seeds.trials must be positive");
    if (depth == 0) throw std::invalid_argument("depth must be positive");
    if (depth_min == 0 || depth_min > depth)
        throw std::invalid_argument("depth_min must lie in [1, depth]");
    if (frequencies.explicit_values.empty()) {
        if (!(frequencies.min > 0.0) || !(frequencies.max > frequencies.min) ||
            frequencies.points < 1)
            throw std::invalid_argument("frequencies range is degenerate");
    }
    if (grid.points < 16) throw std::invalid_argument("grid.points must be >= 16");
    if (grid.min && grid.max && !(*grid.max > *grid.min))
        throw std::invalid_argument("grid.max must exceed grid.min");
    if (!(ball_radius_tails > 0.0))
        throw std::invalid_argument("ball_radius_tails must be positive");
    if (!(fourier_cutoff > 0.0)) throw std::invalid_argument("fourier_cutoff must be positive");
    for (double q : lq_exponents)
        if (!(q > 1.0)) throw std::invalid_argument("lq_exponents must all exceed 1");
    if (moment.order < 2 || moment.order % 2 != 0)
        throw std::invalid_argument("moment.order must be an even integer >= 2");
    if (!(moment.sep_min > 0.0) || !(moment.sep_max > moment.sep_min) || moment.sep_points < 3)
        throw std::invalid_argument("moment separations are degenerate");
    if (threads == 0) throw std::invalid_argument("threads must be positive");
    if (atom_budget == 0) throw std::invalid_argument("atom_budget must be positive");
}

json ExperimentConfig::resolved() const {
    json j;
    j["ifs"] = {{"ratios", ratios}, {"translations", translations}};
    if (natural_measure)
        j["measure"] = {{"type", "natural"}};
    else
        j["measure"] = {{"type", "explicit"}, {"probabilities", probabilities}};
    j["perturbation"] = {{"kind", perturbation_kind},
                         {"order", perturbation_order},
                         {"half_width", half_width}};
    j["seeds"] = {{"base", base_seed}, {"trials", trials}};
    j["depth"] = depth;
    j["depth_min"] = depth_min;
    if (frequencies.explicit_values.empty()) {
        j["frequencies"] = {{"min", frequencies.min},
                            {"max", frequencies.max},
                            {"points", frequencies.points},
                            {"scale", frequencies.log_scale ? "log" : "linear"}};
    } else {
        j["frequencies"] = {{"values", frequencies.explicit_values}};
    }
    j["grid"] = json::object();
    if (grid.min) j["grid"]["min"] = *grid.min;
    if (grid.max) j["grid"]["max"] = *grid.max;
    j["grid"]["points"] = grid.points;
    j["ball_radius_tails"] = ball_radius_tails;
    j["fourier_cutoff"] = fourier_cutoff;
    j["lq_exponents"] = lq_exponents;
    j["moment"] = json::object();
    j["moment"]["order"] = moment.order;
    if (moment.base_point) j["moment"]["base_point"] = *moment.base_point;
    j["moment"]["separations"] = {{"min", moment.sep_min},
                                  {"max", moment.sep_max},
                                  {"points", moment.sep_points}};
    j["output_dir"] = output_dir;
    j["atom_budget"] = atom_budget;
    j["threads"] = threads;
    return j;
}

std::string ExperimentConfig::digest() const {
    // The digest covers only result-determining fields: where the files land
    // and how many workers computed them must not change a single byte.
    json j = resolved();
    j.erase("output_dir");
    j.erase("threads");
    return ssm::fnv1a_hex(j.dump());
}

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key()))
            throw std::invalid_argument("unknown config key " + where + it.key());
    }
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }

    ExperimentConfig c;
    reject_unknown_keys(j, {"ifs", "measure", "perturbation", "seeds", "depth", "depth_min",
                            "frequencies", "grid", "ball_radius_tails", "fourier_cutoff",
                            "lq_exponents", "moment", "output_dir", "atom_budget", "threads"},
                        "");
    if (!j.contains("ifs")) throw std::invalid_argument("config requires an ifs section");
    reject_unknown_keys(j["ifs"], {"ratios", "translations"}, "ifs.");
    c.ratios = j["ifs"].at("ratios").get<std::vector<double>>();
    c.translations = j["ifs"].at("translations").get<std::vector<double>>();

    if (j.contains("measure")) {
        reject_unknown_keys(j["measure"], {"type", "probabilities"}, "measure.");
        const std::string type = j["measure"].value("type", "natural");
        if (type == "natural") {
            c.natural_measure = true;
        } else if (type == "explicit") {
            c.natural_measure = false;
            c.probabilities = j["measure"].at("probabilities").get<std::vector<double>>();
        } else {
            throw std::invalid_argument("measure.type must be natural or explicit");
        }
    }
    if (j.contains("perturbation")) {
        reject_unknown_keys(j["perturbation"], {"kind", "order", "half_width"}, "perturbation.");
        c.perturbation_kind = j["perturbation"].value("kind", c.perturbation_kind);
        c.perturbation_order = j["perturbation"].value("order", c.perturbation_order);
        c.half_width = j["perturbation"].value("half_width", c.half_width);
    }
    if (j.contains("seeds")) {
        reject_unknown_keys(j["seeds"], {"base", "trials"}, "seeds.");
        c.base_seed = j["seeds"].value("base", c.base_seed);
        c.trials = j["seeds"].value("trials", c.trials);
    }
    c.depth = j.value("depth", c.depth);
    c.depth_min = j.value("depth_min", std::min(c.depth_min, c.depth));
    if (j.contains("frequencies")) {
        reject_unknown_keys(j["frequencies"], {"min", "max", "points", "scale", "values"},
                            "frequencies.");
        if (j["frequencies"].contains("values")) {
            c.frequencies.explicit_values =
                j["frequencies"]["values"].get<std::vector<double>>();
        } else {
            c.frequencies.min = j["frequencies"].value("min", c.frequencies.min);
            c.frequencies.max = j["frequencies"].value("max", c.frequencies.max);
            c.frequencies.points = j["frequencies"].value("points", c.frequencies.points);
            c.frequencies.log_scale = j["frequencies"].value("scale", "log") == "log";
        }
    }
    if (j.contains("grid")) {
        reject_unknown_keys(j["grid"], {"min", "max", "points"}, "grid.");
        if (j["grid"].contains("min") && !j["grid"]["min"].is_null())
            c.grid.min = j["grid"]["min"].get<double>();
        if (j["grid"].contains("max") && !j["grid"]["max"].is_null())
            c.grid.max = j["grid"]["max"].get<double>();
        c.grid.points = j["grid"].value("points", c.grid.points);
    }
    c.ball_radius_tails = j.value("ball_radius_tails", c.ball_radius_tails);
    c.fourier_cutoff = j.value("fourier_cutoff", c.fourier_cutoff);
    if (j.contains("lq_exponents")) c.lq_exponents = j["lq_exponents"].get<std::vector<double>>();
    if (j.contains("moment")) {
        reject_unknown_keys(j["moment"], {"order", "base_point", "separations"}, "moment.");
        c.moment.order = j["moment"].value("order", c.moment.order);
        if (j["moment"].contains("base_point") && !j["moment"]["base_point"].is_null())
            c.moment.base_point = j["moment"]["base_point"].get<double>();
        if (j["moment"].contains("separations")) {
            const json& s = j["moment"]["separations"];
            reject_unknown_keys(s, {"min", "max", "points"}, "moment.separations.");
            c.moment.sep_min = s.value("min", c.moment.sep_min);
            c.moment.sep_max = s.value("max", c.moment.sep_max);
            c.moment.sep_points = s.value("points", c.moment.sep_points);
        }
    }
    c.output_dir = j.value("output_dir", c.output_dir);
    c.atom_budget = j.value("atom_budget", c.atom_budget);
    c.threads = j.value("threads", c.threads);
    return c;
}

void apply_overrides(ExperimentConfig& config, const CliOverrides& overrides) {
    if (overrides.seed) config.base_seed = *overrides.seed;
    if (overrides.trials) config.trials = *overrides.trials;
    if (overrides.depth) {
        config.depth = *overrides.depth;
        config.depth_min = std::min(config.depth_min, config.depth);
    }
    if (overrides.out) config.output_dir = *overrides.out;
    if (overrides.threads) config.threads = *overrides.threads;
}

}  // namespace ssmlab
