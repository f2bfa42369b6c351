#include "ssm/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ssm/csv.hpp"
#include "ssm/spectral.hpp"

namespace ssm {

namespace {

struct LinearFit {
    double slope;
    double intercept;
    double residual_rms;
};

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double rss = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double e = ys[k] - (slope * xs[k] + intercept);
        rss += e * e;
    }
    return {slope, intercept, std::sqrt(rss / n)};
}

}  // namespace

SortedAtoms::SortedAtoms(const AtomicApproximation& cloud) {
    std::vector<std::size_t> order(cloud.atoms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cloud.atoms[a].position < cloud.atoms[b].position;
    });
    positions_.resize(order.size());
    weights_.resize(order.size());
    cum_weight_.resize(order.size() + 1);
    cum_weight_[0] = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        positions_[k] = cloud.atoms[order[k]].position;
        weights_[k] = cloud.atoms[order[k]].weight;
        cum_weight_[k + 1] = cum_weight_[k] + weights_[k];
    }
}

double SortedAtoms::mass_interval(double lo, double hi) const {
    if (hi < lo) return 0.0;
    const auto first = std::lower_bound(positions_.begin(), positions_.end(), lo);
    const auto last = std::upper_bound(positions_.begin(), positions_.end(), hi);
    return cum_weight_[static_cast<std::size_t>(last - positions_.begin())] -
           cum_weight_[static_cast<std::size_t>(first - positions_.begin())];
}

double SortedAtoms::ball_density(double x, double r) const {
    if (!(r > 0.0)) throw std::invalid_argument("ball_density: radius must be positive");
    return mass_ball(x, r) / (2.0 * r);
}

double SortedAtoms::smoothed_density(double x, double r) const {
    if (!(r > 0.0) || !(r < 1.0))
        throw std::invalid_argument("smoothed_density: need 0 < r < 1");
    const double a = r * (1.0 - r);
    const double b = r * (1.0 + r);
    double integral = mass_ball(x, a) * (b - a);
    // Atoms with distance in (a, b] contribute w * (b - distance).
    auto annulus = [&](double seg_lo, double seg_hi, bool lo_strict, bool hi_strict) {
        auto first = lo_strict ? std::upper_bound(positions_.begin(), positions_.end(), seg_lo)
                               : std::lower_bound(positions_.begin(), positions_.end(), seg_lo);
        auto last = hi_strict ? std::lower_bound(positions_.begin(), positions_.end(), seg_hi)
                              : std::upper_bound(positions_.begin(), positions_.end(), seg_hi);
        for (auto it = first; it < last; ++it) {
            const std::size_t k = static_cast<std::size_t>(it - positions_.begin());
            integral += weights_[k] * (b - std::abs(positions_[k] - x));
        }
    };
    annulus(x - b, x - a, false, true);  // positions in [x-b, x-a)
    annulus(x + a, x + b, true, false);  // positions in (x+a, x+b]
    return integral / (4.0 * r * r * r);
}

double ball_density(const AtomicApproximation& cloud, double x, double r) {
    return SortedAtoms(cloud).ball_density(x, r);
}

double smoothed_density(const AtomicApproximation& cloud, double x, double r) {
    return SortedAtoms(cloud).smoothed_density(x, r);
}

std::string DensityMethod::label() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Ball: out << "ball(r=" << format_sig17(parameter) << ")"; break;
        case Kind::Smoothed: out << "smoothed(r=" << format_sig17(parameter) << ")"; break;
        case Kind::Fourier: out << "fourier(cutoff=" << format_sig17(parameter) << ")"; break;
    }
    return out.str();
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
    if (count < 2 || !(hi > lo)) throw std::invalid_argument("uniform_grid: degenerate range");
    std::vector<double> grid(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) grid[k] = lo + step * static_cast<double>(k);
    return grid;
}

DensityEstimate density_estimate(const AtomicApproximation& cloud, std::vector<double> grid,
                                 DensityMethod method, std::uint64_t seed) {
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1]))
            throw std::invalid_argument("density_estimate: grid must be strictly increasing");
    }
    DensityEstimate est;
    est.grid = std::move(grid);
    est.values.resize(est.grid.size());
    est.method = method;
    est.seed = seed;
    est.depth = cloud.depth;
    if (method.kind == DensityMethod::Kind::Fourier) {
        for (std::size_t k = 0; k < est.grid.size(); ++k)
            est.values[k] = truncated_inverse_density(cloud, est.grid[k], method.parameter);
    } else {
        SortedAtoms sorted(cloud);
        for (std::size_t k = 0; k < est.grid.size(); ++k) {
            est.values[k] = method.kind == DensityMethod::Kind::Ball
                                ? sorted.ball_density(est.grid[k], method.parameter)
                                : sorted.smoothed_density(est.grid[k], method.parameter);
        }
    }
    return est;
}

void write_density_csv(std::ostream& out, const DensityEstimate& estimate,
                       const std::string& digest) {
    if (!digest.empty()) out << "# config_digest=" << digest << "\n";
    out << "# method=" << estimate.method.label() << " seed=" << estimate.seed
        << " depth=" << estimate.depth << "\n";
    out << "x,value\n";
    for (std::size_t k = 0; k < estimate.grid.size(); ++k)
        out << format_sig17(estimate.grid[k]) << ',' << format_sig17(estimate.values[k]) << '\n';
}

HoelderFit hoelder_exponent_estimate(const DensityEstimate& density) {
    const std::size_t n = density.grid.size();
    if (n < 16) throw std::invalid_argument("hoelder_exponent_estimate: need >= 16 grid points");
    std::vector<double> log_delta, log_sup;
    bool any_positive = false;
    for (std::size_t lag = 1; lag <= (n - 1) / 4; lag *= 2) {
        double sup = 0.0;
        double delta = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) {
            sup = std::max(sup, std::abs(density.values[i + lag] - density.values[i]));
            delta = std::max(delta, density.grid[i + lag] - density.grid[i]);
        }
        if (sup > 0.0) {
            any_positive = true;
            log_delta.push_back(std::log(delta));
            log_sup.push_back(std::log(sup));
        }
    }
    if (!any_positive || log_delta.size() < 2) {
        return {std::numeric_limits<double>::infinity(), 0.0, true};
    }
    LinearFit fit = linear_fit(log_delta, log_sup);
    return {fit.slope, fit.residual_rms, false};
}

MomentScaling moment_scaling(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure,
                             const Perturbation& dist,
                             std::span<const std::pair<double, double>> pairs, int p_order,
                             std::size_t trials, std::size_t depth, double cutoff,
                             RealizationSeed base_seed, std::uint64_t budget) {
    if (p_order < 2 || p_order % 2 != 0)
        throw std::invalid_argument("moment_scaling: p must be an even integer >= 2");
    if (trials < 100) throw std::invalid_argument("moment_scaling: need at least 100 trials");
    const Interval hull = ifs.attractor_bounds(dist.support_radius());
    const double slack = 0.05 * std::max(1.0, hull.length());
    for (const auto& [a, b] : pairs) {
        if (a < hull.lo - slack || a > hull.hi + slack || b < hull.lo - slack ||
            b > hull.hi + slack)
            throw std::invalid_argument("moment_scaling: pair outside the support envelope");
    }

    // Distinct evaluation points, shared across pairs within a trial.
    std::vector<double> points;
    for (const auto& [a, b] : pairs) {
        points.push_back(a);
        points.push_back(b);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    auto point_index = [&](double v) {
        return static_cast<std::size_t>(
            std::lower_bound(points.begin(), points.end(), v) - points.begin());
    };

    MomentScaling result;
    result.samples.assign(pairs.size(), std::vector<double>(trials, 0.0));
    for (std::size_t trial = 0; trial < trials; ++trial) {
        AtomicApproximation cloud = atomic_approximation(
            ifs, measure, dist, RealizationSeed{base_seed.value + trial}, depth, budget);
        std::vector<double> f(points.size());
        for (std::size_t k = 0; k < points.size(); ++k)
            f[k] = truncated_inverse_density(cloud, points[k], cutoff);
        for (std::size_t pair_k = 0; pair_k < pairs.size(); ++pair_k) {
            const double diff = f[point_index(pairs[pair_k].first)] -
                                f[point_index(pairs[pair_k].second)];
            double moment = 1.0;
            for (int e = 0; e < p_order; ++e) moment *= diff;
            result.samples[pair_k][trial] = moment;
        }
    }

    result.separations.resize(pairs.size());
    result.mean_moments.resize(pairs.size());
    std::vector<double> log_sep, log_moment;
    for (std::size_t pair_k = 0; pair_k < pairs.size(); ++pair_k) {
        result.separations[pair_k] = std::abs(pairs[pair_k].first - pairs[pair_k].second);
        double mean = 0.0;
        for (double v : result.samples[pair_k]) mean += v;
        mean /= static_cast<double>(trials);
        result.mean_moments[pair_k] = mean;
        if (result.separations[pair_k] > 0.0 && mean > 0.0) {
            log_sep.push_back(std::log(result.separations[pair_k]));
            log_moment.push_back(std::log(mean));
        }
    }
    if (log_sep.size() >= 2) {
        LinearFit fit = linear_fit(log_sep, log_moment);
        result.alpha_hat = fit.slope;
        result.intercept = fit.intercept;
    } else {
        result.alpha_hat = 0.0;
        result.intercept = 0.0;
    }
    return result;
}

BootstrapCI bootstrap_alpha_ci(const MomentScaling& scaling, std::size_t resamples,
                               double confidence, std::uint64_t seed) {
    if (scaling.samples.empty() || scaling.samples.front().empty())
        throw std::invalid_argument("bootstrap_alpha_ci: empty sample matrix");
    if (!(confidence > 0.0) || !(confidence < 1.0))
        throw std::invalid_argument("bootstrap_alpha_ci: confidence must lie in (0,1)");
    const std::size_t n_pairs = scaling.samples.size();
    const std::size_t n_trials = scaling.samples.front().size();
    CounterRng rng(detail::mix64(seed ^ 0x626F6F74ULL));
    std::vector<double> slopes;
    slopes.reserve(resamples);
    std::vector<std::size_t> draw(n_trials);
    for (std::size_t b = 0; b < resamples; ++b) {
        for (std::size_t t = 0; t < n_trials; ++t)
            draw[t] = static_cast<std::size_t>(rng.next_unit() * static_cast<double>(n_trials));
        std::vector<double> log_sep, log_moment;
        for (std::size_t k = 0; k < n_pairs; ++k) {
            double mean = 0.0;
            for (std::size_t t : draw) mean += scaling.samples[k][t];
            mean /= static_cast<double>(n_trials);
            if (scaling.separations[k] > 0.0 && mean > 0.0) {
                log_sep.push_back(std::log(scaling.separations[k]));
                log_moment.push_back(std::log(mean));
            }
        }
        if (log_sep.size() >= 2) slopes.push_back(linear_fit(log_sep, log_moment).slope);
    }
    if (slopes.size() < 2) throw std::runtime_error("bootstrap_alpha_ci: too few valid resamples");
    std::sort(slopes.begin(), slopes.end());
    auto quantile = [&](double q) {
        const double idx = q * static_cast<double>(slopes.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(idx);
        const std::size_t hi = std::min(lo + 1, slopes.size() - 1);
        const double frac = idx - static_cast<double>(lo);
        return slopes[lo] * (1.0 - frac) + slopes[hi] * frac;
    };
    const double tail = (1.0 - confidence) / 2.0;
    return {quantile(tail), quantile(1.0 - tail)};
}

double lebesgue_upper_bound(const std::vector<Interval>& cover) { return total_length(cover); }

double interior_width_floor(const SelfSimilarIFS& ifs, const Perturbation& dist) {
    return 0.01 * ifs.attractor_bounds(dist.support_radius()).length();
}

InteriorCandidate interior_candidate(std::span<const std::vector<Interval>> covers,
                                     double width_floor) {
    if (covers.empty()) return {std::nullopt, 0};
    std::vector<Interval> intersection = covers.front();
    for (std::size_t k = 1; k < covers.size(); ++k)
        intersection = intersect_interval_sets(intersection, covers[k]);
    const Interval* best = nullptr;
    for (const Interval& iv : intersection) {
        if (!best || iv.length() > best->length()) best = &iv;
    }
    if (!best || best->length() <= width_floor) return {std::nullopt, covers.size()};
    return {*best, covers.size()};
}

}  // namespace ssm
