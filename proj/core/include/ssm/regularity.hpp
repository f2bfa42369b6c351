// Density estimation and regularity diagnostics for atomic approximations:
// ball densities, the exact smoothed density Z_r, Hoelder exponent fits,
// Kolmogorov moment scaling, Lebesgue upper bounds and interior-interval
// detection.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ssm/common.hpp"
#include "ssm/realization.hpp"

namespace ssm {

/// Atom positions sorted with prefix weights; the query structure behind the
/// density estimators. Ball boundaries are inclusive on both ends.
class SortedAtoms {
public:
    explicit SortedAtoms(const AtomicApproximation& cloud);

    double mass_interval(double lo, double hi) const;  // closed interval
    double mass_ball(double x, double r) const { return mass_interval(x - r, x + r); }

    /// nu(B(x,r)) / (2r).
    double ball_density(double x, double r) const;

    /// Z_r(x) = (1 / 4r^3) * integral_{r(1-r)}^{r(1+r)} nu(B(x,l)) dl for
    /// 0 < r < 1. nu(B(x,l)) is a step function of l with jumps at the atom
    /// distances, so the integral is an exact finite sum:
    ///   mass(d <= A) * (B - A) + sum_{A < d <= B} w * (B - d),
    /// with A = r(1-r), B = r(1+r).
    double smoothed_density(double x, double r) const;

    double min_position() const { return positions_.empty() ? 0.0 : positions_.front(); }
    double max_position() const { return positions_.empty() ? 0.0 : positions_.back(); }

private:
    std::vector<double> positions_;
    std::vector<double> weights_;     // aligned with positions_
    std::vector<double> cum_weight_;  // cum_weight_[k] = sum of first k weights
};

double ball_density(const AtomicApproximation& cloud, double x, double r);
double smoothed_density(const AtomicApproximation& cloud, double x, double r);

struct DensityMethod {
    enum class Kind { Ball, Smoothed, Fourier };
    Kind kind;
    double parameter;  // radius r for Ball/Smoothed, cutoff n for Fourier

    std::string label() const;
};

/// Density values on a strictly increasing grid, tagged with how they were
/// produced. Ball and smoothed values are nonnegative by construction; the
/// truncated Fourier inversion may ring below zero.
struct DensityEstimate {
    std::vector<double> grid;
    std::vector<double> values;
    DensityMethod method;
    std::uint64_t seed = 0;
    std::size_t depth = 0;
};

std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

DensityEstimate density_estimate(const AtomicApproximation& cloud, std::vector<double> grid,
                                 DensityMethod method, std::uint64_t seed);

/// CSV export: columns x,value plus method metadata in leading comments.
void write_density_csv(std::ostream& out, const DensityEstimate& estimate,
                       const std::string& digest = {});

struct HoelderFit {
    double exponent;  // +infinity sentinel when the input is flat
    double residual;  // rms residual of the log-log fit
    bool flat;
};

/// Multiscale modulus regression: slope of log sup_{|i-j|=lag} |f_i - f_j|
/// against log(lag * step) over dyadic lags. Needs >= 16 grid points.
HoelderFit hoelder_exponent_estimate(const DensityEstimate& density);

struct MomentScaling {
    std::vector<double> separations;            // |a - b| per pair
    std::vector<double> mean_moments;           // Monte Carlo averages
    std::vector<std::vector<double>> samples;   // [pair][trial]
    double alpha_hat;                           // slope of log mean vs log sep
    double intercept;
};

/// Kolmogorov moment scaling: for each pair (a, b), the Monte Carlo average
/// over `trials` independent realizations of (f(a) - f(b))^p, where f is the
/// truncated inverse density at `cutoff` of the depth-`depth` cloud. Pairs
/// with a == b contribute exactly zero and are excluded from the regression.
MomentScaling moment_scaling(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure,
                             const Perturbation& dist,
                             std::span<const std::pair<double, double>> pairs, int p_order,
                             std::size_t trials, std::size_t depth, double cutoff,
                             RealizationSeed base_seed,
                             std::uint64_t budget = kDefaultAtomBudget);

struct BootstrapCI {
    double lo;
    double hi;
};

/// Percentile bootstrap confidence interval for alpha_hat: resample trials
/// with replacement, recompute per-pair means and refit the log-log slope.
/// Deterministic given the seed.
BootstrapCI bootstrap_alpha_ci(const MomentScaling& scaling, std::size_t resamples,
                               double confidence, std::uint64_t seed);

/// Total length of a merged cover: an upper bound for the Lebesgue measure
/// of the realized attractor at this depth.
double lebesgue_upper_bound(const std::vector<Interval>& cover);

struct InteriorCandidate {
    std::optional<Interval> interval;
    std::size_t certified_depth;  // number of covers the candidate survived
};

/// Detection floor for interior candidates: 1% of the perturbed attractor
/// hull. Finite-depth covers always contain slivers the width of a few
/// deepest-level cells (merged sibling cells shrink geometrically with
/// depth), while a genuine interior interval stays a fixed fraction of the
/// attractor; the fixed-fraction floor separates the two regimes at every
/// depth.
double interior_width_floor(const SelfSimilarIFS& ifs, const Perturbation& dist);

/// Largest open interval contained in every supplied cover (shallow to deep,
/// same seed). Reported as evidence only: a finite tower of covers cannot
/// certify membership in the limit attractor. Candidates no wider than
/// `width_floor` are reported as none.
InteriorCandidate interior_candidate(std::span<const std::vector<Interval>> covers,
                                     double width_floor);

}  // namespace ssm
