#include "ssm/perturbation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ssm {

namespace {
// sin(u)/u with the removable singularity handled by series.
double sinc(double u) {
    if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}
}  // namespace

Perturbation::Perturbation(Kind kind, int order, double half_width)
    : kind_(kind), order_(order), half_width_(half_width) {
    if (!(half_width >= 0.0) || !std::isfinite(half_width))
        throw std::invalid_argument("Perturbation: half_width must be nonnegative and finite");
}

Perturbation Perturbation::uniform(double half_width) {
    if (!(half_width > 0.0)) throw std::invalid_argument("uniform law needs half_width > 0");
    return Perturbation(Kind::Uniform, 1, half_width);
}

Perturbation Perturbation::spline(int order, double half_width) {
    if (order < 2) throw std::invalid_argument("spline law needs order >= 2");
    if (!(half_width > 0.0)) throw std::invalid_argument("spline law needs half_width > 0");
    return Perturbation(Kind::Spline, order, half_width);
}

Perturbation Perturbation::none() { return Perturbation(Kind::Uniform, 1, 0.0); }

double Perturbation::decay_constant() const {
    if (half_width_ == 0.0) return 1.0;
    return std::pow((1.0 + half_width_) / half_width_, order_);
}

double Perturbation::fourier(double x) const {
    if (half_width_ == 0.0) return 1.0;  // point mass
    double base = sinc(half_width_ * x);
    double value = base;
    for (int k = 1; k < order_; ++k) value *= base;
    return value;
}

double Perturbation::sample(CounterRng& rng) const {
    if (half_width_ == 0.0) return 0.0;
    double sum = 0.0;
    for (int k = 0; k < order_; ++k) sum += rng.next_symmetric(half_width_);
    return sum;
}

DecayFit decay_exponent_estimate(const Perturbation& dist, double x_min, double x_max,
                                 std::size_t samples) {
    if (!(x_min > 0.0) || !(x_max > x_min) || samples < 8)
        throw std::invalid_argument("decay_exponent_estimate: degenerate grid");
    const double log_step = std::log(x_max / x_min) / static_cast<double>(samples - 1);
    std::vector<double> xs(samples), vs(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        xs[k] = x_min * std::exp(log_step * static_cast<double>(k));
        vs[k] = std::abs(dist.fourier(xs[k]));
    }
    // Envelope: local maxima of the sampled modulus.
    std::vector<std::size_t> peaks;
    for (std::size_t k = 1; k + 1 < samples; ++k) {
        if (vs[k] >= vs[k - 1] && vs[k] >= vs[k + 1] && vs[k] > 0.0) peaks.push_back(k);
    }
    if (peaks.size() < 2) throw std::invalid_argument("decay_exponent_estimate: too few envelope peaks");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k : peaks) {
        double lx = std::log(xs[k]);
        double ly = std::log(vs[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(peaks.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {-slope, peaks.size()};
}

}  // namespace ssm
