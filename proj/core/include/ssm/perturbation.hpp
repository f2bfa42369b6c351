// Compactly supported perturbation laws with closed-form Fourier transforms.
//
// The canonical family is the B-spline law of order m: the sum of m
// independent uniforms on [-a, a]. Its Fourier transform is sinc(a x)^m, an
// exact sampler is m uniform draws, and the polynomial decay order is
// exactly m. The uniform law (m = 1) is kept as the classical negative
// control: its transform decays only like 1/|x|.
#pragma once

#include "ssm/counter_rng.hpp"

#include <cstdint>

namespace ssm {

class Perturbation {
public:
    enum class Kind { Uniform, Spline };

    /// Uniform law on [-half_width, half_width]. Decay order 1.
    static Perturbation uniform(double half_width);

    /// Order-m B-spline law: sum of m uniforms on [-half_width, half_width].
    /// Support [-m*half_width, m*half_width], decay order m. Requires m >= 2.
    static Perturbation spline(int order, double half_width);

    /// Degenerate point mass at 0 (half_width = 0). Used as the
    /// zero-perturbation control; it has no Fourier decay at all.
    static Perturbation none();

    Kind kind() const { return kind_; }
    double half_width() const { return half_width_; }
    int order() const { return order_; }

    double support_radius() const { return order_ * half_width_; }

    /// Polynomial decay order M of |fourier|: 1 for uniform, m for spline,
    /// 0 for the degenerate point mass (no decay).
    int decay_order() const { return half_width_ == 0.0 ? 0 : order_; }

    /// Constant C with |fourier(x)| <= C / (1 + |x|)^M everywhere:
    /// |sinc(a x)|^m <= min(1, 1/(a|x|))^m gives C = ((1 + a) / a)^m.
    double decay_constant() const;

    /// Fourier transform E[e^{ix Theta}] = (sin(a x) / (a x))^m. Real by
    /// symmetry of the law; equals 1 at x = 0.
    double fourier(double x) const;

    /// One exact draw: sum of `order` uniforms on [-a, a].
    double sample(CounterRng& rng) const;

    /// Admissibility for the Fourier-decay assumption against a local
    /// dimension exponent: decay_order >= s_prime. The uniform law is never
    /// admissible when s_prime > 1.
    bool admissible_for(double s_prime) const { return decay_order() >= s_prime; }

private:
    Perturbation(Kind kind, int order, double half_width);

    Kind kind_;
    int order_;
    double half_width_;
};

struct DecayFit {
    double exponent;        // fitted M-hat
    std::size_t peak_count; // local maxima used in the regression
};

/// Least-squares decay exponent of |fourier| on a log-spaced grid over
/// [x_min, x_max]. The regression runs over the envelope of local maxima of
/// the sampled modulus, since the raw transform has zeros that make a direct
/// log fit ill-posed. Throws on degenerate grids.
DecayFit decay_exponent_estimate(const Perturbation& dist, double x_min, double x_max,
                                 std::size_t samples);

}  // namespace ssm
