// Characteristic functions of the random projected measure.
//
// Three routes are provided:
//   * empirical_characteristic: the transform of one realized atomic cloud;
//   * mean_characteristic (G) and pair_characteristic (H): exact averaged
//     transforms, the order-1 and order-2 instances of the product structure
//     obtained by integrating the perturbation tree level by level;
//   * truncated_inverse_density: the frequency-truncated inverse transform,
//     summable in closed form against an atomic cloud (Dirichlet kernel).
#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ssm/bernoulli.hpp"
#include "ssm/ifs.hpp"
#include "ssm/perturbation.hpp"
#include "ssm/realization.hpp"

namespace ssm {

using Complex = std::complex<double>;

/// sum_w weight_w * e^{i xi x_w}. Modulus <= 1.
Complex empirical_characteristic(const AtomicApproximation& cloud, double xi);

/// One pass over the cloud for several frequencies at once.
std::vector<Complex> empirical_characteristic(const AtomicApproximation& cloud,
                                              std::span<const double> xis);

/// Unlimited recursion depth sentinel for the averaged transforms.
inline constexpr std::size_t kNoDepthCap = static_cast<std::size_t>(-1);

/// G(xi) = E_Theta E_mu e^{i xi Pi_Theta(w)}, evaluated through the exact
/// one-level conditioning
///   G(xi) = fourier(xi) * sum_i p_i e^{i xi t_i} G(ratio_i * xi),
/// with base value 1 once |xi| * (max|t| + supp) / (1 - ratio_max) < tol
/// (error bound |e^{i eta} - 1| <= |eta|). Distinct ratio products are
/// memoized on their exponent vectors, so the cost is polynomial in depth.
///
/// If max_depth is given, the recursion instead truncates to 1 at that exact
/// tree depth; the result is then exactly the expectation of the depth-capped
/// atomic cloud's characteristic function.
///
/// Throws RecursionLimit when the evaluation exceeds its guards.
Complex mean_characteristic(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure,
                            const Perturbation& dist, double xi, double tol = 1e-8,
                            std::size_t max_depth = kNoDepthCap);

/// H(xi1, xi2) = E[nu-hat(xi1) * nu-hat(xi2)] (no conjugation), via the split
/// at the first level:
///   H(xi1,xi2) = fourier(xi1+xi2) * [ sum_i p_i^2 e^{i(xi1+xi2)t_i} H(l_i xi1, l_i xi2)
///              + sum_{i != j} p_i p_j e^{i(xi1 t_i + xi2 t_j)} G(l_i xi1) G(l_j xi2) ],
/// the cross terms factorizing because the two branches share no tree vertex
/// below the split. E|nu-hat(xi)|^2 is H(xi, -xi).
Complex pair_characteristic(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure,
                            const Perturbation& dist, double xi1, double xi2, double tol = 1e-8,
                            std::size_t max_depth = kNoDepthCap);

/// Frequency-truncated inverse transform of an atomic cloud at cutoff n:
///   f(n, x) = sum_w weight_w * D_n(x_w - x),  D_n(u) = sin(n u) / (pi u),
/// with D_n(0) = n / pi. Exact (no quadrature error).
double truncated_inverse_density(const AtomicApproximation& cloud, double x, double cutoff);

/// A sampled characteristic function with its provenance tag
/// (e.g. "empirical(seed=42)", "mean_oracle", "pair_oracle").
struct SpectralProfile {
    std::vector<double> frequencies;
    std::vector<Complex> values;
    std::string provenance;
};

/// CSV export: columns xi,re,im,provenance (17 significant digits).
void write_spectral_csv(std::ostream& out, std::span<const SpectralProfile> profiles,
                        const std::string& digest = {});

}  // namespace ssm
