// Bernoulli measures on the symbolic space: cylinder masses, the symbolic
// local-dimension exponent, and the lower-Lq dimension.
#pragma once

#include <vector>

#include "ssm/counter_rng.hpp"
#include "ssm/ifs.hpp"

namespace ssm {

/// Probability vector on the alphabet. Construction validates p_i > 0 and
/// sum p_i = 1 within 1e-12.
struct BernoulliMeasure {
    std::vector<double> probabilities;

    explicit BernoulliMeasure(std::vector<double> p);

    /// The natural measure of an IFS: p_i = ratio_i^s with s the similarity
    /// dimension, so that cylinder mass equals cylinder diameter^s.
    static BernoulliMeasure natural(const SelfSimilarIFS& ifs);

    std::size_t arity() const { return probabilities.size(); }
    double probability(std::size_t i) const { return probabilities[i]; }

    void require_compatible(const SelfSimilarIFS& ifs) const;
};

/// Product of symbol probabilities along the word; 1 for the empty word.
double cylinder_mass(const BernoulliMeasure& measure, const Word& word);

struct LocalDimension {
    double s_prime;            // min_i log p_i / log ratio_i
    bool satisfies_assumption;  // s_prime > 1
};

/// Symbolic local-dimension exponent: the largest s' with
/// mass(w) <= ratio(w)^{s'} for every word (K = 1 holds by construction for
/// Bernoulli measures, since the per-symbol bound log p_i <= s' log ratio_i
/// sums along words). The flag reports whether the local dimension exceeds 1.
LocalDimension local_dimension_exponent(const BernoulliMeasure& measure,
                                        const SelfSimilarIFS& ifs);

/// Brute-force check of mass([w]) <= K * ratio(w)^{s_prime} over every word
/// of length <= max_length, in log space. Returns the worst signed slack
/// min_w (s_prime * log ratio(w) + log K - log mass(w)); nonnegative means
/// the bound holds.
double local_dimension_bound_slack(const BernoulliMeasure& measure, const SelfSimilarIFS& ifs,
                                   double s_prime, double k_constant, std::size_t max_length);

/// Lower-Lq dimension D(mu, q) for q > 1. For a Bernoulli measure the
/// defining liminf collapses because the depth-n moment sum factorizes:
///   sum_{|w|=n} mass(w)^q ratio(w)^{D(1-q)} = (sum_i p_i^q l_i^{D(1-q)})^n,
/// so D is the unique root of sum_i p_i^q l_i^{D(1-q)} = 1. The root is
/// found by bisection with residual <= 1e-10.
double lq_dimension(const BernoulliMeasure& measure, const SelfSimilarIFS& ifs, double q);

/// i.i.d. word of the given depth drawn from the measure.
Word sample_word(const BernoulliMeasure& measure, std::size_t depth, CounterRng& rng);

}  // namespace ssm
