// Deterministic self-similar iterated function systems on the line:
// the maps f_i(x) = ratio_i * x + translation_i, their similarity dimension,
// cylinder geometry and the unperturbed coding map.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssm/common.hpp"

namespace ssm {

struct BernoulliMeasure;  // bernoulli.hpp

using Symbol = std::uint8_t;  // 0-based internally, rendered 1-based in I/O

/// Finite word over the alphabet {0, ..., N-1}. The empty word is valid.
struct Word {
    std::vector<Symbol> symbols;

    Word() = default;
    explicit Word(std::vector<Symbol> s) : symbols(std::move(s)) {}
    Word(std::initializer_list<Symbol> s) : symbols(s) {}

    std::size_t length() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }

    /// Word of `index` interpreted in base `arity`, most significant digit
    /// first, zero-padded to `length` symbols. Inverse of enumeration order.
    static Word from_index(std::uint64_t index, std::size_t arity, std::size_t length);

    /// 1-based rendering: plain digits for arity <= 9, dot-separated otherwise.
    std::string to_string(std::size_t arity) const;
};

/// Contracting similarities f_i(x) = ratios[i] * x + translations[i].
/// Construction validates: every ratio in (0,1), equal lengths, N >= 2.
class SelfSimilarIFS {
public:
    SelfSimilarIFS(std::vector<double> ratios, std::vector<double> translations);

    std::size_t arity() const { return ratios_.size(); }
    const std::vector<double>& ratios() const { return ratios_; }
    const std::vector<double>& translations() const { return translations_; }
    double ratio(std::size_t i) const { return ratios_[i]; }
    double translation(std::size_t i) const { return translations_[i]; }

    double ratio_max() const { return ratio_max_; }
    double ratio_min() const { return ratio_min_; }
    double translation_abs_max() const { return translation_abs_max_; }
    bool equal_ratios() const { return ratio_min_ == ratio_max_; }

    /// Exact attractor hull: [min_i t_i/(1-l_i), max_i t_i/(1-l_i)].
    /// These are the fixed points of U -> max_i f_i(U) and L -> min_i f_i(L),
    /// hence the exact supremum/infimum of the attractor.
    Interval attractor_bounds() const { return bounds_; }

    /// Attractor hull when every map is translated by at most +-slack
    /// (used with a perturbation's support radius).
    Interval attractor_bounds(double slack) const;

    /// Tail envelope constant max_i|t_i| / (1 - ratio_max): every coding-map
    /// tail starting after a word w is bounded by ratio(w) times this.
    double tail_envelope() const { return tail_envelope_; }

    void require_word(const Word& word) const;  // throws on out-of-range symbol

private:
    std::vector<double> ratios_;
    std::vector<double> translations_;
    double ratio_max_ = 0.0;
    double ratio_min_ = 1.0;
    double translation_abs_max_ = 0.0;
    double tail_envelope_ = 0.0;
    Interval bounds_;
};

/// Unique s > 0 with sum_i ratios[i]^s = 1, by bisection on the strictly
/// decreasing map s -> sum ratios^s; residual at the returned s is <= 1e-12.
double similarity_dimension(const SelfSimilarIFS& ifs);

/// Product of the contraction ratios along the word; 1 for the empty word.
double cylinder_ratio(const SelfSimilarIFS& ifs, const Word& word);

/// Cylinder metric on the symbolic space, restricted to finite words: the
/// cylinder ratio of the longest common prefix. Words agreeing entirely are
/// at distance ratio(shorter word); the metric is an ultrametric.
double cylinder_metric(const SelfSimilarIFS& ifs, const Word& a, const Word& b);

struct Projection {
    double point;
    double tail_radius;
};

/// Depth-n truncation of the coding map: sum_{j<n} ratio(w^j) * t_{w_j},
/// with tail_radius = ratio_max^n * max|t| / (1 - ratio_max). Every infinite
/// continuation of the word projects within tail_radius of `point`.
Projection deterministic_project(const SelfSimilarIFS& ifs, const Word& word, std::size_t depth);

struct TypicalDimensions {
    double dim_set;      // min{1, s}
    double dim_measure;  // min{1, entropy / Lyapunov}
};

/// Reference calculator for the typical (exponential-separation) dimension
/// formulas. No separation condition is checked.
TypicalDimensions typical_dimensions(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure);

}  // namespace ssm
