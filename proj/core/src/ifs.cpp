#include "ssm/ifs.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ssm/bernoulli.hpp"

namespace ssm {

Word Word::from_index(std::uint64_t index, std::size_t arity, std::size_t length) {
    Word w;
    w.symbols.resize(length);
    for (std::size_t j = length; j-- > 0;) {
        w.symbols[j] = static_cast<Symbol>(index % arity);
        index /= arity;
    }
    return w;
}

std::string Word::to_string(std::size_t arity) const {
    std::ostringstream out;
    bool dotted = arity > 9;
    for (std::size_t j = 0; j < symbols.size(); ++j) {
        if (dotted && j > 0) out << '.';
        out << static_cast<unsigned>(symbols[j]) + 1;
    }
    return out.str();
}

SelfSimilarIFS::SelfSimilarIFS(std::vector<double> ratios, std::vector<double> translations)
    : ratios_(std::move(ratios)), translations_(std::move(translations)) {
    if (ratios_.size() != translations_.size())
        throw std::invalid_argument("SelfSimilarIFS: ratios and translations differ in length");
    if (ratios_.size() < 2) throw std::invalid_argument("SelfSimilarIFS: need at least 2 maps");
    for (double l : ratios_) {
        if (!(l > 0.0) || !(l < 1.0) || !std::isfinite(l))
            throw std::invalid_argument("SelfSimilarIFS: every ratio must lie strictly in (0,1)");
    }
    for (double t : translations_) {
        if (!std::isfinite(t))
            throw std::invalid_argument("SelfSimilarIFS: translations must be finite");
    }
    for (std::size_t i = 0; i < ratios_.size(); ++i) {
        ratio_max_ = std::max(ratio_max_, ratios_[i]);
        ratio_min_ = std::min(ratio_min_, ratios_[i]);
        translation_abs_max_ = std::max(translation_abs_max_, std::abs(translations_[i]));
    }
    tail_envelope_ = translation_abs_max_ / (1.0 - ratio_max_);
    bounds_ = attractor_bounds(0.0);
}

Interval SelfSimilarIFS::attractor_bounds(double slack) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ratios_.size(); ++i) {
        lo = std::min(lo, (translations_[i] - slack) / (1.0 - ratios_[i]));
        hi = std::max(hi, (translations_[i] + slack) / (1.0 - ratios_[i]));
    }
    return {lo, hi};
}

void SelfSimilarIFS::require_word(const Word& word) const {
    for (Symbol s : word.symbols) {
        if (s >= arity()) throw std::invalid_argument("word symbol out of alphabet range");
    }
}

double similarity_dimension(const SelfSimilarIFS& ifs) {
    const auto& ratios = ifs.ratios();
    auto moment = [&](double s) {
        double sum = 0.0;
        for (double l : ratios) sum += std::pow(l, s);
        return sum;
    };
    const double n = static_cast<double>(ratios.size());
    double lo = 0.0;  // moment(0) = N > 1
    double hi = n * std::log(n) / std::log(1.0 / ifs.ratio_max());
    // moment(hi) <= N * ratio_max^hi = N * exp(-N log N) < 1 for N >= 2.
    while (moment(hi) >= 1.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (moment(mid) >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double s = 0.5 * (lo + hi);
    return std::abs(moment(lo) - 1.0) < std::abs(moment(s) - 1.0) ? lo : s;
}

double cylinder_ratio(const SelfSimilarIFS& ifs, const Word& word) {
    ifs.require_word(word);
    double prod = 1.0;
    for (Symbol s : word.symbols) prod *= ifs.ratio(s);
    return prod;
}

double cylinder_metric(const SelfSimilarIFS& ifs, const Word& a, const Word& b) {
    ifs.require_word(a);
    ifs.require_word(b);
    double prod = 1.0;
    const std::size_t common = std::min(a.length(), b.length());
    for (std::size_t j = 0; j < common; ++j) {
        if (a.symbols[j] != b.symbols[j]) break;
        prod *= ifs.ratio(a.symbols[j]);
    }
    return prod;
}

Projection deterministic_project(const SelfSimilarIFS& ifs, const Word& word, std::size_t depth) {
    ifs.require_word(word);
    if (word.length() < depth)
        throw std::invalid_argument("deterministic_project: word shorter than requested depth");
    double point = 0.0;
    double scale = 1.0;
    for (std::size_t j = 0; j < depth; ++j) {
        point += scale * ifs.translation(word.symbols[j]);
        scale *= ifs.ratio(word.symbols[j]);
    }
    double tail = std::pow(ifs.ratio_max(), static_cast<double>(depth)) * ifs.tail_envelope();
    return {point, tail};
}

TypicalDimensions typical_dimensions(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure) {
    measure.require_compatible(ifs);
    const double s = similarity_dimension(ifs);
    double entropy = 0.0;
    double lyapunov = 0.0;
    for (std::size_t i = 0; i < ifs.arity(); ++i) {
        const double p = measure.probability(i);
        entropy += -p * std::log(p);
        lyapunov += -p * std::log(ifs.ratio(i));
    }
    return {std::min(1.0, s), std::min(1.0, entropy / lyapunov)};
}

std::vector<Interval> merge_intervals(std::vector<Interval> intervals) {
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const Interval& iv : intervals) {
        if (iv.empty()) continue;
        if (!merged.empty() && iv.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    return merged;
}

std::vector<Interval> intersect_interval_sets(const std::vector<Interval>& a,
                                              const std::vector<Interval>& b) {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        double lo = std::max(a[i].lo, b[j].lo);
        double hi = std::min(a[i].hi, b[j].hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    return out;
}

double total_length(const std::vector<Interval>& set) {
    double sum = 0.0;
    for (const Interval& iv : set) sum += iv.length();
    return sum;
}

}  // namespace ssm
