#include "ssm/bernoulli.hpp"

#include <cmath>
#include <limits>

namespace ssm {

BernoulliMeasure::BernoulliMeasure(std::vector<double> p) : probabilities(std::move(p)) {
    if (probabilities.size() < 2)
        throw std::invalid_argument("BernoulliMeasure: need at least 2 symbols");
    double sum = 0.0;
    for (double pi : probabilities) {
        if (!(pi > 0.0) || !std::isfinite(pi))
            throw std::invalid_argument("BernoulliMeasure: probabilities must be positive");
        sum += pi;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("BernoulliMeasure: probabilities must sum to 1");
}

BernoulliMeasure BernoulliMeasure::natural(const SelfSimilarIFS& ifs) {
    const double s = similarity_dimension(ifs);
    std::vector<double> p(ifs.arity());
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::pow(ifs.ratio(i), s);
        sum += p[i];
    }
    // Renormalize away the 1e-12 bisection residual so the invariant holds.
    for (double& pi : p) pi /= sum;
    return BernoulliMeasure(std::move(p));
}

void BernoulliMeasure::require_compatible(const SelfSimilarIFS& ifs) const {
    if (arity() != ifs.arity())
        throw std::invalid_argument("measure and IFS have different alphabet sizes");
}

double cylinder_mass(const BernoulliMeasure& measure, const Word& word) {
    double prod = 1.0;
    for (Symbol s : word.symbols) {
        if (s >= measure.arity()) throw std::invalid_argument("word symbol out of alphabet range");
        prod *= measure.probability(s);
    }
    return prod;
}

LocalDimension local_dimension_exponent(const BernoulliMeasure& measure,
                                        const SelfSimilarIFS& ifs) {
    measure.require_compatible(ifs);
    double s_prime = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ifs.arity(); ++i) {
        s_prime = std::min(s_prime, std::log(measure.probability(i)) / std::log(ifs.ratio(i)));
    }
    return {s_prime, s_prime > 1.0};
}

double local_dimension_bound_slack(const BernoulliMeasure& measure, const SelfSimilarIFS& ifs,
                                   double s_prime, double k_constant, std::size_t max_length) {
    measure.require_compatible(ifs);
    const std::size_t n_sym = ifs.arity();
    std::vector<double> log_p(n_sym), log_l(n_sym);
    for (std::size_t i = 0; i < n_sym; ++i) {
        log_p[i] = std::log(measure.probability(i));
        log_l[i] = std::log(ifs.ratio(i));
    }
    const double log_k = std::log(k_constant);
    double worst = std::numeric_limits<double>::infinity();
    // Depth-first over all words of length 1..max_length, carrying log sums.
    struct Frame {
        std::size_t symbol;
        double lp, ll;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0.0, 0.0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.symbol == n_sym) {
            stack.pop_back();
            continue;
        }
        double lp = f.lp + log_p[f.symbol];
        double ll = f.ll + log_l[f.symbol];
        ++f.symbol;
        worst = std::min(worst, s_prime * ll + log_k - lp);
        if (stack.size() < max_length) stack.push_back({0, lp, ll});
    }
    return worst;
}

double lq_dimension(const BernoulliMeasure& measure, const SelfSimilarIFS& ifs, double q) {
    measure.require_compatible(ifs);
    if (!(q > 1.0)) throw std::invalid_argument("lq_dimension: q must exceed 1");
    auto moment = [&](double d) {
        double sum = 0.0;
        for (std::size_t i = 0; i < ifs.arity(); ++i)
            sum += std::pow(measure.probability(i), q) * std::pow(ifs.ratio(i), d * (1.0 - q));
        return sum;
    };
    // moment is strictly increasing in d (exponents d*(1-q)*log l_i > 0 slopes),
    // moment(0) = sum p^q < 1, moment(d) -> inf: bracket then bisect.
    double lo = 0.0;
    double hi = 1.0;
    while (moment(hi) < 1.0) {
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("lq_dimension: failed to bracket root");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (moment(mid) <= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double d = 0.5 * (lo + hi);
    return std::abs(moment(lo) - 1.0) < std::abs(moment(d) - 1.0) ? lo : d;
}

Word sample_word(const BernoulliMeasure& measure, std::size_t depth, CounterRng& rng) {
    Word w;
    w.symbols.resize(depth);
    for (std::size_t j = 0; j < depth; ++j) {
        double u = rng.next_unit();
        double cum = 0.0;
        Symbol pick = static_cast<Symbol>(measure.arity() - 1);
        for (std::size_t i = 0; i < measure.arity(); ++i) {
            cum += measure.probability(i);
            if (u < cum) {
                pick = static_cast<Symbol>(i);
                break;
            }
        }
        w.symbols[j] = pick;
    }
    return w;
}

}  // namespace ssm
