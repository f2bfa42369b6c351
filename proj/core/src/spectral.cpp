#include "ssm/spectral.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include "ssm/csv.hpp"

namespace ssm {

Complex empirical_characteristic(const AtomicApproximation& cloud, double xi) {
    double re = 0.0, im = 0.0;
    for (const Atom& a : cloud.atoms) {
        const double phase = xi * a.position;
        re += a.weight * std::cos(phase);
        im += a.weight * std::sin(phase);
    }
    return {re, im};
}

std::vector<Complex> empirical_characteristic(const AtomicApproximation& cloud,
                                              std::span<const double> xis) {
    std::vector<Complex> acc(xis.size(), Complex{0.0, 0.0});
    for (const Atom& a : cloud.atoms) {
        for (std::size_t k = 0; k < xis.size(); ++k) {
            const double phase = xis[k] * a.position;
            acc[k] += Complex{a.weight * std::cos(phase), a.weight * std::sin(phase)};
        }
    }
    return acc;
}

namespace {

constexpr std::size_t kDepthGuard = 4096;        // general-ratio recursion levels
constexpr std::size_t kMemoGuard = std::size_t{1} << 22;
constexpr std::size_t kEqualRatioGuard = std::size_t{1} << 22;

// Exponent vector of the ratio product applied so far; the canonical memo key
// (floating products from different multiply orders differ in the last ulp,
// so the doubles themselves cannot key the cache).
using ExpVec = std::vector<std::uint16_t>;

struct ExpVecHash {
    std::size_t operator()(const ExpVec& v) const {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (std::uint16_t x : v) {
            h ^= x;
            h *= 0x100000001B3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

using Memo = std::unordered_map<ExpVec, Complex, ExpVecHash>;

struct Context {
    const SelfSimilarIFS& ifs;
    const BernoulliMeasure& measure;
    const Perturbation& dist;
    double tol;
    std::size_t max_depth;
    double envelope;  // (max|t| + support_radius) / (1 - ratio_max)
};

bool at_base(const Context& ctx, double phase_scale, std::size_t depth) {
    if (ctx.max_depth != kNoDepthCap) return depth >= ctx.max_depth;
    return phase_scale * ctx.envelope < ctx.tol;
}

void check_guards(const Context& ctx, const Memo& memo, std::size_t depth) {
    if (depth >= kDepthGuard)
        throw RecursionLimit("characteristic recursion exceeded depth guard");
    if (memo.size() >= kMemoGuard)
        throw RecursionLimit("characteristic recursion exceeded memo guard");
    (void)ctx;
}

// G specialized to equal contraction ratios: the argument depends on depth
// only, so the recursion is a single backward product over levels.
Complex mean_equal_ratio(const Context& ctx, double xi) {
    const double ratio = ctx.ifs.ratio(0);
    std::size_t levels = 0;
    double freq = std::abs(xi);
    while (!at_base(ctx, freq, levels)) {
        freq *= ratio;
        ++levels;
        if (levels >= kEqualRatioGuard)
            throw RecursionLimit("characteristic recursion exceeded depth guard");
    }
    Complex g{1.0, 0.0};
    for (std::size_t level = levels; level-- > 0;) {
        const double f = xi * std::pow(ratio, static_cast<double>(level));
        Complex mixer{0.0, 0.0};
        for (std::size_t i = 0; i < ctx.ifs.arity(); ++i) {
            mixer += ctx.measure.probability(i) *
                     std::polar(1.0, f * ctx.ifs.translation(i));
        }
        g = ctx.dist.fourier(f) * mixer * g;
    }
    return g;
}

Complex mean_rec(const Context& ctx, Memo& memo, ExpVec& exps, double freq, std::size_t depth) {
    if (at_base(ctx, std::abs(freq), depth)) return {1.0, 0.0};
    check_guards(ctx, memo, depth);
    auto hit = memo.find(exps);
    if (hit != memo.end()) return hit->second;
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < ctx.ifs.arity(); ++i) {
        ++exps[i];
        Complex child = mean_rec(ctx, memo, exps, freq * ctx.ifs.ratio(i), depth + 1);
        --exps[i];
        sum += ctx.measure.probability(i) * std::polar(1.0, freq * ctx.ifs.translation(i)) * child;
    }
    Complex value = ctx.dist.fourier(freq) * sum;
    memo.emplace(exps, value);
    return value;
}

struct PairMemos {
    Memo g1, g2, h;
};

Complex pair_rec(const Context& ctx, PairMemos& memos, ExpVec& exps, double f1, double f2,
                 std::size_t depth) {
    if (at_base(ctx, std::abs(f1) + std::abs(f2), depth)) return {1.0, 0.0};
    check_guards(ctx, memos.h, depth);
    auto hit = memos.h.find(exps);
    if (hit != memos.h.end()) return hit->second;

    const std::size_t n_sym = ctx.ifs.arity();
    // Marginal factors for the split branches, one per symbol.
    std::vector<Complex> g1(n_sym), g2(n_sym);
    for (std::size_t i = 0; i < n_sym; ++i) {
        ++exps[i];
        g1[i] = mean_rec(ctx, memos.g1, exps, f1 * ctx.ifs.ratio(i), depth + 1);
        g2[i] = mean_rec(ctx, memos.g2, exps, f2 * ctx.ifs.ratio(i), depth + 1);
        --exps[i];
    }
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < n_sym; ++i) {
        const double pi = ctx.measure.probability(i);
        ++exps[i];
        Complex same = pair_rec(ctx, memos, exps, f1 * ctx.ifs.ratio(i), f2 * ctx.ifs.ratio(i),
                                depth + 1);
        --exps[i];
        sum += pi * pi * std::polar(1.0, (f1 + f2) * ctx.ifs.translation(i)) * same;
        for (std::size_t j = 0; j < n_sym; ++j) {
            if (j == i) continue;
            sum += pi * ctx.measure.probability(j) *
                   std::polar(1.0, f1 * ctx.ifs.translation(i) + f2 * ctx.ifs.translation(j)) *
                   g1[i] * g2[j];
        }
    }
    Complex value = ctx.dist.fourier(f1 + f2) * sum;
    memos.h.emplace(exps, value);
    return value;
}

Context make_context(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure,
                     const Perturbation& dist, double tol, std::size_t max_depth) {
    measure.require_compatible(ifs);
    if (!(tol > 0.0)) throw std::invalid_argument("characteristic oracle: tol must be positive");
    const double envelope =
        (ifs.translation_abs_max() + dist.support_radius()) / (1.0 - ifs.ratio_max());
    return {ifs, measure, dist, tol, max_depth, envelope};
}

}  // namespace

Complex mean_characteristic(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure,
                            const Perturbation& dist, double xi, double tol,
                            std::size_t max_depth) {
    Context ctx = make_context(ifs, measure, dist, tol, max_depth);
    if (ifs.equal_ratios() && max_depth == kNoDepthCap) return mean_equal_ratio(ctx, xi);
    Memo memo;
    ExpVec exps(ifs.arity(), 0);
    return mean_rec(ctx, memo, exps, xi, 0);
}

Complex pair_characteristic(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure,
                            const Perturbation& dist, double xi1, double xi2, double tol,
                            std::size_t max_depth) {
    Context ctx = make_context(ifs, measure, dist, tol, max_depth);
    PairMemos memos;
    ExpVec exps(ifs.arity(), 0);
    return pair_rec(ctx, memos, exps, xi1, xi2, 0);
}

double truncated_inverse_density(const AtomicApproximation& cloud, double x, double cutoff) {
    if (!(cutoff > 0.0)) throw std::invalid_argument("truncated_inverse_density: cutoff must be positive");
    constexpr double inv_pi = std::numbers::inv_pi;
    double sum = 0.0;
    for (const Atom& a : cloud.atoms) {
        const double u = a.position - x;
        const double nu = cutoff * u;
        if (std::abs(nu) < 1e-6) {
            sum += a.weight * cutoff * inv_pi * (1.0 - nu * nu / 6.0);
        } else {
            sum += a.weight * std::sin(nu) / (std::numbers::pi * u);
        }
    }
    return sum;
}

void write_spectral_csv(std::ostream& out, std::span<const SpectralProfile> profiles,
                        const std::string& digest) {
    if (!digest.empty()) out << "# config_digest=" << digest << "\n";
    out << "xi,re,im,provenance\n";
    for (const SpectralProfile& p : profiles) {
        for (std::size_t k = 0; k < p.frequencies.size(); ++k) {
            out << format_sig17(p.frequencies[k]) << ',' << format_sig17(p.values[k].real()) << ','
                << format_sig17(p.values[k].imag()) << ',' << p.provenance << '\n';
        }
    }
}

}  // namespace ssm
