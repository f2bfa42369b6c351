#include "ssm/realization.hpp"

#include <cmath>
#include <ostream>

#include "ssm/csv.hpp"

namespace ssm {

namespace {

std::uint64_t checked_tree_size(std::size_t arity, std::size_t depth, std::uint64_t budget) {
    std::uint64_t count = 1;
    for (std::size_t j = 0; j < depth; ++j) {
        if (count > budget / arity)
            throw BudgetExceeded("tree enumeration exceeds atom budget");
        count *= arity;
    }
    if (count > budget) throw BudgetExceeded("tree enumeration exceeds atom budget");
    return count;
}

// Shared DFS over the perturbation tree. Visit(leaf) receives the truncated
// position, the cylinder ratio and the cylinder mass of the leaf word.
template <typename Visit>
void walk(const SelfSimilarIFS& ifs, const BernoulliMeasure* measure, const Perturbation& dist,
          std::uint64_t key, double pos, double scale, double mass, std::size_t depth_left,
          Visit&& visit) {
    if (depth_left == 0) {
        visit(pos, scale, mass);
        return;
    }
    CounterRng rng(key);
    const double theta = dist.sample(rng);
    for (std::size_t i = 0; i < ifs.arity(); ++i) {
        walk(ifs, measure, dist, child_key(key, static_cast<std::uint32_t>(i)),
             pos + scale * (ifs.translation(i) + theta), scale * ifs.ratio(i),
             measure ? mass * measure->probability(i) : mass, depth_left - 1, visit);
    }
}

}  // namespace

double node_perturbation(RealizationSeed seed, const Word& word, const Perturbation& dist) {
    std::uint64_t key = word_key(seed.value, {word.symbols.data(), word.symbols.size()});
    CounterRng rng(key);
    return dist.sample(rng);
}

double AtomicApproximation::weight_sum() const {
    double sum = 0.0;
    for (const Atom& a : atoms) sum += a.weight;
    return sum;
}

AtomicApproximation atomic_approximation(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure,
                                         const Perturbation& dist, RealizationSeed seed,
                                         std::size_t depth, std::uint64_t budget) {
    measure.require_compatible(ifs);
    if (depth == 0) throw std::invalid_argument("atomic_approximation: depth must be >= 1");
    const std::uint64_t count = checked_tree_size(ifs.arity(), depth, budget);

    AtomicApproximation cloud;
    cloud.depth = depth;
    cloud.arity = ifs.arity();
    cloud.tail_radius = std::pow(ifs.ratio_max(), static_cast<double>(depth)) *
                        (ifs.translation_abs_max() + dist.support_radius()) /
                        (1.0 - ifs.ratio_max());
    cloud.atoms.reserve(count);
    walk(ifs, &measure, dist, root_key(seed.value), 0.0, 1.0, 1.0, depth,
         [&](double pos, double, double mass) { cloud.atoms.push_back({pos, mass}); });
    return cloud;
}

std::vector<Interval> attractor_cover(const SelfSimilarIFS& ifs, const Perturbation& dist,
                                      RealizationSeed seed, std::size_t depth,
                                      std::uint64_t budget) {
    if (depth == 0) throw std::invalid_argument("attractor_cover: depth must be >= 1");
    checked_tree_size(ifs.arity(), depth, budget);
    const double envelope =
        (ifs.translation_abs_max() + dist.support_radius()) / (1.0 - ifs.ratio_max());

    std::vector<Interval> intervals;
    walk(ifs, nullptr, dist, root_key(seed.value), 0.0, 1.0, 1.0, depth,
         [&](double pos, double scale, double) {
             const double radius = scale * envelope;  // per-word radius
             intervals.push_back({pos - radius, pos + radius});
         });
    return merge_intervals(std::move(intervals));
}

void write_atoms_csv(std::ostream& out, const AtomicApproximation& cloud,
                     const std::string& digest) {
    if (!digest.empty()) out << "# config_digest=" << digest << "\n";
    out << "word,position,weight\n";
    for (std::size_t k = 0; k < cloud.atoms.size(); ++k) {
        Word w = Word::from_index(k, cloud.arity, cloud.depth);
        out << w.to_string(cloud.arity) << ',' << format_sig17(cloud.atoms[k].position) << ','
            << format_sig17(cloud.atoms[k].weight) << '\n';
    }
}

}  // namespace ssm
