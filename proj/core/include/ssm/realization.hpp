// Reproducible random realizations: the perturbation tree Theta_w and
// finite-depth atomic approximations of the projected measure and covers of
// the random attractor.
//
// Randomness contract: the perturbation attached to a tree node is a pure
// function of (seed, word). Enumeration order, worker count and prior draws
// cannot change any value, which makes depth refinement and parallel
// evaluation exactly reproducible.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ssm/bernoulli.hpp"
#include "ssm/common.hpp"
#include "ssm/ifs.hpp"
#include "ssm/perturbation.hpp"

namespace ssm {

struct RealizationSeed {
    std::uint64_t value = 0;
};

/// Default cap on full tree enumerations (atoms or cover intervals).
inline constexpr std::uint64_t kDefaultAtomBudget = std::uint64_t{1} << 22;

/// Perturbation value attached to the tree node `word`: hash (seed, word)
/// into a key, then draw once from the law. Identical inputs give identical
/// output on every platform.
double node_perturbation(RealizationSeed seed, const Word& word, const Perturbation& dist);

struct Atom {
    double position;
    double weight;
};

/// Depth-n truncation of the random coding map as a weighted point cloud.
/// Atom k corresponds to the word with enumeration index k (base-N digits,
/// most significant first), so words are implicit in the ordering.
/// Every point of the true support coded by a word extending w lies within
/// tail_radius of the atom for w.
struct AtomicApproximation {
    std::size_t depth = 0;
    std::size_t arity = 0;
    double tail_radius = 0.0;
    std::vector<Atom> atoms;

    double weight_sum() const;
};

/// One atom per word w of length `depth` at position
///   sum_{j<depth} ratio(w^j) * (t_{w_j} + theta_{w^j}),
/// with weight mass(w) and
///   tail_radius = ratio_max^depth * (max|t| + support_radius) / (1 - ratio_max).
/// Throws BudgetExceeded when arity^depth > budget.
AtomicApproximation atomic_approximation(const SelfSimilarIFS& ifs, const BernoulliMeasure& measure,
                                         const Perturbation& dist, RealizationSeed seed,
                                         std::size_t depth,
                                         std::uint64_t budget = kDefaultAtomBudget);

/// Merged union of the per-word intervals [x_w - R_w, x_w + R_w] with
/// R_w = ratio(w) * (max|t| + support_radius) / (1 - ratio_max). The union
/// contains the realized attractor, and the depth-(n+1) cover is nested in
/// the depth-n cover: |child center - x_w| + R_child
///   <= ratio(w) * (max|t| + supp) + ratio(w) * ratio_max * R-envelope = R_w.
std::vector<Interval> attractor_cover(const SelfSimilarIFS& ifs, const Perturbation& dist,
                                      RealizationSeed seed, std::size_t depth,
                                      std::uint64_t budget = kDefaultAtomBudget);

/// CSV export: header `word,position,weight`, one row per atom, numbers in
/// fixed 17-significant-digit decimal. `digest` (if nonempty) is embedded as
/// a leading `# config_digest=` comment.
void write_atoms_csv(std::ostream& out, const AtomicApproximation& cloud,
                     const std::string& digest = {});

}  // namespace ssm
