// Shared small types and error classes for the ssmlab core library.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssm {

/// Closed interval [lo, hi] on the line. Empty iff hi < lo.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi > lo ? hi - lo : 0.0; }
    bool empty() const { return hi < lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Thrown when an enumeration would exceed the configured atom budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a recursive evaluation hits its non-termination guard.
class RecursionLimit : public std::runtime_error {
public:
    explicit RecursionLimit(const std::string& what) : std::runtime_error(what) {}
};

/// Merge a list of closed intervals into a sorted, pairwise-disjoint union.
/// Touching intervals ([a,b],[b,c]) are coalesced.
std::vector<Interval> merge_intervals(std::vector<Interval> intervals);

/// Intersection of two sorted disjoint unions of closed intervals.
std::vector<Interval> intersect_interval_sets(const std::vector<Interval>& a,
                                              const std::vector<Interval>& b);

/// Total length of a disjoint union.
double total_length(const std::vector<Interval>& set);

}  // namespace ssm
