#pragma once

#include <vector>

#include "uavris/evaluation.hpp"
#include "uavris/rng.hpp"

namespace uavris {

// Strict Pareto dominance, minimization: no worse everywhere, better somewhere.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// a <= b componentwise.
bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Fast non-dominated sorting; fronts listed best-first, indices ascending
// within a front.
std::vector<std::vector<int>> non_dominated_sort(const std::vector<ObjectiveVector>& objs);

// Per-objective span-normalized crowding; boundary members get +inf,
// zero-span objectives are skipped.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front_objs);

struct RankedPopulation {
    std::vector<Candidate> members;
    std::vector<int> rank;        // 0 = first front
    std::vector<double> crowding;

    std::vector<int> front_indices(int r) const;
    std::vector<ObjectiveVector> front_objectives(int r) const;
};

// Environmental selection: whole fronts by rank, the splitting front by
// descending crowding, ties by input order. All candidates must be evaluated.
RankedPopulation elitist_filter(std::vector<Candidate> pool, int pop_size);

// Crowding-weighted roulette over a front; +inf weights map to twice the
// largest finite crowding, uniform when no finite weight exists.
int roulette_from_front(const std::vector<double>& front_crowding, RngStream& rng);

// Exact dominated volume for up to three objectives.
double hypervolume(const std::vector<ObjectiveVector>& front_objs, const ObjectiveVector& reference);

// Fraction of `early` members weakly dominated by some member of `late`.
double weak_coverage(const std::vector<ObjectiveVector>& early, const std::vector<ObjectiveVector>& late);

} // namespace uavris
