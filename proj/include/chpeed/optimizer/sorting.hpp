#ifndef CHPEED_OPTIMIZER_SORTING_HPP
#define CHPEED_OPTIMIZER_SORTING_HPP

#include <vector>

#include "chpeed/types.hpp"

namespace chpeed {

// a dominates b: no worse in both objectives, strictly better in one.
bool pareto_dominates(const Objectives& a, const Objectives& b);

// Deb's fast nondominated sort; returns index sets per level, F1 first.
std::vector<std::vector<int>> fast_nondominated_sort(
    const std::vector<Objectives>& objectives);

// NSGA-II crowding distance for the given front (indices into objectives).
std::vector<Scalar> crowding_distance(const std::vector<Objectives>& objectives,
                                      const std::vector<int>& front);

}  // namespace chpeed

#endif
