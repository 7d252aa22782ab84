#pragma once
#include <span>
#include <vector>

#include "sarmip/environment.hpp"

namespace sarmip {

// 100 * covered / required; 100 when nothing is required.
double coverage_percentage(const CoverageMap& final_map, const CoverageMap& initial);

// Time average over ticks of the mean cross-pair distance between two agent
// groups (cell-center resolution). Groups are agent indices into the trace.
double mean_group_distance(const std::vector<std::vector<int>>& trace, const CellGrid& grid,
                           const std::vector<int>& group_a, const std::vector<int>& group_b);

// Convex-hull area of the given agents' positions at one tick.
double hull_area_at(const std::vector<int>& positions, const CellGrid& grid,
                    const std::vector<int>& group);

// Per-tick hull area averaged over the whole trace.
double time_avg_hull_area(const std::vector<std::vector<int>>& trace, const CellGrid& grid,
                          const std::vector<int>& group);

struct InterferenceSummary {
    double mean_s = 0.0;
    bool no_dogs = false; // defined as 0, flagged
};

InterferenceSummary interference_summary(const std::vector<double>& per_dog_seconds);

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

Aggregate aggregate(std::span<const double> values);

} // namespace sarmip
