#include "sarmip/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sarmip/errors.hpp"
#include "sarmip/geometry.hpp"

namespace sarmip {

double coverage_percentage(const CoverageMap& final_map, const CoverageMap& initial) {
    if (final_map.size() != initial.size())
        throw InputError("coverage maps cover different grids");
    double covered = 0.0, required = 0.0;
    for (std::size_t c = 0; c < final_map.size(); ++c) {
        covered += final_map[c];
        required += initial[c];
    }
    if (required == 0.0)
        return 100.0;
    return 100.0 * covered / required;
}

double mean_group_distance(const std::vector<std::vector<int>>& trace, const CellGrid& grid,
                           const std::vector<int>& group_a, const std::vector<int>& group_b) {
    if (group_a.empty() || group_b.empty())
        throw InputError("distance groups must be nonempty");
    if (trace.empty())
        return 0.0;
    double total = 0.0;
    for (const auto& row : trace) {
        double sum = 0.0;
        for (int a : group_a)
            for (int b : group_b)
                sum += distance(grid.cell_center(row.at(a)), grid.cell_center(row.at(b)));
        total += sum / (static_cast<double>(group_a.size()) * group_b.size());
    }
    return total / static_cast<double>(trace.size());
}

double hull_area_at(const std::vector<int>& positions, const CellGrid& grid,
                    const std::vector<int>& group) {
    std::vector<Point> pts;
    pts.reserve(group.size());
    for (int k : group)
        pts.push_back(grid.cell_center(positions.at(k)));
    return hull_area(pts, grid.cell_size_m / 2.0);
}

double time_avg_hull_area(const std::vector<std::vector<int>>& trace, const CellGrid& grid,
                          const std::vector<int>& group) {
    if (trace.empty() || group.empty())
        return 0.0;
    double total = 0.0;
    for (const auto& row : trace)
        total += hull_area_at(row, grid, group);
    return total / static_cast<double>(trace.size());
}

InterferenceSummary interference_summary(const std::vector<double>& per_dog_seconds) {
    if (per_dog_seconds.empty())
        return {0.0, true};
    double sum = 0.0;
    for (double s : per_dog_seconds)
        sum += s;
    return {sum / static_cast<double>(per_dog_seconds.size()), false};
}

Aggregate aggregate(std::span<const double> values) {
    Aggregate out;
    if (values.empty())
        return out;
    out.min = values[0];
    out.max = values[0];
    for (double v : values) {
        out.mean += v;
        out.min = std::min(out.min, v);
        out.max = std::max(out.max, v);
    }
    out.mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values)
        var += (v - out.mean) * (v - out.mean);
    out.stddev = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
    return out;
}

} // namespace sarmip
