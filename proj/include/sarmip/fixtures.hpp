#pragma once
#include <vector>

#include "sarmip/directive.hpp"
#include "sarmip/environment.hpp"

namespace sarmip {

// Shipped scenario family. tiny is small enough for exhaustive enumeration;
// small mirrors a 4x4 grid with one fine and one coarse layout; the medium
// scenarios echo a 700x700 m area of 100 m cells with a 35-minute mission in
// 300 s intervals, with team mixes matching the three study shapes.
Scenario make_tiny_scenario();
Scenario make_small_scenario();
Scenario make_medium_scenario();        // 3 dogs + 3 humans + 3 UAVs
Scenario make_medium_ground_scenario(); // 3 dogs + 3 humans
Scenario make_medium_mixed_scenario();  // 3 humans + 3 UAVs
Scenario make_medium_uav_scenario();    // 3 UAVs

// Directive sets for the three studies, one variant per range.
std::vector<Directive> interference_directives(const Scenario& scenario, double range_m,
                                               double weight = 0.0);
std::vector<Directive> coalition_directives(const Scenario& scenario, double range_m,
                                            double weight = 0.0);
std::vector<Directive> sparsity_directives(const Scenario& scenario, double distance_m,
                                           double weight = 0.0);

} // namespace sarmip
