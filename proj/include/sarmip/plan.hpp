#pragma once
#include <string>
#include <vector>

#include "sarmip/directive.hpp"
#include "sarmip/environment.hpp"

namespace sarmip {

// An elementary path through the agent's traversability graph plus the number
// of whole mission intervals spent at each visited sector. `stay` aligns with
// `path`; every entry is >= 1 and the entries sum to the time budget.
struct AgentPlan {
    std::string agent_id;
    std::vector<std::string> path;
    std::vector<int> stay;

    int stay_at(const std::string& sector_id) const; // 0 for off-path sectors
};

struct MissionPlan {
    std::vector<AgentPlan> plans; // exactly one per agent
};

// timeline[t] = sector index occupied during interval t, for t in [0, T).
struct PositionTimeline {
    std::vector<int> sectors;
};

// Per-step minimum (theta) and maximum (psi) centroid distance between two
// disjoint agent groups.
struct ProximityProfile {
    std::vector<double> theta;
    std::vector<double> psi;
};

struct CoverageResult {
    std::vector<double> per_cell; // clamped at the initial coverage map
    double total = 0.0;
};

// Throws InputError describing the first invariant the plan violates.
void validate_plan(const AgentPlan& plan, const Scenario& scenario);
void validate_mission(const MissionPlan& mission, const Scenario& scenario);

// Unrolls (path, stay) into the per-interval sector occupancy.
PositionTimeline timeline_of(const AgentPlan& plan, const Scenario& scenario);

// Coverage of a mission plan against an initial coverage map: per cell the
// contribution sum clamped at the residual requirement, and the total.
CoverageResult plan_coverage(const MissionPlan& mission, const Scenario& scenario,
                             const CoverageMap& initial);

ProximityProfile proximity_profile(const MissionPlan& mission, const Scenario& scenario,
                                   const std::vector<std::string>& group_a,
                                   const std::vector<std::string>& group_b);

// Per-step violation in meters (hinge distance); zero means compliant, and
// distances exactly at the limit comply for all four kinds.
std::vector<double> directive_compliance(const ProximityProfile& profile,
                                         const Directive& directive);

// Sum over soft directives of weight * total hinge violation. Hard directives
// contribute nothing here; they restrict the feasible set instead.
double soft_penalty(const MissionPlan& mission, const Scenario& scenario,
                    const std::vector<Directive>& directives);

// Coverage total minus soft penalties; the quantity both the heuristics and
// the exact solver maximize.
double plan_score(const MissionPlan& mission, const Scenario& scenario,
                  const std::vector<Directive>& directives);

} // namespace sarmip
