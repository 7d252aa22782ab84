#pragma once
#include <string>
#include <vector>

#include "sarmip/directive.hpp"
#include "sarmip/environment.hpp"
#include "sarmip/mip_model.hpp"
#include "sarmip/plan.hpp"

namespace sarmip {

// A routing/scheduling model plus the bookkeeping needed to decode solutions.
// Variables per agent k: x over the dummy-extended arc set, y/t/w per sector;
// phi per cell; optional occupancy binaries z per (sector, agent, step); per
// directive a slack u per applicable step (plus witness-pair binaries for
// network/sparsity).
struct PlannerModel {
    struct Arc {
        int from = -1; // sector index, -1 = dummy vertex
        int to = -1;
        int var = -1;
    };
    struct AgentVars {
        std::vector<Arc> arcs;
        std::vector<int> y, t, w;        // by sector index
        std::vector<std::vector<int>> z; // [sector][step], when occupancy attached
    };
    struct AttachedDirective {
        Directive directive;
        double weight = 0.0;                // effective penalty per meter
        std::vector<int> u;                 // by position in directive.steps
        std::vector<std::pair<int, int>> cross_pairs; // (agent index, agent index)
        std::vector<std::vector<int>> sel;  // [step position][pair], network/sparsity
    };

    MipModel mip;
    const CompiledScenario* compiled = nullptr;
    std::vector<AgentVars> agents;
    std::vector<int> phi; // by cell
    bool occupancy = false;
    std::vector<AttachedDirective> directives;
};

// The core formulation: dummy-vertex degree rows, flow conservation linking x
// and y, big-M subtour elimination with M equal to the time budget, arrival
// and duration bounds, per-cell coverage rows with clamped phi variables, a
// per-agent budget row, and the coverage-maximizing objective.
PlannerModel build_core(const CompiledScenario& compiled);

// Time-indexed occupancy: z(i,k,step) binaries tied to arrival times and
// durations with big-M (budget + 1) contiguity rows; exactly one sector per
// agent and step, and per-sector step counts equal to the duration.
void attach_occupancy(PlannerModel& pm);

// One proximity directive over the occupancy binaries. Coalition and
// interference avoidance add one hinge row per conflicting cross sector pair;
// network and sparsity add witness-pair binaries selecting the pair whose
// distance realizes the min/max. In soft mode the per-step slack u is charged
// weight * u in the objective; in hard mode u is fixed to zero.
void attach_directive(PlannerModel& pm, const Directive& directive);

struct DirectiveReport {
    Directive directive;
    std::vector<double> model_u;   // per step (length T, zero off-steps)
    std::vector<double> compliance; // exact plan-level hinge, same shape
};

struct DecodedSolution {
    MissionPlan mission;
    double coverage = 0.0;       // recomputed from the decoded plan
    double model_coverage = 0.0; // sum of phi variables in the solution
    double objective = 0.0;      // model objective including penalties
    std::vector<DirectiveReport> directive_reports;
};

// Reconstructs each agent's path by following arcs from the dummy vertex and
// reads schedules from w; validates all plan invariants and cross-checks the
// recomputed coverage against the model's phi variables (1e-6).
DecodedSolution decode(const PlannerModel& pm, const std::vector<double>& solution,
                       double integrality_tolerance = 1e-6);

// Full variable assignment realizing a mission plan, with phi at its clamped
// maximum and directive slacks at their exact hinge values. Used for warm
// starts; throws InputError when the plan violates a hard directive.
std::vector<double> assignment_from_mission(const PlannerModel& pm, const MissionPlan& mission);

} // namespace sarmip
