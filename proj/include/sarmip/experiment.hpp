#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "sarmip/bnb.hpp"
#include "sarmip/directive.hpp"
#include "sarmip/io.hpp"
#include "sarmip/metrics.hpp"
#include "sarmip/mip_build.hpp"
#include "sarmip/plan.hpp"

namespace sarmip {

// The full planning pipeline: model build (occupancy and directives only when
// needed), heuristic construction plus local search for a warm start, then
// branch and bound. The decoded incumbent is the mission to execute.
struct PlanningResult {
    SolveOutcome outcome;
    MissionPlan mission;           // valid when an incumbent exists
    DecodedSolution decoded;       // coverage and directive reports
    double warm_start_score = 0.0; // heuristic objective before the solver
};

PlanningResult plan_mission(const CompiledScenario& compiled,
                            const std::vector<Directive>& directives,
                            const SolverConfig& config);

struct VariantOutcome {
    std::string name;
    bool failed = false;
    std::string failure;

    SolveStatus solver_status = SolveStatus::limit_no_incumbent;
    double objective = 0.0;
    double bound = 0.0;
    double gap = 0.0;
    long nodes = 0;
    MissionPlan mission;

    std::vector<double> run_coverage_pct;
    std::vector<double> run_interference_s; // mean over dogs, per run
    std::vector<double> run_distance_m;
    std::vector<double> run_hull_m2;
    Aggregate coverage_pct, interference_s, distance_m, hull_m2;
};

struct ExperimentResult {
    std::vector<VariantOutcome> variants; // [0] is the no-directive baseline
};

// Plans and simulates the baseline plus every variant. Variant failures are
// recorded, not fatal. All randomness derives from `seed`; simulation seeds
// are shared across variants so runs are paired.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::uint64_t seed, int threads,
                                std::ostream* log = nullptr);

} // namespace sarmip
