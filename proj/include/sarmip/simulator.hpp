#pragma once
#include <cstdint>
#include <vector>

#include "sarmip/environment.hpp"
#include "sarmip/plan.hpp"

namespace sarmip {

struct InterferenceConfig {
    bool enabled = false;
    double range_m = 100.0; // trial probability (range - d) / range within range
    // Who can attract a dog; UAVs never do.
    std::vector<AgentKind> interferer_kinds{AgentKind::dog, AgentKind::human};
};

struct SimConfig {
    double tick_s = 10.0; // must divide delta_t
    int runs = 50;
    std::uint64_t rng_seed = 1;
    InterferenceConfig interference;
    bool record_trace = true; // per-tick positions kept for the metrics
    bool parallel = false;    // OpenMP over runs; results identical either way
    int threads = 0;          // 0 = OpenMP default
};

// One seeded run: clamped final coverage, per-agent interference seconds
// (only dogs accumulate), and the per-tick cell trace.
struct SimResult {
    std::vector<double> final_coverage;
    double coverage_pct = 0.0;
    std::vector<double> interference_s;
    std::vector<std::vector<int>> trace; // [tick][agent] -> cell
};

// Discrete-time execution of a mission plan: agents random-walk inside their
// scheduled sector, dogs get attracted toward nearby interferers (dogs or
// humans) with probability (R - d)/R, and coverage accrues as rate * time in
// cell. Deterministic given (plan, scenario, config, run index).
SimResult simulate_run(const MissionPlan& mission, const CompiledScenario& compiled,
                       const SimConfig& config, int run_index);

// All runs of the suite. Run i derives its seed from (rng_seed, i) alone, so
// serial and parallel execution produce identical results.
std::vector<SimResult> run_suite(const MissionPlan& mission, const CompiledScenario& compiled,
                                 const SimConfig& config);

} // namespace sarmip
