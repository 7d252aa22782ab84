#pragma once
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sarmip/mip_model.hpp"

namespace sarmip {

struct SolverConfig {
    double time_limit_s = 600.0; // deterministic work-clock seconds
    double target_gap = 1e-6;    // fraction; status optimal requires gap <= this
    double integrality_tolerance = 1e-6;
    double feasibility_tolerance = 1e-7;
    std::uint64_t rng_seed = 1;  // heuristic streams
    long node_limit = -1;        // < 0 means unlimited
    int threads = 0;             // 0 = OpenMP default; result is thread-count independent
    int heuristic_restarts = 4;
    std::ostream* log = nullptr; // incumbent lines + summary block
};

enum class SolveStatus { optimal, feasible_gap, infeasible, unbounded, limit_no_incumbent };

const char* to_string(SolveStatus status);

struct SolveOutcome {
    SolveStatus status = SolveStatus::limit_no_incumbent;
    std::vector<double> incumbent; // empty when none
    double objective = 0.0;        // incumbent objective (valid when incumbent nonempty)
    double bound = 0.0;            // valid upper bound for maximization
    double gap = 0.0;              // (bound - objective) / max(|bound|, eps)
    long nodes = 0;
    double wall_time_s = 0.0;
    double work_seconds = 0.0;     // deterministic work spent, in budget seconds
};

// Best-first branch and bound over the model's integer variables, branching
// on the most fractional one (ties to the lowest index). Node batches of
// fixed size are solved in parallel and merged in node-id order, so the
// search trajectory does not depend on the worker count. The time limit runs
// on the deterministic work clock (kWorkUnitsPerSecond).
SolveOutcome branch_and_bound(const MipModel& model, const SolverConfig& config,
                              const std::vector<double>* warm_start = nullptr);

} // namespace sarmip
