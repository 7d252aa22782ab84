#pragma once
#include <vector>

#include "sarmip/mip_model.hpp"

namespace sarmip {

// The planner measures solver effort in deterministic work units (roughly
// kiloflops) instead of wall-clock time, so identical inputs give identical
// outputs on any machine and any thread count. This constant converts a
// user-facing seconds budget into work units.
inline constexpr double kWorkUnitsPerSecond = 1.0e7;

struct LpOptions {
    double feas_tol = 1e-7;
    double opt_tol = 1e-7;
    long max_iterations = 2000000;
    double work_budget = -1.0; // deterministic units; <= 0 means unlimited
};

enum class LpStatus { optimal, infeasible, unbounded, work_limit };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    std::vector<double> x; // structural variable values
    long iterations = 0;
    double work = 0.0;
};

// Bounded-variable primal simplex over the model with integrality dropped.
// Rows flagged lazy are activated on demand: the returned optimum satisfies
// every row of the model. Dantzig pricing with a Bland's-rule fallback on
// stalling; numerical breakdown raises NumericalError.
LpResult solve_lp(const MipModel& model, const std::vector<double>& lower,
                  const std::vector<double>& upper, const LpOptions& options = {});

LpResult solve_lp(const MipModel& model, const LpOptions& options = {});

} // namespace sarmip
