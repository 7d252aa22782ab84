#pragma once
#include <cstdint>
#include <vector>

#include "sarmip/directive.hpp"
#include "sarmip/environment.hpp"
#include "sarmip/plan.hpp"

namespace sarmip {

// Greedy sequential insertion: agents extend their plans in round-robin, one
// interval at a time, to the start/stay/neighbor choice with the best
// marginal clamped coverage minus directive penalty. Always returns a plan
// that is feasible for the core model; hard directives may remain violated
// (reported by the caller, never hidden). Restart 0 is pure greedy, further
// restarts randomize ties via the seed; the best-scoring plan wins.
MissionPlan heuristic_construct(const CompiledScenario& compiled,
                                const std::vector<Directive>& directives, std::uint64_t rng_seed,
                                int restarts = 4);

// The restart pool behind heuristic_construct, deduplicated and sorted by
// score (best first). Lets callers polish several distinct starts.
std::vector<MissionPlan> heuristic_construct_pool(const CompiledScenario& compiled,
                                                  const std::vector<Directive>& directives,
                                                  std::uint64_t rng_seed, int restarts);

// First-improvement hill climbing over interval shifts, path-sector swaps and
// tail rewrites. Accepts strictly improving (coverage - penalty) moves only,
// so the output never scores below the input. `max_evaluations` bounds the
// deterministic work.
MissionPlan local_search(const MissionPlan& start, const CompiledScenario& compiled,
                         const std::vector<Directive>& directives, long max_evaluations = 20000);

// The objective the heuristics climb: plan_score plus a strong surrogate
// penalty for hard-directive violations (so search steers toward feasibility).
double heuristic_score(const MissionPlan& mission, const CompiledScenario& compiled,
                       const std::vector<Directive>& directives);

} // namespace sarmip
