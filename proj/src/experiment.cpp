#include "sarmip/experiment.hpp"

#include <limits>
#include <ostream>

#include "sarmip/errors.hpp"
#include "sarmip/heuristics.hpp"
#include "sarmip/rng.hpp"
#include "sarmip/simulator.hpp"

namespace sarmip {

PlanningResult plan_mission(const CompiledScenario& compiled,
                            const std::vector<Directive>& directives,
                            const SolverConfig& config) {
    PlannerModel pm = build_core(compiled);
    if (!directives.empty()) {
        attach_occupancy(pm);
        for (const Directive& d : directives)
            attach_directive(pm, d);
    }

    auto pool = heuristic_construct_pool(compiled, directives, config.rng_seed,
                                         config.heuristic_restarts);
    long ls_budget = 20000L + 10000L * static_cast<long>(compiled.src().agents.size());
    MissionPlan warm = pool.front();
    double warm_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.size() && i < 4; ++i) {
        MissionPlan polished = local_search(pool[i], compiled, directives, ls_budget);
        double score = heuristic_score(polished, compiled, directives);
        if (score > warm_score + 1e-12) {
            warm_score = score;
            warm = std::move(polished);
        }
    }
    std::vector<double> warm_assignment = assignment_from_mission(pm, warm);

    PlanningResult result;
    result.warm_start_score = warm_score;
    result.outcome = branch_and_bound(pm.mip, config, &warm_assignment);
    if (!result.outcome.incumbent.empty()) {
        result.decoded = decode(pm, result.outcome.incumbent, config.integrality_tolerance);
        result.mission = result.decoded.mission;
    }
    return result;
}

namespace {

std::vector<int> agent_indices(const Scenario& sc, const std::vector<std::string>& ids) {
    std::vector<int> out;
    for (const auto& id : ids) {
        int idx = sc.agent_index(id);
        if (idx < 0)
            throw InputError("metric group references unknown agent '" + id + "'");
        out.push_back(idx);
    }
    return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, std::uint64_t seed, int threads,
                                std::ostream* log) {
    CompiledScenario compiled = compile_scenario(spec.scenario);
    const Scenario& sc = spec.scenario;

    std::vector<int> dist_a = agent_indices(sc, spec.metrics.distance_a);
    std::vector<int> dist_b = agent_indices(sc, spec.metrics.distance_b);
    std::vector<int> hull_group = agent_indices(sc, spec.metrics.hull);
    std::vector<int> dog_group;
    for (std::size_t k = 0; k < sc.agents.size(); ++k)
        if (sc.agents[k].kind == AgentKind::dog)
            dog_group.push_back(static_cast<int>(k));

    std::vector<std::pair<std::string, std::vector<Directive>>> studies;
    studies.emplace_back("baseline", std::vector<Directive>{});
    for (const auto& variant : spec.variants)
        studies.emplace_back(variant.name, variant.directives);

    SimConfig sim = spec.sim;
    sim.rng_seed = derive_seed(seed, "sim", 0); // shared: paired runs across variants
    sim.record_trace = true;
    sim.parallel = true;
    sim.threads = threads;

    ExperimentResult result;
    for (std::size_t v = 0; v < studies.size(); ++v) {
        const auto& [name, directives] = studies[v];
        VariantOutcome out;
        out.name = name;
        if (log)
            *log << "== variant " << name << "\n";
        try {
            SolverConfig solver = spec.solver;
            // One planning seed for the whole experiment: variants differ by
            // their directives only, which keeps the trends paired.
            solver.rng_seed = derive_seed(seed, "plan", 0);
            solver.threads = threads;
            solver.log = log;
            PlanningResult planned = plan_mission(compiled, directives, solver);
            out.solver_status = planned.outcome.status;
            out.objective = planned.outcome.objective;
            out.bound = planned.outcome.bound;
            out.gap = planned.outcome.gap;
            out.nodes = planned.outcome.nodes;
            if (planned.outcome.incumbent.empty())
                throw InputError("solver produced no plan (" +
                                 std::string(to_string(planned.outcome.status)) + ")");
            out.mission = planned.mission;

            std::vector<SimResult> runs = run_suite(out.mission, compiled, sim);
            for (const SimResult& run : runs) {
                out.run_coverage_pct.push_back(run.coverage_pct);
                std::vector<double> dog_seconds;
                for (int k : dog_group)
                    dog_seconds.push_back(run.interference_s[k]);
                out.run_interference_s.push_back(interference_summary(dog_seconds).mean_s);
                out.run_distance_m.push_back(
                    dist_a.empty() || dist_b.empty()
                        ? 0.0
                        : mean_group_distance(run.trace, sc.grid, dist_a, dist_b));
                out.run_hull_m2.push_back(hull_group.empty()
                                              ? 0.0
                                              : time_avg_hull_area(run.trace, sc.grid,
                                                                   hull_group));
            }
            out.coverage_pct = aggregate(out.run_coverage_pct);
            out.interference_s = aggregate(out.run_interference_s);
            out.distance_m = aggregate(out.run_distance_m);
            out.hull_m2 = aggregate(out.run_hull_m2);
        } catch (const std::exception& e) {
            out.failed = true;
            out.failure = e.what();
            if (log)
                *log << "variant " << name << " failed: " << e.what() << "\n";
        }
        result.variants.push_back(std::move(out));
    }
    return result;
}

} // namespace sarmip
