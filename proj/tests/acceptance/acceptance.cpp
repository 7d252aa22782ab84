// Acceptance suite: one checker per criterion, each printing a single
// [PASS]/[FAIL] line. Run `acceptance <n>` for one criterion or `acceptance
// all`; the process exits nonzero when any executed criterion fails.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <sstream>
#include <vector>

#include "sarmip/bnb.hpp"
#include "sarmip/errors.hpp"
#include "sarmip/experiment.hpp"
#include "sarmip/fixtures.hpp"
#include "sarmip/geometry.hpp"
#include "sarmip/heuristics.hpp"
#include "sarmip/io.hpp"
#include "sarmip/metrics.hpp"
#include "sarmip/mip_build.hpp"
#include "sarmip/plan.hpp"
#include "sarmip/rng.hpp"
#include "sarmip/simplex.hpp"
#include "sarmip/simulator.hpp"
#include "support/oracle.hpp"

using namespace sarmip;
using sarmip::testing::enumerate_agent_plans;
using sarmip::testing::enumerate_optimum;
using sarmip::testing::random_directive;
using sarmip::testing::random_tiny_scenario;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

SolverConfig exact_config() {
    SolverConfig cfg;
    cfg.time_limit_s = 600.0;
    cfg.target_gap = 1e-9;
    return cfg;
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------- criterion 1
Outcome oracle_optimality() {
    Rng rng(101);
    int instances = 0;
    for (int trial = 0; instances < 20 && trial < 60; ++trial) {
        Scenario sc = random_tiny_scenario(rng);
        CompiledScenario compiled = compile_scenario(sc);
        PlannerModel pm = build_core(compiled);
        auto outcome = branch_and_bound(pm.mip, exact_config());
        if (outcome.status != SolveStatus::optimal)
            return {false, "instance " + std::to_string(trial) + ": solver status " +
                               to_string(outcome.status)};
        auto oracle = enumerate_optimum(sc, {});
        if (std::abs(outcome.objective - oracle.best_score) > 1e-6)
            return {false, "instance " + std::to_string(trial) + ": solver " +
                               fmt(outcome.objective) + " vs oracle " + fmt(oracle.best_score)};
        auto decoded = decode(pm, outcome.incumbent); // must decode cleanly
        (void)decoded;
        ++instances;
    }
    return {instances >= 20,
            std::to_string(instances) + " random tiny instances match the enumeration oracle"};
}

// ---------------------------------------------------------------- criterion 2
Outcome directive_linearization() {
    Rng rng(202);
    const DirectiveKind kinds[] = {DirectiveKind::coalition, DirectiveKind::network,
                                   DirectiveKind::interference_avoidance,
                                   DirectiveKind::sparsity};
    int instances = 0;
    int hard_checked = 0;
    for (int trial = 0; instances < 20 && trial < 80; ++trial) {
        Scenario sc = random_tiny_scenario(rng, 2);
        if (sc.agents.size() < 2)
            continue;
        DirectiveKind kind = kinds[instances % 4];
        Directive soft = random_directive(rng, sc, kind, false);
        soft.weight = 0.002 + 0.01 * rng.next_real(); // keep the slack pinned

        CompiledScenario compiled = compile_scenario(sc);
        PlannerModel pm = build_core(compiled);
        attach_occupancy(pm);
        attach_directive(pm, soft);
        auto outcome = branch_and_bound(pm.mip, exact_config());
        if (outcome.status != SolveStatus::optimal)
            return {false, "soft instance " + std::to_string(trial) + ": status " +
                               to_string(outcome.status)};
        auto decoded = decode(pm, outcome.incumbent);
        const auto& report = decoded.directive_reports[0];
        for (int t = 0; t < sc.time.budget_T; ++t)
            if (std::abs(report.model_u[t] - report.compliance[t]) > 1e-6)
                return {false, "soft " + std::string(to_string(kind)) + " step " +
                                   std::to_string(t) + ": u " + fmt(report.model_u[t]) +
                                   " vs compliance " + fmt(report.compliance[t])};
        // The occupancy binaries must reproduce the decoded timeline exactly.
        for (std::size_t k = 0; k < sc.agents.size(); ++k) {
            auto timeline = timeline_of(decoded.mission.plans[k], sc);
            for (int t = 0; t < sc.time.budget_T; ++t)
                for (std::size_t i = 0; i < pm.agents[k].z.size(); ++i) {
                    double z = outcome.incumbent[pm.agents[k].z[i][t]];
                    double want = timeline.sectors[t] == static_cast<int>(i) ? 1.0 : 0.0;
                    if (std::abs(z - want) > 1e-6)
                        return {false, "occupancy/timeline mismatch at agent " +
                                           std::to_string(k) + " step " + std::to_string(t)};
                }
        }
        auto oracle_soft = enumerate_optimum(sc, {soft});
        if (std::abs(outcome.objective - oracle_soft.best_score) > 1e-6)
            return {false, "soft optimum " + fmt(outcome.objective) + " vs oracle " +
                               fmt(oracle_soft.best_score)};

        // Hard mode against the directive-filtered oracle.
        Directive hard = soft;
        hard.mode = DirectiveMode::hard;
        PlannerModel pm_hard = build_core(compiled);
        attach_occupancy(pm_hard);
        attach_directive(pm_hard, hard);
        auto hard_outcome = branch_and_bound(pm_hard.mip, exact_config());
        auto oracle_hard = enumerate_optimum(sc, {hard});
        if (!oracle_hard.feasible) {
            if (hard_outcome.status != SolveStatus::infeasible)
                return {false, "hard " + std::string(to_string(kind)) +
                                   ": oracle infeasible, solver " +
                                   to_string(hard_outcome.status)};
        } else {
            if (hard_outcome.status != SolveStatus::optimal)
                return {false, "hard " + std::string(to_string(kind)) + ": status " +
                                   to_string(hard_outcome.status)};
            if (std::abs(hard_outcome.objective - oracle_hard.best_score) > 1e-6)
                return {false, "hard optimum " + fmt(hard_outcome.objective) + " vs oracle " +
                                   fmt(oracle_hard.best_score)};
            auto hard_decoded = decode(pm_hard, hard_outcome.incumbent);
            for (int t = 0; t < sc.time.budget_T; ++t)
                if (hard_decoded.directive_reports[0].compliance[t] > 1e-9)
                    return {false, "hard solution violates the directive at step " +
                                       std::to_string(t)};
            ++hard_checked;
        }
        ++instances;
    }
    return {instances >= 20, std::to_string(instances) + " directive instances (u = compliance; " +
                                 std::to_string(hard_checked) + " hard optima match the oracle)"};
}

// ---------------------------------------------------------------- criterion 3
Outcome relaxation_and_gap() {
    Rng rng(303);
    for (int trial = 0; trial < 10; ++trial) {
        Scenario sc = random_tiny_scenario(rng);
        CompiledScenario compiled = compile_scenario(sc);
        PlannerModel pm = build_core(compiled);
        auto lp = solve_lp(pm.mip);
        auto outcome = branch_and_bound(pm.mip, exact_config());
        if (outcome.status != SolveStatus::optimal)
            return {false, "tiny instance did not solve"};
        if (lp.status != LpStatus::optimal || lp.value < outcome.objective - 1e-9)
            return {false, "LP relaxation " + fmt(lp.value) + " below incumbent " +
                               fmt(outcome.objective)};
        if (outcome.gap < 0.0 || outcome.bound < outcome.objective - 1e-9)
            return {false, "gap or bound out of order"};
    }

    Scenario medium = make_medium_scenario();
    CompiledScenario compiled = compile_scenario(medium);
    SolverConfig cfg;
    cfg.time_limit_s = 60.0;
    cfg.target_gap = 0.01;
    cfg.rng_seed = 7;
    PlanningResult planned = plan_mission(compiled, {}, cfg);
    if (planned.outcome.incumbent.empty())
        return {false, "medium fixture: no feasible plan within the limit"};
    if (planned.outcome.bound < planned.outcome.objective - 1e-9)
        return {false, "medium fixture: bound below incumbent"};
    if (planned.outcome.gap > 0.15)
        return {false, "medium fixture gap " + fmt(planned.outcome.gap) + " exceeds 15%"};
    return {true, "LP dominance on 10 instances; medium gap " + fmt(planned.outcome.gap) +
                      " (objective " + fmt(planned.outcome.objective) + ", bound " +
                      fmt(planned.outcome.bound) + ")"};
}

// --------------------------------------------------------- shared trend setup
ExperimentSpec trend_spec(Scenario scenario, std::vector<ExperimentVariant> variants,
                          bool interference, double solver_limit_s) {
    ExperimentSpec spec;
    spec.scenario = std::move(scenario);
    spec.variants = std::move(variants);
    spec.solver.time_limit_s = solver_limit_s;
    spec.solver.target_gap = 0.02;
    spec.solver.heuristic_restarts = 16;
    spec.sim.runs = 50;
    spec.sim.tick_s = 10.0;
    spec.sim.interference.enabled = interference;
    spec.sim.interference.range_m = 150.0;
    spec.metrics = default_metric_groups(spec.scenario);
    return spec;
}

bool coverage_within(const VariantOutcome& variant, const VariantOutcome& baseline,
                     double max_drop, std::string& why) {
    double drop = (baseline.coverage_pct.mean - variant.coverage_pct.mean) /
                  std::max(baseline.coverage_pct.mean, 1e-9);
    if (drop > max_drop) {
        why = "coverage drop " + fmt(drop * 100.0) + "% at " + variant.name;
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 4
Outcome interference_trend() {
    Scenario sc = make_medium_ground_scenario();
    std::vector<ExperimentVariant> variants;
    for (double range : {100.0, 150.0, 200.0})
        variants.push_back({"d" + std::to_string(static_cast<int>(range)),
                            interference_directives(sc, range, 1.0)});
    ExperimentSpec spec = trend_spec(std::move(sc), std::move(variants), true, 25.0);
    ExperimentResult result = run_experiment(spec, 11, 0);

    for (const auto& v : result.variants)
        if (v.failed)
            return {false, "variant " + v.name + " failed: " + v.failure};
    const auto& base = result.variants[0];
    const auto& d100 = result.variants[1];
    const auto& d150 = result.variants[2];
    const auto& d200 = result.variants[3];

    if (base.interference_s.mean <= 0.0)
        return {false, "baseline interference is zero; nothing to reduce"};
    if (!(d100.interference_s.mean >= d150.interference_s.mean - 1e-9 &&
          d150.interference_s.mean >= d200.interference_s.mean - 1e-9))
        return {false, "interference not monotone: " + fmt(d100.interference_s.mean) + " / " +
                           fmt(d150.interference_s.mean) + " / " +
                           fmt(d200.interference_s.mean)};
    if (d200.interference_s.mean > 0.7 * base.interference_s.mean)
        return {false, "200 m variant reduces interference only to " +
                           fmt(d200.interference_s.mean) + " from " +
                           fmt(base.interference_s.mean)};
    std::string why;
    for (const auto* v : {&d100, &d150, &d200})
        if (!coverage_within(*v, base, 0.15, why))
            return {false, why};
    return {true, "interference " + fmt(base.interference_s.mean) + " -> " +
                      fmt(d100.interference_s.mean) + "/" + fmt(d150.interference_s.mean) + "/" +
                      fmt(d200.interference_s.mean) + " s; coverage " +
                      fmt(base.coverage_pct.mean) + "% -> " + fmt(d200.coverage_pct.mean) + "%"};
}

// ---------------------------------------------------------------- criterion 5
Outcome coalition_trend() {
    Scenario sc = make_medium_mixed_scenario();
    std::vector<ExperimentVariant> variants;
    for (double range : {200.0, 150.0, 100.0})
        variants.push_back({"c" + std::to_string(static_cast<int>(range)),
                            coalition_directives(sc, range, 0.006)});
    ExperimentSpec spec = trend_spec(std::move(sc), std::move(variants), false, 25.0);
    ExperimentResult result = run_experiment(spec, 13, 0);

    for (const auto& v : result.variants)
        if (v.failed)
            return {false, "variant " + v.name + " failed: " + v.failure};
    const auto& base = result.variants[0];
    const auto& c200 = result.variants[1];
    const auto& c150 = result.variants[2];
    const auto& c100 = result.variants[3];

    if (!(c200.distance_m.mean >= c150.distance_m.mean - 1e-9 &&
          c150.distance_m.mean >= c100.distance_m.mean - 1e-9))
        return {false, "distance not monotone: " + fmt(c200.distance_m.mean) + " / " +
                           fmt(c150.distance_m.mean) + " / " + fmt(c100.distance_m.mean)};
    std::string why;
    for (const auto* v : {&c200, &c150, &c100})
        if (!coverage_within(*v, base, 0.15, why))
            return {false, why};
    return {true, "mean distance " + fmt(base.distance_m.mean) + " -> " +
                      fmt(c200.distance_m.mean) + "/" + fmt(c150.distance_m.mean) + "/" +
                      fmt(c100.distance_m.mean) + " m; coverage " + fmt(base.coverage_pct.mean) +
                      "% -> " + fmt(c100.coverage_pct.mean) + "%"};
}

// ---------------------------------------------------------------- criterion 6
Outcome sparsity_trend() {
    Scenario sc = make_medium_uav_scenario();
    std::vector<ExperimentVariant> variants;
    for (double dist : {100.0, 300.0, 500.0})
        variants.push_back({"s" + std::to_string(static_cast<int>(dist)),
                            sparsity_directives(sc, dist, 0.004)});
    ExperimentSpec spec = trend_spec(std::move(sc), std::move(variants), false, 25.0);
    ExperimentResult result = run_experiment(spec, 17, 0);

    for (const auto& v : result.variants)
        if (v.failed)
            return {false, "variant " + v.name + " failed: " + v.failure};
    const auto& base = result.variants[0];
    const auto& s100 = result.variants[1];
    const auto& s300 = result.variants[2];
    const auto& s500 = result.variants[3];

    if (!(s100.hull_m2.mean <= s300.hull_m2.mean + 1e-9 &&
          s300.hull_m2.mean <= s500.hull_m2.mean + 1e-9))
        return {false, "hull area not monotone: " + fmt(s100.hull_m2.mean) + " / " +
                           fmt(s300.hull_m2.mean) + " / " + fmt(s500.hull_m2.mean)};
    std::string why;
    for (const auto* v : {&s100, &s300, &s500})
        if (!coverage_within(*v, base, 0.15, why))
            return {false, why};
    return {true, "hull " + fmt(s100.hull_m2.mean) + " -> " + fmt(s300.hull_m2.mean) + " -> " +
                      fmt(s500.hull_m2.mean) + " m^2; coverage " + fmt(base.coverage_pct.mean) +
                      "% -> " + fmt(s500.coverage_pct.mean) + "%"};
}

// ---------------------------------------------------------------- criterion 7
Outcome coverage_model_consistency() {
    // Exact reproduction with single-cell sectors and no interference.
    Scenario tiny = make_tiny_scenario();
    CompiledScenario compiled = compile_scenario(tiny);
    MissionPlan m;
    m.plans.push_back({"h1", {"s0", "s1"}, {2, 1}});
    m.plans.push_back({"d1", {"s3", "s2"}, {1, 2}});
    auto predicted = plan_coverage(m, tiny, tiny.coverage_map);
    SimConfig cfg;
    cfg.runs = 1;
    cfg.rng_seed = 5;
    SimResult run = simulate_run(m, compiled, cfg, 0);
    for (std::size_t c = 0; c < predicted.per_cell.size(); ++c)
        if (std::abs(run.final_coverage[c] - predicted.per_cell[c]) > 1e-9)
            return {false, "single-cell sector coverage differs at cell " + std::to_string(c)};

    // Multi-cell sectors: 50-run mean within 10% of the uniform-split value.
    Scenario sc = make_small_scenario();
    CompiledScenario csc = compile_scenario(sc);
    MissionPlan plan;
    plan.plans.push_back({"h1", {"f5", "f6", "f7"}, {2, 1, 1}});
    plan.plans.push_back({"u1", {"c00", "c01", "c11"}, {1, 2, 1}});
    auto eq3 = plan_coverage(plan, sc, sc.coverage_map);
    SimConfig suite;
    suite.runs = 50;
    suite.rng_seed = 5;
    auto runs = run_suite(plan, csc, suite);
    double mean = 0.0;
    for (const auto& r : runs) {
        double total = 0.0;
        for (double v : r.final_coverage)
            total += v;
        mean += total;
    }
    mean /= runs.size();
    double rel = std::abs(mean - eq3.total) / std::max(eq3.total, 1e-9);
    if (rel > 0.10)
        return {false, "50-run mean " + fmt(mean) + " vs uniform-split " + fmt(eq3.total) +
                           " (relative " + fmt(rel) + ")"};
    return {true, "exact single-cell reproduction; multi-cell mean within " +
                      fmt(rel * 100.0) + "% of the uniform-split value"};
}

// ---------------------------------------------------------------- criterion 8
Outcome invariant_suites() {
    Rng rng(808);
    // Plan invariants: generated plans validate, mutations are caught.
    for (int i = 0; i < 1000; ++i) {
        Scenario sc = random_tiny_scenario(rng, 1);
        auto plans = enumerate_agent_plans(sc, sc.agents[0]);
        const AgentPlan& plan = plans[rng.next_below(static_cast<std::uint32_t>(plans.size()))];
        try {
            validate_plan(plan, sc);
        } catch (const InputError& e) {
            return {false, std::string("generated plan rejected: ") + e.what()};
        }
        AgentPlan broken = plan;
        broken.stay[0] += 1; // budget violation
        bool caught = false;
        try {
            validate_plan(broken, sc);
        } catch (const InputError&) {
            caught = true;
        }
        if (!caught)
            return {false, "budget violation not caught"};
    }

    // Coverage clamp.
    for (int i = 0; i < 1000; ++i) {
        Scenario sc = random_tiny_scenario(rng, 2);
        MissionPlan m;
        for (const auto& agent : sc.agents) {
            auto plans = enumerate_agent_plans(sc, agent);
            m.plans.push_back(plans[rng.next_below(static_cast<std::uint32_t>(plans.size()))]);
        }
        auto cov = plan_coverage(m, sc, sc.coverage_map);
        for (std::size_t c = 0; c < cov.per_cell.size(); ++c)
            if (cov.per_cell[c] > sc.coverage_map[c] + 1e-12)
                return {false, "clamp violated"};
    }

    // theta <= psi and equality with the brute-force scan.
    int pair_cases = 0;
    while (pair_cases < 1000) {
        Scenario sc = random_tiny_scenario(rng, 2);
        if (sc.agents.size() < 2)
            continue;
        MissionPlan m;
        for (const auto& agent : sc.agents) {
            auto plans = enumerate_agent_plans(sc, agent);
            m.plans.push_back(plans[rng.next_below(static_cast<std::uint32_t>(plans.size()))]);
        }
        auto profile = proximity_profile(m, sc, {sc.agents[0].id}, {sc.agents[1].id});
        Directive theta_probe{DirectiveKind::network, {sc.agents[0].id}, {sc.agents[1].id}, 0.0,
                              {}, DirectiveMode::soft, 0.1};
        for (int t = 0; t < sc.time.budget_T; ++t)
            theta_probe.steps.push_back(t);
        Directive psi_probe = theta_probe;
        psi_probe.kind = DirectiveKind::coalition;
        auto theta = sarmip::testing::oracle_violations(sc, m, theta_probe);
        auto psi = sarmip::testing::oracle_violations(sc, m, psi_probe);
        for (int t = 0; t < sc.time.budget_T; ++t) {
            if (profile.theta[t] > profile.psi[t] + 1e-12)
                return {false, "theta exceeds psi"};
            if (std::abs(profile.theta[t] - theta[t]) > 1e-9 ||
                std::abs(profile.psi[t] - psi[t]) > 1e-9)
                return {false, "profile disagrees with the brute-force scan"};
        }
        ++pair_cases;
    }

    // Hull rigid-motion invariance at 1e-9 relative.
    for (int i = 0; i < 1000; ++i) {
        std::vector<Point> pts;
        int n = 3 + rng.next_below(10);
        for (int j = 0; j < n; ++j)
            pts.push_back({rng.next_real() * 600.0, rng.next_real() * 600.0});
        double base = hull_area(pts);
        double angle = rng.next_real() * 6.283185307179586;
        double dx = rng.next_real() * 800.0 - 400.0;
        double dy = rng.next_real() * 800.0 - 400.0;
        std::vector<Point> moved;
        for (const Point& p : pts)
            moved.push_back({p.x * std::cos(angle) - p.y * std::sin(angle) + dx,
                             p.x * std::sin(angle) + p.y * std::cos(angle) + dy});
        double rotated = hull_area(moved);
        if (std::abs(rotated - base) > 1e-9 * std::max(1.0, base))
            return {false, "hull area not rigid-motion invariant: " + fmt(base) + " vs " +
                               fmt(rotated)};
    }

    // End-to-end determinism under a fixed seed.
    for (int i = 0; i < 1000; ++i) {
        Scenario sc = random_tiny_scenario(rng, 2);
        CompiledScenario compiled = compile_scenario(sc);
        MissionPlan m;
        for (const auto& agent : sc.agents) {
            auto plans = enumerate_agent_plans(sc, agent);
            m.plans.push_back(plans[rng.next_below(static_cast<std::uint32_t>(plans.size()))]);
        }
        SimConfig cfg;
        cfg.runs = 1;
        cfg.rng_seed = rng.next_u64();
        cfg.interference.enabled = sc.agents.size() > 1;
        SimResult a = simulate_run(m, compiled, cfg, 0);
        SimResult b = simulate_run(m, compiled, cfg, 0);
        if (a.trace != b.trace || a.final_coverage != b.final_coverage ||
            a.interference_s != b.interference_s)
            return {false, "simulation not deterministic under a fixed seed"};
    }

    // Full pipeline determinism: plan + simulate twice on the tiny fixture.
    {
        Scenario sc = make_tiny_scenario();
        CompiledScenario compiled = compile_scenario(sc);
        SolverConfig cfg = exact_config();
        cfg.rng_seed = 21;
        PlanningResult p1 = plan_mission(compiled, {}, cfg);
        PlanningResult p2 = plan_mission(compiled, {}, cfg);
        if (p1.outcome.incumbent != p2.outcome.incumbent)
            return {false, "planning pipeline not deterministic"};
    }
    return {true, "plan/clamp/proximity/hull/determinism properties hold on 1000 cases each"};
}

// Criterion 9 (cross-solver LP check) is manual by design: export the tiny
// fixture and compare an external solver's optimum against ours. See README.
Outcome cross_solver_note() {
    Scenario sc = make_tiny_scenario();
    CompiledScenario compiled = compile_scenario(sc);
    PlannerModel pm = build_core(compiled);
    auto outcome = branch_and_bound(pm.mip, exact_config());
    std::ostringstream lp;
    pm.mip.write_lp(lp);
    std::cout << "# manual check: feed the exported LP to an external MIP solver;\n"
              << "# expected optimum: " << fmt(outcome.objective) << "\n"
              << lp.str();
    return {true, "LP emitted for the manual cross-solver check"};
}

} // namespace

int main(int argc, char** argv) {
    struct Entry {
        int number;
        const char* title;
        Outcome (*run)();
    };
    const Entry entries[] = {
        {1, "oracle optimality on random tiny instances", oracle_optimality},
        {2, "directive linearization correctness", directive_linearization},
        {3, "relaxation dominance and gap sanity", relaxation_and_gap},
        {4, "interference trend", interference_trend},
        {5, "coalition trend", coalition_trend},
        {6, "sparsity trend", sparsity_trend},
        {7, "coverage-model consistency", coverage_model_consistency},
        {8, "invariant property suites", invariant_suites},
        {9, "cross-solver LP export (manual)", cross_solver_note},
    };

    std::string which = argc > 1 ? argv[1] : "all";
    bool all_pass = true;
    for (const Entry& entry : entries) {
        if (which != "all" && which != std::to_string(entry.number))
            continue;
        if (which == "all" && entry.number == 9)
            continue; // manual, not CI-gated
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = entry.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << entry.number
                  << ": " << entry.title << " — " << outcome.detail << " (" << fmt(secs)
                  << " s)\n";
        all_pass &= outcome.pass;
    }
    return all_pass ? 0 : 1;
}
