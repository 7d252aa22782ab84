#include <doctest.h>

#include <cmath>

#include "sarmip/errors.hpp"
#include "sarmip/fixtures.hpp"
#include "sarmip/metrics.hpp"
#include "sarmip/plan.hpp"
#include "sarmip/simulator.hpp"

using namespace sarmip;

namespace {

MissionPlan stay_put(const Scenario& sc) {
    MissionPlan m;
    for (const auto& agent : sc.agents)
        m.plans.push_back({agent.id, {agent.start_sectors[0]}, {sc.time.budget_T}});
    return m;
}

SimConfig quick(int runs = 1) {
    SimConfig cfg;
    cfg.runs = runs;
    cfg.tick_s = 10.0;
    cfg.rng_seed = 99;
    return cfg;
}

} // namespace

TEST_CASE("single-cell sectors reproduce the planning coverage exactly") {
    Scenario sc = make_tiny_scenario();
    CompiledScenario compiled = compile_scenario(sc);
    MissionPlan m;
    m.plans.push_back({"h1", {"s0", "s1"}, {2, 1}});
    m.plans.push_back({"d1", {"s3", "s2"}, {1, 2}});
    auto predicted = plan_coverage(m, sc, sc.coverage_map);

    SimResult run = simulate_run(m, compiled, quick(), 0);
    for (std::size_t c = 0; c < predicted.per_cell.size(); ++c)
        CHECK(run.final_coverage[c] == doctest::Approx(predicted.per_cell[c]).epsilon(1e-12));
    double pct = coverage_percentage(run.final_coverage, sc.coverage_map);
    CHECK(run.coverage_pct == doctest::Approx(pct));
}

TEST_CASE("tick length must divide the interval") {
    Scenario sc = make_tiny_scenario();
    CompiledScenario compiled = compile_scenario(sc);
    SimConfig cfg = quick();
    cfg.tick_s = 7.0;
    CHECK_THROWS_AS(simulate_run(stay_put(sc), compiled, cfg, 0), InputError);
}

TEST_CASE("same seed gives identical runs, serial or parallel") {
    Scenario sc = make_small_scenario();
    CompiledScenario compiled = compile_scenario(sc);
    MissionPlan m = stay_put(sc);

    SimConfig cfg = quick(8);
    cfg.interference.enabled = true;
    cfg.interference.range_m = 150.0;
    auto serial = run_suite(m, compiled, cfg);
    SimConfig par = cfg;
    par.parallel = true;
    par.threads = 4;
    auto parallel = run_suite(m, compiled, par);

    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].final_coverage == parallel[i].final_coverage);
        CHECK(serial[i].trace == parallel[i].trace);
        CHECK(serial[i].interference_s == parallel[i].interference_s);
    }

    auto again = run_suite(m, compiled, cfg);
    CHECK(serial[3].trace == again[3].trace);
}

TEST_CASE("agents stay inside their scheduled sector without interference") {
    Scenario sc = make_small_scenario();
    CompiledScenario compiled = compile_scenario(sc);
    MissionPlan m;
    m.plans.push_back({"h1", {"f5", "f6"}, {2, 2}});
    m.plans.push_back({"u1", {"c00", "c01"}, {3, 1}});
    SimResult run = simulate_run(m, compiled, quick(), 1);

    auto timeline_h = timeline_of(m.plans[0], sc);
    auto timeline_u = timeline_of(m.plans[1], sc);
    int tpi = 30; // 300 s / 10 s
    for (std::size_t tick = 0; tick < run.trace.size(); ++tick) {
        int interval = static_cast<int>(tick) / tpi;
        const auto& hs = sc.layouts[0].sectors[timeline_h.sectors[interval]].cells;
        const auto& us = sc.layouts[1].sectors[timeline_u.sectors[interval]].cells;
        CHECK(std::find(hs.begin(), hs.end(), run.trace[tick][0]) != hs.end());
        CHECK(std::find(us.begin(), us.end(), run.trace[tick][1]) != us.end());
    }
    CHECK(run.interference_s == std::vector<double>{0.0, 0.0}); // disabled
}

TEST_CASE("single-cell sectors never move the agent") {
    Scenario sc = make_tiny_scenario();
    CompiledScenario compiled = compile_scenario(sc);
    MissionPlan m = stay_put(sc);
    SimResult run = simulate_run(m, compiled, quick(), 2);
    for (const auto& row : run.trace) {
        CHECK(row[0] == 0); // h1 stays on cell 0
        CHECK(row[1] == 3); // d1 stays on cell 3
    }
}

TEST_CASE("random walk over a 2x2 sector is near-uniform in the long run") {
    Scenario sc;
    sc.grid = {2, 2, 100.0};
    sc.coverage_map.assign(4, 1.0);
    sc.time = {300.0, 3334}; // ~1e5 ticks at 10 s
    sc.layouts.push_back({"l", {{"whole", {0, 1, 2, 3}}}});
    sc.graphs.push_back({"l", {}});
    sc.agents.push_back({"a", AgentKind::human, std::vector<double>(4, 0.0), "l", {"whole"}});
    CompiledScenario compiled = compile_scenario(sc);

    MissionPlan m;
    m.plans.push_back({"a", {"whole"}, {3334}});
    SimResult run = simulate_run(m, compiled, quick(), 0);
    std::vector<long> counts(4, 0);
    for (const auto& row : run.trace)
        ++counts[row[0]];
    double total = static_cast<double>(run.trace.size());
    for (int c = 0; c < 4; ++c)
        CHECK(std::abs(counts[c] / total - 0.25) < 0.05 * 0.25 + 0.0125);
}

TEST_CASE("interference dynamics") {
    // Two single-cell sectors 100 m apart; cell size 50 m gives distance 100.
    Scenario sc;
    sc.grid = {3, 1, 50.0};
    sc.coverage_map.assign(3, 1.0);
    sc.time = {300.0, 2};
    sc.layouts.push_back({"l", {{"s0", {0}}, {"s1", {1}}, {"s2", {2}}}});
    sc.graphs.push_back({"l", grid_adjacency_edges(sc.grid, sc.layouts[0])});
    sc.agents.push_back({"dog", AgentKind::dog, std::vector<double>(3, 1.0 / 300.0), "l",
                         {"s0"}});
    sc.agents.push_back({"hum", AgentKind::human, std::vector<double>(3, 1.0 / 300.0), "l",
                         {"s2"}});
    CompiledScenario compiled = compile_scenario(sc);
    MissionPlan m;
    m.plans.push_back({"dog", {"s0"}, {2}});
    m.plans.push_back({"hum", {"s2"}, {2}});

    SUBCASE("distance at the range never fires") {
        SimConfig cfg = quick();
        cfg.interference.enabled = true;
        cfg.interference.range_m = 100.0; // d = 100 exactly: p = 0
        SimResult run = simulate_run(m, compiled, cfg, 0);
        CHECK(run.interference_s[0] == 0.0);
    }

    SUBCASE("co-located interferer fires immediately") {
        Scenario colocated = sc;
        colocated.agents[1].start_sectors = {"s0"};
        CompiledScenario cc = compile_scenario(colocated);
        MissionPlan mm;
        mm.plans.push_back({"dog", {"s0"}, {2}});
        mm.plans.push_back({"hum", {"s0"}, {2}});
        SimConfig cfg = quick();
        cfg.interference.enabled = true;
        cfg.interference.range_m = 100.0; // d = 0: p = 1
        SimResult run = simulate_run(mm, cc, cfg, 0);
        CHECK(run.interference_s[0] > 0.0);
        CHECK(run.interference_s[1] == 0.0); // humans are never interfered
    }

    SUBCASE("trial probability approximates (R - d) / R") {
        // Adjacent 50 m cells: d = 50, R = 200, so p = 0.75 per tick.
        SimConfig cfg = quick();
        cfg.interference.enabled = true;
        cfg.interference.range_m = 200.0;
        Scenario near = sc;
        near.agents[1].start_sectors = {"s1"};
        CompiledScenario cn = compile_scenario(near);
        MissionPlan mm;
        mm.plans.push_back({"dog", {"s0"}, {2}});
        mm.plans.push_back({"hum", {"s1"}, {2}});
        int fired = 0;
        const int trials = 2000;
        for (int run_index = 0; run_index < trials; ++run_index) {
            SimResult run = simulate_run(mm, cn, cfg, run_index);
            // A first-tick trial success moves the dog toward the human.
            if (run.trace[0][0] != 0)
                ++fired;
        }
        double p = static_cast<double>(fired) / trials;
        CHECK(p > 0.70);
        CHECK(p < 0.80);
    }

    SUBCASE("interferer kinds are configurable") {
        Scenario two_dogs = sc;
        two_dogs.agents[1].kind = AgentKind::dog;
        two_dogs.agents[1].start_sectors = {"s0"};
        CompiledScenario cd = compile_scenario(two_dogs);
        MissionPlan mm;
        mm.plans.push_back({"dog", {"s0"}, {2}});
        mm.plans.push_back({"hum", {"s0"}, {2}});
        SimConfig cfg = quick();
        cfg.interference.enabled = true;
        cfg.interference.range_m = 100.0;
        SimResult both = simulate_run(mm, cd, cfg, 0);
        CHECK(both.interference_s[0] > 0.0); // dogs interfere dogs by default
        cfg.interference.interferer_kinds = {AgentKind::human};
        SimResult humans_only = simulate_run(mm, cd, cfg, 0);
        CHECK(humans_only.interference_s[0] == 0.0);
        CHECK(humans_only.interference_s[1] == 0.0);
    }

    SUBCASE("attraction walks toward the frozen target and cancels on arrival") {
        SimConfig cfg = quick();
        cfg.interference.enabled = true;
        cfg.interference.range_m = 200.0; // p = 0.5 at the 100 m start distance
        SimResult run = simulate_run(m, compiled, cfg, 0);
        // Interference seconds accumulate in ticks and are non-decreasing.
        CHECK(run.interference_s[0] >= 0.0);
        CHECK(std::fmod(run.interference_s[0], cfg.tick_s) == doctest::Approx(0.0));
    }
}

TEST_CASE("interference seconds are zero when disabled") {
    Scenario sc = make_medium_ground_scenario();
    CompiledScenario compiled = compile_scenario(sc);
    MissionPlan m = stay_put(sc);
    SimConfig cfg = quick(2);
    auto runs = run_suite(m, compiled, cfg);
    for (const auto& run : runs)
        for (double s : run.interference_s)
            CHECK(s == 0.0);
}

TEST_CASE("task switches relocate to the nearest cell of the next sector") {
    Scenario sc = make_small_scenario();
    CompiledScenario compiled = compile_scenario(sc);
    MissionPlan m;
    m.plans.push_back({"h1", {"f5", "f6"}, {1, 3}});
    m.plans.push_back({"u1", {"c00", "c01"}, {1, 3}});
    SimResult run = simulate_run(m, compiled, quick(), 0);
    // First tick of interval 1 (tick 30): h1 must be exactly on cell 6, u1 on
    // the nearest cell of block c01 (columns 2..3), i.e. column 2 of its row.
    const auto& row = run.trace[30];
    CHECK(row[0] == 6);
    int prev_u = run.trace[29][1];
    int expected = sc.grid.index(sc.grid.row(prev_u), 2);
    CHECK(row[1] == expected);
}
