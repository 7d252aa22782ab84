#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sarmip/experiment.hpp"
#include "sarmip/fixtures.hpp"
#include "sarmip/io.hpp"

using namespace sarmip;
namespace fs = std::filesystem;

namespace {

ExperimentSpec quick_spec(Scenario sc) {
    ExperimentSpec spec;
    spec.scenario = std::move(sc);
    spec.solver.time_limit_s = 5.0;
    spec.solver.target_gap = 0.05;
    spec.solver.heuristic_restarts = 2;
    spec.sim.runs = 3;
    spec.metrics = default_metric_groups(spec.scenario);
    return spec;
}

} // namespace

TEST_CASE("a baseline-only experiment produces one row") {
    ExperimentSpec spec = quick_spec(make_tiny_scenario());
    ExperimentResult result = run_experiment(spec, 3, 0);
    REQUIRE(result.variants.size() == 1);
    CHECK(result.variants[0].name == "baseline");
    CHECK(!result.variants[0].failed);
    CHECK(result.variants[0].run_coverage_pct.size() == 3);
    Aggregate agg = result.variants[0].coverage_pct;
    CHECK(agg.mean >= agg.min);
    CHECK(agg.mean <= agg.max);
}

TEST_CASE("a failing variant does not abort the experiment") {
    Scenario sc = make_small_scenario();
    ExperimentSpec spec = quick_spec(sc);
    // Hard sparsity far beyond the grid diameter is infeasible.
    Directive impossible{DirectiveKind::sparsity, {"h1"}, {"u1"}, 5000.0, {0, 1, 2, 3},
                         DirectiveMode::hard, 0.0};
    spec.variants.push_back({"impossible", {impossible}});
    spec.variants.push_back({"plain", {}});

    ExperimentResult result = run_experiment(spec, 5, 0);
    REQUIRE(result.variants.size() == 3);
    CHECK(!result.variants[0].failed); // baseline
    CHECK(result.variants[1].failed);
    // Either proven infeasible or stopped without an incumbent; both surface
    // as "no plan" and must not abort the other variants.
    CHECK(result.variants[1].failure.find("no plan") != std::string::npos);
    CHECK(!result.variants[2].failed);
}

TEST_CASE("identical experiments give identical results") {
    ExperimentSpec spec = quick_spec(make_small_scenario());
    spec.variants.push_back(
        {"c300", {{DirectiveKind::coalition, {"h1"}, {"u1"}, 300.0, {0, 1, 2, 3},
                   DirectiveMode::soft, 0.01}}});
    ExperimentResult a = run_experiment(spec, 7, 0);
    ExperimentResult b = run_experiment(spec, 7, 2);
    REQUIRE(a.variants.size() == b.variants.size());
    for (std::size_t v = 0; v < a.variants.size(); ++v) {
        CHECK(a.variants[v].objective == b.variants[v].objective);
        CHECK(a.variants[v].run_coverage_pct == b.variants[v].run_coverage_pct);
        CHECK(a.variants[v].run_interference_s == b.variants[v].run_interference_s);
        CHECK(a.variants[v].run_distance_m == b.variants[v].run_distance_m);
        CHECK(a.variants[v].run_hull_m2 == b.variants[v].run_hull_m2);
    }
}

TEST_CASE("a tiny work limit still emits the warm-start plan") {
    Scenario sc = make_medium_ground_scenario();
    CompiledScenario compiled = compile_scenario(sc);
    SolverConfig cfg;
    cfg.time_limit_s = 0.1;
    cfg.target_gap = 1e-9;
    cfg.heuristic_restarts = 2;
    PlanningResult planned = plan_mission(compiled, {}, cfg);
    CHECK(planned.outcome.status == SolveStatus::feasible_gap);
    REQUIRE(!planned.outcome.incumbent.empty());
    CHECK_NOTHROW(validate_mission(planned.mission, sc));
    CHECK(planned.outcome.gap >= 0.0);
}

#ifdef SARMIP_REPO_DIR
TEST_CASE("shipped fixture files match the builders byte for byte") {
    const fs::path repo = SARMIP_REPO_DIR;
    auto check = [&](const char* name, const Scenario& built) {
        fs::path shipped = repo / "fixtures" / name;
        REQUIRE_MESSAGE(fs::exists(shipped), "missing fixture ", shipped.string(),
                        " (run gen_fixtures)");
        fs::path tmp = fs::temp_directory_path() / "sarmip_fixture_check.json";
        save_scenario(built, tmp);
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        CHECK_MESSAGE(slurp(shipped) == slurp(tmp), name, " drifted; rerun gen_fixtures");
    };
    check("tiny.json", make_tiny_scenario());
    check("small.json", make_small_scenario());
    check("medium.json", make_medium_scenario());
    check("medium_ground.json", make_medium_ground_scenario());
    check("medium_mixed.json", make_medium_mixed_scenario());
    check("medium_uav.json", make_medium_uav_scenario());
}
#endif
