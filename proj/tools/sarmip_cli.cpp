#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sarmip/bnb.hpp"
#include "sarmip/errors.hpp"
#include "sarmip/experiment.hpp"
#include "sarmip/heuristics.hpp"
#include "sarmip/io.hpp"
#include "sarmip/metrics.hpp"
#include "sarmip/mip_build.hpp"
#include "sarmip/simulator.hpp"

namespace fs = std::filesystem;
using namespace sarmip;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNoIncumbent = 4;

struct GlobalOpts {
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out = ".";
};

fs::path out_file(const GlobalOpts& g, const std::string& name) {
    fs::create_directories(g.out);
    return fs::path(g.out) / name;
}

std::vector<Directive> load_directives_opt(const std::string& path, const Scenario& sc) {
    if (path.empty())
        return {};
    auto directives = load_directives(path, sc.time.budget_T);
    for (const auto& d : directives)
        validate_directive(d, sc);
    return directives;
}

void write_runs_csv(const fs::path& path, const Scenario& sc, const MetricGroups& groups,
                    const std::vector<SimResult>& runs) {
    std::vector<int> dogs, dist_a, dist_b, hull;
    for (std::size_t k = 0; k < sc.agents.size(); ++k)
        if (sc.agents[k].kind == AgentKind::dog)
            dogs.push_back(static_cast<int>(k));
    for (const auto& id : groups.distance_a)
        dist_a.push_back(sc.agent_index(id));
    for (const auto& id : groups.distance_b)
        dist_b.push_back(sc.agent_index(id));
    for (const auto& id : groups.hull)
        hull.push_back(sc.agent_index(id));

    std::ofstream out(path);
    out << "run,coverage_pct,interference_mean_s,mean_distance_m,hull_area_m2\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const SimResult& run = runs[i];
        std::vector<double> dog_seconds;
        for (int k : dogs)
            dog_seconds.push_back(run.interference_s[k]);
        double dist = dist_a.empty() || dist_b.empty()
                          ? 0.0
                          : mean_group_distance(run.trace, sc.grid, dist_a, dist_b);
        double area = hull.empty() ? 0.0 : time_avg_hull_area(run.trace, sc.grid, hull);
        out << i << "," << format_double(run.coverage_pct) << ","
            << format_double(interference_summary(dog_seconds).mean_s) << ","
            << format_double(dist) << "," << format_double(area) << "\n";
    }
}

json aggregate_json(const std::vector<double>& values) {
    Aggregate agg = aggregate(values);
    return {{"mean", agg.mean}, {"stddev", agg.stddev}, {"min", agg.min}, {"max", agg.max}};
}

void write_summary(const fs::path& path, const Scenario& sc, const MetricGroups& groups,
                   const std::vector<SimResult>& runs) {
    std::vector<int> dogs, dist_a, dist_b, hull;
    for (std::size_t k = 0; k < sc.agents.size(); ++k)
        if (sc.agents[k].kind == AgentKind::dog)
            dogs.push_back(static_cast<int>(k));
    for (const auto& id : groups.distance_a)
        dist_a.push_back(sc.agent_index(id));
    for (const auto& id : groups.distance_b)
        dist_b.push_back(sc.agent_index(id));
    for (const auto& id : groups.hull)
        hull.push_back(sc.agent_index(id));

    std::vector<double> coverage, interference, distance, area;
    for (const SimResult& run : runs) {
        coverage.push_back(run.coverage_pct);
        std::vector<double> dog_seconds;
        for (int k : dogs)
            dog_seconds.push_back(run.interference_s[k]);
        interference.push_back(interference_summary(dog_seconds).mean_s);
        distance.push_back(dist_a.empty() || dist_b.empty()
                               ? 0.0
                               : mean_group_distance(run.trace, sc.grid, dist_a, dist_b));
        area.push_back(hull.empty() ? 0.0 : time_avg_hull_area(run.trace, sc.grid, hull));
    }
    json j;
    j["format"] = 1;
    j["runs"] = runs.size();
    j["coverage_pct"] = aggregate_json(coverage);
    j["interference_mean_s"] = aggregate_json(interference);
    j["mean_distance_m"] = aggregate_json(distance);
    j["hull_area_m2"] = aggregate_json(area);
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

void write_trace_csv(const fs::path& path, const Scenario& sc,
                     const std::vector<SimResult>& runs) {
    std::ofstream out(path);
    out << "run,tick,agent,cell\n";
    for (std::size_t i = 0; i < runs.size(); ++i)
        for (std::size_t tick = 0; tick < runs[i].trace.size(); ++tick)
            for (std::size_t k = 0; k < runs[i].trace[tick].size(); ++k)
                out << i << "," << tick << "," << sc.agents[k].id << ","
                    << runs[i].trace[tick][k] << "\n";
}

int cmd_plan(const GlobalOpts& g, const std::string& scenario_path,
             const std::string& directives_path, const SolverConfig& base) {
    Scenario sc = load_scenario(scenario_path);
    CompiledScenario compiled = compile_scenario(sc);
    auto directives = load_directives_opt(directives_path, sc);

    std::ofstream log(out_file(g, "solver_log.txt"));
    SolverConfig config = base;
    config.rng_seed = g.seed;
    config.threads = g.threads;
    config.log = &log;

    PlanningResult planned = plan_mission(compiled, directives, config);
    const SolveOutcome& outcome = planned.outcome;
    std::cout << "status: " << to_string(outcome.status) << "\n"
              << "objective: " << format_double(outcome.objective) << "\n"
              << "bound: " << format_double(outcome.bound) << "\n"
              << "gap: " << format_double(outcome.gap) << "\n"
              << "nodes: " << outcome.nodes << "\n";
    if (outcome.status == SolveStatus::infeasible)
        return kExitInfeasible;
    if (outcome.incumbent.empty())
        return kExitNoIncumbent;
    save_plan(planned.mission, out_file(g, "plan.json"));
    std::cout << "coverage: " << format_double(planned.decoded.coverage) << "\n"
              << "plan: " << (fs::path(g.out) / "plan.json").string() << "\n";
    return 0;
}

int cmd_simulate(const GlobalOpts& g, const std::string& scenario_path,
                 const std::string& plan_path, SimConfig sim, bool trace) {
    Scenario sc = load_scenario(scenario_path);
    CompiledScenario compiled = compile_scenario(sc);
    MissionPlan mission = load_plan(plan_path);
    validate_mission(mission, sc);

    sim.rng_seed = g.seed;
    sim.threads = g.threads;
    sim.parallel = true;
    sim.record_trace = true;
    auto runs = run_suite(mission, compiled, sim);

    MetricGroups groups = default_metric_groups(sc);
    write_runs_csv(out_file(g, "runs.csv"), sc, groups, runs);
    write_summary(out_file(g, "summary.json"), sc, groups, runs);
    if (trace)
        write_trace_csv(out_file(g, "trace.csv"), sc, runs);

    std::vector<double> coverage;
    for (const auto& run : runs)
        coverage.push_back(run.coverage_pct);
    std::cout << "runs: " << runs.size() << "\n"
              << "coverage_pct mean: " << format_double(aggregate(coverage).mean) << "\n"
              << "results: " << (fs::path(g.out) / "runs.csv").string() << "\n";
    return 0;
}

int cmd_evaluate(const GlobalOpts& g, const std::string& scenario_path,
                 const std::string& plan_path, const std::string& directives_path) {
    Scenario sc = load_scenario(scenario_path);
    MissionPlan mission = load_plan(plan_path);
    validate_mission(mission, sc);
    auto directives = load_directives_opt(directives_path, sc);

    CoverageResult coverage = plan_coverage(mission, sc, sc.coverage_map);
    double required = 0.0;
    for (double v : sc.coverage_map)
        required += v;
    double pct = required > 0.0 ? 100.0 * coverage.total / required : 100.0;

    json report;
    report["format"] = 1;
    report["coverage_total"] = coverage.total;
    report["coverage_pct"] = pct;
    report["directives"] = json::array();

    std::cout << "coverage: " << format_double(coverage.total) << " ("
              << format_double(pct) << "% of requirement)\n";
    for (const auto& d : directives) {
        ProximityProfile profile = proximity_profile(mission, sc, d.group_a, d.group_b);
        auto violation = directive_compliance(profile, d);
        double total = 0.0;
        for (double v : violation)
            total += v;
        json jd;
        jd["kind"] = to_string(d.kind);
        jd["limit_m"] = d.limit_m;
        jd["mode"] = d.mode == DirectiveMode::hard ? "hard" : "soft";
        jd["violation_total_m"] = total;
        jd["violation_per_step_m"] = violation;
        report["directives"].push_back(jd);
        std::cout << "directive " << to_string(d.kind) << " limit "
                  << format_double(d.limit_m) << " m: total violation "
                  << format_double(total) << " m\n";
    }
    std::ofstream out(out_file(g, "evaluation.json"));
    out << report.dump(2) << "\n";
    return 0;
}

int cmd_experiment(const GlobalOpts& g, const std::string& spec_path) {
    ExperimentSpec spec = load_experiment(spec_path);
    std::ofstream log(out_file(g, "experiment_log.txt"));
    ExperimentResult result = run_experiment(spec, g.seed, g.threads, &log);

    std::ofstream report(out_file(g, "report.csv"));
    report << "variant,status,objective,bound,gap,coverage_pct,interference_s,"
              "mean_distance_m,hull_area_m2\n";
    std::cout << "variant            coverage_pct  interference_s  mean_distance_m  hull_area_m2\n";
    for (const auto& v : result.variants) {
        if (v.failed) {
            report << v.name << ",failed,,,,,,,\n";
            std::cout << v.name << "  FAILED: " << v.failure << "\n";
            continue;
        }
        report << v.name << "," << to_string(v.solver_status) << ","
               << format_double(v.objective) << "," << format_double(v.bound) << ","
               << format_double(v.gap) << "," << format_double(v.coverage_pct.mean) << ","
               << format_double(v.interference_s.mean) << ","
               << format_double(v.distance_m.mean) << "," << format_double(v.hull_m2.mean)
               << "\n";
        char line[160];
        std::snprintf(line, sizeof(line), "%-18s %11.2f %15.1f %16.1f %13.0f", v.name.c_str(),
                      v.coverage_pct.mean, v.interference_s.mean, v.distance_m.mean,
                      v.hull_m2.mean);
        std::cout << line << "\n";

        fs::path vdir = fs::path(g.out) / v.name;
        fs::create_directories(vdir);
        save_plan(v.mission, vdir / "plan.json");
        std::ofstream runs_csv(vdir / "runs.csv");
        runs_csv << "run,coverage_pct,interference_mean_s,mean_distance_m,hull_area_m2\n";
        for (std::size_t i = 0; i < v.run_coverage_pct.size(); ++i)
            runs_csv << i << "," << format_double(v.run_coverage_pct[i]) << ","
                     << format_double(v.run_interference_s[i]) << ","
                     << format_double(v.run_distance_m[i]) << ","
                     << format_double(v.run_hull_m2[i]) << "\n";
    }
    std::cout << "report: " << (fs::path(g.out) / "report.csv").string() << "\n";
    return 0;
}

int cmd_export_lp(const GlobalOpts& g, const std::string& scenario_path,
                  const std::string& directives_path, bool with_occupancy,
                  const std::string& lp_name) {
    Scenario sc = load_scenario(scenario_path);
    CompiledScenario compiled = compile_scenario(sc);
    auto directives = load_directives_opt(directives_path, sc);

    PlannerModel pm = build_core(compiled);
    if (!directives.empty() || with_occupancy)
        attach_occupancy(pm);
    for (const auto& d : directives)
        attach_directive(pm, d);

    fs::path path = out_file(g, lp_name);
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path.string() + "'");
    pm.mip.write_lp(out);
    if (!out)
        throw InputError("I/O error writing '" + path.string() + "'");
    std::cout << "variables: " << pm.mip.variable_count() << "\n"
              << "constraints: " << pm.mip.row_count() << "\n"
              << "lp: " << path.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sarmip: joint search-path and schedule planning for heterogeneous "
                 "search-and-rescue teams, with proximity directives and a seeded simulator"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--seed", g.seed, "top-level RNG seed (all randomness derives from it)");
    app.add_option("--threads", g.threads, "worker threads (0 = all); results are unaffected");
    app.add_option("--out", g.out, "output directory")->capture_default_str();

    std::string scenario_path, plan_path, directives_path, spec_path, lp_name = "model.lp";
    SolverConfig solver;
    solver.time_limit_s = 60.0;
    solver.target_gap = 0.02;
    SimConfig sim;
    bool trace = false;
    bool with_occupancy = false;
    bool no_interference = false;

    auto* plan = app.add_subcommand("plan", "build the model, warm start, branch and bound");
    plan->add_option("scenario", scenario_path)->required();
    plan->add_option("--directives", directives_path, "directive file (JSON array)");
    plan->add_option("--time-limit", solver.time_limit_s, "work-clock seconds")
        ->capture_default_str();
    plan->add_option("--gap", solver.target_gap, "target optimality gap")->capture_default_str();
    plan->add_option("--node-limit", solver.node_limit);
    plan->add_option("--restarts", solver.heuristic_restarts, "heuristic restarts")
        ->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "run the seeded discrete-time simulator");
    simulate->add_option("scenario", scenario_path)->required();
    simulate->add_option("plan", plan_path)->required();
    simulate->add_option("--runs", sim.runs)->capture_default_str();
    simulate->add_option("--tick", sim.tick_s, "seconds per tick")->capture_default_str();
    simulate->add_flag("--interference", sim.interference.enabled, "enable dog interference");
    simulate->add_flag("--no-interference", no_interference)->excludes("--interference");
    simulate->add_option("--interference-range", sim.interference.range_m)
        ->capture_default_str();
    simulate->add_flag("--trace", trace, "write the per-tick position trace (large)");

    auto* evaluate = app.add_subcommand("evaluate", "plan-level coverage and compliance");
    evaluate->add_option("scenario", scenario_path)->required();
    evaluate->add_option("plan", plan_path)->required();
    evaluate->add_option("--directives", directives_path);

    auto* experiment = app.add_subcommand("experiment", "plan + simulate every variant");
    experiment->add_option("spec", spec_path)->required();

    auto* export_lp = app.add_subcommand("export-lp", "write the model in LP format");
    export_lp->add_option("scenario", scenario_path)->required();
    export_lp->add_option("--directives", directives_path);
    export_lp->add_flag("--with-occupancy", with_occupancy,
                        "attach occupancy binaries even without directives");
    export_lp->add_option("--lp", lp_name, "output file name")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (*plan)
            return cmd_plan(g, scenario_path, directives_path, solver);
        if (*simulate) {
            if (no_interference)
                sim.interference.enabled = false;
            return cmd_simulate(g, scenario_path, plan_path, sim, trace);
        }
        if (*evaluate)
            return cmd_evaluate(g, scenario_path, plan_path, directives_path);
        if (*experiment)
            return cmd_experiment(g, spec_path);
        if (*export_lp)
            return cmd_export_lp(g, scenario_path, directives_path, with_occupancy, lp_name);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
