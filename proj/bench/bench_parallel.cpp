// Serial vs OpenMP timing for the two parallel kernels: the seeded
// simulation suite and the branch-and-bound node batches. Both paths must
// produce identical results; this binary reports the speedup.

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sarmip/bnb.hpp"
#include "sarmip/experiment.hpp"
#include "sarmip/fixtures.hpp"
#include "sarmip/heuristics.hpp"
#include "sarmip/mip_build.hpp"
#include "sarmip/simulator.hpp"

using namespace sarmip;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main() {
#ifdef _OPENMP
    std::cout << "OpenMP max threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP\n";
#endif

    // Simulation suite.
    Scenario sc = make_medium_ground_scenario();
    CompiledScenario compiled = compile_scenario(sc);
    MissionPlan plan = heuristic_construct(compiled, {}, 3);
    SimConfig cfg;
    cfg.runs = 200;
    cfg.rng_seed = 12;
    cfg.interference.enabled = true;
    cfg.interference.range_m = 150.0;

    auto t0 = std::chrono::steady_clock::now();
    auto serial = run_suite(plan, compiled, cfg);
    double serial_s = seconds_since(t0);

    cfg.parallel = true;
    t0 = std::chrono::steady_clock::now();
    auto parallel = run_suite(plan, compiled, cfg);
    double parallel_s = seconds_since(t0);

    bool identical = true;
    for (std::size_t i = 0; i < serial.size(); ++i)
        identical &= serial[i].trace == parallel[i].trace &&
                     serial[i].final_coverage == parallel[i].final_coverage;
    std::cout << "simulation suite (" << cfg.runs << " runs): serial " << serial_s
              << " s, parallel " << parallel_s << " s, speedup "
              << (parallel_s > 0 ? serial_s / parallel_s : 0.0)
              << (identical ? " (results identical)" : " (RESULTS DIFFER)") << "\n";

    // Branch-and-bound node batches.
    PlannerModel pm = build_core(compiled);
    SolverConfig solver;
    solver.time_limit_s = 10.0;
    solver.target_gap = 1e-9;
    auto warm = assignment_from_mission(pm, plan);

    solver.threads = 1;
    t0 = std::chrono::steady_clock::now();
    auto one = branch_and_bound(pm.mip, solver, &warm);
    double one_s = seconds_since(t0);

    solver.threads = 0; // all available
    t0 = std::chrono::steady_clock::now();
    auto many = branch_and_bound(pm.mip, solver, &warm);
    double many_s = seconds_since(t0);

    std::cout << "branch and bound (work limit " << solver.time_limit_s << " s): 1 thread "
              << one_s << " s, all threads " << many_s << " s, speedup "
              << (many_s > 0 ? one_s / many_s : 0.0)
              << (one.incumbent == many.incumbent ? " (incumbents identical)"
                                                  : " (INCUMBENTS DIFFER)")
              << "\n";
    std::cout << "objective " << one.objective << ", bound " << one.bound << ", nodes "
              << one.nodes << "\n";
    return 0;
}
