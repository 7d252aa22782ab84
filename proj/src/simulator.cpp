#include "sarmip/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sarmip/errors.hpp"
#include "sarmip/rng.hpp"

namespace sarmip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int nearest_cell(const CellGrid& grid, const std::vector<int>& cells, Point from) {
    int best = cells.front();
    double best_d = kInf;
    for (int c : cells) {
        double d = distance(grid.cell_center(c), from);
        if (d < best_d - 1e-12 || (d < best_d + 1e-12 && c < best)) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

struct AgentState {
    int task_sector = -1;
    int cell = 0;
    bool interfered = false;
    int target_cell = 0;
};

} // namespace

SimResult simulate_run(const MissionPlan& mission, const CompiledScenario& compiled,
                       const SimConfig& config, int run_index) {
    const Scenario& sc = compiled.src();
    validate_mission(mission, sc);

    double ratio = sc.time.delta_t_s / config.tick_s;
    int ticks_per_interval = static_cast<int>(std::llround(ratio));
    if (config.tick_s <= 0.0 || std::abs(ratio - ticks_per_interval) > 1e-9 ||
        ticks_per_interval < 1)
        throw InputError("tick_s must divide delta_t_s");
    if (config.interference.enabled && config.interference.range_m <= 0.0)
        throw InputError("interference range must be > 0");

    const int A = static_cast<int>(sc.agents.size());
    const int total_ticks = sc.time.budget_T * ticks_per_interval;

    // Plans may arrive in any order; align them with the scenario's agents.
    std::vector<PositionTimeline> timelines(A);
    for (int k = 0; k < A; ++k) {
        for (const auto& plan : mission.plans)
            if (plan.agent_id == sc.agents[k].id)
                timelines[k] = timeline_of(plan, sc);
    }

    std::uint64_t run_seed = derive_seed(config.rng_seed, "run", run_index);
    std::vector<Rng> rng;
    rng.reserve(A);
    for (int k = 0; k < A; ++k)
        rng.emplace_back(derive_seed(run_seed, "agent", k));

    std::vector<AgentState> state(A);
    std::vector<double> raw(sc.grid.cell_count(), 0.0);
    SimResult result;
    result.interference_s.assign(A, 0.0);
    if (config.record_trace)
        result.trace.reserve(total_ticks);

    auto sector_cells = [&](int k, int sector) -> const std::vector<int>& {
        return sc.layouts[compiled.agents[k].layout].sectors[sector].cells;
    };

    for (int tick = 0; tick < total_ticks; ++tick) {
        int interval = tick / ticks_per_interval;

        // Task boundaries follow the plan timeline exactly.
        for (int k = 0; k < A; ++k) {
            int sector = timelines[k].sectors[interval];
            if (sector == state[k].task_sector)
                continue;
            const auto& cells = sector_cells(k, sector);
            Point from = state[k].task_sector < 0
                             ? compiled.centroids[compiled.agents[k].layout][sector]
                             : sc.grid.cell_center(state[k].cell);
            state[k].cell = nearest_cell(sc.grid, cells, from);
            state[k].task_sector = sector;
            state[k].interfered = false; // a task change cancels interference
        }

        // Interference trials: nearest interferer within range, one Bernoulli
        // trial per dog and tick.
        if (config.interference.enabled) {
            const double R = config.interference.range_m;
            for (int k = 0; k < A; ++k) {
                if (sc.agents[k].kind != AgentKind::dog || state[k].interfered)
                    continue;
                int nearest = -1;
                double nearest_d = kInf;
                for (int l = 0; l < A; ++l) {
                    if (l == k)
                        continue;
                    const auto& kinds = config.interference.interferer_kinds;
                    if (std::find(kinds.begin(), kinds.end(), sc.agents[l].kind) == kinds.end())
                        continue;
                    double d = distance(sc.grid.cell_center(state[k].cell),
                                        sc.grid.cell_center(state[l].cell));
                    if (d < nearest_d) {
                        nearest_d = d;
                        nearest = l;
                    }
                }
                if (nearest < 0 || nearest_d >= R)
                    continue;
                double p = (R - nearest_d) / R;
                if (rng[k].bernoulli(p)) {
                    state[k].interfered = true;
                    state[k].target_cell = state[nearest].cell; // frozen at trial time
                }
            }
        }

        // Motion.
        for (int k = 0; k < A; ++k) {
            AgentState& a = state[k];
            if (a.interfered) {
                result.interference_s[k] += config.tick_s;
                if (a.cell != a.target_cell) {
                    Point target = sc.grid.cell_center(a.target_cell);
                    int best = a.cell;
                    double best_d = distance(sc.grid.cell_center(a.cell), target);
                    for (int nb : sc.grid.neighbors4(a.cell)) {
                        double d = distance(sc.grid.cell_center(nb), target);
                        if (d < best_d - 1e-12 || (d < best_d + 1e-12 && nb < best)) {
                            best_d = d;
                            best = nb;
                        }
                    }
                    a.cell = best;
                }
                if (a.cell == a.target_cell)
                    a.interfered = false; // arrival cancels the attraction
            } else {
                const auto& cells = sector_cells(k, a.task_sector);
                if (std::find(cells.begin(), cells.end(), a.cell) == cells.end()) {
                    // Left outside by a canceled attraction: head back to the
                    // nearest cell of the scheduled sector, one cell per tick.
                    int goal = nearest_cell(sc.grid, cells, sc.grid.cell_center(a.cell));
                    Point target = sc.grid.cell_center(goal);
                    int best = a.cell;
                    double best_d = distance(sc.grid.cell_center(a.cell), target);
                    for (int nb : sc.grid.neighbors4(a.cell)) {
                        double d = distance(sc.grid.cell_center(nb), target);
                        if (d < best_d - 1e-12 || (d < best_d + 1e-12 && nb < best)) {
                            best_d = d;
                            best = nb;
                        }
                    }
                    a.cell = best;
                } else {
                    std::vector<int> options{a.cell};
                    for (int nb : sc.grid.neighbors4(a.cell))
                        if (std::find(cells.begin(), cells.end(), nb) != cells.end())
                            options.push_back(nb);
                    a.cell =
                        options[rng[k].next_below(static_cast<std::uint32_t>(options.size()))];
                }
            }
        }

        // Coverage accrual at the occupied cell (interfered dogs keep
        // accruing along the cells they traverse).
        for (int k = 0; k < A; ++k)
            raw[state[k].cell] += sc.agents[k].coverage_rate[state[k].cell] * config.tick_s;

        if (config.record_trace) {
            std::vector<int> row(A);
            for (int k = 0; k < A; ++k)
                row[k] = state[k].cell;
            result.trace.push_back(std::move(row));
        }
    }

    result.final_coverage.resize(raw.size());
    double covered = 0.0, demand = 0.0;
    for (std::size_t c = 0; c < raw.size(); ++c) {
        result.final_coverage[c] = std::min(sc.coverage_map[c], raw[c]);
        covered += result.final_coverage[c];
        demand += sc.coverage_map[c];
    }
    result.coverage_pct = demand > 0.0 ? 100.0 * covered / demand : 100.0;
    return result;
}

std::vector<SimResult> run_suite(const MissionPlan& mission, const CompiledScenario& compiled,
                                 const SimConfig& config) {
    if (config.runs < 1)
        throw InputError("runs must be >= 1");
    std::vector<SimResult> results(config.runs);
    if (config.parallel) {
#ifdef _OPENMP
        int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
        for (int i = 0; i < config.runs; ++i)
            results[i] = simulate_run(mission, compiled, config, i);
    } else {
        for (int i = 0; i < config.runs; ++i)
            results[i] = simulate_run(mission, compiled, config, i);
    }
    return results;
}

} // namespace sarmip
