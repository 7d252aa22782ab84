#include "sarmip/fixtures.hpp"

#include "sarmip/errors.hpp"

namespace sarmip {

namespace {

SectorLayout single_cell_layout(const std::string& id, const std::string& prefix,
                                const CellGrid& grid) {
    SectorLayout layout;
    layout.id = id;
    for (int c = 0; c < grid.cell_count(); ++c)
        layout.sectors.push_back({prefix + std::to_string(c), {c}});
    return layout;
}

SectorLayout block_layout(const std::string& id, const std::string& prefix, const CellGrid& grid,
                          int block) {
    SectorLayout layout;
    layout.id = id;
    int rows = grid.height_cells / block;
    int cols = grid.width_cells / block;
    for (int br = 0; br < rows; ++br) {
        for (int bc = 0; bc < cols; ++bc) {
            Sector sector;
            sector.id = prefix + std::to_string(br) + std::to_string(bc);
            for (int r = 0; r < block; ++r)
                for (int c = 0; c < block; ++c)
                    sector.cells.push_back(grid.index(br * block + r, bc * block + c));
            layout.sectors.push_back(std::move(sector));
        }
    }
    return layout;
}

// 2x2 blocks anchored at the given rows/columns; anchors may overlap so the
// blocks tile the whole grid including the odd edge row and column.
SectorLayout anchored_block_layout(const std::string& id, const std::string& prefix,
                                   const CellGrid& grid, const std::vector<int>& anchors) {
    SectorLayout layout;
    layout.id = id;
    for (int ar : anchors) {
        for (int ac : anchors) {
            Sector sector;
            sector.id = prefix + std::to_string(ar) + std::to_string(ac);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    sector.cells.push_back(grid.index(ar + r, ac + c));
            layout.sectors.push_back(std::move(sector));
        }
    }
    return layout;
}

TraversabilityGraph adjacency_graph(const CellGrid& grid, const SectorLayout& layout) {
    return {layout.id, grid_adjacency_edges(grid, layout)};
}

std::vector<std::string> ids_of_kind(const Scenario& sc, AgentKind kind) {
    std::vector<std::string> out;
    for (const auto& agent : sc.agents)
        if (agent.kind == kind)
            out.push_back(agent.id);
    return out;
}

std::vector<int> all_steps(const Scenario& sc) {
    std::vector<int> steps;
    for (int t = 0; t < sc.time.budget_T; ++t)
        steps.push_back(t);
    return steps;
}

// Shared 7x7 geometry of the medium family.
struct MediumParts {
    CellGrid grid{7, 7, 100.0};
    CoverageMap coverage;
    SectorLayout ground;
    SectorLayout air;
    TraversabilityGraph ground_graph;
    TraversabilityGraph air_graph;
};

MediumParts medium_parts() {
    MediumParts p;
    p.coverage.assign(p.grid.cell_count(), 0.7);
    for (int r = 2; r <= 4; ++r)
        for (int c = 2; c <= 4; ++c)
            p.coverage[p.grid.index(r, c)] = 0.9;
    p.ground = single_cell_layout("ground", "g", p.grid);
    p.air = anchored_block_layout("air", "q", p.grid, {0, 2, 4, 5});
    p.ground_graph = adjacency_graph(p.grid, p.ground);
    p.air_graph = adjacency_graph(p.grid, p.air);
    return p;
}

std::vector<double> dog_rates(const CellGrid& grid) {
    std::vector<double> rates(grid.cell_count());
    for (int c = 0; c < grid.cell_count(); ++c)
        rates[c] = (1.0 / 300.0) * (1.0 - 0.25 * grid.row(c) / 6.0);
    return rates;
}

std::vector<double> human_rates(const CellGrid& grid) {
    std::vector<double> rates(grid.cell_count());
    for (int c = 0; c < grid.cell_count(); ++c)
        rates[c] = (1.0 / 300.0) * (0.75 + 0.25 * grid.row(c) / 6.0);
    return rates;
}

std::vector<double> uav_rates(const CellGrid& grid) {
    std::vector<double> rates(grid.cell_count());
    for (int c = 0; c < grid.cell_count(); ++c)
        rates[c] = (0.9 / 300.0) * (1.0 - 0.15 * ((grid.row(c) + grid.col(c)) % 2));
    return rates;
}

void add_dogs(Scenario& sc, const MediumParts& p) {
    const char* starts[] = {"g0", "g3", "g6"};
    for (int i = 0; i < 3; ++i)
        sc.agents.push_back({"dog" + std::to_string(i + 1), AgentKind::dog, dog_rates(p.grid),
                             "ground", {starts[i]}});
}

void add_humans(Scenario& sc, const MediumParts& p) {
    const char* starts[] = {"g42", "g45", "g48"};
    for (int i = 0; i < 3; ++i)
        sc.agents.push_back({"hum" + std::to_string(i + 1), AgentKind::human,
                             human_rates(p.grid), "ground", {starts[i]}});
}

void add_uavs(Scenario& sc, const MediumParts& p) {
    const char* starts[] = {"q00", "q04", "q40"};
    for (int i = 0; i < 3; ++i)
        sc.agents.push_back({"uav" + std::to_string(i + 1), AgentKind::uav, uav_rates(p.grid),
                             "air", {starts[i]}});
}

Scenario medium_base(bool dogs, bool humans, bool uavs, bool centered_demand = false,
                     double rate_scale = 1.0) {
    MediumParts p = medium_parts();
    Scenario sc;
    sc.grid = p.grid;
    sc.coverage_map = p.coverage;
    if (centered_demand) {
        // Demand concentrated on a 4x4 core; the fringe barely matters.
        for (int c = 0; c < p.grid.cell_count(); ++c) {
            bool core = p.grid.row(c) >= 1 && p.grid.row(c) <= 4 && p.grid.col(c) >= 1 &&
                        p.grid.col(c) <= 4;
            sc.coverage_map[c] = core ? 0.9 : 0.03;
        }
    }
    sc.time = {300.0, 7};
    bool ground_used = dogs || humans;
    if (ground_used) {
        sc.layouts.push_back(p.ground);
        sc.graphs.push_back(p.ground_graph);
    }
    if (uavs) {
        sc.layouts.push_back(p.air);
        sc.graphs.push_back(p.air_graph);
    }
    if (dogs)
        add_dogs(sc, p);
    if (humans)
        add_humans(sc, p);
    if (uavs)
        add_uavs(sc, p);
    if (rate_scale != 1.0)
        for (auto& agent : sc.agents)
            for (double& r : agent.coverage_rate)
                r *= rate_scale;
    return sc;
}

} // namespace

Scenario make_tiny_scenario() {
    Scenario sc;
    sc.grid = {2, 2, 100.0};
    sc.coverage_map.assign(4, 1.0);
    sc.time = {300.0, 3};
    sc.layouts.push_back(single_cell_layout("cells", "s", sc.grid));
    sc.graphs.push_back(adjacency_graph(sc.grid, sc.layouts[0]));
    sc.agents.push_back({"h1", AgentKind::human, std::vector<double>(4, 1.0 / 600.0), "cells",
                         {"s0"}});
    sc.agents.push_back({"d1", AgentKind::dog, std::vector<double>(4, 1.0 / 300.0), "cells",
                         {"s3"}});
    return sc;
}

Scenario make_small_scenario() {
    Scenario sc;
    sc.grid = {4, 4, 100.0};
    sc.coverage_map.assign(16, 1.0);
    sc.coverage_map[0] = 0.0;
    sc.coverage_map[15] = 0.0;
    for (int c = 0; c < 16; ++c)
        if ((sc.grid.row(c) + sc.grid.col(c)) % 2 == 1 && sc.coverage_map[c] > 0.0)
            sc.coverage_map[c] = 0.8;
    sc.time = {300.0, 4};

    sc.layouts.push_back(single_cell_layout("fine", "f", sc.grid));
    sc.layouts.push_back(block_layout("coarse", "c", sc.grid, 2));
    sc.graphs.push_back(adjacency_graph(sc.grid, sc.layouts[0]));
    sc.graphs.push_back(adjacency_graph(sc.grid, sc.layouts[1]));

    std::vector<double> human_rate(16);
    for (int c = 0; c < 16; ++c)
        human_rate[c] = (0.5 + 0.25 * ((sc.grid.row(c) + sc.grid.col(c)) % 3)) / 600.0;
    sc.agents.push_back({"h1", AgentKind::human, human_rate, "fine", {"f5"}});
    sc.agents.push_back({"u1", AgentKind::uav, std::vector<double>(16, 1.0 / 350.0), "coarse",
                         {"c00"}});
    return sc;
}

Scenario make_medium_scenario() { return medium_base(true, true, true); }
Scenario make_medium_ground_scenario() { return medium_base(true, true, false); }
Scenario make_medium_mixed_scenario() { return medium_base(false, true, true, true, 1.45); }
Scenario make_medium_uav_scenario() { return medium_base(false, false, true); }

std::vector<Directive> interference_directives(const Scenario& sc, double range_m,
                                               double weight) {
    auto dogs = ids_of_kind(sc, AgentKind::dog);
    auto humans = ids_of_kind(sc, AgentKind::human);
    if (dogs.empty() || humans.empty())
        throw InputError("interference study needs dogs and humans");
    std::vector<Directive> out;
    out.push_back({DirectiveKind::interference_avoidance, dogs, humans, range_m, all_steps(sc),
                   DirectiveMode::soft, weight});
    for (std::size_t i = 0; i < dogs.size(); ++i)
        for (std::size_t j = i + 1; j < dogs.size(); ++j)
            out.push_back({DirectiveKind::interference_avoidance,
                           {dogs[i]},
                           {dogs[j]},
                           range_m,
                           all_steps(sc),
                           DirectiveMode::soft,
                           weight});
    return out;
}

std::vector<Directive> coalition_directives(const Scenario& sc, double range_m, double weight) {
    auto humans = ids_of_kind(sc, AgentKind::human);
    auto uavs = ids_of_kind(sc, AgentKind::uav);
    if (humans.empty() || uavs.empty())
        throw InputError("coalition study needs humans and UAVs");
    return {{DirectiveKind::coalition, humans, uavs, range_m, all_steps(sc), DirectiveMode::soft,
             weight}};
}

std::vector<Directive> sparsity_directives(const Scenario& sc, double distance_m, double weight) {
    auto uavs = ids_of_kind(sc, AgentKind::uav);
    if (uavs.size() < 2)
        throw InputError("sparsity study needs at least 2 UAVs");
    // One directive per UAV pair; singleton groups make the pair distance the
    // group spread, so every pair is pushed apart.
    std::vector<Directive> out;
    for (std::size_t i = 0; i < uavs.size(); ++i)
        for (std::size_t j = i + 1; j < uavs.size(); ++j)
            out.push_back({DirectiveKind::sparsity,
                           {uavs[i]},
                           {uavs[j]},
                           distance_m,
                           all_steps(sc),
                           DirectiveMode::soft,
                           weight});
    return out;
}

} // namespace sarmip
