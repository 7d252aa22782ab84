#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "sarmip/geometry.hpp"

namespace sarmip {

// Square environment cells in row-major order from the north-west corner.
// Cell c sits at row c / width, column c % width; x grows eastward with the
// column, y grows southward with the row.
struct CellGrid {
    int width_cells = 0;
    int height_cells = 0;
    double cell_size_m = 0.0;

    int cell_count() const { return width_cells * height_cells; }
    bool valid_cell(int c) const { return c >= 0 && c < cell_count(); }
    int row(int c) const { return c / width_cells; }
    int col(int c) const { return c % width_cells; }
    int index(int r, int col_) const { return r * width_cells + col_; }

    Point cell_center(int c) const {
        return {(col(c) + 0.5) * cell_size_m, (row(c) + 0.5) * cell_size_m};
    }

    // In-grid 4-neighbors of a cell.
    std::vector<int> neighbors4(int c) const;
};

// Residual need of exploration per cell, in [0, 1].
using CoverageMap = std::vector<double>;

enum class AgentKind { uav, human, dog };

const char* to_string(AgentKind kind);
AgentKind agent_kind_from_string(const std::string& s);

struct Sector {
    std::string id;
    std::vector<int> cells;
};

// Assignable sectors of one or more agents. Sectors may overlap and differ in
// size; there is no partition requirement.
struct SectorLayout {
    std::string id;
    std::vector<Sector> sectors;

    int sector_index(const std::string& sector_id) const; // -1 when absent
};

// Directed sector adjacency: edge (i, j) allows a task at j right after one
// at i.
struct TraversabilityGraph {
    std::string layout_id;
    std::vector<std::pair<std::string, std::string>> edges;
};

struct AgentSpec {
    std::string id;
    AgentKind kind = AgentKind::human;
    std::vector<double> coverage_rate; // per-cell fraction per second
    std::string layout_id;
    std::vector<std::string> start_sectors;
};

struct TimeDiscretization {
    double delta_t_s = 0.0; // seconds per mission interval
    int budget_T = 0;       // intervals per agent schedule
};

struct Scenario {
    CellGrid grid;
    CoverageMap coverage_map;
    std::vector<SectorLayout> layouts;
    std::vector<TraversabilityGraph> graphs;
    std::vector<AgentSpec> agents;
    TimeDiscretization time;

    const SectorLayout* find_layout(const std::string& id) const;
    const TraversabilityGraph* find_graph(const std::string& layout_id) const;
    const AgentSpec* find_agent(const std::string& id) const;
    int agent_index(const std::string& id) const; // -1 when absent

    // Length of the grid diagonal; the scale used for default soft weights.
    double diameter_m() const;
};

// Expected per-interval coverage of `cell` from an agent tasked to `sector`:
// rate(cell) * delta_t / |sector| when the cell belongs to the sector, else 0.
double search_performance(const SectorLayout& layout, const AgentSpec& agent,
                          const std::string& sector_id, int cell,
                          const TimeDiscretization& time);

Point sector_centroid(const CellGrid& grid, const SectorLayout& layout,
                      const std::string& sector_id);

double sector_distance(const CellGrid& grid, const SectorLayout& layout_a,
                       const std::string& sector_i, const SectorLayout& layout_b,
                       const std::string& sector_j);

// Reports every invariant violation in the scenario; empty iff well-formed.
std::vector<std::string> validate_scenario(const Scenario& scenario);

// Helper for grid-aligned layouts: edges between sectors whose cell sets are
// 4-neighbor adjacent (or overlap), both directions.
std::vector<std::pair<std::string, std::string>> grid_adjacency_edges(const CellGrid& grid,
                                                                      const SectorLayout& layout);

// Precomputed lookup tables used by the solver, simulator and heuristics.
// Environment data is immutable after load; safe for concurrent readers.
struct CompiledAgent {
    int layout = 0;                               // index into Scenario::layouts
    std::vector<std::vector<int>> out_neighbors;  // per sector index
    std::vector<int> start_sectors;               // sector indices
    std::vector<std::vector<std::pair<int, double>>> phi; // per sector: (cell, phi)
    std::vector<double> phi_sector_total;         // sum_c phi(i, c) per sector
};

struct CompiledScenario {
    const Scenario* scenario = nullptr;
    std::vector<CompiledAgent> agents;
    std::vector<std::vector<Point>> centroids; // per layout, per sector

    const Scenario& src() const { return *scenario; }
    double centroid_distance(int layout_a, int sector_i, int layout_b, int sector_j) const {
        return distance(centroids[layout_a][sector_i], centroids[layout_b][sector_j]);
    }
};

// Throws InputError when the scenario fails validation.
CompiledScenario compile_scenario(const Scenario& scenario);

} // namespace sarmip
