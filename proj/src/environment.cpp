#include "sarmip/environment.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sarmip/errors.hpp"

namespace sarmip {

std::vector<int> CellGrid::neighbors4(int c) const {
    std::vector<int> out;
    int r = row(c), k = col(c);
    if (r > 0)
        out.push_back(index(r - 1, k));
    if (k > 0)
        out.push_back(index(r, k - 1));
    if (k + 1 < width_cells)
        out.push_back(index(r, k + 1));
    if (r + 1 < height_cells)
        out.push_back(index(r + 1, k));
    return out;
}

const char* to_string(AgentKind kind) {
    switch (kind) {
    case AgentKind::uav: return "uav";
    case AgentKind::human: return "human";
    case AgentKind::dog: return "dog";
    }
    return "?";
}

AgentKind agent_kind_from_string(const std::string& s) {
    if (s == "uav")
        return AgentKind::uav;
    if (s == "human")
        return AgentKind::human;
    if (s == "dog")
        return AgentKind::dog;
    throw InputError("unknown agent kind '" + s + "'");
}

int SectorLayout::sector_index(const std::string& sector_id) const {
    for (std::size_t i = 0; i < sectors.size(); ++i)
        if (sectors[i].id == sector_id)
            return static_cast<int>(i);
    return -1;
}

const SectorLayout* Scenario::find_layout(const std::string& id) const {
    for (const auto& l : layouts)
        if (l.id == id)
            return &l;
    return nullptr;
}

const TraversabilityGraph* Scenario::find_graph(const std::string& layout_id) const {
    for (const auto& g : graphs)
        if (g.layout_id == layout_id)
            return &g;
    return nullptr;
}

const AgentSpec* Scenario::find_agent(const std::string& id) const {
    for (const auto& a : agents)
        if (a.id == id)
            return &a;
    return nullptr;
}

int Scenario::agent_index(const std::string& id) const {
    for (std::size_t i = 0; i < agents.size(); ++i)
        if (agents[i].id == id)
            return static_cast<int>(i);
    return -1;
}

double Scenario::diameter_m() const {
    return std::hypot(grid.width_cells * grid.cell_size_m, grid.height_cells * grid.cell_size_m);
}

double search_performance(const SectorLayout& layout, const AgentSpec& agent,
                          const std::string& sector_id, int cell,
                          const TimeDiscretization& time) {
    int si = layout.sector_index(sector_id);
    if (si < 0)
        throw InputError("unknown sector '" + sector_id + "' in layout '" + layout.id + "'");
    if (cell < 0 || cell >= static_cast<int>(agent.coverage_rate.size()))
        throw InputError("unknown cell id " + std::to_string(cell));
    const Sector& sector = layout.sectors[si];
    if (std::find(sector.cells.begin(), sector.cells.end(), cell) == sector.cells.end())
        return 0.0;
    return agent.coverage_rate[cell] * (time.delta_t_s / static_cast<double>(sector.cells.size()));
}

Point sector_centroid(const CellGrid& grid, const SectorLayout& layout,
                      const std::string& sector_id) {
    int si = layout.sector_index(sector_id);
    if (si < 0)
        throw InputError("unknown sector '" + sector_id + "' in layout '" + layout.id + "'");
    const Sector& sector = layout.sectors[si];
    if (sector.cells.empty())
        throw InputError("sector '" + sector_id + "' has no cells");
    Point sum{0.0, 0.0};
    for (int c : sector.cells) {
        if (!grid.valid_cell(c))
            throw InputError("sector '" + sector_id + "' references cell " + std::to_string(c) +
                             " outside the grid");
        Point p = grid.cell_center(c);
        sum.x += p.x;
        sum.y += p.y;
    }
    double n = static_cast<double>(sector.cells.size());
    return {sum.x / n, sum.y / n};
}

double sector_distance(const CellGrid& grid, const SectorLayout& layout_a,
                       const std::string& sector_i, const SectorLayout& layout_b,
                       const std::string& sector_j) {
    return distance(sector_centroid(grid, layout_a, sector_i),
                    sector_centroid(grid, layout_b, sector_j));
}

std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> report;
    auto bad = [&report](const std::string& msg) { report.push_back(msg); };

    if (s.grid.width_cells < 1 || s.grid.height_cells < 1)
        bad("grid: width and height must be >= 1");
    if (s.grid.cell_size_m <= 0.0)
        bad("grid: cell_size_m must be > 0");
    if (s.time.delta_t_s <= 0.0)
        bad("time: delta_t_s must be > 0");
    if (s.time.budget_T < 1)
        bad("time: budget_T must be >= 1");

    int n = std::max(0, s.grid.cell_count());
    if (static_cast<int>(s.coverage_map.size()) != n)
        bad("coverage_map: expected " + std::to_string(n) + " values, got " +
            std::to_string(s.coverage_map.size()));
    for (std::size_t c = 0; c < s.coverage_map.size(); ++c)
        if (!(s.coverage_map[c] >= 0.0 && s.coverage_map[c] <= 1.0))
            bad("coverage_map: value at cell " + std::to_string(c) + " outside [0,1]");

    std::unordered_set<std::string> layout_ids;
    for (const auto& layout : s.layouts) {
        if (!layout_ids.insert(layout.id).second)
            bad("layout '" + layout.id + "': duplicate id");
        std::unordered_set<std::string> sector_ids;
        for (const auto& sector : layout.sectors) {
            if (!sector_ids.insert(sector.id).second)
                bad("layout '" + layout.id + "': duplicate sector '" + sector.id + "'");
            if (sector.cells.empty())
                bad("layout '" + layout.id + "', sector '" + sector.id + "': empty cell set");
            for (int c : sector.cells)
                if (!s.grid.valid_cell(c))
                    bad("layout '" + layout.id + "', sector '" + sector.id +
                        "': dangling cell id " + std::to_string(c));
        }
    }

    std::unordered_set<std::string> graph_layouts;
    for (const auto& graph : s.graphs) {
        const SectorLayout* layout = s.find_layout(graph.layout_id);
        if (!layout) {
            bad("graph for unknown layout '" + graph.layout_id + "'");
            continue;
        }
        if (!graph_layouts.insert(graph.layout_id).second)
            bad("duplicate graph for layout '" + graph.layout_id + "'");
        for (const auto& [from, to] : graph.edges) {
            if (layout->sector_index(from) < 0 || layout->sector_index(to) < 0)
                bad("graph '" + graph.layout_id + "': edge (" + from + ", " + to +
                    ") references an unknown sector");
        }
    }

    std::unordered_set<std::string> agent_ids;
    for (const auto& agent : s.agents) {
        if (!agent_ids.insert(agent.id).second)
            bad("agent '" + agent.id + "': duplicate id");
        const SectorLayout* layout = s.find_layout(agent.layout_id);
        if (!layout)
            bad("agent '" + agent.id + "': unknown layout '" + agent.layout_id + "'");
        if (layout && !s.find_graph(agent.layout_id))
            bad("agent '" + agent.id + "': layout '" + agent.layout_id + "' has no graph");
        if (static_cast<int>(agent.coverage_rate.size()) != n)
            bad("agent '" + agent.id + "': coverage_rate must cover all " + std::to_string(n) +
                " cells");
        for (std::size_t c = 0; c < agent.coverage_rate.size(); ++c)
            if (!(agent.coverage_rate[c] >= 0.0))
                bad("agent '" + agent.id + "': negative coverage rate at cell " +
                    std::to_string(c));
        if (agent.start_sectors.empty())
            bad("agent '" + agent.id + "': empty start-sector set");
        if (layout)
            for (const auto& sec : agent.start_sectors)
                if (layout->sector_index(sec) < 0)
                    bad("agent '" + agent.id + "': start sector '" + sec +
                        "' not in layout '" + agent.layout_id + "'");
    }

    return report;
}

std::vector<std::pair<std::string, std::string>> grid_adjacency_edges(const CellGrid& grid,
                                                                      const SectorLayout& layout) {
    // Sectors are adjacent when some cell of one 4-neighbors (or equals) a
    // cell of the other.
    std::vector<std::set<int>> closures(layout.sectors.size());
    for (std::size_t i = 0; i < layout.sectors.size(); ++i) {
        for (int c : layout.sectors[i].cells) {
            closures[i].insert(c);
            for (int nb : grid.neighbors4(c))
                closures[i].insert(nb);
        }
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i < layout.sectors.size(); ++i) {
        for (std::size_t j = 0; j < layout.sectors.size(); ++j) {
            if (i == j)
                continue;
            bool touch = std::any_of(layout.sectors[j].cells.begin(), layout.sectors[j].cells.end(),
                                     [&](int c) { return closures[i].count(c) > 0; });
            if (touch)
                edges.emplace_back(layout.sectors[i].id, layout.sectors[j].id);
        }
    }
    return edges;
}

CompiledScenario compile_scenario(const Scenario& scenario) {
    auto report = validate_scenario(scenario);
    if (!report.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& line : report)
            msg += "\n  " + line;
        throw InputError(msg);
    }

    CompiledScenario out;
    out.scenario = &scenario;

    out.centroids.resize(scenario.layouts.size());
    for (std::size_t li = 0; li < scenario.layouts.size(); ++li) {
        const auto& layout = scenario.layouts[li];
        out.centroids[li].reserve(layout.sectors.size());
        for (const auto& sector : layout.sectors)
            out.centroids[li].push_back(sector_centroid(scenario.grid, layout, sector.id));
    }

    out.agents.resize(scenario.agents.size());
    for (std::size_t ai = 0; ai < scenario.agents.size(); ++ai) {
        const AgentSpec& agent = scenario.agents[ai];
        CompiledAgent& ca = out.agents[ai];
        for (std::size_t li = 0; li < scenario.layouts.size(); ++li)
            if (scenario.layouts[li].id == agent.layout_id)
                ca.layout = static_cast<int>(li);
        const SectorLayout& layout = scenario.layouts[ca.layout];
        const TraversabilityGraph* graph = scenario.find_graph(agent.layout_id);

        ca.out_neighbors.assign(layout.sectors.size(), {});
        for (const auto& [from, to] : graph->edges) {
            int fi = layout.sector_index(from);
            int ti = layout.sector_index(to);
            ca.out_neighbors[fi].push_back(ti);
        }
        for (auto& nbrs : ca.out_neighbors) {
            std::sort(nbrs.begin(), nbrs.end());
            nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        }

        for (const auto& sec : agent.start_sectors)
            ca.start_sectors.push_back(layout.sector_index(sec));
        std::sort(ca.start_sectors.begin(), ca.start_sectors.end());
        ca.start_sectors.erase(std::unique(ca.start_sectors.begin(), ca.start_sectors.end()),
                               ca.start_sectors.end());

        ca.phi.resize(layout.sectors.size());
        ca.phi_sector_total.assign(layout.sectors.size(), 0.0);
        for (std::size_t si = 0; si < layout.sectors.size(); ++si) {
            const Sector& sector = layout.sectors[si];
            double share = scenario.time.delta_t_s / static_cast<double>(sector.cells.size());
            for (int c : sector.cells) {
                double phi = agent.coverage_rate[c] * share;
                ca.phi[si].emplace_back(c, phi);
                ca.phi_sector_total[si] += phi;
            }
        }
    }
    return out;
}

} // namespace sarmip
