#include "sarmip/plan.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "sarmip/errors.hpp"

namespace sarmip {

int AgentPlan::stay_at(const std::string& sector_id) const {
    for (std::size_t i = 0; i < path.size(); ++i)
        if (path[i] == sector_id)
            return stay[i];
    return 0;
}

void validate_plan(const AgentPlan& plan, const Scenario& scenario) {
    const AgentSpec* agent = scenario.find_agent(plan.agent_id);
    if (!agent)
        throw InputError("plan for unknown agent '" + plan.agent_id + "'");
    const SectorLayout* layout = scenario.find_layout(agent->layout_id);
    const TraversabilityGraph* graph = scenario.find_graph(agent->layout_id);

    if (plan.path.empty())
        throw InputError("agent '" + plan.agent_id + "': empty path");
    if (plan.path.size() != plan.stay.size())
        throw InputError("agent '" + plan.agent_id + "': path and schedule lengths differ");

    std::unordered_set<std::string> seen;
    for (const auto& sec : plan.path) {
        if (layout->sector_index(sec) < 0)
            throw InputError("agent '" + plan.agent_id + "': unknown sector '" + sec + "'");
        if (!seen.insert(sec).second)
            throw InputError("agent '" + plan.agent_id + "': path revisits sector '" + sec +
                             "' (must be elementary)");
    }

    if (std::find(agent->start_sectors.begin(), agent->start_sectors.end(), plan.path.front()) ==
        agent->start_sectors.end())
        throw InputError("agent '" + plan.agent_id + "': path starts at '" + plan.path.front() +
                         "', not an accessible start sector");

    for (std::size_t i = 0; i + 1 < plan.path.size(); ++i) {
        bool connected = std::any_of(graph->edges.begin(), graph->edges.end(),
                                     [&](const auto& e) {
                                         return e.first == plan.path[i] &&
                                                e.second == plan.path[i + 1];
                                     });
        if (!connected)
            throw InputError("agent '" + plan.agent_id + "': consecutive sectors '" +
                             plan.path[i] + "' -> '" + plan.path[i + 1] +
                             "' are not connected in the traversability graph");
    }

    int total = 0;
    for (std::size_t i = 0; i < plan.stay.size(); ++i) {
        if (plan.stay[i] < 1)
            throw InputError("agent '" + plan.agent_id + "': schedule at '" + plan.path[i] +
                             "' must be >= 1");
        total += plan.stay[i];
    }
    if (total != scenario.time.budget_T)
        throw InputError("agent '" + plan.agent_id + "': schedule sums to " +
                         std::to_string(total) + ", budget is " +
                         std::to_string(scenario.time.budget_T));
}

void validate_mission(const MissionPlan& mission, const Scenario& scenario) {
    if (mission.plans.size() != scenario.agents.size())
        throw InputError("mission has " + std::to_string(mission.plans.size()) +
                         " plans for " + std::to_string(scenario.agents.size()) + " agents");
    std::unordered_set<std::string> seen;
    for (const auto& plan : mission.plans) {
        validate_plan(plan, scenario);
        if (!seen.insert(plan.agent_id).second)
            throw InputError("duplicate plan for agent '" + plan.agent_id + "'");
    }
}

PositionTimeline timeline_of(const AgentPlan& plan, const Scenario& scenario) {
    validate_plan(plan, scenario);
    const AgentSpec* agent = scenario.find_agent(plan.agent_id);
    const SectorLayout* layout = scenario.find_layout(agent->layout_id);

    PositionTimeline timeline;
    timeline.sectors.reserve(scenario.time.budget_T);
    for (std::size_t i = 0; i < plan.path.size(); ++i) {
        int sector = layout->sector_index(plan.path[i]);
        for (int k = 0; k < plan.stay[i]; ++k)
            timeline.sectors.push_back(sector);
    }
    return timeline;
}

CoverageResult plan_coverage(const MissionPlan& mission, const Scenario& scenario,
                             const CoverageMap& initial) {
    validate_mission(mission, scenario);
    if (initial.size() != static_cast<std::size_t>(scenario.grid.cell_count()))
        throw InputError("initial coverage map does not match the grid");

    std::vector<double> contribution(initial.size(), 0.0);
    for (const auto& plan : mission.plans) {
        const AgentSpec* agent = scenario.find_agent(plan.agent_id);
        const SectorLayout* layout = scenario.find_layout(agent->layout_id);
        for (std::size_t i = 0; i < plan.path.size(); ++i) {
            const Sector& sector = layout->sectors[layout->sector_index(plan.path[i])];
            double share = scenario.time.delta_t_s / static_cast<double>(sector.cells.size());
            for (int c : sector.cells)
                contribution[c] += agent->coverage_rate[c] * share * plan.stay[i];
        }
    }

    CoverageResult result;
    result.per_cell.resize(initial.size());
    for (std::size_t c = 0; c < initial.size(); ++c) {
        result.per_cell[c] = std::min(initial[c], contribution[c]);
        result.total += result.per_cell[c];
    }
    return result;
}

ProximityProfile proximity_profile(const MissionPlan& mission, const Scenario& scenario,
                                   const std::vector<std::string>& group_a,
                                   const std::vector<std::string>& group_b) {
    if (group_a.empty() || group_b.empty())
        throw InputError("proximity groups must be nonempty");
    for (const auto& id : group_a)
        if (std::find(group_b.begin(), group_b.end(), id) != group_b.end())
            throw InputError("proximity groups overlap on agent '" + id + "'");

    auto plan_of = [&](const std::string& id) -> const AgentPlan& {
        for (const auto& p : mission.plans)
            if (p.agent_id == id)
                return p;
        throw InputError("no plan for agent '" + id + "'");
    };

    struct Row {
        int layout;
        PositionTimeline timeline;
    };
    auto rows_for = [&](const std::vector<std::string>& group) {
        std::vector<Row> rows;
        for (const auto& id : group) {
            const AgentSpec* agent = scenario.find_agent(id);
            if (!agent)
                throw InputError("unknown agent '" + id + "' in proximity group");
            int li = 0;
            for (std::size_t i = 0; i < scenario.layouts.size(); ++i)
                if (scenario.layouts[i].id == agent->layout_id)
                    li = static_cast<int>(i);
            rows.push_back({li, timeline_of(plan_of(id), scenario)});
        }
        return rows;
    };
    std::vector<Row> rows_a = rows_for(group_a);
    std::vector<Row> rows_b = rows_for(group_b);

    std::vector<std::vector<Point>> centroids(scenario.layouts.size());
    for (std::size_t li = 0; li < scenario.layouts.size(); ++li)
        for (const auto& sector : scenario.layouts[li].sectors)
            centroids[li].push_back(sector_centroid(scenario.grid, scenario.layouts[li], sector.id));

    ProximityProfile profile;
    int T = scenario.time.budget_T;
    profile.theta.assign(T, std::numeric_limits<double>::infinity());
    profile.psi.assign(T, 0.0);
    for (int t = 0; t < T; ++t) {
        for (const Row& a : rows_a) {
            Point pa = centroids[a.layout][a.timeline.sectors[t]];
            for (const Row& b : rows_b) {
                Point pb = centroids[b.layout][b.timeline.sectors[t]];
                double d = distance(pa, pb);
                profile.theta[t] = std::min(profile.theta[t], d);
                profile.psi[t] = std::max(profile.psi[t], d);
            }
        }
    }
    return profile;
}

std::vector<double> directive_compliance(const ProximityProfile& profile,
                                         const Directive& directive) {
    int T = static_cast<int>(profile.theta.size());
    for (int t : directive.steps)
        if (t < 0 || t >= T)
            throw InputError("directive step " + std::to_string(t) +
                             " outside the profile window [0, " + std::to_string(T) + ")");

    std::vector<double> violation(T, 0.0);
    for (int t : directive.steps) {
        double v = 0.0;
        switch (directive.kind) {
        case DirectiveKind::coalition:
            v = profile.psi[t] - directive.limit_m;
            break;
        case DirectiveKind::network:
            v = profile.theta[t] - directive.limit_m;
            break;
        case DirectiveKind::interference_avoidance:
            v = directive.limit_m - profile.theta[t];
            break;
        case DirectiveKind::sparsity:
            v = directive.limit_m - profile.psi[t];
            break;
        }
        violation[t] = std::max(0.0, v);
    }
    return violation;
}

double soft_penalty(const MissionPlan& mission, const Scenario& scenario,
                    const std::vector<Directive>& directives) {
    double penalty = 0.0;
    for (const Directive& d : directives) {
        if (d.mode != DirectiveMode::soft)
            continue;
        ProximityProfile profile = proximity_profile(mission, scenario, d.group_a, d.group_b);
        auto violation = directive_compliance(profile, d);
        double total = std::accumulate(violation.begin(), violation.end(), 0.0);
        penalty += directive_weight(d, scenario) * total;
    }
    return penalty;
}

double plan_score(const MissionPlan& mission, const Scenario& scenario,
                  const std::vector<Directive>& directives) {
    return plan_coverage(mission, scenario, scenario.coverage_map).total -
           soft_penalty(mission, scenario, directives);
}

} // namespace sarmip
