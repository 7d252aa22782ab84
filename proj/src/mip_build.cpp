#include "sarmip/mip_build.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sarmip/errors.hpp"

namespace sarmip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string agent_tag(int k) { return "k" + std::to_string(k); }
std::string sector_tag(int i) { return i < 0 ? "d" : std::to_string(i); }

} // namespace

PlannerModel build_core(const CompiledScenario& compiled) {
    const Scenario& sc = compiled.src();
    const double T = sc.time.budget_T;

    PlannerModel pm;
    pm.compiled = &compiled;
    MipModel& mip = pm.mip;

    pm.agents.resize(sc.agents.size());
    for (std::size_t k = 0; k < sc.agents.size(); ++k) {
        const CompiledAgent& ca = compiled.agents[k];
        const SectorLayout& layout = sc.layouts[ca.layout];
        PlannerModel::AgentVars& av = pm.agents[k];
        const std::string kt = agent_tag(static_cast<int>(k));

        // Arcs: dummy departures, graph arcs, dummy returns; fixed order.
        for (int s : ca.start_sectors)
            av.arcs.push_back({-1, s, -1});
        for (std::size_t i = 0; i < layout.sectors.size(); ++i)
            for (int j : ca.out_neighbors[i])
                av.arcs.push_back({static_cast<int>(i), j, -1});
        for (std::size_t i = 0; i < layout.sectors.size(); ++i)
            av.arcs.push_back({static_cast<int>(i), -1, -1});

        for (auto& arc : av.arcs) {
            std::string name = "x_" + kt + "_" + sector_tag(arc.from) + "_" + sector_tag(arc.to);
            std::string role = "arc " + sc.agents[k].id + " " +
                               (arc.from < 0 ? std::string("start") : layout.sectors[arc.from].id) +
                               "->" +
                               (arc.to < 0 ? std::string("end") : layout.sectors[arc.to].id);
            arc.var = mip.add_variable(std::move(name), VarKind::binary, 0.0, 1.0, std::move(role));
        }
        for (std::size_t i = 0; i < layout.sectors.size(); ++i) {
            av.y.push_back(mip.add_variable("y_" + kt + "_" + std::to_string(i), VarKind::binary,
                                            0.0, 1.0,
                                            "visit " + sc.agents[k].id + " " + layout.sectors[i].id));
            av.t.push_back(mip.add_variable("t_" + kt + "_" + std::to_string(i), VarKind::integer,
                                            0.0, T,
                                            "arrival " + sc.agents[k].id + " " +
                                                layout.sectors[i].id));
            av.w.push_back(mip.add_variable("w_" + kt + "_" + std::to_string(i), VarKind::integer,
                                            0.0, T,
                                            "duration " + sc.agents[k].id + " " +
                                                layout.sectors[i].id));
        }
    }
    for (int c = 0; c < sc.grid.cell_count(); ++c) {
        int var = mip.add_variable("phi_" + std::to_string(c), VarKind::continuous, 0.0,
                                   sc.coverage_map[c], "coverage cell " + std::to_string(c));
        pm.phi.push_back(var);
        mip.set_objective(var, 1.0);
    }

    for (std::size_t k = 0; k < sc.agents.size(); ++k) {
        const CompiledAgent& ca = compiled.agents[k];
        const SectorLayout& layout = sc.layouts[ca.layout];
        PlannerModel::AgentVars& av = pm.agents[k];
        const std::string kt = agent_tag(static_cast<int>(k));
        int sectors = static_cast<int>(layout.sectors.size());

        // Exactly one departure from and one return to the dummy vertex.
        std::vector<std::pair<int, double>> depart, ret;
        for (const auto& arc : av.arcs) {
            if (arc.from < 0)
                depart.emplace_back(arc.var, 1.0);
            if (arc.to < 0)
                ret.emplace_back(arc.var, 1.0);
        }
        mip.add_row("depart_" + kt, std::move(depart), RowSense::eq, 1.0);
        mip.add_row("return_" + kt, std::move(ret), RowSense::eq, 1.0);

        // Path continuity: in-degree and out-degree of each sector equal y.
        for (int j = 0; j < sectors; ++j) {
            std::vector<std::pair<int, double>> in_row, out_row;
            for (const auto& arc : av.arcs) {
                if (arc.to == j)
                    in_row.emplace_back(arc.var, 1.0);
                if (arc.from == j)
                    out_row.emplace_back(arc.var, 1.0);
            }
            in_row.emplace_back(av.y[j], -1.0);
            out_row.emplace_back(av.y[j], -1.0);
            mip.add_row("flow_in_" + kt + "_" + std::to_string(j), std::move(in_row), RowSense::eq,
                        0.0);
            mip.add_row("flow_out_" + kt + "_" + std::to_string(j), std::move(out_row),
                        RowSense::eq, 0.0);
        }

        // Subtour elimination / time propagation, M = T.
        for (const auto& arc : av.arcs) {
            if (arc.from < 0 || arc.to < 0)
                continue;
            mip.add_row("mtz_" + kt + "_" + std::to_string(arc.from) + "_" +
                            std::to_string(arc.to),
                        {{av.t[arc.from], 1.0},
                         {av.w[arc.from], 1.0},
                         {av.t[arc.to], -1.0},
                         {arc.var, T}},
                        RowSense::le, T, /*lazy=*/true);
        }

        for (int i = 0; i < sectors; ++i) {
            mip.add_row("tlb_" + kt + "_" + std::to_string(i),
                        {{av.y[i], 1.0}, {av.t[i], -1.0}}, RowSense::le, 0.0);
            mip.add_row("wub_" + kt + "_" + std::to_string(i),
                        {{av.w[i], 1.0}, {av.y[i], -T}}, RowSense::le, 0.0);
            // Visited sectors consume at least one interval, so decoded
            // schedules are positive exactly on the path.
            mip.add_row("wlb_" + kt + "_" + std::to_string(i),
                        {{av.w[i], 1.0}, {av.y[i], -1.0}}, RowSense::ge, 0.0);
        }

        std::vector<std::pair<int, double>> budget;
        for (int i = 0; i < sectors; ++i)
            budget.emplace_back(av.w[i], 1.0);
        mip.add_row("budget_" + kt, std::move(budget), RowSense::eq, T);
    }

    // Coverage rows: phi_c bounded by the agents' contributions.
    for (int c = 0; c < sc.grid.cell_count(); ++c) {
        std::vector<std::pair<int, double>> row;
        row.emplace_back(pm.phi[c], 1.0);
        for (std::size_t k = 0; k < sc.agents.size(); ++k) {
            const CompiledAgent& ca = compiled.agents[k];
            for (std::size_t i = 0; i < ca.phi.size(); ++i)
                for (const auto& [cell, phi] : ca.phi[i])
                    if (cell == c && phi != 0.0)
                        row.emplace_back(pm.agents[k].w[i], -phi);
        }
        mip.add_row("cov_" + std::to_string(c), std::move(row), RowSense::le, 0.0);
    }
    return pm;
}

void attach_occupancy(PlannerModel& pm) {
    if (pm.occupancy)
        return;
    const Scenario& sc = pm.compiled->src();
    const int T = sc.time.budget_T;
    const double M = T + 1;
    MipModel& mip = pm.mip;

    for (std::size_t k = 0; k < sc.agents.size(); ++k) {
        const CompiledAgent& ca = pm.compiled->agents[k];
        const SectorLayout& layout = sc.layouts[ca.layout];
        PlannerModel::AgentVars& av = pm.agents[k];
        const std::string kt = agent_tag(static_cast<int>(k));
        int sectors = static_cast<int>(layout.sectors.size());

        av.z.assign(sectors, std::vector<int>(T, -1));
        for (int i = 0; i < sectors; ++i)
            for (int step = 0; step < T; ++step)
                av.z[i][step] = mip.add_variable(
                    "z_" + kt + "_" + std::to_string(i) + "_s" + std::to_string(step),
                    VarKind::binary, 0.0, 1.0,
                    "occupancy " + sc.agents[k].id + " " + layout.sectors[i].id + " step " +
                        std::to_string(step));

        // One sector per step (the dummy consumes no time).
        for (int step = 0; step < T; ++step) {
            std::vector<std::pair<int, double>> row;
            for (int i = 0; i < sectors; ++i)
                row.emplace_back(av.z[i][step], 1.0);
            mip.add_row("occ_one_" + kt + "_s" + std::to_string(step), std::move(row),
                        RowSense::eq, 1.0);
        }
        // Step counts match durations.
        for (int i = 0; i < sectors; ++i) {
            std::vector<std::pair<int, double>> row;
            for (int step = 0; step < T; ++step)
                row.emplace_back(av.z[i][step], 1.0);
            row.emplace_back(av.w[i], -1.0);
            mip.add_row("occ_link_" + kt + "_" + std::to_string(i), std::move(row), RowSense::eq,
                        0.0);
        }
        // Contiguity: z(i,step) = 1 exactly when the 1-based interval step+1
        // lies in [t_i, t_i + w_i).
        for (int i = 0; i < sectors; ++i) {
            for (int step = 0; step < T; ++step) {
                mip.add_row("occ_lo_" + kt + "_" + std::to_string(i) + "_s" +
                                std::to_string(step),
                            {{av.t[i], 1.0}, {av.z[i][step], M}}, RowSense::le, step + 1 + M,
                            /*lazy=*/true);
                mip.add_row("occ_hi_" + kt + "_" + std::to_string(i) + "_s" +
                                std::to_string(step),
                            {{av.z[i][step], M}, {av.t[i], -1.0}, {av.w[i], -1.0}}, RowSense::le,
                            M - step - 2.0, /*lazy=*/true);
            }
        }
    }
    pm.occupancy = true;
}

void attach_directive(PlannerModel& pm, const Directive& directive) {
    const Scenario& sc = pm.compiled->src();
    validate_directive(directive, sc);
    if (!pm.occupancy)
        throw InputError("occupancy must be attached before directives");

    MipModel& mip = pm.mip;
    PlannerModel::AttachedDirective ad;
    ad.directive = directive;
    std::sort(ad.directive.steps.begin(), ad.directive.steps.end());
    ad.directive.steps.erase(std::unique(ad.directive.steps.begin(), ad.directive.steps.end()),
                             ad.directive.steps.end());
    ad.weight = directive_weight(directive, sc);

    const int d_ord = static_cast<int>(pm.directives.size());
    const std::string dt = "d" + std::to_string(d_ord);
    const bool soft = directive.mode == DirectiveMode::soft;
    const double D = directive.limit_m;

    std::vector<int> group_a, group_b;
    for (const auto& id : ad.directive.group_a)
        group_a.push_back(sc.agent_index(id));
    for (const auto& id : ad.directive.group_b)
        group_b.push_back(sc.agent_index(id));
    std::sort(group_a.begin(), group_a.end());
    std::sort(group_b.begin(), group_b.end());
    for (int a : group_a)
        for (int b : group_b)
            ad.cross_pairs.emplace_back(a, b);

    const bool pairwise = directive.kind == DirectiveKind::coalition ||
                          directive.kind == DirectiveKind::interference_avoidance;

    for (std::size_t sp = 0; sp < ad.directive.steps.size(); ++sp) {
        int step = ad.directive.steps[sp];
        const std::string st = "_s" + std::to_string(step);
        int u = mip.add_variable("u_" + dt + st, VarKind::continuous, 0.0, soft ? kInf : 0.0,
                                 "slack " + std::string(to_string(directive.kind)) + " step " +
                                     std::to_string(step));
        ad.u.push_back(u);
        if (soft)
            mip.add_objective(u, -ad.weight);

        std::vector<int> sels;
        if (!pairwise) {
            std::vector<std::pair<int, double>> one;
            for (std::size_t p = 0; p < ad.cross_pairs.size(); ++p) {
                int sel = mip.add_variable("sel_" + dt + "_p" + std::to_string(p) + st,
                                           VarKind::binary, 0.0, 1.0,
                                           "witness pair " + std::to_string(p) + " step " +
                                               std::to_string(step));
                sels.push_back(sel);
                one.emplace_back(sel, 1.0);
            }
            mip.add_row("selone_" + dt + st, std::move(one), RowSense::eq, 1.0);
        }

        for (std::size_t p = 0; p < ad.cross_pairs.size(); ++p) {
            auto [ka, kb] = ad.cross_pairs[p];
            const CompiledAgent& caa = pm.compiled->agents[ka];
            const CompiledAgent& cab = pm.compiled->agents[kb];
            int na = static_cast<int>(sc.layouts[caa.layout].sectors.size());
            int nb = static_cast<int>(sc.layouts[cab.layout].sectors.size());
            for (int i = 0; i < na; ++i) {
                for (int j = 0; j < nb; ++j) {
                    double psi = pm.compiled->centroid_distance(caa.layout, i, cab.layout, j);
                    double hinge = 0.0;
                    switch (directive.kind) {
                    case DirectiveKind::coalition:
                    case DirectiveKind::network:
                        hinge = psi - D;
                        break;
                    case DirectiveKind::interference_avoidance:
                    case DirectiveKind::sparsity:
                        hinge = D - psi;
                        break;
                    }
                    if (hinge <= 0.0)
                        continue; // this pair can never violate the limit
                    std::string name = "dir_" + dt + "_p" + std::to_string(p) + "_" +
                                       std::to_string(i) + "_" + std::to_string(j) + st;
                    if (pairwise) {
                        // u >= hinge * (z_a + z_b - 1)
                        mip.add_row(std::move(name),
                                    {{pm.agents[ka].z[i][step], hinge},
                                     {pm.agents[kb].z[j][step], hinge},
                                     {u, -1.0}},
                                    RowSense::le, hinge, /*lazy=*/true);
                    } else {
                        // u >= hinge * (z_a + z_b + sel - 2); binds only for
                        // the selected witness pair.
                        mip.add_row(std::move(name),
                                    {{pm.agents[ka].z[i][step], hinge},
                                     {pm.agents[kb].z[j][step], hinge},
                                     {sels[p], hinge},
                                     {u, -1.0}},
                                    RowSense::le, 2.0 * hinge, /*lazy=*/true);
                    }
                }
            }
        }
        ad.sel.push_back(std::move(sels));
    }
    pm.directives.push_back(std::move(ad));
}

namespace {

double rounded(double v) { return std::round(v); }

} // namespace

DecodedSolution decode(const PlannerModel& pm, const std::vector<double>& solution,
                       double integrality_tolerance) {
    const Scenario& sc = pm.compiled->src();
    if (solution.size() != pm.mip.variable_count())
        throw DecodeError("solution vector size mismatch");

    for (std::size_t j = 0; j < solution.size(); ++j) {
        if (pm.mip.variables()[j].kind == VarKind::continuous)
            continue;
        if (std::abs(solution[j] - rounded(solution[j])) > integrality_tolerance)
            throw DecodeError("variable " + pm.mip.variables()[j].name + " = " +
                              format_double(solution[j]) + " exceeds the integrality tolerance");
    }

    DecodedSolution out;
    for (std::size_t k = 0; k < sc.agents.size(); ++k) {
        const PlannerModel::AgentVars& av = pm.agents[k];
        const CompiledAgent& ca = pm.compiled->agents[k];
        const SectorLayout& layout = sc.layouts[ca.layout];
        const std::string& id = sc.agents[k].id;

        auto arc_on = [&](const PlannerModel::Arc& arc) {
            return rounded(solution[arc.var]) == 1.0;
        };

        int start = -1;
        for (const auto& arc : av.arcs) {
            if (arc.from < 0 && arc_on(arc)) {
                if (start >= 0)
                    throw DecodeError("agent '" + id + "': multiple departure arcs active");
                start = arc.to;
            }
        }
        if (start < 0)
            throw DecodeError("agent '" + id + "': no departure arc active");

        std::vector<int> path;
        std::vector<char> visited(layout.sectors.size(), 0);
        int current = start;
        while (true) {
            if (visited[current])
                throw DecodeError("agent '" + id + "': arcs revisit sector '" +
                                  layout.sectors[current].id + "'");
            visited[current] = 1;
            path.push_back(current);
            if (path.size() > layout.sectors.size())
                throw DecodeError("agent '" + id + "': arc walk does not terminate");
            int next = -2;
            for (const auto& arc : av.arcs) {
                if (arc.from == current && arc_on(arc)) {
                    if (next != -2)
                        throw DecodeError("agent '" + id + "': multiple outgoing arcs at '" +
                                          layout.sectors[current].id + "'");
                    next = arc.to;
                }
            }
            if (next == -2)
                throw DecodeError("agent '" + id + "': path breaks at '" +
                                  layout.sectors[current].id + "'");
            if (next < 0)
                break;
            current = next;
        }

        AgentPlan plan;
        plan.agent_id = id;
        int total = 0;
        for (int s : path) {
            int w = static_cast<int>(rounded(solution[av.w[s]]));
            if (w < 1)
                throw DecodeError("agent '" + id + "': visited sector '" + layout.sectors[s].id +
                                  "' has zero scheduled time");
            plan.path.push_back(layout.sectors[s].id);
            plan.stay.push_back(w);
            total += w;
        }
        for (std::size_t i = 0; i < layout.sectors.size(); ++i) {
            if (!visited[i] && rounded(solution[av.w[i]]) != 0.0)
                throw DecodeError("agent '" + id + "': unvisited sector '" +
                                  layout.sectors[i].id + "' has scheduled time");
            if (rounded(solution[av.y[i]]) != (visited[i] ? 1.0 : 0.0))
                throw DecodeError("agent '" + id + "': visit variable disagrees with arcs at '" +
                                  layout.sectors[i].id + "'");
        }
        if (total != sc.time.budget_T)
            throw DecodeError("agent '" + id + "': schedule sums to " + std::to_string(total) +
                              ", budget is " + std::to_string(sc.time.budget_T));
        out.mission.plans.push_back(std::move(plan));
    }

    validate_mission(out.mission, sc);

    out.coverage = plan_coverage(out.mission, sc, sc.coverage_map).total;
    out.model_coverage = 0.0;
    for (int var : pm.phi)
        out.model_coverage += solution[var];
    if (std::abs(out.coverage - out.model_coverage) > 1e-6)
        throw DecodeError("decoded coverage " + format_double(out.coverage) +
                          " disagrees with model coverage " + format_double(out.model_coverage));
    out.objective = pm.mip.objective_value(solution);

    for (const auto& ad : pm.directives) {
        DirectiveReport report;
        report.directive = ad.directive;
        report.model_u.assign(sc.time.budget_T, 0.0);
        for (std::size_t sp = 0; sp < ad.directive.steps.size(); ++sp)
            report.model_u[ad.directive.steps[sp]] = solution[ad.u[sp]];
        ProximityProfile profile =
            proximity_profile(out.mission, sc, ad.directive.group_a, ad.directive.group_b);
        report.compliance = directive_compliance(profile, ad.directive);
        out.directive_reports.push_back(std::move(report));
    }
    return out;
}

std::vector<double> assignment_from_mission(const PlannerModel& pm, const MissionPlan& mission) {
    const Scenario& sc = pm.compiled->src();
    validate_mission(mission, sc);
    std::vector<double> x(pm.mip.variable_count(), 0.0);

    std::vector<PositionTimeline> timelines(sc.agents.size());
    for (std::size_t k = 0; k < sc.agents.size(); ++k) {
        const AgentPlan* plan = nullptr;
        for (const auto& p : mission.plans)
            if (p.agent_id == sc.agents[k].id)
                plan = &p;
        if (!plan)
            throw InputError("mission has no plan for agent '" + sc.agents[k].id + "'");
        const PlannerModel::AgentVars& av = pm.agents[k];
        const CompiledAgent& ca = pm.compiled->agents[k];
        const SectorLayout& layout = sc.layouts[ca.layout];

        auto arc_var = [&](int from, int to) {
            for (const auto& arc : av.arcs)
                if (arc.from == from && arc.to == to)
                    return arc.var;
            throw InputError("plan uses arc absent from the model");
        };

        std::vector<int> path;
        for (const auto& sec : plan->path)
            path.push_back(layout.sector_index(sec));

        x[arc_var(-1, path.front())] = 1.0;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            x[arc_var(path[i], path[i + 1])] = 1.0;
        x[arc_var(path.back(), -1)] = 1.0;

        // Unvisited arrival times float; the budget value satisfies every
        // deactivated subtour row.
        for (std::size_t i = 0; i < layout.sectors.size(); ++i)
            x[av.t[i]] = sc.time.budget_T;
        int arrival = 1;
        for (std::size_t i = 0; i < path.size(); ++i) {
            x[av.y[path[i]]] = 1.0;
            x[av.w[path[i]]] = plan->stay[i];
            x[av.t[path[i]]] = arrival;
            arrival += plan->stay[i];
        }
        timelines[k] = timeline_of(*plan, sc);
        if (pm.occupancy)
            for (int step = 0; step < sc.time.budget_T; ++step)
                x[av.z[timelines[k].sectors[step]][step]] = 1.0;
    }

    // phi at its clamped maximum, matching what the LP would choose.
    CoverageResult coverage = plan_coverage(mission, sc, sc.coverage_map);
    for (std::size_t c = 0; c < coverage.per_cell.size(); ++c)
        x[pm.phi[c]] = coverage.per_cell[c];

    for (const auto& ad : pm.directives) {
        ProximityProfile profile =
            proximity_profile(mission, sc, ad.directive.group_a, ad.directive.group_b);
        auto violation = directive_compliance(profile, ad.directive);
        for (std::size_t sp = 0; sp < ad.directive.steps.size(); ++sp) {
            int step = ad.directive.steps[sp];
            // Hard-mode violations surface as bound violations when the
            // assignment is feasibility-checked; they are reported, not hidden.
            x[ad.u[sp]] = violation[step];
            if (!ad.sel.empty() && !ad.sel[sp].empty()) {
                bool want_min = ad.directive.kind == DirectiveKind::network;
                double best = want_min ? kInf : -kInf;
                std::size_t witness = 0;
                for (std::size_t p = 0; p < ad.cross_pairs.size(); ++p) {
                    auto [ka, kb] = ad.cross_pairs[p];
                    double d = pm.compiled->centroid_distance(
                        pm.compiled->agents[ka].layout, timelines[ka].sectors[step],
                        pm.compiled->agents[kb].layout, timelines[kb].sectors[step]);
                    if ((want_min && d < best) || (!want_min && d > best)) {
                        best = d;
                        witness = p;
                    }
                }
                x[ad.sel[sp][witness]] = 1.0;
            }
        }
    }
    return x;
}

} // namespace sarmip
