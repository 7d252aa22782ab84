#include "sarmip/io.hpp"

#include <fstream>

#include <json.hpp>

#include "sarmip/errors.hpp"

namespace sarmip {

namespace {

using nlohmann::json;

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("parse error in '" + path.string() + "': " + e.what());
    }
}

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path.string() + "'");
    out << j.dump(2) << "\n";
    if (!out)
        throw InputError("I/O error writing '" + path.string() + "'");
}

void expect_object(const json& j, const std::string& where) {
    if (!j.is_object())
        throw InputError(where + ": expected an object");
}

// Strictness: every present key must be known.
void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool known = false;
        for (const char* k : keys)
            known |= key == k;
        if (!known)
            throw InputError(where + ": unknown field '" + key + "'");
    }
}

const json& require(const json& j, const std::string& where, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw InputError(where + ": missing field '" + key + "'");
    return *it;
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number())
        throw InputError(where + ": expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw InputError(where + ": expected an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string())
        throw InputError(where + ": expected a string");
    return j.get<std::string>();
}

std::vector<double> as_number_array(const json& j, const std::string& where) {
    if (!j.is_array())
        throw InputError(where + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j)
        out.push_back(as_number(v, where));
    return out;
}

std::vector<std::string> as_string_array(const json& j, const std::string& where) {
    if (!j.is_array())
        throw InputError(where + ": expected an array of strings");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& v : j)
        out.push_back(as_string(v, where));
    return out;
}

void check_format(const json& j, const std::string& where) {
    if (as_int(require(j, where, "format"), where + ".format") != 1)
        throw InputError(where + ": unsupported format version");
}

Directive directive_from_json(const json& j, const std::string& where, int budget_T) {
    expect_object(j, where);
    check_keys(j, where, {"kind", "groupA", "groupB", "limit_m", "steps", "mode", "weight"});
    Directive d;
    d.kind = directive_kind_from_string(as_string(require(j, where, "kind"), where + ".kind"));
    d.group_a = as_string_array(require(j, where, "groupA"), where + ".groupA");
    d.group_b = as_string_array(require(j, where, "groupB"), where + ".groupB");
    d.limit_m = as_number(require(j, where, "limit_m"), where + ".limit_m");
    const json& steps = require(j, where, "steps");
    if (steps.is_string() && steps.get<std::string>() == "all") {
        for (int t = 0; t < budget_T; ++t)
            d.steps.push_back(t);
    } else if (steps.is_array()) {
        for (const auto& v : steps)
            d.steps.push_back(as_int(v, where + ".steps"));
    } else {
        throw InputError(where + ".steps: expected an array or \"all\"");
    }
    std::string mode = as_string(require(j, where, "mode"), where + ".mode");
    if (mode == "hard")
        d.mode = DirectiveMode::hard;
    else if (mode == "soft")
        d.mode = DirectiveMode::soft;
    else
        throw InputError(where + ".mode: expected \"hard\" or \"soft\"");
    if (j.contains("weight"))
        d.weight = as_number(j["weight"], where + ".weight");
    return d;
}

json directive_to_json(const Directive& d) {
    json j;
    j["kind"] = to_string(d.kind);
    j["groupA"] = d.group_a;
    j["groupB"] = d.group_b;
    j["limit_m"] = d.limit_m;
    j["steps"] = d.steps;
    j["mode"] = d.mode == DirectiveMode::hard ? "hard" : "soft";
    if (d.weight > 0.0)
        j["weight"] = d.weight;
    return j;
}

} // namespace

Scenario load_scenario(const std::filesystem::path& path) {
    const std::string where = path.filename().string();
    json j = read_json(path);
    expect_object(j, where);
    check_keys(j, where, {"format", "grid", "coverage_map", "time", "layouts", "graphs",
                          "agents"});
    check_format(j, where);

    Scenario sc;
    const json& grid = require(j, where, "grid");
    check_keys(grid, where + ".grid", {"width", "height", "cell_size_m"});
    sc.grid.width_cells = as_int(require(grid, where, "width"), where + ".grid.width");
    sc.grid.height_cells = as_int(require(grid, where, "height"), where + ".grid.height");
    sc.grid.cell_size_m = as_number(require(grid, where, "cell_size_m"), where + ".grid.cell_size_m");

    sc.coverage_map = as_number_array(require(j, where, "coverage_map"), where + ".coverage_map");

    const json& time = require(j, where, "time");
    check_keys(time, where + ".time", {"delta_t_s", "budget_T"});
    sc.time.delta_t_s = as_number(require(time, where, "delta_t_s"), where + ".time.delta_t_s");
    sc.time.budget_T = as_int(require(time, where, "budget_T"), where + ".time.budget_T");

    for (const json& jl : require(j, where, "layouts")) {
        const std::string lw = where + ".layouts";
        expect_object(jl, lw);
        check_keys(jl, lw, {"id", "sectors"});
        SectorLayout layout;
        layout.id = as_string(require(jl, lw, "id"), lw + ".id");
        for (const json& js : require(jl, lw, "sectors")) {
            expect_object(js, lw + ".sectors");
            check_keys(js, lw + ".sectors", {"id", "cells"});
            Sector sector;
            sector.id = as_string(require(js, lw, "id"), lw + ".sectors.id");
            for (const auto& c : require(js, lw, "cells"))
                sector.cells.push_back(as_int(c, lw + ".sectors.cells"));
            layout.sectors.push_back(std::move(sector));
        }
        sc.layouts.push_back(std::move(layout));
    }

    for (const json& jg : require(j, where, "graphs")) {
        const std::string gw = where + ".graphs";
        expect_object(jg, gw);
        check_keys(jg, gw, {"layout", "edges"});
        TraversabilityGraph graph;
        graph.layout_id = as_string(require(jg, gw, "layout"), gw + ".layout");
        for (const auto& je : require(jg, gw, "edges")) {
            if (!je.is_array() || je.size() != 2)
                throw InputError(gw + ".edges: expected [from, to] pairs");
            graph.edges.emplace_back(as_string(je[0], gw + ".edges"),
                                     as_string(je[1], gw + ".edges"));
        }
        sc.graphs.push_back(std::move(graph));
    }

    for (const json& ja : require(j, where, "agents")) {
        const std::string aw = where + ".agents";
        expect_object(ja, aw);
        check_keys(ja, aw, {"id", "kind", "layout", "start_sectors", "coverage_rate"});
        AgentSpec agent;
        agent.id = as_string(require(ja, aw, "id"), aw + ".id");
        agent.kind = agent_kind_from_string(as_string(require(ja, aw, "kind"), aw + ".kind"));
        agent.layout_id = as_string(require(ja, aw, "layout"), aw + ".layout");
        agent.start_sectors = as_string_array(require(ja, aw, "start_sectors"),
                                              aw + ".start_sectors");
        agent.coverage_rate = as_number_array(require(ja, aw, "coverage_rate"),
                                              aw + ".coverage_rate");
        sc.agents.push_back(std::move(agent));
    }
    return sc;
}

void save_scenario(const Scenario& sc, const std::filesystem::path& path) {
    json j;
    j["format"] = 1;
    j["grid"] = {{"width", sc.grid.width_cells},
                 {"height", sc.grid.height_cells},
                 {"cell_size_m", sc.grid.cell_size_m}};
    j["coverage_map"] = sc.coverage_map;
    j["time"] = {{"delta_t_s", sc.time.delta_t_s}, {"budget_T", sc.time.budget_T}};
    j["layouts"] = json::array();
    for (const auto& layout : sc.layouts) {
        json jl;
        jl["id"] = layout.id;
        jl["sectors"] = json::array();
        for (const auto& sector : layout.sectors)
            jl["sectors"].push_back({{"id", sector.id}, {"cells", sector.cells}});
        j["layouts"].push_back(std::move(jl));
    }
    j["graphs"] = json::array();
    for (const auto& graph : sc.graphs) {
        json jg;
        jg["layout"] = graph.layout_id;
        jg["edges"] = json::array();
        for (const auto& [from, to] : graph.edges)
            jg["edges"].push_back({from, to});
        j["graphs"].push_back(std::move(jg));
    }
    j["agents"] = json::array();
    for (const auto& agent : sc.agents) {
        json ja;
        ja["id"] = agent.id;
        ja["kind"] = to_string(agent.kind);
        ja["layout"] = agent.layout_id;
        ja["start_sectors"] = agent.start_sectors;
        ja["coverage_rate"] = agent.coverage_rate;
        j["agents"].push_back(std::move(ja));
    }
    write_json(j, path);
}

MissionPlan load_plan(const std::filesystem::path& path) {
    const std::string where = path.filename().string();
    json j = read_json(path);
    expect_object(j, where);
    check_keys(j, where, {"format", "plans"});
    check_format(j, where);

    MissionPlan mission;
    for (const json& jp : require(j, where, "plans")) {
        const std::string pw = where + ".plans";
        expect_object(jp, pw);
        check_keys(jp, pw, {"agent", "path", "schedule"});
        AgentPlan plan;
        plan.agent_id = as_string(require(jp, pw, "agent"), pw + ".agent");
        plan.path = as_string_array(require(jp, pw, "path"), pw + ".path");
        for (const auto& v : require(jp, pw, "schedule"))
            plan.stay.push_back(as_int(v, pw + ".schedule"));
        mission.plans.push_back(std::move(plan));
    }
    return mission;
}

void save_plan(const MissionPlan& mission, const std::filesystem::path& path) {
    json j;
    j["format"] = 1;
    j["plans"] = json::array();
    for (const auto& plan : mission.plans)
        j["plans"].push_back(
            {{"agent", plan.agent_id}, {"path", plan.path}, {"schedule", plan.stay}});
    write_json(j, path);
}

std::vector<Directive> load_directives(const std::filesystem::path& path, int budget_T) {
    const std::string where = path.filename().string();
    json j = read_json(path);
    if (!j.is_array())
        throw InputError(where + ": expected a top-level array of directives");
    std::vector<Directive> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(directive_from_json(j[i], where + "[" + std::to_string(i) + "]", budget_T));
    return out;
}

void save_directives(const std::vector<Directive>& directives,
                     const std::filesystem::path& path) {
    json j = json::array();
    for (const auto& d : directives)
        j.push_back(directive_to_json(d));
    write_json(j, path);
}

MetricGroups default_metric_groups(const Scenario& scenario) {
    MetricGroups groups;
    std::vector<std::string> humans, uavs, dogs;
    for (const auto& agent : scenario.agents) {
        switch (agent.kind) {
        case AgentKind::human: humans.push_back(agent.id); break;
        case AgentKind::uav: uavs.push_back(agent.id); break;
        case AgentKind::dog: dogs.push_back(agent.id); break;
        }
    }
    groups.distance_a = humans;
    groups.distance_b = !uavs.empty() ? uavs : dogs;
    groups.hull = uavs;
    return groups;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
    const std::string where = path.filename().string();
    json j = read_json(path);
    expect_object(j, where);
    check_keys(j, where, {"format", "scenario", "variants", "solver", "sim", "metrics"});
    check_format(j, where);

    ExperimentSpec spec;
    std::filesystem::path scenario_rel = as_string(require(j, where, "scenario"),
                                                   where + ".scenario");
    spec.scenario_path = scenario_rel.is_absolute()
                             ? scenario_rel
                             : path.parent_path() / scenario_rel;
    spec.scenario = load_scenario(spec.scenario_path);
    int T = spec.scenario.time.budget_T;

    for (const json& jv : require(j, where, "variants")) {
        const std::string vw = where + ".variants";
        expect_object(jv, vw);
        check_keys(jv, vw, {"name", "directives"});
        ExperimentVariant variant;
        variant.name = as_string(require(jv, vw, "name"), vw + ".name");
        for (const auto& other : spec.variants)
            if (other.name == variant.name)
                throw InputError(vw + ": duplicate variant name '" + variant.name + "'");
        const json& jd = require(jv, vw, "directives");
        if (!jd.is_array())
            throw InputError(vw + ".directives: expected an array");
        for (std::size_t i = 0; i < jd.size(); ++i)
            variant.directives.push_back(
                directive_from_json(jd[i], vw + ".directives[" + std::to_string(i) + "]", T));
        spec.variants.push_back(std::move(variant));
    }

    if (j.contains("solver")) {
        const json& js = j["solver"];
        const std::string sw = where + ".solver";
        expect_object(js, sw);
        check_keys(js, sw, {"time_limit_s", "target_gap", "node_limit", "heuristic_restarts"});
        if (js.contains("time_limit_s"))
            spec.solver.time_limit_s = as_number(js["time_limit_s"], sw + ".time_limit_s");
        if (js.contains("target_gap"))
            spec.solver.target_gap = as_number(js["target_gap"], sw + ".target_gap");
        if (js.contains("node_limit"))
            spec.solver.node_limit = as_int(js["node_limit"], sw + ".node_limit");
        if (js.contains("heuristic_restarts"))
            spec.solver.heuristic_restarts =
                as_int(js["heuristic_restarts"], sw + ".heuristic_restarts");
    }

    if (j.contains("sim")) {
        const json& js = j["sim"];
        const std::string sw = where + ".sim";
        expect_object(js, sw);
        check_keys(js, sw, {"tick_s", "runs", "interference"});
        if (js.contains("tick_s"))
            spec.sim.tick_s = as_number(js["tick_s"], sw + ".tick_s");
        if (js.contains("runs"))
            spec.sim.runs = as_int(js["runs"], sw + ".runs");
        if (js.contains("interference")) {
            const json& ji = js["interference"];
            check_keys(ji, sw + ".interference", {"enabled", "range_m", "interferer_kinds"});
            if (ji.contains("enabled")) {
                if (!ji["enabled"].is_boolean())
                    throw InputError(sw + ".interference.enabled: expected a boolean");
                spec.sim.interference.enabled = ji["enabled"].get<bool>();
            }
            if (ji.contains("range_m"))
                spec.sim.interference.range_m =
                    as_number(ji["range_m"], sw + ".interference.range_m");
            if (ji.contains("interferer_kinds")) {
                spec.sim.interference.interferer_kinds.clear();
                for (const auto& kind : as_string_array(ji["interferer_kinds"],
                                                        sw + ".interference.interferer_kinds"))
                    spec.sim.interference.interferer_kinds.push_back(
                        agent_kind_from_string(kind));
            }
        }
    }

    if (j.contains("metrics")) {
        const json& jm = j["metrics"];
        const std::string mw = where + ".metrics";
        expect_object(jm, mw);
        check_keys(jm, mw, {"distance_group_a", "distance_group_b", "hull_agents"});
        spec.metrics = default_metric_groups(spec.scenario);
        if (jm.contains("distance_group_a"))
            spec.metrics.distance_a = as_string_array(jm["distance_group_a"],
                                                      mw + ".distance_group_a");
        if (jm.contains("distance_group_b"))
            spec.metrics.distance_b = as_string_array(jm["distance_group_b"],
                                                      mw + ".distance_group_b");
        if (jm.contains("hull_agents"))
            spec.metrics.hull = as_string_array(jm["hull_agents"], mw + ".hull_agents");
    } else {
        spec.metrics = default_metric_groups(spec.scenario);
    }
    return spec;
}

} // namespace sarmip
