#include "sarmip/directive.hpp"

#include <numeric>
#include <unordered_set>

#include "sarmip/errors.hpp"

namespace sarmip {

const char* to_string(DirectiveKind kind) {
    switch (kind) {
    case DirectiveKind::coalition: return "coalition";
    case DirectiveKind::network: return "network";
    case DirectiveKind::interference_avoidance: return "interference_avoidance";
    case DirectiveKind::sparsity: return "sparsity";
    }
    return "?";
}

DirectiveKind directive_kind_from_string(const std::string& s) {
    if (s == "coalition")
        return DirectiveKind::coalition;
    if (s == "network")
        return DirectiveKind::network;
    if (s == "interference_avoidance")
        return DirectiveKind::interference_avoidance;
    if (s == "sparsity")
        return DirectiveKind::sparsity;
    throw InputError("unknown directive kind '" + s + "'");
}

double default_directive_weight(const Scenario& scenario) {
    double demand = std::accumulate(scenario.coverage_map.begin(), scenario.coverage_map.end(), 0.0);
    double scale = scenario.time.budget_T * scenario.diameter_m();
    return scale > 0.0 ? demand / scale : 0.0;
}

double directive_weight(const Directive& directive, const Scenario& scenario) {
    return directive.weight > 0.0 ? directive.weight : default_directive_weight(scenario);
}

void validate_directive(const Directive& directive, const Scenario& scenario) {
    if (directive.group_a.empty() || directive.group_b.empty())
        throw InputError("directive groups must be nonempty");
    std::unordered_set<std::string> seen;
    for (const auto& id : directive.group_a) {
        if (scenario.agent_index(id) < 0)
            throw InputError("directive references unknown agent '" + id + "'");
        if (!seen.insert(id).second)
            throw InputError("directive group repeats agent '" + id + "'");
    }
    for (const auto& id : directive.group_b) {
        if (scenario.agent_index(id) < 0)
            throw InputError("directive references unknown agent '" + id + "'");
        if (!seen.insert(id).second)
            throw InputError("directive groups overlap on agent '" + id + "'");
    }
    if (directive.limit_m < 0.0)
        throw InputError("directive limit must be >= 0");
    for (int t : directive.steps)
        if (t < 0 || t >= scenario.time.budget_T)
            throw InputError("directive step " + std::to_string(t) + " outside [0, " +
                             std::to_string(scenario.time.budget_T) + ")");
    if (directive.mode == DirectiveMode::soft && directive.weight < 0.0)
        throw InputError("soft directive weight must be positive (or 0 for the default)");
}

} // namespace sarmip
