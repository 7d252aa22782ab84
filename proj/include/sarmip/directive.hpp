#pragma once
#include <string>
#include <vector>

#include "sarmip/environment.hpp"

namespace sarmip {

// The four proximity directive families. Coalition and network bound the
// maximum respectively minimum group distance from above; interference
// avoidance and sparsity bound them from below.
enum class DirectiveKind { coalition, network, interference_avoidance, sparsity };
enum class DirectiveMode { hard, soft };

const char* to_string(DirectiveKind kind);
DirectiveKind directive_kind_from_string(const std::string& s);

struct Directive {
    DirectiveKind kind = DirectiveKind::coalition;
    std::vector<std::string> group_a;
    std::vector<std::string> group_b; // disjoint from group_a
    double limit_m = 0.0;
    std::vector<int> steps; // explicit step set, subset of {0..T-1}
    DirectiveMode mode = DirectiveMode::soft;
    double weight = 0.0; // penalty per meter of violation; 0 = use default
};

// Neutral starting scale: one full-mission, full-diameter violation costs
// about the whole coverage objective.
double default_directive_weight(const Scenario& scenario);

// Effective weight of one directive (its own, or the scenario default).
double directive_weight(const Directive& directive, const Scenario& scenario);

// Throws InputError on empty/overlapping groups, unknown agents, bad steps.
void validate_directive(const Directive& directive, const Scenario& scenario);

} // namespace sarmip
