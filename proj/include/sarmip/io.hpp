#pragma once
#include <filesystem>
#include <string>
#include <vector>

#include "sarmip/bnb.hpp"
#include "sarmip/directive.hpp"
#include "sarmip/environment.hpp"
#include "sarmip/plan.hpp"
#include "sarmip/simulator.hpp"

namespace sarmip {

// All formats are JSON with a top-level "format": 1 (the directive file is a
// bare array). Unknown fields are rejected; loaders raise InputError naming
// the file and field. Serialization is deterministic (sorted keys, shortest
// round-trip numbers), so identical data gives identical bytes.

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

MissionPlan load_plan(const std::filesystem::path& path);
void save_plan(const MissionPlan& mission, const std::filesystem::path& path);

// `budget_T` expands the "all" steps shorthand into {0..T-1}.
std::vector<Directive> load_directives(const std::filesystem::path& path, int budget_T);
void save_directives(const std::vector<Directive>& directives,
                     const std::filesystem::path& path);

struct ExperimentVariant {
    std::string name;
    std::vector<Directive> directives;
};

struct MetricGroups {
    std::vector<std::string> distance_a; // defaults: humans
    std::vector<std::string> distance_b; // defaults: uavs (or dogs when no uavs)
    std::vector<std::string> hull;       // defaults: uavs
};

struct ExperimentSpec {
    std::filesystem::path scenario_path;
    Scenario scenario;
    std::vector<ExperimentVariant> variants;
    SolverConfig solver;
    SimConfig sim;
    MetricGroups metrics; // filled with kind-based defaults when absent
};

// Reads the spec and the scenario it references (relative to the spec file).
ExperimentSpec load_experiment(const std::filesystem::path& path);

// Kind-based metric-group defaults for a scenario.
MetricGroups default_metric_groups(const Scenario& scenario);

} // namespace sarmip
