// Regenerates the shipped fixture scenarios, directive sets, and experiment
// specs. Run from the repository root: `gen_fixtures [dir]`.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "sarmip/fixtures.hpp"
#include "sarmip/io.hpp"

namespace fs = std::filesystem;
using namespace sarmip;
using nlohmann::json;

namespace {

json solver_block(double time_limit_s) {
    return {{"time_limit_s", time_limit_s}, {"target_gap", 0.02}, {"heuristic_restarts", 16}};
}

void write_spec(const fs::path& path, const std::string& scenario_rel,
                const std::vector<std::pair<std::string, std::vector<Directive>>>& variants,
                bool interference, double interference_range) {
    json spec;
    spec["format"] = 1;
    spec["scenario"] = scenario_rel;
    spec["variants"] = json::array();
    for (const auto& [name, directives] : variants) {
        json jv;
        jv["name"] = name;
        jv["directives"] = json::array();
        for (const auto& d : directives) {
            json jd;
            jd["kind"] = to_string(d.kind);
            jd["groupA"] = d.group_a;
            jd["groupB"] = d.group_b;
            jd["limit_m"] = d.limit_m;
            jd["steps"] = "all";
            jd["mode"] = d.mode == DirectiveMode::hard ? "hard" : "soft";
            if (d.weight > 0.0)
                jd["weight"] = d.weight;
            jv["directives"].push_back(jd);
        }
        spec["variants"].push_back(jv);
    }
    spec["solver"] = solver_block(25.0);
    spec["sim"] = {{"runs", 50},
                   {"tick_s", 10.0},
                   {"interference",
                    {{"enabled", interference}, {"range_m", interference_range}}}};
    std::ofstream out(path);
    out << spec.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    fs::path root = argc > 1 ? argv[1] : ".";
    fs::path fixtures = root / "fixtures";
    fs::path experiments = root / "experiments";
    fs::create_directories(fixtures);
    fs::create_directories(experiments);

    save_scenario(make_tiny_scenario(), fixtures / "tiny.json");
    save_scenario(make_small_scenario(), fixtures / "small.json");
    save_scenario(make_medium_scenario(), fixtures / "medium.json");
    save_scenario(make_medium_ground_scenario(), fixtures / "medium_ground.json");
    save_scenario(make_medium_mixed_scenario(), fixtures / "medium_mixed.json");
    save_scenario(make_medium_uav_scenario(), fixtures / "medium_uav.json");

    Scenario ground = make_medium_ground_scenario();
    std::vector<std::pair<std::string, std::vector<Directive>>> interference_variants;
    for (double range : {100.0, 150.0, 200.0})
        interference_variants.emplace_back("d" + std::to_string(static_cast<int>(range)),
                                           interference_directives(ground, range, 1.0));
    write_spec(experiments / "interference.json", "../fixtures/medium_ground.json",
               interference_variants, true, 150.0);

    Scenario mixed = make_medium_mixed_scenario();
    std::vector<std::pair<std::string, std::vector<Directive>>> coalition_variants;
    for (double range : {200.0, 150.0, 100.0})
        coalition_variants.emplace_back("c" + std::to_string(static_cast<int>(range)),
                                        coalition_directives(mixed, range, 0.006));
    write_spec(experiments / "coalition.json", "../fixtures/medium_mixed.json",
               coalition_variants, false, 150.0);

    Scenario uav = make_medium_uav_scenario();
    std::vector<std::pair<std::string, std::vector<Directive>>> sparsity_variants;
    for (double dist : {100.0, 300.0, 500.0})
        sparsity_variants.emplace_back("s" + std::to_string(static_cast<int>(dist)),
                                       sparsity_directives(uav, dist, 0.004));
    write_spec(experiments / "sparsity.json", "../fixtures/medium_uav.json", sparsity_variants,
               false, 150.0);

    // Example directive file for the CLI.
    save_directives(interference_directives(ground, 150.0, 1.0),
                    fixtures / "directives_interference_150.json");

    std::cout << "fixtures written under " << fixtures.string() << " and "
              << experiments.string() << "\n";
    return 0;
}
