#include <doctest.h>

#include "sarmip/environment.hpp"
#include "sarmip/errors.hpp"
#include "sarmip/fixtures.hpp"
#include "sarmip/rng.hpp"

using namespace sarmip;

namespace {

Scenario four_cell_scenario() {
    Scenario sc;
    sc.grid = {2, 2, 100.0};
    sc.coverage_map.assign(4, 1.0);
    sc.time = {300.0, 3};
    SectorLayout layout;
    layout.id = "l";
    layout.sectors.push_back({"whole", {0, 1, 2, 3}});
    layout.sectors.push_back({"corner", {0}});
    sc.layouts.push_back(layout);
    sc.graphs.push_back({"l", {{"whole", "corner"}, {"corner", "whole"}}});
    AgentSpec agent{"a", AgentKind::human, std::vector<double>(4, 1.0 / 1200.0), "l", {"whole"}};
    sc.agents.push_back(agent);
    return sc;
}

} // namespace

TEST_CASE("search performance follows the uniform split") {
    Scenario sc = four_cell_scenario();
    const auto& layout = sc.layouts[0];
    const auto& agent = sc.agents[0];

    // |L| = 4, delta_t = 300 s, rate 1/1200 per s.
    CHECK(search_performance(layout, agent, "whole", 2, sc.time) == doctest::Approx(0.0625));
    // Cells outside the sector contribute nothing.
    CHECK(search_performance(layout, agent, "corner", 3, sc.time) == 0.0);
    CHECK_THROWS_AS(search_performance(layout, agent, "nope", 0, sc.time), InputError);
    CHECK_THROWS_AS(search_performance(layout, agent, "whole", 99, sc.time), InputError);

    // Constant rate over the sector: the per-cell split sums back to rate*dt.
    double sum = 0.0;
    for (int c = 0; c < 4; ++c)
        sum += search_performance(layout, agent, "whole", c, sc.time);
    CHECK(sum == doctest::Approx(agent.coverage_rate[0] * sc.time.delta_t_s));
}

TEST_CASE("search performance is nonnegative and bounded by the best cell") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Scenario sc = four_cell_scenario();
        for (auto& r : sc.agents[0].coverage_rate)
            r = rng.next_real() / 300.0;
        double sum = 0.0, best = 0.0;
        for (int c = 0; c < 4; ++c) {
            double phi = search_performance(sc.layouts[0], sc.agents[0], "whole", c, sc.time);
            CHECK(phi >= 0.0);
            sum += phi;
            best = std::max(best, sc.agents[0].coverage_rate[c] * sc.time.delta_t_s);
        }
        CHECK(sum <= best + 1e-12);
    }
}

TEST_CASE("sector centroids sit at geometric centers") {
    Scenario sc = four_cell_scenario();
    Point corner = sector_centroid(sc.grid, sc.layouts[0], "corner");
    CHECK(corner.x == doctest::Approx(50.0));
    CHECK(corner.y == doctest::Approx(50.0));
    Point whole = sector_centroid(sc.grid, sc.layouts[0], "whole");
    CHECK(whole.x == doctest::Approx(100.0));
    CHECK(whole.y == doctest::Approx(100.0));
    CHECK_THROWS_AS(sector_centroid(sc.grid, sc.layouts[0], "missing"), InputError);
}

TEST_CASE("centroid of a rectangular block is its center, and translation shifts it") {
    CellGrid grid{6, 6, 100.0};
    SectorLayout layout;
    layout.id = "l";
    layout.sectors.push_back({"block", {grid.index(1, 1), grid.index(1, 2), grid.index(2, 1),
                                        grid.index(2, 2)}});
    layout.sectors.push_back({"shifted", {grid.index(3, 4), grid.index(3, 5), grid.index(4, 4),
                                          grid.index(4, 5)}});
    Point a = sector_centroid(grid, layout, "block");
    CHECK(a.x == doctest::Approx(200.0));
    CHECK(a.y == doctest::Approx(200.0));
    Point b = sector_centroid(grid, layout, "shifted");
    CHECK(b.x - a.x == doctest::Approx(300.0));
    CHECK(b.y - a.y == doctest::Approx(200.0));
}

TEST_CASE("sector distances are centroid distances") {
    CellGrid grid{3, 3, 100.0};
    SectorLayout layout;
    layout.id = "l";
    layout.sectors.push_back({"a", {0}});
    layout.sectors.push_back({"b", {1}});
    layout.sectors.push_back({"c", {grid.index(1, 1)}});
    CHECK(sector_distance(grid, layout, "a", layout, "a") == 0.0);
    CHECK(sector_distance(grid, layout, "a", layout, "b") == doctest::Approx(100.0));
    CHECK(sector_distance(grid, layout, "a", layout, "c") ==
          doctest::Approx(100.0 * std::sqrt(2.0)));
}

TEST_CASE("sector distance is a metric on centroids") {
    Rng rng(11);
    CellGrid grid{5, 5, 100.0};
    SectorLayout layout;
    layout.id = "l";
    for (int s = 0; s < 12; ++s) {
        std::vector<int> cells;
        int count = 1 + rng.next_below(3);
        for (int i = 0; i < count; ++i)
            cells.push_back(static_cast<int>(rng.next_below(25)));
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        layout.sectors.push_back({"s" + std::to_string(s), cells});
    }
    for (int trial = 0; trial < 500; ++trial) {
        std::string i = "s" + std::to_string(rng.next_below(12));
        std::string j = "s" + std::to_string(rng.next_below(12));
        std::string k = "s" + std::to_string(rng.next_below(12));
        double dij = sector_distance(grid, layout, i, layout, j);
        double dji = sector_distance(grid, layout, j, layout, i);
        double dik = sector_distance(grid, layout, i, layout, k);
        double dkj = sector_distance(grid, layout, k, layout, j);
        CHECK(dij == doctest::Approx(dji));
        CHECK(dij >= 0.0);
        CHECK(dij <= dik + dkj + 1e-9);
    }
}

TEST_CASE("scenario validation reports constructed defects") {
    Scenario sc = make_tiny_scenario();
    CHECK(validate_scenario(sc).empty());

    SUBCASE("edge referencing a missing sector") {
        sc.graphs[0].edges.emplace_back("s0", "ghost");
        auto report = validate_scenario(sc);
        REQUIRE(report.size() == 1);
        CHECK(report[0].find("ghost") != std::string::npos);
    }
    SUBCASE("coverage value out of range") {
        sc.coverage_map[2] = 1.2;
        auto report = validate_scenario(sc);
        REQUIRE(report.size() == 1);
        CHECK(report[0].find("cell 2") != std::string::npos);
    }
    SUBCASE("dangling cell id") {
        sc.layouts[0].sectors[1].cells.push_back(99);
        CHECK(!validate_scenario(sc).empty());
    }
    SUBCASE("empty start sectors") {
        sc.agents[0].start_sectors.clear();
        CHECK(!validate_scenario(sc).empty());
        CHECK_THROWS_AS(compile_scenario(sc), InputError);
    }
}

TEST_CASE("fixture scenarios are well formed") {
    CHECK(validate_scenario(make_tiny_scenario()).empty());
    CHECK(validate_scenario(make_small_scenario()).empty());
    CHECK(validate_scenario(make_medium_scenario()).empty());
    CHECK(validate_scenario(make_medium_ground_scenario()).empty());
    CHECK(validate_scenario(make_medium_mixed_scenario()).empty());
    CHECK(validate_scenario(make_medium_uav_scenario()).empty());
}

TEST_CASE("grid adjacency helper connects 4-neighbor sectors both ways") {
    CellGrid grid{2, 2, 100.0};
    SectorLayout layout;
    layout.id = "l";
    for (int c = 0; c < 4; ++c)
        layout.sectors.push_back({"s" + std::to_string(c), {c}});
    auto edges = grid_adjacency_edges(grid, layout);
    auto has = [&](const std::string& a, const std::string& b) {
        for (const auto& e : edges)
            if (e.first == a && e.second == b)
                return true;
        return false;
    };
    CHECK(has("s0", "s1"));
    CHECK(has("s1", "s0"));
    CHECK(has("s0", "s2"));
    CHECK(!has("s0", "s3")); // diagonal
    CHECK(edges.size() == 8);
}
