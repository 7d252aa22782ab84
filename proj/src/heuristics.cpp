#include "sarmip/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "sarmip/errors.hpp"
#include "sarmip/rng.hpp"

namespace sarmip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BuildState {
    std::vector<std::vector<int>> path;  // per agent, sector indices
    std::vector<std::vector<int>> stay;  // aligned with path
    std::vector<std::vector<int>> pos;   // per agent, per decided step
    std::vector<double> accumulated;     // raw per-cell contribution
};

double marginal_coverage(const CompiledScenario& compiled, const std::vector<double>& accumulated,
                         int agent, int sector) {
    const Scenario& sc = compiled.src();
    double gain = 0.0;
    for (const auto& [cell, phi] : compiled.agents[agent].phi[sector]) {
        double before = std::min(sc.coverage_map[cell], accumulated[cell]);
        double after = std::min(sc.coverage_map[cell], accumulated[cell] + phi);
        gain += after - before;
    }
    return gain;
}

// Pairwise estimate of the step penalty a placement would incur. `lookup`
// resolves another agent's sector at a step (or -1 when undecided); when the
// exact step is unknown the latest decided position stands in, since agents
// move at most one sector per interval.
double pairwise_penalty(const CompiledScenario& compiled,
                        const std::vector<Directive>& directives,
                        const std::vector<double>& weights, int agent, int sector, int step,
                        const std::function<int(int, int)>& lookup) {
    const Scenario& sc = compiled.src();
    const std::string& id = sc.agents[agent].id;
    double penalty = 0.0;
    for (std::size_t d = 0; d < directives.size(); ++d) {
        const Directive& dir = directives[d];
        if (std::find(dir.steps.begin(), dir.steps.end(), step) == dir.steps.end())
            continue;
        bool in_a = std::find(dir.group_a.begin(), dir.group_a.end(), id) != dir.group_a.end();
        bool in_b = std::find(dir.group_b.begin(), dir.group_b.end(), id) != dir.group_b.end();
        if (!in_a && !in_b)
            continue;
        const auto& opposite = in_a ? dir.group_b : dir.group_a;

        bool aggregate_max = dir.kind == DirectiveKind::coalition ||
                             dir.kind == DirectiveKind::interference_avoidance;
        double agg = aggregate_max ? 0.0 : kInf;
        bool any = false;
        for (const auto& other_id : opposite) {
            int other = sc.agent_index(other_id);
            int other_sector = lookup(other, step);
            if (other_sector < 0)
                continue;
            double psi = compiled.centroid_distance(compiled.agents[agent].layout, sector,
                                                    compiled.agents[other].layout, other_sector);
            double hinge = 0.0;
            switch (dir.kind) {
            case DirectiveKind::coalition:
            case DirectiveKind::network:
                hinge = std::max(0.0, psi - dir.limit_m);
                break;
            case DirectiveKind::interference_avoidance:
            case DirectiveKind::sparsity:
                hinge = std::max(0.0, dir.limit_m - psi);
                break;
            }
            any = true;
            agg = aggregate_max ? std::max(agg, hinge) : std::min(agg, hinge);
        }
        if (!any)
            continue;
        penalty += weights[d] * agg;
    }
    return penalty;
}

MissionPlan assemble(const CompiledScenario& compiled, const BuildState& state) {
    const Scenario& sc = compiled.src();
    MissionPlan mission;
    for (std::size_t k = 0; k < sc.agents.size(); ++k) {
        const SectorLayout& layout = sc.layouts[compiled.agents[k].layout];
        AgentPlan plan;
        plan.agent_id = sc.agents[k].id;
        for (std::size_t i = 0; i < state.path[k].size(); ++i) {
            plan.path.push_back(layout.sectors[state.path[k][i]].id);
            plan.stay.push_back(state.stay[k][i]);
        }
        mission.plans.push_back(std::move(plan));
    }
    return mission;
}

std::vector<double> effective_weights(const Scenario& sc,
                                      const std::vector<Directive>& directives) {
    // Hard directives get a strong surrogate weight so the greedy steers
    // toward feasibility; soft ones use their exact objective weight.
    std::vector<double> weights;
    double hard = 1000.0 * std::max(default_directive_weight(sc), 1e-9);
    for (const auto& d : directives)
        weights.push_back(d.mode == DirectiveMode::hard ? hard : directive_weight(d, sc));
    return weights;
}

} // namespace

double heuristic_score(const MissionPlan& mission, const CompiledScenario& compiled,
                       const std::vector<Directive>& directives) {
    const Scenario& sc = compiled.src();
    double score = plan_score(mission, sc, directives);
    double hard = 1000.0 * std::max(default_directive_weight(sc), 1e-9);
    for (const auto& d : directives) {
        if (d.mode != DirectiveMode::hard)
            continue;
        ProximityProfile profile = proximity_profile(mission, sc, d.group_a, d.group_b);
        auto violation = directive_compliance(profile, d);
        for (double v : violation)
            score -= hard * v;
    }
    return score;
}

std::vector<MissionPlan> heuristic_construct_pool(const CompiledScenario& compiled,
                                                  const std::vector<Directive>& directives,
                                                  std::uint64_t rng_seed, int restarts) {
    const Scenario& sc = compiled.src();
    for (const auto& agent : sc.agents)
        if (agent.start_sectors.empty())
            throw InputError("agent '" + agent.id + "' has no start sectors");
    for (const auto& d : directives)
        validate_directive(d, sc);

    std::vector<double> weights = effective_weights(sc, directives);
    const int T = sc.time.budget_T;
    const int A = static_cast<int>(sc.agents.size());

    std::vector<std::pair<double, MissionPlan>> pool;

    for (int restart = 0; restart < std::max(1, restarts); ++restart) {
        Rng rng(derive_seed(rng_seed, "construct", restart));
        BuildState state;
        state.path.assign(A, {});
        state.stay.assign(A, {});
        state.pos.assign(A, {});
        state.accumulated.assign(sc.grid.cell_count(), 0.0);

        auto lookup = [&state](int other, int step) {
            if (static_cast<int>(state.pos[other].size()) > step)
                return state.pos[other][step];
            // Not decided yet this round: the previous step approximates it.
            return state.pos[other].empty() ? -1 : state.pos[other].back();
        };

        for (int step = 0; step < T; ++step) {
            for (int k = 0; k < A; ++k) {
                const CompiledAgent& ca = compiled.agents[k];
                // Candidates: stay at the current sector or advance to an
                // unvisited neighbor; the first round chooses a start sector.
                std::vector<int> candidates;
                bool can_stay = !state.path[k].empty();
                if (state.path[k].empty()) {
                    candidates = ca.start_sectors;
                } else {
                    int cur = state.path[k].back();
                    candidates.push_back(cur);
                    for (int nb : ca.out_neighbors[cur])
                        if (std::find(state.path[k].begin(), state.path[k].end(), nb) ==
                            state.path[k].end())
                            candidates.push_back(nb);
                }

                int chosen = -1;
                double chosen_score = -kInf;
                int second = -1;
                double second_score = -kInf;
                for (int cand : candidates) {
                    double s = marginal_coverage(compiled, state.accumulated, k, cand) -
                               pairwise_penalty(compiled, directives, weights, k, cand, step,
                                                lookup);
                    if (s > chosen_score) {
                        second = chosen;
                        second_score = chosen_score;
                        chosen = cand;
                        chosen_score = s;
                    } else if (s > second_score) {
                        second = cand;
                        second_score = s;
                    }
                }
                if (restart > 0 && second >= 0 && rng.bernoulli(0.35))
                    chosen = second;

                if (can_stay && chosen == state.path[k].back()) {
                    ++state.stay[k].back();
                } else {
                    state.path[k].push_back(chosen);
                    state.stay[k].push_back(1);
                }
                state.pos[k].push_back(chosen);
                for (const auto& [cell, phi] : ca.phi[chosen])
                    state.accumulated[cell] += phi;
            }
        }

        MissionPlan mission = assemble(compiled, state);
        double score = heuristic_score(mission, compiled, directives);
        bool duplicate = false;
        for (const auto& [s0, other] : pool)
            duplicate |= s0 == score;
        if (!duplicate)
            pool.emplace_back(score, std::move(mission));
    }
    std::stable_sort(pool.begin(), pool.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<MissionPlan> out;
    for (auto& [score, mission] : pool) {
        (void)score;
        out.push_back(std::move(mission));
    }
    return out;
}

MissionPlan heuristic_construct(const CompiledScenario& compiled,
                                const std::vector<Directive>& directives, std::uint64_t rng_seed,
                                int restarts) {
    auto pool = heuristic_construct_pool(compiled, directives, rng_seed, restarts);
    validate_mission(pool.front(), compiled.src());
    return pool.front();
}

namespace {

// Penalty-aware greedy regrow of an agent's tail against the other agents'
// fixed timelines; used by the rewrite move.
void regrow_tail(const CompiledScenario& compiled, const std::vector<Directive>& directives,
                 const std::vector<double>& weights, int agent, std::vector<int>& path,
                 std::vector<int>& stay, int budget, const std::vector<double>& others,
                 const std::vector<PositionTimeline>& timelines) {
    const CompiledAgent& ca = compiled.agents[agent];
    std::vector<double> acc = others;
    int step = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        for (const auto& [cell, phi] : ca.phi[path[i]])
            acc[cell] += phi * stay[i];
        step += stay[i];
    }

    auto lookup = [&timelines, agent](int other, int s) {
        if (other == agent)
            return -1;
        return timelines[other].sectors[s];
    };

    while (budget > 0) {
        int cur = path.back();
        std::vector<int> candidates{cur};
        for (int nb : ca.out_neighbors[cur])
            if (std::find(path.begin(), path.end(), nb) == path.end())
                candidates.push_back(nb);
        int chosen = cur;
        double best = -kInf;
        for (int cand : candidates) {
            double gain = marginal_coverage(compiled, acc, agent, cand) -
                          pairwise_penalty(compiled, directives, weights, agent, cand, step,
                                           lookup);
            if (gain > best) {
                best = gain;
                chosen = cand;
            }
        }
        if (chosen == cur)
            ++stay.back();
        else {
            path.push_back(chosen);
            stay.push_back(1);
        }
        for (const auto& [cell, phi] : ca.phi[chosen])
            acc[cell] += phi;
        --budget;
        ++step;
    }
}

} // namespace

MissionPlan local_search(const MissionPlan& start, const CompiledScenario& compiled,
                         const std::vector<Directive>& directives, long max_evaluations) {
    const Scenario& sc = compiled.src();
    validate_mission(start, sc);
    std::vector<double> weights = effective_weights(sc, directives);

    MissionPlan current = start;
    double current_score = heuristic_score(current, compiled, directives);
    long evaluations = 0;

    auto try_candidate = [&](MissionPlan&& candidate) {
        ++evaluations;
        try {
            validate_mission(candidate, sc);
        } catch (const InputError&) {
            return false;
        }
        double score = heuristic_score(candidate, compiled, directives);
        if (score > current_score + 1e-9) {
            current = std::move(candidate);
            current_score = score;
            return true;
        }
        return false;
    };

    bool improved = true;
    while (improved && evaluations < max_evaluations) {
        improved = false;

        for (std::size_t k = 0; k < current.plans.size() && !improved; ++k) {
            const AgentPlan& plan = current.plans[k];
            std::size_t len = plan.path.size();

            // Shift one interval between adjacent path sectors.
            for (std::size_t i = 0; i + 1 < len && !improved; ++i) {
                for (int dir = 0; dir < 2 && !improved; ++dir) {
                    std::size_t from = dir == 0 ? i : i + 1;
                    std::size_t to = dir == 0 ? i + 1 : i;
                    if (current.plans[k].stay[from] <= 1)
                        continue;
                    MissionPlan candidate = current;
                    --candidate.plans[k].stay[from];
                    ++candidate.plans[k].stay[to];
                    improved = try_candidate(std::move(candidate));
                }
            }

            // Swap two path sectors.
            for (std::size_t a = 0; a < len && !improved; ++a) {
                for (std::size_t b = a + 1; b < len && !improved; ++b) {
                    MissionPlan candidate = current;
                    std::swap(candidate.plans[k].path[a], candidate.plans[k].path[b]);
                    std::swap(candidate.plans[k].stay[a], candidate.plans[k].stay[b]);
                    improved = try_candidate(std::move(candidate));
                }
            }

            // Rewrite the tail from each cut position.
            if (!improved) {
                std::vector<double> others(sc.grid.cell_count(), 0.0);
                std::vector<PositionTimeline> timelines(current.plans.size());
                for (std::size_t l = 0; l < current.plans.size(); ++l) {
                    timelines[l] = timeline_of(current.plans[l], sc);
                    if (l == k)
                        continue;
                    const CompiledAgent& ca = compiled.agents[l];
                    const SectorLayout& layout = sc.layouts[ca.layout];
                    const AgentPlan& other = current.plans[l];
                    for (std::size_t i = 0; i < other.path.size(); ++i) {
                        int si = layout.sector_index(other.path[i]);
                        for (const auto& [cell, phi] : ca.phi[si])
                            others[cell] += phi * other.stay[i];
                    }
                }
                const SectorLayout& layout = sc.layouts[compiled.agents[k].layout];
                for (std::size_t cut = 1; cut <= len && !improved; ++cut) {
                    int tail_budget = 0;
                    for (std::size_t i = cut; i < len; ++i)
                        tail_budget += plan.stay[i];
                    if (tail_budget == 0 && cut == len)
                        continue;

                    std::vector<int> prefix_path, prefix_stay;
                    for (std::size_t i = 0; i < cut; ++i) {
                        prefix_path.push_back(layout.sector_index(plan.path[i]));
                        prefix_stay.push_back(plan.stay[i]);
                    }
                    regrow_tail(compiled, directives, weights, static_cast<int>(k), prefix_path,
                                prefix_stay, tail_budget, others, timelines);

                    MissionPlan candidate = current;
                    candidate.plans[k].path.clear();
                    candidate.plans[k].stay.clear();
                    for (std::size_t i = 0; i < prefix_path.size(); ++i) {
                        candidate.plans[k].path.push_back(layout.sectors[prefix_path[i]].id);
                        candidate.plans[k].stay.push_back(prefix_stay[i]);
                    }
                    improved = try_candidate(std::move(candidate));
                }
            }
        }
    }
    return current;
}

} // namespace sarmip
