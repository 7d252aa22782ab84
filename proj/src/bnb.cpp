#include "sarmip/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sarmip/errors.hpp"
#include "sarmip/simplex.hpp"

namespace sarmip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBatchSize = 8; // fixed; threads only speed the batch up

struct Node {
    int parent = -1;
    int branch_var = -1;
    double branch_lower = 0.0;
    double branch_upper = 0.0;
    double bound = kInf; // parent LP value
    long id = 0;
};

struct QueueEntry {
    double bound;
    long id;
    int node;
    bool operator<(const QueueEntry& other) const {
        if (bound != other.bound)
            return bound < other.bound; // max-heap on bound
        return id > other.id;           // FIFO tie-break
    }
};

// Bound-interval relaxation: sum of the best objective contribution each
// variable can make on its own. Valid whenever every objective variable has
// the relevant bound finite; used before/without a root LP value.
double interval_bound(const MipModel& model) {
    double bound = 0.0;
    const auto& obj = model.objective();
    const auto& vars = model.variables();
    for (std::size_t j = 0; j < obj.size(); ++j) {
        if (obj[j] == 0.0)
            continue;
        double hi = obj[j] > 0.0 ? obj[j] * vars[j].upper : obj[j] * vars[j].lower;
        bound += hi; // may be +inf; stays a valid bound
    }
    return bound;
}

int most_fractional(const MipModel& model, const std::vector<double>& x, double tol) {
    int best = -1;
    double best_score = tol;
    const auto& vars = model.variables();
    for (std::size_t j = 0; j < vars.size(); ++j) {
        if (vars[j].kind == VarKind::continuous)
            continue;
        double f = x[j] - std::floor(x[j]);
        double score = std::min(f, 1.0 - f);
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(j);
        }
    }
    return best;
}

void apply_node_bounds(const std::vector<Node>& arena, int node, std::vector<double>& lower,
                       std::vector<double>& upper) {
    // Walk to the root; earlier (deeper) decisions win, so apply only unseen
    // variables on the way up.
    for (int cur = node; cur >= 0; cur = arena[cur].parent) {
        const Node& nd = arena[cur];
        if (nd.branch_var < 0)
            continue;
        lower[nd.branch_var] = std::max(lower[nd.branch_var], nd.branch_lower);
        upper[nd.branch_var] = std::min(upper[nd.branch_var], nd.branch_upper);
    }
}

} // namespace

const char* to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible_gap: return "feasible_gap";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::limit_no_incumbent: return "limit_no_incumbent";
    }
    return "?";
}

SolveOutcome branch_and_bound(const MipModel& model, const SolverConfig& config,
                              const std::vector<double>* warm_start) {
    if (config.time_limit_s <= 0.0)
        throw InputError("time limit must be positive");
    if (!(config.integrality_tolerance > 0.0 && config.integrality_tolerance < 1e-3) ||
        !(config.feasibility_tolerance > 0.0 && config.feasibility_tolerance < 1e-3))
        throw InputError("solver tolerances must lie in (0, 1e-3)");
    auto t0 = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    const double work_budget =
        config.time_limit_s > 0.0 ? config.time_limit_s * kWorkUnitsPerSecond : -1.0;
    double work_used = 0.0;

    SolveOutcome out;
    out.bound = interval_bound(model);
    double incumbent_value = -kInf;

    auto log_incumbent = [&](long nodes) {
        if (config.log)
            *config.log << "incumbent time_s=" << format_double(wall())
                        << " nodes=" << nodes
                        << " incumbent=" << format_double(incumbent_value)
                        << " bound=" << format_double(out.bound)
                        << " gap=" << format_double(out.gap) << "\n";
    };
    auto update_gap = [&] {
        if (incumbent_value == -kInf)
            out.gap = kInf;
        else
            out.gap = std::max(0.0, (out.bound - incumbent_value) /
                                        std::max(std::abs(out.bound), 1e-9));
    };

    if (warm_start) {
        std::string why = model.check_feasible(*warm_start, config.feasibility_tolerance * 10.0);
        if (why.empty()) {
            out.incumbent = *warm_start;
            incumbent_value = model.objective_value(*warm_start);
            update_gap();
            log_incumbent(0);
        } else if (config.log) {
            *config.log << "warm start rejected: " << why << "\n";
        }
    }

    std::vector<double> lower0, upper0;
    for (const auto& var : model.variables()) {
        lower0.push_back(var.lower);
        upper0.push_back(var.upper);
    }

    LpOptions lp_options;
    lp_options.feas_tol = config.feasibility_tolerance;

    std::vector<Node> arena;
    std::priority_queue<QueueEntry> open;
    arena.push_back({-1, -1, 0.0, 0.0, out.bound, 0});
    open.push({out.bound, 0, 0});
    long next_id = 1;

    bool hit_limit = false;
    bool root_infeasible = false;
    bool root_unbounded = false;

    struct BatchItem {
        int node;
        LpResult lp;
    };

    while (!open.empty()) {
        update_gap();
        if (incumbent_value > -kInf && out.gap <= config.target_gap)
            break;
        if (work_budget > 0.0 && work_used >= work_budget) {
            hit_limit = true;
            break;
        }
        if (config.node_limit >= 0 && out.nodes >= config.node_limit) {
            hit_limit = true;
            break;
        }

        // Deterministic batch: pop up to kBatchSize nodes by (bound, id).
        std::vector<BatchItem> batch;
        while (!open.empty() && static_cast<int>(batch.size()) < kBatchSize) {
            QueueEntry top = open.top();
            open.pop();
            if (top.bound <= incumbent_value + 1e-9)
                continue; // pruned
            batch.push_back({top.node, {}});
        }
        if (batch.empty())
            break;

        double slice = work_budget > 0.0 ? (work_budget - work_used) : -1.0;
#ifdef _OPENMP
        int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
        for (int bi = 0; bi < static_cast<int>(batch.size()); ++bi) {
            std::vector<double> lo = lower0, hi = upper0;
            apply_node_bounds(arena, batch[bi].node, lo, hi);
            LpOptions node_options = lp_options;
            node_options.work_budget = slice;
            batch[bi].lp = solve_lp(model, lo, hi, node_options);
        }

        // Merge in node-id order (batch order is already deterministic).
        bool stopped = false;
        for (std::size_t bi = 0; bi < batch.size(); ++bi) {
            const BatchItem& item = batch[bi];
            const Node& node = arena[item.node];
            if (stopped) {
                // Unprocessed leftovers stay open so the final bound is valid.
                open.push({node.bound, node.id, item.node});
                continue;
            }
            work_used += item.lp.work;
            if (item.lp.status == LpStatus::work_limit) {
                open.push({node.bound, node.id, item.node});
                stopped = true;
                hit_limit = true;
                continue;
            }
            ++out.nodes;
#ifdef SARMIP_BNB_TRACE
            fprintf(stderr, "node %ld st=%d lpval=%.9f parentbound=%.9f inc=%.9f\n", node.id,
                    (int)item.lp.status, item.lp.value, node.bound, incumbent_value);
#endif
            if (item.lp.status == LpStatus::infeasible) {
                if (item.node == 0)
                    root_infeasible = true;
                continue;
            }
            if (item.lp.status == LpStatus::unbounded) {
                if (item.node == 0)
                    root_unbounded = true;
                continue;
            }
            double node_bound = item.lp.value;
            if (item.node == 0)
                out.bound = std::min(out.bound, node_bound);
            if (node_bound <= incumbent_value + 1e-9)
                continue; // pruned after solving
            int frac = most_fractional(model, item.lp.x, config.integrality_tolerance);
            if (frac < 0) {
                // Integral: candidate incumbent.
                if (node_bound > incumbent_value + 1e-9) {
                    incumbent_value = node_bound;
                    out.incumbent = item.lp.x;
                    for (std::size_t j = 0; j < out.incumbent.size(); ++j)
                        if (model.variables()[j].kind != VarKind::continuous)
                            out.incumbent[j] = std::round(out.incumbent[j]);
                    update_gap();
                    log_incumbent(out.nodes);
                }
                continue;
            }
            double v = item.lp.x[frac];
            Node down{item.node, frac, -kInf, std::floor(v), node_bound, next_id++};
            Node up{item.node, frac, std::ceil(v), kInf, node_bound, next_id++};
            arena.push_back(down);
            open.push({node_bound, down.id, static_cast<int>(arena.size()) - 1});
            arena.push_back(up);
            open.push({node_bound, up.id, static_cast<int>(arena.size()) - 1});
        }
        if (root_unbounded)
            break;
        if (stopped)
            break;
    }

    // Final bound: best open node (or incumbent when the tree is exhausted).
    if (root_unbounded) {
        out.status = SolveStatus::unbounded;
        out.bound = kInf;
    } else if (root_infeasible && incumbent_value == -kInf) {
        out.status = SolveStatus::infeasible;
    } else {
        if (open.empty()) {
            if (incumbent_value > -kInf)
                out.bound = std::min(out.bound, incumbent_value);
        } else {
            out.bound = std::min(out.bound, std::max(open.top().bound, incumbent_value));
        }
        update_gap();

        if (incumbent_value == -kInf) {
            out.status = hit_limit ? SolveStatus::limit_no_incumbent : SolveStatus::infeasible;
        } else if (out.gap <= config.target_gap) {
            out.status = SolveStatus::optimal;
        } else {
            out.status = SolveStatus::feasible_gap;
        }
    }
    out.objective = incumbent_value == -kInf ? 0.0 : incumbent_value;
    out.wall_time_s = wall();
    out.work_seconds = work_used / kWorkUnitsPerSecond;
    update_gap();
    if (root_unbounded || incumbent_value == -kInf)
        out.gap = kInf;

    if (config.log) {
        *config.log << "{\"status\":\"" << to_string(out.status) << "\""
                    << ",\"objective\":" << format_double(out.objective)
                    << ",\"bound\":" << format_double(out.bound)
                    << ",\"gap\":" << format_double(std::isfinite(out.gap) ? out.gap : -1.0)
                    << ",\"nodes\":" << out.nodes
                    << ",\"time_s\":" << format_double(out.wall_time_s)
                    << ",\"work_s\":" << format_double(out.work_seconds) << "}\n";
    }
    return out;
}

} // namespace sarmip
