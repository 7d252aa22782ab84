#include "sarmip/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "sarmip/errors.hpp"

namespace sarmip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDegenTheta = 1e-10;
constexpr int kStallLimit = 1000;

enum : std::int8_t { kBasic = 0, kAtLower = 1, kAtUpper = 2, kFreeAtZero = 3 };

struct ActiveLp {
    int m = 0;       // active rows
    int n_total = 0; // structural + slacks + artificials
    int n_struct = 0;
    std::vector<std::vector<std::pair<int, double>>> cols; // by variable
    std::vector<double> lb, ub, cost;
    std::vector<double> rhs;
    double nnz = 0.0;
};

class Simplex {
public:
    // Conservative mode (the retry path after numerical trouble) runs
    // Bland's rule throughout and refactorizes often.
    Simplex(ActiveLp lp, const LpOptions& opt, double work_used, bool conservative = false)
        : lp_(std::move(lp)), opt_(opt), work_(work_used), bland_(conservative),
          refactor_interval_(conservative ? 256 : 2000) {}

    LpStatus run();

    double objective() const;
    std::vector<double> structural_values() const;
    long iterations() const { return iterations_; }
    double work() const { return work_; }

private:
    double nonbasic_value(int j) const {
        switch (status_[j]) {
        case kAtLower: return lp_.lb[j];
        case kAtUpper: return lp_.ub[j];
        default: return 0.0;
        }
    }

    void initial_basis();
    void add_artificials();
    void compute_basic_values();
    void refactorize();
    LpStatus optimize(const std::vector<double>& cost, bool phase_one);
    double value_of(int j) const;

    ActiveLp lp_;
    LpOptions opt_;
    double work_ = 0.0;
    long iterations_ = 0;
    long pivots_since_refactor_ = 0;
    bool bland_ = false;
    long refactor_interval_ = 2000;
    int stall_ = 0;

    std::vector<int> basis_;          // row -> variable
    std::vector<std::int8_t> status_; // variable -> state
    std::vector<double> xB_;          // basic values by row
    std::vector<double> binv_;        // m*m row-major inverse of basis
    std::vector<int> artificials_;
};

void Simplex::initial_basis() {
    int m = lp_.m;
    status_.assign(lp_.n_total, kAtLower);
    for (int j = 0; j < lp_.n_total; ++j) {
        if (lp_.lb[j] > -kInf)
            status_[j] = kAtLower;
        else if (lp_.ub[j] < kInf)
            status_[j] = kAtUpper;
        else
            status_[j] = kFreeAtZero;
    }
    basis_.resize(m);
    for (int i = 0; i < m; ++i) {
        int slack = lp_.n_struct + i;
        basis_[i] = slack;
        status_[slack] = kBasic;
    }
    binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        binv_[static_cast<std::size_t>(i) * m + i] = 1.0;
    compute_basic_values();
}

void Simplex::compute_basic_values() {
    int m = lp_.m;
    std::vector<double> r = lp_.rhs;
    for (int j = 0; j < lp_.n_total; ++j) {
        if (status_[j] == kBasic)
            continue;
        double v = nonbasic_value(j);
        if (v == 0.0)
            continue;
        for (const auto& [row, a] : lp_.cols[j])
            r[row] -= a * v;
    }
    xB_.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        const double* row = binv_.data() + static_cast<std::size_t>(i) * m;
        double v = 0.0;
        for (int k = 0; k < m; ++k)
            v += row[k] * r[k];
        xB_[i] = v;
    }
    work_ += static_cast<double>(m) * m / 1000.0;
}

// Phase 1: rows whose slack starts outside its bounds get an artificial
// column that absorbs the violation; minimizing the artificials' sum drives
// the basis feasible.
void Simplex::add_artificials() {
    int m = lp_.m;
    for (int i = 0; i < m; ++i) {
        int slack = lp_.n_struct + i;
        double v = xB_[i];
        double lo = lp_.lb[slack], hi = lp_.ub[slack];
        if (v >= lo - opt_.feas_tol && v <= hi + opt_.feas_tol)
            continue;
        double fix = v < lo ? lo : hi;
        double residual = v - fix; // leftover once the slack sits at its bound
        double sigma = residual >= 0.0 ? 1.0 : -1.0;
        int art = lp_.n_total;
        lp_.cols.push_back({{i, sigma}});
        lp_.lb.push_back(0.0);
        lp_.ub.push_back(kInf);
        lp_.cost.push_back(0.0);
        ++lp_.n_total;
        status_.push_back(kBasic);
        status_[slack] = v < lo ? kAtLower : kAtUpper;
        basis_[i] = art;
        xB_[i] = std::abs(residual);
        // The basis column for this row is sigma * e_i; keep the explicit
        // inverse in sync.
        binv_[static_cast<std::size_t>(i) * lp_.m + i] = sigma;
        artificials_.push_back(art);
    }
}

void Simplex::refactorize() {
    int m = lp_.m;
    // Dense Gauss-Jordan on the basis matrix; exploits nothing fancy, runs
    // rarely.
    std::vector<double> B(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (const auto& [row, a] : lp_.cols[basis_[i]])
            B[static_cast<std::size_t>(row) * m + i] = a;

    std::vector<double> inv(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        inv[static_cast<std::size_t>(i) * m + i] = 1.0;

    std::vector<int> perm(m);
    for (int col = 0; col < m; ++col) {
        int piv = -1;
        double best = kPivotTol;
        for (int r = 0; r < m; ++r) {
            bool used = false;
            for (int k = 0; k < col; ++k)
                used |= perm[k] == r;
            if (used)
                continue;
            double a = std::abs(B[static_cast<std::size_t>(r) * m + col]);
            if (a > best) {
                best = a;
                piv = r;
            }
        }
        if (piv < 0)
            throw NumericalError("singular basis during refactorization");
        perm[col] = piv;
        double p = B[static_cast<std::size_t>(piv) * m + col];
        double* brow = B.data() + static_cast<std::size_t>(piv) * m;
        double* irow = inv.data() + static_cast<std::size_t>(piv) * m;
        for (int k = 0; k < m; ++k) {
            brow[k] /= p;
            irow[k] /= p;
        }
        for (int r = 0; r < m; ++r) {
            if (r == piv)
                continue;
            double f = B[static_cast<std::size_t>(r) * m + col];
            if (f == 0.0)
                continue;
            double* br = B.data() + static_cast<std::size_t>(r) * m;
            double* ir = inv.data() + static_cast<std::size_t>(r) * m;
            for (int k = 0; k < m; ++k) {
                br[k] -= f * brow[k];
                ir[k] -= f * irow[k];
            }
        }
    }
    // inv now satisfies (P B)^-1-style relations; rebuild binv_ row by row:
    // column `col` of the basis was eliminated with pivot row perm[col], so
    // binv_ row ordering follows basis order.
    binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int col = 0; col < m; ++col) {
        const double* src = inv.data() + static_cast<std::size_t>(perm[col]) * m;
        double* dst = binv_.data() + static_cast<std::size_t>(col) * m;
        std::copy(src, src + m, dst);
    }
    work_ += static_cast<double>(m) * m * m / 1000.0;
    compute_basic_values();
    pivots_since_refactor_ = 0;
}

double Simplex::value_of(int j) const {
    if (status_[j] == kBasic) {
        for (int i = 0; i < lp_.m; ++i)
            if (basis_[i] == j)
                return xB_[i];
    }
    return nonbasic_value(j);
}

LpStatus Simplex::optimize(const std::vector<double>& cost, bool phase_one) {
    int m = lp_.m;
    std::vector<double> y(m);
    std::vector<double> alpha(m);

    while (true) {
        if (opt_.work_budget > 0.0 && work_ > opt_.work_budget)
            return LpStatus::work_limit;
        if (++iterations_ > opt_.max_iterations)
            throw NumericalError("simplex iteration limit exceeded");
        work_ += (3.0 * m * m + lp_.nnz) / 1000.0;

        // y = c_B^T B^{-1}
        std::fill(y.begin(), y.end(), 0.0);
        for (int i = 0; i < m; ++i) {
            double cb = cost[basis_[i]];
            if (cb == 0.0)
                continue;
            const double* row = binv_.data() + static_cast<std::size_t>(i) * m;
            for (int k = 0; k < m; ++k)
                y[k] += cb * row[k];
        }

        // Pricing: maximize, so increase variables with positive reduced cost.
        int entering = -1;
        double best_score = opt_.opt_tol;
        int direction = +1;
        for (int j = 0; j < lp_.n_total; ++j) {
            if (status_[j] == kBasic || lp_.lb[j] == lp_.ub[j])
                continue;
            double d = cost[j];
            for (const auto& [row, a] : lp_.cols[j])
                d -= y[row] * a;
            double score = 0.0;
            int dir = +1;
            if (status_[j] == kAtLower && d > opt_.opt_tol) {
                score = d;
            } else if (status_[j] == kAtUpper && d < -opt_.opt_tol) {
                score = -d;
                dir = -1;
            } else if (status_[j] == kFreeAtZero && std::abs(d) > opt_.opt_tol) {
                score = std::abs(d);
                dir = d > 0.0 ? +1 : -1;
            } else {
                continue;
            }
            if (bland_) {
                entering = j;
                direction = dir;
                break;
            }
            if (score > best_score) {
                best_score = score;
                entering = j;
                direction = dir;
            }
        }
        if (entering < 0)
            return LpStatus::optimal;

        // alpha = B^{-1} A_q
        std::fill(alpha.begin(), alpha.end(), 0.0);
        for (const auto& [row, a] : lp_.cols[entering])
            for (int i = 0; i < m; ++i)
                alpha[i] += binv_[static_cast<std::size_t>(i) * m + row] * a;

        // Ratio test: the entering variable moves by theta in `direction`.
        double theta = kInf;
        int leave = -1; // -1 = bound flip of the entering variable
        int leave_side = kAtLower;
        if (lp_.lb[entering] > -kInf && lp_.ub[entering] < kInf)
            theta = lp_.ub[entering] - lp_.lb[entering];
        for (int i = 0; i < m; ++i) {
            double dir = direction * alpha[i]; // xB[i] moves by -theta*dir
            int bi = basis_[i];
            double t, side;
            if (dir > kPivotTol) {
                if (lp_.lb[bi] == -kInf)
                    continue;
                t = (xB_[i] - lp_.lb[bi]) / dir;
                side = kAtLower;
            } else if (dir < -kPivotTol) {
                if (lp_.ub[bi] == kInf)
                    continue;
                t = (lp_.ub[bi] - xB_[i]) / (-dir);
                side = kAtUpper;
            } else {
                continue;
            }
            t = std::max(t, 0.0);
            if (t < theta - 1e-12 ||
                (t < theta + 1e-12 && leave >= 0 && bi < basis_[leave])) {
                theta = t;
                leave = i;
                leave_side = static_cast<int>(side);
            }
        }
        if (theta == kInf) {
            if (phase_one)
                throw NumericalError("phase-1 subproblem unbounded");
            return LpStatus::unbounded;
        }

        if (theta <= kDegenTheta) {
            if (++stall_ > kStallLimit)
                bland_ = true;
        } else {
            stall_ = 0;
        }

        if (leave < 0) {
            // Bound flip: no basis change.
            for (int i = 0; i < m; ++i)
                xB_[i] -= theta * direction * alpha[i];
            status_[entering] = direction > 0 ? kAtUpper : kAtLower;
            continue;
        }

        double enter_value = nonbasic_value(entering) + direction * theta;
        int leaving = basis_[leave];
        for (int i = 0; i < m; ++i)
            if (i != leave)
                xB_[i] -= theta * direction * alpha[i];
        xB_[leave] = enter_value;
        status_[leaving] = static_cast<std::int8_t>(leave_side);
        status_[entering] = kBasic;
        basis_[leave] = entering;

        // Product-form update of the explicit inverse.
        double pivot = alpha[leave];
        if (std::abs(pivot) < kPivotTol)
            throw NumericalError("pivot element vanished");
        double* prow = binv_.data() + static_cast<std::size_t>(leave) * m;
        for (int k = 0; k < m; ++k)
            prow[k] /= pivot;
        for (int i = 0; i < m; ++i) {
            if (i == leave)
                continue;
            double f = alpha[i];
            if (f == 0.0)
                continue;
            double* row = binv_.data() + static_cast<std::size_t>(i) * m;
            for (int k = 0; k < m; ++k)
                row[k] -= f * prow[k];
        }
        work_ += static_cast<double>(m) * m / 1000.0;

        if (++pivots_since_refactor_ >= refactor_interval_)
            refactorize();
    }
}

LpStatus Simplex::run() {
    initial_basis();
    add_artificials();

    if (!artificials_.empty()) {
        std::vector<double> phase1_cost(lp_.n_total, 0.0);
        for (int a : artificials_)
            phase1_cost[a] = -1.0;
        LpStatus st = optimize(phase1_cost, true);
        if (st == LpStatus::work_limit)
            return st;
        double infeas = 0.0;
        for (int a : artificials_)
            infeas += value_of(a);
        if (infeas > opt_.feas_tol * (1.0 + std::abs(infeas)) && infeas > 1e-6)
            return LpStatus::infeasible;
        for (int a : artificials_)
            lp_.ub[a] = 0.0;
        bland_ = refactor_interval_ <= 256; // conservative mode keeps Bland
        stall_ = 0;
    }

    return optimize(lp_.cost, false);
}

double Simplex::objective() const {
    double v = 0.0;
    for (int j = 0; j < lp_.n_struct; ++j)
        if (lp_.cost[j] != 0.0)
            v += lp_.cost[j] * value_of(j);
    return v;
}

std::vector<double> Simplex::structural_values() const {
    std::vector<double> x(lp_.n_struct);
    for (int j = 0; j < lp_.n_struct; ++j)
        x[j] = value_of(j);
    // Basic lookups above are O(m); cheap relative to the solve itself.
    return x;
}

ActiveLp build_active(const MipModel& model, const std::vector<int>& active_rows,
                      const std::vector<double>& lower, const std::vector<double>& upper) {
    ActiveLp lp;
    lp.n_struct = static_cast<int>(model.variable_count());
    lp.m = static_cast<int>(active_rows.size());
    lp.n_total = lp.n_struct + lp.m;
    lp.cols.assign(lp.n_total, {});
    lp.lb.assign(lp.n_total, 0.0);
    lp.ub.assign(lp.n_total, 0.0);
    lp.cost.assign(lp.n_total, 0.0);
    lp.rhs.assign(lp.m, 0.0);

    for (int j = 0; j < lp.n_struct; ++j) {
        lp.lb[j] = lower[j];
        lp.ub[j] = upper[j];
        lp.cost[j] = model.objective()[j];
    }
    const auto& rows = model.rows();
    for (int i = 0; i < lp.m; ++i) {
        const LinearRow& row = rows[active_rows[i]];
        lp.rhs[i] = row.rhs;
        for (const auto& [var, coeff] : row.coeffs) {
            if (coeff != 0.0) {
                lp.cols[var].emplace_back(i, coeff);
                lp.nnz += 1.0;
            }
        }
        int slack = lp.n_struct + i;
        lp.cols[slack] = {{i, 1.0}};
        switch (row.sense) {
        case RowSense::le:
            lp.lb[slack] = 0.0;
            lp.ub[slack] = kInf;
            break;
        case RowSense::ge:
            lp.lb[slack] = -kInf;
            lp.ub[slack] = 0.0;
            break;
        case RowSense::eq:
            lp.lb[slack] = 0.0;
            lp.ub[slack] = 0.0;
            break;
        }
        lp.nnz += 1.0;
    }
    return lp;
}

} // namespace

LpResult solve_lp(const MipModel& model, const std::vector<double>& lower,
                  const std::vector<double>& upper, const LpOptions& options) {
    const auto& rows = model.rows();
    std::vector<int> active;
    std::vector<int> inactive;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        (rows[i].lazy ? inactive : active).push_back(i);

    LpResult result;
    bool all_activated = inactive.empty();
    for (int round = 0; round < 200; ++round) {
        LpStatus st;
        long iterations = 0;
        double work = result.work;
        std::vector<double> x;
        double value = 0.0;
        bool solved = false;
        for (int attempt = 0; attempt < 2 && !solved; ++attempt) {
            ActiveLp lp = build_active(model, active, lower, upper);
            Simplex simplex(std::move(lp), options, work, attempt > 0);
            try {
                st = simplex.run();
                solved = true;
            } catch (const NumericalError&) {
                if (attempt > 0)
                    throw; // the conservative retry also failed
                work = simplex.work();
                iterations += simplex.iterations();
                continue;
            }
            iterations += simplex.iterations();
            work = simplex.work();
            if (st == LpStatus::optimal || st == LpStatus::unbounded) {
                x = simplex.structural_values();
                value = simplex.objective();
            }
        }
        result.iterations += iterations;
        result.work = work;
        result.status = st;
        if (st == LpStatus::infeasible || st == LpStatus::work_limit)
            return result; // infeasibility of a row subset is conclusive
        if (st == LpStatus::unbounded) {
            if (all_activated)
                return result;
            // A lazy row might bound the ray; activate everything and redo.
            for (int i : inactive)
                active.push_back(i);
            inactive.clear();
            all_activated = true;
            continue;
        }

        result.x = std::move(x);
        result.value = value;

        // Activate violated lazy rows, most violated first.
        std::vector<std::pair<double, int>> violated;
        for (int idx : inactive) {
            const LinearRow& row = rows[idx];
            double lhs = 0.0;
            for (const auto& [var, coeff] : row.coeffs)
                lhs += coeff * result.x[var];
            double v = 0.0;
            switch (row.sense) {
            case RowSense::le: v = lhs - row.rhs; break;
            case RowSense::ge: v = row.rhs - lhs; break;
            case RowSense::eq: v = std::abs(lhs - row.rhs); break;
            }
            if (v > options.feas_tol * (1.0 + std::abs(row.rhs)))
                violated.emplace_back(-v, idx);
        }
        if (violated.empty())
            return result;
        std::sort(violated.begin(), violated.end());
        if (violated.size() > 1000)
            violated.resize(1000);
        std::vector<int> keep;
        keep.reserve(inactive.size());
        std::vector<char> chosen(rows.size(), 0);
        for (const auto& [neg, idx] : violated) {
            (void)neg;
            active.push_back(idx);
            chosen[idx] = 1;
        }
        for (int idx : inactive)
            if (!chosen[idx])
                keep.push_back(idx);
        inactive = std::move(keep);
        all_activated = inactive.empty();
    }
    throw NumericalError("lazy row activation did not converge");
}

LpResult solve_lp(const MipModel& model, const LpOptions& options) {
    std::vector<double> lower, upper;
    lower.reserve(model.variable_count());
    upper.reserve(model.variable_count());
    for (const auto& var : model.variables()) {
        lower.push_back(var.lower);
        upper.push_back(var.upper);
    }
    return solve_lp(model, lower, upper, options);
}

} // namespace sarmip
