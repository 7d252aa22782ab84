#pragma once
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace sarmip {

enum class VarKind { continuous, integer, binary };
enum class RowSense { le, ge, eq };

struct Variable {
    std::string name;
    VarKind kind = VarKind::continuous;
    double lower = 0.0;
    double upper = 0.0;
    std::string role; // semantic annotation, e.g. "arc dog1 s2->s5"
};

struct LinearRow {
    std::string name;
    std::vector<std::pair<int, double>> coeffs; // (variable index, coefficient)
    RowSense sense = RowSense::le;
    double rhs = 0.0;
    // Big-M indicator rows that the LP engine may activate on demand.
    bool lazy = false;
};

// Solver-agnostic matrix form: variables with bounds, linear rows, and a
// maximization objective. Variable and row order is insertion order, which
// makes the LP export byte-stable.
class MipModel {
public:
    int add_variable(std::string name, VarKind kind, double lower, double upper,
                     std::string role = {});
    void add_row(std::string name, std::vector<std::pair<int, double>> coeffs, RowSense sense,
                 double rhs, bool lazy = false);
    void set_objective(int var, double coeff);
    void add_objective(int var, double coeff);
    void set_bounds(int var, double lower, double upper);

    int variable_index(const std::string& name) const; // -1 when absent

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<LinearRow>& rows() const { return rows_; }
    const std::vector<double>& objective() const { return objective_; }

    std::size_t variable_count() const { return vars_.size(); }
    std::size_t row_count() const { return rows_.size(); }

    // Objective value of an assignment (maximization sense).
    double objective_value(const std::vector<double>& x) const;

    // Checks rows and bounds; returns the first violated row/bound as text,
    // or empty when the assignment is feasible within `tol`.
    std::string check_feasible(const std::vector<double>& x, double tol) const;

    // Industry-standard LP file format; byte-stable for identical models.
    void write_lp(std::ostream& out) const;

private:
    std::vector<Variable> vars_;
    std::vector<LinearRow> rows_;
    std::vector<double> objective_;
    std::unordered_map<std::string, int> index_;
};

// Shortest round-trip decimal text for a double (std::to_chars).
std::string format_double(double value);

} // namespace sarmip
