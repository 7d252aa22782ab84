#include "sarmip/mip_model.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sarmip {

std::string format_double(double value) {
    if (value == 0.0)
        value = 0.0; // normalize -0
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc())
        throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

int MipModel::add_variable(std::string name, VarKind kind, double lower, double upper,
                           std::string role) {
    if (index_.count(name))
        throw std::logic_error("duplicate variable '" + name + "'");
    if (kind == VarKind::binary) {
        lower = 0.0;
        upper = 1.0;
    }
    int idx = static_cast<int>(vars_.size());
    index_.emplace(name, idx);
    vars_.push_back({std::move(name), kind, lower, upper, std::move(role)});
    objective_.push_back(0.0);
    return idx;
}

void MipModel::add_row(std::string name, std::vector<std::pair<int, double>> coeffs,
                       RowSense sense, double rhs, bool lazy) {
    for (const auto& [var, coeff] : coeffs) {
        (void)coeff;
        if (var < 0 || var >= static_cast<int>(vars_.size()))
            throw std::logic_error("row '" + name + "' references undeclared variable");
    }
    rows_.push_back({std::move(name), std::move(coeffs), sense, rhs, lazy});
}

void MipModel::set_objective(int var, double coeff) { objective_.at(var) = coeff; }

void MipModel::set_bounds(int var, double lower, double upper) {
    vars_.at(var).lower = lower;
    vars_.at(var).upper = upper;
}

void MipModel::add_objective(int var, double coeff) { objective_.at(var) += coeff; }

int MipModel::variable_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

double MipModel::objective_value(const std::vector<double>& x) const {
    double v = 0.0;
    for (std::size_t i = 0; i < objective_.size(); ++i)
        if (objective_[i] != 0.0)
            v += objective_[i] * x[i];
    return v;
}

std::string MipModel::check_feasible(const std::vector<double>& x, double tol) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (x[i] < vars_[i].lower - tol || x[i] > vars_[i].upper + tol)
            return "variable " + vars_[i].name + " = " + format_double(x[i]) +
                   " outside bounds";
        if (vars_[i].kind != VarKind::continuous &&
            std::abs(x[i] - std::round(x[i])) > 1e-6)
            return "variable " + vars_[i].name + " = " + format_double(x[i]) +
                   " not integral";
    }
    for (const auto& row : rows_) {
        double lhs = 0.0;
        for (const auto& [var, coeff] : row.coeffs)
            lhs += coeff * x[var];
        bool ok = true;
        switch (row.sense) {
        case RowSense::le: ok = lhs <= row.rhs + tol; break;
        case RowSense::ge: ok = lhs >= row.rhs - tol; break;
        case RowSense::eq: ok = std::abs(lhs - row.rhs) <= tol; break;
        }
        if (!ok)
            return "row " + row.name + " violated (lhs = " + format_double(lhs) + ")";
    }
    return {};
}

namespace {

// Wraps long constraint lines; some LP readers dislike very long records.
class LineWriter {
public:
    explicit LineWriter(std::ostream& out) : out_(out) {}
    void begin(const std::string& head) {
        out_ << head;
        column_ = head.size();
    }
    void term(const std::string& text) {
        if (column_ + text.size() > 230) {
            out_ << "\n  ";
            column_ = 2;
        }
        out_ << text;
        column_ += text.size();
    }
    void end() { out_ << "\n"; }

private:
    std::ostream& out_;
    std::size_t column_ = 0;
};

std::string signed_term(double coeff, const std::string& name, bool first) {
    std::string text;
    if (coeff < 0.0)
        text = first ? "- " : " - ";
    else
        text = first ? "" : " + ";
    text += format_double(std::abs(coeff));
    text += " ";
    text += name;
    return text;
}

} // namespace

void MipModel::write_lp(std::ostream& out) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    LineWriter writer(out);

    out << "\\ sarmip model: " << vars_.size() << " variables, " << rows_.size()
        << " constraints\n";
    out << "Maximize\n";
    writer.begin(" obj:");
    bool first = true;
    for (std::size_t i = 0; i < objective_.size(); ++i) {
        if (objective_[i] == 0.0)
            continue;
        writer.term(" ");
        writer.term(signed_term(objective_[i], vars_[i].name, first));
        first = false;
    }
    if (first)
        writer.term(" 0 " + vars_.at(0).name);
    writer.end();

    out << "Subject To\n";
    for (const auto& row : rows_) {
        writer.begin(" " + row.name + ":");
        bool f = true;
        for (const auto& [var, coeff] : row.coeffs) {
            if (coeff == 0.0)
                continue;
            writer.term(" ");
            writer.term(signed_term(coeff, vars_[var].name, f));
            f = false;
        }
        if (f)
            writer.term(" 0 " + vars_.at(0).name);
        const char* rel = row.sense == RowSense::le ? " <= "
                          : row.sense == RowSense::ge ? " >= "
                                                      : " = ";
        writer.term(rel + format_double(row.rhs));
        writer.end();
    }

    out << "Bounds\n";
    for (const auto& var : vars_) {
        if (var.kind == VarKind::binary)
            continue;
        if (var.lower == -inf && var.upper == inf)
            out << " " << var.name << " free\n";
        else if (var.upper == inf)
            out << " " << var.name << " >= " << format_double(var.lower) << "\n";
        else
            out << " " << format_double(var.lower) << " <= " << var.name
                << " <= " << format_double(var.upper) << "\n";
    }

    bool any_general = false;
    for (const auto& var : vars_)
        any_general |= var.kind == VarKind::integer;
    if (any_general) {
        out << "Generals\n";
        for (const auto& var : vars_)
            if (var.kind == VarKind::integer)
                out << " " << var.name << "\n";
    }
    bool any_binary = false;
    for (const auto& var : vars_)
        any_binary |= var.kind == VarKind::binary;
    if (any_binary) {
        out << "Binaries\n";
        for (const auto& var : vars_)
            if (var.kind == VarKind::binary)
                out << " " << var.name << "\n";
    }
    out << "End\n";
}

} // namespace sarmip
