#include "support/lp_reader.hpp"

#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sarmip::testing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Term {
    double coeff;
    std::string var;
};

// Splits "c1 x1 + c2 x2 - c3 x3" into signed terms.
std::vector<Term> parse_terms(const std::string& text) {
    std::istringstream in(text);
    std::vector<Term> terms;
    double sign = 1.0;
    std::string token;
    while (in >> token) {
        if (token == "+") {
            sign = 1.0;
            continue;
        }
        if (token == "-") {
            sign = -1.0;
            continue;
        }
        double coeff = std::stod(token);
        std::string var;
        if (!(in >> var))
            throw std::runtime_error("lp reader: dangling coefficient");
        terms.push_back({sign * coeff, var});
        sign = 1.0;
    }
    return terms;
}

} // namespace

MipModel read_lp(std::istream& in) {
    enum Section { none, objective, rows, bounds, generals, binaries };
    Section section = none;

    struct Row {
        std::string name, body;
    };
    std::string obj_body;
    std::vector<Row> row_texts;
    std::vector<std::string> bound_lines, general_names, binary_names;

    std::string line;
    std::string* continuation = nullptr;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '\\')
            continue;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
        if (trimmed.empty())
            continue;
        if (trimmed == "Maximize") {
            section = objective;
            continue;
        }
        if (trimmed == "Subject To") {
            section = rows;
            continuation = nullptr;
            continue;
        }
        if (trimmed == "Bounds") {
            section = bounds;
            continuation = nullptr;
            continue;
        }
        if (trimmed == "Generals") {
            section = generals;
            continue;
        }
        if (trimmed == "Binaries") {
            section = binaries;
            continue;
        }
        if (trimmed == "End")
            break;

        switch (section) {
        case objective: {
            auto colon = trimmed.find(':');
            if (colon != std::string::npos) {
                obj_body = trimmed.substr(colon + 1);
                continuation = &obj_body;
            } else if (continuation) {
                *continuation += " " + trimmed;
            }
            break;
        }
        case rows: {
            auto colon = trimmed.find(':');
            if (colon != std::string::npos) {
                row_texts.push_back({trimmed.substr(0, colon), trimmed.substr(colon + 1)});
                continuation = &row_texts.back().body;
            } else if (continuation) {
                *continuation += " " + trimmed;
            }
            break;
        }
        case bounds:
            bound_lines.push_back(trimmed);
            break;
        case generals:
            general_names.push_back(trimmed);
            break;
        case binaries:
            binary_names.push_back(trimmed);
            break;
        case none:
            break;
        }
    }

    // Collect variables in first-mention order; kinds and bounds follow.
    MipModel model;
    std::map<std::string, VarKind> kinds;
    for (const auto& name : general_names)
        kinds[name] = VarKind::integer;
    for (const auto& name : binary_names)
        kinds[name] = VarKind::binary;

    auto ensure_var = [&](const std::string& name) {
        if (model.variable_index(name) >= 0)
            return model.variable_index(name);
        auto it = kinds.find(name);
        VarKind kind = it == kinds.end() ? VarKind::continuous : it->second;
        // Defaults per LP convention: [0, inf) until a bound line says more.
        return model.add_variable(name, kind, 0.0, kind == VarKind::binary ? 1.0 : kInf);
    };

    for (const Term& t : parse_terms(obj_body))
        model.add_objective(ensure_var(t.var), t.coeff);

    for (const Row& row : row_texts) {
        std::string body = row.body;
        RowSense sense;
        std::size_t pos;
        if ((pos = body.find("<=")) != std::string::npos)
            sense = RowSense::le;
        else if ((pos = body.find(">=")) != std::string::npos)
            sense = RowSense::ge;
        else if ((pos = body.find('=')) != std::string::npos)
            sense = RowSense::eq;
        else
            throw std::runtime_error("lp reader: row without a relation");
        std::string lhs = body.substr(0, pos);
        std::string rhs = body.substr(pos + (body[pos] == '=' ? 1 : 2));
        std::vector<std::pair<int, double>> coeffs;
        for (const Term& t : parse_terms(lhs))
            coeffs.emplace_back(ensure_var(t.var), t.coeff);
        model.add_row(row.name, std::move(coeffs), sense, std::stod(rhs));
    }

    for (const auto& text : bound_lines) {
        std::istringstream bs(text);
        std::vector<std::string> tokens;
        std::string tok;
        while (bs >> tok)
            tokens.push_back(tok);
        if (tokens.size() == 2 && tokens[1] == "free") {
            model.set_bounds(ensure_var(tokens[0]), -kInf, kInf);
        } else if (tokens.size() == 3 && tokens[1] == ">=") {
            model.set_bounds(ensure_var(tokens[0]), std::stod(tokens[2]), kInf);
        } else if (tokens.size() == 5 && tokens[1] == "<=" && tokens[3] == "<=") {
            model.set_bounds(ensure_var(tokens[2]), std::stod(tokens[0]), std::stod(tokens[4]));
        } else {
            throw std::runtime_error("lp reader: unsupported bound line '" + text + "'");
        }
    }
    return model;
}

} // namespace sarmip::testing
