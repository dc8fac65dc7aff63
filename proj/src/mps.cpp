#include "netlocal/mps.hpp"

#include <cctype>
#include <cstdio>
#include <set>

namespace netlocal {

namespace {

std::vector<std::string> unique_names(const std::vector<std::string>& labels, char fallback_prefix) {
    std::vector<std::string> out;
    std::set<std::string> used;
    for (size_t i = 0; i < labels.size(); ++i) {
        std::string name;
        for (char c : labels[i]) {
            if (std::isalnum(static_cast<unsigned char>(c))) name += c;
            if (name.size() == 8) break;
        }
        if (name.empty() || !used.insert(name).second) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%c%07zu", fallback_prefix, i);
            name = buf;
            used.insert(name);
        }
        out.push_back(name);
    }
    return out;
}

void append_entry(std::string& out, const std::string& field2, const std::string& field3, double value) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "    %-8s  %-8s  %.12g\n", field2.c_str(), field3.c_str(), value);
    out += buf;
}

} // namespace

std::string export_mps(const LPProblem& p, const std::string& model_name) {
    std::vector<std::string> row_labels;
    for (const auto& row : p.rows) row_labels.push_back(row.name);
    const std::vector<std::string> row_names = unique_names(row_labels, 'R');
    const std::vector<std::string> col_names =
        unique_names(p.col_names.empty() ? std::vector<std::string>(p.n_vars) : p.col_names, 'C');

    std::string out;
    char buf[96];
    std::snprintf(buf, sizeof buf, "NAME          %s\n", model_name.c_str());
    out += buf;

    out += "ROWS\n N  COST\n";
    for (size_t i = 0; i < p.rows.size(); ++i) {
        std::snprintf(buf, sizeof buf, " %c  %s\n", p.rows[i].relation == '=' ? 'E' : 'G', row_names[i].c_str());
        out += buf;
    }

    // Column-major entries, objective first per column.
    std::vector<std::vector<std::pair<int, double>>> by_col(p.n_vars);
    for (size_t i = 0; i < p.rows.size(); ++i)
        for (const auto& [j, c] : p.rows[i].coeffs) by_col[j].emplace_back(static_cast<int>(i), c);
    std::vector<double> obj(p.n_vars, 0.0);
    for (const auto& [j, c] : p.objective) obj[j] += c;

    out += "COLUMNS\n";
    for (int j = 0; j < p.n_vars; ++j) {
        if (obj[j] != 0.0) append_entry(out, col_names[j], "COST", obj[j]);
        for (const auto& [i, c] : by_col[j]) append_entry(out, col_names[j], row_names[i], c);
    }

    out += "RHS\n";
    for (size_t i = 0; i < p.rows.size(); ++i)
        if (p.rows[i].rhs != 0.0) append_entry(out, "RHS", row_names[i], p.rows[i].rhs);

    out += "BOUNDS\n";
    if (!p.lower_bounds.empty()) {
        for (int j = 0; j < p.n_vars; ++j) {
            if (p.lower_bounds[j] != 0.0) {
                std::snprintf(buf, sizeof buf, " LO %-8s  %-8s  %.12g\n", "BND", col_names[j].c_str(),
                              p.lower_bounds[j]);
                out += buf;
            }
        }
    }
    out += "ENDATA\n";
    return out;
}

} // namespace netlocal
