#include "netlocal/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "netlocal/errors.hpp"

namespace netlocal {

int LPProblem::add_var(const std::string& name, double lower) {
    col_names.push_back(name);
    if (lower != 0.0 && lower_bounds.empty()) lower_bounds.assign(n_vars, 0.0);
    if (lower != 0.0 || !lower_bounds.empty()) lower_bounds.push_back(lower);
    return n_vars++;
}

void LPProblem::check_shape() const {
    if (!lower_bounds.empty() && static_cast<int>(lower_bounds.size()) != n_vars)
        throw Error("invalid-lp", "lower_bounds size differs from n_vars");
    for (size_t i = 0; i < rows.size(); ++i) {
        std::set<int> seen;
        for (const auto& [j, c] : rows[i].coeffs) {
            if (j < 0 || j >= n_vars)
                throw Error("invalid-lp", "row " + std::to_string(i) + " references column " + std::to_string(j));
            if (!seen.insert(j).second)
                throw Error("invalid-lp", "row " + std::to_string(i) + " repeats column " + std::to_string(j));
            (void)c;
        }
        if (rows[i].relation != '=' && rows[i].relation != '>')
            throw Error("invalid-lp", "row " + std::to_string(i) + " has unsupported relation");
    }
    for (const auto& [j, c] : objective) {
        if (j < 0 || j >= n_vars) throw Error("invalid-lp", "objective references invalid column");
        (void)c;
    }
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::IterationLimit: return "IterationLimit";
        case SolveStatus::NumericalTrouble: return "NumericalTrouble";
    }
    return "Unknown";
}

namespace {

// Dense tableau: n_rows constraint rows plus one reduced-cost row, rhs in the
// last column. basis[i] is the column basic in row i.
struct Tableau {
    int n_rows = 0;
    int n_cols = 0; // excluding rhs
    std::vector<double> data; // (n_rows + 1) * (n_cols + 1)
    std::vector<int> basis;

    double& at(int i, int j) { return data[static_cast<size_t>(i) * (n_cols + 1) + j]; }
    double at(int i, int j) const { return data[static_cast<size_t>(i) * (n_cols + 1) + j]; }
    int rhs_col() const { return n_cols; }
    int obj_row() const { return n_rows; }

    void pivot(int row, int col) {
        const int width = n_cols + 1;
        double* prow = &data[static_cast<size_t>(row) * width];
        const double inv = 1.0 / prow[col];
        for (int j = 0; j <= n_cols; ++j) prow[j] *= inv;
        prow[col] = 1.0;
        for (int i = 0; i <= n_rows; ++i) {
            if (i == row) continue;
            double* irow = &data[static_cast<size_t>(i) * width];
            const double factor = irow[col];
            if (factor == 0.0) continue;
            for (int j = 0; j <= n_cols; ++j) irow[j] -= factor * prow[j];
            irow[col] = 0.0;
        }
        basis[row] = col;
    }
};

// Loads reduced costs rc_j = c_j - c_B B^-1 A_j into the objective row.
void install_objective(Tableau& t, const std::vector<double>& costs) {
    const int width = t.n_cols + 1;
    double* orow = &t.data[static_cast<size_t>(t.obj_row()) * width];
    for (int j = 0; j <= t.n_cols; ++j) orow[j] = j < t.n_cols ? costs[j] : 0.0;
    for (int i = 0; i < t.n_rows; ++i) {
        const double cb = costs[t.basis[i]];
        if (cb == 0.0) continue;
        const double* irow = &t.data[static_cast<size_t>(i) * width];
        for (int j = 0; j <= t.n_cols; ++j) orow[j] -= cb * irow[j];
    }
}

struct PhaseResult {
    bool optimal = false;
    bool unbounded = false;
    bool hit_limit = false;
};

// Leaving row by the lexicographic ratio test: among rows attaining the
// minimum rhs ratio, repeatedly compare the scaled rows column by column
// until a unique minimum survives. With the full-row-rank tableaus we build,
// no basis can repeat, so any pricing rule terminates.
int gather_leaving_candidates(const Tableau& t, int col, double pivot_tol, std::vector<int>& candidates) {
    constexpr double kTieTol = 1e-11;
    candidates.clear();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t.n_rows; ++i) {
        const double a = t.at(i, col);
        if (a <= pivot_tol) continue;
        const double ratio = t.at(i, t.rhs_col()) / a;
        if (ratio < best_ratio - kTieTol * std::max(1.0, std::abs(best_ratio))) {
            best_ratio = ratio;
            candidates.assign(1, i);
        } else if (ratio <= best_ratio + kTieTol * std::max(1.0, std::abs(best_ratio))) {
            best_ratio = std::min(best_ratio, ratio);
            candidates.push_back(i);
        }
    }
    return candidates.empty() ? -1 : candidates.front();
}

int lexicographic_leaving(const Tableau& t, int col) {
    constexpr double kTieTol = 1e-11;
    // Insist on a solid pivot element when one attains the minimum ratio;
    // only fall back to small pivots when nothing better exists.
    std::vector<int> candidates;
    if (gather_leaving_candidates(t, col, 1e-7, candidates) < 0 &&
        gather_leaving_candidates(t, col, 1e-9, candidates) < 0)
        return -1;
    for (int j = 0; j < t.n_cols && candidates.size() > 1; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (int i : candidates) best = std::min(best, t.at(i, j) / t.at(i, col));
        std::vector<int> kept;
        for (int i : candidates)
            if (t.at(i, j) / t.at(i, col) <= best + kTieTol * std::max(1.0, std::abs(best))) kept.push_back(i);
        candidates = std::move(kept);
    }
    return candidates.front();
}

PhaseResult run_phase(Tableau& t, const std::vector<bool>& allowed, const SolverSettings& cfg, long& iterations,
                      long max_iter) {
    PhaseResult res;
    for (;;) {
        if (iterations >= max_iter) {
            res.hit_limit = true;
            return res;
        }
        // entering column
        int col = -1;
        if (cfg.pivot == SolverSettings::Pivot::Bland) {
            for (int j = 0; j < t.n_cols; ++j) {
                if (allowed[j] && t.at(t.obj_row(), j) < -cfg.opt_tol) {
                    col = j;
                    break;
                }
            }
        } else {
            double best = -cfg.opt_tol;
            for (int j = 0; j < t.n_cols; ++j) {
                if (allowed[j] && t.at(t.obj_row(), j) < best) {
                    best = t.at(t.obj_row(), j);
                    col = j;
                }
            }
        }
        if (col < 0) {
            res.optimal = true;
            return res;
        }
        const int row = lexicographic_leaving(t, col);
        if (row < 0) {
            res.unbounded = true;
            return res;
        }
        t.pivot(row, col);
        ++iterations;
    }
}

} // namespace

Solution solve(const LPProblem& p, const SolverSettings& settings) {
    p.check_shape();
    Solution sol;

    const int n_rows = static_cast<int>(p.rows.size());
    const int n_struct = p.n_vars;

    // Shift lower bounds away: solve in y = x - lb >= 0.
    std::vector<double> lb(p.lower_bounds);
    if (lb.empty()) lb.assign(n_struct, 0.0);
    double objective_shift = 0.0;
    for (const auto& [j, c] : p.objective) objective_shift += c * lb[j];

    int n_surplus = 0;
    for (const auto& row : p.rows)
        if (row.relation == '>') ++n_surplus;

    Tableau t;
    t.n_rows = n_rows;
    t.n_cols = n_struct + n_surplus; // artificials appended below as needed
    std::vector<double> shifted_rhs(n_rows, 0.0);
    std::vector<int> row_sign(n_rows, 1);

    // First pass: shifted rhs and sign normalization.
    for (int i = 0; i < n_rows; ++i) {
        double b = p.rows[i].rhs;
        for (const auto& [j, c] : p.rows[i].coeffs) b -= c * lb[j];
        shifted_rhs[i] = b;
        row_sign[i] = b < 0.0 ? -1 : 1;
    }

    // Crash: a column appearing in exactly one row can start basic there if
    // its (sign-normalized) coefficient is positive.
    std::vector<int> col_row_count(n_struct + n_surplus, 0);
    std::vector<int> col_only_row(n_struct + n_surplus, -1);
    std::vector<double> col_only_coef(n_struct + n_surplus, 0.0);
    {
        int surplus_index = 0;
        for (int i = 0; i < n_rows; ++i) {
            for (const auto& [j, c] : p.rows[i].coeffs) {
                col_row_count[j]++;
                col_only_row[j] = i;
                col_only_coef[j] = c * row_sign[i];
            }
            if (p.rows[i].relation == '>') {
                const int j = n_struct + surplus_index++;
                col_row_count[j] = 1;
                col_only_row[j] = i;
                col_only_coef[j] = -1.0 * row_sign[i];
            }
        }
    }
    std::vector<int> crash_col(n_rows, -1);
    for (int j = 0; j < n_struct + n_surplus; ++j) {
        if (col_row_count[j] != 1) continue;
        const int i = col_only_row[j];
        if (crash_col[i] < 0 && col_only_coef[j] > settings.feas_tol) crash_col[i] = j;
    }

    int n_artificial = 0;
    std::vector<int> artificial_of_row(n_rows, -1);
    for (int i = 0; i < n_rows; ++i)
        if (crash_col[i] < 0) artificial_of_row[i] = n_struct + n_surplus + n_artificial++;
    const int n_cols = n_struct + n_surplus + n_artificial;
    t.n_cols = n_cols;
    t.data.assign(static_cast<size_t>(n_rows + 1) * (n_cols + 1), 0.0);
    t.basis.assign(n_rows, -1);

    {
        int surplus_index = 0;
        for (int i = 0; i < n_rows; ++i) {
            const double sign = row_sign[i];
            for (const auto& [j, c] : p.rows[i].coeffs) t.at(i, j) = c * sign;
            if (p.rows[i].relation == '>') t.at(i, n_struct + surplus_index++) = -sign;
            if (artificial_of_row[i] >= 0) t.at(i, artificial_of_row[i]) = 1.0;
            t.at(i, t.rhs_col()) = shifted_rhs[i] * sign;
        }
    }
    for (int i = 0; i < n_rows; ++i) {
        if (crash_col[i] >= 0) {
            t.basis[i] = crash_col[i];
            const double a = t.at(i, crash_col[i]);
            for (int j = 0; j <= n_cols; ++j) t.at(i, j) /= a;
        } else {
            t.basis[i] = artificial_of_row[i];
        }
    }

    const long max_iter =
        settings.max_iter > 0 ? settings.max_iter : 500L * (n_rows + n_cols);
    long iterations = 0;
    std::vector<bool> allowed(n_cols, true);

    if (n_artificial > 0) {
        std::vector<double> phase1_costs(n_cols, 0.0);
        for (int j = n_struct + n_surplus; j < n_cols; ++j) phase1_costs[j] = 1.0;
        install_objective(t, phase1_costs);
        PhaseResult r = run_phase(t, allowed, settings, iterations, max_iter);
        sol.iterations = iterations;
        if (r.hit_limit) {
            sol.status = SolveStatus::IterationLimit;
            return sol;
        }
        if (r.unbounded) {
            sol.status = SolveStatus::NumericalTrouble;
            return sol;
        }
        double phase1_value = 0.0;
        for (int i = 0; i < n_rows; ++i)
            if (t.basis[i] >= n_struct + n_surplus) phase1_value += t.at(i, t.rhs_col());
        if (phase1_value > settings.feas_tol) {
            sol.status = SolveStatus::Infeasible;
            return sol;
        }
        // Drive leftover artificials out where possible; redundant rows keep
        // theirs pinned at zero.
        for (int i = 0; i < n_rows; ++i) {
            if (t.basis[i] < n_struct + n_surplus) continue;
            int col = -1;
            for (int j = 0; j < n_struct + n_surplus; ++j) {
                if (std::abs(t.at(i, j)) > 1e-7) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) {
                t.pivot(i, col);
                ++iterations;
            }
        }
        for (int j = n_struct + n_surplus; j < n_cols; ++j) allowed[j] = false;
    }

    std::vector<double> costs(n_cols, 0.0);
    for (const auto& [j, c] : p.objective) costs[j] += c;
    install_objective(t, costs);
    PhaseResult r = run_phase(t, allowed, settings, iterations, max_iter);
    sol.iterations = iterations;
    if (r.hit_limit) {
        sol.status = SolveStatus::IterationLimit;
        return sol;
    }
    if (r.unbounded) {
        sol.status = SolveStatus::NumericalTrouble;
        return sol;
    }

    std::vector<double> y(n_cols, 0.0);
    for (int i = 0; i < n_rows; ++i) y[t.basis[i]] = t.at(i, t.rhs_col());
    sol.values.assign(n_struct, 0.0);
    for (int j = 0; j < n_struct; ++j) sol.values[j] = y[j] + lb[j];
    sol.objective = objective_shift;
    for (const auto& [j, c] : p.objective) sol.objective += c * y[j];

    double max_residual = 0.0;
    for (const auto& row : p.rows) {
        double lhs = 0.0;
        for (const auto& [j, c] : row.coeffs) lhs += c * sol.values[j];
        const double r0 = row.relation == '=' ? std::abs(lhs - row.rhs) : std::max(0.0, row.rhs - lhs);
        max_residual = std::max(max_residual, r0);
    }
    sol.max_residual = max_residual;
    sol.status = max_residual <= settings.feas_tol ? SolveStatus::Optimal : SolveStatus::NumericalTrouble;
    return sol;
}

ResidualReport verify_solution(const LPProblem& p, const Solution& s) {
    ResidualReport report;
    for (size_t i = 0; i < p.rows.size(); ++i) {
        double lhs = 0.0;
        for (const auto& [j, c] : p.rows[i].coeffs) lhs += c * s.values[j];
        const double r = p.rows[i].relation == '=' ? std::abs(lhs - p.rows[i].rhs)
                                                   : std::max(0.0, p.rows[i].rhs - lhs);
        if (r > report.max_row_residual) {
            report.max_row_residual = r;
            report.worst_row = static_cast<int>(i);
        }
    }
    double obj = 0.0;
    for (const auto& [j, c] : p.objective) obj += c * s.values[j];
    report.objective_recomputed = obj;
    report.objective_mismatch = std::abs(obj - s.objective);
    return report;
}

} // namespace netlocal
