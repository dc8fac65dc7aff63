#ifndef NETLOCAL_SIMPLEX_HPP
#define NETLOCAL_SIMPLEX_HPP

#include <string>
#include <vector>

namespace netlocal {

struct LPRow {
    std::vector<std::pair<int, double>> coeffs; // (column, coefficient), unique columns
    double rhs = 0.0;
    char relation = '='; // '=' or '>'
    std::string name;
};

/// Minimization problem over variables with individual lower bounds
/// (default 0) and no upper bounds.
struct LPProblem {
    int n_vars = 0;
    std::vector<std::pair<int, double>> objective;
    std::vector<LPRow> rows;
    std::vector<double> lower_bounds; // empty means all-zero
    std::vector<std::string> col_names;

    int add_var(const std::string& name, double lower = 0.0);
    // Throws Error("invalid-lp") on out-of-range or duplicate indices.
    void check_shape() const;
};

enum class SolveStatus { Optimal, Infeasible, IterationLimit, NumericalTrouble };
const char* to_string(SolveStatus s);

struct SolverSettings {
    double feas_tol = 1e-8;
    double opt_tol = 1e-8;
    long max_iter = 0; // 0 -> 500 * (rows + cols)
    enum class Pivot { Bland, Dantzig } pivot = Pivot::Bland;
};

struct Solution {
    SolveStatus status = SolveStatus::NumericalTrouble;
    double objective = 0.0;
    std::vector<double> values;
    double max_residual = 0.0;
    long iterations = 0;
};

// Two-phase primal simplex on a dense tableau. Rows already covered by a
// singleton column start basic (crash), the rest get phase-1 artificials.
// Bland's rule by default; Dantzig as the optional fast path. Unbounded
// problems surface as NumericalTrouble (no witness objective is unbounded).
Solution solve(const LPProblem& p, const SolverSettings& settings = {});

struct ResidualReport {
    double max_row_residual = 0.0;
    int worst_row = -1;
    double objective_recomputed = 0.0;
    double objective_mismatch = 0.0;
};

// Recomputes residuals and the objective straight from the problem data,
// independent of the solver's tableau.
ResidualReport verify_solution(const LPProblem& p, const Solution& s);

} // namespace netlocal

#endif
