#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "netlocal/constraints.hpp"
#include "netlocal/errors.hpp"
#include "netlocal/fock.hpp"
#include "netlocal/simplex.hpp"

using namespace netlocal;

namespace {

LPProblem tiny_feasible() {
    LPProblem p;
    const int x = p.add_var("x");
    LPRow row;
    row.coeffs = {{x, 1.0}};
    row.rhs = 1.0;
    p.rows.push_back(row);
    return p;
}

} // namespace

TEST_CASE("zero objective with a binding equality") {
    const Solution s = solve(tiny_feasible());
    CHECK(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(0.0));
    CHECK(s.values[0] == doctest::Approx(1.0));
}

TEST_CASE("slack pair absorbs an unreachable equality") {
    LPProblem p;
    const int x = p.add_var("x");
    const int sp = p.add_var("sp");
    const int sm = p.add_var("sm");
    p.objective = {{sp, 1.0}, {sm, 1.0}};
    LPRow row;
    row.coeffs = {{x, 1.0}, {sp, -1.0}, {sm, 1.0}};
    row.rhs = -1.0;
    p.rows.push_back(row);
    const Solution s = solve(p);
    CHECK(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(1.0));
    CHECK(s.values[x] == doctest::Approx(0.0));
}

TEST_CASE("infeasibility without slacks is reported") {
    LPProblem p;
    const int x = p.add_var("x");
    LPRow row;
    row.coeffs = {{x, 1.0}};
    row.rhs = -1.0;
    p.rows.push_back(row);
    CHECK(solve(p).status == SolveStatus::Infeasible);
}

TEST_CASE("inequalities and lower bounds") {
    SUBCASE("surplus variable on a >= row") {
        LPProblem p;
        const int x = p.add_var("x");
        p.objective = {{x, 1.0}};
        LPRow row;
        row.coeffs = {{x, 1.0}};
        row.rhs = 3.0;
        row.relation = '>';
        p.rows.push_back(row);
        const Solution s = solve(p);
        CHECK(s.status == SolveStatus::Optimal);
        CHECK(s.objective == doctest::Approx(3.0));
    }
    SUBCASE("nonzero lower bound") {
        LPProblem p;
        const int x = p.add_var("x", 2.0);
        p.objective = {{x, 1.0}};
        const Solution s = solve(p);
        CHECK(s.status == SolveStatus::Optimal);
        CHECK(s.objective == doctest::Approx(2.0));
        CHECK(s.values[x] == doctest::Approx(2.0));
    }
}

TEST_CASE("redundant rows survive phase one") {
    LPProblem p;
    const int x = p.add_var("x");
    const int y = p.add_var("y");
    p.objective = {{y, 1.0}};
    for (int k = 0; k < 2; ++k) {
        LPRow row;
        row.coeffs = {{x, 1.0}, {y, 1.0}};
        row.rhs = 1.0;
        p.rows.push_back(row);
    }
    const Solution s = solve(p);
    CHECK(s.status == SolveStatus::Optimal);
    CHECK(s.objective == doctest::Approx(0.0));
    CHECK(s.values[x] == doctest::Approx(1.0));
}

TEST_CASE("unbounded minimization is flagged") {
    LPProblem p;
    const int x = p.add_var("x");
    p.objective = {{x, -1.0}};
    CHECK(solve(p).status == SolveStatus::NumericalTrouble);
}

TEST_CASE("iteration limit status") {
    const Topology topo = build_6p4s();
    AssembledWitness w = assemble_lp(behavior(topo, 0.2), topo);
    SolverSettings cfg;
    cfg.max_iter = 3;
    CHECK(solve(w.lp, cfg).status == SolveStatus::IterationLimit);
}

TEST_CASE("malformed problems are rejected") {
    LPProblem p;
    const int x = p.add_var("x");
    LPRow row;
    row.coeffs = {{x, 1.0}, {x, 2.0}};
    row.rhs = 1.0;
    p.rows.push_back(row);
    CHECK_THROWS_WITH_AS(solve(p), doctest::Contains("invalid-lp"), Error);
}

TEST_CASE("witness program at reference transmissivities") {
    const Topology topo = build_6p4s();

    SUBCASE("balanced point is satisfiable") {
        AssembledWitness w = assemble_lp(behavior(topo, 0.5), topo);
        const Solution s = solve(w.lp);
        CHECK(s.status == SolveStatus::Optimal);
        CHECK(s.objective <= 1e-6);
    }
    SUBCASE("frozen optima from an independent solver") {
        struct Ref {
            double t, T;
        };
        // Computed once with an external sparse LP solver on the same rows.
        for (const Ref ref : {Ref{0.2, 8.640000000002e-03}, Ref{0.25, 4.166666666667e-03},
                              Ref{0.1, 1.352666666667e-02}}) {
            CAPTURE(ref.t);
            AssembledWitness w = assemble_lp(behavior(topo, ref.t), topo);
            const Solution s = solve(w.lp);
            CHECK(s.status == SolveStatus::Optimal);
            CHECK(s.objective == doctest::Approx(ref.T).epsilon(1e-7));
            CHECK(s.max_residual <= 1e-8);

            const ResidualReport check = verify_solution(w.lp, s);
            CHECK(check.max_row_residual <= 1e-8);
            CHECK(check.objective_mismatch <= 1e-10);
        }
    }
    SUBCASE("objective is never negative") {
        for (double t : {0.0, 0.15, 0.5, 0.9}) {
            AssembledWitness w = assemble_lp(behavior(topo, t), topo);
            CHECK(solve(w.lp).objective >= 0.0);
        }
    }
    SUBCASE("scaling the constraint content scales the optimum") {
        AssembledWitness w = assemble_lp(behavior(topo, 0.2), topo);
        const double base = solve(w.lp).objective;
        for (auto& row : w.lp.rows) {
            for (auto& [j, c] : row.coeffs)
                if (j < w.n_qvars) c *= 10.0; // slack columns keep unit weight
            row.rhs *= 10.0;
        }
        CHECK(solve(w.lp).objective == doctest::Approx(10.0 * base).epsilon(1e-9));
    }
    SUBCASE("deterministic resolves") {
        AssembledWitness w = assemble_lp(behavior(topo, 0.23), topo);
        const Solution a = solve(w.lp);
        const Solution b = solve(w.lp);
        CHECK(a.objective == b.objective);
        CHECK(a.iterations == b.iterations);
        CHECK(a.values == b.values);
    }
}

TEST_CASE("pivot rules agree where both terminate quickly") {
    LPProblem p;
    const int x = p.add_var("x");
    const int y = p.add_var("y");
    const int z = p.add_var("z");
    p.objective = {{x, 2.0}, {y, 3.0}, {z, 1.0}};
    LPRow r1, r2;
    r1.coeffs = {{x, 1.0}, {y, 1.0}, {z, 1.0}};
    r1.rhs = 4.0;
    r2.coeffs = {{x, 1.0}, {y, -1.0}};
    r2.rhs = 1.0;
    r2.relation = '>';
    p.rows = {r1, r2};
    SolverSettings dantzig;
    dantzig.pivot = SolverSettings::Pivot::Dantzig;
    const Solution a = solve(p);
    const Solution b = solve(p, dantzig);
    REQUIRE(a.status == SolveStatus::Optimal);
    REQUIRE(b.status == SolveStatus::Optimal);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-10));
}

TEST_CASE("verify_solution flags corrupted values") {
    const Topology topo = build_6p4s();
    AssembledWitness w = assemble_lp(behavior(topo, 0.3), topo);
    Solution s = solve(w.lp);
    REQUIRE(s.status == SolveStatus::Optimal);
    s.values[5] += 1e-3;
    const ResidualReport report = verify_solution(w.lp, s);
    CHECK(report.max_row_residual >= 1e-4);
    CHECK(report.worst_row >= 0);
}
