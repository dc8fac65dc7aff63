#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "netlocal/behavior.hpp"
#include "netlocal/constraints.hpp"
#include "netlocal/errors.hpp"
#include "netlocal/fock.hpp"
#include "netlocal/mps.hpp"
#include "netlocal/runner.hpp"

using namespace netlocal;

TEST_CASE("behavior CSV round trip preserves the witness value") {
    const Topology topo = build_6p4s();
    const Behavior b = behavior(topo, 0.37);
    const std::string csv = behavior_to_csv(b);
    CHECK(csv.rfind("outcome,probability\n", 0) == 0);

    const Behavior back = behavior_from_csv(csv, realizable_outcomes(topo));
    REQUIRE(back.probs.size() == b.probs.size());
    for (const auto& [o, p] : b.probs) CHECK(back.prob(o) == p); // full precision round trip

    const double T1 = solve(assemble_lp(b, topo).lp).objective;
    const double T2 = solve(assemble_lp(back, topo).lp).objective;
    CHECK(std::abs(T1 - T2) < 1e-12);
}

TEST_CASE("behavior CSV rejects malformed input") {
    const auto realizable = realizable_outcomes(build_6p4s());
    CHECK_THROWS_WITH_AS(behavior_from_csv("outcome,probability\nL00LRR\n", realizable),
                         doctest::Contains("parse-error"), Error);
    CHECK_THROWS_WITH_AS(behavior_from_csv("outcome,probability\nQ00LRR,0.5\n", realizable),
                         doctest::Contains("parse-error"), Error);
    CHECK_THROWS_WITH_AS(behavior_from_csv("outcome,probability\nL00LRR,-0.5\n", realizable),
                         doctest::Contains("parse-error"), Error);
    CHECK_THROWS_WITH_AS(behavior_from_csv("outcome,probability\n000000,0.5\n", realizable),
                         doctest::Contains("unrealizable-outcome"), Error);
}

TEST_CASE("MPS export") {
    SUBCASE("single variable problem") {
        LPProblem p;
        const int x = p.add_var("x");
        p.objective = {{x, 1.0}};
        LPRow row;
        row.coeffs = {{x, 2.0}};
        row.rhs = 4.0;
        row.name = "only";
        p.rows.push_back(row);
        const std::string mps = export_mps(p, "TINY");
        CHECK(mps.find("NAME          TINY\n") != std::string::npos);
        CHECK(mps.find(" E  only\n") != std::string::npos);
        CHECK(mps.find("COLUMNS") != std::string::npos);
        CHECK(mps.find("ENDATA\n") != std::string::npos);
    }
    SUBCASE("deterministic bytes for the assembled program") {
        const Topology topo = build_6p4s();
        const Behavior b = behavior(topo, 0.2);
        const std::string once = export_mps(assemble_lp(b, topo).lp);
        const std::string twice = export_mps(assemble_lp(b, topo).lp);
        CHECK(once == twice);
        CHECK(once.find(" G  ") == std::string::npos); // slacked equalities only
    }
    SUBCASE("clashing labels fall back to indexed names") {
        LPProblem p;
        p.add_var("samename!");
        p.add_var("samename?");
        LPRow row;
        row.coeffs = {{0, 1.0}, {1, 1.0}};
        row.rhs = 1.0;
        p.rows.push_back(row);
        const std::string mps = export_mps(p);
        CHECK(mps.find("samename") != std::string::npos);
        CHECK(mps.find("C0000001") != std::string::npos);
    }
    SUBCASE("nonzero lower bounds emit a BOUNDS entry") {
        LPProblem p;
        p.add_var("x", 1.5);
        const std::string mps = export_mps(p);
        CHECK(mps.find(" LO BND") != std::string::npos);
    }
}

TEST_CASE("sweep artifacts") {
    const Topology topo = build_6p4s();
    RunSettings settings;
    settings.jobs = 2;
    const SweepResult sweep = run_sweep(topo, 0.0, 1.0, 0.5, settings);
    REQUIRE(sweep.rows.size() == 3); // 0, 0.5, 1
    CHECK(sweep.rows[0].t == 0.0);
    CHECK(sweep.rows[1].t == 0.5);
    CHECK(sweep.rows[2].t == 1.0);
    for (const auto& row : sweep.rows) {
        CHECK(row.status == SolveStatus::Optimal);
        CHECK(row.verdict == "Undetermined"); // edges and center are satisfiable
    }

    const std::string csv = sweep_to_csv(sweep);
    CHECK(csv.rfind("t,T,status,verdict\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    const std::string plot = sweep_to_plot_data(sweep);
    CHECK(std::count(plot.begin(), plot.end(), '\n') == 3);
    CHECK(plot.find("0.5 ") != std::string::npos);

    CHECK_THROWS_AS(run_sweep(topo, 0.5, 0.2, 0.1, settings), Error);
}

TEST_CASE("verdicts never flip toward nonlocality as eps grows") {
    for (double T : {0.0, 1e-9, 1e-6, 1e-3}) {
        bool was_nonlocal = true;
        for (double eps : {1e-8, 1e-6, 1e-4, 1e-2}) {
            const bool nonlocal = verdict_of(SolveStatus::Optimal, T, eps) == "NetworkNonlocal";
            CHECK((was_nonlocal || !nonlocal)); // monotone: once undetermined, stays undetermined
            was_nonlocal = nonlocal;
        }
    }
    CHECK(verdict_of(SolveStatus::IterationLimit, 1.0, 1e-6) == "Undetermined");
}

TEST_CASE("single run report") {
    const Topology topo = build_6p4s();
    RunSettings settings;
    const RunReport report = run_single(topo, behavior(topo, 0.2), settings, 0.2);
    CHECK(report.verdict == "NetworkNonlocal");
    CHECK(report.n_strategies_full == 81);
    CHECK(report.n_strategies == 30);
    CHECK(report.n_outcomes == 240);
    CHECK(report.gammas.size() == 12);
    const std::string text = run_report_text(report);
    CHECK(text.find("81 / 30 / 240") != std::string::npos);
    CHECK(text.find("NetworkNonlocal") != std::string::npos);
    const std::string json = run_report_json(report);
    CHECK(json.find("\"verdict\"") != std::string::npos);

    const std::string dump = dump_model_text(topo);
    CHECK(dump.find("counts: 81 / 30 / 240") != std::string::npos);
    CHECK(dump.find("A1:L") != std::string::npos);
}
