#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "netlocal/constraints.hpp"
#include "netlocal/errors.hpp"
#include "netlocal/fock.hpp"

using namespace netlocal;

namespace {

struct Fixture {
    Topology topo = build_6p4s();
    RestrictedModel rm = restrict_model(topo);
    VariableSpace vars = make_variable_space(rm);
};

// Substring mass computed straight from the outcome list, bypassing the
// pattern machinery (independent route for the asymmetry identity).
double substring_mass_direct(const Behavior& b, const Topology& t, const RestrictedModel& rm, int source,
                             int party, char click) {
    double mass = 0.0;
    for (const auto& outcome : rm.outcomes) {
        if (outcome[party] != click) continue;
        bool silent = true;
        for (int other : t.targets[source])
            if (other != party && outcome[other] != '0') silent = false;
        if (silent) mass += b.prob(outcome);
    }
    return mass;
}

} // namespace

TEST_CASE("variable space enumerates compatible pairs only") {
    Fixture f;
    CHECK(f.vars.size() == 480); // 30 strategies x 16 fine-grainings
    for (const auto& [j, outcome] : f.vars.columns) {
        std::string pattern = outcome;
        for (char& c : pattern)
            if (c == 'L' || c == 'R') c = 'X';
        CHECK(pattern == f.rm.pattern_of(j));
    }
}

TEST_CASE("strategy weights extracted from the behavior") {
    Fixture f;
    for (double t : {0.1, 0.4, 0.5, 0.8}) {
        CAPTURE(t);
        const Behavior b = behavior(f.topo, t);
        const MuModel mu = compute_mu(b, f.rm, f.topo);
        for (int m = 0; m < 4; ++m) {
            double sum = 0.0;
            for (int k = 0; k < 3; ++k) {
                CHECK(std::abs(mu.mu_source[m][k] - 1.0 / 3.0) < 1e-10);
                sum += mu.mu_source[m][k];
            }
            CHECK(std::abs(sum - 1.0) < 1e-10);
        }
        for (double w : mu.mu_strategy) CHECK(std::abs(w - 1.0 / 81.0) < 1e-10);
        CHECK(std::abs(mu.norm_strategies - 30.0 / 81.0) < 1e-10);
        CHECK(std::abs(mu.norm_outcomes - 30.0 / 81.0) < 1e-10);
        CHECK(mu.consistent);
    }
}

TEST_CASE("degenerate behavior is rejected") {
    Fixture f;
    Behavior b;
    b.probs["222000"] = 1.0; // outside every substring event
    CHECK_THROWS_WITH_AS(compute_mu(b, f.rm, f.topo), doctest::Contains("degenerate-behavior"), Error);
}

TEST_CASE("validity constraints") {
    Fixture f;
    const ConstraintSet set = class1_validity(f.rm, f.vars);
    REQUIRE(set.rows.size() == 1 + 480);
    CHECK(set.rows[0].relation == '=');
    CHECK(set.rows[0].rhs == 1.0);
    CHECK(set.rows[0].coeffs.size() == 480);
    for (const auto& [j, c] : set.rows[0].coeffs) CHECK(c == 1.0);
    for (size_t i = 1; i < set.rows.size(); ++i) {
        CHECK(set.rows[i].relation == '>');
        CHECK(set.rows[i].coeffs.size() == 1);
    }
    CHECK(class1_validity(RestrictedModel{}, VariableSpace{}).rows.empty());
}

TEST_CASE("marginal constraints") {
    Fixture f;
    const Behavior b = behavior(f.topo, 0.3);
    const ConstraintSet set = class2_marginal(b, f.rm, f.vars);
    REQUIRE(set.rows.size() == 240);
    double rhs_total = 0.0;
    for (const auto& row : set.rows) {
        CHECK(row.coeffs.size() == 2); // two supporting strategies everywhere
        CHECK(row.rhs >= 0.0);
        rhs_total += row.rhs;
    }
    CHECK(std::abs(rhs_total - 1.0) < 1e-12);

    Behavior empty;
    empty.probs["2XX000"] = 1.0;
    CHECK_THROWS_WITH_AS(class2_marginal(empty, f.rm, f.vars), doctest::Contains("zero-normalization"),
                         Error);
}

TEST_CASE("strategy distribution constraints") {
    Fixture f;
    const Behavior b = behavior(f.topo, 0.6);
    const MuModel mu = compute_mu(b, f.rm, f.topo);
    const ConstraintSet set = class3_strategy(mu, f.rm, f.vars);
    REQUIRE(set.rows.size() == 30);
    double rhs_total = 0.0;
    for (const auto& row : set.rows) {
        CHECK(row.coeffs.size() == 16);
        CHECK(std::abs(row.rhs - 1.0 / 30.0) < 1e-10);
        rhs_total += row.rhs;
    }
    CHECK(std::abs(rhs_total - 1.0) < 1e-10);
}

TEST_CASE("conditional independence constraints") {
    Fixture f;
    const Behavior b = behavior(f.topo, 0.25);
    const MuModel mu = compute_mu(b, f.rm, f.topo);
    const ConstraintSet set = class4_conditional(mu, f.rm, f.topo, f.vars);
    CHECK(set.rows.size() == 192); // 6 parties x 4 groups x 4 chained pairs x 2 clicks
    for (const auto& row : set.rows) {
        CHECK(row.rhs == 0.0);
        CHECK(row.coeffs.size() == 16); // 8 variables on each side
        for (const auto& [j, c] : row.coeffs) CHECK(std::abs(std::abs(c) - 1.0) < 1e-12); // unit ratios
    }

    // The group sharing (lambda_1=A1, lambda_4=A5) on party A1.
    const std::set<int> group{10, 16, 18, 22, 26};
    int chained = 0;
    for (const auto& row : set.rows) {
        if (row.note.find("party 1 ") == std::string::npos) continue;
        std::set<int> touched;
        for (const auto& [col, c] : row.coeffs) touched.insert(f.vars.columns[col].first);
        bool inside = true;
        for (int j : touched) inside &= group.count(j) > 0;
        if (inside) ++chained;
    }
    CHECK(chained == 8); // 4 chained equalities, each for clicks L and R
}

TEST_CASE("conditional rows skip zero reference weights") {
    Fixture f;
    const Behavior b = behavior(f.topo, 0.25);
    MuModel mu = compute_mu(b, f.rm, f.topo);
    mu.mu_strategy[11] = 0.0;
    const ConstraintSet set = class4_conditional(mu, f.rm, f.topo, f.vars);
    CHECK(!set.warnings.empty());
    CHECK(set.rows.size() < 192);
}

TEST_CASE("domain asymmetry constraints") {
    Fixture f;
    const auto pairs = region_pairs(f.topo, f.rm);

    SUBCASE("right-hand sides against the frozen closed form") {
        // The honest value carries twice the published prefactor; see the
        // acceptance suite for the discrepancy report.
        const Behavior b = behavior(f.topo, 0.8);
        for (const auto& rp : pairs) {
            const double gamma = domain_asymmetry(b, rp, f.rm);
            const double expected = (rp.click == 'L' ? 1.0 : -1.0) * 2.0 * (0.8 - 0.5) / 15.0;
            CHECK(std::abs(gamma - expected) < 1e-9);
        }
    }
    SUBCASE("balanced beamsplitter kills every asymmetry") {
        const Behavior b = behavior(f.topo, 0.5);
        for (const auto& rp : pairs) CHECK(std::abs(domain_asymmetry(b, rp, f.rm)) < 1e-12);
    }
    SUBCASE("row structure") {
        const Behavior b = behavior(f.topo, 0.8);
        const ConstraintSet set = class5_domain_asymmetry(b, pairs, f.rm, f.vars);
        REQUIRE(set.rows.size() == 12);
        for (const auto& row : set.rows) CHECK(row.coeffs.size() == 32); // (2+2) strategies x 8 outcomes
    }
    SUBCASE("two independent routes to the same asymmetry") {
        const Behavior b = behavior(f.topo, 0.37);
        double norm = 0.0;
        for (const auto& o : f.rm.outcomes) norm += b.prob(o);
        for (const auto& rp : pairs) {
            const double via_patterns = domain_asymmetry(b, rp, f.rm);
            const double direct =
                (substring_mass_direct(b, f.topo, f.rm, rp.source_a, rp.party, rp.click) -
                 substring_mass_direct(b, f.topo, f.rm, rp.source_b, rp.party, rp.click)) /
                norm;
            CHECK(std::abs(via_patterns - direct) < 1e-12);
        }
    }
    SUBCASE("region weights match the behavior masses") {
        // Strategy-side weight of each region equals its outcome-side mass.
        for (double t : {0.2, 0.5, 0.9}) {
            const Behavior b = behavior(f.topo, t);
            const MuModel mu = compute_mu(b, f.rm, f.topo);
            for (const auto& rp : pairs) {
                double strategy_mass = 0.0;
                for (int j : rp.strategies_a) strategy_mass += mu.mu_strategy[j] / mu.norm_strategies;
                double outcome_mass = 0.0;
                for (const auto& pattern : rp.patterns_a) outcome_mass += marginal(b, pattern);
                outcome_mass /= mu.norm_outcomes;
                CHECK(std::abs(strategy_mass - outcome_mass) < 1e-9);
            }
        }
    }
}

TEST_CASE("assembled witness program") {
    Fixture f;
    const Behavior b = behavior(f.topo, 0.3);
    const AssembledWitness w = assemble_lp(b, f.topo, f.rm);

    CHECK(w.n_qvars == 480);
    std::map<int, int> per_class;
    for (int cls : w.row_class) per_class[cls]++;
    CHECK(per_class[1] == 1);
    CHECK(per_class[2] == 240);
    CHECK(per_class[3] == 30);
    CHECK(per_class[4] == 192);
    CHECK(per_class[5] == 12);
    CHECK(w.lp.rows.size() == 475);
    CHECK(w.lp.n_vars == 480 + 2 * 475);

    // Each equality row carries its slack pair with unit objective weight.
    std::set<int> objective_cols;
    for (const auto& [j, c] : w.lp.objective) {
        CHECK(c == 1.0);
        objective_cols.insert(j);
    }
    CHECK(objective_cols.size() == 2 * w.lp.rows.size());

    SUBCASE("construction is reproducible") {
        const AssembledWitness again = assemble_lp(b, f.topo, f.rm);
        REQUIRE(again.lp.rows.size() == w.lp.rows.size());
        for (size_t r = 0; r < w.lp.rows.size(); ++r) {
            CHECK(again.lp.rows[r].coeffs == w.lp.rows[r].coeffs);
            CHECK(again.lp.rows[r].rhs == w.lp.rows[r].rhs);
        }
    }
    SUBCASE("provenance dump is valid JSON with every row") {
        const std::string json = provenance_json(w, f.rm);
        CHECK(json.find("\"outcome-marginal\"") != std::string::npos);
        CHECK(json.find("\"domain-asymmetry\"") != std::string::npos);
        size_t count = 0;
        for (size_t pos = 0; (pos = json.find("\"class\"", pos)) != std::string::npos; ++pos) ++count;
        CHECK(count == 475);
    }
}
