#ifndef NETLOCAL_CONSTRAINTS_HPP
#define NETLOCAL_CONSTRAINTS_HPP

#include <map>
#include <string>
#include <vector>

#include "netlocal/behavior.hpp"
#include "netlocal/simplex.hpp"
#include "netlocal/strategies.hpp"
#include "netlocal/topology.hpp"

namespace netlocal {

/// Joint decision variables q(a,lambda): one column per compatible pair,
/// strategy-major, outcomes in canonical order. Incompatible pairs are
/// implicitly zero and get no column.
struct VariableSpace {
    std::vector<std::pair<int, std::string>> columns; // (strategy index, outcome)
    std::map<std::pair<int, std::string>, int> index;

    int size() const { return static_cast<int>(columns.size()); }
    int at(int strategy, const std::string& outcome) const {
        return index.at({strategy, outcome});
    }
};

VariableSpace make_variable_space(const RestrictedModel& rm);

/// Source-level strategy distribution extracted from the behavior: the
/// probability that a source's photon went to each of its targets, inferred
/// from the substring marginals, plus the product weights per strategy and
/// the two normalization masses.
struct MuModel {
    std::vector<std::array<double, 3>> mu_source; // [source][target-list slot]
    std::vector<double> mu_strategy;              // aligned with RestrictedModel::strategies
    double norm_strategies = 0.0;                 // sum of mu over S
    double norm_outcomes = 0.0;                   // behavior mass of O_S
    bool consistent = true;                       // the two masses agree within 1e-9

    double mu(const Topology& t, int source, int party) const;
};

// Throws Error("degenerate-behavior") when all three substring marginals of
// some source vanish.
MuModel compute_mu(const Behavior& b, const RestrictedModel& rm, const Topology& t);

struct ConstraintRow {
    int cls = 0; // 1..5
    std::vector<std::pair<int, double>> coeffs;
    double rhs = 0.0;
    char relation = '=';
    std::string note;
};

struct ConstraintSet {
    std::vector<ConstraintRow> rows;
    std::vector<std::string> warnings;
};

// Class 1: per-variable non-negativity (relation '>') plus the normalization
// equality over all q variables.
ConstraintSet class1_validity(const RestrictedModel& rm, const VariableSpace& vars);

// Class 2: one equality per outcome of O_S, q(a) = p(a) / p(O_S).
// Throws Error("zero-normalization") when the O_S mass vanishes.
ConstraintSet class2_marginal(const Behavior& b, const RestrictedModel& rm, const VariableSpace& vars);

// Class 3: one equality per strategy, q(lambda) = mu(lambda) / norm.
ConstraintSet class3_strategy(const MuModel& mu, const RestrictedModel& rm, const VariableSpace& vars);

// Class 4: per party and per (lambda_m, lambda_m') value pair, chained
// equalities between the click-conditional masses of grouped strategies, one
// row per click side. Rows whose reference weight vanishes are skipped with a
// warning.
ConstraintSet class4_conditional(const MuModel& mu, const RestrictedModel& rm, const Topology& t,
                                 const VariableSpace& vars);

// Class 5: one equality per region pair, region-1 mass minus region-2 mass
// pinned to the domain asymmetry computed from the behavior.
ConstraintSet class5_domain_asymmetry(const Behavior& b, const std::vector<RegionPair>& pairs,
                                      const RestrictedModel& rm, const VariableSpace& vars);

// Behavior-side domain asymmetry of one region pair (the class-5 right-hand
// side): difference of the two substring marginals, renormalized over O_S.
double domain_asymmetry(const Behavior& b, const RegionPair& rp, const RestrictedModel& rm);

/// Tolerance-relaxed program: every equality row gains a slack pair and the
/// objective is the total slack, so feasibility of the original system is
/// equivalent to optimum zero.
struct AssembledWitness {
    LPProblem lp;
    int n_qvars = 0;
    std::vector<int> row_class;   // aligned with lp.rows
    ConstraintSet constraints;    // pre-slack rows, for provenance
    MuModel mu;
    std::vector<RegionPair> pairs;
};

AssembledWitness assemble_lp(const Behavior& b, const Topology& t);
AssembledWitness assemble_lp(const Behavior& b, const Topology& t, const RestrictedModel& rm);

// Row-by-row provenance (class tag, rule name, participants, rhs) as JSON.
std::string provenance_json(const AssembledWitness& w, const RestrictedModel& rm);

} // namespace netlocal

#endif
