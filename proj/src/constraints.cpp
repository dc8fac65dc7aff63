#include "netlocal/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "json.hpp"

#include "netlocal/errors.hpp"

namespace netlocal {

VariableSpace make_variable_space(const RestrictedModel& rm) {
    VariableSpace vs;
    for (size_t j = 0; j < rm.strategies.size(); ++j) {
        for (const auto& outcome : fine_grainings(rm.pattern_of(static_cast<int>(j)))) {
            vs.index[{static_cast<int>(j), outcome}] = vs.size();
            vs.columns.emplace_back(static_cast<int>(j), outcome);
        }
    }
    return vs;
}

double MuModel::mu(const Topology& t, int source, int party) const {
    const auto& list = t.targets[source];
    for (size_t k = 0; k < list.size(); ++k)
        if (list[k] == party) return mu_source[source][k];
    return 0.0;
}

namespace {

// Marginal of all patterns compatible with the substring (source, party),
// optionally fine-grained at `party` to a specific click.
double substring_marginal(const Behavior& b, const Topology& t, const RestrictedModel& rm, int source,
                          int party, char click = 'X') {
    double total = 0.0;
    for (const auto& pattern : substring_patterns(t, rm, source, party)) {
        std::string selector = pattern;
        selector[party] = click;
        total += marginal(b, selector);
    }
    return total;
}

} // namespace

MuModel compute_mu(const Behavior& b, const RestrictedModel& rm, const Topology& t) {
    MuModel model;
    model.mu_source.resize(t.n_sources);
    for (int m = 0; m < t.n_sources; ++m) {
        std::array<double, 3> numerators{};
        double denominator = 0.0;
        for (int k = 0; k < 3; ++k) {
            numerators[k] = substring_marginal(b, t, rm, m, t.targets[m][k]);
            denominator += numerators[k];
        }
        if (denominator <= 0.0)
            throw Error("degenerate-behavior",
                        "all substring marginals of source " + std::to_string(m + 1) + " vanish");
        for (int k = 0; k < 3; ++k) model.mu_source[m][k] = numerators[k] / denominator;
    }
    for (const auto& strat : rm.strategies) {
        double w = 1.0;
        for (int m = 0; m < t.n_sources; ++m) w *= model.mu(t, m, strat[m]);
        model.mu_strategy.push_back(w);
        model.norm_strategies += w;
    }
    for (const auto& outcome : rm.outcomes) model.norm_outcomes += b.prob(outcome);
    model.consistent = std::abs(model.norm_strategies - model.norm_outcomes) <= 1e-9;
    return model;
}

ConstraintSet class1_validity(const RestrictedModel& rm, const VariableSpace& vars) {
    ConstraintSet set;
    if (rm.strategies.empty() || vars.size() == 0) return set;
    ConstraintRow norm;
    norm.cls = 1;
    norm.rhs = 1.0;
    norm.note = "normalization";
    for (int c = 0; c < vars.size(); ++c) norm.coeffs.emplace_back(c, 1.0);
    set.rows.push_back(std::move(norm));
    for (int c = 0; c < vars.size(); ++c) {
        ConstraintRow bound;
        bound.cls = 1;
        bound.relation = '>';
        bound.rhs = 0.0;
        bound.coeffs.emplace_back(c, 1.0);
        bound.note = "non-negativity";
        set.rows.push_back(std::move(bound));
    }
    return set;
}

ConstraintSet class2_marginal(const Behavior& b, const RestrictedModel& rm, const VariableSpace& vars) {
    double norm = 0.0;
    for (const auto& outcome : rm.outcomes) norm += b.prob(outcome);
    if (norm <= 0.0) throw Error("zero-normalization", "behavior mass of the amenable outcome set is zero");

    ConstraintSet set;
    for (const auto& outcome : rm.outcomes) {
        ConstraintRow row;
        row.cls = 2;
        row.rhs = b.prob(outcome) / norm;
        row.note = outcome;
        const std::string pattern = [&] {
            std::string p = outcome;
            for (char& c : p)
                if (c == 'L' || c == 'R') c = 'X';
            return p;
        }();
        for (int j : rm.support.at(pattern)) row.coeffs.emplace_back(vars.at(j, outcome), 1.0);
        set.rows.push_back(std::move(row));
    }
    return set;
}

ConstraintSet class3_strategy(const MuModel& mu, const RestrictedModel& rm, const VariableSpace& vars) {
    if (mu.norm_strategies <= 0.0)
        throw Error("zero-normalization", "strategy weights sum to zero over the restricted set");
    ConstraintSet set;
    for (size_t j = 0; j < rm.strategies.size(); ++j) {
        ConstraintRow row;
        row.cls = 3;
        row.rhs = mu.mu_strategy[j] / mu.norm_strategies;
        row.note = "s" + std::to_string(j);
        for (const auto& outcome : fine_grainings(rm.pattern_of(static_cast<int>(j))))
            row.coeffs.emplace_back(vars.at(static_cast<int>(j), outcome), 1.0);
        set.rows.push_back(std::move(row));
    }
    return set;
}

ConstraintSet class4_conditional(const MuModel& mu, const RestrictedModel& rm, const Topology& t,
                                 const VariableSpace& vars) {
    ConstraintSet set;
    for (int n = 0; n < t.n_parties; ++n) {
        const auto [ma, mb] = t.sources_of(n);
        std::map<std::pair<int, int>, std::vector<int>> groups;
        for (size_t j = 0; j < rm.strategies.size(); ++j)
            groups[{rm.strategies[j][ma], rm.strategies[j][mb]}].push_back(static_cast<int>(j));
        for (const auto& [key, members] : groups) {
            if (members.size() < 2) continue;
            if (key.first != n && key.second != n) continue; // party silent in the whole group
            for (size_t i = 0; i + 1 < members.size(); ++i) {
                const int ja = members[i];
                const int jb = members[i + 1];
                if (mu.mu_strategy[jb] == 0.0) {
                    set.warnings.push_back("conditional row skipped: zero weight for strategy s" +
                                           std::to_string(jb) + " (party " + std::to_string(n + 1) + ")");
                    continue;
                }
                const double ratio = mu.mu_strategy[ja] / mu.mu_strategy[jb];
                for (char click : {'L', 'R'}) {
                    ConstraintRow row;
                    row.cls = 4;
                    row.rhs = 0.0;
                    row.note = "party " + std::to_string(n + 1) + " pair (s" + std::to_string(ja) + ",s" +
                               std::to_string(jb) + ") click " + click;
                    for (const auto& outcome : fine_grainings(rm.pattern_of(ja)))
                        if (outcome[n] == click) row.coeffs.emplace_back(vars.at(ja, outcome), 1.0);
                    for (const auto& outcome : fine_grainings(rm.pattern_of(jb)))
                        if (outcome[n] == click) row.coeffs.emplace_back(vars.at(jb, outcome), -ratio);
                    set.rows.push_back(std::move(row));
                }
            }
        }
    }
    return set;
}

double domain_asymmetry(const Behavior& b, const RegionPair& rp, const RestrictedModel& rm) {
    double norm = 0.0;
    for (const auto& outcome : rm.outcomes) norm += b.prob(outcome);
    if (norm <= 0.0) throw Error("zero-normalization", "behavior mass of the amenable outcome set is zero");
    double mass_a = 0.0, mass_b = 0.0;
    for (const auto& pattern : rp.patterns_a) {
        std::string selector = pattern;
        selector[rp.party] = rp.click;
        mass_a += marginal(b, selector);
    }
    for (const auto& pattern : rp.patterns_b) {
        std::string selector = pattern;
        selector[rp.party] = rp.click;
        mass_b += marginal(b, selector);
    }
    return (mass_a - mass_b) / norm;
}

ConstraintSet class5_domain_asymmetry(const Behavior& b, const std::vector<RegionPair>& pairs,
                                      const RestrictedModel& rm, const VariableSpace& vars) {
    ConstraintSet set;
    for (const auto& rp : pairs) {
        ConstraintRow row;
        row.cls = 5;
        row.rhs = domain_asymmetry(b, rp, rm);
        row.note = "party " + std::to_string(rp.party + 1) + " click " + rp.click;
        for (int j : rp.strategies_a)
            for (const auto& outcome : fine_grainings(rm.pattern_of(j)))
                if (outcome[rp.party] == rp.click) row.coeffs.emplace_back(vars.at(j, outcome), 1.0);
        for (int j : rp.strategies_b)
            for (const auto& outcome : fine_grainings(rm.pattern_of(j)))
                if (outcome[rp.party] == rp.click) row.coeffs.emplace_back(vars.at(j, outcome), -1.0);
        set.rows.push_back(std::move(row));
    }
    return set;
}

AssembledWitness assemble_lp(const Behavior& b, const Topology& t) {
    return assemble_lp(b, t, restrict_model(t));
}

AssembledWitness assemble_lp(const Behavior& b, const Topology& t, const RestrictedModel& rm) {
    AssembledWitness w;
    const VariableSpace vars = make_variable_space(rm);
    w.n_qvars = vars.size();
    w.mu = compute_mu(b, rm, t);
    w.pairs = region_pairs(t, rm);

    for (int c = 0; c < vars.size(); ++c)
        w.lp.add_var("q(" + vars.columns[c].second + "|s" + std::to_string(vars.columns[c].first) + ")");

    ConstraintSet classes[5] = {
        class1_validity(rm, vars),
        class2_marginal(b, rm, vars),
        class3_strategy(w.mu, rm, vars),
        class4_conditional(w.mu, rm, t, vars),
        class5_domain_asymmetry(b, w.pairs, rm, vars),
    };

    for (auto& set : classes) {
        for (auto& row : set.rows) {
            if (row.relation == '>') continue; // variable bounds stay hard
            w.constraints.rows.push_back(row);
            const int r = static_cast<int>(w.lp.rows.size());
            const int sp = w.lp.add_var("tp" + std::to_string(r));
            const int sm = w.lp.add_var("tm" + std::to_string(r));
            LPRow lr;
            lr.coeffs = row.coeffs;
            lr.coeffs.emplace_back(sp, -1.0);
            lr.coeffs.emplace_back(sm, 1.0);
            lr.rhs = row.rhs;
            lr.relation = '=';
            char name[32];
            std::snprintf(name, sizeof name, "K%dR%04d", row.cls, r);
            lr.name = name;
            w.lp.rows.push_back(std::move(lr));
            w.lp.objective.emplace_back(sp, 1.0);
            w.lp.objective.emplace_back(sm, 1.0);
            w.row_class.push_back(row.cls);
        }
        for (auto& warning : set.warnings) w.constraints.warnings.push_back(std::move(warning));
    }
    return w;
}

std::string provenance_json(const AssembledWitness& w, const RestrictedModel& rm) {
    const VariableSpace vars = make_variable_space(rm);
    static const char* rule_names[] = {"", "validity-normalization", "outcome-marginal", "strategy-weight",
                                       "conditional-independence", "domain-asymmetry"};
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < w.constraints.rows.size(); ++i) {
        const auto& row = w.constraints.rows[i];
        nlohmann::json entry;
        entry["row"] = i;
        entry["class"] = row.cls;
        entry["rule"] = rule_names[row.cls];
        entry["note"] = row.note;
        entry["rhs"] = row.rhs;
        auto terms = nlohmann::json::array();
        for (const auto& [c, coef] : row.coeffs) {
            if (c >= static_cast<int>(vars.columns.size())) continue;
            terms.push_back({{"outcome", vars.columns[c].second},
                             {"strategy", "s" + std::to_string(vars.columns[c].first)},
                             {"coef", coef}});
        }
        entry["terms"] = terms;
        rows.push_back(entry);
    }
    nlohmann::json doc;
    doc["rows"] = rows;
    doc["warnings"] = w.constraints.warnings;
    return doc.dump(1);
}

} // namespace netlocal
