#include "netlocal/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "netlocal/fock.hpp"

namespace netlocal {

std::vector<Strategy> enumerate_strategies(const Topology& t) {
    const int n_sources = t.n_sources;
    std::vector<Strategy> all;
    all.reserve(static_cast<size_t>(std::pow(3.0, n_sources)));
    std::vector<int> choice(n_sources, 0);
    for (;;) {
        Strategy s(n_sources);
        for (int m = 0; m < n_sources; ++m) s[m] = t.targets[m][choice[m]];
        all.push_back(std::move(s));
        int m = n_sources - 1;
        while (m >= 0 && choice[m] == 2) choice[m--] = 0;
        if (m < 0) break;
        choice[m]++;
    }
    return all;
}

std::vector<std::string> image(const Strategy& s, const Topology& t) {
    std::vector<int> counts(t.n_parties, 0);
    for (int party : s) counts[party]++;

    std::vector<std::string> patterns{std::string(t.n_parties, '0')};
    for (int n = 0; n < t.n_parties; ++n) {
        if (counts[n] == 0) continue;
        if (counts[n] == 1) {
            for (auto& p : patterns) p[n] = 'X';
        } else {
            // Collision: both the double-click and the single-click variants.
            std::vector<std::string> doubled;
            doubled.reserve(patterns.size() * 2);
            for (const auto& p : patterns) {
                std::string two = p, one = p;
                two[n] = '2';
                one[n] = 'X';
                doubled.push_back(std::move(two));
                doubled.push_back(std::move(one));
            }
            patterns = std::move(doubled);
        }
    }
    std::sort(patterns.begin(), patterns.end());
    return patterns;
}

std::vector<std::string> fine_grainings(const std::string& pattern) {
    std::vector<std::string> out{pattern};
    for (size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] != 'X') continue;
        std::vector<std::string> next;
        next.reserve(out.size() * 2);
        for (const auto& o : out) {
            std::string l = o, r = o;
            l[i] = 'L';
            r[i] = 'R';
            next.push_back(std::move(l));
            next.push_back(std::move(r));
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool verify_image_coverage(const Topology& t, const std::vector<std::string>& expected) {
    std::set<std::string> covered;
    for (const auto& s : enumerate_strategies(t))
        for (const auto& pattern : image(s, t))
            for (auto& o : fine_grainings(pattern)) covered.insert(std::move(o));
    return std::vector<std::string>(covered.begin(), covered.end()) == expected;
}

bool verify_image_coverage(const Topology& t) {
    return verify_image_coverage(t, realizable_outcomes(t));
}

std::string strategy_pattern(const Strategy& s, int n_parties) {
    std::vector<int> counts(n_parties, 0);
    for (int party : s) counts[party]++;
    std::string p(n_parties, '0');
    for (int n = 0; n < n_parties; ++n) {
        if (counts[n] > 1) return "";
        if (counts[n] == 1) p[n] = 'X';
    }
    return p;
}

RestrictedModel restrict_model(const Topology& t) {
    RestrictedModel rm;
    std::vector<std::pair<std::string, Strategy>> keyed;
    for (const auto& s : enumerate_strategies(t)) {
        std::string pattern = strategy_pattern(s, t.n_parties);
        if (!pattern.empty()) keyed.emplace_back(std::move(pattern), s);
    }
    std::sort(keyed.begin(), keyed.end());
    for (size_t j = 0; j < keyed.size(); ++j) {
        rm.support[keyed[j].first].push_back(static_cast<int>(j));
        rm.strategies.push_back(keyed[j].second);
        rm.strategy_patterns.push_back(keyed[j].first);
    }
    for (const auto& [pattern, js] : rm.support) rm.patterns.push_back(pattern);
    for (const auto& pattern : rm.patterns)
        for (const auto& o : fine_grainings(pattern)) rm.outcomes.push_back(o);
    std::sort(rm.outcomes.begin(), rm.outcomes.end());
    for (size_t i = 0; i < rm.outcomes.size(); ++i) rm.outcome_index[rm.outcomes[i]] = static_cast<int>(i);
    return rm;
}

std::vector<std::string> substring_patterns(const Topology& t, const RestrictedModel& rm, int source, int party) {
    std::vector<std::string> out;
    for (const auto& pattern : rm.patterns) {
        if (pattern[party] != 'X') continue;
        bool silent = true;
        for (int other : t.targets[source])
            if (other != party && pattern[other] != '0') silent = false;
        if (silent) out.push_back(pattern);
    }
    return out;
}

std::vector<RegionPair> region_pairs(const Topology& t, const RestrictedModel& rm) {
    std::vector<RegionPair> pairs;
    for (int n = 0; n < t.n_parties; ++n) {
        const auto [ma, mb] = t.sources_of(n);
        for (char click : {'L', 'R'}) {
            RegionPair rp;
            rp.party = n;
            rp.click = click;
            rp.source_a = ma;
            rp.source_b = mb;
            rp.patterns_a = substring_patterns(t, rm, ma, n);
            rp.patterns_b = substring_patterns(t, rm, mb, n);
            for (int m : {ma, mb}) {
                auto& dst = (m == ma) ? rp.strategies_a : rp.strategies_b;
                for (size_t j = 0; j < rm.strategies.size(); ++j) {
                    const Strategy& s = rm.strategies[j];
                    if (s[m] != n) continue;
                    // No other source may reach any party in m's target list.
                    bool clean = true;
                    for (int k = 0; k < t.n_sources && clean; ++k) {
                        if (k == m) continue;
                        for (int target : t.targets[m])
                            if (s[k] == target) clean = false;
                    }
                    if (clean) dst.push_back(static_cast<int>(j));
                }
            }
            pairs.push_back(std::move(rp));
        }
    }
    return pairs;
}

std::string strategy_table(const RestrictedModel& rm) {
    std::string out = "label  assignment            pattern\n";
    for (size_t j = 0; j < rm.strategies.size(); ++j) {
        std::string assignment = "(";
        for (size_t m = 0; m < rm.strategies[j].size(); ++m) {
            if (m) assignment += ",";
            assignment += "A" + std::to_string(rm.strategies[j][m] + 1);
        }
        assignment += ")";
        char line[128];
        std::snprintf(line, sizeof line, "s%-5zu %-21s %s\n", j, assignment.c_str(),
                      rm.pattern_of(static_cast<int>(j)).c_str());
        out += line;
    }
    return out;
}

} // namespace netlocal
