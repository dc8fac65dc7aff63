#ifndef NETLOCAL_BEHAVIOR_HPP
#define NETLOCAL_BEHAVIOR_HPP

#include <map>
#include <string>
#include <vector>

namespace netlocal {

// Outcomes are length-N strings over {0,L,R,2}: no click, left click, right
// click, both. Patterns coarse-grain single clicks to X.

/// Normalized click-outcome distribution together with the outcome set it is
/// defined over.
struct Behavior {
    std::map<std::string, double> probs;
    std::vector<std::string> realizable; // sorted

    double prob(const std::string& outcome) const {
        auto it = probs.find(outcome);
        return it == probs.end() ? 0.0 : it->second;
    }
    double total() const {
        double s = 0.0;
        for (const auto& [o, p] : probs) s += p;
        return s;
    }
};

// Sum of p(a) over outcomes matching the selector. Selector symbols per
// party: '0', 'L', 'R', '2' match exactly, 'X' matches L or R, '*' matches
// anything. Throws Error("bad-selector") on length mismatch or unknown
// symbols.
double marginal(const Behavior& b, const std::string& selector);

bool selector_matches(const std::string& selector, const std::string& outcome);

// CSV interchange: header "outcome,probability", one row per outcome,
// probabilities at full double precision.
std::string behavior_to_csv(const Behavior& b);
Behavior behavior_from_csv(const std::string& text, const std::vector<std::string>& realizable);

} // namespace netlocal

#endif
