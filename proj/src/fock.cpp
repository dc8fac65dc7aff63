#include "netlocal/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "netlocal/errors.hpp"

namespace netlocal {

double FockState::norm_squared() const {
    double s = 0.0;
    for (const auto& [occ, amp] : terms) s += std::norm(amp);
    return s;
}

FockState initial_state(const Topology& t) {
    const int n_sources = t.n_sources;
    FockState state;
    state.n_modes = 2 * t.n_parties;

    const double amp = std::pow(3.0, -0.5 * n_sources);
    std::vector<int> choice(n_sources, 0);
    for (;;) {
        std::vector<uint8_t> occ(state.n_modes, 0);
        for (int m = 0; m < n_sources; ++m) {
            const int party = t.targets[m][choice[m]];
            occ[2 * party + t.mode_slot(party, m)]++;
        }
        state.terms[occ] += amp;
        int m = n_sources - 1;
        while (m >= 0 && choice[m] == 2) choice[m--] = 0;
        if (m < 0) break;
        choice[m]++;
    }
    return state;
}

FockState apply_beamsplitter(const FockState& s, int party, double transmissivity, double phase) {
    if (transmissivity < 0.0 || transmissivity > 1.0)
        throw Error("bad-transmissivity", "transmissivity must lie in [0,1]");

    const double st = std::sqrt(transmissivity);
    const double sr = std::sqrt(1.0 - transmissivity);
    const std::complex<double> u11 = st;
    const std::complex<double> u12 = std::polar(sr, phase);
    const std::complex<double> u21 = -std::polar(sr, -phase);
    const std::complex<double> u22 = st;

    // Factorials up to the per-party photon count actually present.
    auto fact = [](int n) {
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= k;
        return f;
    };
    auto binom = [&](int n, int k) { return fact(n) / (fact(k) * fact(n - k)); };
    auto ipow = [](std::complex<double> base, int e) {
        std::complex<double> r{1.0, 0.0};
        for (int k = 0; k < e; ++k) r *= base;
        return r;
    };

    FockState out;
    out.n_modes = s.n_modes;
    const int i1 = 2 * party;
    const int i2 = 2 * party + 1;
    for (const auto& [occ, amp] : s.terms) {
        const int n1 = occ[i1];
        const int n2 = occ[i2];
        // (u11 a1+ + u12 a2+)^n1 (u21 a1+ + u22 a2+)^n2 |vac>, regrouped by
        // output occupation (j, n1+n2-j) with sqrt(j! l! / n1! n2!) weights.
        for (int k1 = 0; k1 <= n1; ++k1) {
            for (int k2 = 0; k2 <= n2; ++k2) {
                const int j = k1 + k2;
                const int l = n1 + n2 - j;
                std::complex<double> coef = binom(n1, k1) * binom(n2, k2) *
                                            ipow(u11, k1) * ipow(u12, n1 - k1) *
                                            ipow(u21, k2) * ipow(u22, n2 - k2);
                coef *= std::sqrt(fact(j) * fact(l) / (fact(n1) * fact(n2)));
                auto key = occ;
                key[i1] = static_cast<uint8_t>(j);
                key[i2] = static_cast<uint8_t>(l);
                out.terms[key] += amp * coef;
            }
        }
    }
    return out;
}

Behavior detection_distribution(const FockState& s) {
    const int n_parties = s.n_modes / 2;
    Behavior b;
    for (const auto& [occ, amp] : s.terms) {
        std::string outcome(n_parties, '0');
        for (int n = 0; n < n_parties; ++n) {
            const bool left = occ[2 * n] > 0;
            const bool right = occ[2 * n + 1] > 0;
            outcome[n] = left ? (right ? '2' : 'L') : (right ? 'R' : '0');
        }
        b.probs[outcome] += std::norm(amp);
    }
    for (const auto& [o, p] : b.probs) b.realizable.push_back(o);
    return b;
}

std::vector<std::string> realizable_outcomes(const Topology& t) {
    const int n_parties = t.n_parties;
    const int n_sources = t.n_sources;

    // Photon-count profiles reachable by routing each source's photon to one
    // of its targets.
    std::set<std::vector<int>> profiles;
    std::vector<int> choice(n_sources, 0);
    for (;;) {
        std::vector<int> counts(n_parties, 0);
        for (int m = 0; m < n_sources; ++m) counts[t.targets[m][choice[m]]]++;
        profiles.insert(counts);
        int m = n_sources - 1;
        while (m >= 0 && choice[m] == 2) choice[m--] = 0;
        if (m < 0) break;
        choice[m]++;
    }

    std::set<std::string> outcomes;
    for (const auto& counts : profiles) {
        std::vector<std::string> options(n_parties);
        for (int n = 0; n < n_parties; ++n)
            options[n] = counts[n] == 0 ? "0" : counts[n] == 1 ? "LR" : "L2R";
        std::string cur(n_parties, '0');
        std::vector<int> pos(n_parties, 0);
        for (;;) {
            for (int n = 0; n < n_parties; ++n) cur[n] = options[n][pos[n]];
            outcomes.insert(cur);
            int n = n_parties - 1;
            while (n >= 0 && pos[n] + 1 == static_cast<int>(options[n].size())) pos[n--] = 0;
            if (n < 0) break;
            pos[n]++;
        }
    }
    return {outcomes.begin(), outcomes.end()};
}

Behavior behavior(const Topology& t, double transmissivity) {
    FockState state = initial_state(t);
    for (int n = 0; n < t.n_parties; ++n) state = apply_beamsplitter(state, n, transmissivity);
    Behavior b = detection_distribution(state);
    b.realizable = realizable_outcomes(t);
    return b;
}

bool selector_matches(const std::string& selector, const std::string& outcome) {
    for (size_t i = 0; i < selector.size(); ++i) {
        const char s = selector[i];
        const char o = outcome[i];
        if (s == '*') continue;
        if (s == 'X') {
            if (o != 'L' && o != 'R') return false;
        } else if (s != o) {
            return false;
        }
    }
    return true;
}

double marginal(const Behavior& b, const std::string& selector) {
    static const std::string allowed = "0LR2X*";
    for (char c : selector)
        if (allowed.find(c) == std::string::npos)
            throw Error("bad-selector", std::string("unknown selector symbol '") + c + "'");
    if (!b.probs.empty() && selector.size() != b.probs.begin()->first.size())
        throw Error("bad-selector", "selector length differs from outcome length");
    double s = 0.0;
    for (const auto& [o, p] : b.probs)
        if (selector_matches(selector, o)) s += p;
    return s;
}

} // namespace netlocal
