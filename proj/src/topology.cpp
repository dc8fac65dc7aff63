#include "netlocal/topology.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "netlocal/errors.hpp"

namespace netlocal {

std::array<int, 2> Topology::sources_of(int party) const {
    std::array<int, 2> out{-1, -1};
    int found = 0;
    for (int m = 0; m < n_sources; ++m) {
        if (std::find(targets[m].begin(), targets[m].end(), party) != targets[m].end()) {
            if (found < 2) out[found] = m;
            ++found;
        }
    }
    return out;
}

int Topology::mode_slot(int party, int source) const {
    return mode_sources[party][0] == source ? 0 : 1;
}

ValidationReport validate(const Topology& t) {
    ValidationReport report;
    const int n = t.n_parties;
    const int m = t.n_sources;

    if (n < 6 || n % 3 != 0)
        report.add("party-count", "n_parties must be >= 6 and divisible by 3, got " + std::to_string(n));
    if (3 * m != 2 * n)
        report.add("source-count", "M=2N/3 violated: N=" + std::to_string(n) + ", M=" + std::to_string(m));
    if (static_cast<int>(t.targets.size()) != m) {
        report.add("source-count", "target list count differs from n_sources");
        return report; // nothing below is well-defined
    }

    std::vector<int> appearances(std::max(n, 0), 0);
    std::set<std::set<int>> seen;
    for (int s = 0; s < m; ++s) {
        const auto& list = t.targets[s];
        if (list.size() != 3) {
            report.add("tripartite", "source " + std::to_string(s + 1) + " has " +
                                         std::to_string(list.size()) + " targets, need exactly 3");
            continue;
        }
        std::set<int> as_set(list.begin(), list.end());
        if (as_set.size() != 3)
            report.add("distinct-targets", "source " + std::to_string(s + 1) + " repeats a party");
        for (int p : list) {
            if (p < 0 || p >= n)
                report.add("target-range", "source " + std::to_string(s + 1) + " targets party " +
                                               std::to_string(p + 1) + " outside 1.." + std::to_string(n));
            else
                appearances[p]++;
        }
        if (!seen.insert(as_set).second)
            report.add("duplicate-target-list",
                       "two sources signal to the same set of parties (source " + std::to_string(s + 1) + ")");
    }
    for (int p = 0; p < n; ++p) {
        if (appearances[p] != 2)
            report.add("two-sources-per-party", "party " + std::to_string(p + 1) + " appears in " +
                                                    std::to_string(appearances[p]) + " target lists, need 2");
    }

    if (static_cast<int>(t.mode_sources.size()) != n) {
        report.add("wiring-size", "mode wiring must list every party");
        return report;
    }
    for (int p = 0; p < n; ++p) {
        const auto [a, b] = t.mode_sources[p];
        if (a == b) {
            report.add("wiring-distinct", "party " + std::to_string(p + 1) + " wires one source to both modes");
            continue;
        }
        for (int src : {a, b}) {
            if (src < 0 || src >= m ||
                std::find(t.targets[src].begin(), t.targets[src].end(), p) == t.targets[src].end())
                report.add("wiring-connected", "party " + std::to_string(p + 1) +
                                                   " wired to a source that does not target it");
        }
    }
    return report;
}

void assign_default_wiring(Topology& t, const std::vector<int>& swapped_parties) {
    t.mode_sources.assign(t.n_parties, {-1, -1});
    for (int p = 0; p < t.n_parties; ++p) {
        auto [lo, hi] = t.sources_of(p);
        bool swap = std::find(swapped_parties.begin(), swapped_parties.end(), p) != swapped_parties.end();
        t.mode_sources[p] = swap ? std::array<int, 2>{hi, lo} : std::array<int, 2>{lo, hi};
    }
}

Topology build_reference_ring(int n_parties) {
    if (n_parties < 6 || n_parties % 3 != 0)
        throw Error("invalid-n", "reference ring needs N >= 6 with N divisible by 3, got " +
                                     std::to_string(n_parties));
    Topology t;
    t.n_parties = n_parties;
    t.n_sources = 2 * n_parties / 3;
    auto wrap = [n_parties](int p) { return ((p % n_parties) + n_parties) % n_parties; };
    t.targets.resize(t.n_sources);
    // Sources come in pairs sharing a middle party 3k (0-based). The odd
    // member of the pair reaches two steps left and one right, the even
    // member one left and two right (landing on the next pair's middle).
    for (int k = 0; k < n_parties / 3; ++k) {
        const int mid = 3 * k;
        t.targets[2 * k] = {wrap(mid - 2), mid, wrap(mid + 1)};
        t.targets[2 * k + 1] = {wrap(mid + 2), wrap(mid + 3), wrap(mid + 5)};
    }
    assign_default_wiring(t);
    return t;
}

Topology build_6p4s() {
    Topology t;
    t.n_parties = 6;
    t.n_sources = 4;
    t.targets = {{0, 1, 2}, {1, 3, 4}, {2, 3, 5}, {0, 4, 5}};
    assign_default_wiring(t);
    return t;
}

Topology parse_topology(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error("parse-error", e.what());
    }
    if (!doc.is_object() || !doc.contains("n_parties") || !doc.contains("sources") ||
        !doc["n_parties"].is_number_integer() || !doc["sources"].is_array())
        throw Error("parse-error", "expected object with integer 'n_parties' and array 'sources'");

    Topology t;
    t.n_parties = doc["n_parties"].get<int>();
    for (const auto& entry : doc["sources"]) {
        if (!entry.is_array())
            throw Error("parse-error", "'sources' entries must be arrays of party indices");
        std::vector<int> list;
        for (const auto& v : entry) {
            if (!v.is_number_integer())
                throw Error("parse-error", "party indices must be integers");
            list.push_back(v.get<int>() - 1);
        }
        t.targets.push_back(std::move(list));
    }
    t.n_sources = static_cast<int>(t.targets.size());

    std::vector<int> swaps;
    if (doc.contains("mode_swap")) {
        if (!doc["mode_swap"].is_array())
            throw Error("parse-error", "'mode_swap' must be an array of party indices");
        for (const auto& v : doc["mode_swap"]) {
            if (!v.is_number_integer())
                throw Error("parse-error", "'mode_swap' entries must be integers");
            int p = v.get<int>() - 1;
            if (p < 0 || p >= t.n_parties)
                throw Error("validation-error", "mode_swap party " + std::to_string(p + 1) + " out of range");
            swaps.push_back(p);
        }
    }
    t.mode_sources.assign(t.n_parties, {-1, -1});
    ValidationReport structural = validate(t);
    // Wiring is derived, so report only the structural failures first.
    bool structure_ok = true;
    for (const auto& [rule, msg] : structural.violations)
        if (rule != "wiring-size" && rule != "wiring-distinct" && rule != "wiring-connected") structure_ok = false;
    if (!structure_ok) {
        std::string joined;
        for (const auto& [rule, msg] : structural.violations) {
            if (rule == "wiring-size" || rule == "wiring-distinct" || rule == "wiring-connected") continue;
            if (!joined.empty()) joined += "; ";
            joined += rule + ": " + msg;
        }
        throw Error("validation-error", joined);
    }
    assign_default_wiring(t, swaps);
    ValidationReport full = validate(t);
    if (!full.ok) {
        std::string joined;
        for (const auto& [rule, msg] : full.violations) {
            if (!joined.empty()) joined += "; ";
            joined += rule + ": " + msg;
        }
        throw Error("validation-error", joined);
    }
    return t;
}

std::string serialize_topology(const Topology& t) {
    nlohmann::json doc;
    doc["n_parties"] = t.n_parties;
    auto sources = nlohmann::json::array();
    for (const auto& list : t.targets) {
        auto entry = nlohmann::json::array();
        for (int p : list) entry.push_back(p + 1);
        sources.push_back(entry);
    }
    doc["sources"] = sources;
    auto swaps = nlohmann::json::array();
    for (int p = 0; p < t.n_parties; ++p) {
        auto [lo, hi] = t.sources_of(p);
        if (t.mode_sources[p][0] == hi && hi != lo) swaps.push_back(p + 1);
    }
    if (!swaps.empty()) doc["mode_swap"] = swaps;
    return doc.dump(2);
}

} // namespace netlocal
