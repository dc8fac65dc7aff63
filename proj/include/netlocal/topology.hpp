#ifndef NETLOCAL_TOPOLOGY_HPP
#define NETLOCAL_TOPOLOGY_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace netlocal {

/// Ring-network description: N parties, M tripartite single-photon sources,
/// a 3-party target list per source and a two-source input wiring per party.
/// Party and source indices are 0-based internally, 1-based in all external
/// formats.
struct Topology {
    int n_parties = 0;
    int n_sources = 0;
    // targets[m] lists the three parties source m can send its photon to.
    std::vector<std::vector<int>> targets;
    // mode_sources[n] = {source feeding input mode 1, source feeding mode 2}.
    std::vector<std::array<int, 2>> mode_sources;

    // The two sources connected to a party, ascending by source index.
    std::array<int, 2> sources_of(int party) const;
    // Which input mode (0 or 1) of `party` source `source` feeds.
    int mode_slot(int party, int source) const;

    bool operator==(const Topology&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::pair<std::string, std::string>> violations; // (rule-id, message)

    void add(const std::string& rule, const std::string& message) {
        ok = false;
        violations.emplace_back(rule, message);
    }
};

ValidationReport validate(const Topology& t);

// Reference ring family: N parties around a ring, M = 2N/3 sources; odd
// sources reach the next-nearest neighbor left of their middle party and the
// nearest neighbor to its right, even sources the mirror image.
// Throws Error("invalid-n") unless N >= 6 and N % 3 == 0.
Topology build_reference_ring(int n_parties);

// The 6-party, 4-source instance with target lists
// {A1,A2,A3}, {A2,A4,A5}, {A3,A4,A6}, {A1,A5,A6}.
Topology build_6p4s();

// JSON config: {"n_parties": int, "sources": [[3 ints, 1-based]...],
// "mode_swap": [1-based party indices]}  (mode_swap optional).
// Throws Error("parse-error") for malformed documents and
// Error("validation-error") for well-formed ones violating the invariants.
Topology parse_topology(const std::string& text);
std::string serialize_topology(const Topology& t);

// Rebuilds the default wiring (lower-indexed source feeds mode 1), then
// applies the given per-party swaps.
void assign_default_wiring(Topology& t, const std::vector<int>& swapped_parties = {});

} // namespace netlocal

#endif
