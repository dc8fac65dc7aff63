#ifndef NETLOCAL_STRATEGIES_HPP
#define NETLOCAL_STRATEGIES_HPP

#include <map>
#include <string>
#include <vector>

#include "netlocal/topology.hpp"

namespace netlocal {

// One deterministic assignment: entry m is the party receiving source m's
// photon, drawn from that source's target list.
using Strategy = std::vector<int>;

// Full strategy space, 3^M entries, lexicographic in target-list positions.
std::vector<Strategy> enumerate_strategies(const Topology& t);

// Patterns a strategy can produce: one photon -> X, collisions -> both the
// 2 and the X variant, none -> 0. Sorted, over {0,X,2}.
std::vector<std::string> image(const Strategy& s, const Topology& t);

// All fine-grained outcomes of a pattern: X -> {L,R}, other symbols kept.
std::vector<std::string> fine_grainings(const std::string& pattern);

// Union of fine-grained strategy images == the expected outcome set?
bool verify_image_coverage(const Topology& t);
bool verify_image_coverage(const Topology& t, const std::vector<std::string>& expected);

/// Amenable restriction: outcomes with exactly M single clicks and N-M
/// silent parties, the collision-free strategies supporting them, and the
/// pattern->strategies support map. Strategy order is canonical: sorted by
/// (pattern, assignment), which also fixes all LP column indexing.
struct RestrictedModel {
    std::vector<Strategy> strategies;              // S, canonical order
    std::vector<std::string> strategy_patterns;    // aligned with strategies
    std::vector<std::string> patterns;             // sorted
    std::map<std::string, std::vector<int>> support; // pattern -> indices into strategies
    std::vector<std::string> outcomes;             // O_S, sorted
    std::map<std::string, int> outcome_index;

    const std::string& pattern_of(int strategy_index) const { return strategy_patterns[strategy_index]; }
};

std::string strategy_pattern(const Strategy& s, int n_parties); // "" if a collision occurs

RestrictedModel restrict_model(const Topology& t);

// Patterns of the model compatible with the substring "party n clicks, the
// other two targets of source m are silent".
std::vector<std::string> substring_patterns(const Topology& t, const RestrictedModel& rm, int source, int party);

/// One of the 2N click events that can arise in exactly two disjoint ways:
/// party's photon came through the lower source (region 1) or the upper one
/// (region 2). Pattern sets are fine-grained at `party` to `click` when used
/// for probabilities; strategy sets live at the coarse level.
struct RegionPair {
    int party = 0;
    char click = 'L';
    int source_a = 0; // lower source index
    int source_b = 0;
    std::vector<std::string> patterns_a; // compatible with substring (source_a, party)
    std::vector<std::string> patterns_b;
    std::vector<int> strategies_a; // indices into RestrictedModel::strategies
    std::vector<int> strategies_b;
};

std::vector<RegionPair> region_pairs(const Topology& t, const RestrictedModel& rm);

// Plain-text strategy table (label, assignment, pattern) for eyeballing.
std::string strategy_table(const RestrictedModel& rm);

} // namespace netlocal

#endif
