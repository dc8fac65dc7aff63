#ifndef NETLOCAL_FOCK_HPP
#define NETLOCAL_FOCK_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "netlocal/behavior.hpp"
#include "netlocal/topology.hpp"

namespace netlocal {

/// Sparse Fock state over 2N optical modes, mode 2n / 2n+1 being party n's
/// input modes 1 and 2. Keys are occupation vectors, values amplitudes.
struct FockState {
    int n_modes = 0;
    std::map<std::vector<uint8_t>, std::complex<double>> terms;

    double norm_squared() const;
};

// Tensor product of one single-photon W state per source: 3^M occupation
// vectors, each with amplitude 3^(-M/2), photons placed into the input mode
// the wiring assigns to (target party, source).
FockState initial_state(const Topology& t);

// Two-mode beamsplitter on one party's modes, acting on creation operators as
//   a1+ -> sqrt(t) a1+ + e^{i phi} sqrt(1-t) a2+
//   a2+ -> -e^{-i phi} sqrt(1-t) a1+ + sqrt(t) a2+
// expanded with the full sqrt(n!) Fock normalization, so arbitrary photon
// numbers are handled. Throws Error("bad-transmissivity") outside [0,1].
FockState apply_beamsplitter(const FockState& s, int party, double transmissivity, double phase = 0.0);

// Click/no-click readout per mode: count 0 -> no click, count >= 1 -> click;
// party symbol 0/L/R/2 from the (left, right) click pair. The returned
// realizable set is the observed support; behavior() replaces it with the
// combinatorial set.
Behavior detection_distribution(const FockState& s);

// All click strings consistent with M photons routed source->target and
// non-photon-number-resolving detectors, enumerated combinatorially.
std::vector<std::string> realizable_outcomes(const Topology& t);

// Full pipeline: initial state, one beamsplitter per party, detection.
Behavior behavior(const Topology& t, double transmissivity);

} // namespace netlocal

#endif
