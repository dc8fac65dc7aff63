#ifndef NETLOCAL_MPS_HPP
#define NETLOCAL_MPS_HPP

#include <string>

#include "netlocal/simplex.hpp"

namespace netlocal {

// Fixed-layout MPS document (NAME/ROWS/COLUMNS/RHS/BOUNDS/ENDATA). Row and
// column names come from the problem labels, sanitized and truncated to the
// 8-character format limit; clashes fall back to indexed names. Deterministic
// byte-for-byte for identical problems.
std::string export_mps(const LPProblem& p, const std::string& model_name = "WITNESS");

} // namespace netlocal

#endif
