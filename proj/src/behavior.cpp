#include "netlocal/behavior.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "netlocal/errors.hpp"

namespace netlocal {

std::string behavior_to_csv(const Behavior& b) {
    std::string out = "outcome,probability\n";
    char buf[64];
    for (const auto& [o, p] : b.probs) {
        std::snprintf(buf, sizeof buf, "%.17g", p);
        out += o;
        out += ',';
        out += buf;
        out += '\n';
    }
    return out;
}

Behavior behavior_from_csv(const std::string& text, const std::vector<std::string>& realizable) {
    Behavior b;
    b.realizable = realizable;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line == "outcome,probability") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error("parse-error", "behavior CSV line " + std::to_string(lineno) + " has no comma");
        const std::string outcome = line.substr(0, comma);
        double p = 0.0;
        try {
            size_t used = 0;
            p = std::stod(line.substr(comma + 1), &used);
        } catch (const std::exception&) {
            throw Error("parse-error", "behavior CSV line " + std::to_string(lineno) + ": bad probability");
        }
        if (outcome.find_first_not_of("0LR2") != std::string::npos)
            throw Error("parse-error",
                        "behavior CSV line " + std::to_string(lineno) + ": outcome symbols must be 0,L,R,2");
        if (p < 0.0)
            throw Error("parse-error", "behavior CSV line " + std::to_string(lineno) + ": negative probability");
        if (!std::binary_search(realizable.begin(), realizable.end(), outcome))
            throw Error("unrealizable-outcome", "outcome " + outcome + " is not realizable in this network");
        b.probs[outcome] += p;
    }
    return b;
}

} // namespace netlocal
