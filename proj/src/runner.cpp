#include "netlocal/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "json.hpp"

#include "netlocal/errors.hpp"
#include "netlocal/fock.hpp"
#include "netlocal/strategies.hpp"

namespace netlocal {

namespace {

std::string fmt(double v, const char* spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

std::string verdict_of(SolveStatus status, double T, double eps) {
    return status == SolveStatus::Optimal && T > eps ? "NetworkNonlocal" : "Undetermined";
}

std::string topology_hash(const Topology& t) {
    const std::string s = serialize_topology(t);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunReport run_single(const Topology& t, const Behavior& b, const RunSettings& settings,
                     std::optional<double> transmissivity) {
    RunReport report;
    report.transmissivity = transmissivity;

    const RestrictedModel rm = restrict_model(t);
    report.n_strategies_full = static_cast<size_t>(std::pow(3.0, t.n_sources) + 0.5);
    report.n_strategies = rm.strategies.size();
    report.n_patterns = rm.patterns.size();
    report.n_outcomes = rm.outcomes.size();

    AssembledWitness w = assemble_lp(b, t, rm);
    report.mu = w.mu;
    report.warnings = w.constraints.warnings;
    if (!w.mu.consistent)
        report.warnings.push_back("strategy-weight mass and outcome mass disagree beyond 1e-9 (" +
                                  fmt(w.mu.norm_strategies) + " vs " + fmt(w.mu.norm_outcomes) + ")");
    for (const auto& rp : w.pairs)
        report.gammas.emplace_back("A" + std::to_string(rp.party + 1) + ":" + rp.click,
                                   domain_asymmetry(b, rp, rm));

    const Solution sol = solve(w.lp, settings.solver);
    report.T = sol.objective;
    report.status = sol.status;
    report.iterations = sol.iterations;
    report.max_residual = sol.max_residual;
    report.verdict = verdict_of(sol.status, sol.objective, settings.eps);

    if (!sol.values.empty()) {
        for (size_t r = 0; r < w.lp.rows.size(); ++r) {
            const int cls = w.row_class[r];
            // Slack pair columns were appended right after the q block, two
            // per row in row order.
            const int sp = w.n_qvars + 2 * static_cast<int>(r);
            const int sm = sp + 1;
            report.slack_by_class[cls] += sol.values[sp] + sol.values[sm];
            double lhs = 0.0;
            for (const auto& [j, c] : w.lp.rows[r].coeffs) lhs += c * sol.values[j];
            report.residual_by_class[cls] =
                std::max(report.residual_by_class[cls], std::abs(lhs - w.lp.rows[r].rhs));
        }
    }
    return report;
}

SweepResult run_sweep(const Topology& t, double t_min, double t_max, double step,
                      const RunSettings& settings) {
    if (!(t_min >= 0.0 && t_min < t_max && t_max <= 1.0) || step <= 0.0)
        throw Error("invalid-sweep", "need 0 <= t_min < t_max <= 1 and step > 0");

    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double v = t_min + k * step;
        if (v > t_max + step * 0.5) break;
        grid.push_back(std::min(v, 1.0));
        if (v >= t_max) break;
    }

    SweepResult result;
    result.topology_hash = topology_hash(t);
    result.eps = settings.eps;
    result.rows.resize(grid.size());

    int jobs = settings.jobs > 0 ? settings.jobs : static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    jobs = std::min<int>(jobs, static_cast<int>(grid.size()));

    const RestrictedModel rm = restrict_model(t);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            const double trans = grid[i];
            const Behavior b = behavior(t, trans);
            AssembledWitness w = assemble_lp(b, t, rm);
            const Solution sol = solve(w.lp, settings.solver);
            result.rows[i] = {trans, sol.objective, sol.status, sol.iterations,
                              verdict_of(sol.status, sol.objective, settings.eps)};
        }
    };
    std::vector<std::thread> pool;
    for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return result;
}

std::string sweep_to_csv(const SweepResult& s) {
    std::string out = "t,T,status,verdict\n";
    for (const auto& row : s.rows)
        out += fmt(row.t, "%.6g") + "," + fmt(row.T, "%.12e") + "," + to_string(row.status) + "," +
               row.verdict + "\n";
    return out;
}

std::string sweep_to_plot_data(const SweepResult& s) {
    std::string out;
    for (const auto& row : s.rows) out += fmt(row.t, "%.6g") + " " + fmt(row.T, "%.12e") + "\n";
    return out;
}

std::string sweep_to_json(const SweepResult& s, const RunSettings& settings) {
    nlohmann::json doc;
    doc["topology_hash"] = s.topology_hash;
    doc["eps"] = settings.eps;
    doc["feas_tol"] = settings.solver.feas_tol;
    doc["opt_tol"] = settings.solver.opt_tol;
    auto rows = nlohmann::json::array();
    for (const auto& row : s.rows)
        rows.push_back({{"t", row.t},
                        {"T", row.T},
                        {"status", to_string(row.status)},
                        {"iterations", row.iterations},
                        {"verdict", row.verdict}});
    doc["rows"] = rows;
    return doc.dump(1);
}

std::string run_report_text(const RunReport& r) {
    std::string out;
    out += "counts: |D| / |S| / |O_S| = " + std::to_string(r.n_strategies_full) + " / " +
           std::to_string(r.n_strategies) + " / " + std::to_string(r.n_outcomes) + "  (" +
           std::to_string(r.n_patterns) + " patterns)\n";
    if (r.transmissivity) out += "transmissivity: " + fmt(*r.transmissivity, "%.6g") + "\n";
    out += "status: " + std::string(to_string(r.status)) + " after " + std::to_string(r.iterations) +
           " iterations\n";
    out += "T = " + fmt(r.T, "%.12e") + "\n";
    out += "verdict: " + r.verdict + "\n";
    out += "max residual: " + fmt(r.max_residual, "%.3e") + "\n";
    out += "slack by class:";
    for (const auto& [cls, v] : r.slack_by_class) out += "  " + std::to_string(cls) + ": " + fmt(v, "%.3e");
    out += "\n";
    out += "strategy-weight mass " + fmt(r.mu.norm_strategies) + ", outcome mass " +
           fmt(r.mu.norm_outcomes) + "\n";
    out += "domain asymmetries:\n";
    for (const auto& [key, v] : r.gammas) out += "  " + key + "  " + fmt(v, "%+.9e") + "\n";
    for (const auto& w : r.warnings) out += "warning: " + w + "\n";
    return out;
}

std::string run_report_json(const RunReport& r) {
    nlohmann::json doc;
    if (r.transmissivity) doc["transmissivity"] = *r.transmissivity;
    doc["T"] = r.T;
    doc["status"] = to_string(r.status);
    doc["verdict"] = r.verdict;
    doc["iterations"] = r.iterations;
    doc["max_residual"] = r.max_residual;
    doc["counts"] = {{"full_strategies", r.n_strategies_full},
                     {"supported_strategies", r.n_strategies},
                     {"patterns", r.n_patterns},
                     {"outcomes", r.n_outcomes}};
    nlohmann::json slack, residual;
    for (const auto& [cls, v] : r.slack_by_class) slack[std::to_string(cls)] = v;
    for (const auto& [cls, v] : r.residual_by_class) residual[std::to_string(cls)] = v;
    doc["slack_by_class"] = slack;
    doc["residual_by_class"] = residual;
    nlohmann::json gammas;
    for (const auto& [key, v] : r.gammas) gammas[key] = v;
    doc["domain_asymmetries"] = gammas;
    nlohmann::json mu;
    mu["norm_strategies"] = r.mu.norm_strategies;
    mu["norm_outcomes"] = r.mu.norm_outcomes;
    mu["consistent"] = r.mu.consistent;
    auto per_source = nlohmann::json::array();
    for (const auto& row : r.mu.mu_source) per_source.push_back({row[0], row[1], row[2]});
    mu["per_source"] = per_source;
    doc["mu"] = mu;
    doc["warnings"] = r.warnings;
    return doc.dump(1);
}

std::string dump_model_text(const Topology& t) {
    const RestrictedModel rm = restrict_model(t);
    std::string out = strategy_table(rm);
    out += "\ncounts: " + std::to_string(enumerate_strategies(t).size()) + " / " +
           std::to_string(rm.strategies.size()) + " / " + std::to_string(rm.outcomes.size()) + "\n";
    out += "patterns: " + std::to_string(rm.patterns.size()) + "\n\nregion pairs:\n";
    for (const auto& rp : region_pairs(t, rm)) {
        out += "  A" + std::to_string(rp.party + 1) + ":" + rp.click + "  sources (S" +
               std::to_string(rp.source_a + 1) + ",S" + std::to_string(rp.source_b + 1) + ")  patterns {";
        for (size_t i = 0; i < rp.patterns_a.size(); ++i) out += (i ? "," : "") + rp.patterns_a[i];
        out += "} vs {";
        for (size_t i = 0; i < rp.patterns_b.size(); ++i) out += (i ? "," : "") + rp.patterns_b[i];
        out += "}  strategies {";
        for (size_t i = 0; i < rp.strategies_a.size(); ++i)
            out += (i ? "," : "") + ("s" + std::to_string(rp.strategies_a[i]));
        out += "} vs {";
        for (size_t i = 0; i < rp.strategies_b.size(); ++i)
            out += (i ? "," : "") + ("s" + std::to_string(rp.strategies_b[i]));
        out += "}\n";
    }
    return out;
}

} // namespace netlocal
