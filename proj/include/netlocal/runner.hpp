#ifndef NETLOCAL_RUNNER_HPP
#define NETLOCAL_RUNNER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netlocal/constraints.hpp"
#include "netlocal/simplex.hpp"
#include "netlocal/topology.hpp"

namespace netlocal {

struct RunSettings {
    double eps = 1e-6; // verdict threshold on T
    SolverSettings solver;
    int jobs = 0; // 0 -> hardware concurrency
};

// Verdicts are data, not exit codes: NetworkNonlocal iff the solve is Optimal
// and T exceeds eps.
std::string verdict_of(SolveStatus status, double T, double eps);

struct RunReport {
    std::optional<double> transmissivity; // empty for ingested behaviors
    double T = 0.0;
    SolveStatus status = SolveStatus::NumericalTrouble;
    std::string verdict;
    long iterations = 0;
    double max_residual = 0.0;
    std::map<int, double> slack_by_class;    // share of T absorbed per class
    std::map<int, double> residual_by_class; // verifier residuals per class
    std::vector<std::pair<std::string, double>> gammas; // "A<n>:<click>" -> value
    MuModel mu;
    size_t n_strategies_full = 0; // |D|
    size_t n_strategies = 0;      // |S|
    size_t n_patterns = 0;
    size_t n_outcomes = 0; // |O_S|
    std::vector<std::string> warnings;
};

RunReport run_single(const Topology& t, const Behavior& b, const RunSettings& settings,
                     std::optional<double> transmissivity = std::nullopt);

struct SweepResult {
    struct Row {
        double t = 0.0;
        double T = 0.0;
        SolveStatus status = SolveStatus::NumericalTrouble;
        long iterations = 0;
        std::string verdict;
    };
    std::vector<Row> rows; // ascending t
    std::string topology_hash;
    double eps = 0.0;
};

// One witness per grid point t_min, t_min+step, ..., up to t_max (inclusive
// within half a step). Grid points are dispatched to a small worker pool and
// reassembled in order.
SweepResult run_sweep(const Topology& t, double t_min, double t_max, double step,
                      const RunSettings& settings);

std::string sweep_to_csv(const SweepResult& s);
std::string sweep_to_plot_data(const SweepResult& s);
std::string sweep_to_json(const SweepResult& s, const RunSettings& settings);

std::string run_report_text(const RunReport& r);
std::string run_report_json(const RunReport& r);

// Strategy table, region pairs and counts for eyeballing a model.
std::string dump_model_text(const Topology& t);

// FNV-1a over the canonical serialization.
std::string topology_hash(const Topology& t);

} // namespace netlocal

#endif
