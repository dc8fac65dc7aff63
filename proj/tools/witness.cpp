#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "netlocal/constraints.hpp"
#include "netlocal/errors.hpp"
#include "netlocal/fock.hpp"
#include "netlocal/mps.hpp"
#include "netlocal/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw netlocal::Error("io-error", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw netlocal::Error("io-error", "cannot write " + path);
    out << content;
}

struct CommonOptions {
    std::string topology_path;
    double eps = 1e-6;
    double feas_tol = 1e-8;
    double opt_tol = 1e-8;
    long max_iter = 0;
    int jobs = 0;
    std::string out_dir;
    std::string format = "csv";
    bool export_mps = false;
    bool dantzig = false;

    netlocal::RunSettings settings() const {
        netlocal::RunSettings s;
        s.eps = eps;
        s.solver.feas_tol = feas_tol;
        s.solver.opt_tol = opt_tol;
        s.solver.max_iter = max_iter;
        s.solver.pivot = dantzig ? netlocal::SolverSettings::Pivot::Dantzig
                                 : netlocal::SolverSettings::Pivot::Bland;
        s.jobs = jobs;
        return s;
    }
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--topology", opt.topology_path, "topology config (JSON)")->required();
    cmd->add_option("--eps", opt.eps, "verdict threshold on T");
    cmd->add_option("--feas-tol", opt.feas_tol, "solver feasibility tolerance");
    cmd->add_option("--opt-tol", opt.opt_tol, "solver optimality tolerance");
    cmd->add_option("--max-iter", opt.max_iter, "simplex iteration cap (0 = auto)");
    cmd->add_option("--jobs", opt.jobs, "worker threads for sweeps (0 = all cores)");
    cmd->add_option("--out", opt.out_dir, "directory for result files");
    cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--export-mps", opt.export_mps, "also write the assembled program in MPS format");
    cmd->add_flag("--dantzig", opt.dantzig, "use the Dantzig pivot rule instead of Bland");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"network-locality witness for photonic ring networks"};
    app.require_subcommand(1);

    CommonOptions run_opt, sweep_opt, dump_opt;
    std::optional<double> run_t;
    std::string behavior_path;
    double t_min = 0.0, t_max = 1.0, step = 0.001;
    double dump_t = 0.5;

    CLI::App* run = app.add_subcommand("run", "single witness evaluation");
    add_common(run, run_opt);
    auto* topt = run->add_option("--t", run_t, "beamsplitter transmissivity");
    auto* bopt = run->add_option("--behavior", behavior_path, "observed behavior CSV instead of simulating");
    topt->excludes(bopt);

    CLI::App* sweep = app.add_subcommand("sweep", "transmissivity sweep");
    add_common(sweep, sweep_opt);
    sweep->add_option("--t-min", t_min, "sweep start");
    sweep->add_option("--t-max", t_max, "sweep end");
    sweep->add_option("--step", step, "grid step");

    CLI::App* dump = app.add_subcommand("dump", "strategy table, region pairs and constraint provenance");
    add_common(dump, dump_opt);
    dump->add_option("--t", dump_t, "transmissivity for the provenance right-hand sides");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const netlocal::Topology topo = netlocal::parse_topology(read_file(run_opt.topology_path));
            netlocal::Behavior b;
            if (!behavior_path.empty()) {
                b = netlocal::behavior_from_csv(read_file(behavior_path), netlocal::realizable_outcomes(topo));
                const double total = b.total();
                if (std::abs(total - 1.0) > 1e-9)
                    std::cerr << "warning: ingested behavior sums to " << total << " over the realizable set\n";
            } else if (run_t) {
                b = netlocal::behavior(topo, *run_t);
            } else {
                std::cerr << "error: run needs --t or --behavior\n";
                return 2;
            }
            const netlocal::RunReport report = netlocal::run_single(topo, b, run_opt.settings(), run_t);
            std::cout << (run_opt.format == "json" ? netlocal::run_report_json(report)
                                                   : netlocal::run_report_text(report));
            std::cout << "\n";
            if (!run_opt.out_dir.empty()) {
                const std::string d = run_opt.out_dir + "/";
                write_file(d + (run_opt.format == "json" ? "report.json" : "report.txt"),
                           run_opt.format == "json" ? netlocal::run_report_json(report)
                                                    : netlocal::run_report_text(report));
                write_file(d + "behavior.csv", netlocal::behavior_to_csv(b));
                const netlocal::RestrictedModel rm = netlocal::restrict_model(topo);
                const netlocal::AssembledWitness w = netlocal::assemble_lp(b, topo, rm);
                write_file(d + "provenance.json", netlocal::provenance_json(w, rm));
                if (run_opt.export_mps) write_file(d + "witness.mps", netlocal::export_mps(w.lp));
            } else if (run_opt.export_mps) {
                const netlocal::AssembledWitness w = netlocal::assemble_lp(b, topo);
                std::cout << netlocal::export_mps(w.lp);
            }
            return report.status == netlocal::SolveStatus::Optimal ? 0 : 3;
        }

        if (sweep->parsed()) {
            const netlocal::Topology topo = netlocal::parse_topology(read_file(sweep_opt.topology_path));
            if (sweep_opt.export_mps)
                std::cerr << "warning: --export-mps applies to 'run' only and is ignored here\n";
            const netlocal::SweepResult result =
                netlocal::run_sweep(topo, t_min, t_max, step, sweep_opt.settings());
            if (!sweep_opt.out_dir.empty()) {
                const std::string d = sweep_opt.out_dir + "/";
                write_file(d + "sweep.csv", netlocal::sweep_to_csv(result));
                write_file(d + "sweep_plot.dat", netlocal::sweep_to_plot_data(result));
                if (sweep_opt.format == "json")
                    write_file(d + "sweep.json", netlocal::sweep_to_json(result, sweep_opt.settings()));
            } else {
                std::cout << (sweep_opt.format == "json"
                                  ? netlocal::sweep_to_json(result, sweep_opt.settings())
                                  : netlocal::sweep_to_csv(result));
            }
            for (const auto& row : result.rows)
                if (row.status != netlocal::SolveStatus::Optimal) return 3;
            return 0;
        }

        if (dump->parsed()) {
            const netlocal::Topology topo = netlocal::parse_topology(read_file(dump_opt.topology_path));
            std::cout << netlocal::dump_model_text(topo);
            const netlocal::Behavior b = netlocal::behavior(topo, dump_t);
            const netlocal::RestrictedModel rm = netlocal::restrict_model(topo);
            const netlocal::AssembledWitness w = netlocal::assemble_lp(b, topo, rm);
            if (!dump_opt.out_dir.empty())
                write_file(dump_opt.out_dir + "/provenance.json", netlocal::provenance_json(w, rm));
            return 0;
        }
    } catch (const netlocal::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
