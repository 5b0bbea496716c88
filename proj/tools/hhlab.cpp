#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hhlab/experiment.hpp"

namespace {

void add_options(CLI::App* cmd, hhlab::RawSpec& raw) {
    cmd->add_option("--n", raw.n, "problem size grid, comma separated (e.g. 1000,10000 or 1e6)");
    cmd->add_option("--k", raw.k, "operator count grid, comma separated");
    cmd->add_option("--tau", raw.tau,
                    "learning period grid; units: absolute (5000), n-multiples (10n), "
                    "or n-ln-n multiples (0.6nlnn)");
    cmd->add_option("--mechanism", raw.mechanism,
                    "algorithm grid: simple-random, permutation, greedy, random-gradient, "
                    "grg, ea (exact baseline), opt (theory only)");
    cmd->add_option("--engine", raw.engine, "exact | fast");
    cmd->add_option("--family", raw.family, "operator family: mbitflip | rls");
    cmd->add_option("--replicates", raw.replicates, "replicates per grid point (default 10000)");
    cmd->add_option("--seed", raw.seed, "master seed (default 1)");
    cmd->add_option("--w", raw.w, "stage count of the theoretical bounds (default 100000)");
    cmd->add_option("--p1", raw.p1, "1-bit-flip weight for two-operator simple-random");
    cmd->add_option("--epsilon", raw.epsilon, "validity margin in tau <= (1/k - eps) n ln n");
    cmd->add_option("--targets", raw.targets,
                    "fixed targets, comma separated; absolute (2500) or fractions (0.25n)");
    cmd->add_option("--out", raw.out, "output file; .csv or .dat by extension (default stdout)");
    cmd->add_option("--config", raw.config_path, "key = value config file; flags take precedence");
    cmd->add_option("--jobs", raw.jobs, "worker threads (0 = all cores); results do not depend on it");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Runtime laboratory for selection hyper-heuristics on LeadingOnes"};
    app.require_subcommand(1);
    hhlab::RawSpec raw;

    add_options(app.add_subcommand("theory", "evaluate closed-form runtime constants and bounds"), raw);
    add_options(app.add_subcommand("simulate", "run simulations for one parameter combination set"), raw);
    add_options(app.add_subcommand("sweep", "run simulations over a parameter grid"), raw);
    add_options(app.add_subcommand("fixed-target",
                                   "record first-hitting times for fitness targets, with theory curves"),
                raw);
    add_options(app.add_subcommand("validate", "run the oracle and regression suites"), raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    raw.command = app.get_subcommands().front()->get_name();
    try {
        return hhlab::run_experiment(hhlab::build_spec(raw));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
