#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hhlab/engine.hpp"
#include "hhlab/theory.hpp"

namespace hhlab {

/// Learning-period specification with units: absolute evaluations ("5000"),
/// multiples of n ("10n"), or multiples of n ln n ("0.6nlnn"). The raw text
/// is preserved into output metadata.
struct TauSpec {
    enum class Unit { absolute, times_n, times_n_ln_n };

    Unit unit = Unit::times_n;
    double coefficient = 1.0;
    std::string raw = "1n";

    static TauSpec parse(const std::string& text);
    double resolve_over_n(std::size_t n) const;
    std::uint64_t resolve(std::size_t n) const;  ///< rounded, at least 1
};

/// One algorithm on the mechanism axis: a selection mechanism over the
/// canonical flip set, the (1+1) EA baseline (rate 1/n), or the best-possible
/// operator schedule (theory command only).
struct AlgorithmSpec {
    enum class Kind { mechanism, one_plus_one_ea, optimal };

    Kind kind = Kind::mechanism;
    MechanismKind mechanism = MechanismKind::simple_random;

    static AlgorithmSpec parse(const std::string& token);
    std::string name() const;
    bool uses_tau() const {
        return kind == Kind::mechanism &&
               mechanism == MechanismKind::generalised_random_gradient;
    }
};

enum class Command { theory, simulate, sweep, fixed_target, validate };

/// Fully typed experiment description; grids expand as Cartesian products in
/// axis declaration order (n, k, tau, algorithm).
struct ExperimentSpec {
    Command command = Command::simulate;
    std::vector<std::size_t> n_values{1000};
    std::vector<std::size_t> k_values{2};
    std::vector<TauSpec> tau_values;
    std::vector<AlgorithmSpec> algorithms{AlgorithmSpec{}};
    EngineKind engine = EngineKind::exact;
    OperatorFamily family = OperatorFamily::mbitflip;
    std::size_t replicates = 10000;
    std::uint64_t seed = 1;
    std::size_t w = 100000;
    double p1 = -1.0;  ///< two-operator Simple Random weight; < 0 = uniform
    double epsilon_guard = 0.01;
    std::vector<std::string> target_specs;  ///< "2500" or "0.25n"
    std::string out;
    unsigned jobs = 1;
};

/// Raw option strings as given on the command line; empty means unset. A
/// config file fills unset options, then defaults apply.
struct RawSpec {
    std::string command;
    std::string n, k, tau, mechanism, engine, family;
    std::string replicates, seed, w, p1, epsilon, targets, out, jobs;
    std::string config_path;
};

/// Builds the typed spec: command line first, config file for what the
/// command line left unset, then defaults. Throws std::invalid_argument.
ExperimentSpec build_spec(const RawSpec& raw);

/// Flat "key = value" config file; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Tabular command output. Metadata renders as leading '#' comment lines;
/// .dat output keeps only the designated (x, y) columns.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::size_t dat_x = 0;
    std::size_t dat_y = 0;
};

/// Writes CSV or two-column .dat depending on the file extension (empty path
/// = CSV on stdout). Output depends only on the table contents.
void write_table(const Table& table, const std::string& path);

/// FNV-1a hash of the canonical spec serialisation; stamped on every row.
std::string spec_hash(const ExperimentSpec& spec);

Table run_theory(const ExperimentSpec& spec);
Table run_simulate(const ExperimentSpec& spec);
Table run_fixed_target(const ExperimentSpec& spec);

/// One validation check of the oracle suites.
struct ValidationCheck {
    std::string name;
    std::string source;  ///< analytic | enumeration | definition | simulation
    double expected;
    double observed;
    double tolerance;
    bool pass;
};

std::vector<ValidationCheck> run_validation(unsigned jobs);
Table validation_table(const std::vector<ValidationCheck>& checks);

/// Runs the spec end to end; returns the process exit code (0 ok, 2 when
/// validation reported failures).
int run_experiment(const ExperimentSpec& spec);

std::string fmt_double(double value);

std::vector<std::string> split_list(const std::string& text);

}  // namespace hhlab
