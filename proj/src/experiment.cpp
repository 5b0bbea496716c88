#include "hhlab/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "hhlab/probability.hpp"

namespace hhlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
    std::uint64_t value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument(std::string(what) + ": expected an integer, got '" + text + "'");
    return value;
}

double parse_real(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("");
        return value;
    } catch (...) {
        throw std::invalid_argument(std::string(what) + ": expected a number, got '" + text + "'");
    }
}

// Sizes accept scientific shorthand ("1e6") alongside plain integers.
std::size_t parse_size(const std::string& text, const char* what) {
    if (text.find_first_of("eE.") != std::string::npos) {
        const double v = parse_real(text, what);
        if (!(v >= 1.0 && v <= 9e15) || std::llround(v) != v)
            throw std::invalid_argument(std::string(what) + ": '" + text + "' is not a whole positive number");
        return static_cast<std::size_t>(std::llround(v));
    }
    return static_cast<std::size_t>(parse_u64(text, what));
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            if (!trim(current).empty()) items.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!trim(current).empty()) items.push_back(trim(current));
    return items;
}

TauSpec TauSpec::parse(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw std::invalid_argument("tau: empty specification");
    TauSpec spec;
    spec.raw = t;
    auto ends_with = [&](const char* suffix) {
        const std::size_t len = std::string(suffix).size();
        return t.size() >= len && t.compare(t.size() - len, len, suffix) == 0;
    };
    std::string number = t;
    if (ends_with("nlnn")) {
        spec.unit = Unit::times_n_ln_n;
        number = t.substr(0, t.size() - 4);
    } else if (ends_with("n")) {
        spec.unit = Unit::times_n;
        number = t.substr(0, t.size() - 1);
    } else {
        spec.unit = Unit::absolute;
    }
    if (number.empty())
        spec.coefficient = 1.0;
    else
        spec.coefficient = parse_real(number, "tau");
    if (!(spec.coefficient > 0.0)) throw std::invalid_argument("tau: must be positive, got '" + t + "'");
    return spec;
}

double TauSpec::resolve_over_n(std::size_t n) const {
    const auto dn = static_cast<double>(n);
    switch (unit) {
        case Unit::absolute: return coefficient / dn;
        case Unit::times_n: return coefficient;
        case Unit::times_n_ln_n: return coefficient * std::log(dn);
    }
    return coefficient;
}

std::uint64_t TauSpec::resolve(std::size_t n) const {
    const double value = resolve_over_n(n) * static_cast<double>(n);
    return value < 1.0 ? std::uint64_t{1} : static_cast<std::uint64_t>(std::llround(value));
}

AlgorithmSpec AlgorithmSpec::parse(const std::string& token) {
    AlgorithmSpec spec;
    if (token == "ea") {
        spec.kind = Kind::one_plus_one_ea;
        return spec;
    }
    if (token == "opt") {
        spec.kind = Kind::optimal;
        return spec;
    }
    spec.kind = Kind::mechanism;
    if (token == "simple-random" || token == "sr")
        spec.mechanism = MechanismKind::simple_random;
    else if (token == "permutation")
        spec.mechanism = MechanismKind::permutation;
    else if (token == "greedy")
        spec.mechanism = MechanismKind::greedy;
    else if (token == "random-gradient" || token == "rg")
        spec.mechanism = MechanismKind::random_gradient;
    else if (token == "grg")
        spec.mechanism = MechanismKind::generalised_random_gradient;
    else
        throw std::invalid_argument("mechanism: unknown algorithm '" + token + "'");
    return spec;
}

std::string AlgorithmSpec::name() const {
    switch (kind) {
        case Kind::one_plus_one_ea: return "ea";
        case Kind::optimal: return "opt";
        case Kind::mechanism: return to_string(mechanism);
    }
    return "?";
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value', got '" + stripped + "'");
        entries.emplace_back(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return entries;
}

namespace {

EngineKind parse_engine(const std::string& token) {
    if (token == "exact") return EngineKind::exact;
    if (token == "fast") return EngineKind::fast;
    throw std::invalid_argument("engine: expected 'exact' or 'fast', got '" + token + "'");
}

OperatorFamily parse_family(const std::string& token) {
    if (token == "mbitflip" || token == "with-replacement") return OperatorFamily::mbitflip;
    if (token == "rls" || token == "without-replacement") return OperatorFamily::rls;
    throw std::invalid_argument("family: expected 'mbitflip' or 'rls', got '" + token + "'");
}

Command parse_command(const std::string& token) {
    if (token == "theory") return Command::theory;
    if (token == "simulate") return Command::simulate;
    if (token == "sweep") return Command::sweep;
    if (token == "fixed-target") return Command::fixed_target;
    if (token == "validate") return Command::validate;
    throw std::invalid_argument("command: unknown command '" + token + "'");
}

}  // namespace

ExperimentSpec build_spec(const RawSpec& raw) {
    RawSpec merged = raw;
    if (!raw.config_path.empty()) {
        for (const auto& [key, value] : read_config_file(raw.config_path)) {
            auto fill = [&](std::string& slot) {
                if (slot.empty()) slot = value;
            };
            if (key == "n") fill(merged.n);
            else if (key == "k") fill(merged.k);
            else if (key == "tau") fill(merged.tau);
            else if (key == "mechanism") fill(merged.mechanism);
            else if (key == "engine") fill(merged.engine);
            else if (key == "family") fill(merged.family);
            else if (key == "replicates") fill(merged.replicates);
            else if (key == "seed") fill(merged.seed);
            else if (key == "w") fill(merged.w);
            else if (key == "p1") fill(merged.p1);
            else if (key == "epsilon") fill(merged.epsilon);
            else if (key == "targets") fill(merged.targets);
            else if (key == "out") fill(merged.out);
            else if (key == "jobs") fill(merged.jobs);
            else throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }

    ExperimentSpec spec;
    spec.command = parse_command(merged.command);
    if (!merged.n.empty()) {
        spec.n_values.clear();
        for (const std::string& item : split_list(merged.n)) spec.n_values.push_back(parse_size(item, "n"));
    }
    if (!merged.k.empty()) {
        spec.k_values.clear();
        for (const std::string& item : split_list(merged.k)) spec.k_values.push_back(parse_size(item, "k"));
    }
    for (const std::string& item : split_list(merged.tau)) spec.tau_values.push_back(TauSpec::parse(item));
    if (!merged.mechanism.empty()) {
        spec.algorithms.clear();
        for (const std::string& item : split_list(merged.mechanism))
            spec.algorithms.push_back(AlgorithmSpec::parse(item));
    }
    if (!merged.engine.empty()) spec.engine = parse_engine(merged.engine);
    if (!merged.family.empty()) spec.family = parse_family(merged.family);
    if (!merged.replicates.empty()) spec.replicates = parse_size(merged.replicates, "replicates");
    if (!merged.seed.empty()) spec.seed = parse_u64(merged.seed, "seed");
    if (!merged.w.empty()) spec.w = parse_size(merged.w, "w");
    if (!merged.p1.empty()) spec.p1 = parse_real(merged.p1, "p1");
    if (!merged.epsilon.empty()) spec.epsilon_guard = parse_real(merged.epsilon, "epsilon");
    spec.target_specs = split_list(merged.targets);
    spec.out = merged.out;
    if (!merged.jobs.empty()) spec.jobs = static_cast<unsigned>(parse_u64(merged.jobs, "jobs"));

    for (std::size_t n : spec.n_values)
        if (n == 0) throw std::invalid_argument("n: must be positive");
    for (std::size_t k : spec.k_values)
        if (k == 0) throw std::invalid_argument("k: must be positive");
    if (spec.replicates == 0) throw std::invalid_argument("replicates: must be positive");
    if (spec.w == 0) throw std::invalid_argument("w: must be positive");
    if (spec.p1 >= 0.0 && spec.p1 > 1.0) throw std::invalid_argument("p1: must lie in [0, 1]");

    const bool needs_tau = std::any_of(spec.algorithms.begin(), spec.algorithms.end(),
                                       [](const AlgorithmSpec& a) { return a.uses_tau(); });
    if (needs_tau && spec.tau_values.empty())
        throw std::invalid_argument("tau: required when the grid includes grg");
    return spec;
}

std::string fmt_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

std::string spec_hash(const ExperimentSpec& spec) {
    std::ostringstream canon;
    canon << "command=" << static_cast<int>(spec.command) << ";n=";
    for (std::size_t n : spec.n_values) canon << n << ",";
    canon << ";k=";
    for (std::size_t k : spec.k_values) canon << k << ",";
    canon << ";tau=";
    for (const TauSpec& t : spec.tau_values) canon << t.raw << ",";
    canon << ";alg=";
    for (const AlgorithmSpec& a : spec.algorithms) canon << a.name() << ",";
    canon << ";engine=" << to_string(spec.engine) << ";family=" << to_string(spec.family)
          << ";replicates=" << spec.replicates << ";seed=" << spec.seed << ";w=" << spec.w
          << ";p1=" << fmt_double(spec.p1) << ";eps=" << fmt_double(spec.epsilon_guard)
          << ";targets=";
    for (const std::string& t : spec.target_specs) canon << t << ",";
    const std::string text = canon.str();
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

void write_table(const Table& table, const std::string& path) {
    const bool dat = path.size() > 4 && path.compare(path.size() - 4, 4, ".dat") == 0;
    std::ostringstream out;
    for (const auto& [key, value] : table.metadata) out << "# " << key << " = " << value << "\n";
    if (dat) {
        out << "# columns: " << table.header[table.dat_x] << " " << table.header[table.dat_y] << "\n";
        for (const auto& row : table.rows) {
            const std::string& x = row[table.dat_x];
            const std::string& y = row[table.dat_y];
            if (x == "-" || y == "-") continue;
            out << x << " " << y << "\n";
        }
    } else {
        for (std::size_t c = 0; c < table.header.size(); ++c)
            out << table.header[c] << (c + 1 < table.header.size() ? "," : "");
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                out << row[c] << (c + 1 < row.size() ? "," : "");
            out << "\n";
        }
    }
    if (path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
        file << out.str();
    }
}

namespace {

/// Master seed for one grid point, derived so distinct grid points never
/// share replicate streams.
std::uint64_t grid_seed(std::uint64_t master, std::size_t grid_index) {
    return replicate_seed(master ^ 0xC3A5C85C97CB3127ULL, grid_index);
}

std::vector<std::size_t> resolve_targets(const std::vector<std::string>& specs, std::size_t n,
                                         Command command) {
    std::vector<std::size_t> targets;
    if (specs.empty()) {
        if (command == Command::fixed_target) {
            // default grid: twenty evenly spaced targets up to n
            const std::size_t steps = std::min<std::size_t>(20, n);
            for (std::size_t s = 1; s <= steps; ++s)
                targets.push_back(static_cast<std::size_t>(std::llround(
                    static_cast<double>(s) * static_cast<double>(n) / static_cast<double>(steps))));
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        }
        return targets;
    }
    for (const std::string& item : specs) {
        if (!item.empty() && item.back() == 'n') {
            const double frac = item.size() == 1 ? 1.0 : parse_real(item.substr(0, item.size() - 1), "targets");
            if (!(frac > 0.0 && frac <= 1.0))
                throw std::invalid_argument("targets: fraction must lie in (0, 1], got '" + item + "'");
            targets.push_back(static_cast<std::size_t>(std::llround(frac * static_cast<double>(n))));
        } else {
            targets.push_back(parse_size(item, "targets"));
        }
    }
    for (std::size_t t : targets)
        if (t == 0 || t > n) throw std::invalid_argument("targets: must lie in (0, n]");
    for (std::size_t j = 1; j < targets.size(); ++j)
        if (targets[j] <= targets[j - 1])
            throw std::invalid_argument("targets: must be strictly increasing");
    return targets;
}

void base_metadata(Table& table, const ExperimentSpec& spec, const char* command) {
    table.metadata.emplace_back("command", command);
    table.metadata.emplace_back("spec", spec_hash(spec));
    table.metadata.emplace_back("seed", std::to_string(spec.seed));
    table.metadata.emplace_back("engine", to_string(spec.engine));
    table.metadata.emplace_back("family", to_string(spec.family));
    std::string taus;
    for (const TauSpec& t : spec.tau_values) taus += (taus.empty() ? "" : ",") + t.raw;
    if (!taus.empty()) table.metadata.emplace_back("tau", taus);
}

std::string model_name(const ExperimentSpec& spec, const AlgorithmSpec& algorithm) {
    if (spec.engine == EngineKind::exact || algorithm.kind == AlgorithmSpec::Kind::one_plus_one_ea)
        return "bitstring";
    return spec.family == OperatorFamily::mbitflip ? "geometric-dominant" : "geometric-exact";
}

RunConfig make_run_config(const ExperimentSpec& spec, const AlgorithmSpec& algorithm,
                          std::size_t n, std::size_t k, const TauSpec* tau,
                          const std::vector<std::size_t>& targets, std::size_t grid_index) {
    RunConfig config;
    config.n = n;
    config.engine = spec.engine;
    config.seed = grid_seed(spec.seed, grid_index);
    config.targets = targets;
    if (algorithm.kind == AlgorithmSpec::Kind::one_plus_one_ea) {
        config.set = HeuristicSet::single_sbm(1.0 / static_cast<double>(n));
        config.mechanism.kind = MechanismKind::simple_random;
        config.engine = EngineKind::exact;  // the EA baseline is never fast-sampled
        return config;
    }
    config.set = HeuristicSet::canonical(spec.family, k);
    config.mechanism.kind = algorithm.mechanism;
    if (algorithm.uses_tau()) config.mechanism.tau = tau ? tau->resolve(n) : 1;
    if (algorithm.mechanism == MechanismKind::simple_random && spec.p1 >= 0.0) {
        if (k != 2) throw std::invalid_argument("p1: only meaningful for k = 2");
        config.mechanism.weights = {spec.p1, 1.0 - spec.p1};
    }
    return config;
}

}  // namespace

Table run_theory(const ExperimentSpec& spec) {
    Table table;
    base_metadata(table, spec, "theory");
    table.metadata.emplace_back("w", std::to_string(spec.w));
    table.header = {"algorithm", "k",         "n",       "tau",  "tau_over_n",
                    "w",         "constant",  "tau_valid", "guarded", "spec", "seed"};
    table.dat_x = 4;
    table.dat_y = 6;
    const std::string hash = spec_hash(spec);
    const std::string seed = std::to_string(spec.seed);

    // grid axes expand in declaration order: n, k, tau, algorithm;
    // algorithms without a learning period appear once per (n, k)
    for (std::size_t n : spec.n_values) {
        for (std::size_t k : spec.k_values) {
            for (std::size_t t = 0; t < std::max<std::size_t>(1, spec.tau_values.size()); ++t) {
                const TauSpec* tau = t < spec.tau_values.size() ? &spec.tau_values[t] : nullptr;
                for (const AlgorithmSpec& algorithm : spec.algorithms) {
                    if (!algorithm.uses_tau() && t > 0) continue;
                    TheoryQuery query;
                    query.k = k;
                    query.n = n;
                    query.w = spec.w;
                    query.epsilon_guard = spec.epsilon_guard;
                    query.family = spec.family;
                    if (algorithm.uses_tau()) {
                        query.tau_over_n = tau->resolve_over_n(n);
                        const BoundValue bound = grg_upper_bound(query);
                        table.rows.push_back({algorithm.name(), std::to_string(k), std::to_string(n),
                                              tau->raw, fmt_double(query.tau_over_n),
                                              std::to_string(spec.w), fmt_double(bound.value),
                                              bound.tau_in_domain ? "yes" : "no",
                                              bound.guarded ? "yes" : "no", hash, seed});
                        continue;
                    }
                    double constant = 0.0;
                    if (algorithm.kind == AlgorithmSpec::Kind::optimal) {
                        constant = rt_opt_k(k, n);
                    } else if (algorithm.kind == AlgorithmSpec::Kind::one_plus_one_ea) {
                        constant = std::expm1(1.0) / 2.0;  // (e-1)/2, mutation rate 1/n
                    } else if (algorithm.mechanism == MechanismKind::simple_random) {
                        constant = (spec.p1 >= 0.0 && k == 2) ? rt_simple_random_two(spec.p1)
                                                              : rt_simple_random_k(k, n);
                    } else {
                        // permutation, greedy and random gradient share the
                        // uniform simple-random constant
                        constant = rt_simple_random_k(k, n);
                    }
                    table.rows.push_back({algorithm.name(), std::to_string(k), std::to_string(n),
                                          "-", "-", "-", fmt_double(constant), "yes", "no", hash,
                                          seed});
                }
            }
        }
    }
    return table;
}

Table run_simulate(const ExperimentSpec& spec) {
    Table table;
    base_metadata(table, spec, spec.command == Command::sweep ? "sweep" : "simulate");
    table.metadata.emplace_back("replicates", std::to_string(spec.replicates));
    table.header = {"algorithm", "engine", "model",        "family",  "n",
                    "k",         "tau",    "tau_resolved", "replicates", "mean_evals",
                    "stddev",    "mean_over_n2", "spec",   "seed"};
    const bool tau_sweep = spec.tau_values.size() > 1 && spec.n_values.size() <= 1;
    table.dat_x = tau_sweep ? 7 : 4;
    table.dat_y = 11;
    const std::string hash = spec_hash(spec);
    const std::string seed = std::to_string(spec.seed);

    std::size_t grid_index = 0;
    for (std::size_t n : spec.n_values) {
        for (std::size_t k : spec.k_values) {
            for (std::size_t t = 0; t < std::max<std::size_t>(1, spec.tau_values.size()); ++t) {
                for (const AlgorithmSpec& algorithm : spec.algorithms) {
                    if (!algorithm.uses_tau() && t > 0) continue;
                    const TauSpec* tau =
                        algorithm.uses_tau() && t < spec.tau_values.size() ? &spec.tau_values[t] : nullptr;
                    const RunConfig config =
                        make_run_config(spec, algorithm, n, k, tau, {}, grid_index++);
                    const std::vector<RunResult> results =
                        run_replicates(config, spec.replicates, spec.jobs);
                    const std::vector<std::size_t> targets = effective_targets(config);
                    const AggregateStats stats = aggregate(results, n, targets);
                    table.rows.push_back(
                        {algorithm.name(), to_string(config.engine), model_name(spec, algorithm),
                         to_string(spec.family), std::to_string(n), std::to_string(k),
                         tau ? tau->raw : "-",
                         tau ? std::to_string(tau->resolve(n)) : "-",
                         std::to_string(spec.replicates), fmt_double(stats.mean),
                         fmt_double(stats.stddev), fmt_double(stats.normalised_mean), hash, seed});
                }
            }
        }
    }
    return table;
}

Table run_fixed_target(const ExperimentSpec& spec) {
    Table table;
    base_metadata(table, spec, "fixed-target");
    table.metadata.emplace_back("replicates", std::to_string(spec.replicates));
    table.metadata.emplace_back("w", std::to_string(spec.w));
    table.header = {"algorithm", "engine", "model", "family", "n", "k", "tau", "target",
                    "replicates", "mean_hitting", "stddev", "mean_over_n2", "theory_constant",
                    "spec", "seed"};
    table.dat_x = 7;
    table.dat_y = 9;
    const std::string hash = spec_hash(spec);
    const std::string seed = std::to_string(spec.seed);

    std::size_t grid_index = 0;
    for (std::size_t n : spec.n_values) {
        const std::vector<std::size_t> targets =
            resolve_targets(spec.target_specs, n, Command::fixed_target);
        for (std::size_t k : spec.k_values) {
            for (std::size_t t = 0; t < std::max<std::size_t>(1, spec.tau_values.size()); ++t) {
                for (const AlgorithmSpec& algorithm : spec.algorithms) {
                    if (!algorithm.uses_tau() && t > 0) continue;
                    const TauSpec* tau =
                        algorithm.uses_tau() && t < spec.tau_values.size() ? &spec.tau_values[t] : nullptr;
                    const RunConfig config =
                        make_run_config(spec, algorithm, n, k, tau, targets, grid_index++);
                    const std::vector<RunResult> results =
                        run_replicates(config, spec.replicates, spec.jobs);
                    const std::vector<std::size_t> expanded = effective_targets(config);
                    const AggregateStats stats = aggregate(results, n, expanded);
                    for (const TargetStats& hit : stats.per_target) {
                        std::string theory = "-";
                        TheoryQuery query;
                        query.k = k;
                        query.n = n;
                        query.w = spec.w;
                        query.family = spec.family;
                        query.x_over_n = static_cast<double>(hit.target) / static_cast<double>(n);
                        if (algorithm.kind == AlgorithmSpec::Kind::mechanism &&
                            algorithm.mechanism == MechanismKind::simple_random && spec.p1 < 0.0) {
                            theory = fmt_double(
                                fixed_target_theory(query, FixedTargetMechanism::simple_random_k).value);
                        } else if (algorithm.uses_tau() && tau != nullptr) {
                            query.tau_over_n = tau->resolve_over_n(n);
                            theory = fmt_double(
                                fixed_target_theory(query, FixedTargetMechanism::grg).value);
                        }
                        table.rows.push_back({algorithm.name(), to_string(config.engine),
                                              model_name(spec, algorithm), to_string(spec.family),
                                              std::to_string(n), std::to_string(k),
                                              tau ? tau->raw : "-", std::to_string(hit.target),
                                              std::to_string(spec.replicates), fmt_double(hit.mean),
                                              fmt_double(hit.stddev), fmt_double(hit.normalised_mean),
                                              theory, hash, seed});
                    }
                }
            }
        }
    }
    return table;
}

Table validation_table(const std::vector<ValidationCheck>& checks) {
    Table table;
    table.metadata.emplace_back("command", "validate");
    table.header = {"check", "source", "expected", "observed", "tolerance", "verdict"};
    table.dat_x = 2;
    table.dat_y = 3;
    for (const ValidationCheck& check : checks)
        table.rows.push_back({check.name, check.source, fmt_double(check.expected),
                              fmt_double(check.observed), fmt_double(check.tolerance),
                              check.pass ? "pass" : "FAIL"});
    return table;
}

int run_experiment(const ExperimentSpec& spec) {
    switch (spec.command) {
        case Command::theory: {
            write_table(run_theory(spec), spec.out);
            return 0;
        }
        case Command::simulate:
        case Command::sweep: {
            write_table(run_simulate(spec), spec.out);
            return 0;
        }
        case Command::fixed_target: {
            write_table(run_fixed_target(spec), spec.out);
            return 0;
        }
        case Command::validate: {
            const std::vector<ValidationCheck> checks = run_validation(spec.jobs);
            write_table(validation_table(checks), spec.out);
            const bool all_pass =
                std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
            return all_pass ? 0 : 2;
        }
    }
    return 1;
}

}  // namespace hhlab
