// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// Command-line front end. Exit codes: 0 ok, 1 validation failure, 2 config error,
// 3 numerical error, 4 solver infeasible.

#include "pppmimo/commands.hpp"
#include "pppmimo/errors.hpp"
#include "pppmimo/specfun.hpp"
#include "pppmimo/validation.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace pppmimo;

enum ExitCode
{
    kOk = 0,
    kValidationFailed = 1,
    kConfigError = 2,
    kNumericalError = 3,
    kSolverInfeasible = 4
};

struct CommonOptions
{
    std::string config;
    std::string preset;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    bool quick = false;
};

void add_common(CLI::App *sub, CommonOptions &o)
{
    sub->add_option("--config", o.config, "JSON experiment configuration");
    sub->add_option("--preset", o.preset, "named configuration (fig1..fig15, table2..table4)");
    sub->add_option("--out", o.out, "output CSV path (default: stdout)");
    sub->add_option("--seed", o.seed, "override the simulation seed");
    sub->add_option("--trials", o.trials, "override the Monte Carlo trial count");
    sub->add_flag("--quick", o.quick, "reduced trial counts");
}

ExperimentConfig resolve(const CommonOptions &o)
{
    if (o.config.empty() == o.preset.empty())
        throw ConfigError("give exactly one of --config or --preset");
    json j = o.config.empty() ? preset(o.preset) : json();
    ExperimentConfig c = o.config.empty() ? parse_config(j) : load_config_file(o.config);
    if (o.seed)
    {
        c.sim.seed = *o.seed;
        c.resolved["sim"]["seed"] = *o.seed;
    }
    if (o.trials)
        c.sim.trials = *o.trials;
    if (o.quick)
        c.sim.trials = std::max<std::uint64_t>(1, c.sim.trials / 10);
    c.sim.validate();
    c.resolved["sim"]["trials"] = c.sim.trials;
    return c;
}

void emit(const std::string &text, const std::string &path)
{
    if (path.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot write '" + path + "'");
    f << text;
}

int table_number(const std::string &preset_name)
{
    if (preset_name.rfind("table", 0) == 0 && preset_name.size() == 6)
        return preset_name[5] - '0';
    return 0;
}

void apply_thread_cap()
{
#ifdef _OPENMP
    if (const char *env = std::getenv("PPP_MIMO_THREADS"))
    {
        const int n = std::atoi(env);
        if (n >= 1)
            omp_set_num_threads(n);
    }
#endif
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"ppp-mimo: outage, throughput and capacity of multi-antenna slotted ALOHA networks"};
    app.require_subcommand(1);
    bool list = false;
    app.add_flag("--list-presets", list, "print preset names and exit");

    CommonOptions an, si, op, cm;
    int table = 0;
    auto *analyze = app.add_subcommand("analyze", "closed-form sweep");
    add_common(analyze, an);
    analyze->add_option("--table", table, "threshold table 2, 3 or 4")->check(CLI::Range(2, 4));
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo sweep");
    add_common(simulate, si);
    auto *optimize = app.add_subcommand("optimize", "optimizers");
    add_common(optimize, op);
    auto *compare = app.add_subcommand("compare-mac", "slotted ALOHA vs coordinated access region");
    add_common(compare, cm);

    bool vquick = false;
    std::string fault;
    auto *validate = app.add_subcommand("validate", "run the invariant suite");
    validate->add_flag("--quick", vquick, "reduced trial counts");
    validate->add_option("--inject-fault", fault, "test hook")->group("");

    if (argc >= 2 && std::string(argv[1]) == "--list-presets")
    {
        for (const auto &n : preset_names())
            std::cout << n << '\n';
        std::cout << "table2\ntable3\ntable4\n";
        return kOk;
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    apply_thread_cap();
    try
    {
        if (*validate)
        {
            if (!fault.empty())
            {
                if (fault != "stirling")
                    throw ConfigError("unknown fault '" + fault + "'");
                specfun::testing::corrupt_stirling_table();
            }
            const bool ok = print_report(run_validation(vquick), std::cout);
            return ok ? kOk : kValidationFailed;
        }

        std::ostringstream os;
        if (*analyze && (table || table_number(an.preset)))
        {
            write_table(compute_table(table ? table : table_number(an.preset)), os);
            emit(os.str(), an.out);
            return kOk;
        }

        CommonOptions &o = *analyze ? an : *simulate ? si : *optimize ? op : cm;
        const ExperimentConfig cfg = resolve(o);
        const std::string name = (*analyze ? analyze : *simulate ? simulate : *optimize ? optimize : compare)->get_name();
        write_csv_preamble(os, name, cfg);
        if (*analyze)
            run_analyze(cfg, os);
        else if (*simulate)
            run_simulate(cfg, os);
        else if (*optimize)
            run_optimize(cfg, os);
        else
            run_compare_mac(cfg, os);
        emit(os.str(), o.out);
        return kOk;
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    catch (const DomainError &e)
    {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kConfigError;
    }
    catch (const NumericalInstability &e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumericalError;
    }
    catch (const SolverError &e)
    {
        std::cerr << "solver: " << e.what() << '\n';
        return kSolverInfeasible;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalError;
    }
}
