// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#include "pppmimo/commands.hpp"
#include "pppmimo/analysis.hpp"
#include "pppmimo/errors.hpp"
#include "pppmimo/mcsim.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

namespace pppmimo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class CsvRow
{
public:
    explicit CsvRow(std::ostream &os) : os_(os) {}
    ~CsvRow() { os_ << '\n'; }
    CsvRow &operator<<(double v) { return put(format_number(v)); }
    CsvRow &operator<<(int v) { return put(std::to_string(v)); }
    CsvRow &operator<<(std::uint64_t v) { return put(std::to_string(v)); }
    CsvRow &operator<<(const std::string &s) { return put(s); }
    CsvRow &operator<<(const char *s) { return put(s); }

private:
    CsvRow &put(const std::string &s)
    {
        if (!first_)
            os_ << ',';
        os_ << s;
        first_ = false;
        return *this;
    }
    std::ostream &os_;
    bool first_ = true;
};

void header(std::ostream &os, std::initializer_list<const char *> cols)
{
    bool first = true;
    for (const char *c : cols)
    {
        os << (first ? "" : ",") << c;
        first = false;
    }
    os << '\n';
}

void require(const std::vector<double> &v, const char *name)
{
    if (v.empty())
        throw ConfigError(std::string("network.") + name + " is required for this command");
}

// Calls fn(net) for every combination; lambda and beta vary fastest (beta innermost).
void for_each_network(const ExperimentConfig &c, const std::function<void(const NetworkParams &)> &fn,
                      bool with_beta = true)
{
    require(c.rho, "rho");
    require(c.r_tr, "r_tr");
    require(c.alpha, "alpha");
    require(c.lambda, "lambda");
    if (with_beta)
        require(c.beta, "beta");
    const std::vector<double> beta_axis = with_beta ? c.beta : std::vector<double>{1.0};
    for (double rho : c.rho)
        for (double r : c.r_tr)
            for (double a : c.alpha)
                for (double p : c.p)
                    for (double lam : c.lambda)
                        for (double b : beta_axis)
                        {
                            NetworkParams n;
                            n.rho = rho;
                            n.r_tr = r;
                            n.alpha = a;
                            n.p = p;
                            n.lambda = lam;
                            n.beta = b;
                            try
                            {
                                n.validate();
                            }
                            catch (const DomainError &e)
                            {
                                throw ConfigError(e.what());
                            }
                            fn(n);
                        }
}

void scheme_cols(CsvRow &row, const SchemeSpec &s)
{
    row << to_string(s.variant) << s.M << s.N << (s.code ? s.code->name() : std::string());
}

void net_cols(CsvRow &row, const NetworkParams &n)
{
    row << n.lambda << n.p << n.alpha << n.r_tr << n.rho << n.beta;
}

void require_schemes(const ExperimentConfig &c)
{
    if (c.schemes.empty())
        throw ConfigError("at least one scheme is required");
}

std::vector<int> antenna_list(const ExperimentConfig &c)
{
    if (!c.antennas.empty())
        return c.antennas;
    std::vector<int> out;
    for (const auto &s : c.schemes)
        out.push_back(s.N);
    if (out.empty())
        throw ConfigError("antennas (or a scheme with N) is required");
    return out;
}

double tc_or_zero(const std::function<double()> &f)
{
    try
    {
        return f();
    }
    catch (const SolverError &)
    {
        return 0.0;
    }
}

void analyze_ca(const ExperimentConfig &c, std::ostream &os)
{
    if (c.r_gz.empty())
        throw ConfigError("r_gz is required in ca mode");
    header(os, {"lambda", "r_gz", "alpha", "r_tr", "rho", "beta", "lambda_ca", "ca_bound", "ca_bound_dense"});
    for_each_network(c, [&](const NetworkParams &n) {
        for (double g : c.r_gz)
        {
            CsvRow row(os);
            row << n.lambda << g << n.alpha << n.r_tr << n.rho << n.beta << ca_intensity(n.lambda, g)
                << ca_throughput_bound(n.lambda, g, n)
                << ca_throughput_bound(std::numeric_limits<double>::infinity(), g, n);
        }
    });
}

} // namespace

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv_preamble(std::ostream &os, const std::string &command, const ExperimentConfig &cfg)
{
    os << "# ppp-mimo " << command << " v" << kVersion << '\n';
    os << "# rng: " << kRngVersion << '\n';
    os << "# seed: " << cfg.sim.seed << '\n';
    os << "# config: " << cfg.resolved.dump() << '\n';
}

void run_analyze(const ExperimentConfig &c, std::ostream &os)
{
    if (c.mode == SimMode::CoordinatedAccess)
        return analyze_ca(c, os);
    require_schemes(c);
    const bool tc = !c.epsilon.empty();
    if (tc)
        header(os, {"variant", "M", "N", "code", "lambda", "p", "alpha", "r_tr", "rho", "beta", "outage",
                    "throughput", "epsilon", "f_su", "tc_small_eps", "tc_large_antenna", "tc_numeric",
                    "tc_exact_zf_full"});
    else
        header(os, {"variant", "M", "N", "code", "lambda", "p", "alpha", "r_tr", "rho", "beta", "outage",
                    "throughput"});
    for (const auto &s : c.schemes)
        for_each_network(c, [&](const NetworkParams &n) {
            const GammaLawParams glp = gamma_params(s, n);
            const double F = outage_cdf({glp, n});
            const double T = throughput(s, n);
            if (!tc)
            {
                CsvRow row(os);
                scheme_cols(row, s);
                net_cols(row, n);
                row << F << T;
                return;
            }
            const double fsu = single_user_outage(glp, n.beta);
            for (double eps : c.epsilon)
            {
                if (!(eps > 0.0 && eps < 1.0))
                    throw ConfigError("epsilon must lie in (0,1)");
                const TcQuery tq{glp, glp.zeta, eps, n};
                const double small = tc_small_eps(tq);
                const double large = tc_large_antenna(tq);
                const double numeric =
                    eps <= fsu ? 0.0 : tc_or_zero([&] { return tc_numeric(glp, n.beta, eps, n.alpha); });
                const double exact =
                    s.variant == Variant::SM_ZF && s.M == s.N ? tc_exact_zf_full(s.N, eps, n) : kNaN;
                CsvRow row(os);
                scheme_cols(row, s);
                net_cols(row, n);
                row << F << T << eps << fsu << small << large << numeric << exact;
            }
        });
}

void run_simulate(const ExperimentConfig &c, std::ostream &os)
{
    if (c.mode == SimMode::CoordinatedAccess)
    {
        if (c.r_gz.empty())
            throw ConfigError("r_gz is required in ca mode");
        header(os, {"lambda", "r_gz", "alpha", "r_tr", "rho", "beta", "ca_bound", "ca_mc", "std_error", "trials",
                    "seed"});
        for_each_network(c, [&](const NetworkParams &n) {
            for (double g : c.r_gz)
            {
                const SimEstimate e = simulate_ca(n.lambda, g, n, c.sim);
                CsvRow row(os);
                row << n.lambda << g << n.alpha << n.r_tr << n.rho << n.beta << ca_throughput_bound(n.lambda, g, n)
                    << e.value << e.std_error << e.trials << e.seed;
            }
        });
        return;
    }
    require_schemes(c);
    require(c.beta, "beta");
    header(os, {"variant", "M", "N", "code", "lambda", "p", "alpha", "r_tr", "rho", "beta", "outage",
                "outage_mc", "std_error", "trials", "seed", "redraws"});
    for (const auto &s : c.schemes)
        for_each_network(
            c,
            [&](const NetworkParams &n0) {
                const auto est = simulate_outage_curve(s, n0, c.beta, c.sim, c.stream);
                for (std::size_t i = 0; i < c.beta.size(); ++i)
                {
                    NetworkParams n = n0;
                    n.beta = c.beta[i];
                    CsvRow row(os);
                    scheme_cols(row, s);
                    net_cols(row, n);
                    row << outage_cdf({gamma_params(s, n), n}) << est[i].value << est[i].std_error << est[i].trials
                        << est[i].seed << est[i].redraws;
                }
            },
            false);
}

void run_optimize(const ExperimentConfig &cfg, std::ostream &os)
{
    ExperimentConfig c = cfg;
    const std::string &t = c.target;
    if (c.lambda.empty() && (t == "lambda_opt_zf" || t == "kappa_star"))
        c.lambda = {0.0}; // not an input of these optimizers
    if (t == "lambda_opt_zf")
    {
        header(os, {"N", "p", "alpha", "r_tr", "rho", "beta", "lambda_opt", "throughput_opt"});
        for (int N : antenna_list(c))
            for_each_network(c, [&](const NetworkParams &n0) {
                NetworkParams n = n0;
                n.lambda = lambda_opt_zf(N, n0);
                CsvRow row(os);
                row << N << n.p << n.alpha << n.r_tr << n.rho << n.beta << n.lambda
                    << throughput(SchemeSpec::sm_zf(N, N), n);
            });
    }
    else if (t == "n_opt_zf")
    {
        header(os, {"lambda", "p", "alpha", "r_tr", "rho", "beta", "n_root", "capped", "n_opt", "throughput_minus",
                    "throughput_opt", "throughput_plus"});
        for_each_network(c, [&](const NetworkParams &n) {
            const AntennaOptimum o = n_opt_zf(n);
            auto T = [&](int N) { return N >= 1 ? throughput(SchemeSpec::sm_zf(N, N), n) : kNaN; };
            CsvRow row(os);
            net_cols(row, n);
            row << o.root << (o.capped ? 1 : 0) << o.value << T(o.value - 1) << T(o.value) << T(o.value + 1);
        });
    }
    else if (t == "m_opt_lowbeta")
    {
        header(os, {"receiver", "N", "lambda", "p", "alpha", "r_tr", "rho", "beta", "m_root", "capped", "m_opt",
                    "throughput_minus", "throughput_opt", "throughput_plus"});
        for (int N : antenna_list(c))
            for_each_network(c, [&](const NetworkParams &n) {
                const AntennaOptimum o = m_opt_lowbeta(c.receiver, N, n);
                auto T = [&](int M) {
                    if (M < 1 || M > N)
                        return kNaN;
                    return throughput(c.receiver == Receiver::MRC ? SchemeSpec::sm_mrc(M, N) : SchemeSpec::sm_zf(M, N),
                                      n);
                };
                CsvRow row(os);
                row << to_string(c.receiver) << N;
                net_cols(row, n);
                row << o.root << (o.capped ? 1 : 0) << o.value << T(o.value - 1) << T(o.value) << T(o.value + 1);
            });
    }
    else if (t == "kappa_opt_lowbeta")
    {
        header(os, {"receiver", "lambda", "p", "alpha", "r_tr", "rho", "beta", "kappa_opt"});
        for_each_network(c, [&](const NetworkParams &n) {
            CsvRow row(os);
            row << to_string(c.receiver);
            net_cols(row, n);
            row << kappa_opt_lowbeta(c.receiver, n);
        });
    }
    else if (t == "kappa_star")
    {
        if (c.epsilon.empty())
            throw ConfigError("kappa_star needs epsilon for the capacity objective");
        header(os, {"receiver", "N", "p", "alpha", "r_tr", "rho", "beta", "epsilon", "kappa_ratio", "m_star",
                    "tc_minus", "tc_opt", "tc_plus"});
        for (int N : antenna_list(c))
            for_each_network(c, [&](const NetworkParams &n) {
                for (double eps : c.epsilon)
                {
                    const int M = kappa_star(c.receiver, n, N);
                    // an infeasible optimum is an error; infeasible neighbours report zero capacity
                    auto TC = [&](int m) {
                        if (m < 1 || m > N)
                            return kNaN;
                        const SchemeSpec s =
                            c.receiver == Receiver::MRC ? SchemeSpec::sm_mrc(m, N) : SchemeSpec::sm_zf(m, N);
                        const GammaLawParams glp = gamma_params(s, n);
                        if (m != M && eps <= single_user_outage(glp, n.beta))
                            return 0.0;
                        return tc_numeric(glp, n.beta, eps, n.alpha, Precision::Extended);
                    };
                    const double tc_opt = TC(M);
                    CsvRow row(os);
                    row << to_string(c.receiver) << N << n.p << n.alpha << n.r_tr << n.rho << n.beta << eps
                        << kappa_star_ratio(c.receiver, n) << M << TC(M - 1) << tc_opt << TC(M + 1);
                }
            });
    }
    else if (t == "ca_optimal_guard")
    {
        header(os, {"lambda", "alpha", "r_tr", "rho", "beta", "r_gz_opt", "ca_bound_opt"});
        for_each_network(c, [&](const NetworkParams &n) {
            const double g = ca_optimal_guard(n.lambda, n);
            CsvRow row(os);
            row << n.lambda << n.alpha << n.r_tr << n.rho << n.beta << g << ca_throughput_bound(n.lambda, g, n);
        });
    }
    else
        throw ConfigError("optimize.target must be one of lambda_opt_zf, n_opt_zf, m_opt_lowbeta, "
                          "kappa_opt_lowbeta, kappa_star, ca_optimal_guard");
}

void run_compare_mac(const ExperimentConfig &c, std::ostream &os)
{
    require(c.lambda, "lambda");
    require(c.p, "p");
    for (const auto &s : c.schemes)
        if (s.M != 1)
            throw ConfigError("compare-mac uses single-stream ALOHA (M = 1)");
    header(os, {"N", "lambda", "p", "alpha", "r_tr", "rho", "beta", "aloha_throughput", "ca_bound", "r_gz_opt",
                "aloha_wins"});
    const auto Ns = antenna_list(c);
    // guard zone depends only on lambda and the link parameters
    for (double rho : c.rho)
        for (double r : c.r_tr)
            for (double a : c.alpha)
                for (double b : c.beta)
                {
                    NetworkParams base;
                    base.rho = rho;
                    base.r_tr = r;
                    base.alpha = a;
                    base.beta = b;
                    std::vector<double> guard(c.lambda.size()), bound(c.lambda.size());
                    for (std::size_t i = 0; i < c.lambda.size(); ++i)
                    {
                        NetworkParams n = base;
                        n.lambda = c.lambda[i];
                        guard[i] = c.lambda[i] > 0.0 ? ca_optimal_guard(c.lambda[i], n) : kNaN;
                        bound[i] = c.lambda[i] > 0.0 ? ca_throughput_bound(c.lambda[i], guard[i], n) : 0.0;
                    }
                    for (int N : Ns)
                        for (std::size_t i = 0; i < c.lambda.size(); ++i)
                            for (double p : c.p)
                            {
                                NetworkParams n = base;
                                n.lambda = c.lambda[i];
                                n.p = p;
                                const double T = throughput(SchemeSpec::sm_mrc(1, N), n);
                                CsvRow row(os);
                                row << N << n.lambda << p << a << r << rho << b << T << bound[i] << guard[i]
                                    << (T > bound[i] ? 1 : 0);
                            }
                }
}

ThresholdTable compute_table(int which)
{
    ThresholdTable t;
    t.which = which;
    t.row_name = "rho_db";
    auto db = [](double x) { return std::pow(10.0, x / 10.0); };
    if (which == 2)
    {
        t.col_name = "beta_db";
        t.value_name = "inv_lambda_min";
        t.rows = {2, 5, 10, 20};
        t.cols = {1, 2, 5, 10, 20};
    }
    else if (which == 3)
    {
        t.col_name = "inv_lambda";
        t.value_name = "beta_min_db";
        t.rows = {2, 5, 10, 15};
        t.cols = {100, 50, 20, 12.5, 10};
    }
    else if (which == 4)
    {
        t.col_name = "inv_lambda";
        t.value_name = "beta_max_db";
        t.rows = {10, 15, 20, 25, 30};
        t.cols = {100, 50, 20, 10, 5};
    }
    else
        throw ConfigError("tables 2, 3 and 4 are available");

    for (double rho : t.rows)
    {
        std::vector<double> line;
        for (double col : t.cols)
        {
            NetworkParams n;
            n.rho = db(rho);
            n.r_tr = 5.0;
            n.p = 1.0;
            if (which == 2)
            {
                n.alpha = 2.1;
                n.beta = db(col);
                n.lambda = 1.0;
                const OutageQuery q{gamma_params(SchemeSpec::sm_mrc(1, 3), n), n};
                line.push_back(1.0 / dense_validity_threshold(q, 0.15));
            }
            else
            {
                n.alpha = which == 3 ? 4.0 : 3.0;
                n.lambda = 1.0 / col;
                n.beta = 1.0;
                const SchemeSpec s = which == 3 ? SchemeSpec::sm_mrc(1, 3) : SchemeSpec::sm_mrc(4, 4);
                const OutageQuery q{gamma_params(s, n), n};
                const auto kind = which == 3 ? AsymptoticKind::HighBeta : AsymptoticKind::LowBeta;
                line.push_back(10.0 * std::log10(asymptotic_validity_threshold(kind, q, 0.15)));
            }
        }
        t.values.push_back(line);
    }
    return t;
}

void write_table(const ThresholdTable &t, std::ostream &os)
{
    os << "# ppp-mimo table " << t.which << " v" << kVersion << '\n';
    os << "# " << t.value_name << " by " << t.row_name << " (rows) and " << t.col_name << " (columns)\n";
    os << t.row_name;
    for (double c : t.cols)
        os << ',' << t.col_name << '=' << format_number(c);
    os << '\n';
    for (std::size_t i = 0; i < t.rows.size(); ++i)
    {
        os << format_number(t.rows[i]);
        for (double v : t.values[i])
            os << ',' << format_number(v);
        os << '\n';
    }
}

} // namespace pppmimo
