// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// End-to-end acceptance checks. Prints one line per criterion and exits non-zero if any fails.

#include "pppmimo/analysis.hpp"
#include "pppmimo/commands.hpp"
#include "pppmimo/config.hpp"
#include "pppmimo/errors.hpp"
#include "pppmimo/mcsim.hpp"
#include "pppmimo/specfun.hpp"
#include "pppmimo/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace pppmimo;

namespace {

// Tolerances
constexpr double kTable2RelTol = 0.005;
constexpr double kTableDbTol = 0.05;
constexpr double kMcZ = 3.0;
constexpr std::uint64_t kMcTrials = 50000;
constexpr double kOstbcGap = 0.02;
constexpr std::size_t kKsSamples = 100000;
constexpr double kKsCrit1pct = 1.628;
constexpr double kScalingDevAt64 = 0.10;
constexpr double kCaRelTol = 0.10;

struct Verdict
{
    bool pass = false;
    std::string detail;
};

double db(double x)
{
    return std::pow(10.0, x / 10.0);
}

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Printed reference grids, rows by rho and columns as in compute_table().
const std::vector<std::vector<double>> kTable2 = {{6.500, 6.486, 6.383, 6.114, 5.506},
                                                  {12.447, 12.519, 12.520, 12.133, 10.981},
                                                  {33.478, 34.674, 36.900, 37.481, 34.638},
                                                  {111.483, 130.208, 193.050, 286.532, 335.569}};
const std::vector<std::vector<double>> kTable3 = {{-14.547, -14.078, -12.832, -11.543, -10.701},
                                                  {-11.421, -10.804, -8.925, -7.211, -6.142},
                                                  {-5.933, -4.827, -1.726, 0.885, 2.366},
                                                  {-0.078, 1.833, 6.569, 9.948, 11.699}};
const std::vector<std::vector<double>> kTable4 = {{-22.055, -22.660, -24.559, -27.033, -30.362},
                                                  {-18.164, -19.462, -22.518, -25.850, -29.788},
                                                  {-15.476, -17.467, -21.487, -25.346, -29.586},
                                                  {-14.0351, -16.501, -21.068, -25.171, -29.547},
                                                  {-13.435, -16.128, -20.921, -25.100, -29.508}};

Verdict table2()
{
    const ThresholdTable t = compute_table(2);
    double worst = 0.0;
    for (std::size_t i = 0; i < kTable2.size(); ++i)
        for (std::size_t j = 0; j < kTable2[i].size(); ++j)
            worst = std::max(worst, std::abs(t.values[i][j] / kTable2[i][j] - 1.0));
    return {worst <= kTable2RelTol, "max rel dev " + fmt("%.4f", worst) + " over 20 cells"};
}

Verdict tables34()
{
    std::string misses;
    double worst = 0.0;
    int bad = 0;
    auto scan = [&](int which, const std::vector<std::vector<double>> &ref) {
        const ThresholdTable t = compute_table(which);
        for (std::size_t i = 0; i < ref.size(); ++i)
            for (std::size_t j = 0; j < ref[i].size(); ++j)
            {
                const double dev = std::abs(t.values[i][j] - ref[i][j]);
                worst = std::max(worst, dev);
                if (dev > kTableDbTol)
                {
                    ++bad;
                    misses += " T" + std::to_string(which) + "(rho=" + fmt("%g", t.rows[i]) +
                              ",1/lambda=" + fmt("%g", t.cols[j]) + ") " + fmt("%.3f", t.values[i][j]) + " vs " +
                              fmt("%.3f", ref[i][j]);
                }
            }
    };
    scan(3, kTable3);
    scan(4, kTable4);
    return {bad == 0, "max dev " + fmt("%.3f", worst) + " dB, " + std::to_string(bad) + " of 45 cells out" + misses};
}

Verdict mc_vs_analytic()
{
    const NetworkParams base{0.0, 1.0, 3.1, 2.0, db(25.0), 1.0};
    const std::vector<double> betas{db(-3.0), db(3.0)};
    SimConfig cfg;
    cfg.trials = kMcTrials;
    cfg.seed = 3;
    double worst = 0.0;
    int points = 0;
    for (Variant v : {Variant::SM_MRC, Variant::SM_ZF})
        for (int M : {1, 2, 4})
        {
            const SchemeSpec s = v == Variant::SM_MRC ? SchemeSpec::sm_mrc(M, 4) : SchemeSpec::sm_zf(M, 4);
            for (int i = 0; i < 10; ++i)
            {
                NetworkParams n = base;
                n.lambda = 1e-3 * std::pow(100.0, i / 9.0);
                const auto est = simulate_outage_curve(s, n, betas, cfg);
                for (std::size_t b = 0; b < betas.size(); ++b)
                {
                    n.beta = betas[b];
                    const double F = outage_cdf({gamma_params(s, n), n});
                    // standard error under the analytic value, finite even when the estimate is 0 or 1
                    const double se = std::sqrt(std::max(F * (1.0 - F), 1e-300) / static_cast<double>(cfg.trials));
                    worst = std::max(worst, std::abs(est[b].value - F) / se);
                    ++points;
                }
            }
        }
    return {worst <= kMcZ, "max |z| " + fmt("%.2f", worst) + " over " + std::to_string(points) + " points"};
}

Verdict ostbc_accuracy()
{
    double worst_gap = 0.0;
    std::string where;
    for (const char *name : {"fig4", "fig5", "fig6"})
    {
        const ExperimentConfig c = parse_config(preset(name));
        const SchemeSpec &s = c.schemes.front();
        NetworkParams n{c.lambda.front(), c.p.front(), c.alpha.front(), c.r_tr.front(), c.rho.front(), 1.0};
        const auto est = simulate_outage_curve(s, n, c.beta, c.sim);
        for (std::size_t b = 0; b < c.beta.size(); ++b)
        {
            n.beta = c.beta[b];
            const double gap = std::abs(est[b].value - outage_cdf({gamma_params(s, n), n}));
            if (gap > worst_gap)
            {
                worst_gap = gap;
                where = name;
            }
        }
    }
    double worst_ks = 0.0;
    SimConfig kc;
    kc.trials = kKsSamples;
    kc.seed = 44;
    for (int M : {2, 3, 4})
    {
        const OstbcCode code = registry_code("cyclic<" + std::to_string(M) + ">");
        std::vector<double> xs = sample_k_sigma(code, 4, 1, kc);
        std::sort(xs.begin(), xs.end());
        const double shape = static_cast<double>(n_interf(code, 1)) / M;
        const double n = static_cast<double>(xs.size());
        double d = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            const double F = specfun::gamma_cdf(xs[i], shape, 1.0);
            d = std::max({d, (i + 1) / n - F, F - i / n});
        }
        worst_ks = std::max(worst_ks, d * std::sqrt(n) / kKsCrit1pct);
    }
    return {worst_gap <= kOstbcGap && worst_ks < 1.0, "max gap " + fmt("%.4f", worst_gap) + " (" + where +
                                                          "), cyclic KS / 1% critical " + fmt("%.3f", worst_ks)};
}

Verdict identities()
{
    bool ok = true;
    std::string detail;
    for (const auto &r : run_checks("analysis", true))
    {
        if (r.name != "single_stream_closed_form" && r.name != "zero_density_single_user" &&
            r.name != "success_at_optimal_density" && r.name != "zf_capacity_matches_inversion")
            continue;
        ok = ok && r.passed;
        detail += r.name + ": " + r.detail + "; ";
    }
    return {ok, detail};
}

Verdict small_eps()
{
    struct Case
    {
        std::string label;
        SchemeSpec scheme;
        NetworkParams net;
    };
    const std::vector<Case> cases{
        {"SM-MRC M=2", SchemeSpec::sm_mrc(2, 8), {0.0, 1.0, 4.0, 1.0, 1000.0, db(-10.0)}},
        {"SM-ZF M=2", SchemeSpec::sm_zf(2, 4), {0.0, 1.0, 4.0, 1.0, 1000.0, 1.0}},
        {"alamouti", SchemeSpec::ostbc(registry_code("alamouti"), 2), {0.0, 1.0, 4.0, 1.0, 1000.0, 1.0}}};
    bool ok = true;
    std::string detail;
    for (const auto &cs : cases)
    {
        const GammaLawParams g = gamma_params(cs.scheme, cs.net);
        const double fsu = single_user_outage(g, cs.net.beta);
        double prev = 1.0;
        detail += cs.label + " (F_SU " + fmt("%.1e", fsu) + "):";
        if (fsu > 1e-6)
            ok = false;
        for (double gap : {1e-2, 1e-3, 1e-4})
        {
            const double eps = fsu + gap;
            const double ref = tc_numeric(g, cs.net.beta, eps, cs.net.alpha);
            const double dev = std::abs(tc_small_eps({g, g.zeta, eps, cs.net}) / ref - 1.0);
            detail += " " + fmt("%.2e", dev);
            ok = ok && dev < prev;
            prev = dev;
        }
        detail += "; ";
    }
    return {ok, detail};
}

Verdict scaling()
{
    constexpr double eps = 0.01;
    bool ok = true;
    std::string detail;
    for (Receiver rx : {Receiver::MRC, Receiver::ZF})
    {
        const NetworkParams n{0.0, 1.0, 4.0, 1.0, 1000.0, rx == Receiver::MRC ? 0.5 : 1.0};
        const double c = tc_scaling_constant(rx, 0.5, eps, n);
        double prev = 1e300;
        detail += to_string(rx) + " kappa=1/2:";
        for (int N : {8, 16, 32, 64})
        {
            const SchemeSpec s = rx == Receiver::MRC ? SchemeSpec::sm_mrc(N / 2, N) : SchemeSpec::sm_zf(N / 2, N);
            const double tc = tc_numeric(gamma_params(s, n), n.beta, eps, n.alpha, Precision::Extended);
            const double dev = std::abs(tc / N / c - 1.0);
            detail += " " + fmt("%.4f", dev);
            ok = ok && dev < prev;
            prev = dev;
        }
        ok = ok && prev < kScalingDevAt64;
        detail += "; ";
    }
    {
        // cyclic code: tc / N^{2/alpha} settles, successive relative changes shrink
        const NetworkParams n{0.0, 1.0, 4.0, 1.0, 1000.0, 1.0};
        const OstbcCode code = registry_code("cyclic<2>");
        std::vector<double> v;
        for (int N : {4, 8, 16, 32})
            v.push_back(tc_numeric(gamma_params(SchemeSpec::ostbc(code, N), n), n.beta, eps, n.alpha,
                                   Precision::Extended) /
                        std::pow(N, 2.0 / n.alpha));
        detail += "cyclic<2> step changes:";
        double prev = 1e300;
        for (std::size_t i = 1; i < v.size(); ++i)
        {
            const double ch = std::abs(v[i] / v[i - 1] - 1.0);
            detail += " " + fmt("%.4f", ch);
            ok = ok && ch < prev;
            prev = ch;
        }
        ok = ok && prev < 0.01;
        detail += "; ";
    }
    {
        const NetworkParams n{0.0, 1.0, 4.0, 1.0, 1000.0, 1.0};
        std::vector<double> v;
        for (int N : {4, 9, 16, 25, 36, 49, 64})
        {
            const int M = static_cast<int>(std::floor(std::sqrt(N)));
            v.push_back(tc_numeric(gamma_params(SchemeSpec::sm_zf(M, N), n), n.beta, eps, n.alpha,
                                   Precision::Extended) /
                        N);
        }
        const bool decreasing = std::is_sorted(v.rbegin(), v.rend()) &&
                                std::adjacent_find(v.begin(), v.end()) == v.end();
        ok = ok && decreasing && v.back() < 0.7 * v.front();
        detail += "M=floor(sqrt N) tc/N " + fmt("%.3e", v.front()) + " -> " + fmt("%.3e", v.back()) +
                  (decreasing ? " decreasing" : " not decreasing");
    }
    return {ok, detail};
}

Verdict coordinated_access()
{
    const ExperimentConfig c = parse_config(preset("fig14"));
    NetworkParams n{0.0, 1.0, c.alpha.front(), c.r_tr.front(), c.rho.front(), c.beta.front()};
    double worst_z = -1e300;
    for (double lam : c.lambda)
        for (double g : c.r_gz)
        {
            const SimEstimate e = simulate_ca(lam, g, n, c.sim);
            worst_z = std::max(worst_z, (e.value - ca_throughput_bound(lam, g, n)) / e.std_error);
        }
    SimConfig hc = c.sim;
    hc.trials = 100000;
    double worst_bound = 0.0, worst_dense = 0.0;
    std::string dense_detail;
    for (double lam : c.lambda)
    {
        const double r = ca_optimal_guard(lam, n);
        const double sim = simulate_ca(lam, r, n, hc).value;
        worst_bound = std::max(worst_bound, std::abs(ca_throughput_bound(lam, r, n) / sim - 1.0));
        const double dev = std::abs(ca_throughput_bound(INFINITY, r, n) / sim - 1.0);
        worst_dense = std::max(worst_dense, dev);
        dense_detail += " " + fmt("%.3f", dev);
    }
    const bool ok = worst_z <= kMcZ && worst_bound <= kCaRelTol && worst_dense <= kCaRelTol;
    return {ok, "max (sim - bound)/sigma " + fmt("%.2f", worst_z) + ", bound vs sim at optimal guard " +
                    fmt("%.3f", worst_bound) + ", dense limit vs sim for lambda 0.03/0.1/0.3/1:" + dense_detail};
}

Verdict nesting()
{
    const ExperimentConfig c = parse_config(preset("fig15"));
    const NetworkParams n{0.0, 1.0, c.alpha.front(), c.r_tr.front(), c.rho.front(), c.beta.front()};
    std::vector<std::vector<std::vector<bool>>> regions;
    std::vector<int> counts;
    for (int N : c.antennas)
    {
        const SchemeSpec s = c.receiver == Receiver::ZF ? SchemeSpec::sm_zf(1, N) : SchemeSpec::sm_mrc(1, N);
        regions.push_back(aloha_vs_ca_region(s, n, c.lambda, c.p));
        int k = 0;
        for (const auto &row : regions.back())
            k += static_cast<int>(std::count(row.begin(), row.end(), true));
        counts.push_back(k);
    }
    bool ok = true;
    for (std::size_t a = 1; a < regions.size(); ++a)
    {
        for (std::size_t i = 0; i < c.lambda.size(); ++i)
            for (std::size_t j = 0; j < c.p.size(); ++j)
                ok = ok && (!regions[a - 1][i][j] || regions[a][i][j]);
        ok = ok && counts[a] > counts[a - 1];
    }
    std::string detail = "ALOHA-winning cells for N=2/3/4:";
    for (int k : counts)
        detail += " " + std::to_string(k);
    return {ok, detail + " of " + std::to_string(c.lambda.size() * c.p.size())};
}

Verdict specfun_suite()
{
    int bad = 0;
    std::string names;
    const auto rs = run_checks("specfun", false);
    for (const auto &r : rs)
        if (!r.passed)
        {
            ++bad;
            names += " " + r.name;
        }
    return {bad == 0, std::to_string(rs.size() - bad) + " of " + std::to_string(rs.size()) + " checks" + names};
}

} // namespace

int main()
{
    const std::vector<std::function<Verdict()>> criteria{table2,     tables34,         mc_vs_analytic, ostbc_accuracy,
                                                         identities, small_eps,        scaling,        coordinated_access,
                                                         nesting,    specfun_suite};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = criteria[i]();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += v.pass ? 0 : 1;
        std::cout << "criterion " << (i + 1) << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << "  ["
                  << fmt("%.1f", secs) << " s]" << std::endl;
    }
    std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
