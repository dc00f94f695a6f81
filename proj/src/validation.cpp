// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#include "pppmimo/validation.hpp"
#include "pppmimo/analysis.hpp"
#include "pppmimo/commands.hpp"
#include "pppmimo/config.hpp"
#include "pppmimo/errors.hpp"
#include "pppmimo/mcsim.hpp"
#include "pppmimo/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

namespace pppmimo {

namespace {

using Outcome = std::pair<bool, std::string>;

void check(std::vector<CheckResult> &out, const std::string &module, const std::string &name,
           const std::function<Outcome()> &fn)
{
    CheckResult r{module, name, false, {}};
    try
    {
        std::tie(r.passed, r.detail) = fn();
    }
    catch (const std::exception &e)
    {
        r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
}

std::string sci(double v)
{
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << v;
    return os.str();
}

double db(double x)
{
    return std::pow(10.0, x / 10.0);
}

// sup |F_emp - F| over the sorted sample.
double ks_distance(std::vector<double> xs, const std::function<double(double)> &cdf)
{
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        const double F = cdf(xs[i]);
        d = std::max({d, std::abs((i + 1) / n - F), std::abs(F - i / n)});
    }
    return d;
}

double dkw_band(std::size_t n, double alpha = 0.01)
{
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

// ---------------------------------------------------------------------------------------------

void specfun_checks(std::vector<CheckResult> &out, bool quick)
{
    using specfun::ExactInteger;
    const std::string mod = "specfun";

    check(out, mod, "stirling_row_sums", [] {
        ExactInteger fact = 1;
        std::vector<ExactInteger> bell_row{1};
        std::vector<ExactInteger> bell{1};
        // Bell triangle
        for (int n = 1; n <= specfun::kStirlingMax; ++n)
        {
            std::vector<ExactInteger> next{bell_row.back()};
            for (const auto &v : bell_row)
                next.push_back(next.back() + v);
            bell_row = next;
            bell.push_back(bell_row.front());
        }
        for (int n = 0; n <= specfun::kStirlingMax; ++n)
        {
            if (n > 0)
                fact *= n;
            ExactInteger s1 = 0, s2 = 0;
            for (int k = 0; k <= n; ++k)
            {
                s1 += abs(specfun::stirling_first_signed(n, k));
                s2 += specfun::stirling_second(n, k);
            }
            if (s1 != fact)
                return Outcome{false, "sum |s(" + std::to_string(n) + ",k)| != n!"};
            if (s2 != bell[n])
                return Outcome{false, "sum S(" + std::to_string(n) + ",k) != Bell(n)"};
        }
        return Outcome{true, "n <= 64 exact"};
    });

    check(out, mod, "stirling_inverse_pair", [] {
        for (int n = 0; n <= 24; ++n)
            for (int j = 0; j <= n; ++j)
            {
                ExactInteger acc = 0;
                for (int k = j; k <= n; ++k)
                    acc += specfun::stirling_first_signed(n, k) * specfun::stirling_second(k, j);
                if (acc != (n == j ? 1 : 0))
                    return Outcome{false, "s*S != I at (" + std::to_string(n) + "," + std::to_string(j) + ")"};
            }
        return Outcome{true, "n <= 24"};
    });

    check(out, mod, "kummer_polynomial_vs_series", [] {
        double worst = 0.0;
        for (int m = 1; m <= 16; ++m)
            for (double alpha : {2.5, 3.0, 4.0, 5.5})
                for (double z : {0.01, 0.3, 1.0, 4.0, 12.0})
                {
                    const double a = 1.0 - m, b = 1.0 + 2.0 / alpha - m;
                    const double got = specfun::kummer_1f1_polynomial(a, b, z);
                    const double ref = boost::math::hypergeometric_1F1(a, b, z);
                    // scale by the largest term so cancellation near a zero does not dominate
                    double big = 1.0, term = 1.0;
                    for (int j = 0; j < m - 1; ++j)
                    {
                        term *= (a + j) * z / ((b + j) * (j + 1));
                        big = std::max(big, std::abs(term));
                    }
                    worst = std::max(worst, std::abs(got - ref) / std::max(std::abs(ref), 1e-3 * big));
                }
        return Outcome{worst <= 1e-10, "max rel err " + sci(worst)};
    });

    check(out, mod, "gauss_2f1_identities", [] {
        double worst = 0.0;
        auto rel = [&](double got, double ref) { worst = std::max(worst, std::abs(got - ref) / std::abs(ref)); };
        for (double z : {-0.3, -0.9, -2.0, -10.0, -100.0, -1e4})
            rel(specfun::gauss_2f1(1.0, 1.0, 2.0, z), -std::log1p(-z) / z);
        for (double z : {-0.4, -3.0, -50.0, -1e3})
            rel(specfun::gauss_2f1(0.7, 1.3, 1.3, z), std::pow(1.0 - z, -0.7));
        for (double x : {0.5, 1.0, 3.0, 30.0})
            rel(specfun::gauss_2f1(0.5, 1.0, 1.5, -x * x), std::atan(x) / x);
        boost::math::quadrature::tanh_sinh<double> ts;
        for (double d : {2.0 / 3.0, 0.5, 2.0 / 2.1})
            for (double z : {-0.2, -5.0, -500.0, -1e6})
            {
                // Euler integral with t = u^{1/d}: d int t^{d-1}/(1-zt) dt = int 1/(1 - z u^{1/d}) du
                const double ref = ts.integrate([&](double u) { return 1.0 / (1.0 - z * std::pow(u, 1.0 / d)); },
                                                0.0, 1.0, 1e-14);
                rel(specfun::gauss_2f1(d, 1.0, 1.0 + d, z), ref);
            }
        return Outcome{worst <= 1e-9, "max rel err " + sci(worst)};
    });

    check(out, mod, "gamma_cdf_dkw", [quick] {
        const std::size_t n = quick ? 20000 : 100000;
        RandomStream rng(0x9a77a, 1, 0);
        double worst_ratio = 0.0;
        for (double shape : {0.5, 2.0, 7.5})
        {
            std::vector<double> xs(n);
            for (auto &x : xs)
                x = rng.gamma(shape, 1.3);
            const double d = ks_distance(xs, [&](double x) { return specfun::gamma_cdf(x, shape, 1.3); });
            worst_ratio = std::max(worst_ratio, d / dkw_band(n));
        }
        return Outcome{worst_ratio <= 1.0, "max KS / DKW band " + sci(worst_ratio)};
    });

    check(out, mod, "ln_gamma_reference", [] {
        double worst = 0.0;
        for (double x : {0.5, 1.0, 2.5, 10.0, 100.5})
            worst = std::max(worst, std::abs(specfun::ln_gamma(x) - std::lgamma(x)) / std::max(1.0, std::abs(std::lgamma(x))));
        return Outcome{worst <= 1e-14, "max err " + sci(worst)};
    });
}

void schemes_checks(std::vector<CheckResult> &out, bool)
{
    const std::string mod = "schemes";
    check(out, mod, "registry_codes_orthogonal", [] {
        double worst = 0.0;
        std::vector<std::string> names;
        for (const auto &n : registry_names())
            if (n.find("<M>") == std::string::npos)
                names.push_back(n);
        names.push_back("cyclic<3>");
        names.push_back("cyclic<8>");
        for (const auto &n : names)
        {
            const OstbcCode c = registry_code(n);
            worst = std::max({worst, orthogonality_defect(c, 11), decode_identity_defect(c, std::max(c.M(), 2), 12)});
        }
        return Outcome{worst <= 1e-12, "max defect " + sci(worst)};
    });

    check(out, mod, "code_rate_and_interference_count", [] {
        const OstbcCode al = registry_code("alamouti");
        const OstbcCode g4 = registry_code("g4_rate34");
        const OstbcCode cy = registry_code("cyclic<4>");
        const bool ok = code_rate(al) == boost::rational<int>(1) && code_rate(g4) == boost::rational<int>(3, 4) &&
                        code_rate(cy) == boost::rational<int>(1, 4) && n_interf(al, 1) == 4 && n_interf(cy, 1) == 4;
        return Outcome{ok, "R and N_I of alamouti, g4_rate34, cyclic<4>"};
    });

    check(out, mod, "code_json_roundtrip", [] {
        for (const std::string n : {"alamouti", "g4_rate34", "g3_rate34", "d4_rate12", "cyclic<5>"})
        {
            const OstbcCode c = registry_code(n);
            const OstbcCode back = OstbcCode::from_json(c.to_json());
            if (back.to_json() != c.to_json())
                return Outcome{false, n};
        }
        return Outcome{true, "all registry codes"};
    });

    check(out, mod, "gamma_law_table", [] {
        NetworkParams n;
        n.rho = 100.0;
        n.r_tr = 2.0;
        n.alpha = 3.0;
        const GammaLawParams g = gamma_params(SchemeSpec::sm_mrc(2, 4), n);
        const GammaLawParams z = gamma_params(SchemeSpec::sm_zf(2, 4), n);
        const bool ok = g.m == 4 && std::abs(g.theta - 100.0 / 16.0) < 1e-12 && g.self && g.self->u == 1.0 &&
                        z.m == 3 && !z.self && g.n == 2.0 && g.omega == 50.0 && g.zeta == 2.0;
        return Outcome{ok, "SM-MRC / SM-ZF M=2, N=4"};
    });
}

void analysis_checks(std::vector<CheckResult> &out, bool)
{
    const std::string mod = "analysis";

    check(out, mod, "single_stream_closed_form", [] {
        double worst = 0.0;
        for (double lam : {0.0, 1e-3, 0.1, 1.0})
            for (double beta : {0.1, 1.0, 10.0})
                for (double alpha : {2.5, 4.0})
                    for (int N : {1, 3})
                    {
                        NetworkParams n{lam, 1.0, alpha, 2.0, 300.0, beta};
                        const OutageQuery q{gamma_params(SchemeSpec::sm_zf(N, N), n), n};
                        worst = std::max(worst, std::abs(outage_cdf(q) - outage_cdf_simple(q)));
                    }
        return Outcome{worst <= 1e-12, "max abs diff " + sci(worst)};
    });

    check(out, mod, "zero_density_single_user", [] {
        double worst = 0.0;
        for (const auto &s : {SchemeSpec::sm_mrc(2, 4), SchemeSpec::sm_zf(2, 4), SchemeSpec::sm_mrc(3, 3),
                              SchemeSpec::ostbc(registry_code("alamouti"), 2),
                              SchemeSpec::ostbc(registry_code("g4_rate34"), 4)})
            for (double beta : {0.05, 0.5, 2.0, 8.0})
            {
                NetworkParams n{0.0, 1.0, 3.5, 2.0, 100.0, beta};
                const GammaLawParams g = gamma_params(s, n);
                worst = std::max(worst, std::abs(outage_cdf({g, n}) - single_user_outage(g, beta)));
            }
        return Outcome{worst <= 1e-12, "max abs diff " + sci(worst)};
    });

    check(out, mod, "success_at_optimal_density", [] {
        double worst = 0.0;
        for (int N : {1, 2, 4, 8})
            for (double alpha : {2.5, 3.1, 4.0})
            {
                NetworkParams n{0.0, 1.0, alpha, 3.0, 1e30, 2.0};
                n.lambda = lambda_opt_zf(N, n);
                const OutageQuery q{gamma_params(SchemeSpec::sm_zf(N, N), n), n};
                worst = std::max(worst, std::abs(success_probability(q) - std::exp(-1.0)));
            }
        return Outcome{worst <= 1e-12, "max abs diff " + sci(worst)};
    });

    check(out, mod, "zf_capacity_matches_inversion", [] {
        double worst = 0.0;
        for (int N : {1, 2, 4})
            for (double eps : {0.01, 0.1, 0.3})
            {
                NetworkParams n{0.0, 1.0, 3.5, 2.0, 1e4, 1.5};
                const GammaLawParams g = gamma_params(SchemeSpec::sm_zf(N, N), n);
                const double a = tc_exact_zf_full(N, eps, n);
                const double b = tc_numeric(g, n.beta, eps, n.alpha);
                worst = std::max(worst, std::abs(a - b) / b);
            }
        return Outcome{worst <= 1e-9, "max rel diff " + sci(worst)};
    });

    check(out, mod, "extended_matches_double", [] {
        double worst = 0.0;
        for (const auto &s : {SchemeSpec::sm_mrc(2, 6), SchemeSpec::sm_zf(2, 6), SchemeSpec::sm_mrc(4, 4),
                              SchemeSpec::ostbc(registry_code("alamouti"), 3)})
            for (double lam : {1e-3, 1e-2, 0.1})
            {
                NetworkParams n{lam, 1.0, 3.1, 2.0, 300.0, 1.0};
                const OutageQuery q{gamma_params(s, n), n};
                const double e = success_probability(q, Precision::Extended);
                worst = std::max(worst, std::abs(success_probability(q) - e) / e);
            }
        return Outcome{worst <= 1e-10, "max rel diff " + sci(worst)};
    });

    check(out, mod, "outage_monotone", [] {
        for (const auto &s : {SchemeSpec::sm_mrc(2, 4), SchemeSpec::sm_zf(4, 4),
                              SchemeSpec::ostbc(registry_code("g4_rate34"), 4)})
        {
            double prev = -1.0;
            for (double lam = 1e-4; lam < 1.0; lam *= 1.6)
            {
                NetworkParams n{lam, 1.0, 3.1, 2.0, 300.0, 1.0};
                const double F = outage_cdf({gamma_params(s, n), n});
                if (F < prev - 1e-14)
                    return Outcome{false, s.label() + " not increasing in lambda"};
                prev = F;
            }
            prev = -1.0;
            for (double beta = 1e-3; beta < 1e3; beta *= 1.6)
            {
                NetworkParams n{0.01, 1.0, 3.1, 2.0, 300.0, beta};
                const double F = outage_cdf({gamma_params(s, n), n});
                if (F < prev - 1e-14)
                    return Outcome{false, s.label() + " not increasing in beta"};
                prev = F;
            }
        }
        return Outcome{true, "lambda and beta sweeps"};
    });

    check(out, mod, "small_eps_capacity_limit", [] {
        NetworkParams n{0.0, 1.0, 4.0, 1.0, 1000.0, db(-3.0)};
        const GammaLawParams g = gamma_params(SchemeSpec::sm_mrc(2, 8), n);
        const double fsu = single_user_outage(g, n.beta);
        double prev = 1.0;
        std::string detail;
        for (double gap : {1e-2, 1e-3, 1e-4})
        {
            const double eps = fsu + gap;
            const double ratio =
                tc_small_eps({g, g.zeta, eps, n}) / (g.zeta * invert_outage_for_density(g, n.beta, eps, 4.0) * (1 - eps));
            const double dev = std::abs(ratio - 1.0);
            detail += sci(dev) + " ";
            if (dev >= prev)
                return Outcome{false, "deviation not shrinking: " + detail};
            prev = dev;
        }
        return Outcome{true, "deviations " + detail};
    });

    check(out, mod, "threshold_table_spot", [] {
        const ThresholdTable t = compute_table(2);
        const double v = t.values[2][2];
        return Outcome{std::abs(v / 36.900 - 1.0) <= 5e-3, "rho=10 dB, beta=5 dB: " + format_number(v)};
    });
}

void mcsim_checks(std::vector<CheckResult> &out, bool quick)
{
    const std::string mod = "mcsim";
    const std::uint64_t trials = quick ? 4000 : 20000;

    check(out, mod, "mc_matches_analytic", [trials] {
        double worst = 0.0;
        SimConfig cfg;
        cfg.trials = trials;
        cfg.seed = 101;
        for (const auto &s : {SchemeSpec::sm_zf(2, 2), SchemeSpec::sm_mrc(2, 4), SchemeSpec::sm_zf(2, 4)})
            for (double lam : {0.005, 0.05})
            {
                NetworkParams n{lam, 1.0, 3.1, 2.0, db(25.0), 1.0};
                const std::vector<double> betas{0.5, 2.0};
                const auto est = simulate_outage_curve(s, n, betas, cfg);
                for (std::size_t i = 0; i < betas.size(); ++i)
                {
                    n.beta = betas[i];
                    const double F = outage_cdf({gamma_params(s, n), n});
                    const double se = std::sqrt(std::max(F * (1 - F), 1e-12) / cfg.trials);
                    worst = std::max(worst, std::abs(est[i].value - F) / se);
                }
            }
        return Outcome{worst <= 3.0, "max |z| " + sci(worst)};
    });

    check(out, mod, "empty_field_signal_laws", [trials] {
        SimConfig cfg;
        cfg.trials = trials;
        cfg.seed = 202;
        NetworkParams n{0.0, 1.0, 3.0, 2.0, 50.0, 1.0};
        const double ra = 8.0;
        struct Case
        {
            SchemeSpec s;
            double shape, scale;
        };
        const OstbcCode al = registry_code("alamouti");
        const std::vector<Case> cases{{SchemeSpec::sm_mrc(1, 3), 3.0, 50.0 / ra},
                                      {SchemeSpec::sm_zf(2, 4), 3.0, 50.0 / (2 * ra)},
                                      {SchemeSpec::ostbc(al, 2), 4.0, 50.0 / (2 * ra)}};
        double worst = 0.0;
        for (const auto &c : cases)
        {
            const auto xs = simulate_sinr(c.s, n, cfg);
            const double d = ks_distance(xs, [&](double x) { return specfun::gamma_cdf(x, c.shape, c.scale); });
            worst = std::max(worst, d / dkw_band(xs.size()));
        }
        return Outcome{worst <= 1.0, "max KS / DKW band " + sci(worst)};
    });

    check(out, mod, "stream_exchangeability", [trials] {
        SimConfig cfg;
        cfg.trials = trials;
        cfg.seed = 303;
        NetworkParams n{0.02, 1.0, 3.1, 2.0, db(25.0), 1.0};
        const SchemeSpec s = SchemeSpec::sm_mrc(2, 4);
        const SimEstimate a = simulate_outage(s, n, cfg, 1);
        cfg.seed = 304;
        const SimEstimate b = simulate_outage(s, n, cfg, 2);
        const double z = std::abs(a.value - b.value) / std::hypot(a.std_error, b.std_error);
        return Outcome{z <= 3.0, "|z| " + sci(z)};
    });

    check(out, mod, "seeded_determinism", [] {
        SimConfig cfg;
        cfg.trials = 3000;
        cfg.seed = 404;
        NetworkParams n{0.05, 1.0, 3.1, 2.0, db(25.0), 1.0};
        const SchemeSpec s = SchemeSpec::ostbc(registry_code("alamouti"), 2);
        const auto a = simulate_sinr(s, n, cfg);
        const auto b = simulate_sinr(s, n, cfg);
        cfg.parallel = false;
        const auto c = simulate_sinr(s, n, cfg);
        return Outcome{a == b && a == c, "repeat and serial runs identical"};
    });

    check(out, mod, "truncation_sanity", [trials] {
        SimConfig cfg;
        cfg.trials = trials;
        cfg.seed = 505;
        NetworkParams n{0.05, 1.0, 3.1, 2.0, db(25.0), 1.0};
        const SchemeSpec s = SchemeSpec::sm_mrc(1, 4);
        const double R = truncation_radius(n, gamma_params(s, n), cfg.truncation_tol);
        const SimEstimate a = simulate_outage(s, n, cfg);
        cfg.max_radius_override = 2.0 * R;
        const SimEstimate b = simulate_outage(s, n, cfg);
        const double z = std::abs(a.value - b.value) / std::max(a.std_error, 1e-12);
        return Outcome{z < 1.0, "shift / sigma " + sci(z)};
    });

    check(out, mod, "ca_below_bound", [trials] {
        SimConfig cfg;
        cfg.trials = trials;
        cfg.seed = 606;
        NetworkParams n{0.0, 1.0, 4.0, 1.5, 10.0, db(5.0)};
        double worst = -1e9;
        for (double lam : {0.1, 1.0})
            for (double g : {1.0, 2.0})
            {
                const SimEstimate e = simulate_ca(lam, g, n, cfg);
                worst = std::max(worst, (e.value - ca_throughput_bound(lam, g, n)) / std::max(e.std_error, 1e-12));
            }
        return Outcome{worst <= 3.0, "max (sim - bound) / sigma " + sci(worst)};
    });
}

void cli_checks(std::vector<CheckResult> &out, bool)
{
    const std::string mod = "cli";
    check(out, mod, "db_conversion_once", [] {
        const json dbs = json::parse(R"({"values": [-3, 0, 2.5, 25], "scale": "dB"})");
        json lin = {{"values", json::array()}};
        for (double v : {-3.0, 0.0, 2.5, 25.0})
            lin["values"].push_back(std::pow(10.0, v / 10.0));
        const auto a = parse_range(dbs, "x");
        const auto b = parse_range(lin, "x");
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[i]) / b[i]);
        return Outcome{a.size() == b.size() && worst <= 1e-12, "max rel diff " + sci(worst)};
    });

    check(out, mod, "presets_parse", [] {
        for (const auto &name : preset_names())
            parse_config(preset(name));
        return Outcome{true, std::to_string(preset_names().size()) + " presets"};
    });
}

} // namespace

std::vector<CheckResult> run_checks(const std::string &module, bool quick)
{
    std::vector<CheckResult> out;
    if (module == "specfun")
        specfun_checks(out, quick);
    else if (module == "schemes")
        schemes_checks(out, quick);
    else if (module == "analysis")
        analysis_checks(out, quick);
    else if (module == "mcsim")
        mcsim_checks(out, quick);
    else if (module == "cli")
        cli_checks(out, quick);
    else
        throw ConfigError("unknown module '" + module + "'");
    return out;
}

std::vector<CheckResult> run_validation(bool quick)
{
    std::vector<CheckResult> all;
    for (const char *m : {"specfun", "schemes", "analysis", "mcsim", "cli"})
    {
        auto part = run_checks(m, quick);
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

bool print_report(const std::vector<CheckResult> &results, std::ostream &os)
{
    bool ok = true;
    for (const auto &r : results)
    {
        os << std::left << std::setw(10) << r.module << std::setw(36) << r.name << (r.passed ? "PASS  " : "FAIL  ")
           << r.detail << '\n';
        ok = ok && r.passed;
    }
    os << (ok ? "all checks passed" : "validation FAILED") << '\n';
    return ok;
}

} // namespace pppmimo
