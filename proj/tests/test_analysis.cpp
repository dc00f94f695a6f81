// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#include <catch2/catch_amalgamated.hpp>

#include "pppmimo/analysis.hpp"
#include "pppmimo/errors.hpp"
#include "pppmimo/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

using namespace pppmimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double db(double x)
{
    return std::pow(10.0, x / 10.0);
}

OutageQuery query(const SchemeSpec &s, const NetworkParams &n)
{
    return {gamma_params(s, n), n};
}

// Brute-force outage for the gamma law with m = 1: integrate over the self-interference density.
double outage_m1_self(const GammaLawParams &g, const NetworkParams &n)
{
    // W ~ Exp(theta): P(W > beta (Y + I + 1)) = E[e^{-b(Y+1)}] e^{-x}, with E over Y ~ Gamma(u, Ups)
    const double b = n.beta / g.theta;
    const double x = interference_exponent({g, n});
    const double ey = g.self ? std::pow(1.0 + b * g.self->upsilon, -g.self->u) : 1.0;
    return 1.0 - ey * std::exp(-x - b);
}

} // namespace

TEST_CASE("eta matches its closed form and vanishes at p = 0", "[analysis]")
{
    const double d = 2.0 / 3.5;
    const double ref = M_PI * 0.4 * std::tgamma(2.0 + d) * std::tgamma(1.0 - d) / std::tgamma(2.0);
    CHECK_THAT(eta(2.0, 0.4, 3.5), WithinRel(ref, 1e-14));
    CHECK(eta(2.0, 0.0, 3.5) == 0.0);
    CHECK_THROWS_AS(eta(2.0, 0.5, 2.0), DomainError);
}

TEST_CASE("Self-interference moments", "[analysis]")
{
    CHECK(self_interference_moment(std::nullopt, 1.0, 1.0, 0) == 1.0);
    CHECK(self_interference_moment(std::nullopt, 1.0, 1.0, 2) == 0.0);
    const SelfInterference y{2.0, 0.5};
    // tau = 0 is the Laplace transform (1 + b Ups)^{-u}
    CHECK_THAT(self_interference_moment(y, 3.0, 1.5, 0), WithinRel(std::pow(1.0 + 2.0 * 0.5, -2.0), 1e-14));
    CHECK_THROWS_AS(self_interference_moment(y, 1.0, 1.0, -1), DomainError);
}

TEST_CASE("Outage with a single stream equals the exponential closed form", "[analysis]")
{
    const NetworkParams n{0.02, 0.7, 3.5, 2.0, db(20.0), db(5.0)};
    const OutageQuery q = query(SchemeSpec::sm_mrc(1, 1), n);
    CHECK_THAT(outage_cdf(q), WithinAbs(outage_cdf_simple(q), 1e-14));
    CHECK_THROWS_AS(outage_cdf_simple(query(SchemeSpec::sm_mrc(2, 2), n)), DomainError);
}

TEST_CASE("Outage with m = 1 and self-interference matches direct integration", "[analysis]")
{
    // self-interference needs M >= 2, so SM-MRC never has m = 1; build the gamma law by hand.
    NetworkParams n{0.01, 1.0, 3.0, 1.5, 50.0, 0.8};
    GammaLawParams g;
    g.m = 1;
    g.theta = 7.0;
    g.n = 2.0;
    g.omega = 20.0;
    g.self = SelfInterference{1.5, 3.0};
    CHECK_THAT(outage_cdf({g, n}), WithinAbs(outage_m1_self(g, n), 1e-13));
}

TEST_CASE("Zero density reduces to the single-user outage", "[analysis]")
{
    NetworkParams n{0.0, 1.0, 3.0, 2.0, db(15.0), db(0.0)};
    for (const SchemeSpec &s : {SchemeSpec::sm_mrc(3, 4), SchemeSpec::sm_zf(2, 4),
                                SchemeSpec::ostbc(registry_code("alamouti"), 2)})
    {
        const OutageQuery q = query(s, n);
        CHECK_THAT(outage_cdf(q), WithinAbs(single_user_outage(q.glp, n.beta), 1e-12));
    }
    // ZF without self-interference: single-user outage is the gamma CDF of the signal
    const GammaLawParams zf = gamma_params(SchemeSpec::sm_zf(2, 4), n);
    CHECK_THAT(single_user_outage(zf, n.beta), WithinAbs(boost::math::gamma_p(zf.m, n.beta / zf.theta), 1e-14));
    CHECK(single_user_outage(zf, INFINITY) == 1.0);
}

TEST_CASE("Outage is increasing in density and threshold", "[analysis]")
{
    const SchemeSpec s = SchemeSpec::sm_mrc(2, 4);
    NetworkParams n{1e-4, 1.0, 3.1, 2.0, db(25.0), db(3.0)};
    double prev = -1.0;
    for (int i = 0; i < 30; ++i)
    {
        n.lambda = 1e-4 * std::pow(10.0, i / 7.0);
        const double F = outage_cdf(query(s, n));
        CHECK(F >= prev);
        prev = F;
    }
    n.lambda = 0.01;
    prev = -1.0;
    for (int i = 0; i < 30; ++i)
    {
        n.beta = db(-20.0 + 1.5 * i);
        const double F = outage_cdf(query(s, n));
        CHECK(F >= prev);
        prev = F;
    }
}

TEST_CASE("Extended precision agrees with double where both are accurate", "[analysis]")
{
    const NetworkParams n{0.03, 1.0, 3.5, 2.0, db(20.0), db(4.0)};
    for (int M : {1, 2, 4})
    {
        const OutageQuery q = query(SchemeSpec::sm_mrc(M, 6), n);
        CHECK_THAT(success_probability(q, Precision::Extended), WithinRel(success_probability(q), 1e-11));
    }
}

TEST_CASE("Success probability at the ZF optimal density tends to 1/e", "[analysis]")
{
    NetworkParams n{0.0, 0.5, 4.0, 1.0, 1e30, 2.0};
    const SchemeSpec s = SchemeSpec::sm_zf(1, 1);
    n.lambda = lambda_opt_zf(1, n);
    const OutageQuery q = query(s, n);
    CHECK_THAT(success_probability(q), WithinAbs(std::exp(-1.0), 1e-12));
}

TEST_CASE("n_opt_zf returns a throughput-maximizing integer", "[analysis]")
{
    const NetworkParams n{0.05, 1.0, 3.0, 1.0, db(20.0), db(5.0)};
    const AntennaOptimum opt = n_opt_zf(n);
    REQUIRE(opt.value >= 1);
    CHECK(std::abs(opt.value - opt.root) <= 1.0);
}

TEST_CASE("Asymptotic forms approach the exact outage", "[analysis]")
{
    NetworkParams n{10.0, 1.0, 2.1, 5.0, db(10.0), db(5.0)};
    const SchemeSpec s = SchemeSpec::sm_mrc(1, 3);
    CHECK(dense_relative_error(query(s, n)) < 0.15);
    n.lambda = 1e4;
    CHECK(dense_relative_error(query(s, n)) < 0.01);

    NetworkParams hb{0.05, 1.0, 4.0, 5.0, db(10.0), db(40.0)};
    CHECK(highbeta_relative_error(query(s, hb)) < 0.05);

    NetworkParams lb{0.05, 1.0, 3.0, 5.0, db(20.0), db(-45.0)};
    CHECK(lowbeta_relative_error(query(SchemeSpec::sm_mrc(4, 4), lb)) < 0.05);
}

TEST_CASE("Dense validity threshold reproduces a printed grid value", "[analysis]")
{
    const NetworkParams n{1.0, 1.0, 2.1, 5.0, db(10.0), db(5.0)};
    CHECK_THAT(1.0 / dense_validity_threshold(query(SchemeSpec::sm_mrc(1, 3), n)), WithinRel(36.900, 0.005));
}

TEST_CASE("Low-beta antenna optimum agrees with exhaustive search", "[analysis]")
{
    // exhaustive maximisation of the low-beta throughput over M
    const NetworkParams n{0.002, 1.0, 3.0, 2.0, db(20.0), db(-15.0)};
    for (Receiver rx : {Receiver::MRC, Receiver::ZF})
    {
        const int N = 8;
        int best = 1;
        double best_t = -1.0;
        for (int M = 1; M <= N; ++M)
        {
            const SchemeSpec s = rx == Receiver::MRC ? SchemeSpec::sm_mrc(M, N) : SchemeSpec::sm_zf(M, N);
            const OutageQuery q = query(s, n);
            const double t = M * (1.0 - lowbeta_cdf(q));
            if (t > best_t)
            {
                best_t = t;
                best = M;
            }
        }
        CHECK(m_opt_lowbeta(rx, N, n).value == best);
    }
}

TEST_CASE("ZF full-array capacity equals numeric inversion", "[analysis]")
{
    const NetworkParams n{0.0, 1.0, 3.5, 2.0, 1e4, 1.5};
    for (int N : {1, 2, 4})
    {
        const GammaLawParams g = gamma_params(SchemeSpec::sm_zf(N, N), n);
        CHECK_THAT(tc_exact_zf_full(N, 0.1, n), WithinRel(tc_numeric(g, n.beta, 0.1, n.alpha), 1e-9));
    }
}

TEST_CASE("Capacity expectation: finite sum matches the Kummer integral", "[analysis]")
{
    const NetworkParams n{0.0, 1.0, 4.0, 1.0, 300.0, 0.5};
    for (int M : {1, 2, 3})
    {
        const GammaLawParams g = gamma_params(SchemeSpec::sm_mrc(M, 6), n);
        CHECK_THAT(tc_expectation_kummer(g, n.beta, n.alpha), WithinRel(tc_expectation_sum(g, n.beta, n.alpha), 1e-8));
    }
}

TEST_CASE("Small-outage capacity ratio tends to 1/(1 - F_SU)", "[analysis]")
{
    // With a sizeable single-user floor the small-eps expression converges to
    // zeta lambda(eps), so its ratio to zeta lambda(eps)(1 - eps) approaches 1/(1 - F_SU).
    const NetworkParams n{0.0, 1.0, 4.0, 1.0, 10.0, db(3.0)};
    const GammaLawParams g = gamma_params(SchemeSpec::sm_mrc(2, 3), n);
    const double fsu = single_user_outage(g, n.beta);
    REQUIRE(fsu > 0.01);
    const double eps = fsu + 1e-5;
    const double ratio = tc_small_eps({g, g.zeta, eps, n}) / tc_numeric(g, n.beta, eps, n.alpha);
    CHECK_THAT(ratio, WithinRel(1.0 / (1.0 - fsu), 1e-3));
}

TEST_CASE("Capacity below the single-user floor is infeasible", "[analysis]")
{
    const NetworkParams n{0.0, 1.0, 4.0, 1.0, 10.0, db(3.0)};
    const GammaLawParams g = gamma_params(SchemeSpec::sm_mrc(2, 3), n);
    const double fsu = single_user_outage(g, n.beta);
    CHECK_THROWS_AS(invert_outage_for_density(g, n.beta, 0.5 * fsu, n.alpha), SolverError);
    CHECK_THROWS_AS(invert_outage_for_density(g, n.beta, 1.5, n.alpha), DomainError);
}

TEST_CASE("Linear scaling thresholds", "[analysis]")
{
    const NetworkParams n{0.0, 1.0, 4.0, 1.0, 1000.0, 0.5};
    const LinearScaling mrc = linear_scaling_region(Receiver::MRC, 0.5, n);
    CHECK_THAT(mrc.beta_bar, WithinRel(1.0 / (0.5 * (1.0 / 1000.0 + 1.0)), 1e-15));
    CHECK(mrc.linear);
    const LinearScaling zf = linear_scaling_region(Receiver::ZF, 0.5, n);
    CHECK_THAT(zf.beta_bar, WithinRel(1000.0, 1e-15));
    CHECK(zf.zf_window_wider);
    CHECK_THROWS_AS(linear_scaling_region(Receiver::ZF, 1.0, n), DomainError);
    CHECK(kappa_star(Receiver::ZF, n, 16) >= 1);
}

TEST_CASE("OSTBC scaling constant and bounds", "[analysis]")
{
    const double alpha = 4.0, d = 0.5;
    // Alamouti: R = 1, N_I/M = 2
    CHECK_THAT(ostbc_g(registry_code("alamouti"), alpha),
               WithinRel(std::pow(2.0, d) * std::tgamma(2.0) / std::tgamma(2.0 + d), 1e-14));
    // bounds hold for the maximum-rate codes they were derived for
    for (const char *name : {"alamouti", "g3_rate34", "g4_rate34"})
    {
        const OstbcCode code = registry_code(name);
        const auto [lb, ub] = ostbc_g_bounds(code.M(), alpha);
        CHECK(lb <= ostbc_g(code, alpha));
        CHECK(lb <= ub);
    }
    // the upper bound peaks at M = 2
    for (int M : {3, 4, 6, 8})
        CHECK(ostbc_g_bounds(M, alpha).second < ostbc_g_bounds(2, alpha).second);
    // cyclic codes: g decreases with M
    CHECK(ostbc_g(registry_code("cyclic<3>"), alpha) < ostbc_g(registry_code("cyclic<2>"), alpha));
    CHECK_THROWS_AS(ostbc_g_bounds(1, alpha), DomainError);
}

TEST_CASE("Coordinated access intensity and bound", "[analysis]")
{
    CHECK_THAT(ca_intensity(INFINITY, 0.5), WithinRel(1.0, 1e-15));
    CHECK_THAT(ca_intensity(1e-6, 1.0), WithinRel(1e-6, 1e-5));
    const NetworkParams n{0.0, 1.0, 4.0, 1.5, db(10.0), db(5.0)};
    CHECK(ca_intensity(0.1, 1.0) < ca_intensity(1.0, 1.0));
    CHECK(ca_throughput_bound(0.1, 1.0, n) > 0.0);
    const double r = ca_optimal_guard(0.3, n);
    const double t = ca_throughput_bound(0.3, r, n);
    CHECK(t >= ca_throughput_bound(0.3, 0.9 * r, n));
    CHECK(t >= ca_throughput_bound(0.3, 1.1 * r, n));
}

TEST_CASE("ALOHA-vs-CA region nests in N", "[analysis]")
{
    const NetworkParams n{0.0, 1.0, 3.0, 2.0, db(10.0), db(5.0)};
    const std::vector<double> lams{0.001, 0.01, 0.1, 1.0}, ps{0.05, 0.2, 0.5, 1.0};
    const auto r2 = aloha_vs_ca_region(SchemeSpec::sm_zf(1, 2), n, lams, ps);
    const auto r4 = aloha_vs_ca_region(SchemeSpec::sm_zf(1, 4), n, lams, ps);
    for (std::size_t i = 0; i < lams.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j)
            CHECK((!r2[i][j] || r4[i][j]));
}
