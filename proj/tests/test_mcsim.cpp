// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#include <catch2/catch_amalgamated.hpp>

#include "pppmimo/analysis.hpp"
#include "pppmimo/errors.hpp"
#include "pppmimo/mcsim.hpp"

#include <cmath>

using namespace pppmimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double db(double x)
{
    return std::pow(10.0, x / 10.0);
}

SimConfig small(std::uint64_t trials, std::uint64_t seed = 5)
{
    SimConfig c;
    c.trials = trials;
    c.seed = seed;
    return c;
}

// |estimate - F| in units of the binomial standard error under F.
double zscore(double est, double F, std::uint64_t n)
{
    return std::abs(est - F) / std::sqrt(std::max(F * (1.0 - F), 1e-300) / static_cast<double>(n));
}

} // namespace

TEST_CASE("Configuration validation", "[mcsim]")
{
    SimConfig c;
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.trials = 10;
    c.truncation_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.truncation_tol = 0.05;
    c.max_radius_override = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("Truncation radius shrinks with looser tolerance", "[mcsim]")
{
    const NetworkParams n{0.01, 1.0, 3.0, 2.0, 100.0, 1.0};
    const GammaLawParams g = gamma_params(SchemeSpec::sm_mrc(1, 2), n);
    CHECK(truncation_radius(n, g, 0.01) > truncation_radius(n, g, 0.1));
    CHECK(truncation_radius(n, g, 0.05) >= n.r_tr);
}

TEST_CASE("Sampled field lies inside the disc with the expected count", "[mcsim]")
{
    const NetworkParams n{0.05, 0.5, 3.0, 1.0, 10.0, 1.0};
    RandomStream rng(3);
    const double R = 20.0;
    double total = 0.0;
    const int reps = 400;
    for (int i = 0; i < reps; ++i)
    {
        const auto f = sample_field(n, R, 2, 2, rng);
        for (const auto &it : f)
        {
            REQUIRE(std::hypot(it.position[0], it.position[1]) <= R);
            REQUIRE(it.H.rows() == 2);
            REQUIRE(it.H.cols() == 2);
        }
        total += static_cast<double>(f.size());
    }
    const double mean = n.lambda * n.p * M_PI * R * R;
    CHECK_THAT(total / reps, WithinRel(mean, 0.05));
}

TEST_CASE("Interference-free SINR equals the signal term", "[mcsim]")
{
    const NetworkParams n{0.0, 1.0, 3.0, 2.0, 40.0, 1.0};
    RandomStream rng(9);
    CMatrix H0(3, 1);
    rng.fill_cnormal(H0);
    const double expect = n.rho / std::pow(n.r_tr, n.alpha) * H0.squaredNorm();
    CHECK_THAT(sinr_mrc(H0, {}, n, 1), WithinRel(expect, 1e-12));
    CHECK_THAT(sinr_zf(H0, {}, n, 1), WithinRel(expect, 1e-12));
}

TEST_CASE("Monte Carlo outage agrees with the closed form", "[mcsim]")
{
    const NetworkParams n{0.01, 1.0, 3.1, 2.0, db(25.0), 1.0};
    const std::vector<double> betas{db(-3.0), db(3.0)};
    const SimConfig c = small(20000);
    for (const SchemeSpec &s : {SchemeSpec::sm_mrc(2, 4), SchemeSpec::sm_zf(2, 4),
                                SchemeSpec::ostbc(registry_code("cyclic<2>"), 2)})
    {
        const auto est = simulate_outage_curve(s, n, betas, c);
        for (std::size_t b = 0; b < betas.size(); ++b)
        {
            NetworkParams nb = n;
            nb.beta = betas[b];
            const double F = outage_cdf({gamma_params(s, nb), nb});
            CHECK(zscore(est[b].value, F, c.trials) < 4.0);
            CHECK(est[b].trials == c.trials);
        }
    }
}

TEST_CASE("Runs are reproducible and the serial path matches OpenMP", "[mcsim]")
{
    const NetworkParams n{0.02, 1.0, 3.5, 1.0, 100.0, 1.0};
    const SchemeSpec s = SchemeSpec::sm_zf(2, 3);
    SimConfig c = small(3000, 77);
    const auto a = simulate_sinr(s, n, c);
    const auto b = simulate_sinr(s, n, c);
    c.parallel = false;
    const auto serial = simulate_sinr(s, n, c);
    CHECK(a == b);
    CHECK(a == serial);
    c.seed = 78;
    CHECK(simulate_sinr(s, n, c) != a);
}

TEST_CASE("Different streams give different draws", "[mcsim]")
{
    const NetworkParams n{0.02, 1.0, 3.5, 1.0, 100.0, 1.0};
    const SchemeSpec s = SchemeSpec::sm_mrc(2, 2);
    const SimConfig c = small(1000);
    CHECK(simulate_sinr(s, n, c, 1) != simulate_sinr(s, n, c, 2));
    CHECK_THROWS_AS(simulate_sinr(s, n, c, 3), DomainError);
}

TEST_CASE("Enlarging the truncation disc keeps the estimate", "[mcsim]")
{
    const NetworkParams n{0.01, 1.0, 3.5, 2.0, 100.0, 1.0};
    const SchemeSpec s = SchemeSpec::sm_mrc(1, 2);
    SimConfig c = small(20000, 21);
    const double R = truncation_radius(n, gamma_params(s, n), c.truncation_tol);
    const SimEstimate base = simulate_outage(s, n, c);
    c.max_radius_override = 2.0 * R;
    const SimEstimate wide = simulate_outage(s, n, c);
    CHECK(std::abs(wide.value - base.value) < base.std_error);
}

TEST_CASE("Cyclic-code K_sigma has unit mean", "[mcsim]")
{
    const SimConfig c = small(20000, 2);
    const auto ks = sample_k_sigma(registry_code("cyclic<3>"), 3, 1, c);
    double m = 0.0;
    for (double v : ks)
        m += v;
    m /= static_cast<double>(ks.size());
    // Gamma(1, 1) mean 1, standard error 1/sqrt(n)
    CHECK_THAT(m, WithinAbs(1.0, 4.0 / std::sqrt(static_cast<double>(ks.size()))));
}

TEST_CASE("Coordinated access simulation stays below its bound", "[mcsim]")
{
    const NetworkParams n{0.0, 1.0, 4.0, 1.5, db(10.0), db(5.0)};
    const SimConfig c = small(5000, 14);
    for (double lam : {0.1, 1.0})
        for (double r : {0.5, 2.0})
        {
            const SimEstimate e = simulate_ca(lam, r, n, c);
            CHECK(e.value <= ca_throughput_bound(lam, r, n) + 3.0 * e.std_error);
            CHECK(e.value >= 0.0);
        }
}
