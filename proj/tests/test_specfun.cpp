// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#include <catch2/catch_amalgamated.hpp>

#include "pppmimo/errors.hpp"
#include "pppmimo/specfun.hpp"
#include "pppmimo/validation.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <cmath>

using namespace pppmimo;
using namespace pppmimo::specfun;
using Catch::Matchers::WithinRel;

TEST_CASE("Stirling numbers: small known values", "[specfun]")
{
    CHECK(stirling_first_signed(0, 0) == 1);
    CHECK(stirling_first_signed(5, 2) == -50);
    CHECK(stirling_first_signed(6, 3) == -225);
    CHECK(stirling_first_signed(7, 7) == 1);
    CHECK(stirling_first_signed(4, 0) == 0);
    CHECK(stirling_second(5, 2) == 15);
    CHECK(stirling_second(7, 3) == 301);
    CHECK(stirling_second(10, 5) == 42525);
    CHECK(stirling_second(3, 0) == 0);
}

TEST_CASE("Stirling numbers: recurrences hold up to n = 64", "[specfun]")
{
    for (int n = 1; n <= kStirlingMax; ++n)
        for (int k = 1; k <= n; ++k)
        {
            const ExactInteger up1 = stirling_first_signed(n - 1, k - 1) -
                                     (k <= n - 1 ? ExactInteger(n - 1) * stirling_first_signed(n - 1, k) : 0);
            const ExactInteger up2 =
                stirling_second(n - 1, k - 1) + (k <= n - 1 ? ExactInteger(k) * stirling_second(n - 1, k) : 0);
            REQUIRE(stirling_first_signed(n, k) == up1);
            REQUIRE(stirling_second(n, k) == up2);
        }
}

TEST_CASE("Stirling numbers: double copies are the rounded exact values", "[specfun]")
{
    CHECK(stirling_first_signed_d(64, 1) == stirling_first_signed(64, 1).convert_to<double>());
    CHECK(stirling_second_d(64, 32) == stirling_second(64, 32).convert_to<double>());
}

TEST_CASE("Stirling numbers: out-of-range indices throw", "[specfun]")
{
    CHECK_THROWS_AS(stirling_first_signed(65, 1), DomainError);
    CHECK_THROWS_AS(stirling_second(3, 4), DomainError);
    CHECK_THROWS_AS(stirling_second(-1, 0), DomainError);
}

TEST_CASE("ln_gamma and rgamma", "[specfun]")
{
    CHECK_THAT(ln_gamma(5.0), WithinRel(std::log(24.0), 1e-15));
    CHECK_THAT(ln_gamma(0.5), WithinRel(0.5 * std::log(M_PI), 1e-15));
    CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
    CHECK(rgamma(0.0) == 0.0);
    CHECK(rgamma(-3.0) == 0.0);
    CHECK_THAT(rgamma(4.0), WithinRel(1.0 / 6.0, 1e-15));
    CHECK_THAT(rgamma(-0.5), WithinRel(-1.0 / (2.0 * std::sqrt(M_PI)), 1e-14));
}

TEST_CASE("Kummer polynomial matches the Boost series", "[specfun]")
{
    for (int m = 1; m <= 12; ++m)
        for (double z : {0.05, 0.7, 3.0})
        {
            const double a = 1.0 - m, b = 1.0 + 2.0 / 3.5 - m;
            CHECK_THAT(kummer_1f1_polynomial(a, b, z), WithinRel(boost::math::hypergeometric_1F1(a, b, z), 1e-10));
        }
    CHECK(kummer_1f1_polynomial(0.0, 0.3, 7.0) == 1.0);
    CHECK_THROWS_AS(kummer_1f1_polynomial(-1.5, 2.0, 1.0), DomainError);
}

TEST_CASE("Gauss 2F1 closed forms across the negative axis", "[specfun]")
{
    for (double z : {-0.1, -0.6, -1.5, -40.0, -1e5})
        CHECK_THAT(gauss_2f1(1.0, 1.0, 2.0, z), WithinRel(-std::log1p(-z) / z, 1e-12));
    for (double x : {0.2, 2.0, 50.0})
        CHECK_THAT(gauss_2f1(0.5, 1.0, 1.5, -x * x), WithinRel(std::atan(x) / x, 1e-12));
    for (double z : {-0.5, -8.0, -3e3})
        CHECK_THAT(gauss_2f1(0.4, 2.2, 2.2, z), WithinRel(std::pow(1.0 - z, -0.4), 1e-12));
    CHECK(gauss_2f1(0.3, 0.7, 1.9, 0.0) == 1.0);
}

TEST_CASE("Gauss 2F1 argument checks", "[specfun]")
{
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, 2.0, 0.5), DomainError);
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, -2.0, -0.5), DomainError);
    CHECK_THROWS_AS(gauss_2f1_series(1.0, 1.0, 2.0, -1.2), DomainError);
}

TEST_CASE("gamma_cdf agrees with the regularized incomplete gamma", "[specfun]")
{
    for (double shape : {0.3, 1.0, 4.0, 17.5})
        for (double x : {0.01, 1.0, 6.0})
            CHECK_THAT(gamma_cdf(x, shape, 2.0), WithinRel(boost::math::gamma_p(shape, x / 2.0), 1e-14));
    CHECK(gamma_cdf(0.0, 2.0, 1.0) == 0.0);
    CHECK_THROWS_AS(gamma_cdf(1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("Corrupted Stirling table is caught by the invariant suite", "[specfun]")
{
    testing::corrupt_stirling_table();
    const auto broken = run_checks("specfun", true);
    testing::restore_stirling_table();
    const auto fixed = run_checks("specfun", true);
    auto passed = [](const std::vector<CheckResult> &rs, const std::string &name) {
        for (const auto &r : rs)
            if (r.name == name)
                return r.passed;
        return false;
    };
    CHECK_FALSE(passed(broken, "stirling_row_sums"));
    CHECK(passed(fixed, "stirling_row_sums"));
    CHECK(passed(fixed, "stirling_inverse_pair"));
}
