// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#include "pppmimo/specfun.hpp"
#include "pppmimo/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <cmath>
#include <mutex>
#include <string>

namespace pppmimo::specfun {

namespace {

constexpr int kDim = kStirlingMax + 1;

struct StirlingTables
{
    std::array<std::array<ExactInteger, kDim>, kDim> first;
    std::array<std::array<ExactInteger, kDim>, kDim> second;
    std::array<std::array<double, kDim>, kDim> first_d{};
    std::array<std::array<double, kDim>, kDim> second_d{};

    void build()
    {
        for (auto &row : first)
            for (auto &v : row) v = 0;
        for (auto &row : second)
            for (auto &v : row) v = 0;
        first[0][0] = 1;
        second[0][0] = 1;
        for (int n = 0; n < kStirlingMax; ++n)
            for (int k = 1; k <= n + 1; ++k)
            {
                // s(n+1,k) = s(n,k-1) - n s(n,k);  S(n+1,k) = k S(n,k) + S(n,k-1)
                first[n + 1][k] = first[n][k - 1] - ExactInteger(n) * first[n][k];
                second[n + 1][k] = ExactInteger(k) * second[n][k] + second[n][k - 1];
            }
        refresh_doubles();
    }

    void refresh_doubles()
    {
        for (int n = 0; n < kDim; ++n)
            for (int k = 0; k < kDim; ++k)
            {
                first_d[n][k] = first[n][k].convert_to<double>();
                second_d[n][k] = second[n][k].convert_to<double>();
            }
    }
};

StirlingTables &tables()
{
    static StirlingTables t;
    static std::once_flag once;
    std::call_once(once, [] { t.build(); });
    return t;
}

void check_nk(int n, int k)
{
    if (n < 0 || k < 0 || n > kStirlingMax)
        throw DomainError("Stirling index out of range: n=" + std::to_string(n));
    if (k > n)
        throw DomainError("Stirling number requires k <= n (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
}

constexpr double kSeriesTol = 1e-16;
constexpr int kSeriesMaxTerms = 10000;

bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && x == std::floor(x);
}

} // namespace

double ln_gamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("ln_gamma requires x > 0");
    return boost::math::lgamma(x);
}

double rgamma(double x)
{
    if (is_nonpositive_integer(x))
        return 0.0;
    return 1.0 / boost::math::tgamma(x);
}

const ExactInteger &stirling_first_signed(int n, int k)
{
    check_nk(n, k);
    return tables().first[n][k];
}

const ExactInteger &stirling_second(int n, int k)
{
    check_nk(n, k);
    return tables().second[n][k];
}

double stirling_first_signed_d(int n, int k)
{
    check_nk(n, k);
    return tables().first_d[n][k];
}

double stirling_second_d(int n, int k)
{
    check_nk(n, k);
    return tables().second_d[n][k];
}

double kummer_1f1_polynomial(double a, double b, double z)
{
    if (a > 0.0 || a != std::floor(a))
        throw DomainError("kummer_1f1_polynomial requires a nonpositive integer a");
    const int terms = static_cast<int>(-a);
    double term = 1.0, sum = 1.0;
    for (int j = 0; j < terms; ++j)
    {
        if (b + j == 0.0)
            throw DomainError("kummer_1f1_polynomial: (b)_j vanishes inside the truncated sum");
        term *= (a + j) * z / ((b + j) * (j + 1));
        sum += term;
    }
    return sum;
}

double gauss_2f1_series(double a, double b, double c, double z)
{
    if (is_nonpositive_integer(c))
        throw DomainError("gauss_2f1: c must not be a nonpositive integer");
    if (!(std::abs(z) < 1.0))
        throw DomainError("gauss_2f1_series requires |z| < 1");
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < kSeriesMaxTerms; ++n)
    {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
        sum += term;
        if (term == 0.0 || std::abs(term) < kSeriesTol * std::abs(sum))
            return sum;
    }
    throw NumericalInstability("gauss_2f1 series did not converge within 10000 terms");
}

double gauss_2f1(double a, double b, double c, double z)
{
    if (is_nonpositive_integer(c))
        throw DomainError("gauss_2f1: c must not be a nonpositive integer");
    if (z > 0.0 || std::isnan(z))
        throw DomainError("gauss_2f1 is only provided for z <= 0");
    if (z == 0.0)
        return 1.0;
    if (z > -0.5)
        return gauss_2f1_series(a, b, c, z);

    const double w = z / (z - 1.0);
    const double ab = a - b;
    const bool integer_gap = ab == std::floor(ab);
    if (w <= 0.75)
        return std::pow(1.0 - z, -a) * gauss_2f1_series(a, c - b, c, w);
    if (integer_gap)
    {
        // The 1/z continuation degenerates (log case); use the Euler integral when c > b > 0.
        if (!(c > b && b > 0.0))
            std::swap(a, b);
        if (!(c > b && b > 0.0))
            return std::pow(1.0 - z, -a) * gauss_2f1_series(a, c - b, c, w);
        boost::math::quadrature::tanh_sinh<double> ts;
        const double I = ts.integrate(
            [&](double t) { return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) * std::pow(1.0 - z * t, -a); },
            0.0, 1.0, 1e-15);
        return std::exp(ln_gamma(c) - ln_gamma(b) - ln_gamma(c - b)) * I;
    }

    // Continuation to 1/z for z < -3 (a - b not an integer).
    const double t = 1.0 / z;
    const double g_c = boost::math::tgamma(c);
    const double k1 = g_c * boost::math::tgamma(b - a) * rgamma(b) * rgamma(c - a);
    const double k2 = g_c * boost::math::tgamma(a - b) * rgamma(a) * rgamma(c - b);
    double s1 = 0.0, s2 = 0.0;
    if (k1 != 0.0)
        s1 = k1 * std::pow(-z, -a) * gauss_2f1_series(a, 1.0 - c + a, 1.0 - b + a, t);
    if (k2 != 0.0)
        s2 = k2 * std::pow(-z, -b) * gauss_2f1_series(b, 1.0 - c + b, 1.0 - a + b, t);
    return s1 + s2;
}

double gamma_cdf(double x, double shape, double scale)
{
    if (!(shape > 0.0) || !(scale > 0.0))
        throw DomainError("gamma_cdf requires positive shape and scale");
    if (!(x > 0.0))
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    return boost::math::gamma_p(shape, x / scale);
}

namespace testing {

void corrupt_stirling_table()
{
    auto &t = tables();
    t.first[5][2] += 1;
    t.refresh_doubles();
}

void restore_stirling_table()
{
    tables().build();
}

} // namespace testing

} // namespace pppmimo::specfun
