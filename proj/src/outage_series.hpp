// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// Stirling-number series for the success probability, templated on the scalar type.
// Internal header.

#ifndef PPPMIMO_OUTAGE_SERIES_HPP
#define PPPMIMO_OUTAGE_SERIES_HPP

#include "pppmimo/errors.hpp"
#include "pppmimo/specfun.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace pppmimo::detail {

using Extended = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<160>>;

template <class Real>
struct SeriesTraits;

template <>
struct SeriesTraits<double>
{
    static constexpr double guard = 1e12;
    static double s1(int n, int k) { return specfun::stirling_first_signed_d(n, k); }
    static double s2(int n, int k) { return specfun::stirling_second_d(n, k); }
};

template <>
struct SeriesTraits<Extended>
{
    static inline const Extended guard{1e130};

    struct Tables
    {
        std::vector<Extended> first, second;
        Tables()
        {
            constexpr int D = specfun::kStirlingMax + 1;
            first.resize(D * D);
            second.resize(D * D);
            for (int n = 0; n < D; ++n)
                for (int k = 0; k <= n; ++k)
                {
                    first[n * D + k] = Extended(specfun::stirling_first_signed(n, k));
                    second[n * D + k] = Extended(specfun::stirling_second(n, k));
                }
        }
    };

    static const Tables &tables()
    {
        static const Tables t;
        return t;
    }
    static const Extended &s1(int n, int k) { return tables().first[n * (specfun::kStirlingMax + 1) + k]; }
    static const Extended &s2(int n, int k) { return tables().second[n * (specfun::kStirlingMax + 1) + k]; }
};

// Neumaier-compensated accumulator.
template <class Real>
struct CompensatedSum
{
    Real sum{0}, comp{0};
    void add(const Real &v)
    {
        using std::abs;
        const Real t = sum + v;
        if (abs(sum) >= abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    Real value() const { return sum + comp; }
};

template <class Real>
struct SeriesValue
{
    Real sigma;    // (-1)^{m-1} times the double sum; positive
    Real max_term; // largest individual term magnitude
};

// Moments E_Y[e^{-bY} Y^tau], tau = 0..m-1, folded into Y_l = sum_tau C(l,tau) E_tau.
template <class Real>
std::vector<Real> folded_moments(int m, const Real &b, bool has_self, const Real &u, const Real &upsilon)
{
    std::vector<Real> E(m, Real(0));
    if (!has_self)
        E[0] = 1;
    else
    {
        using std::pow;
        const Real s = b + Real(1) / upsilon;
        E[0] = pow(Real(1) + upsilon * b, -u);
        for (int t = 1; t < m; ++t)
            E[t] = E[t - 1] * (Real(t - 1) + u) / s;
    }
    std::vector<Real> Y(m, Real(0));
    for (int l = 0; l < m; ++l)
    {
        Real c = 1;
        Real acc = 0;
        for (int t = 0; t <= l; ++t)
        {
            acc += c * E[t];
            c = c * Real(l - t) / Real(t + 1);
        }
        Y[l] = acc;
    }
    return Y;
}

// sigma = (-1)^{m-1} sum_l C(m-1,l)(-b)^l Y_l sum_i s(m-l,i+1) d^i sum_j S(i,j)(-x)^j
template <class Real>
SeriesValue<Real> outage_series(int m, const Real &b, const Real &x, const Real &d, const std::vector<Real> &Y)
{
    using std::abs;
    using Tr = SeriesTraits<Real>;
    if (m < 1 || m > specfun::kStirlingMax)
        throw DomainError("outage series needs 1 <= m <= " + std::to_string(specfun::kStirlingMax));

    // Touchard-type polynomials T_i(x) = sum_j S(i,j)(-x)^j and their largest term.
    std::vector<Real> T(m), Tmax(m), xp(m);
    xp[0] = 1;
    for (int j = 1; j < m; ++j)
        xp[j] = xp[j - 1] * x;
    for (int i = 0; i < m; ++i)
    {
        CompensatedSum<Real> acc;
        Real big = 0;
        for (int j = 0; j <= i; ++j)
        {
            const Real mag = Tr::s2(i, j) * xp[j];
            if (mag > big)
                big = mag;
            acc.add((j % 2) ? Real(-mag) : mag);
        }
        T[i] = acc.value();
        Tmax[i] = big;
    }

    CompensatedSum<Real> total;
    Real max_term = 0;
    Real binom = 1; // C(m-1, l)
    Real bp = 1;    // b^l
    for (int l = 0; l < m; ++l)
    {
        const Real outer = binom * bp * Y[l];
        Real dp = 1;
        for (int i = 0; i <= m - l - 1; ++i)
        {
            const Real &s = Tr::s1(m - l, i + 1);
            const Real coef = outer * s * dp;
            const Real term = (l % 2) ? Real(-coef * T[i]) : Real(coef * T[i]);
            total.add(term);
            const Real mag = abs(coef) * Tmax[i];
            if (mag > max_term)
                max_term = mag;
            dp *= d;
        }
        binom = binom * Real(m - 1 - l) / Real(l + 1);
        bp *= b;
    }
    Real sigma = total.value();
    if ((m - 1) % 2)
        sigma = -sigma;

    if (!(sigma > 0) || max_term > Tr::guard * sigma)
        throw NumericalInstability("outage series cancellation exceeds guard (m=" + std::to_string(m) + ")");
    return {sigma, max_term};
}

} // namespace pppmimo::detail

#endif
