// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// Special functions and exact combinatorics used by the closed-form results.

#ifndef PPPMIMO_SPECFUN_HPP
#define PPPMIMO_SPECFUN_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace pppmimo::specfun {

using ExactInteger = boost::multiprecision::cpp_int;

//! Largest n supported by the memoized Stirling tables.
inline constexpr int kStirlingMax = 64;

//! ln Gamma(x) for x > 0.
double ln_gamma(double x);

//! 1/Gamma(x), returning 0 at the poles x = 0, -1, -2, ...
double rgamma(double x);

//! Signed Stirling number of the first kind s(n,k), 0 <= k <= n <= 64.
const ExactInteger &stirling_first_signed(int n, int k);

//! Stirling number of the second kind S(n,k), 0 <= k <= n <= 64.
const ExactInteger &stirling_second(int n, int k);

//! Same numbers rounded to double (cached); |s(64,k)| < 1e90 so no overflow.
double stirling_first_signed_d(int n, int k);
double stirling_second_d(int n, int k);

//! Terminating Kummer series sum_{j=0}^{-a} (a)_j z^j / ((b)_j j!) for a in {0,-1,-2,...}.
double kummer_1f1_polynomial(double a, double b, double z);

//! Plain Gauss series for |z| < 1, no transformation (terminates at 1e-16 relative or 10000 terms).
double gauss_2f1_series(double a, double b, double c, double z);

//! Gauss hypergeometric 2F1(a,b;c;z) for z <= 0.
double gauss_2f1(double a, double b, double c, double z);

//! Regularized lower incomplete gamma P(shape, x/scale).
double gamma_cdf(double x, double shape, double scale);

namespace testing {
//! Flip one entry of the first-kind table (fault injection for the validation suite).
void corrupt_stirling_table();
//! Rebuild the tables from the recurrences.
void restore_stirling_table();
} // namespace testing

} // namespace pppmimo::specfun

#endif
