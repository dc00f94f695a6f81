// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// Seeded random streams. Each block of trials gets its own engine derived from
// (seed, stream tag, block index), so results do not depend on thread count.

#ifndef PPPMIMO_RNG_HPP
#define PPPMIMO_RNG_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace pppmimo {

//! Identifies the generator and stream layout; written into every simulation header.
inline constexpr const char *kRngVersion = "mt19937_64/seedseq-block256/v1";

class RandomStream
{
public:
    RandomStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t block)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32),
                          static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
        eng_.seed(seq);
    }

    explicit RandomStream(std::uint64_t seed) : RandomStream(seed, 0, 0) {}

    double uniform() { return unif_(eng_); }

    //! Standard real normal.
    double normal() { return norm_(eng_); }

    //! Circularly-symmetric complex Gaussian with unit variance.
    std::complex<double> cnormal()
    {
        constexpr double s = 0.70710678118654752440;
        return {s * norm_(eng_), s * norm_(eng_)};
    }

    void fill_cnormal(Eigen::MatrixXcd &A)
    {
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            for (Eigen::Index i = 0; i < A.rows(); ++i)
                A(i, j) = cnormal();
    }

    double exponential() { return exp_(eng_); }

    std::uint64_t poisson(double mean)
    {
        if (!(mean > 0.0))
            return 0;
        std::poisson_distribution<std::uint64_t> d(mean);
        return d(eng_);
    }

    //! Number of failures before the first success, success probability q in (0,1].
    std::uint64_t geometric(double q)
    {
        if (q >= 1.0)
            return 0;
        std::geometric_distribution<std::uint64_t> d(q);
        return d(eng_);
    }

    double gamma(double shape, double scale)
    {
        std::gamma_distribution<double> d(shape, scale);
        return d(eng_);
    }

    std::mt19937_64 &engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    std::normal_distribution<double> norm_{0.0, 1.0};
    std::exponential_distribution<double> exp_{1.0};
};

} // namespace pppmimo

#endif
