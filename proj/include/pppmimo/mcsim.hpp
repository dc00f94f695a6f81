// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// Monte Carlo estimators: PPP interferer fields, exact per-scheme SINR, and the
// lattice coordinated-access protocol.

#ifndef PPPMIMO_MCSIM_HPP
#define PPPMIMO_MCSIM_HPP

#include "pppmimo/rng.hpp"
#include "pppmimo/schemes.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace pppmimo {

struct SimConfig
{
    std::uint64_t trials = 50000;
    std::uint64_t seed = 1;
    double truncation_tol = 0.05;
    std::optional<double> max_radius_override;
    bool parallel = true; //!< false runs the serial reference path (same numbers)

    void validate() const;
};

struct SimEstimate
{
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t redraws = 0; //!< ill-conditioned ZF channels that were resampled
};

//! Trials per independently seeded block.
inline constexpr std::uint64_t kBlockTrials = 256;

//! Radius beyond which the mean interference is at most tol of the total seen from r_tr outward.
double truncation_radius(const NetworkParams &net, const GammaLawParams &glp, double tol);

struct Interferer
{
    std::array<double, 2> position;
    CMatrix H; //!< N x M
};

//! PPP of intensity lambda p on the disc of radius R with i.i.d. CN(0,1) channel matrices.
std::vector<Interferer> sample_field(const NetworkParams &net, double R, int N, int M, RandomStream &rng);

//! Exact SINR of stream k (1-based) with an MRC receiver.
double sinr_mrc(const CMatrix &H0, const std::vector<Interferer> &field, const NetworkParams &net, int k);

//! Exact SINR of stream k with a ZF receiver. Throws NumericalInstability when cond(H0^H H0) > 1e12.
double sinr_zf(const CMatrix &H0, const std::vector<Interferer> &field, const NetworkParams &net, int k);

//! Exact SINR of symbol k of an OSTBC (symbol-averaged interference power).
double sinr_ostbc(const OstbcCode &code, const CMatrix &H0, const std::vector<Interferer> &field,
                  const NetworkParams &net, int k);

//! Empirical Pr(SINR <= beta) for every beta in betas; net.beta is ignored. One SINR draw per trial
//! serves all thresholds.
std::vector<SimEstimate> simulate_outage_curve(const SchemeSpec &scheme, const NetworkParams &net,
                                               const std::vector<double> &betas, const SimConfig &cfg,
                                               int stream = 1);

SimEstimate simulate_outage(const SchemeSpec &scheme, const NetworkParams &net, const SimConfig &cfg,
                            int stream = 1);

//! Raw SINR samples (cfg.trials of them), in trial order.
std::vector<double> simulate_sinr(const SchemeSpec &scheme, const NetworkParams &net, const SimConfig &cfg,
                                  int stream = 1);

//! Normalized interference power K_Sigma of symbol k, fresh (H0, Hl) per sample.
std::vector<double> sample_k_sigma(const OstbcCode &code, int N, int k, const SimConfig &cfg);

//! Throughput lambda_CA * Pr(SINR >= beta) of the single-antenna coordinated-access protocol.
SimEstimate simulate_ca(double lambda, double r_gz, const NetworkParams &net, const SimConfig &cfg);

} // namespace pppmimo

#endif
