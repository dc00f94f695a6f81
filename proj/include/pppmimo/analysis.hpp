// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// Closed-form outage, throughput, transmission capacity and protocol comparison results.
// Everything here is linear-scale; dB conversion lives in the command-line layer.

#ifndef PPPMIMO_ANALYSIS_HPP
#define PPPMIMO_ANALYSIS_HPP

#include "pppmimo/schemes.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pppmimo {

struct OutageQuery
{
    GammaLawParams glp;
    NetworkParams net;
};

struct TcQuery
{
    GammaLawParams glp;
    double zeta = 1.0;
    double epsilon = 0.1;
    NetworkParams net;
};

//! Arithmetic used for the alternating outage series.
enum class Precision
{
    Double,  //!< binary64 with a 1e12 cancellation guard
    Extended //!< 160-digit binary float, guard scaled to its precision
};

//! pi p Gamma(n+2/alpha) Gamma(1-2/alpha) / Gamma(n).
double eta(double n, double p, double alpha);

//! E_Y[exp(-beta Y/theta) Y^tau] for Y ~ Gamma(u, upsilon); absent Y gives the Kronecker delta in tau.
double self_interference_moment(const std::optional<SelfInterference> &self, double beta, double theta, int tau);

//! lambda (beta Omega/theta)^{2/alpha} eta(n): the exponent of the interference term (p enters once, via eta).
double interference_exponent(const OutageQuery &q);

//! Outage probability F(beta) from the Stirling-number series.
double outage_cdf(const OutageQuery &q, Precision prec = Precision::Double);

//! 1 - F(beta) without the subtraction.
double success_probability(const OutageQuery &q, Precision prec = Precision::Double);

//! Single-stream, no-self-interference closed form 1 - exp(-x - beta/theta).
double outage_cdf_simple(const OutageQuery &q);

//! Outage with no multi-node interference.
double single_user_outage(const GammaLawParams &glp, double beta);

//! zeta p lambda (1 - F(beta)).
double throughput(const SchemeSpec &scheme, const NetworkParams &net, Precision prec = Precision::Double);

//! Throughput-optimal intensity for ZF with M = N.
double lambda_opt_zf(int N, const NetworkParams &net);

struct AntennaOptimum
{
    int value = 1;      //!< chosen integer
    double root = 1.0;  //!< continuous root of the stationarity equation
    bool capped = false;
};

//! Throughput-optimal N for ZF with M = N (best of floor/ceil of the root by direct evaluation).
AntennaOptimum n_opt_zf(const NetworkParams &net);

//! Dense-network (lambda -> infinity) leading term.
double dense_cdf(const OutageQuery &q);
//! High-SINR-threshold leading term.
double highbeta_cdf(const OutageQuery &q);
//! Low-SINR-threshold leading term (requires m > 2/alpha).
double lowbeta_cdf(const OutageQuery &q);

//! |S_dense - S| / S with S = 1 - F (evaluated without the common exponential factors).
double dense_relative_error(const OutageQuery &q);
//! |S_high - S| / S.
double highbeta_relative_error(const OutageQuery &q);
//! |F_low - F| / F.
double lowbeta_relative_error(const OutageQuery &q);

//! Smallest lambda beyond which the dense expansion stays within tol. Search range [1e-8, 1e4].
double dense_validity_threshold(const OutageQuery &q, double tol = 0.15);

enum class AsymptoticKind
{
    HighBeta,
    LowBeta
};

//! Boundary beta (linear) of the high/low expansion's validity region, searched over [-60, 60] dB.
double asymptotic_validity_threshold(AsymptoticKind kind, const OutageQuery &q, double tol = 0.15);

//! Root of the low-beta stream-count equation (continuous) and the resulting integer M.
AntennaOptimum m_opt_lowbeta(Receiver rx, int N, const NetworkParams &net);

//! Optimal stream fraction kappa as N grows, low-beta regime.
double kappa_opt_lowbeta(Receiver rx, const NetworkParams &net);

//! Exact capacity for ZF with M = N (per unit lambda p), floored at 0.
double tc_exact_zf_full(int N, double epsilon, const NetworkParams &net);

//! E_Y[e^{-beta(Y+1)/theta} 1F1(1-m; 1+2/alpha-m; beta(Y+1)/theta)] by the finite double sum.
double tc_expectation_sum(const GammaLawParams &glp, double beta, double alpha);
//! Same expectation through the terminating Kummer polynomial (quadrature over Y when present).
double tc_expectation_kummer(const GammaLawParams &glp, double beta, double alpha);

//! First-order transmission capacity as epsilon approaches the single-user floor.
double tc_small_eps(const TcQuery &tq);

//! Large-antenna capacity (law-of-large-numbers form).
double tc_large_antenna(const TcQuery &tq);

struct LinearScaling
{
    double beta_bar = 0.0;       //!< threshold of the chosen receiver
    bool linear = false;         //!< beta < beta_bar
    bool zf_window_wider = false; //!< rho / r^alpha > kappa / (1 - kappa)
    double beta_bar_mrc = 0.0;
    double beta_bar_zf = 0.0;
};

LinearScaling linear_scaling_region(Receiver rx, double kappa, const NetworkParams &net);

//! kappa^* of the capacity-optimal configuration.
double kappa_star_ratio(Receiver rx, const NetworkParams &net);
//! Integer M = max(1, min(floor(N kappa^*), N)).
int kappa_star(Receiver rx, const NetworkParams &net, int N);

//! Large-N capacity limits per antenna: kappa times the constants of the MRC / ZF scaling laws.
double tc_scaling_constant(Receiver rx, double kappa, double epsilon, const NetworkParams &net);

//! g(M) = R M^{2/alpha} Gamma(N_I/M) / Gamma(N_I/M + 2/alpha).
double ostbc_g(const OstbcCode &code, double alpha);
//! (g_lb, g_ub) for M >= 2.
std::pair<double, double> ostbc_g_bounds(int M, double alpha);

//! Whether spatial multiplexing (M streams) scales better than the given OSTBC at high SNR.
bool sm_beats_ostbc(Receiver rx, int M, int N, const OstbcCode &code, const NetworkParams &net);

//! Advisory low-beta condition for Alamouti over single-antenna transmission.
bool alamouti_beats_simo_lowbeta(int N, double alpha);

//! Scheduled intensity (1 - exp(-4 lambda r_gz^2)) / (4 r_gz^2); lambda = +inf gives the dense limit.
double ca_intensity(double lambda, double r_gz);

//! Upper bound on coordinated-access throughput.
double ca_throughput_bound(double lambda, double r_gz, const NetworkParams &net);

//! Guard half-width maximizing the bound over (0, 100 r_tr].
double ca_optimal_guard(double lambda, const NetworkParams &net);

//! Per (lambda_i, p_j): ALOHA throughput > optimized CA bound. Row index = lambda, column = p.
std::vector<std::vector<bool>> aloha_vs_ca_region(const SchemeSpec &scheme, const NetworkParams &net,
                                                  const std::vector<double> &lambdas, const std::vector<double> &ps);

//! Contention density: lambda p solving F(beta; lambda p) = epsilon.
double invert_outage_for_density(const GammaLawParams &glp, double beta, double epsilon, double alpha,
                                 Precision prec = Precision::Double);

//! zeta * density * (1 - epsilon).
double tc_numeric(const GammaLawParams &glp, double beta, double epsilon, double alpha,
                  Precision prec = Precision::Double);

} // namespace pppmimo

#endif
