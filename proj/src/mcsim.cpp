// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#include "pppmimo/mcsim.hpp"
#include "pppmimo/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>

namespace pppmimo {

using boost::math::double_constants::pi;
using boost::math::double_constants::two_pi;

namespace {

constexpr std::uint64_t kTagOutage = 0x6f757467; // "outg"
constexpr std::uint64_t kTagCa = 0x63615f73;     // "ca_s"
constexpr double kZfConditionLimit = 1e12;

using CVector = Eigen::VectorXcd;

// W_q and Z_q of every symbol are real-linear in Q = H0^H Hl; precompute their coefficients
// so each interferer costs one M x M product and a few dot products.
struct OstbcKernel
{
    int M = 0;
    // per functional f: f(Q) = sum_ij a_ij Q_ij + b_ij conj(Q_ij), stored column-major in M*M
    std::vector<std::vector<cplx>> a, b;

    OstbcKernel() = default;
    OstbcKernel(const OstbcCode &code, int k) : M(code.M())
    {
        const int Ns = code.N_s();
        a.assign(2 * Ns, std::vector<cplx>(M * M));
        b.assign(2 * Ns, std::vector<cplx>(M * M));
        const cplx I(0.0, 1.0);
        std::vector<std::pair<cplx, cplx>> re, im;
        CMatrix E = CMatrix::Zero(M, M);
        for (int j = 0; j < M; ++j)
            for (int i = 0; i < M; ++i)
            {
                E.setZero();
                E(i, j) = 1.0;
                decode_coefficients_gram(code, E, k, re);
                E(i, j) = I;
                decode_coefficients_gram(code, E, k, im);
                for (int q = 0; q < Ns; ++q)
                {
                    const cplx vals_re[2] = {re[q].first, re[q].second};
                    const cplx vals_im[2] = {im[q].first, im[q].second};
                    for (int s = 0; s < 2; ++s)
                    {
                        a[2 * q + s][j * M + i] = 0.5 * (vals_re[s] - I * vals_im[s]);
                        b[2 * q + s][j * M + i] = 0.5 * (vals_re[s] + I * vals_im[s]);
                    }
                }
            }
    }

    //! sum_q |W_q|^2 + |Z_q|^2 for the given Q.
    double power(const CMatrix &Q) const
    {
        const cplx *qd = Q.data();
        double s = 0.0;
        for (std::size_t f = 0; f < a.size(); ++f)
        {
            cplx acc = 0.0;
            for (int e = 0; e < M * M; ++e)
                acc += a[f][e] * qd[e] + b[f][e] * std::conj(qd[e]);
            s += std::norm(acc);
        }
        return s;
    }
};

// Combining direction and desired-signal terms for the SM receivers.
struct SmFront
{
    CVector w;           // unit-norm combining vector
    double signal = 0.0; // rho/(M r^a) * effective gain
    double self = 0.0;   // self-interference power (MRC only)
};

SmFront mrc_front(const CMatrix &H0, const NetworkParams &net, int k)
{
    const int M = static_cast<int>(H0.cols());
    const double c = net.rho / (M * std::pow(net.r_tr, net.alpha));
    const double g = H0.col(k - 1).squaredNorm();
    SmFront f{H0.col(k - 1) / std::sqrt(g), c * g, 0.0};
    for (int q = 0; q < M; ++q)
        if (q != k - 1)
            f.self += c * std::norm(f.w.dot(H0.col(q)));
    return f;
}

// Returns nullopt when the Gram matrix is too ill-conditioned.
std::optional<SmFront> zf_front(const CMatrix &H0, const NetworkParams &net, int k)
{
    const int M = static_cast<int>(H0.cols());
    const CMatrix G = H0.adjoint() * H0;
    if (M > 1)
    {
        const Eigen::SelfAdjointEigenSolver<CMatrix> es(G, Eigen::EigenvaluesOnly);
        const auto &ev = es.eigenvalues();
        if (!(ev(0) > 0.0) || ev(M - 1) / ev(0) > kZfConditionLimit)
            return std::nullopt;
    }
    const CMatrix Ginv = G.partialPivLu().inverse();
    const double gkk = Ginv(k - 1, k - 1).real();
    const CVector gk = H0 * Ginv.col(k - 1);
    return SmFront{gk / std::sqrt(gkk), net.rho / (M * std::pow(net.r_tr, net.alpha) * gkk), 0.0};
}

void check_stream(int k, int count)
{
    if (k < 1 || k > count)
        throw DomainError("stream index out of range");
}

double pathloss(const std::array<double, 2> &pos, double alpha)
{
    const double r2 = pos[0] * pos[0] + pos[1] * pos[1];
    return std::pow(r2, -0.5 * alpha);
}

// Runs fn(rng, trial_index) for every trial, one engine per block of kBlockTrials.
template <class Fn>
void for_each_block(const SimConfig &cfg, std::uint64_t tag, Fn &&fn)
{
    const std::int64_t nblocks = static_cast<std::int64_t>((cfg.trials + kBlockTrials - 1) / kBlockTrials);
    std::exception_ptr err;
    std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1) if (cfg.parallel)
    for (std::int64_t blk = 0; blk < nblocks; ++blk)
    {
        try
        {
            RandomStream rng(cfg.seed, tag, static_cast<std::uint64_t>(blk));
            const std::uint64_t first = static_cast<std::uint64_t>(blk) * kBlockTrials;
            const std::uint64_t last = std::min(cfg.trials, first + kBlockTrials);
            for (std::uint64_t t = first; t < last; ++t)
                fn(rng, static_cast<std::size_t>(t), static_cast<std::size_t>(blk));
        }
        catch (...)
        {
            std::lock_guard<std::mutex> lock(mu);
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);
}

struct SinrRun
{
    std::vector<double> sinr;
    std::uint64_t redraws = 0;
};

SinrRun run_sinr(const SchemeSpec &scheme, const NetworkParams &net, const SimConfig &cfg, int stream)
{
    cfg.validate();
    const GammaLawParams glp = gamma_params(scheme, net);
    const int N = scheme.N, M = scheme.M;
    check_stream(stream, scheme.variant == Variant::OSTBC ? scheme.code->N_s() : M);

    // Points inside the default radius come from one stream and any extra annulus from another,
    // so enlarging the disc keeps the inner field of every trial unchanged.
    const double R0 = truncation_radius(net, glp, cfg.truncation_tol);
    const double R = cfg.max_radius_override ? *cfg.max_radius_override : R0;
    const double R_in = std::min(R, R0);
    const double lp = net.lambda * net.p;
    const double mean_inner = lp * pi * R_in * R_in;
    const double mean_outer = lp * pi * (R * R - R_in * R_in);
    // mean interference beyond R, added deterministically
    const double far = glp.n * glp.omega * two_pi * lp * std::pow(R, 2.0 - net.alpha) / (net.alpha - 2.0);
    const double half_alpha = 0.5 * net.alpha;

    OstbcKernel ok;
    double ostbc_sig = 0.0, ostbc_int = 0.0;
    if (scheme.variant == Variant::OSTBC)
    {
        ok = OstbcKernel(*scheme.code, stream);
        const auto rate = code_rate(*scheme.code);
        const double Rd = static_cast<double>(rate.numerator()) / rate.denominator();
        ostbc_int = net.rho / (Rd * M);
        ostbc_sig = ostbc_int / std::pow(net.r_tr, net.alpha);
    }
    const double sm_int = net.rho / M;

    const std::size_t nblocks = (cfg.trials + kBlockTrials - 1) / kBlockTrials;
    SinrRun out;
    out.sinr.assign(cfg.trials, 0.0);
    std::vector<std::uint64_t> redraws(nblocks, 0);

    std::vector<std::unique_ptr<RandomStream>> outer(nblocks);
    for_each_block(cfg, kTagOutage, [&](RandomStream &rng, std::size_t t, std::size_t blk) {
        if (mean_outer > 0.0 && !outer[blk])
            outer[blk] = std::make_unique<RandomStream>(cfg.seed, kTagOutage + 1, blk);
        CMatrix H0(N, M), Hl(N, M), Q(M, M);
        rng.fill_cnormal(H0);
        SmFront front;
        double signal = 0.0;
        if (scheme.variant == Variant::SM_MRC)
        {
            front = mrc_front(H0, net, stream);
            signal = front.signal;
        }
        else if (scheme.variant == Variant::SM_ZF)
        {
            auto f = zf_front(H0, net, stream);
            while (!f)
            {
                ++redraws[blk];
                rng.fill_cnormal(H0);
                f = zf_front(H0, net, stream);
            }
            front = *f;
            signal = front.signal;
        }
        else
            signal = ostbc_sig * H0.squaredNorm();

        const double h0n = H0.squaredNorm();
        double interf = 0.0;
        auto add_points = [&](RandomStream &g, double mean, double r2_lo, double r2_span) {
            const std::uint64_t count = g.poisson(mean);
            for (std::uint64_t i = 0; i < count; ++i)
            {
                const double gain = std::pow(r2_lo + r2_span * g.uniform(), -half_alpha);
                g.fill_cnormal(Hl);
                if (scheme.variant == Variant::OSTBC)
                {
                    Q.noalias() = H0.adjoint() * Hl;
                    interf += ostbc_int * gain * ok.power(Q) / h0n;
                }
                else
                    interf += sm_int * gain * (Hl.adjoint() * front.w).squaredNorm();
            }
        };
        add_points(rng, mean_inner, 0.0, R_in * R_in);
        if (mean_outer > 0.0)
            add_points(*outer[blk], mean_outer, R_in * R_in, R * R - R_in * R_in);
        out.sinr[t] = signal / (front.self + interf + far + 1.0);
    });
    for (auto r : redraws)
        out.redraws += r;
    return out;
}

} // namespace

void SimConfig::validate() const
{
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    if (!(truncation_tol > 0.0 && truncation_tol <= 0.1))
        throw ConfigError("truncation_tol must lie in (0, 0.1]");
    if (max_radius_override && !(*max_radius_override > 0.0))
        throw ConfigError("max_radius_override must be positive");
}

double truncation_radius(const NetworkParams &net, const GammaLawParams &, double tol)
{
    if (!(net.alpha > 2.0))
        throw DomainError("truncation_radius requires alpha > 2");
    if (!(tol > 0.0 && tol < 1.0))
        throw DomainError("truncation tolerance must lie in (0,1)");
    return net.r_tr * std::pow(tol, -1.0 / (net.alpha - 2.0));
}

std::vector<Interferer> sample_field(const NetworkParams &net, double R, int N, int M, RandomStream &rng)
{
    if (!(R > 0.0))
        throw DomainError("field radius must be positive");
    std::vector<Interferer> field;
    const std::uint64_t count = rng.poisson(net.lambda * net.p * pi * R * R);
    field.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
    {
        const double r = R * std::sqrt(rng.uniform());
        const double phi = two_pi * rng.uniform();
        Interferer it{{r * std::cos(phi), r * std::sin(phi)}, CMatrix(N, M)};
        rng.fill_cnormal(it.H);
        field.push_back(std::move(it));
    }
    return field;
}

double sinr_mrc(const CMatrix &H0, const std::vector<Interferer> &field, const NetworkParams &net, int k)
{
    const int M = static_cast<int>(H0.cols());
    check_stream(k, M);
    const SmFront f = mrc_front(H0, net, k);
    double interf = 0.0;
    for (const auto &it : field)
        interf += pathloss(it.position, net.alpha) * (it.H.adjoint() * f.w).squaredNorm();
    return f.signal / (f.self + net.rho / M * interf + 1.0);
}

double sinr_zf(const CMatrix &H0, const std::vector<Interferer> &field, const NetworkParams &net, int k)
{
    const int M = static_cast<int>(H0.cols());
    check_stream(k, M);
    if (M > H0.rows())
        throw DomainError("ZF needs M <= N");
    const auto f = zf_front(H0, net, k);
    if (!f)
        throw NumericalInstability("ZF channel Gram matrix is ill-conditioned");
    double interf = 0.0;
    for (const auto &it : field)
        interf += pathloss(it.position, net.alpha) * (it.H.adjoint() * f->w).squaredNorm();
    return f->signal / (net.rho / M * interf + 1.0);
}

double sinr_ostbc(const OstbcCode &code, const CMatrix &H0, const std::vector<Interferer> &field,
                  const NetworkParams &net, int k)
{
    check_stream(k, code.N_s());
    if (H0.cols() != code.M())
        throw DomainError("channel columns must equal the code's M");
    const auto rate = code_rate(code);
    const double c = net.rho / (static_cast<double>(rate.numerator()) / rate.denominator() * code.M());
    const double h0n = H0.squaredNorm();
    double interf = 0.0;
    for (const auto &it : field)
        interf += pathloss(it.position, net.alpha) * k_sigma(code, H0, it.H, k);
    return c * h0n / std::pow(net.r_tr, net.alpha) / (c * interf + 1.0);
}

std::vector<double> simulate_sinr(const SchemeSpec &scheme, const NetworkParams &net, const SimConfig &cfg, int stream)
{
    return run_sinr(scheme, net, cfg, stream).sinr;
}

std::vector<SimEstimate> simulate_outage_curve(const SchemeSpec &scheme, const NetworkParams &net,
                                               const std::vector<double> &betas, const SimConfig &cfg, int stream)
{
    for (double b : betas)
        if (!(b > 0.0))
            throw DomainError("thresholds must be positive");
    NetworkParams probe = net;
    if (!betas.empty())
        probe.beta = betas.front();
    const SinrRun run = run_sinr(scheme, probe, cfg, stream);
    std::vector<double> sorted = run.sinr;
    std::sort(sorted.begin(), sorted.end());
    std::vector<SimEstimate> out;
    out.reserve(betas.size());
    const double n = static_cast<double>(cfg.trials);
    for (double b : betas)
    {
        const auto hits = std::upper_bound(sorted.begin(), sorted.end(), b) - sorted.begin();
        SimEstimate e;
        e.value = hits / n;
        e.std_error = std::sqrt(e.value * (1.0 - e.value) / n);
        e.trials = cfg.trials;
        e.seed = cfg.seed;
        e.redraws = run.redraws;
        out.push_back(e);
    }
    return out;
}

SimEstimate simulate_outage(const SchemeSpec &scheme, const NetworkParams &net, const SimConfig &cfg, int stream)
{
    return simulate_outage_curve(scheme, net, {net.beta}, cfg, stream).front();
}

std::vector<double> sample_k_sigma(const OstbcCode &code, int N, int k, const SimConfig &cfg)
{
    cfg.validate();
    check_stream(k, code.N_s());
    const OstbcKernel ok(code, k);
    const int M = code.M();
    std::vector<double> out(cfg.trials);
    for_each_block(cfg, kTagOutage ^ 0x4b, [&](RandomStream &rng, std::size_t t, std::size_t) {
        CMatrix H0(N, M), Hl(N, M);
        rng.fill_cnormal(H0);
        rng.fill_cnormal(Hl);
        const CMatrix Q = H0.adjoint() * Hl;
        out[t] = ok.power(Q) / H0.squaredNorm();
    });
    return out;
}

SimEstimate simulate_ca(double lambda, double r_gz, const NetworkParams &net, const SimConfig &cfg)
{
    cfg.validate();
    if (!(r_gz > 0.0))
        throw DomainError("r_gz must be positive");
    if (!(lambda >= 0.0))
        throw DomainError("lambda must be >= 0");
    if (!(net.alpha > 2.0) || !(net.r_tr > 0.0) || !(net.rho > 0.0) || !(net.beta > 0.0))
        throw DomainError("invalid network parameters");

    const double side = 2.0 * r_gz;
    const double occ = -std::expm1(-lambda * side * side);
    const double lca = occ / (side * side);
    const double R = cfg.max_radius_override
                         ? *cfg.max_radius_override
                         : std::max(net.r_tr * std::pow(cfg.truncation_tol, -1.0 / (net.alpha - 2.0)), 10.0 * r_gz);
    const double far = net.rho * lca * two_pi * std::pow(R, 2.0 - net.alpha) / (net.alpha - 2.0);
    const double signal = net.rho * std::pow(net.r_tr, -net.alpha);

    // Lattice squares other than the typical receiver's own that can reach the disc.
    std::vector<std::array<double, 2>> centres;
    const int span = static_cast<int>(std::ceil((R + side) / side));
    const double reach = R + std::sqrt(2.0) * r_gz;
    for (int i = -span; i <= span; ++i)
        for (int j = -span; j <= span; ++j)
            if ((i || j) && std::hypot(i * side, j * side) <= reach)
                centres.push_back({i * side, j * side});
    const std::uint64_t nsq = centres.size();

    const std::size_t nblocks = (cfg.trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<std::uint64_t> wins(nblocks, 0);
    for_each_block(cfg, kTagCa, [&](RandomStream &rng, std::size_t, std::size_t blk) {
        const double h = rng.exponential();
        double interf = 0.0;
        if (occ > 0.0)
            for (std::uint64_t s = rng.geometric(occ); s < nsq; s += 1 + rng.geometric(occ))
            {
                const double x = centres[s][0] + side * (rng.uniform() - 0.5);
                const double y = centres[s][1] + side * (rng.uniform() - 0.5);
                const double r2 = x * x + y * y;
                if (r2 > R * R)
                    continue;
                interf += std::pow(r2, -0.5 * net.alpha) * rng.exponential();
            }
        if (signal * h / (net.rho * interf + far + 1.0) >= net.beta)
            ++wins[blk];
    });
    std::uint64_t total = 0;
    for (auto w : wins)
        total += w;
    const double n = static_cast<double>(cfg.trials);
    const double ps = total / n;
    SimEstimate e;
    e.value = lca * ps;
    e.std_error = lca * std::sqrt(ps * (1.0 - ps) / n);
    e.trials = cfg.trials;
    e.seed = cfg.seed;
    return e;
}

} // namespace pppmimo
