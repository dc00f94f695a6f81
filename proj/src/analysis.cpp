// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#include "pppmimo/analysis.hpp"
#include "pppmimo/errors.hpp"
#include "pppmimo/specfun.hpp"
#include "outage_series.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pppmimo {

using specfun::ln_gamma;
using boost::math::double_constants::pi;

namespace {

constexpr double kClampSlack = 1e-9;

void check_query(const OutageQuery &q)
{
    const auto &g = q.glp;
    const auto &n = q.net;
    if (!(n.lambda >= 0.0) || std::isnan(n.lambda))
        throw DomainError("lambda must be >= 0");
    if (!(n.p >= 0.0 && n.p <= 1.0))
        throw DomainError("p must lie in [0,1]");
    if (!(n.alpha > 2.0))
        throw DomainError("alpha must exceed 2");
    if (!(n.beta > 0.0) || !std::isfinite(n.beta))
        throw DomainError("beta must be positive");
    if (g.m < 1 || !(g.theta > 0.0) || !(g.n > 0.0) || !(g.omega > 0.0))
        throw DomainError("invalid gamma-law parameters");
    if (g.self && !(g.self->u > 0.0 && g.self->upsilon > 0.0))
        throw DomainError("self-interference shape and scale must be positive");
}

// Series ingredients shared by the exact CDF and the asymptotic error ratios.
struct Parts
{
    int m;
    double b, x, d;
    std::vector<double> Y;
    double sigma; // positive series value; S = exp(-x-b) sigma / Gamma(m)
};

Parts series_parts(const OutageQuery &q)
{
    check_query(q);
    Parts P;
    P.m = q.glp.m;
    P.b = q.net.beta / q.glp.theta;
    P.x = interference_exponent(q);
    P.d = 2.0 / q.net.alpha;
    const bool has_self = q.glp.self.has_value();
    P.Y = detail::folded_moments<double>(P.m, P.b, has_self, has_self ? q.glp.self->u : 0.0,
                                         has_self ? q.glp.self->upsilon : 1.0);
    P.sigma = detail::outage_series<double>(P.m, P.b, P.x, P.d, P.Y).sigma;
    return P;
}

double success_extended(const OutageQuery &q)
{
    using detail::Extended;
    check_query(q);
    const int m = q.glp.m;
    const Extended b = Extended(q.net.beta) / Extended(q.glp.theta);
    const Extended d = Extended(2) / Extended(q.net.alpha);
    // x assembled in extended precision from the same ingredients as interference_exponent.
    const Extended ratio = Extended(q.net.beta) * Extended(q.glp.omega) / Extended(q.glp.theta);
    const Extended eta_ext = Extended(eta(q.glp.n, q.net.p, q.net.alpha));
    const Extended x = Extended(q.net.lambda) * pow(ratio, d) * eta_ext;
    const bool has_self = q.glp.self.has_value();
    const auto Y = detail::folded_moments<Extended>(m, b, has_self, Extended(has_self ? q.glp.self->u : 0.0),
                                                    Extended(has_self ? q.glp.self->upsilon : 1.0));
    const auto sv = detail::outage_series<Extended>(m, b, x, d, Y);
    Extended fact = 1;
    for (int k = 2; k < m; ++k)
        fact *= k;
    const Extended S = exp(-x - b) * sv.sigma / fact;
    return S.convert_to<double>();
}

double clamp_probability(double F)
{
    if (F < -kClampSlack || F > 1.0 + kClampSlack || std::isnan(F))
        throw NumericalInstability("probability left [0,1] beyond rounding slack");
    return std::clamp(F, 0.0, 1.0);
}

double pos(double v)
{
    return v > 0.0 ? v : 0.0;
}

// Bisection on a bracket [lo, hi] where f(lo) and f(hi) differ in sign; runs to machine resolution.
template <class F>
double bisect(F &&f, double lo, double hi, int iters = 200)
{
    double flo = f(lo);
    for (int it = 0; it < iters; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0))
        {
            lo = mid;
            flo = fm;
        }
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double eta(double n, double p, double alpha)
{
    if (!(alpha > 2.0))
        throw DomainError("eta requires alpha > 2");
    if (!(n > 0.0))
        throw DomainError("eta requires n > 0");
    if (p == 0.0)
        return 0.0;
    const double d = 2.0 / alpha;
    return pi * p * std::exp(ln_gamma(n + d) + ln_gamma(1.0 - d) - ln_gamma(n));
}

double self_interference_moment(const std::optional<SelfInterference> &self, double beta, double theta, int tau)
{
    if (tau < 0)
        throw DomainError("tau must be >= 0");
    if (!self)
        return tau == 0 ? 1.0 : 0.0;
    const double u = self->u, ups = self->upsilon;
    const double s = beta / theta + 1.0 / ups;
    return std::exp(ln_gamma(tau + u) - ln_gamma(u) - u * std::log(ups) - (tau + u) * std::log(s));
}

double interference_exponent(const OutageQuery &q)
{
    if (q.net.lambda == 0.0)
        return 0.0;
    const double d = 2.0 / q.net.alpha;
    return q.net.lambda * std::pow(q.net.beta * q.glp.omega / q.glp.theta, d) * eta(q.glp.n, q.net.p, q.net.alpha);
}

double success_probability(const OutageQuery &q, Precision prec)
{
    if (prec == Precision::Extended)
        return success_extended(q);
    const Parts P = series_parts(q);
    return std::exp(std::log(P.sigma) - P.x - P.b - ln_gamma(P.m));
}

double outage_cdf(const OutageQuery &q, Precision prec)
{
    return clamp_probability(1.0 - success_probability(q, prec));
}

double outage_cdf_simple(const OutageQuery &q)
{
    check_query(q);
    if (q.glp.m != 1 || q.glp.self)
        throw DomainError("outage_cdf_simple requires m = 1 and no self-interference");
    return -std::expm1(-interference_exponent(q) - q.net.beta / q.glp.theta);
}

double single_user_outage(const GammaLawParams &glp, double beta)
{
    if (!(beta > 0.0))
        throw DomainError("beta must be positive");
    if (std::isinf(beta))
        return 1.0;
    const double b = beta / glp.theta;
    const bool has_self = glp.self.has_value();
    const auto Y = detail::folded_moments<double>(glp.m, b, has_self, has_self ? glp.self->u : 0.0,
                                                  has_self ? glp.self->upsilon : 1.0);
    // Q = e^{-b} sum_k b^k/k! Y_k, evaluated with logs so large b does not overflow.
    double Q = 0.0;
    for (int k = 0; k < glp.m; ++k)
    {
        if (Y[k] == 0.0)
            continue;
        const double lt = (k > 0 ? k * std::log(b) : 0.0) - ln_gamma(k + 1.0) - b + std::log(Y[k]);
        Q += std::exp(lt);
    }
    return clamp_probability(1.0 - Q);
}

double throughput(const SchemeSpec &scheme, const NetworkParams &net, Precision prec)
{
    const GammaLawParams glp = gamma_params(scheme, net);
    if (net.lambda == 0.0 || net.p == 0.0)
        return 0.0;
    return glp.zeta * net.p * net.lambda * success_probability({glp, net}, prec);
}

double lambda_opt_zf(int N, const NetworkParams &net)
{
    net.validate();
    if (N < 1)
        throw DomainError("N must be >= 1");
    if (net.p == 0.0)
        throw DomainError("lambda_opt_zf requires p > 0");
    const double d = 2.0 / net.alpha;
    return 1.0 / (eta(N, net.p, net.alpha) * std::pow(net.beta, d) * net.r_tr * net.r_tr);
}

AntennaOptimum n_opt_zf(const NetworkParams &net)
{
    net.validate();
    const double d = 2.0 / net.alpha;
    const double rhs = 2.0 * pi * net.p * net.lambda * std::exp(ln_gamma(1.0 - d)) * std::pow(net.beta, d) *
                           net.r_tr * net.r_tr / net.alpha +
                       net.beta * std::pow(net.r_tr, net.alpha) / net.rho;
    auto lhs = [d](double x) { return std::log1p(1.0 / x) * std::exp(ln_gamma(x + 1.0) - ln_gamma(x + d)); };
    constexpr double lo = 1e-3, hi = 512.0;
    AntennaOptimum out;
    if (rhs >= lhs(lo))
        throw SolverError("n_opt_zf: no root in [1e-3, 512]");
    if (rhs <= lhs(hi))
    {
        out.root = hi;
        out.capped = true;
    }
    else
        out.root = bisect([&](double x) { return lhs(x) - rhs; }, lo, hi);

    const int fl = std::max(1, static_cast<int>(std::floor(out.root)));
    int best = fl;
    double best_t = -1.0;
    for (int cand : {fl, fl + 1})
    {
        if (cand > static_cast<int>(hi))
            continue;
        const double t = throughput(SchemeSpec::sm_zf(cand, cand), net);
        if (t > best_t)
        {
            best_t = t;
            best = cand;
        }
    }
    out.value = best;
    return out;
}

// ---------------------------------------------------------------------------------------------
// Asymptotic expansions

double dense_cdf(const OutageQuery &q)
{
    check_query(q);
    const int m = q.glp.m;
    const double x = interference_exponent(q), b = q.net.beta / q.glp.theta, d = 2.0 / q.net.alpha;
    const double E0 = self_interference_moment(q.glp.self, q.net.beta, q.glp.theta, 0);
    if (m > 1 && x == 0.0)
        return 1.0;
    const double lead = m > 1 ? (m - 1) * std::log(d * x) : 0.0;
    return clamp_probability(1.0 - std::exp(lead - ln_gamma(m) + std::log(E0) - b - x));
}

double highbeta_cdf(const OutageQuery &q)
{
    check_query(q);
    const int m = q.glp.m;
    const double x = interference_exponent(q), b = q.net.beta / q.glp.theta;
    const double E0 = self_interference_moment(q.glp.self, q.net.beta, q.glp.theta, 0);
    const double lead = m > 1 ? (m - 1) * std::log(b) : 0.0;
    return clamp_probability(1.0 - std::exp(lead - ln_gamma(m) + std::log(E0) - b - x));
}

double lowbeta_cdf(const OutageQuery &q)
{
    check_query(q);
    const double d = 2.0 / q.net.alpha;
    if (!(q.glp.m > d))
        throw DomainError("lowbeta_cdf requires m > 2/alpha");
    return interference_exponent(q) * std::exp(ln_gamma(q.glp.m - d) - ln_gamma(q.glp.m) - ln_gamma(1.0 - d));
}

double dense_relative_error(const OutageQuery &q)
{
    const Parts P = series_parts(q);
    const double lead = (P.m > 1 ? std::pow(P.d * P.x, P.m - 1) : 1.0) * P.Y[0];
    return std::abs(lead - P.sigma) / P.sigma;
}

double highbeta_relative_error(const OutageQuery &q)
{
    const Parts P = series_parts(q);
    const double lead = (P.m > 1 ? std::pow(P.b, P.m - 1) : 1.0) * P.Y[0];
    return std::abs(lead - P.sigma) / P.sigma;
}

double lowbeta_relative_error(const OutageQuery &q)
{
    const double F = outage_cdf(q);
    return std::abs(lowbeta_cdf(q) - F) / F;
}

namespace {

// Largest/smallest grid point where err > tol, refined by bisection against its neighbour.
// Grid is uniform in log10 of the variable.
struct CrossingSearch
{
    double log_lo, log_hi;
    int points;
};

template <class Err>
double last_exceedance(Err &&err, const CrossingSearch &s, double tol)
{
    // err decreases towards the upper end; return the boundary above which err <= tol.
    const double step = (s.log_hi - s.log_lo) / (s.points - 1);
    if (err(std::pow(10.0, s.log_hi)) > tol)
        throw SolverError("validity threshold not found in search range");
    int last = -1;
    for (int i = s.points - 1; i >= 0; --i)
        if (err(std::pow(10.0, s.log_lo + i * step)) > tol)
        {
            last = i;
            break;
        }
    if (last < 0)
        return std::pow(10.0, s.log_lo);
    const double a = s.log_lo + last * step;
    const double lg = bisect([&](double t) { return err(std::pow(10.0, t)) - tol; }, a, a + step, 80);
    return std::pow(10.0, lg);
}

template <class Err>
double first_exceedance(Err &&err, const CrossingSearch &s, double tol)
{
    // err decreases towards the lower end; return the boundary below which err <= tol.
    const double step = (s.log_hi - s.log_lo) / (s.points - 1);
    if (err(std::pow(10.0, s.log_lo)) > tol)
        throw SolverError("validity threshold not found in search range");
    int first = -1;
    for (int i = 0; i < s.points; ++i)
        if (err(std::pow(10.0, s.log_lo + i * step)) > tol)
        {
            first = i;
            break;
        }
    if (first < 0)
        return std::pow(10.0, s.log_hi);
    const double a = s.log_lo + (first - 1) * step;
    const double lg = bisect([&](double t) { return err(std::pow(10.0, t)) - tol; }, a, a + step, 80);
    return std::pow(10.0, lg);
}

} // namespace

double dense_validity_threshold(const OutageQuery &q, double tol)
{
    auto err = [&](double lam) {
        OutageQuery qq = q;
        qq.net.lambda = lam;
        return dense_relative_error(qq);
    };
    return last_exceedance(err, {-8.0, 4.0, 1201}, tol);
}

double asymptotic_validity_threshold(AsymptoticKind kind, const OutageQuery &q, double tol)
{
    const CrossingSearch range{-6.0, 6.0, 1201};
    if (kind == AsymptoticKind::HighBeta)
    {
        auto err = [&](double beta) {
            OutageQuery qq = q;
            qq.net.beta = beta;
            return highbeta_relative_error(qq);
        };
        return last_exceedance(err, range, tol);
    }
    auto err = [&](double beta) {
        OutageQuery qq = q;
        qq.net.beta = beta;
        return lowbeta_relative_error(qq);
    };
    return first_exceedance(err, range, tol);
}

// ---------------------------------------------------------------------------------------------
// Stream-count optimizers

AntennaOptimum m_opt_lowbeta(Receiver rx, int N, const NetworkParams &net)
{
    net.validate();
    if (N < 1)
        throw DomainError("N must be >= 1");
    AntennaOptimum out;
    const double lp = net.lambda * net.p;
    if (N == 1)
    {
        out.value = 1;
        out.root = 1.0;
        return out;
    }
    if (lp == 0.0)
    {
        out.value = N;
        out.root = N;
        out.capped = true;
        return out;
    }
    const double d = 2.0 / net.alpha;
    const double lhs = 1.0 / (lp * pi * net.r_tr * net.r_tr * std::pow(net.beta, d));
    auto rhs = [&](double x) {
        const double common = std::exp(ln_gamma(x - 1.0 + d) - ln_gamma(x - 1.0));
        if (rx == Receiver::MRC)
            return std::exp(ln_gamma(N - d) - ln_gamma(N)) * common * (1.0 + 2.0 * x / (net.alpha * (x - 1.0)));
        return std::exp(ln_gamma(N - x + 1.0 - d) - ln_gamma(N - x + 1.0)) * common *
               (1.0 + 2.0 * x / (net.alpha * (x - 1.0)) + 2.0 * (x - 1.0) / (net.alpha * (N - x + 1.0)));
    };
    const double lo = 1.0 + 1e-9, hi = static_cast<double>(N);
    if (lhs <= rhs(lo))
    {
        out.root = lo;
        out.value = 1;
        out.capped = true;
        return out;
    }
    if (lhs >= rhs(hi))
    {
        out.root = hi;
        out.value = N;
        out.capped = true;
        return out;
    }
    out.root = bisect([&](double x) { return rhs(x) - lhs; }, lo, hi);
    out.value = std::min(std::max(static_cast<int>(std::floor(out.root)), 1), N);
    return out;
}

double kappa_opt_lowbeta(Receiver rx, const NetworkParams &net)
{
    net.validate();
    const double lp = net.lambda * net.p;
    if (lp == 0.0)
        return 1.0;
    const double a = net.alpha;
    const double A = std::pow(a / (lp * pi * net.r_tr * net.r_tr * (a + 2.0)), a / 2.0) / net.beta;
    if (rx == Receiver::MRC)
        return std::min(A, 1.0);
    if (!std::isfinite(A))
        return 1.0;
    auto f = [&](double k) { return A * (1.0 - k) / std::pow(1.0 + k / (1.0 - k) * (2.0 / (a + 2.0)), a / 2.0); };
    double k = 0.5, w = 0.5, last_res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 10000; ++it)
    {
        const double next = (1.0 - w) * k + w * f(k);
        const double res = std::abs(next - k);
        if (res < 1e-10)
            return std::clamp(next, std::numeric_limits<double>::min(), 1.0);
        if (res > last_res)
            w *= 0.5;
        last_res = res;
        k = std::clamp(next, 1e-300, 1.0 - 1e-15);
    }
    throw SolverError("kappa_opt_lowbeta: fixed point did not converge");
}

// ---------------------------------------------------------------------------------------------
// Transmission capacity

double tc_exact_zf_full(int N, double epsilon, const NetworkParams &net)
{
    net.validate();
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("epsilon must lie in (0,1)");
    const double ra = std::pow(net.r_tr, net.alpha);
    const double room = -std::log1p(-epsilon) - net.beta * ra * N / net.rho;
    if (!(room > 0.0))
        return 0.0;
    const double d = 2.0 / net.alpha;
    return N * (1.0 - epsilon) * room / (std::pow(net.beta * ra, d) * eta(N, 1.0, net.alpha));
}

double tc_expectation_sum(const GammaLawParams &glp, double beta, double alpha)
{
    const int m = glp.m;
    const double b = beta / glp.theta, d = 2.0 / alpha;
    const bool has_self = glp.self.has_value();
    const auto Y = detail::folded_moments<double>(m, b, has_self, has_self ? glp.self->u : 0.0,
                                                  has_self ? glp.self->upsilon : 1.0);
    double acc = 0.0;
    for (int l = 0; l < m; ++l)
    {
        if (Y[l] == 0.0 || (l > 0 && b == 0.0))
            continue;
        const double lc = ln_gamma(m) - ln_gamma(l + 1.0) - ln_gamma(m - l);
        acc += std::exp(lc + (l > 0 ? l * std::log(b) : 0.0) + ln_gamma(m - l - d) - ln_gamma(m - d) - b) * Y[l];
    }
    return acc;
}

double tc_expectation_kummer(const GammaLawParams &glp, double beta, double alpha)
{
    const double b = beta / glp.theta, d = 2.0 / alpha;
    const double a1 = 1.0 - glp.m, b1 = 1.0 + d - glp.m;
    if (!glp.self)
        return std::exp(-b) * specfun::kummer_1f1_polynomial(a1, b1, b);
    const double u = glp.self->u, ups = glp.self->upsilon;
    const double lnorm = -ln_gamma(u) - u * std::log(ups);
    auto integrand = [&](double y) {
        if (y <= 0.0)
            return 0.0;
        const double z = b * (y + 1.0);
        const double dens = std::exp(lnorm + (u - 1.0) * std::log(y) - y / ups - z);
        if (dens == 0.0)
            return 0.0;
        return dens * specfun::kummer_1f1_polynomial(a1, b1, z);
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(integrand, 1e-13);
}

double tc_small_eps(const TcQuery &tq)
{
    const auto &g = tq.glp;
    const double beta = tq.net.beta, alpha = tq.net.alpha, d = 2.0 / alpha;
    if (!(tq.epsilon > 0.0 && tq.epsilon < 1.0))
        throw DomainError("epsilon must lie in (0,1)");
    const double fsu = single_user_outage(g, beta);
    if (tq.epsilon <= fsu)
        return 0.0;
    const double e_sum = tc_expectation_sum(g, beta, alpha);
    const double e_kum = tc_expectation_kummer(g, beta, alpha);
    if (std::abs(e_sum - e_kum) > 1e-8 * std::abs(e_sum))
        throw NumericalInstability("capacity expectation: finite-sum and Kummer forms disagree");
    const double lg = ln_gamma(g.n) + ln_gamma(g.m) - ln_gamma(g.n + d) - ln_gamma(g.m - d);
    return tq.zeta * std::pow(g.theta / (beta * g.omega), d) * std::exp(lg) * (tq.epsilon - fsu) / (pi * e_sum);
}

double tc_large_antenna(const TcQuery &tq)
{
    const auto &g = tq.glp;
    const double beta = tq.net.beta, d = 2.0 / tq.net.alpha;
    const double uY = g.self ? g.self->u * g.self->upsilon : 0.0;
    const double margin = pos(g.m * g.theta - beta - beta * uY);
    const double slack = pos(tq.epsilon - single_user_outage(g, beta));
    if (margin == 0.0 || slack == 0.0)
        return 0.0;
    return tq.zeta * std::pow(margin / (g.n * g.omega), d) * slack / (pi * std::pow(beta, d));
}

LinearScaling linear_scaling_region(Receiver rx, double kappa, const NetworkParams &net)
{
    net.validate();
    if (rx == Receiver::ZF && !(kappa > 0.0 && kappa < 1.0))
        throw DomainError("ZF linear scaling needs 0 < kappa < 1");
    if (rx == Receiver::MRC && !(kappa > 0.0 && kappa <= 1.0))
        throw DomainError("MRC linear scaling needs 0 < kappa <= 1");
    const double ra = std::pow(net.r_tr, net.alpha);
    LinearScaling out;
    out.beta_bar_mrc = 1.0 / (kappa * (ra / net.rho + 1.0));
    out.beta_bar_zf = kappa < 1.0 ? (net.rho / ra) * (1.0 / kappa - 1.0) : 0.0;
    out.beta_bar = rx == Receiver::MRC ? out.beta_bar_mrc : out.beta_bar_zf;
    out.linear = net.beta < out.beta_bar;
    out.zf_window_wider = kappa < 1.0 && net.rho / ra > kappa / (1.0 - kappa);
    return out;
}

double kappa_star_ratio(Receiver rx, const NetworkParams &net)
{
    net.validate();
    const double d = 2.0 / net.alpha, ra = std::pow(net.r_tr, net.alpha);
    if (rx == Receiver::MRC)
        return (1.0 - d) / (net.beta * (1.0 + ra / net.rho));
    return (1.0 - d) / (1.0 + ra * net.beta / net.rho);
}

int kappa_star(Receiver rx, const NetworkParams &net, int N)
{
    if (N < 1)
        throw DomainError("N must be >= 1");
    const double k = kappa_star_ratio(rx, net);
    const double m = std::floor(N * k);
    return static_cast<int>(std::max(1.0, std::min(m, static_cast<double>(N))));
}

double tc_scaling_constant(Receiver rx, double kappa, double epsilon, const NetworkParams &net)
{
    const LinearScaling ls = linear_scaling_region(rx, kappa, net);
    const double d = 2.0 / net.alpha, ra = std::pow(net.r_tr, net.alpha);
    const double heaviside = net.beta > ls.beta_bar ? 1.0 : 0.0;
    const double slack = pos(epsilon - heaviside);
    const double gap = std::pow(pos(ls.beta_bar - net.beta), d);
    const double pre = rx == Receiver::MRC ? std::pow(ra / net.rho + 1.0, d) : std::pow(ra / net.rho, d);
    return kappa * pre * gap * slack / (pi * net.r_tr * net.r_tr * std::pow(net.beta, d));
}

// ---------------------------------------------------------------------------------------------
// OSTBC scaling

double ostbc_g(const OstbcCode &code, double alpha)
{
    if (!(alpha > 2.0))
        throw DomainError("alpha must exceed 2");
    const auto per_k = n_interf_all(code);
    if (std::any_of(per_k.begin(), per_k.end(), [&](int v) { return v != per_k.front(); }))
        throw DomainError("ostbc_g needs a code with symbol-independent N_I");
    const double d = 2.0 / alpha;
    const auto R = code_rate(code);
    const double Rd = static_cast<double>(R.numerator()) / R.denominator();
    const double n = static_cast<double>(per_k.front()) / code.M();
    return Rd * std::pow(code.M(), d) * std::exp(ln_gamma(n) - ln_gamma(n + d));
}

std::pair<double, double> ostbc_g_bounds(int M, double alpha)
{
    if (M < 2)
        throw DomainError("g bounds need M >= 2");
    if (!(alpha > 2.0))
        throw DomainError("alpha must exceed 2");
    const double d = 2.0 / alpha;
    const double lb = std::pow(2.0 * M / (M + 2.0), d) / (2.0 * std::exp(ln_gamma(1.0 + d)));
    double ub;
    if (M % 2 == 0)
        ub = std::pow(2.0 * M / (M + 2.0), d - 1.0);
    else
        ub = (M + 3.0) / (2.0 * (M + 1.0)) * std::pow(2.0 * M / (M + 1.0), d);
    return {lb, ub};
}

bool sm_beats_ostbc(Receiver rx, int M, int N, const OstbcCode &code, const NetworkParams &net)
{
    net.validate();
    if (code.M() != M)
        throw DomainError("sm_beats_ostbc: code.M must equal M");
    if (M < 1 || M > N)
        throw DomainError("sm_beats_ostbc: need 1 <= M <= N");
    const double d = 2.0 / net.alpha;
    const auto R = code_rate(code);
    const double Rd = static_cast<double>(R.numerator()) / R.denominator();
    const double load = rx == Receiver::ZF ? static_cast<double>(M) / N : M * net.beta / N;
    const double room = 1.0 - load;
    if (!(room > 0.0))
        return false;
    const double NI = n_interf(code, 1);
    const double rhs = M / std::exp(ln_gamma(1.0 + d)) * std::pow(NI / (double(M) * M * M) * room, d);
    return Rd < rhs;
}

bool alamouti_beats_simo_lowbeta(int N, double alpha)
{
    if (N < 1 || !(alpha > 2.0))
        throw DomainError("alamouti_beats_simo_lowbeta: need N >= 1 and alpha > 2");
    const double d = 2.0 / alpha;
    const double lhs = std::exp(ln_gamma(N - d) + ln_gamma(2.0 * N) - ln_gamma(N) - ln_gamma(2.0 * N - d));
    return lhs > 1.0 + d;
}

// ---------------------------------------------------------------------------------------------
// Coordinated access

double ca_intensity(double lambda, double r_gz)
{
    if (!(r_gz > 0.0))
        throw DomainError("r_gz must be positive");
    if (!(lambda >= 0.0))
        throw DomainError("lambda must be >= 0");
    const double a = 4.0 * r_gz * r_gz;
    if (std::isinf(lambda))
        return 1.0 / a;
    return -std::expm1(-lambda * a) / a;
}

double ca_throughput_bound(double lambda, double r_gz, const NetworkParams &net)
{
    if (!(net.alpha > 2.0) || !(net.r_tr > 0.0) || !(net.rho > 0.0) || !(net.beta > 0.0))
        throw DomainError("invalid network parameters for the CA bound");
    const double lca = ca_intensity(lambda, r_gz);
    if (lca == 0.0)
        return 0.0;
    const double d = 2.0 / net.alpha, ra = std::pow(net.r_tr, net.alpha);
    const double R0 = 2.0 * r_gz / std::sqrt(pi);
    const double z = -std::pow(R0 / net.r_tr, net.alpha) / net.beta;
    const double full = 2.0 * std::pow(net.beta * ra, d) * std::exp(ln_gamma(d) + ln_gamma(1.0 - d)) / net.alpha;
    const double guard = R0 * R0 * specfun::gauss_2f1(d, 1.0, 1.0 + d, z);
    return std::exp(-net.beta * ra / net.rho) * lca * std::exp(-pi * lca * (full - guard));
}

double ca_optimal_guard(double lambda, const NetworkParams &net)
{
    if (!(lambda > 0.0))
        throw DomainError("ca_optimal_guard requires lambda > 0");
    const double lo = 1e-3 * net.r_tr, hi = 100.0 * net.r_tr;
    constexpr int pts = 400;
    const double step = std::log(hi / lo) / (pts - 1);
    auto T = [&](double r) { return ca_throughput_bound(lambda, r, net); };
    int best = 0;
    double best_v = -1.0;
    for (int i = 0; i < pts; ++i)
    {
        const double v = T(lo * std::exp(i * step));
        if (v > best_v)
        {
            best_v = v;
            best = i;
        }
    }
    if (best == pts - 1)
        return hi;
    double a = lo * std::exp(std::max(best - 1, 0) * step);
    double b = lo * std::exp((best + 1) * step);
    // Golden-section refinement.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), e = a + gr * (b - a);
    double fc = T(c), fe = T(e);
    while ((b - a) > 1e-10 * (a + b))
    {
        if (fc > fe)
        {
            b = e;
            e = c;
            fe = fc;
            c = b - gr * (b - a);
            fc = T(c);
        }
        else
        {
            a = c;
            c = e;
            fc = fe;
            e = a + gr * (b - a);
            fe = T(e);
        }
    }
    return 0.5 * (a + b);
}

std::vector<std::vector<bool>> aloha_vs_ca_region(const SchemeSpec &scheme, const NetworkParams &net,
                                                  const std::vector<double> &lambdas, const std::vector<double> &ps)
{
    if (scheme.M != 1)
        throw DomainError("aloha_vs_ca_region compares single-stream ALOHA (M = 1)");
    std::vector<std::vector<bool>> out(lambdas.size(), std::vector<bool>(ps.size(), false));
    for (std::size_t i = 0; i < lambdas.size(); ++i)
    {
        NetworkParams nl = net;
        nl.lambda = lambdas[i];
        if (!(lambdas[i] > 0.0))
            continue;
        const double ca = ca_throughput_bound(lambdas[i], ca_optimal_guard(lambdas[i], nl), nl);
        for (std::size_t j = 0; j < ps.size(); ++j)
        {
            nl.p = ps[j];
            out[i][j] = throughput(scheme, nl) > ca;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Numeric inversion

double invert_outage_for_density(const GammaLawParams &glp, double beta, double epsilon, double alpha,
                                 Precision prec)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("epsilon must lie in (0,1)");
    const double fsu = single_user_outage(glp, beta);
    if (epsilon <= fsu)
        throw SolverError("outage target below the single-user floor: infeasible");
    OutageQuery q{glp, {}};
    q.net.p = 1.0;
    q.net.alpha = alpha;
    q.net.beta = beta;
    q.net.r_tr = std::pow(glp.omega / glp.theta, 1.0 / alpha);
    q.net.rho = glp.omega;
    auto F = [&](double lp) {
        q.net.lambda = lp;
        return 1.0 - success_probability(q, prec);
    };
    double lo = 0.0, hi = 1e-6;
    double fhi = F(hi);
    while (fhi < epsilon)
    {
        lo = hi;
        hi *= 4.0;
        if (hi > 1e6)
            throw SolverError("contention density above 1e6");
        const double next = F(hi);
        if (next < fhi - 1e-12)
            throw NumericalInstability("outage not monotone in lambda p");
        fhi = next;
    }
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (hi - lo <= 1e-15 * hi)
            break;
        if (F(mid) < epsilon)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double tc_numeric(const GammaLawParams &glp, double beta, double epsilon, double alpha, Precision prec)
{
    return glp.zeta * invert_outage_for_density(glp, beta, epsilon, alpha, prec) * (1.0 - epsilon);
}

} // namespace pppmimo
