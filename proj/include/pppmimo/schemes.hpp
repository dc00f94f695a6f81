// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// Transmission schemes, OSTBC code templates and the gamma-law parameter mapping.

#ifndef PPPMIMO_SCHEMES_HPP
#define PPPMIMO_SCHEMES_HPP

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pppmimo {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

//! Physical layer and MAC parameters. All quantities are linear (no dB).
struct NetworkParams
{
    double lambda = 0.0; //!< node intensity, nodes per m^2
    double p = 1.0;      //!< ALOHA transmit probability
    double alpha = 4.0;  //!< path-loss exponent, > 2
    double r_tr = 1.0;   //!< transmitter-receiver distance, m
    double rho = 1.0;    //!< transmit SNR P/N0
    double beta = 1.0;   //!< SINR threshold

    //! Throws DomainError when an invariant is violated.
    void validate() const;
};

enum class Variant
{
    SM_MRC,
    SM_ZF,
    OSTBC
};

enum class Receiver
{
    MRC,
    ZF
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string &s);
std::string to_string(Receiver r);
Receiver receiver_from_string(const std::string &s);

//! One entry of a codeword template. symbol == 0 marks an empty cell.
struct OstbcCell
{
    int symbol = 0;
    bool conjugated = false;
    int sign = 1;
};

//! M x tau codeword template over N_s symbols, each cell "0", "+q", "-q", "+q*" or "-q*".
class OstbcCode
{
public:
    OstbcCode() = default;

    //! Build from a grid of cell strings; validates structure, orthogonality and the decode identity.
    OstbcCode(std::string name, int N_s, const std::vector<std::vector<std::string>> &grid);

    //! Parse the JSON code-definition format {"name", "M", "tau", "N_s", "cells"}.
    static OstbcCode from_json(const std::string &text);
    std::string to_json() const;

    const std::string &name() const { return name_; }
    int M() const { return M_; }
    int tau() const { return tau_; }
    int N_s() const { return Ns_; }
    const OstbcCell &cell(int row, int col) const { return cells_[row * tau_ + col]; }

    //! Codeword for the given symbol vector (length N_s).
    CMatrix codeword(const std::vector<cplx> &x) const;

    //! Matched-filter decode of symbol k (1-based) from G = H0^H Y (M x tau).
    cplx decode(const CMatrix &G, int k) const;

private:
    std::string name_;
    int M_ = 0, tau_ = 0, Ns_ = 0;
    std::vector<OstbcCell> cells_;

    void check_structure() const;
};

//! Parses a single cell string such as "-2*".
OstbcCell parse_cell(const std::string &s);
std::string format_cell(const OstbcCell &c);

//! Registry: alamouti, g4_rate34, g3_rate34, d4_rate12, cyclic<M> (also accepted as cyclicM).
OstbcCode registry_code(const std::string &name);
std::vector<std::string> registry_names();

//! N_s / tau as an exact fraction.
boost::rational<int> code_rate(const OstbcCode &code);

//! Nonzero cells summed over the columns that carry symbol k (1-based).
int n_interf(const OstbcCode &code, int k);
std::vector<int> n_interf_all(const OstbcCode &code);

struct SchemeSpec
{
    Variant variant = Variant::SM_MRC;
    int M = 1;
    int N = 1;
    std::optional<OstbcCode> code;
    //! Which symbol's N_I to use when a user code has k-dependent N_I.
    std::optional<int> n_interf_symbol;

    static SchemeSpec sm_mrc(int M, int N);
    static SchemeSpec sm_zf(int M, int N);
    static SchemeSpec ostbc(const OstbcCode &code, int N);

    void validate() const;
    std::string label() const;
};

struct SelfInterference
{
    double u = 0.0;
    double upsilon = 0.0;
};

//! Signal Gamma(m, theta), interference Gamma(n, omega), optional self-interference Gamma(u, upsilon), gain zeta.
struct GammaLawParams
{
    int m = 1;
    double theta = 1.0;
    double n = 1.0;
    double omega = 1.0;
    std::optional<SelfInterference> self;
    double zeta = 1.0;
};

GammaLawParams gamma_params(const SchemeSpec &scheme, const NetworkParams &net);

//! Coefficients (W_q, Z_q), q = 1..N_s, of x_q and conj(x_q) when decoding symbol k from H_l X_l.
std::vector<std::pair<cplx, cplx>> decode_coefficients(const OstbcCode &code, const CMatrix &H0, const CMatrix &Hl, int k);

//! Same, from the precomputed M x M product Q = H0^H Hl; writes into out (resized to N_s).
void decode_coefficients_gram(const OstbcCode &code, const CMatrix &Q, int k, std::vector<std::pair<cplx, cplx>> &out);

//! Normalised interference power sum_q (|W_q|^2 + |Z_q|^2) / ||H0||_F^2.
double k_sigma(const OstbcCode &code, const CMatrix &H0, const CMatrix &Hl, int k);

//! Max relative deviation of X X^H from a scaled identity over random symbol draws.
double orthogonality_defect(const OstbcCode &code, std::uint64_t seed, int draws = 16);

//! Max relative deviation of decode(H0^H H0 X) from ||H0||_F^2 x_k over random draws and all k.
double decode_identity_defect(const OstbcCode &code, int N, std::uint64_t seed, int draws = 16);

} // namespace pppmimo

#endif
