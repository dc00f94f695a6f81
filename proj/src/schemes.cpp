// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#include "pppmimo/schemes.hpp"
#include "pppmimo/errors.hpp"
#include "pppmimo/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace pppmimo {

namespace {

constexpr double kCodeCheckTol = 1e-12;

bool finite_positive(double x)
{
    return std::isfinite(x) && x > 0.0;
}

} // namespace

void NetworkParams::validate() const
{
    if (!(std::isfinite(lambda) && lambda >= 0.0))
        throw DomainError("lambda must be finite and >= 0");
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("p must lie in [0,1]");
    if (!(std::isfinite(alpha) && alpha > 2.0))
        throw DomainError("alpha must exceed 2");
    if (!finite_positive(r_tr))
        throw DomainError("r_tr must be positive");
    if (!(rho > 0.0))
        throw DomainError("rho must be positive");
    if (!finite_positive(beta))
        throw DomainError("beta must be positive");
}

std::string to_string(Variant v)
{
    switch (v)
    {
    case Variant::SM_MRC: return "SM-MRC";
    case Variant::SM_ZF: return "SM-ZF";
    case Variant::OSTBC: return "OSTBC";
    }
    return "?";
}

Variant variant_from_string(const std::string &s)
{
    if (s == "SM-MRC" || s == "MRC" || s == "sm-mrc" || s == "mrc")
        return Variant::SM_MRC;
    if (s == "SM-ZF" || s == "ZF" || s == "sm-zf" || s == "zf")
        return Variant::SM_ZF;
    if (s == "OSTBC" || s == "ostbc")
        return Variant::OSTBC;
    throw ConfigError("unknown scheme variant '" + s + "'");
}

std::string to_string(Receiver r)
{
    return r == Receiver::MRC ? "MRC" : "ZF";
}

Receiver receiver_from_string(const std::string &s)
{
    if (s == "MRC" || s == "mrc" || s == "SM-MRC")
        return Receiver::MRC;
    if (s == "ZF" || s == "zf" || s == "SM-ZF")
        return Receiver::ZF;
    throw ConfigError("unknown receiver '" + s + "'");
}

// ---------------------------------------------------------------------------------------------
// Codes

OstbcCell parse_cell(const std::string &raw)
{
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw ConfigError("empty OSTBC cell");
    OstbcCell cell;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-')
    {
        cell.sign = s[pos] == '-' ? -1 : 1;
        ++pos;
    }
    std::size_t digits_end = pos;
    while (digits_end < s.size() && std::isdigit(static_cast<unsigned char>(s[digits_end])))
        ++digits_end;
    if (digits_end == pos)
        throw ConfigError("bad OSTBC cell '" + raw + "'");
    cell.symbol = std::stoi(s.substr(pos, digits_end - pos));
    if (digits_end < s.size())
    {
        if (s.substr(digits_end) != "*")
            throw ConfigError("bad OSTBC cell '" + raw + "'");
        cell.conjugated = true;
    }
    if (cell.symbol == 0)
    {
        if (cell.conjugated || cell.sign < 0)
            throw ConfigError("bad OSTBC cell '" + raw + "'");
        cell = OstbcCell{};
    }
    return cell;
}

std::string format_cell(const OstbcCell &c)
{
    if (c.symbol == 0)
        return "0";
    std::string s = c.sign < 0 ? "-" : "";
    s += std::to_string(c.symbol);
    if (c.conjugated)
        s += "*";
    return s;
}

OstbcCode::OstbcCode(std::string name, int N_s, const std::vector<std::vector<std::string>> &grid)
    : name_(std::move(name)), Ns_(N_s)
{
    M_ = static_cast<int>(grid.size());
    tau_ = M_ > 0 ? static_cast<int>(grid.front().size()) : 0;
    for (const auto &row : grid)
    {
        if (static_cast<int>(row.size()) != tau_)
            throw ConfigError("OSTBC grid rows have unequal length");
        for (const auto &s : row)
            cells_.push_back(parse_cell(s));
    }
    check_structure();

    const double ortho = orthogonality_defect(*this, 0x5eed0001ULL);
    if (!(ortho <= kCodeCheckTol))
        throw DomainError("code '" + name_ + "' is not orthogonal (defect " + std::to_string(ortho) + ")");
    const double ident = decode_identity_defect(*this, std::max(M_, 2), 0x5eed0002ULL);
    if (!(ident <= kCodeCheckTol))
        throw DomainError("code '" + name_ + "' fails the decode identity (defect " + std::to_string(ident) + ")");
}

void OstbcCode::check_structure() const
{
    if (M_ < 1 || tau_ < 1 || Ns_ < 1)
        throw ConfigError("OSTBC code needs M, tau, N_s >= 1");
    std::set<int> seen;
    for (const auto &c : cells_)
    {
        if (c.symbol > Ns_)
            throw ConfigError("OSTBC cell references symbol " + std::to_string(c.symbol) + " > N_s");
        if (c.symbol > 0)
            seen.insert(c.symbol);
    }
    if (static_cast<int>(seen.size()) != Ns_)
        throw ConfigError("every symbol 1..N_s must appear in the code");
}

OstbcCode OstbcCode::from_json(const std::string &text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(std::string("code definition is not valid JSON: ") + e.what());
    }
    try
    {
        const int M = j.at("M").get<int>();
        const int tau = j.at("tau").get<int>();
        const int Ns = j.at("N_s").get<int>();
        auto grid = j.at("cells").get<std::vector<std::vector<std::string>>>();
        if (static_cast<int>(grid.size()) != M)
            throw ConfigError("cells must have M rows");
        for (const auto &row : grid)
            if (static_cast<int>(row.size()) != tau)
                throw ConfigError("each cells row must have tau entries");
        return OstbcCode(j.value("name", std::string("user")), Ns, grid);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(std::string("code definition: ") + e.what());
    }
}

std::string OstbcCode::to_json() const
{
    nlohmann::json j;
    j["name"] = name_;
    j["M"] = M_;
    j["tau"] = tau_;
    j["N_s"] = Ns_;
    auto grid = nlohmann::json::array();
    for (int i = 0; i < M_; ++i)
    {
        auto row = nlohmann::json::array();
        for (int t = 0; t < tau_; ++t)
            row.push_back(format_cell(cell(i, t)));
        grid.push_back(row);
    }
    j["cells"] = grid;
    return j.dump();
}

CMatrix OstbcCode::codeword(const std::vector<cplx> &x) const
{
    if (static_cast<int>(x.size()) != Ns_)
        throw DomainError("codeword needs N_s symbols");
    CMatrix X = CMatrix::Zero(M_, tau_);
    for (int i = 0; i < M_; ++i)
        for (int t = 0; t < tau_; ++t)
        {
            const auto &c = cell(i, t);
            if (c.symbol == 0)
                continue;
            const cplx v = x[c.symbol - 1];
            X(i, t) = static_cast<double>(c.sign) * (c.conjugated ? std::conj(v) : v);
        }
    return X;
}

cplx OstbcCode::decode(const CMatrix &G, int k) const
{
    cplx acc = 0.0;
    for (int i = 0; i < M_; ++i)
        for (int t = 0; t < tau_; ++t)
        {
            const auto &c = cell(i, t);
            if (c.symbol != k)
                continue;
            const cplx g = G(i, t);
            acc += static_cast<double>(c.sign) * (c.conjugated ? std::conj(g) : g);
        }
    return acc;
}

OstbcCode registry_code(const std::string &name)
{
    if (name == "alamouti")
        return OstbcCode("alamouti", 2, {{"1", "-2*"}, {"2", "1*"}});
    if (name == "g4_rate34")
        return OstbcCode("g4_rate34", 3,
                         {{"1", "-2*", "3*", "0"}, {"2", "1*", "0", "3*"}, {"3", "0", "-1*", "-2*"}, {"0", "3", "2", "-1"}});
    if (name == "g3_rate34")
        return OstbcCode("g3_rate34", 3, {{"1", "0", "2", "-3"}, {"0", "1", "3*", "2*"}, {"-2*", "-3", "1*", "0"}});
    if (name == "d4_rate12")
        return OstbcCode("d4_rate12", 2,
                         {{"1", "-2*", "0", "0"}, {"2", "1*", "0", "0"}, {"0", "0", "1", "-2*"}, {"0", "0", "2", "1*"}});
    if (name.rfind("cyclic", 0) == 0)
    {
        std::string digits;
        for (char c : name.substr(6))
            if (std::isdigit(static_cast<unsigned char>(c)))
                digits += c;
            else if (c != '<' && c != '>' && c != '_')
                throw ConfigError("unknown code '" + name + "'");
        if (digits.empty())
            throw ConfigError("cyclic code needs a size, e.g. cyclic<4>");
        const int M = std::stoi(digits);
        if (M < 1 || M > 64)
            throw ConfigError("cyclic code size out of range");
        std::vector<std::vector<std::string>> grid(M, std::vector<std::string>(M, "0"));
        for (int i = 0; i < M; ++i)
            grid[i][i] = "1";
        return OstbcCode("cyclic<" + digits + ">", 1, grid);
    }
    throw ConfigError("unknown code '" + name + "'");
}

std::vector<std::string> registry_names()
{
    return {"alamouti", "g4_rate34", "g3_rate34", "d4_rate12", "cyclic<M>"};
}

boost::rational<int> code_rate(const OstbcCode &code)
{
    return {code.N_s(), code.tau()};
}

int n_interf(const OstbcCode &code, int k)
{
    if (k < 1 || k > code.N_s())
        throw DomainError("symbol index out of range");
    int total = 0;
    for (int t = 0; t < code.tau(); ++t)
    {
        bool carries = false;
        int nonzero = 0;
        for (int i = 0; i < code.M(); ++i)
        {
            const auto &c = code.cell(i, t);
            if (c.symbol != 0)
                ++nonzero;
            if (c.symbol == k)
                carries = true;
        }
        if (carries)
            total += nonzero;
    }
    return total;
}

std::vector<int> n_interf_all(const OstbcCode &code)
{
    std::vector<int> v;
    for (int k = 1; k <= code.N_s(); ++k)
        v.push_back(n_interf(code, k));
    return v;
}

// ---------------------------------------------------------------------------------------------
// Schemes

SchemeSpec SchemeSpec::sm_mrc(int M, int N)
{
    SchemeSpec s;
    s.variant = Variant::SM_MRC;
    s.M = M;
    s.N = N;
    s.validate();
    return s;
}

SchemeSpec SchemeSpec::sm_zf(int M, int N)
{
    SchemeSpec s;
    s.variant = Variant::SM_ZF;
    s.M = M;
    s.N = N;
    s.validate();
    return s;
}

SchemeSpec SchemeSpec::ostbc(const OstbcCode &code, int N)
{
    SchemeSpec s;
    s.variant = Variant::OSTBC;
    s.M = code.M();
    s.N = N;
    s.code = code;
    s.validate();
    return s;
}

void SchemeSpec::validate() const
{
    if (M < 1 || N < 1)
        throw DomainError("invalid antenna configuration: need M, N >= 1");
    // spatial multiplexing separates M streams, so it needs M <= N; a space-time code does not
    if (variant != Variant::OSTBC && M > N)
        throw DomainError("invalid antenna configuration: need M <= N (M=" + std::to_string(M) +
                          ", N=" + std::to_string(N) + ")");
    if (variant == Variant::OSTBC)
    {
        if (!code)
            throw DomainError("OSTBC scheme requires a code");
        if (code->M() != M)
            throw DomainError("OSTBC scheme: code.M must equal M");
    }
}

std::string SchemeSpec::label() const
{
    std::string s = to_string(variant) + "(M=" + std::to_string(M) + ",N=" + std::to_string(N);
    if (code)
        s += ",code=" + code->name();
    return s + ")";
}

GammaLawParams gamma_params(const SchemeSpec &scheme, const NetworkParams &net)
{
    scheme.validate();
    net.validate();
    const double ra = std::pow(net.r_tr, net.alpha);
    const double M = scheme.M;
    GammaLawParams g;
    switch (scheme.variant)
    {
    case Variant::SM_MRC:
    case Variant::SM_ZF:
        g.theta = net.rho / (M * ra);
        g.n = M;
        g.omega = net.rho / M;
        g.zeta = M;
        if (scheme.variant == Variant::SM_MRC)
        {
            g.m = scheme.N;
            if (scheme.M > 1)
                g.self = SelfInterference{M - 1.0, g.theta};
        }
        else
            g.m = scheme.N - scheme.M + 1;
        break;
    case Variant::OSTBC:
    {
        const auto &code = *scheme.code;
        const auto R = code_rate(code);
        const double Rd = static_cast<double>(R.numerator()) / R.denominator();
        const auto per_k = n_interf_all(code);
        int NI = per_k.front();
        if (std::any_of(per_k.begin(), per_k.end(), [&](int v) { return v != NI; }))
        {
            if (!scheme.n_interf_symbol)
            {
                std::string msg = "code '" + code.name() + "' has symbol-dependent N_I (";
                for (std::size_t i = 0; i < per_k.size(); ++i)
                    msg += (i ? "," : "") + std::to_string(per_k[i]);
                throw DomainError(msg + "); choose one with n_interf_symbol");
            }
            NI = n_interf(code, *scheme.n_interf_symbol);
        }
        g.m = scheme.M * scheme.N;
        g.theta = net.rho / (Rd * M * ra);
        g.n = NI / M;
        g.omega = net.rho / (Rd * M);
        g.zeta = Rd;
        break;
    }
    }
    return g;
}

// ---------------------------------------------------------------------------------------------
// Decode coefficients

void decode_coefficients_gram(const OstbcCode &code, const CMatrix &Q, int k, std::vector<std::pair<cplx, cplx>> &out)
{
    if (Q.rows() != code.M() || Q.cols() != code.M())
        throw DomainError("decode_coefficients: Q must be M x M");
    if (k < 1 || k > code.N_s())
        throw DomainError("decode_coefficients: symbol index out of range");
    const int Ns = code.N_s();
    out.resize(Ns);
    std::vector<cplx> x(Ns, 0.0);
    const cplx I(0.0, 1.0);
    for (int q = 0; q < Ns; ++q)
    {
        x[q] = 1.0;
        const cplx f1 = code.decode(Q * code.codeword(x), k);
        x[q] = I;
        const cplx fi = code.decode(Q * code.codeword(x), k);
        x[q] = 0.0;
        out[q] = {0.5 * (f1 - I * fi), 0.5 * (f1 + I * fi)};
    }
}

std::vector<std::pair<cplx, cplx>> decode_coefficients(const OstbcCode &code, const CMatrix &H0, const CMatrix &Hl, int k)
{
    if (H0.cols() != code.M() || Hl.cols() != code.M() || H0.rows() != Hl.rows())
        throw DomainError("decode_coefficients: channel dimensions do not match the code");
    std::vector<std::pair<cplx, cplx>> out;
    const CMatrix Q = H0.adjoint() * Hl;
    decode_coefficients_gram(code, Q, k, out);
    return out;
}

double k_sigma(const OstbcCode &code, const CMatrix &H0, const CMatrix &Hl, int k)
{
    const auto wz = decode_coefficients(code, H0, Hl, k);
    double s = 0.0;
    for (const auto &[w, z] : wz)
        s += std::norm(w) + std::norm(z);
    return s / H0.squaredNorm();
}

double orthogonality_defect(const OstbcCode &code, std::uint64_t seed, int draws)
{
    RandomStream rng(seed);
    double worst = 0.0;
    for (int d = 0; d < draws; ++d)
    {
        std::vector<cplx> x(code.N_s());
        for (auto &v : x)
            v = rng.cnormal();
        const CMatrix X = code.codeword(x);
        const CMatrix P = X * X.adjoint();
        const double diag = P(0, 0).real();
        for (int i = 0; i < code.M(); ++i)
            for (int j = 0; j < code.M(); ++j)
            {
                const cplx target = i == j ? cplx(diag) : cplx(0.0);
                worst = std::max(worst, std::abs(P(i, j) - target) / diag);
            }
    }
    return worst;
}

double decode_identity_defect(const OstbcCode &code, int N, std::uint64_t seed, int draws)
{
    RandomStream rng(seed);
    double worst = 0.0;
    CMatrix H0(N, code.M());
    for (int d = 0; d < draws; ++d)
    {
        rng.fill_cnormal(H0);
        std::vector<cplx> x(code.N_s());
        for (auto &v : x)
            v = rng.cnormal();
        const CMatrix G = H0.adjoint() * (H0 * code.codeword(x));
        const double fro2 = H0.squaredNorm();
        for (int k = 1; k <= code.N_s(); ++k)
        {
            const cplx target = fro2 * x[k - 1];
            worst = std::max(worst, std::abs(code.decode(G, k) - target) / std::abs(target));
        }
    }
    return worst;
}

} // namespace pppmimo
