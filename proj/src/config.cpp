// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#include "pppmimo/config.hpp"
#include "pppmimo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace pppmimo {

namespace {

double number(const json &j, const std::string &what)
{
    if (!j.is_number())
        throw ConfigError(what + ": expected a number");
    return j.get<double>();
}

std::vector<int> int_list(const json &j, const std::string &what)
{
    std::vector<int> out;
    if (j.is_number_integer())
        out.push_back(j.get<int>());
    else if (j.is_array())
        for (const auto &v : j)
        {
            if (!v.is_number_integer())
                throw ConfigError(what + ": expected integers");
            out.push_back(v.get<int>());
        }
    else
        throw ConfigError(what + ": expected an integer or a list of integers");
    if (out.empty())
        throw ConfigError(what + ": empty list");
    return out;
}

OstbcCode code_from(const json &j)
{
    if (j.is_string())
        return registry_code(j.get<std::string>());
    if (j.is_object())
        return OstbcCode::from_json(j.dump());
    throw ConfigError("code: expected a registry name or a code object");
}

void append_schemes(const json &blk, std::vector<SchemeSpec> &out)
{
    if (!blk.is_object() || !blk.contains("variant"))
        throw ConfigError("scheme: object with a 'variant' key required");
    const Variant v = variant_from_string(blk.at("variant").get<std::string>());
    if (!blk.contains("N"))
        throw ConfigError("scheme: 'N' is required");
    const auto Ns = int_list(blk.at("N"), "scheme.N");
    try
    {
        if (v == Variant::OSTBC)
        {
            if (!blk.contains("code"))
                throw ConfigError("OSTBC scheme needs 'code'");
            std::vector<OstbcCode> codes;
            if (blk.at("code").is_array())
                for (const auto &c : blk.at("code"))
                    codes.push_back(code_from(c));
            else
                codes.push_back(code_from(blk.at("code")));
            for (const auto &c : codes)
                for (int N : Ns)
                {
                    SchemeSpec s = SchemeSpec::ostbc(c, N);
                    if (blk.contains("n_interf_symbol"))
                        s.n_interf_symbol = blk.at("n_interf_symbol").get<int>();
                    out.push_back(s);
                }
            return;
        }
        const auto Ms = int_list(blk.value("M", json(1)), "scheme.M");
        for (int M : Ms)
            for (int N : Ns)
                out.push_back(v == Variant::SM_MRC ? SchemeSpec::sm_mrc(M, N) : SchemeSpec::sm_zf(M, N));
    }
    catch (const DomainError &e)
    {
        throw ConfigError(std::string("scheme: ") + e.what());
    }
}

json scheme_json(const SchemeSpec &s)
{
    json j{{"variant", to_string(s.variant)}, {"M", s.M}, {"N", s.N}};
    if (s.code)
        j["code"] = s.code->name();
    if (s.n_interf_symbol)
        j["n_interf_symbol"] = *s.n_interf_symbol;
    return j;
}

} // namespace

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

std::vector<double> parse_range(const json &spec, const std::string &field)
{
    if (spec.is_number())
        return {spec.get<double>()};
    if (!spec.is_object())
        throw ConfigError(field + ": expected a number or a range object");
    const std::string scale = spec.value("scale", std::string("linear"));
    if (scale != "linear" && scale != "log" && scale != "dB")
        throw ConfigError(field + ": scale must be linear, log or dB");
    auto conv = [&](double v) { return scale == "dB" ? db_to_linear(v) : v; };

    std::vector<double> out;
    if (spec.contains("value"))
        out.push_back(conv(number(spec.at("value"), field)));
    else if (spec.contains("values"))
    {
        if (!spec.at("values").is_array())
            throw ConfigError(field + ".values: expected a list");
        for (const auto &v : spec.at("values"))
            out.push_back(conv(number(v, field)));
    }
    else if (spec.contains("start"))
    {
        const double a = number(spec.at("start"), field + ".start");
        if (!spec.contains("stop") || !spec.contains("points"))
            throw ConfigError(field + ": a start/stop/points range needs all three keys");
        const double b = number(spec.at("stop"), field + ".stop");
        const int n = spec.at("points").get<int>();
        if (n < 1)
            throw ConfigError(field + ".points must be >= 1");
        if (scale == "log" && !(a > 0.0 && b > 0.0))
            throw ConfigError(field + ": log ranges need positive endpoints");
        for (int i = 0; i < n; ++i)
        {
            const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            if (scale == "log")
                out.push_back(std::exp(std::log(a) + t * (std::log(b) - std::log(a))));
            else
                out.push_back(conv(a + t * (b - a)));
        }
    }
    else
        throw ConfigError(field + ": range needs value, values or start/stop/points");
    if (out.empty())
        throw ConfigError(field + ": empty range");
    return out;
}

ExperimentConfig parse_config(const json &j)
{
    try
    {
        if (!j.is_object())
            throw ConfigError("config must be a JSON object");
        ExperimentConfig c;
        const std::string mode = j.value("mode", std::string("aloha"));
        if (mode == "aloha")
            c.mode = SimMode::Aloha;
        else if (mode == "ca")
            c.mode = SimMode::CoordinatedAccess;
        else
            throw ConfigError("mode must be 'aloha' or 'ca'");

        if (j.contains("scheme"))
            append_schemes(j.at("scheme"), c.schemes);
        if (j.contains("schemes"))
            for (const auto &blk : j.at("schemes"))
                append_schemes(blk, c.schemes);

        const json net = j.value("network", json::object());
        auto range_or = [&](const char *key, std::vector<double> def) {
            return net.contains(key) ? parse_range(net.at(key), std::string("network.") + key) : def;
        };
        c.lambda = range_or("lambda", {});
        c.p = range_or("p", {1.0});
        c.alpha = range_or("alpha", {});
        c.r_tr = range_or("r_tr", {});
        c.rho = range_or("rho", {});
        c.beta = range_or("beta", {});
        if (j.contains("epsilon"))
            c.epsilon = parse_range(j.at("epsilon"), "epsilon");
        if (j.contains("r_gz"))
            c.r_gz = parse_range(j.at("r_gz"), "r_gz");
        if (j.contains("antennas"))
            c.antennas = int_list(j.at("antennas"), "antennas");

        if (j.contains("sim"))
        {
            const auto &s = j.at("sim");
            c.sim.trials = s.value("trials", c.sim.trials);
            c.sim.seed = s.value("seed", c.sim.seed);
            c.sim.truncation_tol = s.value("truncation_tol", c.sim.truncation_tol);
            if (s.contains("max_radius"))
                c.sim.max_radius_override = number(s.at("max_radius"), "sim.max_radius");
            c.stream = s.value("stream", 1);
        }
        c.sim.validate();

        if (j.contains("optimize"))
        {
            const auto &o = j.at("optimize");
            c.target = o.value("target", std::string());
            if (o.contains("receiver"))
                c.receiver = receiver_from_string(o.at("receiver").get<std::string>());
        }

        for (const auto *v : {&c.p, &c.alpha, &c.r_tr, &c.rho, &c.beta, &c.lambda})
            for (double x : *v)
                if (!std::isfinite(x))
                    throw ConfigError("network values must be finite");
        auto require = [](const std::vector<double> &v, bool (*ok)(double), const char *msg) {
            if (!std::all_of(v.begin(), v.end(), ok))
                throw ConfigError(msg);
        };
        require(c.lambda, [](double x) { return x >= 0.0; }, "network.lambda must be >= 0");
        require(c.p, [](double x) { return x >= 0.0 && x <= 1.0; }, "network.p must lie in [0,1]");
        require(c.alpha, [](double x) { return x > 2.0; }, "network.alpha must exceed 2");
        require(c.r_tr, [](double x) { return x > 0.0; }, "network.r_tr must be positive");
        require(c.rho, [](double x) { return x > 0.0; }, "network.rho must be positive");
        require(c.beta, [](double x) { return x > 0.0; }, "network.beta must be positive");
        require(c.epsilon, [](double x) { return x > 0.0 && x < 1.0; }, "epsilon must lie in (0,1)");
        require(c.r_gz, [](double x) { return x > 0.0; }, "r_gz must be positive");

        json schemes = json::array();
        for (const auto &s : c.schemes)
            schemes.push_back(scheme_json(s));
        c.resolved = {{"mode", mode},
                      {"schemes", schemes},
                      {"network",
                       {{"lambda", c.lambda},
                        {"p", c.p},
                        {"alpha", c.alpha},
                        {"r_tr", c.r_tr},
                        {"rho", c.rho},
                        {"beta", c.beta}}},
                      {"epsilon", c.epsilon},
                      {"r_gz", c.r_gz},
                      {"antennas", c.antennas},
                      {"sim",
                       {{"trials", c.sim.trials},
                        {"seed", c.sim.seed},
                        {"truncation_tol", c.sim.truncation_tol},
                        {"stream", c.stream}}},
                      {"optimize", {{"target", c.target}, {"receiver", to_string(c.receiver)}}}};
        if (c.sim.max_radius_override)
            c.resolved["sim"]["max_radius"] = *c.sim.max_radius_override;
        return c;
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ExperimentConfig load_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try
    {
        in >> j;
    }
    catch (const json::exception &e)
    {
        throw ConfigError("config '" + path + "': " + e.what());
    }
    return parse_config(j);
}

namespace {

const std::map<std::string, std::string> &preset_table()
{
    // Frozen figure/table configurations. Unstated parameters (rho of the OSTBC outage
    // figures, the noise level of the capacity-vs-alpha figure) are fixed here and listed in README.
    static const std::map<std::string, std::string> t = {
        {"fig1", R"({"scheme": {"variant": "SM-MRC", "M": [1, 2, 4], "N": 4},
                     "network": {"lambda": {"start": 1e-4, "stop": 1, "points": 41, "scale": "log"},
                                 "alpha": 3.1, "r_tr": 2, "rho": {"value": 25, "scale": "dB"},
                                 "beta": {"values": [-3, 3], "scale": "dB"}}})"},
        {"fig2", R"({"scheme": {"variant": "SM-ZF", "M": [1, 2, 4], "N": 4},
                     "network": {"lambda": {"start": 1e-4, "stop": 1, "points": 41, "scale": "log"},
                                 "alpha": 3.1, "r_tr": 2, "rho": {"value": 25, "scale": "dB"},
                                 "beta": {"values": [-3, 3], "scale": "dB"}}})"},
        {"fig3", R"({"optimize": {"target": "n_opt_zf"},
                     "network": {"lambda": {"start": 1e-4, "stop": 1e-1, "points": 31, "scale": "log"},
                                 "alpha": 4, "r_tr": 3, "rho": {"value": 25, "scale": "dB"},
                                 "beta": {"value": 0, "scale": "dB"}}})"},
        {"fig4", R"({"scheme": {"variant": "OSTBC", "code": "g4_rate34", "N": 4},
                     "network": {"lambda": 0.1, "alpha": 3.5, "r_tr": 5, "rho": {"value": 25, "scale": "dB"},
                                 "beta": {"start": -10, "stop": 30, "points": 21, "scale": "dB"}},
                     "sim": {"trials": 50000, "seed": 4}})"},
        {"fig5", R"({"scheme": {"variant": "OSTBC", "code": "g3_rate34", "N": 3},
                     "network": {"lambda": 0.05, "alpha": 3.5, "r_tr": 5, "rho": {"value": 25, "scale": "dB"},
                                 "beta": {"start": -10, "stop": 30, "points": 21, "scale": "dB"}},
                     "sim": {"trials": 50000, "seed": 5}})"},
        {"fig6", R"({"scheme": {"variant": "OSTBC", "code": "d4_rate12", "N": 4},
                     "network": {"lambda": 0.1, "alpha": 3.5, "r_tr": 5, "rho": {"value": 25, "scale": "dB"},
                                 "beta": {"start": -10, "stop": 30, "points": 21, "scale": "dB"}},
                     "sim": {"trials": 50000, "seed": 6}})"},
        {"fig7", R"({"scheme": {"variant": "OSTBC", "code": ["alamouti", "g3_rate34", "g4_rate34"], "N": 4},
                     "network": {"lambda": {"start": 1e-4, "stop": 1, "points": 41, "scale": "log"},
                                 "alpha": 3.1, "r_tr": 2, "rho": {"value": 25, "scale": "dB"},
                                 "beta": {"values": [-3, 3], "scale": "dB"}}})"},
        {"fig8", R"({"scheme": {"variant": "OSTBC", "code": ["alamouti", "g3_rate34", "g4_rate34"], "N": 4},
                     "network": {"lambda": {"start": 1e-4, "stop": 1, "points": 41, "scale": "log"},
                                 "alpha": 3.1, "r_tr": 3, "rho": {"value": 20, "scale": "dB"},
                                 "beta": {"values": [-3, 3], "scale": "dB"}}})"},
        {"fig9", R"({"schemes": [{"variant": "SM-MRC", "M": [1, 2], "N": 4},
                                 {"variant": "SM-ZF", "M": 2, "N": 4},
                                 {"variant": "OSTBC", "code": ["alamouti", "g4_rate34"], "N": 4}],
                     "network": {"lambda": {"start": 1e-4, "stop": 1, "points": 41, "scale": "log"},
                                 "alpha": 3.3, "r_tr": 2, "rho": {"value": 25, "scale": "dB"},
                                 "beta": {"value": 2, "scale": "dB"}}})"},
        {"fig10", R"({"schemes": [{"variant": "SM-MRC", "M": [1, 2, 4], "N": 4},
                                  {"variant": "SM-ZF", "M": [2, 4], "N": 4},
                                  {"variant": "OSTBC", "code": ["alamouti", "g4_rate34"], "N": 4}],
                      "network": {"lambda": 0.01, "alpha": 2.5, "r_tr": 3, "rho": {"value": 20, "scale": "dB"},
                                  "beta": {"start": -10, "stop": 20, "points": 31, "scale": "dB"}}})"},
        {"fig11", R"({"scheme": {"variant": "SM-MRC", "M": [1, 2, 4], "N": 4},
                      "network": {"lambda": {"start": 1e-4, "stop": 1e-1, "points": 31, "scale": "log"},
                                  "alpha": 4.23, "r_tr": 3, "rho": {"value": 30, "scale": "dB"},
                                  "beta": {"value": 3, "scale": "dB"}}})"},
        {"fig12", R"({"scheme": {"variant": "SM-ZF", "M": [1, 2, 3, 4], "N": 4},
                      "network": {"lambda": 0.001, "alpha": 4, "r_tr": 3, "rho": {"value": 30, "scale": "dB"},
                                  "beta": {"value": 3, "scale": "dB"}},
                      "epsilon": {"start": 1e-4, "stop": 0.3, "points": 25, "scale": "log"}})"},
        {"fig13", R"({"scheme": {"variant": "SM-ZF", "M": [1, 2, 4], "N": 4},
                      "network": {"lambda": 0.001, "alpha": {"start": 2.2, "stop": 6, "points": 39},
                                  "r_tr": 3, "rho": {"value": 100, "scale": "dB"},
                                  "beta": {"value": 3, "scale": "dB"}},
                      "epsilon": 1e-4})"},
        {"fig14", R"({"mode": "ca",
                      "network": {"lambda": {"values": [0.03, 0.1, 0.3, 1]}, "alpha": 4, "r_tr": 1.5,
                                  "rho": {"value": 10, "scale": "dB"}, "beta": {"value": 5, "scale": "dB"}},
                      "r_gz": {"start": 0.25, "stop": 5, "points": 20},
                      "sim": {"trials": 20000, "seed": 14}})"},
        {"fig15", R"({"antennas": [2, 3, 4],
                      "network": {"lambda": {"start": 1e-3, "stop": 1, "points": 50, "scale": "log"},
                                  "p": {"start": 0.02, "stop": 1, "points": 50},
                                  "alpha": 3, "r_tr": 2, "rho": {"value": 10, "scale": "dB"},
                                  "beta": {"value": 5, "scale": "dB"}}})"},
        {"tc-compare", R"({"schemes": [{"variant": "SM-MRC", "M": [1, 2, 3], "N": 5},
                                       {"variant": "SM-ZF", "M": [2, 3], "N": 5},
                                       {"variant": "OSTBC", "code": ["alamouti", "g3_rate34"], "N": 5}],
                           "network": {"lambda": 0.001, "alpha": {"start": 2.2, "stop": 6, "points": 39},
                                       "r_tr": 1, "rho": {"value": 30, "scale": "dB"},
                                       "beta": {"values": [0, -5], "scale": "dB"}},
                           "epsilon": 0.15})"},
    };
    return t;
}

} // namespace

std::vector<std::string> preset_names()
{
    std::vector<std::string> out;
    for (const auto &[k, v] : preset_table())
        out.push_back(k);
    return out;
}

json preset(const std::string &name)
{
    const auto &t = preset_table();
    const auto it = t.find(name);
    if (it == t.end())
        throw ConfigError("unknown preset '" + name + "'");
    return json::parse(it->second);
}

} // namespace pppmimo
