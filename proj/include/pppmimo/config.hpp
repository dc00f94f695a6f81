// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// Experiment configuration: JSON parsing, range expansion and named presets.
// All dB inputs are converted to linear scale here and nowhere else.

#ifndef PPPMIMO_CONFIG_HPP
#define PPPMIMO_CONFIG_HPP

#include "pppmimo/mcsim.hpp"
#include "pppmimo/schemes.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pppmimo {

using json = nlohmann::json;

/*!
 * Expand a range specification into linear values. Accepted forms:
 *   25                                       a single linear value
 *   {"value": 25, "scale": "dB"}
 *   {"values": [-3, 3], "scale": "dB"}
 *   {"start": a, "stop": b, "points": n, "scale": "linear" | "log" | "dB"}
 * "log" spaces points geometrically between linear endpoints; "dB" spaces them
 * uniformly in dB and converts each.
 */
std::vector<double> parse_range(const json &spec, const std::string &field);

double db_to_linear(double db);

enum class SimMode
{
    Aloha,
    CoordinatedAccess
};

struct ExperimentConfig
{
    SimMode mode = SimMode::Aloha;
    std::vector<SchemeSpec> schemes;

    std::vector<double> lambda, p{1.0}, alpha, r_tr, rho, beta;
    std::vector<double> epsilon; //!< non-empty enables capacity columns
    std::vector<double> r_gz;    //!< coordinated-access guard parameters

    SimConfig sim;
    int stream = 1;

    std::string target; //!< optimize: lambda_opt_zf | n_opt_zf | m_opt_lowbeta | kappa_opt_lowbeta | kappa_star | ca_optimal_guard
    Receiver receiver = Receiver::ZF;
    std::vector<int> antennas; //!< N list for optimize / compare-mac

    json resolved; //!< canonical form with linear values, echoed into CSV headers
};

ExperimentConfig parse_config(const json &j);
ExperimentConfig load_config_file(const std::string &path);

std::vector<std::string> preset_names();
json preset(const std::string &name);

} // namespace pppmimo

#endif
