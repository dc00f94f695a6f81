// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// CSV-producing experiment commands shared by the ppp-mimo tool and the tests.

#ifndef PPPMIMO_COMMANDS_HPP
#define PPPMIMO_COMMANDS_HPP

#include "pppmimo/config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace pppmimo {

inline constexpr const char *kVersion = "1.0.0";

//! Round-trip formatting (%.17g).
std::string format_number(double v);

//! '#'-prefixed provenance block: command, version, rng layout, seed and resolved config.
void write_csv_preamble(std::ostream &os, const std::string &command, const ExperimentConfig &cfg);

void run_analyze(const ExperimentConfig &cfg, std::ostream &os);
void run_simulate(const ExperimentConfig &cfg, std::ostream &os);
void run_optimize(const ExperimentConfig &cfg, std::ostream &os);
void run_compare_mac(const ExperimentConfig &cfg, std::ostream &os);

//! Validity-threshold tables: 2 gives 1/lambda_min, 3 the high-beta and 4 the low-beta beta_min in dB.
struct ThresholdTable
{
    int which = 2;
    std::string row_name, col_name, value_name;
    std::vector<double> rows;  //!< rho in dB
    std::vector<double> cols;  //!< beta in dB (table 2) or 1/lambda
    std::vector<std::vector<double>> values;
};

ThresholdTable compute_table(int which);
void write_table(const ThresholdTable &t, std::ostream &os);

} // namespace pppmimo

#endif
