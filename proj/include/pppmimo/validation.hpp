// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors
//
// Built-in invariant suite behind `ppp-mimo validate`.

#ifndef PPPMIMO_VALIDATION_HPP
#define PPPMIMO_VALIDATION_HPP

#include <ostream>
#include <string>
#include <vector>

namespace pppmimo {

struct CheckResult
{
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

//! Checks of one module ("specfun", "schemes", "analysis", "mcsim", "cli"); quick trims Monte Carlo work.
std::vector<CheckResult> run_checks(const std::string &module, bool quick);

//! All modules in dependency order.
std::vector<CheckResult> run_validation(bool quick);

//! Fixed-width pass/fail table; returns true when everything passed.
bool print_report(const std::vector<CheckResult> &results, std::ostream &os);

} // namespace pppmimo

#endif
