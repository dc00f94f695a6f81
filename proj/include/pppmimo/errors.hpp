// SPDX-License-Identifier: Apache-2.0
//
// ppp-mimo: outage, throughput and capacity analysis for multi-antenna ALOHA networks
// Copyright (C) 2026 The ppp-mimo authors

#ifndef PPPMIMO_ERRORS_HPP
#define PPPMIMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pppmimo {

// Base for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error
{
public:
    using Error::Error;
};

// Alternating sums cancelled beyond the configured guard.
class NumericalInstability : public Error
{
public:
    using Error::Error;
};

// Bracketed solver found no root, or the request is infeasible.
class SolverError : public Error
{
public:
    using Error::Error;
};

// Malformed or inconsistent experiment configuration.
class ConfigError : public Error
{
public:
    using Error::Error;
};

} // namespace pppmimo

#endif
