/*
* Copyright (C) 2026 rumorsim contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef RUMOR_ERRORS_HPP
#define RUMOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rumor
{

/// Invalid parameters, malformed tables, inconsistent initial counts.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Quadrature or fixed-point iteration failed to reach its tolerance.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Query outside the horizon of a trajectory or solution.
class RangeError : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

/// Argument outside the domain of an operation (unknown pair, empty ensemble).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class InsufficientDataError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Standard error is zero, so a z-score is undefined.
class DegenerateEnsembleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Broken internal invariant (event queue out of order, conservation violated).
class InternalError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

[[noreturn]] void throw_internal(const std::string& what);

} // namespace rumor

#endif
