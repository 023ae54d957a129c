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
#ifndef RUMOR_RATE_FUNCTION_HPP
#define RUMOR_RATE_FUNCTION_HPP

#include <optional>
#include <span>
#include <vector>

namespace rumor
{

/**
 * Right-continuous piecewise-constant rate t -> r(t) >= 0 on [0, inf).
 *
 * Segment k covers [start_k, start_{k+1}); the last segment extends to infinity.
 * The first segment must start at 0. A global bound M >= sup r is carried
 * along so thinning-style bounds remain available to callers.
 */
class RateFunction
{
public:
    struct Segment {
        double start;
        double rate;
    };

    RateFunction();
    explicit RateFunction(std::vector<Segment> segments, std::optional<double> bound = std::nullopt);

    static RateFunction constant(double rate);
    static RateFunction zero()
    {
        return constant(0.0);
    }

    double operator()(double t) const;
    /// Integral over [a, b], a <= b.
    double integral(double a, double b) const;
    double cumulative(double t) const;
    /// Smallest breakpoint strictly greater than t, or +inf.
    double next_breakpoint(double t) const;

    double bound() const
    {
        return m_bound;
    }
    bool is_zero() const;
    bool is_constant() const
    {
        return m_segments.size() == 1;
    }
    std::span<const Segment> segments() const
    {
        return m_segments;
    }

private:
    std::size_t segment_index(double t) const;

    std::vector<Segment> m_segments;
    std::vector<double> m_cumulative; // integral from 0 to segment start
    double m_bound;
};

} // namespace rumor

#endif
