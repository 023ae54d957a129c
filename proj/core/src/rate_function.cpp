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
#include "rumor/rate_function.hpp"
#include "rumor/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rumor
{

RateFunction::RateFunction()
    : RateFunction(std::vector<Segment>{{0.0, 0.0}})
{
}

RateFunction::RateFunction(std::vector<Segment> segments, std::optional<double> bound)
    : m_segments(std::move(segments))
{
    if (m_segments.empty()) {
        throw ConfigError("rate function needs at least one segment");
    }
    if (m_segments.front().start != 0.0) {
        throw ConfigError("rate function must start at t=0");
    }
    double max_rate = 0.0;
    for (std::size_t k = 0; k < m_segments.size(); ++k) {
        const auto& seg = m_segments[k];
        if (!std::isfinite(seg.rate) || seg.rate < 0.0) {
            throw ConfigError("rate function segment " + std::to_string(k) + " has invalid rate");
        }
        if (k > 0 && !(seg.start > m_segments[k - 1].start)) {
            throw ConfigError("rate function breakpoints must be strictly increasing");
        }
        if (!std::isfinite(seg.start)) {
            throw ConfigError("rate function breakpoint must be finite");
        }
        max_rate = std::max(max_rate, seg.rate);
    }
    m_bound = bound.value_or(max_rate);
    if (m_bound < max_rate) {
        throw ConfigError("declared rate bound is below a segment rate");
    }
    m_cumulative.resize(m_segments.size());
    m_cumulative[0] = 0.0;
    for (std::size_t k = 1; k < m_segments.size(); ++k) {
        m_cumulative[k] =
            m_cumulative[k - 1] + m_segments[k - 1].rate * (m_segments[k].start - m_segments[k - 1].start);
    }
}

RateFunction RateFunction::constant(double rate)
{
    return RateFunction(std::vector<Segment>{{0.0, rate}});
}

std::size_t RateFunction::segment_index(double t) const
{
    // last segment with start <= t
    auto it = std::upper_bound(m_segments.begin(), m_segments.end(), t,
                               [](double v, const Segment& s) { return v < s.start; });
    if (it == m_segments.begin()) {
        return 0;
    }
    return static_cast<std::size_t>(std::distance(m_segments.begin(), it) - 1);
}

double RateFunction::operator()(double t) const
{
    if (t < 0.0) {
        return 0.0;
    }
    return m_segments[segment_index(t)].rate;
}

double RateFunction::cumulative(double t) const
{
    if (t <= 0.0) {
        return 0.0;
    }
    const auto k = segment_index(t);
    return m_cumulative[k] + m_segments[k].rate * (t - m_segments[k].start);
}

double RateFunction::integral(double a, double b) const
{
    if (m_segments.size() == 1) {
        return m_segments[0].rate * (std::max(b, 0.0) - std::max(a, 0.0));
    }
    return cumulative(b) - cumulative(a);
}

double RateFunction::next_breakpoint(double t) const
{
    auto it = std::upper_bound(m_segments.begin(), m_segments.end(), t,
                               [](double v, const Segment& s) { return v < s.start; });
    return it == m_segments.end() ? std::numeric_limits<double>::infinity() : it->start;
}

bool RateFunction::is_zero() const
{
    return std::all_of(m_segments.begin(), m_segments.end(), [](const Segment& s) { return s.rate == 0.0; });
}

} // namespace rumor
