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
#ifndef RUMOR_INTERACTION_CLOCK_HPP
#define RUMOR_INTERACTION_CLOCK_HPP

#include "rumor/rate_function.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace rumor::detail
{

/**
 * Walks the piecewise-constant total rate sum_k coef[k] * rates[k](s) forward
 * from t, consuming `mass` units of cumulative intensity. Returns the time at
 * which the mass runs out, or +inf if that would happen at or after `limit`;
 * in the latter case `mass` is reduced by the intensity spent on [t, limit).
 */
template <std::size_t N>
double consume_intensity(const std::array<const RateFunction*, N>& rates, const std::array<double, N>& coef, double t,
                         double limit, double& mass)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    while (t < limit) {
        double total = 0.0;
        double next = limit;
        for (std::size_t k = 0; k < N; ++k) {
            if (coef[k] <= 0.0)
                continue;
            total += coef[k] * (*rates[k])(t);
            next = std::min(next, rates[k]->next_breakpoint(t));
        }
        if (total > 0.0) {
            double need = mass / total;
            if (t + need < next)
                return t + need;
        }
        if (next == inf)
            return inf;
        mass = std::max(0.0, mass - total * (next - t));
        t = next;
    }
    return inf;
}

} // namespace rumor::detail

#endif
