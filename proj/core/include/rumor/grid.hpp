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
#ifndef RUMOR_GRID_HPP
#define RUMOR_GRID_HPP

#include <cstddef>

namespace rumor
{

/// Uniform time grid 0, dt, ..., steps * dt.
struct Grid {
    double dt = 0.01;
    std::size_t steps = 1;

    /// Grid with the given step covering [0, horizon]; horizon must be a multiple of dt up to rounding.
    static Grid over(double horizon, double dt);

    double horizon() const
    {
        return dt * static_cast<double>(steps);
    }
    double node(std::size_t k) const
    {
        return dt * static_cast<double>(k);
    }
    std::size_t size() const
    {
        return steps + 1;
    }
    void validate() const;
};

} // namespace rumor

#endif
