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
#include "rumor/grid.hpp"

#include "rumor/errors.hpp"

#include <cmath>

namespace rumor
{

Grid Grid::over(double horizon, double dt)
{
    if (!(dt > 0.0) || !(horizon > 0.0) || !std::isfinite(horizon))
        throw ConfigError("grid: need dt > 0 and a positive finite horizon");
    double k = std::round(horizon / dt);
    if (k < 1.0 || std::abs(k * dt - horizon) > 1e-9 * horizon)
        throw ConfigError("grid: horizon must be a positive multiple of dt");
    return Grid{horizon / k, static_cast<std::size_t>(k)};
}

void Grid::validate() const
{
    if (!(dt > 0.0) || steps < 1)
        throw ConfigError("grid: need dt > 0 and at least one step");
}

} // namespace rumor
