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
#ifndef RUMOR_MODEL_LAWS_HPP
#define RUMOR_MODEL_LAWS_HPP

#include "rumor/delay_law.hpp"
#include "rumor/rate_function.hpp"

namespace rumor
{

/**
 * Rates, branching probability and delay laws of the contestant model.
 *
 * f0 is the activation delay of initially passive individuals, g0 and h0 the
 * remaining spreading and contesting times of the initial spreaders and
 * contestants. A contact draws eta ~ f and then a secondary delay from g_cond
 * (spreader side, probability beta) or h_cond (contestant side).
 */
struct ModelLaws {
    RateFunction lambda;
    RateFunction alpha;
    double beta = 0.5;
    DelayLaw f0 = DelayLaw::exponential(1.0);
    DelayLaw g0 = DelayLaw::exponential(1.0);
    DelayLaw h0 = DelayLaw::exponential(1.0);
    DelayLaw f = DelayLaw::exponential(1.0);
    ConditionalDelayLaw g_cond = ConditionalDelayLaw::independent(DelayLaw::exponential(1.0));
    ConditionalDelayLaw h_cond = ConditionalDelayLaw::independent(DelayLaw::exponential(1.0));

    /// Throws ConfigError when beta is outside [0,1].
    void validate() const;
};

/// Rates and branching probabilities of the LMR model (no delay laws).
struct LmrLaws {
    RateFunction lambda;
    RateFunction theta;
    RateFunction gamma;
    double delta = 0.5; // probability that a contacted ignorant becomes a spreader
    double beta = 0.5;  // probability that a spreader-spreader meeting stifles only one

    void validate() const;
};

} // namespace rumor

#endif
