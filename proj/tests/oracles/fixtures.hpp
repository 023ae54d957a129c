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
#ifndef RUMOR_TESTS_FIXTURES_HPP
#define RUMOR_TESTS_FIXTURES_HPP

#include "rumor/model_laws.hpp"

#include <vector>

namespace fixture
{

/// Default contestant laws used throughout the test suite.
inline rumor::ModelLaws default_laws()
{
    rumor::ModelLaws L;
    L.lambda = rumor::RateFunction::constant(3.0);
    L.alpha = rumor::RateFunction::constant(0.4);
    L.beta = 0.6;
    L.f = rumor::DelayLaw::gamma(2, 2);
    return L;
}

/// Five law families with different shapes (smooth, heavy, bounded, atomic, mixed).
inline std::vector<rumor::ModelLaws> law_families()
{
    using rumor::ConditionalDelayLaw;
    using rumor::DelayLaw;
    std::vector<rumor::ModelLaws> out;
    rumor::ModelLaws a;
    a.beta = 0.6;
    a.f = DelayLaw::gamma(2, 2);
    out.push_back(a);
    rumor::ModelLaws b;
    b.beta = 0.3;
    b.f = DelayLaw::weibull(0.6, 1.2);
    b.f0 = DelayLaw::lognormal(0.0, 0.7);
    b.g_cond = ConditionalDelayLaw::independent(DelayLaw::weibull(1.7, 2.0));
    out.push_back(b);
    rumor::ModelLaws c;
    c.beta = 0.5;
    c.f = DelayLaw::uniform(0.5, 2.5);
    c.h_cond = ConditionalDelayLaw::independent(DelayLaw::atom(1.5));
    out.push_back(c);
    rumor::ModelLaws d;
    d.beta = 0.8;
    d.f = DelayLaw::exponential(1.0).with_atom(1.0, 0.4);
    d.f0 = DelayLaw::empirical({0, 1, 3}, {0, 0.5, 1});
    out.push_back(d);
    rumor::ModelLaws e;
    e.beta = 0.45;
    e.f = DelayLaw::lognormal(-0.2, 0.5);
    e.g_cond = ConditionalDelayLaw::parameter_map({1.0}, {DelayLaw::exponential(2), DelayLaw::gamma(3, 1)});
    out.push_back(e);
    return out;
}

} // namespace fixture

#endif
