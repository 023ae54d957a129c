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
#include "rumor/delay_law.hpp"
#include "rumor/errors.hpp"
#include "rumor/rate_function.hpp"
#include "rumor/simulator.hpp"
#include "rumor/stats.hpp"

#include <cmath>
#include <gtest/gtest.h>

using namespace rumor;

TEST(RateFunction, PiecewiseIntegral)
{
    RateFunction r({{0.0, 1.0}, {2.0, 3.0}, {5.0, 0.5}});
    EXPECT_DOUBLE_EQ(r(1.9), 1.0);
    EXPECT_DOUBLE_EQ(r(2.0), 3.0);
    EXPECT_NEAR(r.integral(1.0, 6.0), 1.0 + 9.0 + 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(r.next_breakpoint(2.5), 5.0);
    EXPECT_TRUE(std::isinf(r.next_breakpoint(5.0)));
    EXPECT_DOUBLE_EQ(r.bound(), 3.0);
}

TEST(RateFunction, RejectsBadSegments)
{
    EXPECT_THROW(RateFunction({{0.0, -1.0}}), ConfigError);
    EXPECT_THROW(RateFunction({{0.0, 1.0}, {0.0, 2.0}}), ConfigError);
    EXPECT_THROW(RateFunction({{0.0, 5.0}}, 1.0), ConfigError);
}

TEST(DelayLaw, CdfExamples)
{
    auto e = DelayLaw::exponential(1.0);
    EXPECT_EQ(e.cdf(0.0), 0.0);
    EXPECT_NEAR(e.cdf(std::log(2.0)), 0.5, 1e-15);
    for (auto law : {e, DelayLaw::gamma(2, 2), DelayLaw::weibull(0.7, 1.5), DelayLaw::lognormal(0, 0.5),
                     DelayLaw::uniform(1, 3), DelayLaw::atom(2), DelayLaw::empirical({0, 1, 4}, {0, 0.3, 1})})
        EXPECT_EQ(law.cdf(-1.0), 0.0) << law.describe();
}

TEST(DelayLaw, ComplementIsExact)
{
    for (auto law : {DelayLaw::gamma(2, 2), DelayLaw::weibull(1.5, 1), DelayLaw::exponential(1).with_atom(1.0, 0.3)})
        for (double x : {0.0, 0.3, 1.0, 2.5, 9.0})
            EXPECT_EQ(law.complement(x) + law.cdf(x), 1.0);
}

TEST(DelayLaw, ClosedFormCdfs)
{
    EXPECT_NEAR(DelayLaw::gamma(2, 2).cdf(1.0), 1.0 - 3.0 * std::exp(-2.0), 1e-14);
    EXPECT_NEAR(DelayLaw::weibull(2, 1).cdf(1.0), 1.0 - std::exp(-1.0), 1e-14);
    EXPECT_NEAR(DelayLaw::uniform(1, 3).cdf(2.5), 0.75, 1e-15);
    EXPECT_NEAR(DelayLaw::empirical({0, 1, 4}, {0, 0.3, 1}).cdf(2.5), 0.65, 1e-15);
    auto mixed = DelayLaw::exponential(1).with_atom(1.0, 0.3);
    EXPECT_NEAR(mixed.cdf(1.0) - mixed.cdf(std::nextafter(1.0, 0.0)), 0.3, 1e-12);
    EXPECT_NEAR(mixed.mean(), 0.7 + 0.3, 1e-12);
}

TEST(DelayLaw, MalformedEmpiricalTable)
{
    EXPECT_THROW(DelayLaw::empirical({0, 1}, {0, 0.5}), ConfigError);
    EXPECT_THROW(DelayLaw::empirical({0, 2, 1}, {0, 0.5, 1}), ConfigError);
    EXPECT_THROW(DelayLaw::empirical({0, 1, 2}, {0, 0.7, 0.5}), ConfigError);
    EXPECT_THROW(DelayLaw::gamma(-1, 1), ConfigError);
}

TEST(SamplePair, Atoms)
{
    Rng rng = make_rng(1, 0);
    auto p = sample_pair(DelayLaw::atom(2), ConditionalDelayLaw::independent(DelayLaw::atom(3)), rng);
    EXPECT_EQ(p.first, 2.0);
    EXPECT_EQ(p.second, 3.0);
}

TEST(SamplePair, ParameterMapSlice)
{
    Rng rng = make_rng(1, 0);
    auto cond = ConditionalDelayLaw::parameter_map({1.0}, {DelayLaw::atom(5), DelayLaw::atom(7)});
    auto p = sample_pair(DelayLaw::atom(2), cond, rng);
    EXPECT_EQ(p.first, 2.0);
    EXPECT_EQ(p.second, 7.0);
    EXPECT_EQ(cond.slice(0.5).cdf(5.0), 1.0);
}

TEST(SamplePair, ExponentialMarginalsPassKs)
{
    Rng rng = make_rng(42, 0);
    auto e = DelayLaw::exponential(1);
    auto cond = ConditionalDelayLaw::independent(e);
    std::vector<double> a, b;
    for (int i = 0; i < 100000; ++i) {
        auto [x, y] = sample_pair(e, cond, rng);
        a.push_back(x);
        b.push_back(y);
    }
    EXPECT_GT(ks_exp1(a), 1e-3);
    EXPECT_GT(ks_exp1(b), 1e-3);
}

TEST(DelayLaw, SamplerMeans)
{
    Rng rng = make_rng(3, 0);
    for (auto law : {DelayLaw::gamma(2, 2), DelayLaw::weibull(0.7, 1.5), DelayLaw::lognormal(0.1, 0.4),
                     DelayLaw::uniform(1, 3), DelayLaw::empirical({0, 1, 4}, {0, 0.3, 1}),
                     DelayLaw::exponential(2).with_atom(1.0, 0.25)}) {
        std::vector<double> v;
        for (int i = 0; i < 40000; ++i)
            v.push_back(law.sample(rng));
        auto m = mean_se(v);
        EXPECT_LT(std::abs(m.mean - law.mean()), 4.5 * m.se) << law.describe();
    }
}
