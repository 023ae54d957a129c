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
#include "rumor/errors.hpp"
#include "rumor/simulator.hpp"
#include "rumor/stats.hpp"

#include <gtest/gtest.h>
#include <random>

using namespace rumor;

TEST(Ks, NullIsCalibrated)
{
    Rng rng = make_rng(99, 0);
    std::exponential_distribution<double> e(1.0);
    int rejections = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> v(10000);
        for (double& x : v)
            x = e(rng);
        if (ks_exp1(v) < 1e-3)
            ++rejections;
    }
    EXPECT_LE(rejections, 5);
}

TEST(Ks, AlternativesAreRejected)
{
    std::vector<double> equal(100, 1.0);
    EXPECT_LT(ks_exp1(equal), 1e-10);
    Rng rng = make_rng(7, 0);
    std::exponential_distribution<double> e(2.0);
    std::vector<double> v(10000);
    for (double& x : v)
        x = e(rng);
    EXPECT_LT(ks_exp1(v), 1e-6);
}

TEST(Ks, NeedsTwentySamples)
{
    std::vector<double> v(19, 1.0);
    EXPECT_THROW(ks_exp1(v), InsufficientDataError);
}

TEST(Ks, KolmogorovTail)
{
    EXPECT_NEAR(kolmogorov_tail(1.3581), 0.05, 1e-4);
    EXPECT_NEAR(kolmogorov_tail(1.6276), 0.01, 1e-4);
    EXPECT_NEAR(kolmogorov_tail(0.8), 0.5441, 1e-4);
}

TEST(ZScore, Examples)
{
    EXPECT_EQ(zscore(0.5, 0.1, 0.5), 0.0);
    EXPECT_NEAR(zscore(0.7, 0.1, 0.5), 2.0, 1e-12);
    EXPECT_THROW(zscore(0.5, 0.0, 0.5), DegenerateEnsembleError);
}

TEST(Pooling, GapsStraddleRuns)
{
    std::vector<RescaledRun> runs{{{0.5, 2.0}, 3.0}, {{}, 1.5}, {{0.25}, 2.0}};
    EXPECT_EQ(pooled_interarrivals(runs), (std::vector<double>{0.5, 1.5, 2.75}));
    EXPECT_TRUE(pooled_interarrivals(std::vector<RescaledRun>{}).empty());
}
