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
#include "rumor/lmr.hpp"
#include "rumor/stats.hpp"

#include <gtest/gtest.h>
#include <sstream>

using namespace rumor;

namespace
{

LmrLaws default_laws()
{
    LmrLaws L;
    L.lambda = RateFunction::constant(1.5);
    L.theta = RateFunction::constant(0.5);
    L.gamma = RateFunction::constant(0.5);
    L.delta = 0.7;
    L.beta = 0.4;
    return L;
}

LmrConfig run_config(std::int64_t n, std::uint64_t stream)
{
    LmrConfig c;
    c.n = n;
    c.u0 = n / 20;
    c.y0 = n / 10;
    c.z0 = n / 20;
    c.stream = stream;
    c.laws = default_laws();
    return c;
}

} // namespace

TEST(LmrSim, ZeroRatesEmptyLog)
{
    LmrConfig c = run_config(100, 0);
    c.laws.lambda = RateFunction::zero();
    c.laws.theta = RateFunction::zero();
    c.laws.gamma = RateFunction::zero();
    EXPECT_TRUE(simulate_lmr(c).events.empty());
}

TEST(LmrSim, SingleSpreaderNeverPairs)
{
    LmrConfig c = run_config(100, 0);
    c.y0 = 1;
    c.u0 = c.z0 = 0;
    c.laws.lambda = RateFunction::zero();
    c.laws.theta = RateFunction::constant(50.0);
    for (std::uint64_t s = 0; s < 20; ++s) {
        c.stream = s;
        for (const auto& e : simulate_lmr(c).events)
            EXPECT_NE(e.kind, LmrProcess::B);
    }
}

TEST(LmrSim, ConservationMonotonicityReplay)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        LmrTrajectory tr = simulate_lmr(run_config(500, s));
        EXPECT_TRUE(lmr_replay_consistent(tr));
        LmrCounts last = tr.initial;
        for (const auto& e : tr.events) {
            EXPECT_EQ(e.after.total(), 500);
            EXPECT_GE(e.after.u, last.u);
            EXPECT_GE(e.after.z, last.z);
            last = e.after;
        }
    }
}

TEST(LmrSim, DeterministicLog)
{
    std::ostringstream a, b;
    write_event_log(simulate_lmr(run_config(300, 3)), a);
    write_event_log(simulate_lmr(run_config(300, 3)), b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(LmrSim, TimeRescaling)
{
    std::vector<std::vector<RescaledRun>> runs(3);
    for (std::uint64_t s = 0; s < 40; ++s) {
        LmrTrajectory tr = simulate_lmr(run_config(500, s));
        for (int k = 0; k < 3; ++k) {
            runs[k].push_back(lmr_rescaled_run(tr, static_cast<LmrProcess>(k)));
            EXPECT_EQ(lmr_rescaled_interarrivals(tr, static_cast<LmrProcess>(k)).size() + 1,
                      std::max<std::size_t>(runs[k].back().epochs.size(), 1));
        }
    }
    for (const auto& r : runs)
        EXPECT_GT(ks_exp1(pooled_interarrivals(r)), 1e-3);
}

TEST(LmrNoise, ZeroAtOriginAndDeltaOne)
{
    LmrConfig c = run_config(500, 1);
    c.laws.delta = 1.0;
    LmrNoisePath p = extract_lmr_noise(simulate_lmr(c), c.laws, Grid::over(10, 1.0));
    for (const auto& v : p.values)
        EXPECT_EQ(v[0], 0.0);
    for (double v : p[LmrNoise::U1])
        EXPECT_EQ(v, 0.0);
}

TEST(LmrNoise, CompensatedPairCountHasZeroMean)
{
    std::vector<double> v;
    Grid g = Grid::over(10, 1.0);
    for (std::uint64_t s = 0; s < 400; ++s)
        v.push_back(extract_lmr_noise(simulate_lmr(run_config(400, s)), default_laws(), g)[LmrNoise::Y3][5]);
    auto m = mean_se(v);
    EXPECT_LT(std::abs(m.mean), 4 * m.se);
}

TEST(LmrCov, TableRows)
{
    LmrLaws L = default_laws();
    auto sol = solve_lmr(L, {0.05, 0.1, 0.05}, Grid::over(10, 0.01));
    for (LmrPair p : lmr_table_pairs())
        EXPECT_EQ(lmr_cov_table(p, 0.0, 4.0, sol, L), 0.0);
    for (auto [t, r] : {std::pair{2.0, 5.0}, std::pair{7.0, 3.0}})
        EXPECT_EQ(lmr_cov_table({LmrNoise::U1, LmrNoise::Y1}, t, r, sol, L),
                  -lmr_cov_table({LmrNoise::U1, LmrNoise::U1}, t, r, sol, L));
    for (double d : {0.0, 1.0}) {
        LmrLaws M = L;
        M.delta = d;
        EXPECT_EQ(lmr_cov_table({LmrNoise::U1, LmrNoise::U1}, 5.0, 5.0, sol, M), 0.0);
        EXPECT_EQ(lmr_cov_table({LmrNoise::Y1, LmrNoise::Y1}, 5.0, 5.0, sol, M), 0.0);
    }
    EXPECT_THROW(lmr_cov_table({LmrNoise::Y3, LmrNoise::Y3}, 1.0, 2.0, sol, L), DomainError);
    EXPECT_THROW(lmr_pair_from_string("U1Q"), DomainError);
}

TEST(LmrEpochs, ZeroCases)
{
    std::vector<LmrTrajectory> trajs;
    for (std::uint64_t s = 0; s < 5; ++s) {
        LmrConfig c = run_config(200, s);
        c.laws.gamma = RateFunction::zero();
        trajs.push_back(simulate_lmr(c));
    }
    EXPECT_EQ(estimate_QC(trajs, 0.0, 0.0).value, 0.0);
    EXPECT_EQ(estimate_QC(trajs, 2.0, 6.0).value, 0.0);
    EXPECT_THROW(estimate_QC(std::span<const LmrTrajectory>{}, 1.0, 2.0), DomainError);
}
