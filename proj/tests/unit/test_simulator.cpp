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
#include "interaction_clock.hpp"
#include "rumor/errors.hpp"
#include "rumor/simulator.hpp"
#include "rumor/stats.hpp"

#include <cmath>
#include <gtest/gtest.h>
#include <random>
#include <sstream>

using namespace rumor;

namespace
{

SimConfig default_run(std::int64_t n, std::uint64_t stream)
{
    SimConfig c;
    c.n = n;
    c.horizon = 10.0;
    c.w0 = n / 10;
    c.y0 = n / 20;
    c.z0 = n / 20;
    c.stream = stream;
    c.laws.lambda = RateFunction::constant(3.0);
    c.laws.alpha = RateFunction::constant(0.4);
    c.laws.beta = 0.6;
    c.laws.f = DelayLaw::gamma(2, 2);
    return c;
}

} // namespace

TEST(Simulator, NothingHappensWithoutRatesOrSeeds)
{
    SimConfig c;
    c.n = 50;
    c.laws.lambda = RateFunction::zero();
    c.laws.alpha = RateFunction::zero();
    Trajectory tr = simulate(c);
    EXPECT_TRUE(tr.events.empty());
    EXPECT_EQ(tr.final_counts, (StateCounts{50, 0, 0, 0}));
}

TEST(Simulator, DeterministicSchedule)
{
    SimConfig c;
    c.n = 10;
    c.w0 = 1;
    c.laws.lambda = RateFunction::zero();
    c.laws.alpha = RateFunction::zero();
    c.laws.beta = 1.0;
    c.laws.f0 = DelayLaw::atom(1.0);
    c.laws.g0 = DelayLaw::atom(2.0);
    c.laws.g_cond = ConditionalDelayLaw::independent(DelayLaw::atom(2.0));
    Trajectory tr = simulate(c);
    ASSERT_EQ(tr.events.size(), 2u);
    EXPECT_EQ(tr.events[0].kind, EventKind::activation);
    EXPECT_DOUBLE_EQ(tr.events[0].time, 1.0);
    EXPECT_EQ(to_string(tr.events[0].kind), "PassiveActivates");
    EXPECT_EQ(tr.events[1].kind, EventKind::spreader_stop);
    EXPECT_DOUBLE_EQ(tr.events[1].time, 3.0);
    EXPECT_EQ(to_string(tr.events[1].kind), "SpreaderForgets");
}

TEST(Simulator, ConservationAndReplay)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        Trajectory tr = simulate(default_run(400, s));
        EXPECT_TRUE(replay_consistent(tr));
        double last = 0.0;
        for (const auto& e : tr.events) {
            EXPECT_EQ(e.after.total(), 400);
            EXPECT_GE(e.time, last);
            last = e.time;
            EXPECT_GE(e.after.x, 0);
            EXPECT_GE(e.after.y, 0);
        }
    }
}

TEST(Simulator, Deterministic)
{
    std::ostringstream a, b;
    write_event_log(simulate(default_run(300, 4)), a);
    write_event_log(simulate(default_run(300, 4)), b);
    EXPECT_EQ(a.str(), b.str());
    std::ostringstream c;
    write_event_log(simulate(default_run(300, 5)), c);
    EXPECT_NE(a.str(), c.str());
}

TEST(Simulator, EventLogFormat)
{
    std::ostringstream os;
    Trajectory tr = simulate(default_run(100, 1));
    write_event_log(tr, os);
    std::string first = os.str().substr(0, os.str().find('\n'));
    EXPECT_EQ(first.rfind("{\"t\":", 0), 0u);
    EXPECT_NE(first.find("\"kind\":"), std::string::npos);
    EXPECT_EQ(shortest_repr(0.1), "0.1");
}

TEST(Simulator, CountsAt)
{
    Trajectory tr = simulate(default_run(200, 2));
    ASSERT_FALSE(tr.events.empty());
    EXPECT_EQ(counts_at(tr, 0.0), tr.initial);
    EXPECT_EQ(counts_at(tr, std::nextafter(tr.events[0].time, 0.0)), tr.initial);
    EXPECT_EQ(counts_at(tr, tr.config.horizon), tr.final_counts);
    EXPECT_THROW(counts_at(tr, -0.1), RangeError);
    EXPECT_THROW(counts_at(tr, 10.5), RangeError);
}

TEST(Simulator, RejectsBadConfig)
{
    SimConfig c;
    c.horizon = 0.0;
    EXPECT_THROW(simulate(c), ConfigError);
    c.horizon = 1.0;
    c.w0 = 2000;
    EXPECT_THROW(simulate(c), ConfigError);
}

TEST(Compensator, Examples)
{
    Trajectory tr;
    tr.config.n = 24;
    tr.config.horizon = 0.5;
    tr.config.laws.lambda = RateFunction::constant(1.0);
    tr.initial = StateCounts{12, 0, 12, 0};
    tr.final_counts = tr.initial;
    EXPECT_EQ(compensator(tr, Process::A, 0.0), 0.0);
    EXPECT_NEAR(compensator(tr, Process::A, 0.5), 3.0, 1e-15);
    tr.config.laws.lambda = RateFunction::zero();
    EXPECT_EQ(compensator(tr, Process::A, 0.5), 0.0);
}

TEST(Compensator, IdentityRescaling)
{
    Trajectory tr;
    tr.config.n = 4;
    tr.config.horizon = 5.0;
    tr.config.laws.lambda = RateFunction::constant(1.0);
    tr.initial = StateCounts{2, 0, 2, 0};
    EXPECT_TRUE(time_rescaled_interarrivals(tr, Process::A).empty());
    for (double t : {0.5, 1.2, 2.0, 3.7}) {
        EventRecord e;
        e.time = t;
        e.kind = EventKind::contact;
        e.after = tr.initial; // frozen state
        tr.events.push_back(e);
    }
    auto ia = time_rescaled_interarrivals(tr, Process::A);
    ASSERT_EQ(ia.size(), 3u);
    EXPECT_NEAR(ia[0], 0.7, 1e-15);
    EXPECT_NEAR(ia[1], 0.8, 1e-15);
    EXPECT_NEAR(ia[2], 1.7, 1e-15);
}

TEST(InteractionClock, FrozenStateIsExponential)
{
    // Rate c on [0, 1), 3c afterwards, coefficient x y / n = 2.
    RateFunction rate({{0.0, 0.5}, {1.0, 1.5}});
    std::array<const RateFunction*, 1> rates{&rate};
    std::array<double, 1> coef{2.0};
    Rng rng = make_rng(11, 0);
    std::exponential_distribution<double> e(1.0);
    std::vector<double> rescaled;
    double t = 0.0;
    while (rescaled.size() < 10000) {
        double mass = e(rng);
        double next = detail::consume_intensity<1>(rates, coef, t, 1e9, mass);
        rescaled.push_back(2.0 * rate.integral(t, next));
        t = next;
    }
    EXPECT_GT(ks_exp1(rescaled), 1e-3);
}

TEST(Simulator, TimeRescalingPassesKs)
{
    std::vector<RescaledRun> a, b;
    for (std::uint64_t s = 0; s < 40; ++s) {
        Trajectory tr = simulate(default_run(500, s));
        a.push_back(time_rescaled_run(tr, Process::A));
        b.push_back(time_rescaled_run(tr, Process::B));
        auto gaps = time_rescaled_interarrivals(tr, Process::B);
        ASSERT_EQ(gaps.size() + 1, std::max<std::size_t>(b.back().epochs.size(), 1));
        for (std::size_t i = 0; i < gaps.size(); ++i)
            EXPECT_NEAR(gaps[i], b.back().epochs[i + 1] - b.back().epochs[i], 1e-9);
    }
    EXPECT_GT(ks_exp1(pooled_interarrivals(a)), 1e-3);
    EXPECT_GT(ks_exp1(pooled_interarrivals(b)), 1e-3);
}

TEST(Compensator, MartingaleMean)
{
    const int R = 300;
    for (double t : {2.0, 6.0, 10.0}) {
        std::vector<double> v;
        for (int s = 0; s < R; ++s) {
            Trajectory tr = simulate(default_run(300, static_cast<std::uint64_t>(s)));
            v.push_back(static_cast<double>(count_at(tr, Process::A, t)) - compensator(tr, Process::A, t));
        }
        auto m = mean_se(v);
        EXPECT_LT(std::abs(m.mean), 4 * m.se) << "t=" << t;
    }
}
