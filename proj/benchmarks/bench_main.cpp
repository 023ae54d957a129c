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
#include "rumor/flln.hpp"
#include "rumor/kernels.hpp"
#include "rumor/lmr.hpp"
#include "rumor/simulator.hpp"

#include <benchmark/benchmark.h>

using namespace rumor;

namespace
{

ModelLaws laws()
{
    ModelLaws L;
    L.lambda = RateFunction::constant(3.0);
    L.alpha = RateFunction::constant(0.4);
    L.beta = 0.6;
    L.f = DelayLaw::gamma(2, 2);
    return L;
}

void BM_Simulate(benchmark::State& state)
{
    SimConfig c;
    c.n = state.range(0);
    c.w0 = c.n / 10;
    c.y0 = c.n / 20;
    c.z0 = c.n / 20;
    c.laws = laws();
    c.keep_marks = false;
    std::size_t events = 0;
    for (auto _ : state) {
        Trajectory tr = simulate(c);
        events += tr.events.size();
        ++c.stream;
    }
    state.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Simulate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SimulateLmr(benchmark::State& state)
{
    LmrConfig c;
    c.n = state.range(0);
    c.u0 = c.n / 20;
    c.y0 = c.n / 10;
    c.z0 = c.n / 20;
    c.laws.lambda = RateFunction::constant(1.5);
    c.laws.theta = RateFunction::constant(0.5);
    c.laws.gamma = RateFunction::constant(0.5);
    c.laws.delta = 0.7;
    c.laws.beta = 0.4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_lmr(c));
        ++c.stream;
    }
}
BENCHMARK(BM_SimulateLmr)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SolveContestant(benchmark::State& state)
{
    ModelLaws L = laws();
    Grid g = Grid::over(10, 10.0 / static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_contestant(L, {0.1, 0.05, 0.05}, g));
}
BENCHMARK(BM_SolveContestant)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Kernel(benchmark::State& state)
{
    ModelLaws L = laws();
    double t = 0.0;
    for (auto _ : state) {
        t = t > 10.0 ? 0.01 : t + 0.37;
        benchmark::DoNotOptimize(kernel_eval(Kernel::psi, L, t));
    }
}
BENCHMARK(BM_Kernel);

} // namespace
BENCHMARK_MAIN();
