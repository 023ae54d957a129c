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
// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "../oracles/fixtures.hpp"
#include "../oracles/oracles.hpp"
#include "rumor/fclt.hpp"
#include "rumor/flln.hpp"
#include "rumor/harness/config.hpp"
#include "rumor/harness/experiments.hpp"
#include "rumor/kernels.hpp"
#include "rumor/lmr.hpp"
#include "rumor/simulator.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/weibull.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace rumor;
namespace fs = std::filesystem;

namespace
{

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Settings {
    fs::path out = "acceptance_out";
    int threads = 1;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Collects the failing rows of a report, optionally restricted by a predicate on the row name.
Outcome from_report(const harness::StatReport& rep, const std::function<bool(const std::string&)>& keep)
{
    Outcome o{true, ""};
    std::size_t rows = 0, bad = 0;
    std::string failures;
    for (const auto& row : rep.rows) {
        if (!keep(row.name))
            continue;
        ++rows;
        if (!row.pass) {
            o.pass = false;
            ++bad;
            if (bad <= 6)
                failures += "; " + row.name + " stat=" + fmt("%.4g", row.statistic);
        }
    }
    if (rows == 0)
        return {false, "no rows"};
    o.detail = std::to_string(rows - bad) + "/" + std::to_string(rows) + " rows pass" + failures;
    return o;
}

Outcome all_rows(const harness::StatReport& rep)
{
    return from_report(rep, [](const std::string&) { return true; });
}

harness::ExperimentConfig config(const Settings& s, harness::ExperimentKind kind, const std::string& dir,
                                 ModelTag model = ModelTag::contestant)
{
    harness::ExperimentConfig c = harness::default_config(model);
    c.kind = kind;
    c.out_dir = (s.out / dir).string();
    c.threads = s.threads;
    c.write_logs = false;
    return c;
}

SimConfig default_run(std::int64_t n, std::uint64_t stream)
{
    SimConfig c;
    c.n = n;
    c.w0 = n / 10;
    c.y0 = n / 20;
    c.z0 = n / 20;
    c.stream = stream;
    c.laws = fixture::default_laws();
    c.keep_marks = false;
    return c;
}

Outcome conservation_and_determinism(const Settings& s)
{
    std::vector<std::size_t> idx(1000);
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    auto results = harness::parallel_map<int>(idx.size(), s.threads, [](std::size_t i) {
        Trajectory a = simulate(default_run(1000, i));
        Trajectory b = simulate(default_run(1000, i));
        int flags = 0;
        if (!replay_consistent(a))
            flags |= 1;
        for (const EventRecord& e : a.events)
            if (e.after.total() != 1000 || std::min({e.after.x, e.after.w, e.after.y, e.after.z}) < 0)
                flags |= 1;
        std::ostringstream la, lb;
        write_event_log(a, la);
        write_event_log(b, lb);
        if (la.str() != lb.str())
            flags |= 2;
        return flags;
    });
    auto broken = std::count_if(results.begin(), results.end(), [](int f) { return f & 1; });
    auto differ = std::count_if(results.begin(), results.end(), [](int f) { return f & 2; });
    return {broken == 0 && differ == 0, "1000 runs at n=1000: " + std::to_string(broken) +
                                             " conservation failures, " + std::to_string(differ) +
                                             " non-identical log pairs"};
}

Outcome kernel_identities(const Settings&)
{
    double worst = 0.0;
    for (const ModelLaws& L : fixture::law_families()) {
        for (int i = 0; i < 200; ++i) {
            double t = 10.0 * i / 199.0;
            worst = std::max(worst, std::abs(kernel_eval(Kernel::phi, L, t) + kernel_eval(Kernel::psi, L, t) -
                                             L.beta * L.f.cdf(t)));
            worst = std::max(worst, std::abs(kernel_eval(Kernel::phi_beta, L, t) +
                                             kernel_eval(Kernel::psi_beta, L, t) - (1 - L.beta) * L.f.cdf(t)));
            worst = std::max(worst, std::abs(kernel_eval(Kernel::phi0, L, t) + kernel_eval(Kernel::psi0, L, t) -
                                             L.beta * L.f0.cdf(t)));
            worst = std::max(worst, std::abs(kernel_eval(Kernel::phi0_beta, L, t) +
                                             kernel_eval(Kernel::psi0_beta, L, t) - (1 - L.beta) * L.f0.cdf(t)));
        }
    }
    ModelLaws L;
    L.beta = 0.7;
    L.f = DelayLaw::gamma(2, 2);
    L.g_cond = ConditionalDelayLaw::independent(DelayLaw::weibull(2.0, 1.5));
    boost::math::gamma_distribution<> fd(2.0, 0.5);
    boost::math::weibull_distribution<> gd(2.0, 1.5);
    auto f = [&](double u) { return boost::math::pdf(fd, u); };
    auto g = [&](double v) { return boost::math::pdf(gd, v); };
    double oracle_gap = 0.0;
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        double ref = 0.7 * oracle::window_mass(f, g, t, 15.0, 1e-4);
        oracle_gap = std::max(oracle_gap, std::abs(kernel_eval(Kernel::psi, L, t) - ref));
    }
    return {worst <= 1e-8 && oracle_gap <= 1e-6,
            "identity max error " + fmt("%.2e", worst) + ", Riemann oracle gap " + fmt("%.2e", oracle_gap)};
}

Outcome markov_reduction(const Settings&)
{
    ModelLaws L;
    L.lambda = RateFunction::constant(2.0);
    L.alpha = RateFunction::constant(0.5);
    L.beta = 0.7;
    L.f0 = DelayLaw::exponential(1.5);
    L.g0 = DelayLaw::exponential(0.8);
    L.h0 = DelayLaw::exponential(1.2);
    L.f = DelayLaw::exponential(2.0);
    L.g_cond = ConditionalDelayLaw::independent(DelayLaw::exponential(1.0));
    L.h_cond = ConditionalDelayLaw::independent(DelayLaw::exponential(0.6));
    oracle::MarkovRates m{2.0, 0.5, 0.7, 1.5, 0.8, 1.2, 2.0, 1.0, 0.6, 0.1, 0.05, 0.05};
    const double dt = 1e-3;
    auto sol = solve_contestant(L, {0.1, 0.05, 0.05}, Grid::over(10, dt));
    auto ref = oracle::markov_limit(m, dt, sol.grid.steps);
    double worst = 0.0;
    for (std::size_t k = 0; k < sol.grid.size(); ++k)
        worst = std::max({worst, std::abs(sol.x[k] - ref[k][0]), std::abs(sol.w[k] - ref[k][1]),
                          std::abs(sol.y[k] - ref[k][2]), std::abs(sol.z[k] - ref[k][3])});
    return {worst <= 1e-4, "sup-norm gap to the Markov ODE " + fmt("%.2e", worst)};
}

Outcome time_rescaling(const Settings& s)
{
    auto c = config(s, harness::ExperimentKind::verify_thinning, "thinning");
    c.n = {500};
    c.replications = 200;
    return all_rows(harness::run(c));
}

Outcome flln_convergence(const Settings& s)
{
    auto c = config(s, harness::ExperimentKind::verify_flln, "flln");
    c.n = {100, 1000, 10000};
    c.replications = 200;
    return all_rows(harness::run(c));
}

bool is_mean_row(const std::string& name)
{
    return name.rfind("mean ", 0) == 0;
}

const harness::StatReport& fclt_report(const Settings& s)
{
    static harness::StatReport rep = [&] {
        auto c = config(s, harness::ExperimentKind::verify_fclt, "fclt");
        c.n = {10000};
        c.replications = 2000;
        c.points.clear();
        for (double t : {2.0, 5.0, 8.0})
            for (double r : {2.0, 5.0, 8.0})
                c.points.emplace_back(t, r);
        return harness::run(c);
    }();
    return rep;
}

Outcome fclt_covariances(const Settings& s)
{
    return from_report(fclt_report(s), [](const std::string& n) { return !is_mean_row(n); });
}

Outcome martingale_means(const Settings& s)
{
    return from_report(fclt_report(s), is_mean_row);
}

Outcome linear_svie(const Settings&)
{
    ModelLaws L = fixture::default_laws();
    FllnInit init0{0.1, 0.05, 0.05};
    auto base = solve_contestant(L, init0, Grid::over(10, 0.02));
    auto tables = build_tables(L, base.grid);
    NoisePath zero;
    zero.grid = Grid::over(10, 1.0);
    for (auto& v : zero.values)
        v.assign(zero.grid.size(), 0.0);
    auto z = solve_linear_svie(zero, {0, 0, 0}, tables, base);
    bool zero_ok = true;
    for (std::size_t k = 0; k < z.x.size(); ++k)
        zero_ok = zero_ok && z.x[k] == 0.0 && z.w[k] == 0.0 && z.y[k] == 0.0 && z.z[k] == 0.0;

    CovarianceModel model(L, base);
    Rng rng = make_rng(17, 0);
    NoisePath noise = sample_limit_noise(model, Grid::over(10, 1.0), rng);
    NoisePath scaled = noise;
    for (auto& v : scaled.values)
        for (double& x : v)
            x *= 3.0;
    FllnInit fi{0.3, -0.2, 0.1};
    auto one = solve_linear_svie(noise, fi, tables, base);
    auto three = solve_linear_svie(scaled, {0.9, -0.6, 0.3}, tables, base);
    double lin = 0.0, closure = 0.0;
    for (std::size_t k = 0; k < one.x.size(); ++k) {
        lin = std::max({lin, std::abs(three.x[k] - 3 * one.x[k]), std::abs(three.w[k] - 3 * one.w[k]),
                        std::abs(three.y[k] - 3 * one.y[k]), std::abs(three.z[k] - 3 * one.z[k])});
        closure = std::max(closure, std::abs(one.x[k] + one.w[k] + one.y[k] + one.z[k]));
    }

    // Successive differences between solutions on halved grids, compared at the coarse nodes.
    std::vector<LimitFluctuation> sols;
    std::vector<double> steps{0.04, 0.02, 0.01};
    for (double dt : steps) {
        auto sol = solve_contestant(L, init0, Grid::over(10, dt));
        sols.push_back(solve_linear_svie(noise, fi, build_tables(L, sol.grid), sol));
    }
    auto gap = [&](std::size_t a) {
        const auto& c = sols[a];
        const auto& f = sols[a + 1];
        double g = 0.0;
        for (std::size_t k = 0; k < c.x.size(); ++k) {
            std::size_t j = 2 * k;
            g = std::max({g, std::abs(c.w[k] - f.w[j]), std::abs(c.y[k] - f.y[j]), std::abs(c.z[k] - f.z[j])});
        }
        return g;
    };
    double ratio = gap(0) / gap(1);
    bool pass = zero_ok && lin <= 1e-10 && closure <= 1e-8 && ratio >= 3.0 && ratio <= 5.0;
    return {pass, std::string("zero input ") + (zero_ok ? "exact" : "NOT exact") + ", linearity " +
                      fmt("%.2e", lin) + ", closure " + fmt("%.2e", closure) + ", halving ratio " +
                      fmt("%.3f", ratio)};
}

Outcome qb_consistency(const Settings& s)
{
    const std::vector<std::pair<double, double>> pts{{2, 2}, {2, 5}, {5, 5}, {5, 8}};
    auto ensemble = [&](std::uint64_t seed) {
        return harness::parallel_map<Trajectory>(1000, s.threads, [seed](std::size_t i) {
            SimConfig c = default_run(200, i);
            c.seed = seed;
            return simulate(c);
        });
    };
    auto a = ensemble(101);
    auto b = ensemble(202);
    bool pass = true;
    std::string detail;
    for (auto [t, r] : pts) {
        Estimate ea = estimate_QB(a, t, r, 1), eb = estimate_QB(b, t, r, 2);
        double se = std::sqrt(ea.se * ea.se + eb.se * eb.se);
        double diff = std::abs(ea.value - eb.value);
        bool ok = se > 0.0 ? diff <= 4.0 * se : diff == 0.0;
        pass = pass && ok;
        detail += (detail.empty() ? "" : "; ") + std::string("(") + fmt("%g", t) + "," + fmt("%g", r) +
                  ") " + fmt("%.4g", ea.value) + " vs " + fmt("%.4g", eb.value) + " se " + fmt("%.2g", se);
    }
    return {pass, detail};
}

Outcome lmr_suite(const Settings& s)
{
    auto sim = config(s, harness::ExperimentKind::simulate, "lmr_sim", ModelTag::lmr);
    sim.n = {1000};
    sim.replications = 500;
    auto simrep = harness::run(sim);

    auto runs = harness::parallel_map<int>(200, s.threads, [&](std::size_t i) {
        LmrConfig c;
        c.n = 1000;
        c.u0 = 50;
        c.y0 = 100;
        c.z0 = 50;
        c.stream = i;
        c.laws = sim.lmr_laws;
        LmrTrajectory tr = simulate_lmr(c);
        LmrCounts last = tr.initial;
        for (const LmrEvent& e : tr.events) {
            if (e.after.u < last.u || e.after.z < last.z || e.after.total() != c.n)
                return 1;
            last = e.after;
        }
        return 0;
    });
    auto nonmonotone = std::count(runs.begin(), runs.end(), 1);

    auto fl = config(s, harness::ExperimentKind::verify_flln, "lmr_flln", ModelTag::lmr);
    fl.n = {100, 1000, 10000};
    fl.replications = 200;
    auto flrep = harness::run(fl);

    auto fc = config(s, harness::ExperimentKind::verify_fclt, "lmr_fclt", ModelTag::lmr);
    fc.n = {5000};
    fc.replications = 1000;
    auto fcrep = harness::run(fc);

    Outcome a = all_rows(simrep), b = all_rows(flrep), c = all_rows(fcrep);
    return {a.pass && b.pass && c.pass && nonmonotone == 0,
            "simulate: " + a.detail + " | monotonicity failures " + std::to_string(nonmonotone) + " | flln: " +
                b.detail + " | fclt: " + c.detail};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rumorsim acceptance suite"};
    Settings s;
    std::string out = s.out.string();
    std::vector<int> only;
    s.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    app.add_option("--out", out, "directory for experiment outputs");
    app.add_option("--threads", s.threads, "worker threads");
    app.add_option("--only", only, "run only these criteria");
    CLI11_PARSE(app, argc, argv);
    s.out = out;

    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome(const Settings&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "conservation and determinism", conservation_and_determinism},
        {2, "kernel identities and brute-force oracle", kernel_identities},
        {3, "Markovian reduction", markov_reduction},
        {4, "time-rescaling of A and B epochs", time_rescaling},
        {5, "law of large numbers convergence", flln_convergence},
        {6, "noise covariances", fclt_covariances},
        {7, "martingale means", martingale_means},
        {8, "linear fluctuation solver", linear_svie},
        {9, "Q^B estimator self-consistency", qb_consistency},
        {10, "LMR suite", lmr_suite},
    };
    std::set<int> selected(only.begin(), only.end());
    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.count(c.id))
            continue;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(s);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
