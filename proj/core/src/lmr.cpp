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
#include "rumor/lmr.hpp"

#include "rumor/errors.hpp"
#include "interaction_clock.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <ostream>
#include <random>

namespace rumor
{

std::string to_string(LmrProcess p)
{
    switch (p) {
    case LmrProcess::A:
        return "AContact";
    case LmrProcess::B:
        return "BSpreaders";
    case LmrProcess::C:
        return "CStifler";
    }
    throw_internal("unknown process");
}

void LmrConfig::validate() const
{
    laws.validate();
    if (n < 2)
        throw ConfigError("lmr: n must be at least 2");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw ConfigError("lmr: horizon must be positive and finite");
    if (u0 < 0 || y0 < 0 || z0 < 0 || u0 + y0 + z0 > n)
        throw ConfigError("lmr: initial counts must be nonnegative with u0 + y0 + z0 <= n");
}

namespace
{

std::array<double, 3> factors(const LmrCounts& c, double n)
{
    double y = static_cast<double>(c.y);
    return {static_cast<double>(c.x) * y / n, std::max(0.0, (y - 1.0) * y / n),
            static_cast<double>(c.u + c.z) * y / n};
}

const RateFunction& rate_of(const LmrLaws& laws, LmrProcess p)
{
    switch (p) {
    case LmrProcess::A:
        return laws.lambda;
    case LmrProcess::B:
        return laws.theta;
    case LmrProcess::C:
        return laws.gamma;
    }
    throw_internal("unknown process");
}

void check_range(const LmrTrajectory& traj, double t)
{
    if (!(t >= 0.0 && t <= traj.config.horizon))
        throw RangeError("time outside [0, horizon]");
}

std::size_t events_through(const LmrTrajectory& traj, double t)
{
    auto it = std::upper_bound(traj.events.begin(), traj.events.end(), t,
                               [](double v, const LmrEvent& e) { return v < e.time; });
    return static_cast<std::size_t>(it - traj.events.begin());
}

} // namespace

LmrTrajectory simulate_lmr(const LmrConfig& config)
{
    config.validate();
    const LmrLaws& L = config.laws;
    const double n = static_cast<double>(config.n);
    Rng rng = make_rng(config.seed, config.stream);
    std::exponential_distribution<double> unit_exp(1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    LmrTrajectory traj;
    traj.config = config;
    traj.initial = LmrCounts{config.n - config.u0 - config.y0 - config.z0, config.u0, config.y0, config.z0};
    LmrCounts c = traj.initial;
    std::array<std::int64_t, 3> epochs{0, 0, 0};
    const std::array<const RateFunction*, 3> rates{&L.lambda, &L.theta, &L.gamma};
    double t = 0.0;
    for (;;) {
        auto coef = factors(c, n);
        double mass = unit_exp(rng);
        double next = detail::consume_intensity<3>(rates, coef, t, config.horizon, mass);
        if (!std::isfinite(next))
            break;
        t = next;
        std::array<double, 3> w{coef[0] * L.lambda(t), coef[1] * L.theta(t), coef[2] * L.gamma(t)};
        double pick = unif(rng) * (w[0] + w[1] + w[2]);
        LmrProcess kind = pick < w[0] ? LmrProcess::A : (pick < w[0] + w[1] ? LmrProcess::B : LmrProcess::C);
        if (kind == LmrProcess::C && w[2] <= 0.0)
            kind = w[1] > 0.0 ? LmrProcess::B : LmrProcess::A;
        LmrEvent ev;
        ev.time = t;
        ev.kind = kind;
        ev.index = ++epochs[static_cast<std::size_t>(kind)];
        switch (kind) {
        case LmrProcess::A:
            ev.mark = unif(rng) >= L.delta;
            --c.x;
            ++(ev.mark ? c.u : c.y);
            break;
        case LmrProcess::B:
            ev.mark = unif(rng) >= L.beta;
            --c.y;
            ++c.z;
            if (ev.mark) {
                if (c.y >= 1) {
                    --c.y;
                    ++c.z;
                } else {
                    ev.degenerate = true;
                    ++traj.degenerate_events;
                }
            }
            break;
        case LmrProcess::C:
            --c.y;
            ++c.z;
            break;
        }
        if (c.x < 0 || c.y < 0 || c.total() != config.n)
            throw_internal("lmr: counts left the simplex");
        ev.after = c;
        traj.events.push_back(ev);
    }
    traj.final_counts = c;
    return traj;
}

LmrCounts lmr_counts_at(const LmrTrajectory& traj, double t)
{
    check_range(traj, t);
    std::size_t k = events_through(traj, t);
    return k == 0 ? traj.initial : traj.events[k - 1].after;
}

std::int64_t lmr_count_at(const LmrTrajectory& traj, LmrProcess p, double t)
{
    check_range(traj, t);
    for (std::size_t k = events_through(traj, t); k > 0; --k)
        if (traj.events[k - 1].kind == p)
            return traj.events[k - 1].index;
    return 0;
}

double lmr_compensator(const LmrTrajectory& traj, LmrProcess p, double t)
{
    check_range(traj, t);
    const RateFunction& rate = rate_of(traj.config.laws, p);
    const double n = static_cast<double>(traj.config.n);
    const auto k = static_cast<std::size_t>(p);
    double total = 0.0, from = 0.0;
    LmrCounts c = traj.initial;
    for (const LmrEvent& e : traj.events) {
        if (e.time > t)
            break;
        total += factors(c, n)[k] * rate.integral(from, e.time);
        from = e.time;
        c = e.after;
    }
    return total + factors(c, n)[k] * rate.integral(from, t);
}

std::vector<double> lmr_rescaled_interarrivals(const LmrTrajectory& traj, LmrProcess p)
{
    const RateFunction& rate = rate_of(traj.config.laws, p);
    const double n = static_cast<double>(traj.config.n);
    const auto k = static_cast<std::size_t>(p);
    std::vector<double> out;
    double total = 0.0, from = 0.0, last = -1.0;
    LmrCounts c = traj.initial;
    for (const LmrEvent& e : traj.events) {
        total += factors(c, n)[k] * rate.integral(from, e.time);
        from = e.time;
        c = e.after;
        if (e.kind == p) {
            if (last >= 0.0)
                out.push_back(total - last);
            last = total;
        }
    }
    return out;
}

RescaledRun lmr_rescaled_run(const LmrTrajectory& traj, LmrProcess p)
{
    const RateFunction& rate = rate_of(traj.config.laws, p);
    const double n = static_cast<double>(traj.config.n);
    const auto k = static_cast<std::size_t>(p);
    RescaledRun out;
    double from = 0.0;
    LmrCounts c = traj.initial;
    for (const LmrEvent& e : traj.events) {
        out.total += factors(c, n)[k] * rate.integral(from, e.time);
        from = e.time;
        c = e.after;
        if (e.kind == p)
            out.epochs.push_back(out.total);
    }
    out.total += factors(c, n)[k] * rate.integral(from, traj.config.horizon);
    return out;
}

bool lmr_replay_consistent(const LmrTrajectory& traj)
{
    LmrCounts c = traj.initial;
    double last = 0.0;
    std::array<std::int64_t, 3> epochs{0, 0, 0};
    for (const LmrEvent& e : traj.events) {
        if (e.time < last || e.time > traj.config.horizon)
            return false;
        last = e.time;
        if (e.index != ++epochs[static_cast<std::size_t>(e.kind)])
            return false;
        switch (e.kind) {
        case LmrProcess::A:
            --c.x;
            ++(e.mark ? c.u : c.y);
            break;
        case LmrProcess::B: {
            std::int64_t moved = (e.mark && !e.degenerate) ? 2 : 1;
            c.y -= moved;
            c.z += moved;
            break;
        }
        case LmrProcess::C:
            --c.y;
            ++c.z;
            break;
        }
        if (!(c == e.after) || c.x < 0 || c.y < 0 || c.total() != traj.config.n)
            return false;
    }
    return c == traj.final_counts;
}

void write_event_log(const LmrTrajectory& traj, std::ostream& os)
{
    for (const LmrEvent& e : traj.events) {
        os << "{\"t\":" << shortest_repr(e.time) << ",\"kind\":\"" << to_string(e.kind) << "\",\"i\":" << e.index
           << ",\"x\":" << e.after.x << ",\"u\":" << e.after.u << ",\"y\":" << e.after.y << ",\"z\":" << e.after.z
           << "}\n";
    }
}

std::string to_string(LmrNoise p)
{
    static const char* names[] = {"U1", "Y1", "Y2", "Y3", "Z1", "Z2"};
    return names[static_cast<std::size_t>(p)];
}

double LmrNoisePath::at(LmrNoise p, double t) const
{
    if (!(t >= 0.0 && t <= grid.horizon() * (1.0 + 1e-12)))
        throw RangeError("noise path queried outside [0, horizon]");
    const auto& v = values[static_cast<std::size_t>(p)];
    double pos = t / grid.dt;
    auto k = static_cast<std::size_t>(std::floor(pos));
    if (k >= grid.steps)
        return v[grid.steps];
    double f = pos - static_cast<double>(k);
    return v[k] + f * (v[k + 1] - v[k]);
}

LmrNoisePath extract_lmr_noise(const LmrTrajectory& traj, const LmrLaws& laws, const Grid& grid)
{
    grid.validate();
    if (grid.horizon() > traj.config.horizon * (1.0 + 1e-12))
        throw RangeError("noise grid extends past the trajectory horizon");
    const double n = static_cast<double>(traj.config.n);
    const double root = std::sqrt(n);
    LmrNoisePath out;
    out.grid = grid;
    for (auto& v : out.values)
        v.assign(grid.size(), 0.0);
    std::size_t e = 0;
    double from = 0.0, comp_b = 0.0, comp_c = 0.0, mark_u = 0.0, mark_z = 0.0;
    std::int64_t count_b = 0, count_c = 0;
    LmrCounts c = traj.initial;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double tj = std::min(grid.node(j), traj.config.horizon);
        while (e < traj.events.size() && traj.events[e].time <= tj) {
            const LmrEvent& ev = traj.events[e++];
            auto f = factors(c, n);
            comp_b += f[1] * laws.theta.integral(from, ev.time);
            comp_c += f[2] * laws.gamma.integral(from, ev.time);
            from = ev.time;
            c = ev.after;
            switch (ev.kind) {
            case LmrProcess::A:
                mark_u += (ev.mark ? 1.0 : 0.0) - (1.0 - laws.delta);
                break;
            case LmrProcess::B:
                mark_z += (ev.mark ? 1.0 : 0.0) - (1.0 - laws.beta);
                ++count_b;
                break;
            case LmrProcess::C:
                ++count_c;
                break;
            }
        }
        auto f = factors(c, n);
        double lb = comp_b + f[1] * laws.theta.integral(from, tj);
        double lc = comp_c + f[2] * laws.gamma.integral(from, tj);
        out.values[0][j] = mark_u / root;
        out.values[1][j] = -mark_u / root;
        out.values[2][j] = -mark_z / root;
        out.values[3][j] = (static_cast<double>(count_b) - lb) / root;
        out.values[4][j] = mark_z / root;
        out.values[5][j] = (static_cast<double>(count_c) - lc) / root;
    }
    return out;
}

std::string to_string(const LmrPair& pair)
{
    return to_string(pair.first) + to_string(pair.second);
}

LmrPair lmr_pair_from_string(const std::string& name)
{
    for (std::size_t i = 0; i < lmr_noise_count; ++i)
        for (std::size_t j = 0; j < lmr_noise_count; ++j)
            if (name == to_string(static_cast<LmrNoise>(i)) + to_string(static_cast<LmrNoise>(j)))
                return LmrPair{static_cast<LmrNoise>(i), static_cast<LmrNoise>(j)};
    throw DomainError("unknown LMR noise pair '" + name + "'");
}

std::vector<LmrPair> lmr_table_pairs()
{
    using N = LmrNoise;
    return {{N::U1, N::U1}, {N::Y1, N::Y1}, {N::U1, N::Y1}, {N::Z1, N::Z1}, {N::Y2, N::Z1}, {N::Y2, N::Y2}};
}

namespace
{

// int_0^upto rate(s) g(s) ds over the solution grid cells and rate breakpoints.
double flux(const FllnSolution& flln, const RateFunction& rate, double upto, const std::function<double(double)>& g)
{
    if (!(upto > 0.0))
        return 0.0;
    std::vector<double> cuts{0.0, upto};
    for (std::size_t k = 1; k < flln.grid.size() && flln.grid.node(k) < upto; ++k)
        cuts.push_back(flln.grid.node(k));
    for (double b = rate.next_breakpoint(0.0); b < upto; b = rate.next_breakpoint(b))
        cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    using GL = boost::math::quadrature::gauss<double, 5>;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i])
            total += GL::integrate([&](double s) { return rate(s) * g(s); }, cuts[i], cuts[i + 1]);
    return total;
}

} // namespace

double lmr_cov_table(LmrPair pair, double t, double r, const FllnSolution& flln, const LmrLaws& laws)
{
    if (flln.model != ModelTag::lmr)
        throw DomainError("lmr covariance needs an LMR solution");
    const double T = flln.grid.horizon() * (1.0 + 1e-12);
    if (!(t >= 0.0 && r >= 0.0 && t <= T && r <= T))
        throw RangeError("covariance queried outside [0, horizon]");
    using N = LmrNoise;
    auto same = [&](N a, N b) {
        return (pair.first == a && pair.second == b) || (pair.first == b && pair.second == a);
    };
    if (same(N::Y3, N::Y3) || same(N::Z2, N::Z2))
        throw DomainError("the " + to_string(pair) + " row is estimated from ensembles");
    const double a = std::min(t, r);
    auto contact = [&] {
        return laws.delta * (1.0 - laws.delta) *
               flux(flln, laws.lambda, a, [&](double s) { return flln.at(Component::x, s) * flln.at(Component::y, s); });
    };
    auto pairs = [&] {
        return laws.beta * (1.0 - laws.beta) * flux(flln, laws.theta, a, [&](double s) {
                   double y = flln.at(Component::y, s);
                   return y * y;
               });
    };
    if (same(N::U1, N::U1) || same(N::Y1, N::Y1))
        return contact();
    if (same(N::U1, N::Y1))
        return -contact();
    if (same(N::Z1, N::Z1) || same(N::Y2, N::Y2))
        return pairs();
    if (same(N::Y2, N::Z1))
        return -pairs();
    return 0.0;
}

namespace
{

template <class Estimator>
Estimate lmr_epochs(std::span<const LmrTrajectory> trajs, LmrProcess p, double t, double r, std::uint64_t seed,
                    Estimator est)
{
    if (trajs.empty())
        throw DomainError("epoch estimator: empty ensemble");
    const std::int64_t n = trajs.front().config.n;
    std::vector<std::int64_t> lo, hi;
    for (const LmrTrajectory& tr : trajs) {
        if (tr.config.n != n)
            throw DomainError("epoch estimator: trajectories differ in n");
        lo.push_back(lmr_count_at(tr, p, std::min(t, r)));
        hi.push_back(lmr_count_at(tr, p, std::max(t, r)));
    }
    return est(lo, hi, n, seed, 200);
}

} // namespace

Estimate estimate_lmr_QB(std::span<const LmrTrajectory> trajs, double t, double r, std::uint64_t seed)
{
    return lmr_epochs(trajs, LmrProcess::B, t, r, seed, estimate_epoch_overlap);
}

Estimate estimate_QC(std::span<const LmrTrajectory> trajs, double t, double r, std::uint64_t seed)
{
    return lmr_epochs(trajs, LmrProcess::C, t, r, seed, estimate_epoch_gap);
}

Estimate lmr_empirical_cov(std::span<const LmrNoisePath> paths, LmrPair pair, double t, double r)
{
    if (paths.size() < 30)
        throw InsufficientDataError("empirical covariance needs at least 30 paths");
    std::vector<double> a, b;
    for (const LmrNoisePath& p : paths) {
        a.push_back(p.at(pair.first, t));
        b.push_back(p.at(pair.second, r));
    }
    return sample_cov(a, b);
}

} // namespace rumor
