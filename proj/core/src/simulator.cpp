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
#include "rumor/simulator.hpp"

#include "interaction_clock.hpp"
#include "rumor/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>

namespace rumor
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

struct Scheduled {
    double time;
    std::uint64_t seq;
    EventKind kind;
    Side side;
    std::int64_t id;
    double secondary;
};

struct Later {
    bool operator()(const Scheduled& a, const Scheduled& b) const
    {
        if (a.time != b.time)
            return a.time > b.time;
        return a.seq > b.seq;
    }
};

class Engine
{
public:
    explicit Engine(const SimConfig& cfg) : m_cfg(cfg), m_laws(cfg.laws), m_rng(make_rng(cfg.seed, cfg.stream))
    {
    }

    Trajectory run();

private:
    void schedule(double time, EventKind kind, Side side, std::int64_t id, double secondary)
    {
        if (time <= m_cfg.horizon)
            m_queue.push(Scheduled{time, m_seq++, kind, side, id, secondary});
    }
    double uniform()
    {
        return std::uniform_real_distribution<double>(0.0, 1.0)(m_rng);
    }
    double unit_exponential()
    {
        return std::exponential_distribution<double>(1.0)(m_rng);
    }
    void record(EventRecord ev)
    {
        if (!m_traj.events.empty() && ev.time < m_traj.events.back().time)
            throw_internal("simulator: event times out of order");
        if (m_c.total() != m_cfg.n || m_c.x < 0 || m_c.w < 0 || m_c.y < 0 || m_c.z < 0)
            throw_internal("simulator: conservation violated");
        if (!m_cfg.keep_marks) {
            ev.eta = 0.0;
            ev.secondary = 0.0;
        }
        ev.after = m_c;
        m_traj.events.push_back(ev);
    }
    void contact(double t);
    void conversion(double t);
    void scheduled(const Scheduled& s);

    const SimConfig& m_cfg;
    const ModelLaws& m_laws;
    Rng m_rng;
    Trajectory m_traj;
    StateCounts m_c;
    std::priority_queue<Scheduled, std::vector<Scheduled>, Later> m_queue;
    std::uint64_t m_seq = 0;
    std::int64_t m_next_id = 0;
    std::int64_t m_a_count = 0;
    std::int64_t m_b_count = 0;
};

void Engine::contact(double t)
{
    bool spreader = uniform() <= m_laws.beta;
    auto [eta, sec] = sample_pair(m_laws.f, spreader ? m_laws.g_cond : m_laws.h_cond, m_rng);
    --m_c.x;
    ++m_c.w;
    Side side = spreader ? Side::spreader : Side::contestant;
    std::int64_t id = m_next_id++;
    schedule(t + eta, EventKind::activation, side, id, sec);
    EventRecord ev;
    ev.time = t;
    ev.kind = EventKind::contact;
    ev.side = side;
    ev.index = ++m_a_count;
    ev.eta = eta;
    ev.secondary = sec;
    record(ev);
}

void Engine::conversion(double t)
{
    double x = m_laws.f.sample(m_rng);
    double zeta = m_laws.h_cond.slice(x).sample(m_rng);
    --m_c.y;
    ++m_c.z;
    schedule(t + zeta, EventKind::contestant_stop, Side::contestant, m_next_id++, 0.0);
    EventRecord ev;
    ev.time = t;
    ev.kind = EventKind::conversion;
    ev.side = Side::contestant;
    ev.index = ++m_b_count;
    ev.eta = x;
    ev.secondary = zeta;
    record(ev);
}

void Engine::scheduled(const Scheduled& s)
{
    EventRecord ev;
    ev.time = s.time;
    ev.kind = s.kind;
    ev.side = s.side;
    ev.index = s.id;
    switch (s.kind) {
    case EventKind::activation:
        --m_c.w;
        if (s.side == Side::spreader) {
            ++m_c.y;
            schedule(s.time + s.secondary, EventKind::spreader_stop, s.side, s.id, 0.0);
        } else {
            ++m_c.z;
            schedule(s.time + s.secondary, EventKind::contestant_stop, s.side, s.id, 0.0);
        }
        ev.secondary = s.secondary;
        break;
    case EventKind::spreader_stop:
        if (m_c.y > 0) {
            --m_c.y;
            ++m_c.x;
        } else {
            ev.degenerate = true;
            ++m_traj.degenerate_events;
        }
        break;
    case EventKind::contestant_stop:
        if (m_c.z <= 0)
            throw_internal("simulator: contestant window closed with no contestant");
        --m_c.z;
        ++m_c.x;
        break;
    default:
        throw_internal("simulator: interaction kind in the schedule");
    }
    record(ev);
}

Trajectory Engine::run()
{
    const double T = m_cfg.horizon;
    const double n = static_cast<double>(m_cfg.n);
    m_traj.config = m_cfg;
    m_traj.marks_retained = m_cfg.keep_marks;
    m_c = StateCounts{m_cfg.n - m_cfg.w0 - m_cfg.y0 - m_cfg.z0, m_cfg.w0, m_cfg.y0, m_cfg.z0};
    m_traj.initial = m_c;

    for (std::int64_t i = 0; i < m_cfg.w0; ++i) {
        double eta = m_laws.f0.sample(m_rng);
        bool spreader = uniform() <= m_laws.beta;
        double sec = (spreader ? m_laws.g_cond : m_laws.h_cond).slice(eta).sample(m_rng);
        Side side = spreader ? Side::spreader : Side::contestant;
        if (m_cfg.keep_marks)
            m_traj.initial_passive.push_back(InitialPassive{eta, side, sec});
        schedule(eta, EventKind::activation, side, m_next_id++, sec);
    }
    for (std::int64_t i = 0; i < m_cfg.y0; ++i) {
        double theta = m_laws.g0.sample(m_rng);
        if (m_cfg.keep_marks)
            m_traj.initial_spreading.push_back(theta);
        schedule(theta, EventKind::spreader_stop, Side::spreader, m_next_id++, 0.0);
    }
    for (std::int64_t i = 0; i < m_cfg.z0; ++i) {
        double zeta = m_laws.h0.sample(m_rng);
        if (m_cfg.keep_marks)
            m_traj.initial_contesting.push_back(zeta);
        schedule(zeta, EventKind::contestant_stop, Side::contestant, m_next_id++, 0.0);
    }

    const std::array<const RateFunction*, 2> rates{&m_laws.lambda, &m_laws.alpha};
    const double cap = std::max(m_laws.lambda.bound(), m_laws.alpha.bound()) * n / 4.0;
    double t = 0.0;
    double mass = unit_exponential();
    for (;;) {
        double t_sched = m_queue.empty() ? inf : m_queue.top().time;
        double limit = std::min(t_sched, T);
        double ca = static_cast<double>(m_c.x) * static_cast<double>(m_c.y) / n;
        double cb = static_cast<double>(m_c.y) * static_cast<double>(m_c.z) / n;
        double ti = detail::consume_intensity<2>(rates, {ca, cb}, t, limit, mass);
        if (ti < inf) {
            double ia = ca * m_laws.lambda(ti);
            double ib = cb * m_laws.alpha(ti);
            if (ia > cap || ib > cap)
                throw_internal("simulator: intensity above the population bound");
            if (uniform() * (ia + ib) < ia)
                contact(ti);
            else
                conversion(ti);
            mass = unit_exponential();
            t = ti;
            continue;
        }
        if (t_sched > T)
            break;
        Scheduled s = m_queue.top();
        m_queue.pop();
        t = s.time;
        scheduled(s);
    }
    m_traj.final_counts = m_c;
    return std::move(m_traj);
}

} // namespace

std::string to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::contact:
        return "AContact";
    case EventKind::conversion:
        return "BConversion";
    case EventKind::activation:
        return "PassiveActivates";
    case EventKind::spreader_stop:
        return "SpreaderForgets";
    case EventKind::contestant_stop:
        return "ContestantForgets";
    }
    throw_internal("unknown event kind");
}

void SimConfig::validate() const
{
    laws.validate();
    if (n < 1)
        throw ConfigError("simulation: n must be positive");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw ConfigError("simulation: horizon must be positive and finite");
    if (w0 < 0 || y0 < 0 || z0 < 0 || w0 + y0 + z0 > n)
        throw ConfigError("simulation: initial counts must be nonnegative with w0 + y0 + z0 <= n");
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

Trajectory simulate(const SimConfig& config)
{
    config.validate();
    return Engine(config).run();
}

namespace
{

void check_range(const Trajectory& traj, double t)
{
    if (!(t >= 0.0 && t <= traj.config.horizon))
        throw RangeError("time outside [0, horizon]");
}

std::size_t events_through(const Trajectory& traj, double t)
{
    auto it = std::upper_bound(traj.events.begin(), traj.events.end(), t,
                               [](double v, const EventRecord& e) { return v < e.time; });
    return static_cast<std::size_t>(it - traj.events.begin());
}

bool is_process(const EventRecord& e, Process p)
{
    return e.kind == (p == Process::A ? EventKind::contact : EventKind::conversion);
}

double factor(const StateCounts& c, Process p, double n)
{
    double y = static_cast<double>(c.y);
    return p == Process::A ? static_cast<double>(c.x) * y / n : y * static_cast<double>(c.z) / n;
}

} // namespace

StateCounts counts_at(const Trajectory& traj, double t)
{
    check_range(traj, t);
    std::size_t k = events_through(traj, t);
    return k == 0 ? traj.initial : traj.events[k - 1].after;
}

std::int64_t count_at(const Trajectory& traj, Process p, double t)
{
    check_range(traj, t);
    for (std::size_t k = events_through(traj, t); k > 0; --k)
        if (is_process(traj.events[k - 1], p))
            return traj.events[k - 1].index;
    return 0;
}

double compensator(const Trajectory& traj, Process p, double t)
{
    check_range(traj, t);
    const RateFunction& rate = p == Process::A ? traj.config.laws.lambda : traj.config.laws.alpha;
    const double n = static_cast<double>(traj.config.n);
    double total = 0.0;
    double from = 0.0;
    StateCounts c = traj.initial;
    for (const EventRecord& e : traj.events) {
        if (e.time > t)
            break;
        total += factor(c, p, n) * rate.integral(from, e.time);
        from = e.time;
        c = e.after;
    }
    total += factor(c, p, n) * rate.integral(from, t);
    return total;
}

std::vector<double> time_rescaled_interarrivals(const Trajectory& traj, Process p)
{
    const RateFunction& rate = p == Process::A ? traj.config.laws.lambda : traj.config.laws.alpha;
    const double n = static_cast<double>(traj.config.n);
    std::vector<double> out;
    double total = 0.0;
    double from = 0.0;
    double last = -1.0;
    StateCounts c = traj.initial;
    for (const EventRecord& e : traj.events) {
        total += factor(c, p, n) * rate.integral(from, e.time);
        from = e.time;
        c = e.after;
        if (is_process(e, p)) {
            if (last >= 0.0)
                out.push_back(total - last);
            last = total;
        }
    }
    return out;
}

RescaledRun time_rescaled_run(const Trajectory& traj, Process p)
{
    const RateFunction& rate = p == Process::A ? traj.config.laws.lambda : traj.config.laws.alpha;
    const double n = static_cast<double>(traj.config.n);
    RescaledRun out;
    double from = 0.0;
    StateCounts c = traj.initial;
    for (const EventRecord& e : traj.events) {
        out.total += factor(c, p, n) * rate.integral(from, e.time);
        from = e.time;
        c = e.after;
        if (is_process(e, p))
            out.epochs.push_back(out.total);
    }
    out.total += factor(c, p, n) * rate.integral(from, traj.config.horizon);
    return out;
}

bool replay_consistent(const Trajectory& traj)
{
    StateCounts c = traj.initial;
    const std::int64_t n = traj.config.n;
    if (c.total() != n)
        return false;
    for (const EventRecord& e : traj.events) {
        switch (e.kind) {
        case EventKind::contact:
            --c.x, ++c.w;
            break;
        case EventKind::conversion:
            --c.y, ++c.z;
            break;
        case EventKind::activation:
            --c.w;
            ++(e.side == Side::spreader ? c.y : c.z);
            break;
        case EventKind::spreader_stop:
            if (!e.degenerate)
                --c.y, ++c.x;
            break;
        case EventKind::contestant_stop:
            --c.z, ++c.x;
            break;
        }
        if (!(c == e.after) || c.total() != n || c.x < 0 || c.w < 0 || c.y < 0 || c.z < 0)
            return false;
    }
    return c == traj.final_counts;
}

std::string shortest_repr(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_event_log(const Trajectory& traj, std::ostream& os)
{
    for (const EventRecord& e : traj.events) {
        os << "{\"t\":" << shortest_repr(e.time) << ",\"kind\":\"" << to_string(e.kind) << "\",\"i\":" << e.index
           << ",\"x\":" << e.after.x << ",\"w\":" << e.after.w << ",\"y\":" << e.after.y << ",\"z\":" << e.after.z
           << "}\n";
    }
}

} // namespace rumor
