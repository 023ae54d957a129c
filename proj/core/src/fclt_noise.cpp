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
#include "rumor/fclt.hpp"
#include "rumor/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace rumor
{

namespace
{

constexpr std::array<const char*, noise_count> noise_names{"W0", "W1", "Y01", "Y02", "Y1",
                                                           "Y2", "Z01", "Z02", "Z1", "Z2"};

} // namespace

std::string to_string(Noise p)
{
    return noise_names[static_cast<std::size_t>(p)];
}

Noise noise_from_string(const std::string& name)
{
    for (std::size_t i = 0; i < noise_count; ++i)
        if (name == noise_names[i])
            return static_cast<Noise>(i);
    throw DomainError("unknown noise process '" + name + "'");
}

double NoisePath::at(Noise p, double t) const
{
    if (!(t >= 0.0 && t <= grid.horizon() * (1.0 + 1e-12)))
        throw RangeError("noise path queried outside [0, horizon]");
    const auto& v = (*this)[p];
    double pos = t / grid.dt;
    double k = std::round(pos);
    if (std::abs(pos - k) <= 1e-9 * std::max(1.0, pos))
        return v[std::min(static_cast<std::size_t>(k), grid.steps)];
    auto i = static_cast<std::size_t>(std::floor(pos));
    if (i >= grid.steps)
        return v[grid.steps];
    double f = pos - static_cast<double>(i);
    return v[i] + f * (v[i + 1] - v[i]);
}

NoiseExtractor::NoiseExtractor(const ModelLaws& laws, const Grid& grid, double table_step)
    : m_laws(laws), m_grid(grid)
{
    laws.validate();
    grid.validate();
    const double T = grid.horizon();
    std::vector<double> fj;
    if (auto a = laws.f.point_mass(); a && a->at > 0.0)
        fj.push_back(a->at);
    m_fc = Antiderivative([&](double u) { return laws.f.complement(u); }, T, table_step, fj);
    m_psi = Antiderivative([&](double u) { return kernel_eval(Kernel::psi, laws, u); }, T, table_step,
                           kernel_jumps(Kernel::psi, laws, T));
    m_psi_beta = Antiderivative([&](double u) { return kernel_eval(Kernel::psi_beta, laws, u); }, T, table_step,
                                kernel_jumps(Kernel::psi_beta, laws, T));
    m_hc = Antiderivative([&](double u) { return conversion_complement(laws, u); }, T, table_step,
                          conversion_complement_jumps(laws, T));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double t = grid.node(k);
        m_f0_c.push_back(laws.f0.complement(t));
        m_psi0.push_back(kernel_eval(Kernel::psi0, laws, t));
        m_psi0_beta.push_back(kernel_eval(Kernel::psi0_beta, laws, t));
        m_g0_c.push_back(laws.g0.complement(t));
        m_h0_c.push_back(laws.h0.complement(t));
    }
}

NoisePath NoiseExtractor::extract(const Trajectory& traj) const
{
    if (!traj.marks_retained)
        throw ConfigError("noise extraction needs a trajectory simulated with marks retained");
    if (m_grid.horizon() > traj.config.horizon * (1.0 + 1e-12))
        throw RangeError("noise grid extends beyond the trajectory horizon");
    const std::size_t N = m_grid.size();
    const double n = static_cast<double>(traj.config.n);
    const double root_n = std::sqrt(n);
    NoisePath out;
    out.grid = m_grid;
    for (auto& v : out.values)
        v.assign(N, 0.0);
    std::vector<double> t(N);
    for (std::size_t j = 0; j < N; ++j)
        t[j] = m_grid.node(j);

    // Initial-configuration noises.
    for (const InitialPassive& p : traj.initial_passive) {
        for (std::size_t j = 1; j < N; ++j) {
            out[Noise::W0][j] += (t[j] < p.eta) ? 1.0 : 0.0;
            bool window = p.eta <= t[j] && t[j] < p.eta + p.secondary;
            if (window && p.side == Side::spreader)
                out[Noise::Y01][j] += 1.0;
            if (window && p.side == Side::contestant)
                out[Noise::Z01][j] += 1.0;
        }
    }
    for (double theta : traj.initial_spreading)
        for (std::size_t j = 1; j < N; ++j)
            out[Noise::Y02][j] += (t[j] < theta) ? 1.0 : 0.0;
    for (double zeta : traj.initial_contesting)
        for (std::size_t j = 1; j < N; ++j)
            out[Noise::Z02][j] += (t[j] < zeta) ? 1.0 : 0.0;
    const double w0 = static_cast<double>(traj.initial.w);
    const double y0 = static_cast<double>(traj.initial.y);
    const double z0 = static_cast<double>(traj.initial.z);
    for (std::size_t j = 0; j < N; ++j) {
        out[Noise::W0][j] = j == 0 ? 0.0 : (out[Noise::W0][j] - w0 * m_f0_c[j]) / root_n;
        out[Noise::Y01][j] = j == 0 ? 0.0 : (out[Noise::Y01][j] - w0 * m_psi0[j]) / root_n;
        out[Noise::Z01][j] = j == 0 ? 0.0 : (out[Noise::Z01][j] - w0 * m_psi0_beta[j]) / root_n;
        out[Noise::Y02][j] = j == 0 ? 0.0 : (out[Noise::Y02][j] - y0 * m_g0_c[j]) / root_n;
        out[Noise::Z02][j] = j == 0 ? 0.0 : (out[Noise::Z02][j] - z0 * m_h0_c[j]) / root_n;
    }

    // Interaction noises: indicator sums minus exact compensators.
    std::vector<double> comp_w(N, 0.0), comp_y1(N, 0.0), comp_z1(N, 0.0), comp_b(N, 0.0), comp_z2(N, 0.0);
    auto first_node_after = [&](double s) {
        auto k = static_cast<std::size_t>(std::floor(s / m_grid.dt)) + 1;
        while (k > 1 && t[k - 1] > s)
            --k;
        while (k < N && t[k] <= s)
            ++k;
        return k;
    };
    auto add_piece = [&](double p, double q, double ca, double cb) {
        for (std::size_t j = first_node_after(p); j < N; ++j) {
            double qq = std::min(q, t[j]);
            if (ca > 0.0) {
                comp_w[j] += ca * m_fc.between(t[j] - qq, t[j] - p);
                comp_y1[j] += ca * m_psi.between(t[j] - qq, t[j] - p);
                comp_z1[j] += ca * m_psi_beta.between(t[j] - qq, t[j] - p);
            }
            if (cb > 0.0) {
                comp_b[j] += cb * (qq - p);
                comp_z2[j] += cb * m_hc.between(t[j] - qq, t[j] - p);
            }
        }
    };
    const double T = m_grid.horizon();
    auto add_segment = [&](double a, double b, const StateCounts& c) {
        b = std::min(b, T);
        double ka = static_cast<double>(c.x) * static_cast<double>(c.y) / n;
        double kb = static_cast<double>(c.y) * static_cast<double>(c.z) / n;
        if ((ka == 0.0 && kb == 0.0) || !(b > a))
            return;
        double p = a;
        while (p < b) {
            double q = std::min({b, m_laws.lambda.next_breakpoint(p), m_laws.alpha.next_breakpoint(p)});
            add_piece(p, q, ka * m_laws.lambda(p), kb * m_laws.alpha(p));
            p = q;
        }
    };

    StateCounts c = traj.initial;
    double from = 0.0;
    for (const EventRecord& e : traj.events) {
        if (e.time > T)
            break;
        add_segment(from, e.time, c);
        from = e.time;
        c = e.after;
        if (e.kind == EventKind::contact) {
            double on = e.time + e.eta;
            double off = on + e.secondary;
            for (std::size_t j = first_node_after(e.time) - 1; j < N; ++j) {
                if (t[j] < e.time)
                    continue;
                out[Noise::W1][j] += (t[j] < on) ? 1.0 : 0.0;
                bool window = on <= t[j] && t[j] < off;
                if (window && e.side == Side::spreader)
                    out[Noise::Y1][j] += 1.0;
                if (window && e.side == Side::contestant)
                    out[Noise::Z1][j] += 1.0;
            }
        } else if (e.kind == EventKind::conversion) {
            double off = e.time + e.secondary;
            for (std::size_t j = first_node_after(e.time) - 1; j < N; ++j) {
                if (t[j] < e.time)
                    continue;
                out[Noise::Y2][j] += 1.0;
                out[Noise::Z2][j] += (t[j] < off) ? 1.0 : 0.0;
            }
        }
    }
    add_segment(from, T, c);

    for (std::size_t j = 0; j < N; ++j) {
        out[Noise::W1][j] = (out[Noise::W1][j] - comp_w[j]) / root_n;
        out[Noise::Y1][j] = (out[Noise::Y1][j] - comp_y1[j]) / root_n;
        out[Noise::Z1][j] = (out[Noise::Z1][j] - comp_z1[j]) / root_n;
        out[Noise::Y2][j] = (out[Noise::Y2][j] - comp_b[j]) / root_n;
        out[Noise::Z2][j] = (out[Noise::Z2][j] - comp_z2[j]) / root_n;
    }
    return out;
}

NoisePath extract_noise(const Trajectory& traj, const ModelLaws& laws, const Grid& grid)
{
    return NoiseExtractor(laws, grid).extract(traj);
}

} // namespace rumor
