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
#ifndef RUMOR_TESTS_ORACLES_HPP
#define RUMOR_TESTS_ORACLES_HPP

// Independent reference computations. Nothing here calls the library's
// quadrature or Volterra code.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle
{

/**
 * Double Riemann sum of f(u) g(v) 1(u <= t < u + v) over [0, t] x [0, vmax]
 * with square cells of side h (t a multiple of h); cells cut by the diagonal
 * get half weight. Inner sums over v are accumulated as suffix sums.
 */
inline double window_mass(const std::function<double(double)>& f, const std::function<double(double)>& g, double t,
                          double vmax, double h)
{
    auto nu = static_cast<long>(std::llround(t / h));
    auto nv = static_cast<long>(std::llround(vmax / h));
    std::vector<double> gv(static_cast<std::size_t>(nv));
    for (long j = 0; j < nv; ++j)
        gv[static_cast<std::size_t>(j)] = g((static_cast<double>(j) + 0.5) * h);
    std::vector<double> suffix(static_cast<std::size_t>(nv) + 1, 0.0);
    for (long j = nv - 1; j >= 0; --j)
        suffix[static_cast<std::size_t>(j)] = suffix[static_cast<std::size_t>(j) + 1] + gv[static_cast<std::size_t>(j)];
    double total = 0.0;
    for (long i = 0; i < nu; ++i) {
        // u-cell i spans [ih, (i+1)h]; the cut v = t - u crosses v-cell k = nu - 1 - i.
        long k = nu - 1 - i;
        double inner = suffix[static_cast<std::size_t>(k) + 1] + 0.5 * gv[static_cast<std::size_t>(k)];
        total += f((static_cast<double>(i) + 0.5) * h) * inner;
    }
    return total * h * h;
}

/// Classical RK4 with fixed step on y' = rhs(t, y).
template <std::size_t N>
std::vector<std::array<double, N>> rk4(const std::function<std::array<double, N>(double, const std::array<double, N>&)>& rhs,
                                       std::array<double, N> y0, double dt, std::size_t steps)
{
    auto axpy = [](const std::array<double, N>& a, double c, const std::array<double, N>& b) {
        std::array<double, N> out;
        for (std::size_t i = 0; i < N; ++i)
            out[i] = a[i] + c * b[i];
        return out;
    };
    std::vector<std::array<double, N>> path{y0};
    std::array<double, N> y = y0;
    for (std::size_t k = 0; k < steps; ++k) {
        double t = dt * static_cast<double>(k);
        auto k1 = rhs(t, y);
        auto k2 = rhs(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
        auto k3 = rhs(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
        auto k4 = rhs(t + dt, axpy(y, dt, k3));
        for (std::size_t i = 0; i < N; ++i)
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        path.push_back(y);
    }
    return path;
}

/// Exponential rates of every delay in the contestant model.
struct MarkovRates {
    double lambda, alpha, beta;
    double f0, g0, h0, f, g, h;
    double w0, y0, z0;
};

/**
 * With every delay exponential the contestant limit closes into an ODE in
 * P0, Pc (passives), S0, Sc (open spreader windows), C0, Cc (contestant
 * windows from passives), Q0, R0 (initial spreaders/contestants), K
 * (converted contestants) and B (cumulative conversions).
 * Returns rows (x, w, y, z) on the grid k*dt.
 */
inline std::vector<std::array<double, 4>> markov_limit(const MarkovRates& m, double dt, std::size_t steps)
{
    using S = std::array<double, 10>;
    auto split = [&](const S& s) {
        double w = s[0] + s[1];
        double y = s[2] + s[3] + s[6] - s[9];
        double z = s[4] + s[5] + s[7] + s[8];
        return std::array<double, 4>{1.0 - w - y - z, w, y, z};
    };
    std::function<S(double, const S&)> rhs = [&](double, const S& s) {
        auto [x, w, y, z] = split(s);
        double contact = m.lambda * x * y;
        double conv = m.alpha * y * z;
        return S{-m.f0 * s[0],
                 contact - m.f * s[1],
                 m.beta * m.f0 * s[0] - m.g * s[2],
                 m.beta * m.f * s[1] - m.g * s[3],
                 (1.0 - m.beta) * m.f0 * s[0] - m.h * s[4],
                 (1.0 - m.beta) * m.f * s[1] - m.h * s[5],
                 -m.g0 * s[6],
                 -m.h0 * s[7],
                 conv - m.h * s[8],
                 conv};
    };
    S init{m.w0, 0, 0, 0, 0, 0, m.y0, m.z0, 0, 0};
    std::vector<std::array<double, 4>> out;
    for (const S& s : rk4<10>(rhs, init, dt, steps))
        out.push_back(split(s));
    return out;
}

} // namespace oracle

#endif
