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

#include "rumor/errors.hpp"
#include "rumor/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace rumor
{

std::string to_string(ModelTag tag)
{
    return tag == ModelTag::contestant ? "contestant" : "lmr";
}

const std::vector<double>& FllnSolution::component(Component c) const
{
    switch (c) {
    case Component::x:
        return x;
    case Component::w:
        return w;
    case Component::y:
        return y;
    case Component::z:
        return z;
    }
    throw_internal("unknown component");
}

double FllnSolution::at(Component c, double t) const
{
    if (!(t >= 0.0 && t <= grid.horizon() * (1.0 + 1e-12)))
        throw RangeError("flln solution queried outside [0, horizon]");
    const auto& v = component(c);
    double pos = t / grid.dt;
    auto k = static_cast<std::size_t>(std::floor(pos));
    if (k >= grid.steps)
        return v[grid.steps];
    double f = pos - static_cast<double>(k);
    return v[k] + f * (v[k + 1] - v[k]);
}

ContestantTables build_tables(const ModelLaws& laws, const Grid& grid)
{
    laws.validate();
    grid.validate();
    ContestantTables tb;
    tb.grid = grid;
    const double T = grid.horizon();
    const std::size_t cells = grid.steps;
    auto jumps_of = [&](const DelayLaw& d) {
        std::vector<double> j;
        if (auto a = d.point_mass(); a && a->at > 0.0 && a->at <= T)
            j.push_back(a->at);
        return j;
    };
    tb.f_c = product_weights([&](double u) { return laws.f.complement(u); }, grid.dt, cells, jumps_of(laws.f));
    tb.psi = product_weights([&](double u) { return kernel_eval(Kernel::psi, laws, u); }, grid.dt, cells,
                             kernel_jumps(Kernel::psi, laws, T));
    tb.psi_beta = product_weights([&](double u) { return kernel_eval(Kernel::psi_beta, laws, u); }, grid.dt, cells,
                                  kernel_jumps(Kernel::psi_beta, laws, T));
    tb.h_c = product_weights([&](double u) { return conversion_complement(laws, u); }, grid.dt, cells,
                             conversion_complement_jumps(laws, T));
    const std::size_t N = grid.size();
    tb.f0_c.resize(N);
    tb.psi0.resize(N);
    tb.psi0_beta.resize(N);
    tb.g0_c.resize(N);
    tb.h0_c.resize(N);
    tb.lambda.resize(N);
    tb.alpha.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        double t = grid.node(k);
        tb.f0_c[k] = laws.f0.complement(t);
        tb.psi0[k] = kernel_eval(Kernel::psi0, laws, t);
        tb.psi0_beta[k] = kernel_eval(Kernel::psi0_beta, laws, t);
        tb.g0_c[k] = laws.g0.complement(t);
        tb.h0_c[k] = laws.h0.complement(t);
        tb.lambda[k] = laws.lambda(t);
        tb.alpha[k] = laws.alpha(t);
    }
    return tb;
}

namespace
{

void check_init(const FllnInit& init)
{
    if (!(init.w0 >= 0.0 && init.y0 >= 0.0 && init.z0 >= 0.0) || init.w0 + init.y0 + init.z0 > 1.0)
        throw ConfigError("flln: initial proportions must be nonnegative with sum <= 1");
}

// Right-hand sides of the W, Y, Z equations at node k given the node values
// of h = lambda X Y and g = alpha Y Z up to k.
struct ContestantRhs {
    const ContestantTables& tb;
    FllnInit init;

    std::array<double, 3> history(std::span<const double> h, std::span<const double> g, std::size_t k,
                                  double alpha_prefix) const
    {
        return {init.w0 * tb.f0_c[k] + convolve_history(tb.f_c, h, k),
                init.w0 * tb.psi0[k] + init.y0 * tb.g0_c[k] + convolve_history(tb.psi, h, k) - alpha_prefix,
                init.w0 * tb.psi0_beta[k] + init.z0 * tb.h0_c[k] + convolve_history(tb.psi_beta, h, k) +
                    convolve_history(tb.h_c, g, k)};
    }

    std::array<double, 3> complete(const std::array<double, 3>& hist, double hk, double gk, double gprev,
                                   std::size_t k) const
    {
        if (k == 0)
            return hist;
        double half = 0.5 * tb.grid.dt;
        return {hist[0] + tb.f_c.newest() * hk, hist[1] + tb.psi.newest() * hk - half * (gprev + gk),
                hist[2] + tb.psi_beta.newest() * hk + tb.h_c.newest() * gk};
    }
};

} // namespace

FllnSolution solve_contestant(const ModelLaws& laws, const FllnInit& init, const Grid& grid, const PicardOptions& opts)
{
    return solve_contestant(build_tables(laws, grid), init, opts);
}

FllnSolution solve_contestant(const ContestantTables& tb, const FllnInit& init, const PicardOptions& opts)
{
    check_init(init);
    const std::size_t N = tb.grid.size();
    FllnSolution sol;
    sol.grid = tb.grid;
    sol.model = ModelTag::contestant;
    sol.x.assign(N, 0.0);
    sol.w.assign(N, 0.0);
    sol.y.assign(N, 0.0);
    sol.z.assign(N, 0.0);
    std::vector<double> h(N, 0.0), g(N, 0.0);
    ContestantRhs rhs{tb, init};

    sol.w[0] = init.w0;
    sol.y[0] = init.y0;
    sol.z[0] = init.z0;
    sol.x[0] = 1.0 - init.w0 - init.y0 - init.z0;
    h[0] = tb.lambda[0] * sol.x[0] * sol.y[0];
    g[0] = tb.alpha[0] * sol.y[0] * sol.z[0];
    double alpha_prefix = 0.0; // trapezoid of g over [0, t_{k-1}]
    const double half = 0.5 * tb.grid.dt;

    for (std::size_t k = 1; k < N; ++k) {
        if (k >= 2)
            alpha_prefix += half * (g[k - 2] + g[k - 1]);
        auto hist = rhs.history(h, g, k, alpha_prefix);
        double w = sol.w[k - 1], y = sol.y[k - 1], z = sol.z[k - 1];
        int it = 0;
        for (;; ++it) {
            double x = 1.0 - w - y - z;
            double hk = tb.lambda[k] * x * y;
            double gk = tb.alpha[k] * y * z;
            auto v = rhs.complete(hist, hk, gk, g[k - 1], k);
            double change = std::max({std::abs(v[0] - w), std::abs(v[1] - y), std::abs(v[2] - z)});
            w = v[0];
            y = v[1];
            z = v[2];
            if (change <= opts.tol)
                break;
            if (it + 1 >= opts.max_iter) {
                std::ostringstream os;
                os << "flln: fixed-point iteration did not converge at t = " << tb.grid.node(k) << " (last change "
                   << change << "); try a smaller dt";
                throw NumericalError(os.str());
            }
        }
        sol.w[k] = w;
        sol.y[k] = y;
        sol.z[k] = z;
        sol.x[k] = 1.0 - w - y - z;
        h[k] = tb.lambda[k] * sol.x[k] * y;
        g[k] = tb.alpha[k] * y * z;
    }
    return sol;
}

double residual(const FllnSolution& sol, const ModelLaws& laws)
{
    return residual(sol, build_tables(laws, sol.grid));
}

double residual(const FllnSolution& sol, const ContestantTables& tb)
{
    if (sol.model != ModelTag::contestant)
        throw DomainError("residual: solution is not a contestant-model solution");
    const std::size_t N = sol.grid.size();
    if (tb.grid.steps != sol.grid.steps)
        throw DomainError("residual: grid mismatch");
    std::vector<double> h(N), g(N);
    for (std::size_t k = 0; k < N; ++k) {
        double x = 1.0 - sol.w[k] - sol.y[k] - sol.z[k];
        h[k] = tb.lambda[k] * x * sol.y[k];
        g[k] = tb.alpha[k] * sol.y[k] * sol.z[k];
    }
    ContestantRhs rhs{tb, FllnInit{sol.w[0], sol.y[0], sol.z[0]}};
    double worst = std::abs(sol.x[0] + sol.w[0] + sol.y[0] + sol.z[0] - 1.0);
    double alpha_prefix = 0.0;
    const double half = 0.5 * sol.grid.dt;
    for (std::size_t k = 1; k < N; ++k) {
        if (k >= 2)
            alpha_prefix += half * (g[k - 2] + g[k - 1]);
        auto v = rhs.complete(rhs.history(h, g, k, alpha_prefix), h[k], g[k], g[k - 1], k);
        worst = std::max({worst, std::abs(v[0] - sol.w[k]), std::abs(v[1] - sol.y[k]), std::abs(v[2] - sol.z[k]),
                          std::abs(sol.x[k] + sol.w[k] + sol.y[k] + sol.z[k] - 1.0)});
    }
    return worst;
}

namespace
{

using LmrState = std::array<double, 3>; // U, Y, Z

LmrState lmr_field(const LmrLaws& laws, double t, const LmrState& s)
{
    double u = s[0], y = s[1], z = s[2];
    double x = 1.0 - u - y - z;
    double contact = laws.lambda(t) * x * y;
    double pair = laws.theta(t) * (2.0 - laws.beta) * y * y;
    double meet = laws.gamma(t) * (u + z) * y;
    return {(1.0 - laws.delta) * contact, laws.delta * contact - pair - meet, pair + meet};
}

LmrState rk4_step(const LmrLaws& laws, double t, double dt, const LmrState& s)
{
    auto axpy = [](const LmrState& a, double c, const LmrState& b) {
        return LmrState{a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2]};
    };
    LmrState k1 = lmr_field(laws, t, s);
    LmrState k2 = lmr_field(laws, t + 0.5 * dt, axpy(s, 0.5 * dt, k1));
    LmrState k3 = lmr_field(laws, t + 0.5 * dt, axpy(s, 0.5 * dt, k2));
    LmrState k4 = lmr_field(laws, t + dt, axpy(s, dt, k3));
    LmrState out;
    for (int i = 0; i < 3; ++i)
        out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

} // namespace

FllnSolution solve_lmr(const LmrLaws& laws, const FllnInit& init, const Grid& grid)
{
    laws.validate();
    grid.validate();
    check_init(init);
    const std::size_t N = grid.size();
    FllnSolution sol;
    sol.grid = grid;
    sol.model = ModelTag::lmr;
    sol.x.resize(N);
    sol.w.resize(N);
    sol.y.resize(N);
    sol.z.resize(N);
    LmrState s{init.w0, init.y0, init.z0};
    for (std::size_t k = 0; k < N; ++k) {
        if (k > 0)
            s = rk4_step(laws, grid.node(k - 1), grid.dt, s);
        double x = 1.0 - s[0] - s[1] - s[2];
        for (double v : {x, s[0], s[1], s[2]})
            if (!(v >= -1e-6 && v <= 1.0 + 1e-6)) {
                std::ostringstream os;
                os << "lmr flln: step to t = " << grid.node(k) << " left the unit interval";
                throw NumericalError(os.str());
            }
        sol.x[k] = x;
        sol.w[k] = s[0];
        sol.y[k] = s[1];
        sol.z[k] = s[2];
    }
    return sol;
}

double residual(const FllnSolution& sol, const LmrLaws& laws)
{
    if (sol.model != ModelTag::lmr)
        throw DomainError("residual: solution is not an LMR solution");
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < sol.grid.size(); ++k) {
        LmrState next = rk4_step(laws, sol.grid.node(k), sol.grid.dt, {sol.w[k], sol.y[k], sol.z[k]});
        worst = std::max({worst, std::abs(next[0] - sol.w[k + 1]), std::abs(next[1] - sol.y[k + 1]),
                          std::abs(next[2] - sol.z[k + 1])});
    }
    return worst;
}

void write_csv(const FllnSolution& sol, std::ostream& os)
{
    const char* second = sol.model == ModelTag::lmr ? "u" : "w";
    os << "#schema: t,x," << second << ",y,z (model " << to_string(sol.model) << ")\n";
    os << "t,x," << second << ",y,z\n";
    char buf[160];
    for (std::size_t k = 0; k < sol.grid.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", sol.grid.node(k), sol.x[k], sol.w[k],
                      sol.y[k], sol.z[k]);
        os << buf;
    }
}

} // namespace rumor
