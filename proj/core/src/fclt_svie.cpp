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
#include "rumor/convolution.hpp"
#include "rumor/errors.hpp"
#include "rumor/fclt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace rumor
{

namespace
{

// Noise sums entering the W, Y, Z equations at each node.
std::array<std::vector<double>, 3> forcing(const NoisePath& noise, const FllnInit& init, const ContestantTables& tb)
{
    const std::size_t N = tb.grid.size();
    if (noise.grid.horizon() < tb.grid.horizon() * (1.0 - 1e-12))
        throw DomainError("svie: noise path does not cover the solution horizon");
    std::array<std::vector<double>, 3> out;
    for (auto& v : out)
        v.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
        double t = tb.grid.node(k);
        auto n = [&](Noise p) { return noise.at(p, t); };
        out[0][k] = init.w0 * tb.f0_c[k] + n(Noise::W0) + n(Noise::W1);
        out[1][k] = init.w0 * tb.psi0[k] + init.y0 * tb.g0_c[k] + n(Noise::Y01) + n(Noise::Y02) + n(Noise::Y1) -
                    n(Noise::Y2);
        out[2][k] = init.w0 * tb.psi0_beta[k] + init.z0 * tb.h0_c[k] + n(Noise::Z01) + n(Noise::Z02) +
                    n(Noise::Z1) + n(Noise::Z2);
    }
    return out;
}

void check_grids(const ContestantTables& tb, const FllnSolution& flln)
{
    if (flln.model != ModelTag::contestant)
        throw DomainError("svie: needs a contestant-model solution");
    if (flln.grid.steps != tb.grid.steps || std::abs(flln.grid.dt - tb.grid.dt) > 1e-12 * tb.grid.dt)
        throw DomainError("svie: solution and kernel tables are on different grids");
}

struct Linearized {
    const ContestantTables& tb;
    const FllnSolution& flln;

    double contact(std::size_t k, double w, double y, double z) const
    {
        double x = -(w + y + z);
        return tb.lambda[k] * (x * flln.y[k] + flln.x[k] * y);
    }
    double conversion(std::size_t k, double y, double z) const
    {
        return tb.alpha[k] * (y * flln.z[k] + flln.y[k] * z);
    }
};

} // namespace

LimitFluctuation solve_linear_svie(const NoisePath& noise, const FllnInit& init, const ContestantTables& tb,
                                   const FllnSolution& flln, const PicardOptions& opts)
{
    check_grids(tb, flln);
    const std::size_t N = tb.grid.size();
    auto src = forcing(noise, init, tb);
    Linearized lin{tb, flln};
    LimitFluctuation sol;
    sol.grid = tb.grid;
    sol.x.assign(N, 0.0);
    sol.w.assign(N, 0.0);
    sol.y.assign(N, 0.0);
    sol.z.assign(N, 0.0);
    std::vector<double> h(N, 0.0), g(N, 0.0);
    sol.w[0] = src[0][0];
    sol.y[0] = src[1][0];
    sol.z[0] = src[2][0];
    sol.x[0] = -(sol.w[0] + sol.y[0] + sol.z[0]);
    h[0] = lin.contact(0, sol.w[0], sol.y[0], sol.z[0]);
    g[0] = lin.conversion(0, sol.y[0], sol.z[0]);
    const double half = 0.5 * tb.grid.dt;
    double alpha_prefix = 0.0;
    for (std::size_t k = 1; k < N; ++k) {
        if (k >= 2)
            alpha_prefix += half * (g[k - 2] + g[k - 1]);
        double hw = src[0][k] + convolve_history(tb.f_c, h, k);
        double hy = src[1][k] + convolve_history(tb.psi, h, k) - alpha_prefix - half * g[k - 1];
        double hz = src[2][k] + convolve_history(tb.psi_beta, h, k) + convolve_history(tb.h_c, g, k);
        double w = sol.w[k - 1], y = sol.y[k - 1], z = sol.z[k - 1];
        for (int it = 0;; ++it) {
            double hk = lin.contact(k, w, y, z);
            double gk = lin.conversion(k, y, z);
            double nw = hw + tb.f_c.newest() * hk;
            double ny = hy + tb.psi.newest() * hk - half * gk;
            double nz = hz + tb.psi_beta.newest() * hk + tb.h_c.newest() * gk;
            double change = std::max({std::abs(nw - w), std::abs(ny - y), std::abs(nz - z)});
            w = nw;
            y = ny;
            z = nz;
            double scale = std::max({1.0, std::abs(w), std::abs(y), std::abs(z)});
            if (change <= opts.tol * scale)
                break;
            if (it + 1 >= opts.max_iter) {
                std::ostringstream os;
                os << "svie: fixed-point iteration did not converge at t = " << tb.grid.node(k) << " (last change "
                   << change << "); try a smaller dt";
                throw NumericalError(os.str());
            }
        }
        sol.w[k] = w;
        sol.y[k] = y;
        sol.z[k] = z;
        sol.x[k] = -(w + y + z);
        h[k] = lin.contact(k, w, y, z);
        g[k] = lin.conversion(k, y, z);
    }
    return sol;
}

LimitFluctuation solve_linear_svie(const NoisePath& noise, const FllnInit& init, const CovarianceModel& model,
                                   const PicardOptions& opts)
{
    return solve_linear_svie(noise, init, build_tables(model.laws(), model.flln().grid), model.flln(), opts);
}

double svie_residual(const LimitFluctuation& sol, const NoisePath& noise, const FllnInit& init,
                     const ContestantTables& tb, const FllnSolution& flln)
{
    check_grids(tb, flln);
    const std::size_t N = tb.grid.size();
    if (sol.w.size() != N)
        throw DomainError("svie residual: solution is on a different grid");
    auto src = forcing(noise, init, tb);
    Linearized lin{tb, flln};
    std::vector<double> h(N), g(N);
    for (std::size_t k = 0; k < N; ++k) {
        h[k] = lin.contact(k, sol.w[k], sol.y[k], sol.z[k]);
        g[k] = lin.conversion(k, sol.y[k], sol.z[k]);
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        double w = src[0][k] + convolve(tb.f_c, h, k);
        double y = src[1][k] + convolve(tb.psi, h, k) - trapezoid(g, tb.grid.dt, k);
        double z = src[2][k] + convolve(tb.psi_beta, h, k) + convolve(tb.h_c, g, k);
        worst = std::max({worst, std::abs(w - sol.w[k]), std::abs(y - sol.y[k]), std::abs(z - sol.z[k]),
                          std::abs(sol.x[k] + sol.w[k] + sol.y[k] + sol.z[k])});
    }
    return worst;
}

} // namespace rumor
