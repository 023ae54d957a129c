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
#include "../oracles/fixtures.hpp"
#include "../oracles/oracles.hpp"
#include "rumor/kernels.hpp"
#include "rumor/quadrature.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/weibull.hpp>
#include <cmath>
#include <gtest/gtest.h>

using namespace rumor;

namespace
{

ModelLaws exp_laws(double beta)
{
    ModelLaws L;
    L.beta = beta;
    return L;
}

} // namespace

TEST(Kernels, ZeroAtOrigin)
{
    for (auto k : {Kernel::phi, Kernel::psi, Kernel::psi_beta, Kernel::psi0})
        EXPECT_EQ(kernel_eval(k, exp_laws(0.5), 0.0), 0.0);
}

TEST(Kernels, BetaZeroKillsPsi)
{
    for (double t : {0.5, 1.0, 4.0})
        EXPECT_EQ(kernel_eval(Kernel::psi, exp_laws(0.0), t), 0.0);
}

TEST(Kernels, ExponentialClosedForm)
{
    // F, G ~ Exp(1): psi(t) = beta t e^{-t}.
    EXPECT_NEAR(kernel_eval(Kernel::psi, exp_laws(1.0), 1.0), std::exp(-1.0), 1e-12);
    for (double t : {0.1, 2.0, 7.5})
        EXPECT_NEAR(kernel_eval(Kernel::psi, exp_laws(0.4), t), 0.4 * t * std::exp(-t), 1e-12);
}

TEST(Kernels, ExponentialMatchesRiemannOracle)
{
    auto dens = [](double u) { return std::exp(-u); };
    double ref = oracle::window_mass(dens, dens, 1.0, 40.0, 1e-4);
    EXPECT_NEAR(ref, std::exp(-1.0), 1e-6);
    EXPECT_NEAR(kernel_eval(Kernel::psi, exp_laws(1.0), 1.0), ref, 1e-6);
}

TEST(Kernels, GammaWeibullMatchesRiemannOracle)
{
    ModelLaws L;
    L.beta = 0.7;
    L.f = DelayLaw::gamma(2, 2);
    L.g_cond = ConditionalDelayLaw::independent(DelayLaw::weibull(2.0, 1.5));
    boost::math::gamma_distribution<> fd(2.0, 0.5);
    boost::math::weibull_distribution<> gd(2.0, 1.5);
    auto f = [&](double u) { return boost::math::pdf(fd, u); };
    auto g = [&](double v) { return boost::math::pdf(gd, v); };
    for (double t : {0.5, 2.0}) {
        double ref = 0.7 * oracle::window_mass(f, g, t, 15.0, 1e-4);
        EXPECT_NEAR(kernel_eval(Kernel::psi, L, t), ref, 1e-6) << "t=" << t;
    }
}

TEST(Kernels, MassSplitIdentities)
{
    for (const ModelLaws& L : fixture::law_families()) {
        for (int i = 0; i <= 40; ++i) {
            double t = 0.25 * i;
            EXPECT_NEAR(kernel_eval(Kernel::phi, L, t) + kernel_eval(Kernel::psi, L, t), L.beta * L.f.cdf(t), 1e-8);
            EXPECT_NEAR(kernel_eval(Kernel::phi_beta, L, t) + kernel_eval(Kernel::psi_beta, L, t),
                        (1 - L.beta) * L.f.cdf(t), 1e-8);
            EXPECT_NEAR(kernel_eval(Kernel::phi0, L, t) + kernel_eval(Kernel::psi0, L, t), L.beta * L.f0.cdf(t), 1e-8);
            EXPECT_NEAR(kernel_eval(Kernel::phi0_beta, L, t) + kernel_eval(Kernel::psi0_beta, L, t),
                        (1 - L.beta) * L.f0.cdf(t), 1e-8);
        }
    }
}

TEST(Kernels, PsiBoundedPhiMonotone)
{
    for (const ModelLaws& L : fixture::law_families()) {
        double last = 0.0;
        for (int i = 0; i <= 50; ++i) {
            double t = 0.2 * i;
            double phi = kernel_eval(Kernel::phi, L, t);
            EXPECT_GE(phi, last - 1e-12);
            last = phi;
            EXPECT_LE(kernel_eval(Kernel::psi, L, t), L.beta * L.f.cdf(t) + 1e-12);
        }
    }
}

TEST(Kernels, TwoTimeDiagonalAndClosedForm)
{
    ModelLaws L = fixture::law_families()[0];
    for (double t : {0.5, 3.0})
        EXPECT_NEAR(kernel_two_time(Kernel::psi, L, t, t), kernel_eval(Kernel::psi, L, t), 1e-10);
    // Exponential: psi2(a, b) = beta a e^{-b}.
    ModelLaws E = exp_laws(0.5);
    EXPECT_NEAR(kernel_two_time(Kernel::psi, E, 1.0, 3.0), 0.5 * 1.0 * std::exp(-3.0), 1e-12);
}

TEST(Kernels, ConversionComplement)
{
    ModelLaws L;
    L.h_cond = ConditionalDelayLaw::parameter_map({1.0}, {DelayLaw::atom(0.5), DelayLaw::atom(2.0)});
    // P(F >= 1) = e^{-1} gets the long window.
    EXPECT_NEAR(conversion_complement(L, 1.0), std::exp(-1.0), 1e-9);
    EXPECT_EQ(conversion_complement(L, -1.0), 1.0);
}

TEST(Quadrature, SmoothAndSingular)
{
    EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, M_PI), 2.0, 1e-12);
    EXPECT_NEAR(integrate_against(DelayLaw::weibull(0.5, 1.0), [](double) { return 1.0; }, 0.0, 1.0, {}, 1e-11),
                1.0 - std::exp(-1.0), 1e-9);
}

TEST(Kernels, Names)
{
    for (auto k : {Kernel::phi0, Kernel::psi_beta})
        EXPECT_EQ(kernel_from_string(to_string(k)), k);
}
