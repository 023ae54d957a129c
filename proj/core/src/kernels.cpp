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
#include "rumor/kernels.hpp"

#include "rumor/errors.hpp"
#include "rumor/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace rumor
{

namespace
{

struct Parts {
    const DelayLaw& primary;
    const ConditionalDelayLaw& secondary;
    double weight;
    bool survive; // psi-type integrand uses the complement
};

Parts parts(Kernel k, const ModelLaws& laws)
{
    switch (k) {
    case Kernel::phi0:
        return {laws.f0, laws.g_cond, laws.beta, false};
    case Kernel::phi0_beta:
        return {laws.f0, laws.h_cond, 1.0 - laws.beta, false};
    case Kernel::psi0:
        return {laws.f0, laws.g_cond, laws.beta, true};
    case Kernel::psi0_beta:
        return {laws.f0, laws.h_cond, 1.0 - laws.beta, true};
    case Kernel::phi:
        return {laws.f, laws.g_cond, laws.beta, false};
    case Kernel::phi_beta:
        return {laws.f, laws.h_cond, 1.0 - laws.beta, false};
    case Kernel::psi:
        return {laws.f, laws.g_cond, laws.beta, true};
    case Kernel::psi_beta:
        return {laws.f, laws.h_cond, 1.0 - laws.beta, true};
    }
    throw_internal("unknown kernel");
}

// Points u in (0, b) where u -> Sec(b - u | u) is not smooth.
std::vector<double> inner_breaks(const ConditionalDelayLaw& cond, double b)
{
    std::vector<double> out(cond.boundaries().begin(), cond.boundaries().end());
    for (const DelayLaw& s : cond.slices()) {
        if (auto a = s.point_mass())
            out.push_back(b - a->at);
        for (double p : s.density_breakpoints())
            out.push_back(b - p);
    }
    return out;
}

double split_integral(const Parts& p, double a, double b)
{
    if (p.weight == 0.0 || a < 0.0)
        return 0.0;
    auto g = [&](double u) {
        const DelayLaw& s = p.secondary.slice(u);
        return p.survive ? s.complement(b - u) : s.cdf(b - u);
    };
    return p.weight * integrate_against(p.primary, g, 0.0, a, inner_breaks(p.secondary, b), 1e-11);
}

constexpr std::array<const char*, 8> kernel_names{"phi0", "phi0_beta", "psi0", "psi0_beta",
                                                   "phi",  "phi_beta",  "psi",  "psi_beta"};

} // namespace

std::string to_string(Kernel k)
{
    return kernel_names[static_cast<std::size_t>(k)];
}

Kernel kernel_from_string(const std::string& name)
{
    for (std::size_t i = 0; i < kernel_names.size(); ++i)
        if (name == kernel_names[i])
            return static_cast<Kernel>(i);
    throw DomainError("unknown kernel '" + name + "'");
}

double kernel_eval(Kernel kind, const ModelLaws& laws, double t)
{
    if (t < 0.0)
        throw DomainError("kernel_eval: negative time");
    return std::clamp(split_integral(parts(kind, laws), t, t), 0.0, 1.0);
}

double kernel_two_time(Kernel kind, const ModelLaws& laws, double a, double b)
{
    Parts p = parts(kind, laws);
    if (!p.survive)
        throw DomainError("kernel_two_time: only psi kernels have a two-time form");
    if (a < 0.0 || b < a)
        throw DomainError("kernel_two_time: need 0 <= a <= b");
    return std::clamp(split_integral(p, a, b), 0.0, 1.0);
}

double conversion_complement(const ModelLaws& laws, double s)
{
    if (s < 0.0)
        return 1.0;
    if (laws.h_cond.is_independent())
        return laws.h_cond.slice(0.0).complement(s);
    std::vector<double> br(laws.h_cond.boundaries().begin(), laws.h_cond.boundaries().end());
    double v = integrate_against(
        laws.f, [&](double x) { return laws.h_cond.slice(x).complement(s); }, 0.0,
        laws.f.support_max(), br, 1e-11);
    return std::clamp(v, 0.0, 1.0);
}

std::vector<double> kernel_jumps(Kernel kind, const ModelLaws& laws, double horizon)
{
    Parts p = parts(kind, laws);
    std::vector<double> out;
    auto pa = p.primary.point_mass();
    if (pa) {
        out.push_back(pa->at);
        for (const DelayLaw& s : p.secondary.slices())
            if (auto sa = s.point_mass())
                out.push_back(pa->at + sa->at);
    }
    std::erase_if(out, [&](double v) { return !(v > 0.0 && v <= horizon); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> conversion_complement_jumps(const ModelLaws& laws, double horizon)
{
    std::vector<double> out;
    for (const DelayLaw& s : laws.h_cond.slices())
        if (auto sa = s.point_mass(); sa && sa->at > 0.0 && sa->at <= horizon)
            out.push_back(sa->at);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace rumor
