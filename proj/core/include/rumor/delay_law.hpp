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
#ifndef RUMOR_DELAY_LAW_HPP
#define RUMOR_DELAY_LAW_HPP

#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rumor
{

/// Random engine used throughout; one engine is owned by one caller at a time.
using Rng = std::mt19937_64;

enum class LawKind
{
    exponential,
    gamma,
    weibull,
    lognormal,
    atom,
    uniform,
    empirical
};

std::string to_string(LawKind kind);

/**
 * Distribution of a nonnegative delay (time until a scheduled transition).
 *
 * A law is one of the parametric families below, optionally mixed with a single
 * point mass: cdf(x) = w 1(x >= a) + (1 - w) cdf_cont(x). The pure atom kind is
 * the case w = 1. The empirical kind is a piecewise-linear cdf through the given
 * knots, so it has a piecewise-constant density.
 */
class DelayLaw
{
public:
    struct Atom {
        double at;
        double weight;
    };

    static DelayLaw exponential(double rate);
    static DelayLaw gamma(double shape, double rate);
    static DelayLaw weibull(double shape, double scale);
    static DelayLaw lognormal(double mu, double sigma);
    static DelayLaw atom(double at);
    static DelayLaw uniform(double lo, double hi);
    static DelayLaw empirical(std::vector<double> knots, std::vector<double> cdf_values);

    /// Mixture with a point mass of the given weight at `at`.
    DelayLaw with_atom(double at, double weight) const;

    LawKind kind() const
    {
        return m_kind;
    }

    double cdf(double x) const;
    /// P(delay > x), defined as 1 - cdf(x) so the two always sum to one.
    double complement(double x) const
    {
        return 1.0 - cdf(x);
    }
    /// Density of the absolutely continuous part, including its (1 - w) weight.
    double density(double x) const;
    double sample(Rng& rng) const;
    double mean() const;

    std::optional<Atom> point_mass() const;
    double continuous_weight() const;
    /// Points in (0, inf) where the continuous density is not smooth.
    std::vector<double> density_breakpoints() const;
    /// Exponent k of a density behaving like x^(k-1) at 0 when k < 1; otherwise 1.
    double singularity_order() const;
    /// Upper end of the support, or +inf.
    double support_max() const;

    std::string describe() const;

private:
    DelayLaw(LawKind kind, std::vector<double> params);

    double continuous_cdf(double x) const;
    double continuous_density(double x) const;
    double continuous_sample(Rng& rng) const;
    double continuous_mean() const;

    LawKind m_kind;
    std::vector<double> m_params;
    std::vector<double> m_knots;
    std::vector<double> m_knot_cdf;
    std::optional<Atom> m_atom;
};

/**
 * Law of a secondary delay given the primary delay eta = x.
 *
 * Either independent of x, or a piecewise map: slice k applies to
 * x in [boundary_{k-1}, boundary_k) with boundary_{-1} = 0 and the last slice
 * open-ended, so there is one more slice than boundaries.
 */
class ConditionalDelayLaw
{
public:
    static ConditionalDelayLaw independent(DelayLaw law);
    static ConditionalDelayLaw parameter_map(std::vector<double> boundaries, std::vector<DelayLaw> slices);

    const DelayLaw& slice(double x) const;
    bool is_independent() const
    {
        return m_boundaries.empty();
    }
    std::span<const double> boundaries() const
    {
        return m_boundaries;
    }
    std::span<const DelayLaw> slices() const
    {
        return m_slices;
    }

private:
    ConditionalDelayLaw(std::vector<double> boundaries, std::vector<DelayLaw> slices);

    std::vector<double> m_boundaries;
    std::vector<DelayLaw> m_slices;
};

/// Draws eta ~ primary, then the secondary delay from the slice of `cond` at eta.
std::pair<double, double> sample_pair(const DelayLaw& primary, const ConditionalDelayLaw& cond, Rng& rng);

} // namespace rumor

#endif
