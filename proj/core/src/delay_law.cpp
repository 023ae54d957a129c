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
#include "rumor/delay_law.hpp"

#include "rumor/errors.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <sstream>

namespace rumor
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw ConfigError("delay law: " + what);
}

bool positive_finite(double v)
{
    return std::isfinite(v) && v > 0.0;
}

} // namespace

std::string to_string(LawKind kind)
{
    switch (kind) {
    case LawKind::exponential:
        return "exponential";
    case LawKind::gamma:
        return "gamma";
    case LawKind::weibull:
        return "weibull";
    case LawKind::lognormal:
        return "lognormal";
    case LawKind::atom:
        return "atom";
    case LawKind::uniform:
        return "uniform";
    case LawKind::empirical:
        return "empirical";
    }
    throw_internal("unknown law kind");
}

DelayLaw::DelayLaw(LawKind kind, std::vector<double> params)
    : m_kind(kind), m_params(std::move(params))
{
}

DelayLaw DelayLaw::exponential(double rate)
{
    require(positive_finite(rate), "exponential rate must be positive");
    return DelayLaw(LawKind::exponential, {rate});
}

DelayLaw DelayLaw::gamma(double shape, double rate)
{
    require(positive_finite(shape) && positive_finite(rate), "gamma shape and rate must be positive");
    return DelayLaw(LawKind::gamma, {shape, rate});
}

DelayLaw DelayLaw::weibull(double shape, double scale)
{
    require(positive_finite(shape) && positive_finite(scale), "weibull shape and scale must be positive");
    return DelayLaw(LawKind::weibull, {shape, scale});
}

DelayLaw DelayLaw::lognormal(double mu, double sigma)
{
    require(std::isfinite(mu) && positive_finite(sigma), "lognormal needs finite mu and positive sigma");
    return DelayLaw(LawKind::lognormal, {mu, sigma});
}

DelayLaw DelayLaw::atom(double at)
{
    require(std::isfinite(at) && at >= 0.0, "atom position must be finite and nonnegative");
    DelayLaw law(LawKind::atom, {at});
    law.m_atom = Atom{at, 1.0};
    return law;
}

DelayLaw DelayLaw::uniform(double lo, double hi)
{
    require(std::isfinite(lo) && std::isfinite(hi) && lo >= 0.0 && hi > lo, "uniform needs 0 <= lo < hi");
    return DelayLaw(LawKind::uniform, {lo, hi});
}

DelayLaw DelayLaw::empirical(std::vector<double> knots, std::vector<double> cdf_values)
{
    require(knots.size() >= 2 && knots.size() == cdf_values.size(), "empirical table needs >= 2 matching knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        require(std::isfinite(knots[i]) && std::isfinite(cdf_values[i]), "empirical table entries must be finite");
        if (i > 0) {
            require(knots[i] > knots[i - 1], "empirical knots must be strictly increasing");
            require(cdf_values[i] >= cdf_values[i - 1], "empirical cdf must be nondecreasing");
        }
    }
    require(knots.front() >= 0.0, "empirical knots must be nonnegative");
    require(cdf_values.front() == 0.0 && cdf_values.back() == 1.0, "empirical cdf must run from 0 to 1");
    DelayLaw law(LawKind::empirical, {});
    law.m_knots = std::move(knots);
    law.m_knot_cdf = std::move(cdf_values);
    return law;
}

DelayLaw DelayLaw::with_atom(double at, double weight) const
{
    require(m_kind != LawKind::atom, "cannot add an atom to an atom law");
    require(!m_atom, "law already carries an atom");
    require(std::isfinite(at) && at >= 0.0, "atom position must be finite and nonnegative");
    require(weight >= 0.0 && weight <= 1.0, "atom weight must lie in [0,1]");
    DelayLaw law = *this;
    if (weight > 0.0)
        law.m_atom = Atom{at, weight};
    return law;
}

double DelayLaw::continuous_cdf(double x) const
{
    if (x <= 0.0)
        return 0.0;
    switch (m_kind) {
    case LawKind::exponential:
        return -std::expm1(-m_params[0] * x);
    case LawKind::gamma:
        return boost::math::gamma_p(m_params[0], m_params[1] * x);
    case LawKind::weibull:
        return -std::expm1(-std::pow(x / m_params[1], m_params[0]));
    case LawKind::lognormal:
        return 0.5 * std::erfc(-(std::log(x) - m_params[0]) / (m_params[1] * std::sqrt(2.0)));
    case LawKind::atom:
        return 0.0;
    case LawKind::uniform:
        return std::clamp((x - m_params[0]) / (m_params[1] - m_params[0]), 0.0, 1.0);
    case LawKind::empirical: {
        if (x < m_knots.front())
            return 0.0;
        if (x >= m_knots.back())
            return 1.0;
        auto it = std::upper_bound(m_knots.begin(), m_knots.end(), x);
        std::size_t k = static_cast<std::size_t>(it - m_knots.begin()) - 1;
        double f = (x - m_knots[k]) / (m_knots[k + 1] - m_knots[k]);
        return m_knot_cdf[k] + f * (m_knot_cdf[k + 1] - m_knot_cdf[k]);
    }
    }
    throw_internal("unknown law kind");
}

double DelayLaw::continuous_density(double x) const
{
    if (x < 0.0)
        return 0.0;
    switch (m_kind) {
    case LawKind::exponential:
        return m_params[0] * std::exp(-m_params[0] * x);
    case LawKind::gamma:
        if (x == 0.0)
            return m_params[0] < 1.0 ? inf : (m_params[0] == 1.0 ? m_params[1] : 0.0);
        return m_params[1] * boost::math::gamma_p_derivative(m_params[0], m_params[1] * x);
    case LawKind::weibull: {
        double k = m_params[0], s = m_params[1];
        if (x == 0.0)
            return k < 1.0 ? inf : (k == 1.0 ? 1.0 / s : 0.0);
        double z = x / s;
        return k / s * std::pow(z, k - 1.0) * std::exp(-std::pow(z, k));
    }
    case LawKind::lognormal: {
        if (x == 0.0)
            return 0.0;
        double z = (std::log(x) - m_params[0]) / m_params[1];
        return std::exp(-0.5 * z * z) / (x * m_params[1] * std::sqrt(2.0 * M_PI));
    }
    case LawKind::atom:
        return 0.0;
    case LawKind::uniform:
        return (x >= m_params[0] && x < m_params[1]) ? 1.0 / (m_params[1] - m_params[0]) : 0.0;
    case LawKind::empirical: {
        if (x < m_knots.front() || x >= m_knots.back())
            return 0.0;
        auto it = std::upper_bound(m_knots.begin(), m_knots.end(), x);
        std::size_t k = static_cast<std::size_t>(it - m_knots.begin()) - 1;
        return (m_knot_cdf[k + 1] - m_knot_cdf[k]) / (m_knots[k + 1] - m_knots[k]);
    }
    }
    throw_internal("unknown law kind");
}

double DelayLaw::continuous_sample(Rng& rng) const
{
    switch (m_kind) {
    case LawKind::exponential:
        return std::exponential_distribution<double>(m_params[0])(rng);
    case LawKind::gamma:
        return std::gamma_distribution<double>(m_params[0], 1.0 / m_params[1])(rng);
    case LawKind::weibull:
        return std::weibull_distribution<double>(m_params[0], m_params[1])(rng);
    case LawKind::lognormal:
        return std::lognormal_distribution<double>(m_params[0], m_params[1])(rng);
    case LawKind::atom:
        return m_params[0];
    case LawKind::uniform:
        return std::uniform_real_distribution<double>(m_params[0], m_params[1])(rng);
    case LawKind::empirical: {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        auto it = std::upper_bound(m_knot_cdf.begin(), m_knot_cdf.end(), u);
        std::size_t k = static_cast<std::size_t>(it - m_knot_cdf.begin());
        if (k == 0)
            return m_knots.front();
        if (k >= m_knots.size())
            return m_knots.back();
        --k;
        double f = (u - m_knot_cdf[k]) / (m_knot_cdf[k + 1] - m_knot_cdf[k]);
        return m_knots[k] + f * (m_knots[k + 1] - m_knots[k]);
    }
    }
    throw_internal("unknown law kind");
}

double DelayLaw::continuous_mean() const
{
    switch (m_kind) {
    case LawKind::exponential:
        return 1.0 / m_params[0];
    case LawKind::gamma:
        return m_params[0] / m_params[1];
    case LawKind::weibull:
        return m_params[1] * std::tgamma(1.0 + 1.0 / m_params[0]);
    case LawKind::lognormal:
        return std::exp(m_params[0] + 0.5 * m_params[1] * m_params[1]);
    case LawKind::atom:
        return 0.0;
    case LawKind::uniform:
        return 0.5 * (m_params[0] + m_params[1]);
    case LawKind::empirical: {
        double m = 0.0;
        for (std::size_t k = 0; k + 1 < m_knots.size(); ++k)
            m += (m_knot_cdf[k + 1] - m_knot_cdf[k]) * 0.5 * (m_knots[k] + m_knots[k + 1]);
        return m;
    }
    }
    throw_internal("unknown law kind");
}

double DelayLaw::continuous_weight() const
{
    return m_atom ? 1.0 - m_atom->weight : 1.0;
}

double DelayLaw::cdf(double x) const
{
    if (x < 0.0)
        return 0.0;
    double c = m_kind == LawKind::atom ? 0.0 : continuous_weight() * continuous_cdf(x);
    if (m_atom && x >= m_atom->at)
        c += m_atom->weight;
    return std::clamp(c, 0.0, 1.0);
}

double DelayLaw::density(double x) const
{
    if (m_kind == LawKind::atom)
        return 0.0;
    return continuous_weight() * continuous_density(x);
}

double DelayLaw::sample(Rng& rng) const
{
    if (m_atom && m_kind != LawKind::atom) {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        if (u < m_atom->weight)
            return m_atom->at;
    }
    return continuous_sample(rng);
}

double DelayLaw::mean() const
{
    if (m_kind == LawKind::atom)
        return m_params[0];
    double m = continuous_weight() * continuous_mean();
    if (m_atom)
        m += m_atom->weight * m_atom->at;
    return m;
}

std::optional<DelayLaw::Atom> DelayLaw::point_mass() const
{
    return m_atom;
}

std::vector<double> DelayLaw::density_breakpoints() const
{
    switch (m_kind) {
    case LawKind::uniform:
        return {m_params[0], m_params[1]};
    case LawKind::empirical: {
        std::vector<double> b;
        for (double k : m_knots)
            if (k > 0.0)
                b.push_back(k);
        return b;
    }
    default:
        return {};
    }
}

double DelayLaw::singularity_order() const
{
    if (m_kind == LawKind::gamma || m_kind == LawKind::weibull)
        return std::min(1.0, m_params[0]);
    return 1.0;
}

double DelayLaw::support_max() const
{
    double hi = inf;
    switch (m_kind) {
    case LawKind::atom:
        return m_params[0];
    case LawKind::uniform:
        hi = m_params[1];
        break;
    case LawKind::empirical:
        hi = m_knots.back();
        break;
    default:
        return inf;
    }
    if (m_atom)
        hi = std::max(hi, m_atom->at);
    return hi;
}

std::string DelayLaw::describe() const
{
    std::ostringstream os;
    os << to_string(m_kind) << '(';
    if (m_kind == LawKind::empirical)
        os << m_knots.size() << " knots";
    for (std::size_t i = 0; i < m_params.size(); ++i)
        os << (i ? ", " : "") << m_params[i];
    os << ')';
    if (m_atom && m_kind != LawKind::atom)
        os << " + atom(" << m_atom->at << ", w=" << m_atom->weight << ')';
    return os.str();
}

ConditionalDelayLaw::ConditionalDelayLaw(std::vector<double> boundaries, std::vector<DelayLaw> slices)
    : m_boundaries(std::move(boundaries)), m_slices(std::move(slices))
{
}

ConditionalDelayLaw ConditionalDelayLaw::independent(DelayLaw law)
{
    return ConditionalDelayLaw({}, {std::move(law)});
}

ConditionalDelayLaw ConditionalDelayLaw::parameter_map(std::vector<double> boundaries, std::vector<DelayLaw> slices)
{
    if (slices.size() != boundaries.size() + 1)
        throw ConfigError("conditional law: need exactly one more slice than boundaries");
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        if (!std::isfinite(boundaries[i]) || boundaries[i] <= 0.0)
            throw ConfigError("conditional law: boundaries must be finite and positive");
        if (i > 0 && boundaries[i] <= boundaries[i - 1])
            throw ConfigError("conditional law: boundaries must be strictly increasing");
    }
    return ConditionalDelayLaw(std::move(boundaries), std::move(slices));
}

const DelayLaw& ConditionalDelayLaw::slice(double x) const
{
    auto it = std::upper_bound(m_boundaries.begin(), m_boundaries.end(), x);
    return m_slices[static_cast<std::size_t>(it - m_boundaries.begin())];
}

std::pair<double, double> sample_pair(const DelayLaw& primary, const ConditionalDelayLaw& cond, Rng& rng)
{
    double eta = primary.sample(rng);
    double secondary = cond.slice(eta).sample(rng);
    return {eta, secondary};
}

} // namespace rumor
