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
#include "rumor/stats.hpp"

#include "rumor/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace rumor
{

double ks_statistic_exp1(std::span<const double> samples)
{
    std::vector<double> v(samples.begin(), samples.end());
    std::sort(v.begin(), v.end());
    const double m = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double f = v[i] <= 0.0 ? 0.0 : -std::expm1(-v[i]);
        d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
    }
    return d;
}

double kolmogorov_tail(double x)
{
    if (!(x > 0.0))
        return 1.0;
    if (x < 1.18) {
        // Dual series, fast for small x.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double s = 0.0;
        for (int k = 1; k <= 20; ++k) {
            double j = 2.0 * k - 1.0;
            s += std::exp(-j * j * pi2 / (8.0 * x * x));
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * s, 0.0, 1.0);
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * x * x);
        s += (k % 2 == 1 ? term : -term);
        if (term < 1e-300)
            break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

double ks_exp1(std::span<const double> samples)
{
    if (samples.size() < 20)
        throw InsufficientDataError("KS test needs at least 20 samples");
    double root = std::sqrt(static_cast<double>(samples.size()));
    double d = ks_statistic_exp1(samples);
    return kolmogorov_tail((root + 0.12 + 0.11 / root) * d);
}

double zscore(double estimate, double se, double target)
{
    if (!(se > 0.0))
        throw DegenerateEnsembleError("z-score with zero standard error");
    return (estimate - target) / se;
}

MeanEstimate mean_se(std::span<const double> samples)
{
    if (samples.size() < 2)
        throw InsufficientDataError("mean estimate needs at least 2 samples");
    const double m = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples)
        mean += v;
    mean /= m;
    double ss = 0.0;
    for (double v : samples)
        ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (m - 1.0) / m)};
}

std::vector<double> pooled_interarrivals(std::span<const RescaledRun> runs)
{
    std::vector<double> out;
    double offset = 0.0, last = 0.0;
    for (const RescaledRun& r : runs) {
        for (double e : r.epochs) {
            out.push_back(offset + e - last);
            last = offset + e;
        }
        offset += r.total;
    }
    return out;
}

} // namespace rumor
