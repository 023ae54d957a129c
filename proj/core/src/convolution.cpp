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

#include <algorithm>
#include <cmath>
#include <boost/math/quadrature/gauss.hpp>

namespace rumor
{

ConvolutionWeights product_weights(const std::function<double(double)>& kernel, double dt, std::size_t cells,
                                   std::span<const double> jumps)
{
    if (!(dt > 0.0))
        throw ConfigError("convolution: dt must be positive");
    using GL = boost::math::quadrature::gauss<double, 6>;
    const auto& x = GL::abscissa();
    const auto& wq = GL::weights();
    ConvolutionWeights w;
    w.dt = dt;
    w.a.resize(cells);
    w.b.resize(cells);
    std::vector<double> sorted(jumps.begin(), jumps.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t m = 0; m < cells; ++m) {
        double lo = dt * static_cast<double>(m);
        double hi = lo + dt;
        std::vector<double> cuts{lo};
        for (auto it = std::upper_bound(sorted.begin(), sorted.end(), lo); it != sorted.end() && *it < hi; ++it)
            cuts.push_back(*it);
        cuts.push_back(hi);
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            // Nodes lie strictly inside each piece, so one-sided limits are used at jumps.
            double c = 0.5 * (cuts[i] + cuts[i + 1]);
            double r = 0.5 * (cuts[i + 1] - cuts[i]);
            for (std::size_t q = 0; q < x.size(); ++q) {
                for (double sgn : {-1.0, 1.0}) {
                    double u = c + sgn * r * x[q];
                    double kw = kernel(u) * r * wq[q];
                    a += kw;
                    b += kw * (u - lo) / dt;
                }
            }
        }
        w.a[m] = a;
        w.b[m] = b;
    }
    return w;
}

Antiderivative::Antiderivative(const std::function<double(double)>& kernel, double horizon, double step,
                               std::span<const double> jumps)
{
    if (!(step > 0.0) || !(horizon > 0.0))
        throw ConfigError("antiderivative: need positive step and horizon");
    auto cells = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
    m_step = step;
    ConvolutionWeights w = product_weights(kernel, step, cells, jumps);
    m_value.resize(cells + 1);
    m_slope.resize(cells + 1);
    m_value[0] = 0.0;
    for (std::size_t m = 0; m < cells; ++m)
        m_value[m + 1] = m_value[m] + w.a[m];
    for (std::size_t m = 0; m <= cells; ++m)
        m_slope[m] = kernel(step * static_cast<double>(m));
}

double Antiderivative::operator()(double u) const
{
    if (u <= 0.0)
        return 0.0;
    double pos = u / m_step;
    auto k = static_cast<std::size_t>(pos);
    if (k + 1 >= m_value.size()) {
        if (pos > static_cast<double>(m_value.size() - 1) * (1.0 + 1e-12))
            throw RangeError("antiderivative queried beyond its table");
        return m_value.back();
    }
    double f = pos - static_cast<double>(k);
    double h = m_step;
    double p0 = m_value[k], p1 = m_value[k + 1];
    double d0 = m_slope[k] * h, d1 = m_slope[k + 1] * h;
    double f2 = f * f, f3 = f2 * f;
    return (2 * f3 - 3 * f2 + 1) * p0 + (f3 - 2 * f2 + f) * d0 + (-2 * f3 + 3 * f2) * p1 + (f3 - f2) * d1;
}

double convolve_history(const ConvolutionWeights& w, std::span<const double> h, std::size_t k)
{
    if (k == 0)
        return 0.0;
    if (k > w.a.size())
        throw RangeError("convolution: node beyond the weight table");
    double s = h[k - 1] * w.b[0];
    for (std::size_t j = 0; j + 1 < k; ++j) {
        std::size_t m = k - j - 1;
        s += h[j] * w.b[m] + h[j + 1] * (w.a[m] - w.b[m]);
    }
    return s;
}

double convolve(const ConvolutionWeights& w, std::span<const double> h, std::size_t k)
{
    if (k == 0)
        return 0.0;
    return convolve_history(w, h, k) + h[k] * w.newest();
}

double trapezoid(std::span<const double> h, double dt, std::size_t k)
{
    if (k == 0)
        return 0.0;
    double s = 0.5 * (h[0] + h[k]);
    for (std::size_t j = 1; j < k; ++j)
        s += h[j];
    return s * dt;
}

} // namespace rumor
