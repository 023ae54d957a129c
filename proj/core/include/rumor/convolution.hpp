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
#ifndef RUMOR_CONVOLUTION_HPP
#define RUMOR_CONVOLUTION_HPP

#include <functional>
#include <span>
#include <vector>

namespace rumor
{

/**
 * Product-trapezoid weights for int_0^{t_k} K(t_k - s) h(s) ds with h linear
 * between grid nodes. Cell m is the lag interval [m dt, (m+1) dt]:
 *
 *   a[m] = int_cell K(u) du,   b[m] = int_cell K(u) (u - m dt) / dt du
 *
 * and the integral is sum_{j<k} h_j b[k-j-1] + h_{j+1} (a[k-j-1] - b[k-j-1]).
 */
struct ConvolutionWeights {
    double dt = 0.0;
    std::vector<double> a;
    std::vector<double> b;

    /// Weight of the newest node h_k.
    double newest() const
    {
        return a[0] - b[0];
    }
};

/// Cell moments by Gauss-Legendre, splitting cells at the kernel's jump lags.
ConvolutionWeights product_weights(const std::function<double(double)>& kernel, double dt, std::size_t cells,
                                   std::span<const double> jumps = {});

/**
 * Table of K(u) = int_0^u k(v) dv on [0, horizon] with cubic Hermite
 * interpolation (slopes are the kernel values at the nodes).
 */
class Antiderivative
{
public:
    Antiderivative() = default;
    Antiderivative(const std::function<double(double)>& kernel, double horizon, double step,
                   std::span<const double> jumps = {});

    double operator()(double u) const;
    /// int_a^b k(v) dv.
    double between(double a, double b) const
    {
        return (*this)(b) - (*this)(a);
    }

private:
    double m_step = 0.0;
    std::vector<double> m_value;
    std::vector<double> m_slope;
};

/// Full product-trapezoid sum at node k (h needs k + 1 entries).
double convolve(const ConvolutionWeights& w, std::span<const double> h, std::size_t k);

/// Same sum without the h_k term.
double convolve_history(const ConvolutionWeights& w, std::span<const double> h, std::size_t k);

/// Plain trapezoid of h over nodes 0..k.
double trapezoid(std::span<const double> h, double dt, std::size_t k);

} // namespace rumor

#endif
