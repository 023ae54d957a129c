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
#ifndef RUMOR_QUADRATURE_HPP
#define RUMOR_QUADRATURE_HPP

#include "rumor/delay_law.hpp"

#include <functional>
#include <vector>

namespace rumor
{

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod on [a, b]; throws NumericalError above abs_tol.
double integrate(const Integrand& f, double a, double b, double abs_tol = 1e-11);

/**
 * Integral of g against dlaw over the closed interval [lo, hi].
 *
 * Point masses inside [lo, hi] contribute g(atom) * weight. The continuous part
 * is split at `breaks` and at the law's own density breakpoints. A density that
 * is singular at 0 is handled by the substitution u = b v^(1/k) on the first
 * panel.
 */
double integrate_against(const DelayLaw& law, const Integrand& g, double lo, double hi,
                         std::vector<double> breaks = {}, double abs_tol = 1e-11);

} // namespace rumor

#endif
