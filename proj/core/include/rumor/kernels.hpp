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
#ifndef RUMOR_KERNELS_HPP
#define RUMOR_KERNELS_HPP

#include "rumor/model_laws.hpp"

#include <string>
#include <vector>

namespace rumor
{

/**
 * Proportion kernels. For the individuals contacted at time 0 (initially
 * passive, activation law f0) and those contacted later (activation law f):
 *
 *   phi(t) = beta      int_[0,t] G(t-u | u) dF(u)    (spreading and already stopped)
 *   psi(t) = beta      int_[0,t] G^c(t-u | u) dF(u)  (currently spreading)
 *   *_beta            same with (1 - beta) and H
 *   *0                same with F0 in place of F
 */
enum class Kernel
{
    phi0,
    phi0_beta,
    psi0,
    psi0_beta,
    phi,
    phi_beta,
    psi,
    psi_beta
};

std::string to_string(Kernel k);
Kernel kernel_from_string(const std::string& name);

double kernel_eval(Kernel kind, const ModelLaws& laws, double t);

/// Mass of the proportion still active at time b among those activated by a <= b:
/// beta int_[0,a] G^c(b-u | u) dF(u) for psi (and analogues). Only psi kinds.
double kernel_two_time(Kernel kind, const ModelLaws& laws, double a, double b);

/// int H^c(s | x) dF(x): survival of a contestant created by conversion.
double conversion_complement(const ModelLaws& laws, double s);

/// Lags in (0, horizon] where the kernel may jump (sums of atom positions).
std::vector<double> kernel_jumps(Kernel kind, const ModelLaws& laws, double horizon);
std::vector<double> conversion_complement_jumps(const ModelLaws& laws, double horizon);

} // namespace rumor

#endif
