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
#ifndef RUMOR_STATS_HPP
#define RUMOR_STATS_HPP

#include <span>
#include <vector>

namespace rumor
{

/// Kolmogorov distance between the empirical law of `samples` and Exp(1).
double ks_statistic_exp1(std::span<const double> samples);

/// Asymptotic Kolmogorov tail probability P(K > x).
double kolmogorov_tail(double x);

/**
 * KS p-value against the standard exponential with the Stephens small-sample
 * correction. Needs at least 20 samples.
 */
double ks_exp1(std::span<const double> samples);

/// (estimate - target) / se; se must be positive.
double zscore(double estimate, double se, double target);

struct MeanEstimate {
    double mean = 0.0;
    double se = 0.0;
};

/// Sample mean with its standard error.
MeanEstimate mean_se(std::span<const double> samples);

/// Compensator values at the epochs of one run, and the compensator at the horizon.
struct RescaledRun {
    std::vector<double> epochs;
    double total = 0.0;
};

/**
 * Lays the rescaled runs end to end on one time axis and returns the gaps
 * between consecutive epochs, including gaps that straddle two runs. Only the
 * trailing gap after the last epoch is dropped.
 */
std::vector<double> pooled_interarrivals(std::span<const RescaledRun> runs);

} // namespace rumor

#endif
