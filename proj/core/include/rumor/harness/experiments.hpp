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
#ifndef RUMOR_HARNESS_EXPERIMENTS_HPP
#define RUMOR_HARNESS_EXPERIMENTS_HPP

#include "rumor/harness/config.hpp"
#include "rumor/harness/report.hpp"

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rumor::harness
{

/**
 * Runs job(i) for i in [0, count) on `threads` workers and returns the results
 * ordered by index, so the outcome does not depend on scheduling.
 */
template <class T>
std::vector<T> parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)>& job);

/// Runs the configured experiment, writing its outputs under cfg.out_dir.
StatReport run(const ExperimentConfig& cfg);

StatReport run_simulate(const ExperimentConfig& cfg);
StatReport run_flln(const ExperimentConfig& cfg);
StatReport run_fclt_cov(const ExperimentConfig& cfg);
StatReport run_verify_thinning(const ExperimentConfig& cfg);
StatReport run_verify_flln(const ExperimentConfig& cfg);
StatReport run_verify_fclt(const ExperimentConfig& cfg);
StatReport run_estimate_qb(const ExperimentConfig& cfg);
StatReport run_estimate_qc(const ExperimentConfig& cfg);

} // namespace rumor::harness

#include "rumor/harness/parallel.ipp"

#endif
