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
#ifndef RUMOR_HARNESS_CONFIG_HPP
#define RUMOR_HARNESS_CONFIG_HPP

#include "rumor/flln.hpp"
#include "rumor/model_laws.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rumor::harness
{

enum class ExperimentKind
{
    simulate,
    flln,
    fclt_cov,
    verify_thinning,
    verify_flln,
    verify_fclt,
    estimate_qb,
    estimate_qc
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string& name);

/// Everything an experiment run needs. See docs/config.md for the file format.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::flln;
    ModelTag model = ModelTag::contestant;
    ModelLaws laws;
    LmrLaws lmr_laws;
    /// Initial proportions; `w0` is the uninterested share for the LMR model.
    double w0 = 0.1, y0 = 0.05, z0 = 0.05;
    std::vector<std::int64_t> n{1000};
    int replications = 1;
    double horizon = 10.0;
    double dt = 0.01;       // FLLN / SVIE grid
    double noise_dt = 1.0;  // noise extraction grid
    std::vector<std::pair<double, double>> points{{2, 2}, {2, 5}, {5, 5}, {5, 8}, {8, 2}, {8, 8}};
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    int threads = 1;
    bool write_logs = true;

    void validate() const;
};

/// Defaults used by the acceptance suite for each model.
ExperimentConfig default_config(ModelTag model = ModelTag::contestant);

/// Parses a JSON document; errors name the offending key path.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Initial counts (w, y, z) for population n, rounded down.
std::array<std::int64_t, 3> initial_counts(const ExperimentConfig& cfg, std::int64_t n);

} // namespace rumor::harness

#endif
