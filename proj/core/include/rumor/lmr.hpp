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
#ifndef RUMOR_LMR_HPP
#define RUMOR_LMR_HPP

#include "rumor/fclt.hpp"
#include "rumor/flln.hpp"
#include "rumor/grid.hpp"
#include "rumor/model_laws.hpp"
#include "rumor/simulator.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rumor
{

struct LmrCounts {
    std::int64_t x = 0, u = 0, y = 0, z = 0;

    std::int64_t total() const
    {
        return x + u + y + z;
    }
    bool operator==(const LmrCounts&) const = default;
};

/// A: ignorant meets spreader. B: two spreaders meet. C: spreader meets a stifler or uninterested.
enum class LmrProcess
{
    A,
    B,
    C
};

std::string to_string(LmrProcess p);

struct LmrEvent {
    double time = 0.0;
    LmrProcess kind = LmrProcess::A;
    std::int64_t index = 0; // epoch number within its process, from 1
    /// A: the contacted ignorant became uninterested. B: both spreaders stopped.
    bool mark = false;
    bool degenerate = false;
    LmrCounts after;
};

struct LmrConfig {
    std::int64_t n = 1000;
    double horizon = 10.0;
    std::int64_t u0 = 0, y0 = 1, z0 = 0;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    LmrLaws laws;

    void validate() const;
};

struct LmrTrajectory {
    LmrConfig config;
    LmrCounts initial;
    std::vector<LmrEvent> events;
    LmrCounts final_counts;
    std::int64_t degenerate_events = 0;
};

LmrTrajectory simulate_lmr(const LmrConfig& config);

LmrCounts lmr_counts_at(const LmrTrajectory& traj, double t);
std::int64_t lmr_count_at(const LmrTrajectory& traj, LmrProcess p, double t);
double lmr_compensator(const LmrTrajectory& traj, LmrProcess p, double t);
std::vector<double> lmr_rescaled_interarrivals(const LmrTrajectory& traj, LmrProcess p);
RescaledRun lmr_rescaled_run(const LmrTrajectory& traj, LmrProcess p);
bool lmr_replay_consistent(const LmrTrajectory& traj);

/// JSON lines {"t","kind","i","x","u","y","z"}.
void write_event_log(const LmrTrajectory& traj, std::ostream& os);

enum class LmrNoise
{
    U1,
    Y1,
    Y2,
    Y3,
    Z1,
    Z2
};
inline constexpr std::size_t lmr_noise_count = 6;

std::string to_string(LmrNoise p);

struct LmrNoisePath {
    Grid grid;
    std::array<std::vector<double>, lmr_noise_count> values;

    const std::vector<double>& operator[](LmrNoise p) const
    {
        return values[static_cast<std::size_t>(p)];
    }
    double at(LmrNoise p, double t) const;
};

/**
 * Mark noises are centred sums over A and B epochs scaled by 1/sqrt(n); the
 * Y3 and Z2 noises are the compensated B and C counts.
 */
LmrNoisePath extract_lmr_noise(const LmrTrajectory& traj, const LmrLaws& laws, const Grid& grid);

struct LmrPair {
    LmrNoise first;
    LmrNoise second;
};

std::string to_string(const LmrPair& pair);
LmrPair lmr_pair_from_string(const std::string& name);

/// Rows with a closed form.
std::vector<LmrPair> lmr_table_pairs();

/**
 * Covariance of first(t) and second(r). The (Y3, Y3) and (Z2, Z2) rows are
 * estimated from ensembles and raise DomainError here.
 */
double lmr_cov_table(LmrPair pair, double t, double r, const FllnSolution& flln, const LmrLaws& laws);

Estimate estimate_lmr_QB(std::span<const LmrTrajectory> trajs, double t, double r, std::uint64_t seed = 1);
Estimate estimate_QC(std::span<const LmrTrajectory> trajs, double t, double r, std::uint64_t seed = 1);

Estimate lmr_empirical_cov(std::span<const LmrNoisePath> paths, LmrPair pair, double t, double r);

} // namespace rumor

#endif
