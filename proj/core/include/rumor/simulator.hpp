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
#ifndef RUMOR_SIMULATOR_HPP
#define RUMOR_SIMULATOR_HPP

#include "rumor/delay_law.hpp"
#include "rumor/model_laws.hpp"
#include "rumor/stats.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rumor
{

struct StateCounts {
    std::int64_t x = 0;
    std::int64_t w = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;

    std::int64_t total() const
    {
        return x + w + y + z;
    }
    bool operator==(const StateCounts&) const = default;
};

enum class EventKind : std::uint8_t
{
    contact,         // A epoch: inactive -> passive
    conversion,      // B epoch: spreader -> contestant
    activation,      // passive takes its side
    spreader_stop,   // spreading window ends
    contestant_stop  // contesting window ends
};

enum class Side : std::uint8_t
{
    none,
    spreader,
    contestant
};

std::string to_string(EventKind kind);

/**
 * One entry of the event log.
 *
 * For contact and conversion events `index` is the 1-based epoch number of the
 * A or B process; for the scheduled kinds it is the id of the individual.
 * Contacts carry (eta, side, secondary); conversions carry the contesting time
 * in `secondary`. A spreader_stop that finds no spreader left is logged with
 * `degenerate` set and leaves the counts unchanged.
 */
struct EventRecord {
    double time = 0.0;
    EventKind kind = EventKind::contact;
    Side side = Side::none;
    bool degenerate = false;
    std::int64_t index = 0;
    double eta = 0.0;
    double secondary = 0.0;
    StateCounts after;
};

struct SimConfig {
    std::int64_t n = 1000;
    double horizon = 10.0;
    std::int64_t w0 = 0;
    std::int64_t y0 = 0;
    std::int64_t z0 = 0;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0; // replication index
    ModelLaws laws;
    bool keep_marks = true;

    void validate() const;
};

/// Marks of an initially passive individual.
struct InitialPassive {
    double eta = 0.0;
    Side side = Side::none;
    double secondary = 0.0;
};

struct Trajectory {
    SimConfig config;
    StateCounts initial;
    std::vector<EventRecord> events;
    StateCounts final_counts;
    std::vector<InitialPassive> initial_passive;
    std::vector<double> initial_spreading; // theta0 of the y0 initial spreaders
    std::vector<double> initial_contesting; // zeta0 of the z0 initial contestants
    std::size_t degenerate_events = 0;
    bool marks_retained = true;
};

enum class Process
{
    A,
    B
};

/// Engine seeded from (seed, stream) so replications get independent streams.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

Trajectory simulate(const SimConfig& config);

StateCounts counts_at(const Trajectory& traj, double t);
/// Number of A (or B) epochs in [0, t].
std::int64_t count_at(const Trajectory& traj, Process p, double t);
double compensator(const Trajectory& traj, Process p, double t);
std::vector<double> time_rescaled_interarrivals(const Trajectory& traj, Process p);
/// Compensator at each epoch of `p` and at the horizon, for pooling across runs.
RescaledRun time_rescaled_run(const Trajectory& traj, Process p);

/// Replays the log from the initial counts; false on any mismatch or conservation failure.
bool replay_consistent(const Trajectory& traj);

/// One JSON object per line: {"t":..,"kind":..,"i":..,"x":..,"w":..,"y":..,"z":..}.
void write_event_log(const Trajectory& traj, std::ostream& os);

/// Shortest decimal that round-trips to the same double.
std::string shortest_repr(double v);

} // namespace rumor

#endif
