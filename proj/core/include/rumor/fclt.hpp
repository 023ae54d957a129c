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
#ifndef RUMOR_FCLT_HPP
#define RUMOR_FCLT_HPP

#include "rumor/convolution.hpp"
#include "rumor/flln.hpp"
#include "rumor/grid.hpp"
#include "rumor/model_laws.hpp"
#include "rumor/simulator.hpp"

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rumor
{

/// The ten diffusion-scaled noise processes of the contestant model.
enum class Noise
{
    W0,
    W1,
    Y01,
    Y02,
    Y1,
    Y2,
    Z01,
    Z02,
    Z1,
    Z2
};

inline constexpr std::size_t noise_count = 10;
std::string to_string(Noise p);
Noise noise_from_string(const std::string& name);

struct NoisePath {
    Grid grid;
    std::array<std::vector<double>, noise_count> values;

    const std::vector<double>& operator[](Noise p) const
    {
        return values[static_cast<std::size_t>(p)];
    }
    std::vector<double>& operator[](Noise p)
    {
        return values[static_cast<std::size_t>(p)];
    }
    /// Node value at grid nodes, linear interpolation in between.
    double at(Noise p, double t) const;
};

/**
 * Extracts noise paths from trajectories sharing one set of laws and one grid.
 *
 * Indicator sums are read from the marks in the log. Compensators use the
 * realized proportions x y / n^2 (resp. y z / n^2), integrated exactly over each
 * constant stretch through antiderivative tables of the lag kernels.
 */
class NoiseExtractor
{
public:
    NoiseExtractor(const ModelLaws& laws, const Grid& grid, double table_step = 1e-3);

    NoisePath extract(const Trajectory& traj) const;
    const Grid& grid() const
    {
        return m_grid;
    }

private:
    ModelLaws m_laws;
    Grid m_grid;
    Antiderivative m_fc, m_psi, m_psi_beta, m_hc;
    std::vector<double> m_f0_c, m_psi0, m_psi0_beta, m_g0_c, m_h0_c;
};

NoisePath extract_noise(const Trajectory& traj, const ModelLaws& laws, const Grid& grid);

struct NoisePair {
    Noise first;
    Noise second;
    bool operator==(const NoisePair&) const = default;
};

std::string to_string(const NoisePair& pair);
/// Parses "W0W0", "W1Y1", "Y01Z01", ...; throws DomainError for unknown names.
NoisePair pair_from_string(const std::string& name);

/// The pairs with a non-null row in the covariance table (without the (Y2, Y2) row).
std::vector<NoisePair> table_pairs();

/**
 * Covariance evaluator for the limiting noises.
 *
 * Convention::exact gives the covariance of the limits of the extracted noises,
 * counting noise of the point processes included. Convention::printed gives the
 * alternative mark-only closed forms ((Y2, Z2) vanishing for r <= t, (Y1, Z1)
 * nonzero); it is kept for comparison and is not positive semidefinite in
 * general.
 */
class CovarianceModel
{
public:
    enum class Convention
    {
        exact,
        printed
    };

    CovarianceModel(ModelLaws laws, FllnSolution flln, Convention convention = Convention::exact,
                    std::size_t panels = 200);

    /// Covariance of first(t) and second(r). Pairs across independent groups return 0.
    double cov(NoisePair pair, double t, double r) const;

    /// Replaces the (Y2, Y2) entry by a tabulated estimate on `nodes` (bilinear between nodes).
    void set_qb_table(std::vector<double> nodes, Eigen::MatrixXd values);

    const FllnSolution& flln() const
    {
        return m_flln;
    }
    const ModelLaws& laws() const
    {
        return m_laws;
    }
    Convention convention() const
    {
        return m_convention;
    }
    double w0() const
    {
        return m_flln.w[0];
    }
    double y0() const
    {
        return m_flln.y[0];
    }
    double z0() const
    {
        return m_flln.z[0];
    }

private:
    // int_0^upto weight(s) * g(s) ds with weight = lambda X Y (contact) or alpha Y Z.
    double integrate_flux(bool contact, double upto, const std::function<double(double)>& g) const;
    double initial_cov(Noise p, Noise q, double t, double r) const;
    double contact_cov(Noise p, Noise q, double t, double r) const;
    double conversion_cov(Noise p, Noise q, double t, double r) const;

    ModelLaws m_laws;
    FllnSolution m_flln;
    Convention m_convention;
    std::size_t m_panels;
    std::vector<double> m_qb_nodes;
    Eigen::MatrixXd m_qb;
};

double cov_table(NoisePair pair, double t, double r, const CovarianceModel& model);

/// Estimate and bootstrap standard error.
struct Estimate {
    double value = 0.0;
    double se = 0.0;
    bool degenerate = false;
};

/**
 * (1/n) sum_i P(epoch_i <= t ^ r) P(epoch_i > t v r), probabilities estimated
 * across replications from the epoch counts at the two times; se by bootstrap.
 */
Estimate estimate_epoch_overlap(std::span<const std::int64_t> count_lo, std::span<const std::int64_t> count_hi,
                                std::int64_t n, std::uint64_t seed, int resamples = 200);

/// (1/n) sum_i P(epoch_i > t ^ r) P(epoch_i <= t v r), same estimation scheme.
Estimate estimate_epoch_gap(std::span<const std::int64_t> count_lo, std::span<const std::int64_t> count_hi,
                            std::int64_t n, std::uint64_t seed, int resamples = 200);

Estimate estimate_QB(std::span<const Trajectory> trajs, double t, double r, std::uint64_t seed = 1);

/// Draws jointly Gaussian noise paths with the model's covariance on a grid.
class LimitNoiseSampler
{
public:
    LimitNoiseSampler(const CovarianceModel& model, const Grid& grid);

    NoisePath draw(Rng& rng) const;
    const Eigen::MatrixXd& covariance() const
    {
        return m_cov;
    }
    /// Index of (process, node k >= 1) in the covariance matrix.
    std::size_t index(Noise p, std::size_t k) const;

private:
    Grid m_grid;
    Eigen::MatrixXd m_cov;
    Eigen::MatrixXd m_root;
};

NoisePath sample_limit_noise(const CovarianceModel& model, const Grid& grid, Rng& rng);

struct LimitFluctuation {
    Grid grid;
    std::vector<double> x, w, y, z;
};

/**
 * Solves the linear Volterra system for the fluctuations driven by `noise` with
 * initial fluctuations (W(0), Y(0), Z(0)); the FLLN solution must be on the same grid.
 */
LimitFluctuation solve_linear_svie(const NoisePath& noise, const FllnInit& init_fluct, const ContestantTables& tables,
                                   const FllnSolution& flln, const PicardOptions& opts = {});
LimitFluctuation solve_linear_svie(const NoisePath& noise, const FllnInit& init_fluct, const CovarianceModel& model,
                                   const PicardOptions& opts = {});

/// Largest defect of the discretized fluctuation equations (closure included).
double svie_residual(const LimitFluctuation& sol, const NoisePath& noise, const FllnInit& init_fluct,
                     const ContestantTables& tables, const FllnSolution& flln);

/// Sample covariance of first(t), second(r) across paths with jackknife se.
Estimate empirical_cov(std::span<const NoisePath> paths, NoisePair pair, double t, double r);

/// Sample covariance of two equally long samples with jackknife se.
Estimate sample_cov(std::span<const double> a, std::span<const double> b);

} // namespace rumor

#endif
