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
#ifndef RUMOR_FLLN_HPP
#define RUMOR_FLLN_HPP

#include "rumor/convolution.hpp"
#include "rumor/grid.hpp"
#include "rumor/model_laws.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rumor
{

enum class ModelTag
{
    contestant,
    lmr
};

std::string to_string(ModelTag tag);

enum class Component
{
    x,
    w, // U for the LMR model
    y,
    z
};

/// Deterministic limit on grid nodes. For the LMR model `w` holds the uninterested proportion.
struct FllnSolution {
    Grid grid;
    ModelTag model = ModelTag::contestant;
    std::vector<double> x;
    std::vector<double> w;
    std::vector<double> y;
    std::vector<double> z;

    const std::vector<double>& component(Component c) const;
    /// Linear interpolation between nodes; t must lie in [0, horizon].
    double at(Component c, double t) const;
};

struct FllnInit {
    double w0 = 0.0; // U(0) for the LMR model
    double y0 = 0.0;
    double z0 = 0.0;
};

/// Kernel data shared by the limit solver, its residual and the fluctuation solver.
struct ContestantTables {
    Grid grid;
    ConvolutionWeights f_c;      // F^c
    ConvolutionWeights psi;      // psi
    ConvolutionWeights psi_beta; // psi^beta
    ConvolutionWeights h_c;      // survival of converted contestants
    std::vector<double> f0_c, psi0, psi0_beta, g0_c, h0_c; // node values
    std::vector<double> lambda, alpha;                    // rates at nodes
};

ContestantTables build_tables(const ModelLaws& laws, const Grid& grid);

struct PicardOptions {
    double tol = 1e-10;
    int max_iter = 100;
};

FllnSolution solve_contestant(const ModelLaws& laws, const FllnInit& init, const Grid& grid,
                              const PicardOptions& opts = {});
FllnSolution solve_contestant(const ContestantTables& tables, const FllnInit& init, const PicardOptions& opts = {});

FllnSolution solve_lmr(const LmrLaws& laws, const FllnInit& init, const Grid& grid);

/// Largest defect of the discretized equations when the solution is substituted.
double residual(const FllnSolution& sol, const ModelLaws& laws);
double residual(const FllnSolution& sol, const ContestantTables& tables);
double residual(const FllnSolution& sol, const LmrLaws& laws);

/// CSV with a "#schema:" comment line, a header, then one row per node.
void write_csv(const FllnSolution& sol, std::ostream& os);

} // namespace rumor

#endif
