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
#include "rumor/quadrature.hpp"

#include "rumor/errors.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace rumor
{

namespace
{

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr int max_pieces = 4000;

struct Piece {
    double a, b, value, err;
    bool operator<(const Piece& o) const
    {
        return err < o.err;
    }
};

Piece piece(const Integrand& f, double a, double b)
{
    double err = 0.0;
    double v = GK::integrate(f, a, b, 0, 0.0, &err);
    return {a, b, v, err};
}

// Globally adaptive: keeps splitting the piece with the largest error estimate
// until the total is below tol or the worst piece is at rounding level.
double adaptive(const Integrand& f, double a, double b, double tol, double& err_total)
{
    std::priority_queue<Piece> heap;
    heap.push(piece(f, a, b));
    double value = heap.top().value, err = heap.top().err;
    for (int n = 1; err > tol && n < max_pieces; ++n) {
        Piece worst = heap.top();
        double m = 0.5 * (worst.a + worst.b);
        if (worst.err <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(worst.value) ||
            !(m > worst.a && m < worst.b))
            break;
        heap.pop();
        Piece l = piece(f, worst.a, m), r = piece(f, m, worst.b);
        value += l.value + r.value - worst.value;
        err += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
    }
    // Recompute the sums to shed accumulated cancellation in the running totals.
    value = 0.0;
    err = 0.0;
    for (; !heap.empty(); heap.pop()) {
        value += heap.top().value;
        err += heap.top().err;
    }
    err_total += err;
    return value;
}

} // namespace

double integrate(const Integrand& f, double a, double b, double abs_tol)
{
    if (!(b > a))
        return 0.0;
    double err = 0.0;
    double v = std::isfinite(a) && std::isfinite(b) ? adaptive(f, a, b, abs_tol, err)
                                                    : GK::integrate(f, a, b, 15, 1e-12, &err);
    if (!std::isfinite(v) || err > 10.0 * abs_tol) {
        std::ostringstream os;
        os << "quadrature did not converge on [" << a << ", " << b << "]: estimate " << v << ", error " << err
           << " > " << abs_tol;
        throw NumericalError(os.str());
    }
    return v;
}

double integrate_against(const DelayLaw& law, const Integrand& g, double lo, double hi, std::vector<double> breaks,
                         double abs_tol)
{
    lo = std::max(lo, 0.0);
    if (hi < lo)
        return 0.0;
    double total = 0.0;
    if (auto atom = law.point_mass(); atom && atom->at >= lo && atom->at <= hi)
        total += atom->weight * g(atom->at);
    if (law.kind() == LawKind::atom || law.continuous_weight() == 0.0 || hi == lo)
        return total;

    hi = std::min(hi, law.support_max());
    for (double b : law.density_breakpoints())
        breaks.push_back(b);
    if (std::isinf(hi))
        breaks.push_back(lo + 1.0);
    std::vector<double> cuts{lo};
    for (double b : breaks)
        if (b > lo && b < hi)
            cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double tol = abs_tol / static_cast<double>(cuts.size());
    double k = law.singularity_order();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (!(b > a))
            continue;
        if (a == 0.0 && k < 1.0) {
            double m = 1.0 / k;
            auto h = [&](double v) {
                if (v <= 0.0)
                    return 0.0;
                double u = b * std::pow(v, m);
                double dens = law.density(u);
                return dens > 0.0 ? g(u) * dens * b * m * std::pow(v, m - 1.0) : 0.0;
            };
            total += integrate(h, 0.0, 1.0, tol);
        } else {
            total += integrate([&](double u) { return g(u) * law.density(u); }, a, b, tol);
        }
    }
    return total;
}

} // namespace rumor
