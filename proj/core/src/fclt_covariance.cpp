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
#include "rumor/errors.hpp"
#include "rumor/fclt.hpp"
#include "rumor/kernels.hpp"
#include "rumor/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

namespace rumor
{

namespace
{

enum class Group
{
    initial,
    contact,
    conversion
};

Group group_of(Noise p)
{
    switch (p) {
    case Noise::W0:
    case Noise::Y01:
    case Noise::Y02:
    case Noise::Z01:
    case Noise::Z02:
        return Group::initial;
    case Noise::W1:
    case Noise::Y1:
    case Noise::Z1:
        return Group::contact;
    case Noise::Y2:
    case Noise::Z2:
        return Group::conversion;
    }
    throw_internal("unknown noise");
}

bool is(NoisePair pq, Noise a, Noise b)
{
    return pq.first == a && pq.second == b;
}

} // namespace

std::string to_string(const NoisePair& pair)
{
    return to_string(pair.first) + to_string(pair.second);
}

NoisePair pair_from_string(const std::string& name)
{
    for (std::size_t i = 0; i < noise_count; ++i) {
        std::string a = to_string(static_cast<Noise>(i));
        if (name.rfind(a, 0) != 0)
            continue;
        for (std::size_t j = 0; j < noise_count; ++j)
            if (name.substr(a.size()) == to_string(static_cast<Noise>(j)))
                return NoisePair{static_cast<Noise>(i), static_cast<Noise>(j)};
    }
    throw DomainError("unknown noise pair '" + name + "'");
}

std::vector<NoisePair> table_pairs()
{
    using N = Noise;
    return {{N::W0, N::W0}, {N::Y01, N::Y01}, {N::Y02, N::Y02}, {N::Z01, N::Z01}, {N::Z02, N::Z02},
            {N::W0, N::Y01}, {N::W0, N::Z01}, {N::W1, N::W1},   {N::Y1, N::Y1},   {N::Z1, N::Z1},
            {N::W1, N::Y1},  {N::W1, N::Z1},  {N::Y1, N::Z1},   {N::Z2, N::Z2},   {N::Y2, N::Z2}};
}

CovarianceModel::CovarianceModel(ModelLaws laws, FllnSolution flln, Convention convention, std::size_t panels)
    : m_laws(std::move(laws)), m_flln(std::move(flln)), m_convention(convention), m_panels(std::max<std::size_t>(panels, 1))
{
    m_laws.validate();
    if (m_flln.model != ModelTag::contestant)
        throw DomainError("covariance model needs a contestant-model solution");
}

void CovarianceModel::set_qb_table(std::vector<double> nodes, Eigen::MatrixXd values)
{
    if (nodes.empty() || values.rows() != static_cast<Eigen::Index>(nodes.size()) || values.cols() != values.rows())
        throw ConfigError("Q^B table: node list and matrix sizes disagree");
    if (!std::is_sorted(nodes.begin(), nodes.end()))
        throw ConfigError("Q^B table: nodes must be increasing");
    m_qb_nodes = std::move(nodes);
    m_qb = std::move(values);
}

double CovarianceModel::integrate_flux(bool contact, double upto, const std::function<double(double)>& g) const
{
    if (!(upto > 0.0))
        return 0.0;
    const double T = m_flln.grid.horizon();
    const RateFunction& rate = contact ? m_laws.lambda : m_laws.alpha;
    std::vector<double> cuts{0.0, upto};
    for (double b = rate.next_breakpoint(0.0); b < upto; b = rate.next_breakpoint(b))
        cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    using GL = boost::math::quadrature::gauss<double, 5>;
    auto weight = [&](double s) {
        double y = m_flln.at(Component::y, s);
        double other = contact ? m_flln.at(Component::x, s) : m_flln.at(Component::z, s);
        return rate(s) * y * other;
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i], hi = cuts[i + 1];
        auto panels = static_cast<std::size_t>(std::ceil(static_cast<double>(m_panels) * (hi - lo) / T));
        panels = std::max<std::size_t>(panels, 1);
        double width = (hi - lo) / static_cast<double>(panels);
        for (std::size_t k = 0; k < panels; ++k) {
            double a = lo + width * static_cast<double>(k);
            total += GL::integrate([&](double s) { return weight(s) * g(s); }, a, a + width);
        }
    }
    return total;
}

double CovarianceModel::initial_cov(Noise p, Noise q, double t, double r) const
{
    const ModelLaws& L = m_laws;
    const double a = std::min(t, r), b = std::max(t, r);
    const double w0 = this->w0();
    const bool exact = m_convention == Convention::exact;
    NoisePair pq{p, q};
    auto two = [&](Kernel k) { return kernel_two_time(k, L, a, b); };
    if (is(pq, Noise::W0, Noise::W0))
        return w0 * L.f0.cdf(a) * L.f0.complement(b);
    if (is(pq, Noise::Y02, Noise::Y02))
        return y0() * L.g0.cdf(a) * L.g0.complement(b);
    if (is(pq, Noise::Z02, Noise::Z02))
        return z0() * L.h0.cdf(a) * L.h0.complement(b);
    for (auto [noise, kern] : {std::pair{Noise::Y01, Kernel::psi0}, std::pair{Noise::Z01, Kernel::psi0_beta}}) {
        if (is(pq, noise, noise)) {
            if (exact)
                return w0 * (two(kern) - kernel_eval(kern, L, t) * kernel_eval(kern, L, r));
            return w0 * kernel_eval(kern, L, a) * (1.0 - kernel_eval(kern, L, b));
        }
    }
    for (auto [noise, kern] : {std::pair{Noise::Y01, Kernel::psi0}, std::pair{Noise::Z01, Kernel::psi0_beta}}) {
        bool forward = is(pq, Noise::W0, noise);
        if (!forward && !is(pq, noise, Noise::W0))
            continue;
        double tw = forward ? t : r; // time of W0
        double tk = forward ? r : t; // time of the other process
        double cross = 0.0;
        if (exact) {
            if (tw < tk)
                cross = kernel_eval(kern, L, tk) - kernel_two_time(kern, L, tw, tk);
        } else if (tw <= tk) {
            const ConditionalDelayLaw& cond = noise == Noise::Y01 ? L.g_cond : L.h_cond;
            cross = integrate_against(
                L.f0, [&](double u) { return u > tw ? cond.slice(u).cdf(tk - u) : 0.0; }, tw, tk, {}, 1e-11);
        }
        return w0 * (cross - L.f0.complement(tw) * kernel_eval(kern, L, tk));
    }
    if (exact && (is(pq, Noise::Y01, Noise::Z01) || is(pq, Noise::Z01, Noise::Y01))) {
        Kernel kt = p == Noise::Y01 ? Kernel::psi0 : Kernel::psi0_beta;
        Kernel kr = q == Noise::Y01 ? Kernel::psi0 : Kernel::psi0_beta;
        return -w0 * kernel_eval(kt, L, t) * kernel_eval(kr, L, r);
    }
    return 0.0;
}

double CovarianceModel::contact_cov(Noise p, Noise q, double t, double r) const
{
    const ModelLaws& L = m_laws;
    const double a = std::min(t, r), b = std::max(t, r);
    const bool exact = m_convention == Convention::exact;
    NoisePair pq{p, q};
    auto psi = [&](Kernel k, double u) { return u < 0.0 ? 0.0 : kernel_eval(k, L, u); };
    if (is(pq, Noise::W1, Noise::W1)) {
        return integrate_flux(true, a, [&](double s) {
            double v = L.f.complement(b - s);
            return exact ? v : v * L.f.cdf(a - s);
        });
    }
    for (auto [noise, kern] : {std::pair{Noise::Y1, Kernel::psi}, std::pair{Noise::Z1, Kernel::psi_beta}}) {
        if (is(pq, noise, noise)) {
            return integrate_flux(true, a, [&, kern = kern](double s) {
                double v = kernel_two_time(kern, L, a - s, b - s);
                return exact ? v : v - psi(kern, t - s) * psi(kern, r - s);
            });
        }
        bool forward = is(pq, Noise::W1, noise);
        if (!forward && !is(pq, noise, Noise::W1))
            continue;
        double tw = forward ? t : r;
        double tk = forward ? r : t;
        if (exact) {
            if (!(tk > tw))
                return 0.0;
            return integrate_flux(true, tw, [&, kern = kern](double s) {
                return psi(kern, tk - s) - kernel_two_time(kern, L, tw - s, tk - s);
            });
        }
        return integrate_flux(true, tw, [&, kern = kern](double s) {
            double v = L.f.cdf(tw - s) * psi(kern, tk - s);
            if (tk > tw)
                v -= kernel_two_time(kern, L, tw - s, tk - s);
            return v;
        });
    }
    if (!exact && (is(pq, Noise::Y1, Noise::Z1) || is(pq, Noise::Z1, Noise::Y1))) {
        Kernel kt = p == Noise::Y1 ? Kernel::psi : Kernel::psi_beta;
        Kernel kr = q == Noise::Y1 ? Kernel::psi : Kernel::psi_beta;
        return -integrate_flux(true, a, [&](double s) { return psi(kt, t - s) * psi(kr, r - s); });
    }
    return 0.0;
}

double CovarianceModel::conversion_cov(Noise p, Noise q, double t, double r) const
{
    const ModelLaws& L = m_laws;
    const double a = std::min(t, r), b = std::max(t, r);
    const bool exact = m_convention == Convention::exact;
    NoisePair pq{p, q};
    auto hc = [&](double u) { return conversion_complement(L, u); };
    if (is(pq, Noise::Z2, Noise::Z2)) {
        if (exact)
            return integrate_flux(false, a, [&](double s) { return hc(b - s); });
        return integrate_flux(false, a, [&](double s) { return hc(a - s) * (1.0 - hc(b - s)); });
    }
    if (is(pq, Noise::Y2, Noise::Z2) || is(pq, Noise::Z2, Noise::Y2)) {
        double ty = p == Noise::Y2 ? t : r;
        double tz = p == Noise::Y2 ? r : t;
        if (!exact && !(tz > ty))
            return 0.0;
        return integrate_flux(false, a, [&](double s) { return hc(tz - s); });
    }
    if (is(pq, Noise::Y2, Noise::Y2)) {
        if (!m_qb_nodes.empty()) {
            auto locate = [&](double v) {
                auto it = std::upper_bound(m_qb_nodes.begin(), m_qb_nodes.end(), v);
                std::size_t k = it == m_qb_nodes.begin() ? 0 : static_cast<std::size_t>(it - m_qb_nodes.begin()) - 1;
                k = std::min(k, m_qb_nodes.size() - 1);
                double f = 0.0;
                if (k + 1 < m_qb_nodes.size())
                    f = std::clamp((v - m_qb_nodes[k]) / (m_qb_nodes[k + 1] - m_qb_nodes[k]), 0.0, 1.0);
                return std::pair{k, f};
            };
            auto [i, fi] = locate(t);
            auto [j, fj] = locate(r);
            auto val = [&](std::size_t u, std::size_t v) {
                return m_qb(static_cast<Eigen::Index>(std::min(u, m_qb_nodes.size() - 1)),
                            static_cast<Eigen::Index>(std::min(v, m_qb_nodes.size() - 1)));
            };
            return (1 - fi) * (1 - fj) * val(i, j) + fi * (1 - fj) * val(i + 1, j) + (1 - fi) * fj * val(i, j + 1) +
                   fi * fj * val(i + 1, j + 1);
        }
        if (!exact)
            throw DomainError("the (Y2, Y2) row is estimated separately; set a Q^B table first");
        return integrate_flux(false, a, [](double) { return 1.0; });
    }
    return 0.0;
}

double CovarianceModel::cov(NoisePair pair, double t, double r) const
{
    const double T = m_flln.grid.horizon() * (1.0 + 1e-12);
    if (!(t >= 0.0 && r >= 0.0 && t <= T && r <= T))
        throw RangeError("covariance queried outside [0, horizon]");
    Group g = group_of(pair.first);
    if (g != group_of(pair.second))
        return 0.0;
    if (t == 0.0 || r == 0.0)
        return 0.0;
    switch (g) {
    case Group::initial:
        return initial_cov(pair.first, pair.second, t, r);
    case Group::contact:
        return contact_cov(pair.first, pair.second, t, r);
    case Group::conversion:
        return conversion_cov(pair.first, pair.second, t, r);
    }
    throw_internal("unknown group");
}

double cov_table(NoisePair pair, double t, double r, const CovarianceModel& model)
{
    return model.cov(pair, t, r);
}

namespace
{

// Sums over epoch indices of P(lo >= i) P(hi < i), or of P(lo < i) P(hi >= i) when `gap`.
Estimate epoch_sum(std::span<const std::int64_t> count_lo, std::span<const std::int64_t> count_hi, std::int64_t n,
                   std::uint64_t seed, int resamples, bool gap)
{
    const std::size_t R = count_lo.size();
    if (R == 0 || count_hi.size() != R)
        throw DomainError("epoch overlap: need a nonempty ensemble with matching count lists");
    if (n < 1)
        throw DomainError("epoch overlap: n must be positive");
    auto value = [&](const std::vector<std::size_t>& pick) {
        std::int64_t top = 0;
        for (std::size_t i : pick)
            top = std::max(top, count_hi[i]);
        // ge[i] = #{lo >= i}, lt[i] = #{hi < i}
        std::vector<double> lo_hist(static_cast<std::size_t>(top) + 2, 0.0), hi_hist(lo_hist.size(), 0.0);
        for (std::size_t i : pick) {
            lo_hist[static_cast<std::size_t>(count_lo[i])] += 1.0;
            hi_hist[static_cast<std::size_t>(count_hi[i])] += 1.0;
        }
        const double m = static_cast<double>(pick.size());
        double lo_ge = m - lo_hist[0]; // #{lo >= i}
        double hi_lt = hi_hist[0];     // #{hi < i}
        double sum = 0.0;
        for (std::size_t i = 1; i <= static_cast<std::size_t>(top); ++i) {
            if (gap)
                sum += ((m - lo_ge) / m) * ((m - hi_lt) / m);
            else
                sum += (lo_ge / m) * (hi_lt / m);
            lo_ge -= lo_hist[i];
            hi_lt += hi_hist[i];
        }
        return sum / static_cast<double>(n);
    };
    for (std::size_t i = 0; i < R; ++i)
        if (count_lo[i] < 0 || count_hi[i] < count_lo[i])
            throw DomainError("epoch overlap: counts must satisfy 0 <= lo <= hi");
    std::vector<std::size_t> all(R);
    for (std::size_t i = 0; i < R; ++i)
        all[i] = i;
    Estimate est;
    est.value = value(all);
    if (R < 2 || resamples < 2) {
        est.degenerate = true;
        return est;
    }
    Rng rng = make_rng(seed, 0x51ULL);
    std::uniform_int_distribution<std::size_t> pick(0, R - 1);
    double s1 = 0.0, s2 = 0.0;
    std::vector<std::size_t> idx(R);
    for (int b = 0; b < resamples; ++b) {
        for (auto& v : idx)
            v = pick(rng);
        double q = value(idx);
        s1 += q;
        s2 += q * q;
    }
    double mean = s1 / resamples;
    est.se = std::sqrt(std::max(0.0, (s2 - resamples * mean * mean) / (resamples - 1)));
    est.degenerate = est.se == 0.0;
    return est;
}

} // namespace

Estimate estimate_epoch_overlap(std::span<const std::int64_t> count_lo, std::span<const std::int64_t> count_hi,
                                std::int64_t n, std::uint64_t seed, int resamples)
{
    return epoch_sum(count_lo, count_hi, n, seed, resamples, false);
}

Estimate estimate_epoch_gap(std::span<const std::int64_t> count_lo, std::span<const std::int64_t> count_hi,
                            std::int64_t n, std::uint64_t seed, int resamples)
{
    return epoch_sum(count_lo, count_hi, n, seed, resamples, true);
}

Estimate estimate_QB(std::span<const Trajectory> trajs, double t, double r, std::uint64_t seed)
{
    if (trajs.empty())
        throw DomainError("estimate_QB: empty ensemble");
    const std::int64_t n = trajs.front().config.n;
    std::vector<std::int64_t> lo, hi;
    for (const Trajectory& tr : trajs) {
        if (tr.config.n != n)
            throw DomainError("estimate_QB: trajectories differ in n");
        lo.push_back(count_at(tr, Process::B, std::min(t, r)));
        hi.push_back(count_at(tr, Process::B, std::max(t, r)));
    }
    return estimate_epoch_overlap(lo, hi, n, seed);
}

LimitNoiseSampler::LimitNoiseSampler(const CovarianceModel& model, const Grid& grid) : m_grid(grid)
{
    // A lone node at t = 0 is allowed; every noise vanishes there.
    if (grid.steps > 0)
        grid.validate();
    else if (!(grid.dt > 0.0))
        throw ConfigError("grid: need dt > 0");
    const std::size_t K = grid.steps;
    if (K == 0)
        return;
    const auto dim = static_cast<Eigen::Index>(noise_count * K);
    m_cov = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t p = 0; p < noise_count; ++p) {
        for (std::size_t q = p; q < noise_count; ++q) {
            NoisePair pq{static_cast<Noise>(p), static_cast<Noise>(q)};
            if (group_of(pq.first) != group_of(pq.second))
                continue;
            for (std::size_t k = 1; k <= K; ++k) {
                for (std::size_t l = (p == q ? k : 1); l <= K; ++l) {
                    double v = model.cov(pq, grid.node(k), grid.node(l));
                    auto i = static_cast<Eigen::Index>(index(pq.first, k));
                    auto j = static_cast<Eigen::Index>(index(pq.second, l));
                    if (i == j && v < -1e-12) {
                        std::ostringstream os;
                        os << "negative variance " << v << " for " << to_string(pq.first) << " at t = " << grid.node(k);
                        throw NumericalError(os.str());
                    }
                    m_cov(i, j) = v;
                    m_cov(j, i) = v;
                }
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m_cov);
    if (eig.info() != Eigen::Success)
        throw NumericalError("covariance eigendecomposition failed");
    Eigen::VectorXd ev = eig.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-8) {
            std::ostringstream os;
            os << "covariance matrix is indefinite: eigenvalue " << ev(i);
            throw NumericalError(os.str());
        }
        ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    m_root = eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().transpose();
}

std::size_t LimitNoiseSampler::index(Noise p, std::size_t k) const
{
    return static_cast<std::size_t>(p) * m_grid.steps + (k - 1);
}

NoisePath LimitNoiseSampler::draw(Rng& rng) const
{
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(m_root.rows());
    for (Eigen::Index i = 0; i < z.size(); ++i)
        z(i) = normal(rng);
    Eigen::VectorXd v = m_root * z;
    NoisePath out;
    out.grid = m_grid;
    for (std::size_t p = 0; p < noise_count; ++p) {
        auto& path = out.values[p];
        path.assign(m_grid.size(), 0.0);
        for (std::size_t k = 1; k <= m_grid.steps; ++k)
            path[k] = v(static_cast<Eigen::Index>(index(static_cast<Noise>(p), k)));
    }
    return out;
}

NoisePath sample_limit_noise(const CovarianceModel& model, const Grid& grid, Rng& rng)
{
    return LimitNoiseSampler(model, grid).draw(rng);
}

Estimate sample_cov(std::span<const double> a, std::span<const double> b)
{
    const std::size_t R = a.size();
    if (R < 3 || b.size() != R)
        throw InsufficientDataError("sample covariance needs at least 3 paired samples");
    const double m = static_cast<double>(R);
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < R; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= m;
    mb /= m;
    double s = 0.0;
    for (std::size_t i = 0; i < R; ++i)
        s += (a[i] - ma) * (b[i] - mb);
    Estimate est;
    est.value = s / (m - 1.0);
    // Leave-one-out covariances from the full cross-product sum.
    std::vector<double> loo(R);
    double mean = 0.0;
    for (std::size_t i = 0; i < R; ++i) {
        loo[i] = (s - m / (m - 1.0) * (a[i] - ma) * (b[i] - mb)) / (m - 2.0);
        mean += loo[i];
    }
    mean /= m;
    double ss = 0.0;
    for (double v : loo)
        ss += (v - mean) * (v - mean);
    est.se = std::sqrt((m - 1.0) / m * ss);
    est.degenerate = est.se == 0.0;
    return est;
}

Estimate empirical_cov(std::span<const NoisePath> paths, NoisePair pair, double t, double r)
{
    if (paths.size() < 30)
        throw InsufficientDataError("empirical covariance needs at least 30 paths");
    std::vector<double> a, b;
    a.reserve(paths.size());
    b.reserve(paths.size());
    for (const NoisePath& p : paths) {
        a.push_back(p.at(pair.first, t));
        b.push_back(p.at(pair.second, r));
    }
    return sample_cov(a, b);
}

} // namespace rumor
