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
#include "rumor/harness/experiments.hpp"

#include "rumor/errors.hpp"
#include "rumor/fclt.hpp"
#include "rumor/harness/io.hpp"
#include "rumor/lmr.hpp"
#include "rumor/simulator.hpp"
#include "rumor/stats.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace rumor::harness
{

namespace fs = std::filesystem;

namespace
{

constexpr double z_band = 4.0;
constexpr double ks_level = 1e-3;

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::uint64_t stream_of(std::size_t size_index, std::size_t rep)
{
    return (static_cast<std::uint64_t>(size_index) << 32) | static_cast<std::uint64_t>(rep);
}

SimConfig contestant_run(const ExperimentConfig& cfg, std::int64_t n, std::uint64_t stream)
{
    auto [w, y, z] = initial_counts(cfg, n);
    SimConfig s;
    s.n = n;
    s.horizon = cfg.horizon;
    s.w0 = w;
    s.y0 = y;
    s.z0 = z;
    s.seed = cfg.seed;
    s.stream = stream;
    s.laws = cfg.laws;
    return s;
}

LmrConfig lmr_run(const ExperimentConfig& cfg, std::int64_t n, std::uint64_t stream)
{
    auto [u, y, z] = initial_counts(cfg, n);
    LmrConfig s;
    s.n = n;
    s.horizon = cfg.horizon;
    s.u0 = u;
    s.y0 = y;
    s.z0 = z;
    s.seed = cfg.seed;
    s.stream = stream;
    s.laws = cfg.lmr_laws;
    return s;
}

FllnSolution solve(const ExperimentConfig& cfg)
{
    Grid g = Grid::over(cfg.horizon, cfg.dt);
    FllnInit init{cfg.w0, cfg.y0, cfg.z0};
    return cfg.model == ModelTag::contestant ? solve_contestant(cfg.laws, init, g) : solve_lmr(cfg.lmr_laws, init, g);
}

fs::path out_path(const ExperimentConfig& cfg, const std::string& name)
{
    return fs::path(cfg.out_dir) / name;
}

// Adds a z-score row, treating a zero standard error as a pass only when the
// estimate equals the target.
void z_row(StatReport& rep, const std::string& name, const Estimate& e, double target)
{
    if (e.se > 0.0) {
        double z = zscore(e.value, e.se, target);
        rep.add(name, z, z_band, std::abs(z) <= z_band);
        return;
    }
    rep.warnings.push_back(name + ": zero standard error across the ensemble");
    rep.add(name, 0.0, z_band, std::abs(e.value - target) <= 1e-12);
}

std::vector<double> measure_times(const ExperimentConfig& cfg)
{
    auto steps = static_cast<std::size_t>(std::llround(cfg.horizon / 0.1));
    std::vector<double> t;
    for (std::size_t k = 0; k <= steps; ++k)
        t.push_back(std::min(cfg.horizon, cfg.horizon * static_cast<double>(k) / static_cast<double>(steps)));
    return t;
}

} // namespace

StatReport run_simulate(const ExperimentConfig& cfg)
{
    StatReport rep;
    rep.kind = ExperimentKind::simulate;
    const std::int64_t n = cfg.n.front();
    struct Summary {
        std::size_t events;
        std::array<std::int64_t, 4> final;
        std::int64_t degenerate;
        bool consistent;
    };
    auto job = [&](std::size_t i) -> Summary {
        fs::path log = out_path(cfg, "events_" + std::to_string(i) + ".jsonl");
        if (cfg.model == ModelTag::contestant) {
            Trajectory tr = simulate(contestant_run(cfg, n, stream_of(0, i)));
            if (cfg.write_logs)
                write_atomic(log, [&](std::ostream& os) { write_event_log(tr, os); });
            auto c = tr.final_counts;
            return {tr.events.size(), {c.x, c.w, c.y, c.z}, static_cast<std::int64_t>(tr.degenerate_events), replay_consistent(tr)};
        }
        LmrTrajectory tr = simulate_lmr(lmr_run(cfg, n, stream_of(0, i)));
        if (cfg.write_logs)
            write_atomic(log, [&](std::ostream& os) { write_event_log(tr, os); });
        auto c = tr.final_counts;
        return {tr.events.size(), {c.x, c.u, c.y, c.z}, tr.degenerate_events, lmr_replay_consistent(tr)};
    };
    auto runs = parallel_map<Summary>(static_cast<std::size_t>(cfg.replications), cfg.threads, job);
    std::vector<std::vector<double>> rows;
    double bad = 0.0, degenerate = 0.0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const Summary& s = runs[i];
        rows.push_back({static_cast<double>(i), static_cast<double>(s.events), static_cast<double>(s.final[0]),
                        static_cast<double>(s.final[1]), static_cast<double>(s.final[2]),
                        static_cast<double>(s.final[3]), static_cast<double>(s.degenerate)});
        bad += s.consistent ? 0.0 : 1.0;
        degenerate += static_cast<double>(s.degenerate);
    }
    const char* second = cfg.model == ModelTag::contestant ? "w" : "u";
    write_atomic(out_path(cfg, "runs.csv"), [&](std::ostream& os) {
        write_csv(os, std::string("run,events,x,") + second + ",y,z,degenerate (final counts, model " +
                          to_string(cfg.model) + ")",
                  {"run", "events", "x", second, "y", "z", "degenerate"}, rows);
    });
    rep.add("replay and conservation failures", bad, 0.0, bad == 0.0);
    if (degenerate > 0.0)
        rep.warnings.push_back(fmt(degenerate) + " degenerate events across the ensemble");
    return rep;
}

StatReport run_flln(const ExperimentConfig& cfg)
{
    StatReport rep;
    rep.kind = ExperimentKind::flln;
    FllnSolution sol = solve(cfg);
    write_atomic(out_path(cfg, "flln.csv"), [&](std::ostream& os) { write_csv(sol, os); });
    double res = cfg.model == ModelTag::contestant ? residual(sol, cfg.laws) : residual(sol, cfg.lmr_laws);
    rep.add("discretization residual", res, 1e-8, res <= 1e-8);
    double lo = std::numeric_limits<double>::infinity();
    for (Component c : {Component::x, Component::w, Component::y, Component::z})
        for (double v : sol.component(c))
            lo = std::min(lo, v);
    rep.add("smallest proportion", lo, -1e-6, lo >= -1e-6);
    return rep;
}

StatReport run_fclt_cov(const ExperimentConfig& cfg)
{
    StatReport rep;
    rep.kind = ExperimentKind::fclt_cov;
    FllnSolution sol = solve(cfg);
    std::ostringstream body;
    body << "#schema: pair,t,r,cov (model " << to_string(cfg.model) << ")\npair,t,r,cov\n";
    double worst = 0.0;
    auto emit = [&](const std::string& name, bool diagonal, double t, double r, double v) {
        body << name << ',' << format_double(t) << ',' << format_double(r) << ',' << format_double(v) << '\n';
        if (diagonal && t == r)
            worst = std::min(worst, v);
    };
    if (cfg.model == ModelTag::contestant) {
        CovarianceModel model(cfg.laws, sol);
        for (NoisePair p : table_pairs())
            for (auto [t, r] : cfg.points)
                emit(to_string(p), p.first == p.second, t, r, model.cov(p, t, r));
        NoisePair yy{Noise::Y2, Noise::Y2};
        for (auto [t, r] : cfg.points)
            emit(to_string(yy), true, t, r, model.cov(yy, t, r));
    } else {
        for (LmrPair p : lmr_table_pairs())
            for (auto [t, r] : cfg.points)
                emit(to_string(p), p.first == p.second, t, r, lmr_cov_table(p, t, r, sol, cfg.lmr_laws));
    }
    write_atomic(out_path(cfg, "covariances.csv"), [&](std::ostream& os) { os << body.str(); });
    rep.add("smallest variance", worst, -1e-12, worst >= -1e-12);
    return rep;
}

StatReport run_verify_thinning(const ExperimentConfig& cfg)
{
    StatReport rep;
    rep.kind = ExperimentKind::verify_thinning;
    const std::int64_t n = cfg.n.front();
    const std::size_t procs = cfg.model == ModelTag::contestant ? 2 : 3;
    using Runs = std::vector<RescaledRun>;
    auto job = [&](std::size_t i) -> Runs {
        Runs out(procs);
        if (cfg.model == ModelTag::contestant) {
            Trajectory tr = simulate(contestant_run(cfg, n, stream_of(0, i)));
            out[0] = time_rescaled_run(tr, Process::A);
            out[1] = time_rescaled_run(tr, Process::B);
        } else {
            LmrTrajectory tr = simulate_lmr(lmr_run(cfg, n, stream_of(0, i)));
            for (std::size_t k = 0; k < procs; ++k)
                out[k] = lmr_rescaled_run(tr, static_cast<LmrProcess>(k));
        }
        return out;
    };
    auto runs = parallel_map<Runs>(static_cast<std::size_t>(cfg.replications), cfg.threads, job);
    // Runs are laid end to end so that no gap is lost to the horizon except the last.
    std::vector<std::vector<double>> pooled(procs);
    for (std::size_t k = 0; k < procs; ++k) {
        Runs per_process;
        for (const Runs& r : runs)
            per_process.push_back(r[k]);
        pooled[k] = pooled_interarrivals(per_process);
    }
    const char* names[] = {"A", "B", "C"};
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < procs; ++k) {
        std::string name = std::string("KS ") + names[k] + " interarrivals";
        if (pooled[k].size() < 20) {
            rep.warnings.push_back(name + ": fewer than 20 interarrivals");
            rep.add(name, std::numeric_limits<double>::quiet_NaN(), ks_level, false);
            continue;
        }
        double p = ks_exp1(pooled[k]);
        rows.push_back({static_cast<double>(k), static_cast<double>(pooled[k].size()), ks_statistic_exp1(pooled[k]), p});
        rep.add(name, p, ks_level, p > ks_level);
    }
    write_atomic(out_path(cfg, "thinning.csv"), [&](std::ostream& os) {
        write_csv(os, "process,samples,ks_distance,p_value (process 0=A, 1=B, 2=C)",
                  {"process", "samples", "ks_distance", "p_value"}, rows);
    });
    return rep;
}

StatReport run_verify_flln(const ExperimentConfig& cfg)
{
    StatReport rep;
    rep.kind = ExperimentKind::verify_flln;
    FllnSolution sol = solve(cfg);
    auto times = measure_times(cfg);
    const std::size_t K = times.size();
    const Component comps[] = {Component::x, Component::w, Component::y, Component::z};
    const char* names[] = {"x", cfg.model == ModelTag::contestant ? "w" : "u", "y", "z"};
    using Props = std::vector<std::array<double, 4>>;
    std::vector<std::array<double, 4>> gaps, path_gaps;
    for (std::size_t s = 0; s < cfg.n.size(); ++s) {
        const std::int64_t n = cfg.n[s];
        const double dn = static_cast<double>(n);
        auto job = [&](std::size_t i) -> Props {
            Props out(K);
            if (cfg.model == ModelTag::contestant) {
                Trajectory tr = simulate(contestant_run(cfg, n, stream_of(s, i)));
                for (std::size_t k = 0; k < K; ++k) {
                    auto c = counts_at(tr, times[k]);
                    out[k] = {c.x / dn, c.w / dn, c.y / dn, c.z / dn};
                }
            } else {
                LmrTrajectory tr = simulate_lmr(lmr_run(cfg, n, stream_of(s, i)));
                for (std::size_t k = 0; k < K; ++k) {
                    auto c = lmr_counts_at(tr, times[k]);
                    out[k] = {c.x / dn, c.u / dn, c.y / dn, c.z / dn};
                }
            }
            return out;
        };
        auto runs = parallel_map<Props>(static_cast<std::size_t>(cfg.replications), cfg.threads, job);
        std::array<double, 4> gap{0, 0, 0, 0};
        std::array<double, 4> path_gap{0, 0, 0, 0};
        for (std::size_t c = 0; c < 4; ++c) {
            for (std::size_t k = 0; k < K; ++k) {
                double mean = 0.0;
                for (const Props& r : runs)
                    mean += r[k][c];
                mean /= static_cast<double>(runs.size());
                gap[c] = std::max(gap[c], std::abs(mean - sol.at(comps[c], times[k])));
            }
            for (const Props& r : runs) {
                double sup = 0.0;
                for (std::size_t k = 0; k < K; ++k)
                    sup = std::max(sup, std::abs(r[k][c] - sol.at(comps[c], times[k])));
                path_gap[c] += sup / static_cast<double>(runs.size());
            }
        }
        gaps.push_back(gap);
        path_gaps.push_back(path_gap);
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t s = 0; s < cfg.n.size(); ++s)
        rows.push_back({static_cast<double>(cfg.n[s]), gaps[s][0], gaps[s][1], gaps[s][2], gaps[s][3],
                        path_gaps[s][0], path_gaps[s][1], path_gaps[s][2], path_gaps[s][3]});
    const std::string u = names[1];
    write_atomic(out_path(cfg, "flln_gap.csv"), [&](std::ostream& os) {
        write_csv(os,
                  "n,x," + u + ",y,z,path_x,path_" + u +
                      ",path_y,path_z (x..z: sup over t of |ensemble mean - limit|; path_*: ensemble mean of each "
                      "run's sup over t of |proportion - limit|)",
                  {"n", "x", u, "y", "z", "path_x", "path_" + u, "path_y", "path_z"}, rows);
    });
    for (std::size_t c = 0; c < 4; ++c) {
        double g = gaps.back()[c];
        rep.add(std::string("sup gap ") + names[c] + " at n=" + std::to_string(cfg.n.back()), g, 0.015, g <= 0.015);
    }
    auto overall = [&](std::size_t s) { return *std::max_element(gaps[s].begin(), gaps[s].end()); };
    for (std::size_t s = 0; s + 1 < cfg.n.size(); ++s) {
        double ratio = overall(s) / overall(s + 1);
        rep.add("gap ratio n=" + std::to_string(cfg.n[s]) + "/" + std::to_string(cfg.n[s + 1]), ratio, 2.0,
                ratio >= 2.0 && ratio <= 5.0);
    }
    return rep;
}

namespace
{

void contestant_fclt(const ExperimentConfig& cfg, StatReport& rep, std::ostream& table)
{
    const std::int64_t n = cfg.n.back();
    FllnSolution sol = solve(cfg);
    Grid grid = Grid::over(cfg.horizon, cfg.noise_dt);
    NoiseExtractor ex(cfg.laws, grid);
    auto paths = parallel_map<NoisePath>(static_cast<std::size_t>(cfg.replications), cfg.threads, [&](std::size_t i) {
        return ex.extract(simulate(contestant_run(cfg, n, stream_of(0, i))));
    });
    CovarianceModel model(cfg.laws, sol);
    auto check = [&](NoisePair p, double t, double r, double target, const std::string& label) {
        Estimate e = empirical_cov(paths, p, t, r);
        double z = e.se > 0.0 ? (e.value - target) / e.se : 0.0;
        table << label << ',' << format_double(t) << ',' << format_double(r) << ',' << format_double(target) << ','
              << format_double(e.value) << ',' << format_double(e.se) << ',' << format_double(z) << '\n';
        z_row(rep, label + " t=" + fmt(t) + " r=" + fmt(r), e, target);
    };
    for (NoisePair p : table_pairs())
        for (auto [t, r] : cfg.points)
            check(p, t, r, model.cov(p, t, r), to_string(p));
    NoisePair yy{Noise::Y2, Noise::Y2};
    for (auto [t, r] : cfg.points)
        check(yy, t, r, model.cov(yy, t, r), "Y2Y2 bracket");
    NoisePair yz{Noise::Y2, Noise::Z2};
    for (auto [t, r] : cfg.points)
        if (r <= t)
            check(yz, t, r, 0.0, "Y2Z2 zero for r<=t");
    for (Noise p : {Noise::W1, Noise::Y1, Noise::Y2, Noise::Z1, Noise::Z2}) {
        double worst = 0.0;
        bool ok = true;
        for (std::size_t k = 1; k < grid.size(); ++k) {
            std::vector<double> v;
            for (const NoisePath& path : paths)
                v.push_back(path[p][k]);
            MeanEstimate m = mean_se(v);
            double z = m.se > 0.0 ? m.mean / m.se : 0.0;
            if (std::abs(z) > std::abs(worst))
                worst = z;
            ok = ok && std::abs(z) <= z_band;
        }
        rep.add("mean " + to_string(p) + " (worst node)", worst, z_band, ok);
    }
}

void lmr_fclt(const ExperimentConfig& cfg, StatReport& rep, std::ostream& table)
{
    const std::int64_t n = cfg.n.back();
    FllnSolution sol = solve(cfg);
    Grid grid = Grid::over(cfg.horizon, cfg.noise_dt);
    auto paths = parallel_map<LmrNoisePath>(static_cast<std::size_t>(cfg.replications), cfg.threads,
                                            [&](std::size_t i) {
                                                LmrTrajectory tr = simulate_lmr(lmr_run(cfg, n, stream_of(0, i)));
                                                return extract_lmr_noise(tr, cfg.lmr_laws, grid);
                                            });
    for (LmrPair p : lmr_table_pairs()) {
        for (auto [t, r] : cfg.points) {
            double target = lmr_cov_table(p, t, r, sol, cfg.lmr_laws);
            Estimate e = lmr_empirical_cov(paths, p, t, r);
            double z = e.se > 0.0 ? (e.value - target) / e.se : 0.0;
            table << to_string(p) << ',' << format_double(t) << ',' << format_double(r) << ','
                  << format_double(target) << ',' << format_double(e.value) << ',' << format_double(e.se) << ','
                  << format_double(z) << '\n';
            z_row(rep, to_string(p) + " t=" + fmt(t) + " r=" + fmt(r), e, target);
        }
    }
    double asym = 0.0;
    for (auto [t, r] : cfg.points)
        asym = std::max(asym, std::abs(lmr_cov_table({LmrNoise::U1, LmrNoise::Y1}, t, r, sol, cfg.lmr_laws) +
                                       lmr_cov_table({LmrNoise::U1, LmrNoise::U1}, t, r, sol, cfg.lmr_laws)));
    rep.add("U1Y1 + U1U1 antisymmetry", asym, 0.0, asym == 0.0);
    for (std::size_t p = 0; p < lmr_noise_count; ++p) {
        double worst = 0.0;
        bool ok = true;
        for (std::size_t k = 1; k < grid.size(); ++k) {
            std::vector<double> v;
            for (const LmrNoisePath& path : paths)
                v.push_back(path.values[p][k]);
            MeanEstimate m = mean_se(v);
            double z = m.se > 0.0 ? m.mean / m.se : 0.0;
            if (std::abs(z) > std::abs(worst))
                worst = z;
            ok = ok && std::abs(z) <= z_band;
        }
        rep.add("mean " + to_string(static_cast<LmrNoise>(p)) + " (worst node)", worst, z_band, ok);
    }
}

} // namespace

StatReport run_verify_fclt(const ExperimentConfig& cfg)
{
    StatReport rep;
    rep.kind = ExperimentKind::verify_fclt;
    if (cfg.replications < 30)
        throw ConfigError("config replications: verify-fclt needs at least 30");
    std::ostringstream table;
    table << "#schema: pair,t,r,analytic,empirical,se,z (model " << to_string(cfg.model) << ", n "
          << cfg.n.back() << ")\npair,t,r,analytic,empirical,se,z\n";
    if (cfg.model == ModelTag::contestant)
        contestant_fclt(cfg, rep, table);
    else
        lmr_fclt(cfg, rep, table);
    write_atomic(out_path(cfg, "fclt_check.csv"), [&](std::ostream& os) { os << table.str(); });
    return rep;
}

namespace
{

StatReport epoch_estimates(const ExperimentConfig& cfg, bool qc)
{
    StatReport rep;
    rep.kind = qc ? ExperimentKind::estimate_qc : ExperimentKind::estimate_qb;
    if (qc && cfg.model != ModelTag::lmr)
        throw ConfigError("config model: estimate-qc needs the lmr model");
    const std::int64_t n = cfg.n.front();
    std::vector<double> times;
    for (auto [t, r] : cfg.points) {
        times.push_back(t);
        times.push_back(r);
    }
    using Counts = std::vector<std::int64_t>;
    auto runs = parallel_map<Counts>(static_cast<std::size_t>(cfg.replications), cfg.threads, [&](std::size_t i) {
        Counts out;
        if (cfg.model == ModelTag::contestant) {
            Trajectory tr = simulate(contestant_run(cfg, n, stream_of(0, i)));
            for (double t : times)
                out.push_back(count_at(tr, Process::B, t));
        } else {
            LmrTrajectory tr = simulate_lmr(lmr_run(cfg, n, stream_of(0, i)));
            for (double t : times)
                out.push_back(lmr_count_at(tr, qc ? LmrProcess::C : LmrProcess::B, t));
        }
        return out;
    });
    std::vector<std::vector<double>> rows;
    for (std::size_t p = 0; p < cfg.points.size(); ++p) {
        auto [t, r] = cfg.points[p];
        bool swap = t > r;
        Counts lo, hi;
        for (const Counts& c : runs) {
            lo.push_back(c[2 * p + (swap ? 1 : 0)]);
            hi.push_back(c[2 * p + (swap ? 0 : 1)]);
        }
        Estimate e = qc ? estimate_epoch_gap(lo, hi, n, cfg.seed) : estimate_epoch_overlap(lo, hi, n, cfg.seed);
        rows.push_back({t, r, e.value, e.se});
        std::string name = std::string(qc ? "QC" : "QB") + " t=" + fmt(t) + " r=" + fmt(r);
        if (e.degenerate)
            rep.warnings.push_back(name + ": degenerate bootstrap (zero spread)");
        rep.add(name, e.value, 0.0, std::isfinite(e.value) && e.value >= 0.0);
    }
    write_atomic(out_path(cfg, qc ? "qc.csv" : "qb.csv"), [&](std::ostream& os) {
        write_csv(os, "t,r,estimate,se (model " + to_string(cfg.model) + ", n " + std::to_string(n) + ")",
                  {"t", "r", "estimate", "se"}, rows);
    });
    return rep;
}

} // namespace

StatReport run_estimate_qb(const ExperimentConfig& cfg)
{
    return epoch_estimates(cfg, false);
}

StatReport run_estimate_qc(const ExperimentConfig& cfg)
{
    return epoch_estimates(cfg, true);
}

StatReport run(const ExperimentConfig& cfg)
{
    cfg.validate();
    ensure_directory(cfg.out_dir);
    StatReport rep;
    switch (cfg.kind) {
    case ExperimentKind::simulate:
        rep = run_simulate(cfg);
        break;
    case ExperimentKind::flln:
        rep = run_flln(cfg);
        break;
    case ExperimentKind::fclt_cov:
        rep = run_fclt_cov(cfg);
        break;
    case ExperimentKind::verify_thinning:
        rep = run_verify_thinning(cfg);
        break;
    case ExperimentKind::verify_flln:
        rep = run_verify_flln(cfg);
        break;
    case ExperimentKind::verify_fclt:
        rep = run_verify_fclt(cfg);
        break;
    case ExperimentKind::estimate_qb:
        rep = run_estimate_qb(cfg);
        break;
    case ExperimentKind::estimate_qc:
        rep = run_estimate_qc(cfg);
        break;
    }
    write_atomic(out_path(cfg, "report.csv"), [&](std::ostream& os) { rep.write_csv(os); });
    write_atomic(out_path(cfg, "report.txt"), [&](std::ostream& os) { rep.write_text(os); });
    return rep;
}

} // namespace rumor::harness
