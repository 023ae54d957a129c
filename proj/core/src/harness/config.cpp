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
#include "rumor/harness/config.hpp"

#include "rumor/errors.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace rumor::harness
{

using nlohmann::json;

namespace
{

const std::pair<ExperimentKind, const char*> kind_names[] = {
    {ExperimentKind::simulate, "simulate"},
    {ExperimentKind::flln, "flln"},
    {ExperimentKind::fclt_cov, "fclt-cov"},
    {ExperimentKind::verify_thinning, "verify-thinning"},
    {ExperimentKind::verify_flln, "verify-flln"},
    {ExperimentKind::verify_fclt, "verify-fclt"},
    {ExperimentKind::estimate_qb, "estimate-qb"},
    {ExperimentKind::estimate_qc, "estimate-qc"},
};

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw ConfigError("config " + path + ": " + what);
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number())
        fail(path, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v))
        fail(path, "must be finite");
    return v;
}

const json& member(const json& obj, const char* key, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path + "." + key, "missing");
    return *it;
}

std::vector<double> numbers(const json& j, const std::string& path)
{
    if (!j.is_array())
        fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

// Wraps law constructors so their ConfigErrors carry the key path.
template <class F>
auto at_path(const std::string& path, F&& make)
{
    try {
        return make();
    } catch (const ConfigError& e) {
        fail(path, e.what());
    }
}

DelayLaw parse_law(const json& j, const std::string& path)
{
    if (!j.is_object())
        fail(path, "expected a law object");
    std::string kind = member(j, "kind", path).get<std::string>();
    auto p = [&](const char* key) { return number(member(j, key, path), path + "." + key); };
    DelayLaw law = at_path(path, [&] {
        if (kind == "exponential")
            return DelayLaw::exponential(p("rate"));
        if (kind == "gamma")
            return DelayLaw::gamma(p("shape"), p("rate"));
        if (kind == "weibull")
            return DelayLaw::weibull(p("shape"), p("scale"));
        if (kind == "lognormal")
            return DelayLaw::lognormal(p("mu"), p("sigma"));
        if (kind == "atom")
            return DelayLaw::atom(p("at"));
        if (kind == "uniform")
            return DelayLaw::uniform(p("lo"), p("hi"));
        if (kind == "empirical")
            return DelayLaw::empirical(numbers(member(j, "knots", path), path + ".knots"),
                                       numbers(member(j, "cdf", path), path + ".cdf"));
        fail(path + ".kind", "unknown law '" + kind + "'");
    });
    if (auto it = j.find("atom"); it != j.end()) {
        std::string ap = path + ".atom";
        double at = number(member(*it, "at", ap), ap + ".at");
        double w = number(member(*it, "weight", ap), ap + ".weight");
        law = at_path(ap, [&] { return law.with_atom(at, w); });
    }
    return law;
}

ConditionalDelayLaw parse_conditional(const json& j, const std::string& path)
{
    if (j.is_object() && j.contains("slices")) {
        std::vector<DelayLaw> slices;
        const json& s = j["slices"];
        if (!s.is_array())
            fail(path + ".slices", "expected an array of laws");
        for (std::size_t i = 0; i < s.size(); ++i)
            slices.push_back(parse_law(s[i], path + ".slices[" + std::to_string(i) + "]"));
        auto bounds = numbers(member(j, "boundaries", path), path + ".boundaries");
        return at_path(path, [&] { return ConditionalDelayLaw::parameter_map(bounds, slices); });
    }
    return ConditionalDelayLaw::independent(parse_law(j, path));
}

RateFunction parse_rate(const json& j, const std::string& path)
{
    if (j.is_number())
        return at_path(path, [&] { return RateFunction::constant(number(j, path)); });
    if (!j.is_object() || !j.contains("segments"))
        fail(path, "expected a number or {\"segments\": [[start, rate], ...]}");
    const json& s = j["segments"];
    if (!s.is_array())
        fail(path + ".segments", "expected an array");
    std::vector<RateFunction::Segment> segs;
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::string sp = path + ".segments[" + std::to_string(i) + "]";
        auto pair = numbers(s[i], sp);
        if (pair.size() != 2)
            fail(sp, "expected [start, rate]");
        segs.push_back({pair[0], pair[1]});
    }
    return at_path(path, [&] { return RateFunction(segs); });
}

double probability(const json& j, const std::string& path)
{
    double v = number(j, path);
    if (v < 0.0 || v > 1.0)
        fail(path, "must lie in [0, 1]");
    return v;
}

void parse_contestant_laws(const json& j, ModelLaws& laws)
{
    const std::string path = "laws";
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        std::string kp = path + "." + k;
        if (k == "lambda")
            laws.lambda = parse_rate(*it, kp);
        else if (k == "alpha")
            laws.alpha = parse_rate(*it, kp);
        else if (k == "beta")
            laws.beta = probability(*it, kp);
        else if (k == "f0")
            laws.f0 = parse_law(*it, kp);
        else if (k == "g0")
            laws.g0 = parse_law(*it, kp);
        else if (k == "h0")
            laws.h0 = parse_law(*it, kp);
        else if (k == "f")
            laws.f = parse_law(*it, kp);
        else if (k == "g")
            laws.g_cond = parse_conditional(*it, kp);
        else if (k == "h")
            laws.h_cond = parse_conditional(*it, kp);
        else
            fail(kp, "unknown key");
    }
}

void parse_lmr_laws(const json& j, LmrLaws& laws)
{
    const std::string path = "laws";
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        std::string kp = path + "." + k;
        if (k == "lambda")
            laws.lambda = parse_rate(*it, kp);
        else if (k == "theta")
            laws.theta = parse_rate(*it, kp);
        else if (k == "gamma")
            laws.gamma = parse_rate(*it, kp);
        else if (k == "delta")
            laws.delta = probability(*it, kp);
        else if (k == "beta")
            laws.beta = probability(*it, kp);
        else
            fail(kp, "unknown key");
    }
}

} // namespace

std::string to_string(ExperimentKind kind)
{
    for (auto& [k, name] : kind_names)
        if (k == kind)
            return name;
    throw_internal("unknown experiment kind");
}

ExperimentKind experiment_from_string(const std::string& name)
{
    for (auto& [k, n] : kind_names)
        if (name == n)
            return k;
    throw ConfigError("unknown experiment '" + name + "'");
}

void ExperimentConfig::validate() const
{
    if (model == ModelTag::contestant)
        laws.validate();
    else
        lmr_laws.validate();
    if (n.empty())
        throw ConfigError("config n: need at least one population size");
    for (auto v : n)
        if (v < 2)
            throw ConfigError("config n: every population size must be at least 2");
    if (replications < 1)
        throw ConfigError("config replications: must be at least 1");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw ConfigError("config horizon: must be positive");
    if (!(dt > 0.0) || !(noise_dt > 0.0))
        throw ConfigError("config dt/noise_dt: must be positive");
    Grid::over(horizon, dt);
    Grid::over(horizon, noise_dt);
    if (!(w0 >= 0.0 && y0 >= 0.0 && z0 >= 0.0) || w0 + y0 + z0 > 1.0)
        throw ConfigError("config init: proportions must be nonnegative with sum <= 1");
    for (auto [t, r] : points)
        if (!(t >= 0.0 && r >= 0.0 && t <= horizon && r <= horizon))
            throw ConfigError("config points: every (t, r) must lie in [0, horizon]^2");
    if (threads < 1)
        throw ConfigError("config threads: must be at least 1");
}

ExperimentConfig default_config(ModelTag model)
{
    ExperimentConfig c;
    c.model = model;
    if (model == ModelTag::contestant) {
        c.laws.lambda = RateFunction::constant(3.0);
        c.laws.alpha = RateFunction::constant(0.4);
        c.laws.beta = 0.6;
        c.laws.f = DelayLaw::gamma(2.0, 2.0);
        c.w0 = 0.1;
        c.y0 = 0.05;
        c.z0 = 0.05;
    } else {
        c.lmr_laws.lambda = RateFunction::constant(1.5);
        c.lmr_laws.theta = RateFunction::constant(0.5);
        c.lmr_laws.gamma = RateFunction::constant(0.5);
        c.lmr_laws.delta = 0.7;
        c.lmr_laws.beta = 0.4;
        c.w0 = 0.05;
        c.y0 = 0.1;
        c.z0 = 0.05;
    }
    return c;
}

ExperimentConfig parse_config(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config: top level must be an object");
    ModelTag model = ModelTag::contestant;
    if (auto it = j.find("model"); it != j.end()) {
        std::string m = it->get<std::string>();
        if (m == "lmr")
            model = ModelTag::lmr;
        else if (m != "contestant")
            fail("model", "expected \"contestant\" or \"lmr\"");
    }
    ExperimentConfig c = default_config(model);
    try {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& k = it.key();
            const json& v = *it;
            if (k == "model")
                continue;
            if (k == "experiment")
                c.kind = experiment_from_string(v.get<std::string>());
            else if (k == "laws") {
                if (!v.is_object())
                    fail(k, "expected an object");
                if (model == ModelTag::contestant)
                    parse_contestant_laws(v, c.laws);
                else
                    parse_lmr_laws(v, c.lmr_laws);
            } else if (k == "init") {
                const char* first = model == ModelTag::contestant ? "w0" : "u0";
                for (auto f = v.begin(); f != v.end(); ++f) {
                    std::string fp = "init." + f.key();
                    if (f.key() == first)
                        c.w0 = number(*f, fp);
                    else if (f.key() == "y0")
                        c.y0 = number(*f, fp);
                    else if (f.key() == "z0")
                        c.z0 = number(*f, fp);
                    else
                        fail(fp, "unknown key");
                }
            } else if (k == "n") {
                c.n.clear();
                if (v.is_number_integer())
                    c.n.push_back(v.get<std::int64_t>());
                else if (v.is_array())
                    for (const json& e : v)
                        c.n.push_back(e.get<std::int64_t>());
                else
                    fail(k, "expected an integer or an array of integers");
            } else if (k == "replications")
                c.replications = v.get<int>();
            else if (k == "horizon")
                c.horizon = number(v, k);
            else if (k == "dt")
                c.dt = number(v, k);
            else if (k == "noise_dt")
                c.noise_dt = number(v, k);
            else if (k == "points") {
                c.points.clear();
                for (std::size_t i = 0; i < v.size(); ++i) {
                    auto pr = numbers(v[i], "points[" + std::to_string(i) + "]");
                    if (pr.size() != 2)
                        fail("points[" + std::to_string(i) + "]", "expected [t, r]");
                    c.points.emplace_back(pr[0], pr[1]);
                }
            } else if (k == "seed")
                c.seed = v.get<std::uint64_t>();
            else if (k == "out")
                c.out_dir = v.get<std::string>();
            else if (k == "threads")
                c.threads = v.get<int>();
            else if (k == "write_logs")
                c.write_logs = v.get<bool>();
            else
                fail(k, "unknown key");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: wrong value type: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::array<std::int64_t, 3> initial_counts(const ExperimentConfig& cfg, std::int64_t n)
{
    auto count = [&](double p) { return static_cast<std::int64_t>(std::floor(p * static_cast<double>(n) + 1e-9)); };
    return {count(cfg.w0), count(cfg.y0), count(cfg.z0)};
}

} // namespace rumor::harness
