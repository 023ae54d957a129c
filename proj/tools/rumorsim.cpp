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
#include "rumor/harness/config.hpp"
#include "rumor/harness/experiments.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <optional>

namespace
{

using namespace rumor::harness;

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<int> threads;
    std::string model;
};

int execute(ExperimentKind kind, const Options& opt)
{
    ExperimentConfig cfg;
    if (!opt.config.empty()) {
        cfg = load_config(opt.config);
    } else {
        cfg = default_config(opt.model == "lmr" ? rumor::ModelTag::lmr : rumor::ModelTag::contestant);
    }
    cfg.kind = kind;
    if (opt.seed)
        cfg.seed = *opt.seed;
    if (!opt.out.empty())
        cfg.out_dir = opt.out;
    if (opt.threads)
        cfg.threads = *opt.threads;
    StatReport rep = run(cfg);
    rep.write_text(std::cout);
    return rep.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Simulation and limit-theorem verification for non-Markovian rumor models"};
    app.require_subcommand(1);
    Options opt;
    const ExperimentKind kinds[] = {ExperimentKind::simulate,        ExperimentKind::flln,
                                    ExperimentKind::fclt_cov,        ExperimentKind::verify_thinning,
                                    ExperimentKind::verify_flln,     ExperimentKind::verify_fclt,
                                    ExperimentKind::estimate_qb,     ExperimentKind::estimate_qc};
    std::optional<ExperimentKind> chosen;
    for (ExperimentKind k : kinds) {
        CLI::App* sub = app.add_subcommand(to_string(k), "run the " + to_string(k) + " experiment");
        sub->add_option("--config", opt.config, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "override the configured seed");
        sub->add_option("--out", opt.out, "output directory");
        sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--model", opt.model, "model used when no config is given")
            ->check(CLI::IsMember({"contestant", "lmr"}));
        sub->callback([&chosen, k] { chosen = k; });
    }
    CLI11_PARSE(app, argc, argv);
    try {
        return execute(*chosen, opt);
    } catch (const rumor::ConfigError& e) {
        std::cerr << "rumorsim: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "rumorsim: " << e.what() << '\n';
        return 3;
    }
}
