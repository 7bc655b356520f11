// SPDX-License-Identifier: Apache-2.0
//
// rctsec: randomized uplink pilot training against pilot spoofing and jamming
// Copyright (C) 2026 The rctsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// rctsim: command-line front end for the experiment harness and the
// analytic helpers.
//
// Exit status: 0 success, 2 configuration or usage error, 3 numerical
// failure, 1 anything else (I/O and the like).

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rct/config.hpp"
#include "rct/detection.hpp"
#include "rct/error.hpp"
#include "rct/harness.hpp"
#include "rct/quadform.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunArgs {
    std::string config;
    std::string out;
    std::string dump;
    std::optional<long long> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
};

void add_run_options(CLI::App* cmd, RunArgs& a)
{
    cmd->add_option("config", a.config, "YAML experiment file")->required();
    cmd->add_option("-o,--out", a.out, "summary CSV path (default: stdout)");
    cmd->add_option("--dump-trials", a.dump, "write one CSV row per trial to this path");
    cmd->add_option("--trials", a.trials, "override experiment.trials");
    cmd->add_option("--seed", a.seed, "override experiment.seed");
    cmd->add_option("--workers", a.workers, "override experiment.workers");
}

int run_experiment(const RunArgs& a, bool secrecy)
{
    rct::ExperimentConfig cfg = rct::load_config(a.config);
    if (a.trials)
        cfg.trials = *a.trials;
    if (a.seed)
        cfg.seed = *a.seed;
    if (a.workers)
        cfg.workers = *a.workers;
    cfg.validate();

    rct::RunOptions opts;
    opts.keep_records = !a.dump.empty();
    const rct::Summary s = secrecy ? rct::run_secrecy_trials(cfg, opts) : rct::run_edr_trials(cfg, opts);
    if (a.out.empty())
        rct::write_csv(s, std::cout);
    else
        rct::emit_results(s, a.out);
    if (!a.dump.empty())
        rct::emit_trial_dump(s, a.dump);
    return 0;
}

int run_quadform(const std::vector<double>& eig, double t, double tol, int max_terms)
{
    const rct::SpectrumDecomposition spec = rct::spectrum_from_eigenvalues(eig);
    const rct::TailResult r = rct::quadform_tail(spec, t, rct::QuadformOptions{tol, max_terms});
    std::printf("tail,lower,error_bound,terms_positive,terms_negative\n%.17g,%.17g,%.3g,%d,%d\n", r.tail, r.lower,
                r.error_bound, r.terms_positive, r.terms_negative);
    return 0;
}

int run_threshold(const std::string& kind, int M, double sigma_z2, double eta)
{
    const rct::ThresholdSpec th =
        kind == "psa" ? rct::psa_threshold(M, sigma_z2, eta) : rct::pja_threshold(M, sigma_z2, eta);
    std::printf("attack,antennas,sigma_z2,eta,epsilon\n%s,%d,%.17g,%.17g,%.17g\n", kind.c_str(), M, sigma_z2,
                th.eta, th.epsilon);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Randomized pilot training simulator"};
    app.require_subcommand(1);

    RunArgs edr_args;
    CLI::App* edr = app.add_subcommand("edr", "Monte Carlo error decision rate");
    add_run_options(edr, edr_args);

    RunArgs sec_args;
    CLI::App* sec = app.add_subcommand("secrecy", "Monte Carlo secrecy and link rates");
    add_run_options(sec, sec_args);

    std::vector<double> eig;
    double t = 0.0;
    double tol = 1e-10;
    int max_terms = 500;
    CLI::App* qf = app.add_subcommand("quadform", "P{x^H Omega x >= t} for x ~ CN(0, I) from eigenvalues of Omega");
    qf->add_option("--eig", eig, "eigenvalues (comma separated)")->required()->delimiter(',');
    qf->add_option("-t,--threshold", t, "threshold t");
    qf->add_option("--tol", tol, "truncation error target");
    qf->add_option("--max-terms", max_terms, "series length cap per side");

    std::string kind;
    int M = 0;
    double sigma_z2 = 0.0;
    double eta = 1e-3;
    CLI::App* th = app.add_subcommand("threshold", "decision threshold for the distance rules");
    th->add_option("kind", kind, "psa or pja")->required()->check(CLI::IsMember({"psa", "pja"}));
    th->add_option("-M,--antennas", M, "number of antennas")->required();
    th->add_option("--sigma-z2", sigma_z2, "observation noise variance")->required();
    th->add_option("--eta", eta, "target false-split probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*edr)
            return run_experiment(edr_args, false);
        if (*sec)
            return run_experiment(sec_args, true);
        if (*qf)
            return run_quadform(eig, t, tol, max_terms);
        if (*th)
            return run_threshold(kind, M, sigma_z2, eta);
    } catch (const rct::Error& e) {
        std::cerr << "rctsim: " << e.what() << '\n';
        if (e.code() == rct::ErrorCode::Config)
            return kExitConfig;
        if (e.is_numerical())
            return kExitNumerical;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "rctsim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
