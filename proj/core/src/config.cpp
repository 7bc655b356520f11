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

#include "rct/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "rct/error.hpp"

namespace rct {

namespace {

[[noreturn]] void config_error(const std::string& what) { fail(ErrorCode::Config, what); }

void check_keys(const YAML::Node& node, const std::string& section, const std::set<std::string>& allowed)
{
    if (!node)
        return;
    if (!node.IsMap())
        config_error("section '" + section + "' must be a map");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key))
            config_error("unknown key '" + key + "' in section '" + section + "'");
    }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out, const std::string& section)
{
    if (!node || !node[key])
        return;
    try {
        out = node[key].as<T>();
    } catch (const YAML::Exception&) {
        config_error("bad value for '" + section + "." + key + "'");
    }
}

std::string read_enum(const YAML::Node& node, const char* key, const std::string& section,
                      const std::set<std::string>& choices, const std::string& fallback)
{
    std::string v = fallback;
    read(node, key, v, section);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (!choices.count(v))
        config_error("invalid value '" + v + "' for '" + section + "." + key + "'");
    return v;
}

ChannelSpec read_channel(const YAML::Node& node, const std::string& section)
{
    ChannelSpec spec;
    if (!node)
        return spec;
    check_keys(node, section, {"model", "paths"});
    const std::string model = read_enum(node, "model", section, {"pas", "identity"}, "pas");
    spec.identity = model == "identity";
    if (node["paths"]) {
        const YAML::Node paths = node["paths"];
        if (!paths.IsSequence())
            config_error("'" + section + ".paths' must be a list");
        spec.paths.clear();
        for (const auto& p : paths) {
            check_keys(p, section + ".paths[]", {"center_deg", "spread_deg"});
            PathSpec ps;
            read(p, "center_deg", ps.center_deg, section + ".paths[]");
            read(p, "spread_deg", ps.spread_deg, section + ".paths[]");
            spec.paths.push_back(ps);
        }
    }
    return spec;
}

} // namespace

void ExperimentConfig::validate() const
{
    const auto check = [](bool ok, const std::string& what) {
        if (!ok)
            config_error(what);
    };
    check(antennas >= 1, "array.antennas must be >= 1");
    check(tau >= 1, "training.tau must be >= 1");
    check(pilots >= 1 && pilots <= tau, "training.pilots must lie in [1, tau]");
    check(std::isfinite(p_L_dbm) && std::isfinite(p_E_dbm) && std::isfinite(p_B_dbm), "powers must be finite");
    check(sigma_t2 > 0.0, "training.sigma_T2 must be positive");
    check(sigma_L2 > 0.0 && sigma_E2 > 0.0, "downlink noise powers must be positive");
    check(eta > 0.0 && eta < 1.0, "detection.eta must lie in (0, 1)");
    check(trials >= 1, "experiment.trials must be >= 1");
    check(workers >= 1, "experiment.workers must be >= 1");
    if (attack == AttackKind::PSA) {
        check(K >= 1 && K <= pilots, "attack.K must lie in [1, pilots]");
        check(condition != AttackCondition::Miss || K < pilots, "a miss needs K < pilots");
        if (!fixed_subset.empty()) {
            check(static_cast<int>(fixed_subset.size()) == K, "attack.subset size must equal K");
            for (int n : fixed_subset)
                check(n >= 0 && n < pilots, "attack.subset index out of range");
        }
        if (beta)
            check(*beta >= 0.0, "attack.beta must be non-negative");
    }
    for (const auto* spec : {&lu, &eve})
        if (!spec->identity) {
            check(!spec->paths.empty(), "channel needs at least one path");
            for (const auto& p : spec->paths)
                check(p.spread_deg >= 0.0 && std::abs(p.center_deg) <= 90.0, "path angles out of range");
        }
    if (!sweep_variable.empty()) {
        const auto& names = sweep_variables();
        check(std::find(names.begin(), names.end(), sweep_variable) != names.end(),
              "unknown sweep variable '" + sweep_variable + "'");
    }
}

TrainingParams ExperimentConfig::training_params() const
{
    TrainingParams p;
    p.tau = tau;
    p.p_L = dbm_to_watts(p_L_dbm);
    p.sigma_t2 = sigma_t2;
    if (attack == AttackKind::None)
        p.p_E = 0.0;
    else if (attack == AttackKind::PSA && beta)
        p.p_E = (*beta) * (*beta) * K * p.p_L;
    else
        p.p_E = dbm_to_watts(p_E_dbm);
    return p;
}

const std::vector<std::string>& sweep_variables()
{
    static const std::vector<std::string> names{"p_E_dbm", "p_B_dbm", "p_L_dbm", "K", "antennas",
                                                "tau",     "pilots",  "eta",     "eve_center_deg"};
    return names;
}

ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, const std::string& variable, double value)
{
    ExperimentConfig out = cfg;
    const auto as_int = [&](const char* name) {
        const double r = std::round(value);
        if (std::abs(r - value) > 1e-9)
            config_error(std::string("sweep values for '") + name + "' must be integers");
        return static_cast<int>(r);
    };
    if (variable == "p_E_dbm")
        out.p_E_dbm = value;
    else if (variable == "p_B_dbm")
        out.p_B_dbm = value;
    else if (variable == "p_L_dbm")
        out.p_L_dbm = value;
    else if (variable == "K")
        out.K = as_int("K");
    else if (variable == "antennas")
        out.antennas = as_int("antennas");
    else if (variable == "tau")
        out.tau = as_int("tau");
    else if (variable == "pilots")
        out.pilots = as_int("pilots");
    else if (variable == "eta")
        out.eta = value;
    else if (variable == "eve_center_deg") {
        if (out.eve.identity || out.eve.paths.empty())
            config_error("eve_center_deg sweep needs a PAS Eve channel");
        out.eve.paths.front().center_deg = value;
    } else
        config_error("unknown sweep variable '" + variable + "'");
    return out;
}

ExperimentConfig parse_config(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        config_error(std::string("YAML parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    if (!root || root.IsNull())
        return cfg;
    check_keys(root, "<root>",
               {"array", "training", "attack", "channels", "downlink", "detection", "experiment"});

    const YAML::Node array = root["array"];
    check_keys(array, "array", {"antennas"});
    read(array, "antennas", cfg.antennas, "array");

    const YAML::Node training = root["training"];
    check_keys(training, "training", {"tau", "pilots", "p_L_dbm", "sigma_T2"});
    read(training, "tau", cfg.tau, "training");
    cfg.pilots = cfg.tau;
    read(training, "pilots", cfg.pilots, "training");
    read(training, "p_L_dbm", cfg.p_L_dbm, "training");
    read(training, "sigma_T2", cfg.sigma_t2, "training");

    const YAML::Node attack = root["attack"];
    check_keys(attack, "attack",
               {"kind", "K", "selection", "subset", "condition", "p_E_dbm", "beta", "zero_phases"});
    const std::string kind = read_enum(attack, "kind", "attack", {"none", "psa", "pja"}, "psa");
    cfg.attack = kind == "none" ? AttackKind::None : kind == "psa" ? AttackKind::PSA : AttackKind::PJA;
    read(attack, "K", cfg.K, "attack");
    const std::string selection = read_enum(attack, "selection", "attack", {"random", "fixed"}, "random");
    if (selection == "fixed") {
        read(attack, "subset", cfg.fixed_subset, "attack");
        if (cfg.fixed_subset.empty())
            config_error("attack.selection 'fixed' needs attack.subset");
    } else if (attack && attack["subset"]) {
        config_error("attack.subset requires selection 'fixed'");
    }
    const std::string cond = read_enum(attack, "condition", "attack", {"random", "hit", "miss"}, "random");
    cfg.condition = cond == "hit" ? AttackCondition::Hit : cond == "miss" ? AttackCondition::Miss
                                                                         : AttackCondition::Random;
    read(attack, "p_E_dbm", cfg.p_E_dbm, "attack");
    if (attack && attack["beta"]) {
        double b = 0.0;
        read(attack, "beta", b, "attack");
        cfg.beta = b;
    }
    read(attack, "zero_phases", cfg.zero_phases, "attack");

    const YAML::Node channels = root["channels"];
    check_keys(channels, "channels", {"lu", "eve"});
    if (channels) {
        cfg.lu = read_channel(channels["lu"], "channels.lu");
        cfg.eve = read_channel(channels["eve"], "channels.eve");
    }

    const YAML::Node downlink = root["downlink"];
    check_keys(downlink, "downlink", {"p_B_dbm", "sigma_L2", "sigma_E2"});
    read(downlink, "p_B_dbm", cfg.p_B_dbm, "downlink");
    read(downlink, "sigma_L2", cfg.sigma_L2, "downlink");
    read(downlink, "sigma_E2", cfg.sigma_E2, "downlink");

    const YAML::Node detection = root["detection"];
    check_keys(detection, "detection", {"eta", "detector", "prescreen", "prescreen_threshold"});
    read(detection, "eta", cfg.eta, "detection");
    const std::string det = read_enum(detection, "detector", "detection",
                                      {"llr", "power", "gllr", "distance", "pja", "resolve"}, "resolve");
    cfg.detector = det == "llr"        ? EdrDetector::Llr
                   : det == "power"    ? EdrDetector::Power
                   : det == "gllr"     ? EdrDetector::Gllr
                   : det == "distance" ? EdrDetector::Distance
                   : det == "pja"      ? EdrDetector::Pja
                                       : EdrDetector::Resolve;
    const std::string pre = read_enum(detection, "prescreen", "detection", {"genie", "threshold"}, "genie");
    cfg.prescreen = pre == "genie" ? PrescreenMode::Genie : PrescreenMode::Threshold;
    if (detection && detection["prescreen_threshold"]) {
        double t = 0.0;
        read(detection, "prescreen_threshold", t, "detection");
        cfg.prescreen_threshold = t;
    }

    const YAML::Node experiment = root["experiment"];
    check_keys(experiment, "experiment",
               {"trials", "seed", "workers", "clamp_rates", "design", "beamformer", "sweep"});
    read(experiment, "trials", cfg.trials, "experiment");
    read(experiment, "seed", cfg.seed, "experiment");
    read(experiment, "workers", cfg.workers, "experiment");
    read(experiment, "clamp_rates", cfg.clamp_rates, "experiment");
    const std::string design =
        read_enum(experiment, "design", "experiment", {"proposed", "conventional"}, "proposed");
    cfg.design = design == "proposed" ? SchemeDesign::Proposed : SchemeDesign::Conventional;
    const std::string beam =
        read_enum(experiment, "beamformer", "experiment", {"optimal", "lowcomplexity"}, "optimal");
    cfg.beamformer = beam == "optimal" ? BeamChoice::Optimal : BeamChoice::LowComplexity;
    if (experiment && experiment["sweep"]) {
        const YAML::Node sweep = experiment["sweep"];
        check_keys(sweep, "experiment.sweep", {"variable", "values"});
        read(sweep, "variable", cfg.sweep_variable, "experiment.sweep");
        read(sweep, "values", cfg.sweep_values, "experiment.sweep");
        if (cfg.sweep_variable.empty())
            config_error("experiment.sweep needs a variable");
    }

    cfg.validate();
    for (double v : cfg.sweep_values)
        with_sweep_value(cfg, cfg.sweep_variable, v).validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::Io, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace rct
