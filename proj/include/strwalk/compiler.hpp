// Copyright 2026 The strwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Circuit -> rewriting instance (s, t, t', m, ell, d, c, epsilon).
 */

#pragma once

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include "strwalk/layout.hpp"
#include "strwalk/rewriting_json.hpp"
#include "strwalk/rule_generation.hpp"
#include "strwalk/spectral.hpp"

namespace strwalk {

inline constexpr const char *kClockGenerator = "clock-transitions";

struct CompiledInstance {
    std::shared_ptr<const RewritingSystem> system;
    /// Set when the system is the generated clock relation rather than a loaded rule list.
    std::optional<SwapPolicy> generator;
    Word s, t, t_prime;
    std::size_t m = 0;
    std::size_t ell = 0;
    int d_parity = 0;
    double c = 1.0;
    double epsilon = 0.0;
    std::size_t block = 0;
    std::string m_mode;
};

struct CompileOptions {
    MMode m_mode = MMode::Paper;
    SwapPolicy policy = SwapPolicy::Aligned;
    std::size_t margin = kDefaultMargin;
    unsigned threads = 0;
};

struct Compilation {
    CompiledInstance instance;
    Layout layout;
    ControlRun run;
    BoundaryStrings strings;
    ExactAmplitude overlap;
};

inline std::shared_ptr<const RewritingSystem> clock_system(SwapPolicy policy = SwapPolicy::Aligned,
                                                           unsigned threads = 0) {
    const auto &rules = clock_rules(policy, threads);
    return std::shared_ptr<const RewritingSystem>(&rules.system, [](const RewritingSystem *) {});
}

inline double instance_scale(std::size_t ell) {
    return std::sqrt(2.0) * static_cast<double>(eigenvalue(ell, 0));
}

inline double instance_gap(std::size_t ell) {
    return static_cast<double>(weight(ell, 0)) / (3.0 * std::sqrt(2.0));
}

inline Compilation compile(const Circuit &circuit, const std::vector<bool> &x, const CompileOptions &opt = {}) {
    Compilation out;
    out.layout = layout(circuit, x, opt.margin);
    out.run = control_simulate(out.layout);
    out.strings = build_strings(out.layout, out.run);
    out.overlap = overlap(circuit, x);

    auto &inst = out.instance;
    inst.system = clock_system(opt.policy, opt.threads);
    inst.generator = opt.policy;
    inst.s = to_word(out.strings.omega0);
    inst.t = to_word(out.strings.alpha1);
    inst.t_prime = to_word(out.strings.alpha0);
    inst.ell = out.run.ell;
    inst.d_parity = out.run.d_parity;
    inst.m = choose_m(inst.ell, opt.m_mode);
    inst.m_mode = m_mode_name(opt.m_mode);
    if (!parity_ok(inst.ell, inst.m)) {
        throw std::logic_error("chosen m has the same parity as ell");
    }
    inst.c = instance_scale(inst.ell);
    inst.epsilon = instance_gap(inst.ell);
    inst.block = out.layout.block;
    return out;
}

/// Compact system form: the clock relation is regenerated on load.
inline Json generator_json(const RewritingSystem &sys, SwapPolicy policy) {
    return Json{{"alphabet", sys.alphabet().tokens()},
                {"window", sys.window()},
                {"generator", kClockGenerator},
                {"swap_policy", swap_policy_name(policy)},
                {"rule_count", sys.rule_count()}};
}

namespace detail {

inline Json instance_fields(const CompiledInstance &inst) {
    const auto &a = inst.system->alphabet();
    Json j;
    j["s"] = word_to_json(a, inst.s);
    j["t"] = word_to_json(a, inst.t);
    j["t_prime"] = word_to_json(a, inst.t_prime);
    j["m"] = inst.m;
    j["ell"] = inst.ell;
    j["d_parity"] = inst.d_parity;
    j["c"] = inst.c;
    j["epsilon"] = inst.epsilon;
    j["block"] = inst.block;
    if (!inst.m_mode.empty()) {
        j["m_mode"] = inst.m_mode;
    }
    return j;
}

}  // namespace detail

/// Instance document. The clock relation is written in compact generator form
/// unless `embed_rules` is set (hundreds of MB for the 224-symbol alphabet).
inline Json instance_to_json(const CompiledInstance &inst, bool embed_rules = false) {
    Json j = detail::instance_fields(inst);
    if (inst.generator && !embed_rules) {
        j["system"] = generator_json(*inst.system, *inst.generator);
    } else {
        j["system"] = system_to_json(*inst.system);
    }
    return j;
}

/// Writes the instance; with `embed_rules` the rule list is streamed.
inline void write_instance(std::ostream &out, const CompiledInstance &inst, bool embed_rules = false) {
    if (!embed_rules || !inst.generator) {
        out << instance_to_json(inst, embed_rules).dump(2) << "\n";
        return;
    }
    Json fields = detail::instance_fields(inst);
    out << "{\"system\":";
    write_system_json(out, *inst.system);
    for (auto it = fields.begin(); it != fields.end(); ++it) {
        out << "," << Json(it.key()).dump() << ":" << it.value().dump();
    }
    out << "}\n";
}

inline CompiledInstance instance_from_json(const Json &j, unsigned threads = 0) {
    if (!j.is_object() || !j.contains("system") || !j.contains("s") || !j.contains("t") || !j.contains("t_prime")) {
        throw std::invalid_argument("instance needs 'system', 's', 't' and 't_prime'");
    }
    CompiledInstance inst;
    const Json &sj = j.at("system");
    if (sj.contains("generator")) {
        if (sj.at("generator") != kClockGenerator) {
            throw std::invalid_argument("unknown rule generator " + sj.at("generator").dump());
        }
        SwapPolicy policy = parse_swap_policy(sj.value("swap_policy", std::string("aligned")));
        inst.system = clock_system(policy, threads);
        inst.generator = policy;
        if (sj.contains("rule_count") && sj.at("rule_count").get<std::size_t>() != inst.system->rule_count()) {
            throw std::invalid_argument("regenerated clock relation has " + std::to_string(inst.system->rule_count()) +
                                        " rules, instance records " + sj.at("rule_count").dump());
        }
    } else {
        inst.system = std::make_shared<const RewritingSystem>(system_from_json(sj));
    }
    const auto &a = inst.system->alphabet();
    inst.s = word_from_json(a, j.at("s"));
    inst.t = word_from_json(a, j.at("t"));
    inst.t_prime = word_from_json(a, j.at("t_prime"));
    if (inst.s.size() != inst.t.size() || inst.s.size() != inst.t_prime.size()) {
        throw std::invalid_argument("s, t and t_prime must have equal length");
    }
    inst.m = j.value("m", std::size_t{0});
    inst.ell = j.value("ell", std::size_t{0});
    inst.d_parity = j.value("d_parity", 0);
    inst.c = j.value("c", 1.0);
    inst.epsilon = j.value("epsilon", 0.0);
    inst.block = j.value("block", std::size_t{0});
    inst.m_mode = j.value("m_mode", std::string());
    return inst;
}

inline CompiledInstance load_instance(const std::string &path, unsigned threads = 0) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open instance file '" + path + "'");
    }
    Json j = Json::parse(in);
    return instance_from_json(j, threads);
}

}  // namespace strwalk
