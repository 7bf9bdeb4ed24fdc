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

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "strwalk/strwalk.hpp"

using namespace strwalk;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit : int { kPositive = 0, kNegative = 1, kParse = 2, kResource = 3, kZero = 4 };

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    unsigned threads = 0;
    std::size_t vertex_budget = WalkLimits{}.max_vertex_steps;
    int schema_version = kSchemaVersion;
};

struct Result {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    bool passed = true;
};

int emit(const Result &r, double seconds, int code) {
    Json j{{"schema", kSchemaVersion},
           {"command", r.command},
           {"inputs", r.inputs},
           {"outputs", r.outputs},
           {"timings", {{"total_s", seconds}}},
           {"passed", r.passed}};
    std::cout << j.dump(2) << "\n";
    return code;
}

CompiledInstance read_instance(const std::string &path, unsigned threads) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open instance file '" + path + "'");
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ParseFailure(std::string("instance is not valid JSON: ") + e.what());
    }
    try {
        return instance_from_json(j, threads);
    } catch (const std::invalid_argument &e) {
        throw ParseFailure(e.what());
    } catch (const Json::exception &e) {
        throw ParseFailure(e.what());
    }
}

Circuit read_circuit(const std::string &path) {
    try {
        Circuit c = load_circuit(path);
        require_valid(c);
        return c;
    } catch (const std::invalid_argument &e) {
        throw ParseFailure(e.what());
    }
}

std::vector<bool> read_bits(const std::string &bits) {
    try {
        return parse_bits(bits);
    } catch (const std::invalid_argument &e) {
        throw ParseFailure(e.what());
    }
}

int decision(int sign) {
    return sign > 0 ? kPositive : sign < 0 ? kNegative : kZero;
}

struct CompileArgs {
    std::string circuit, input, m_mode = "paper", output, policy = "aligned";
    bool embed_rules = false;
};

int cmd_compile(const CompileArgs &a, const Globals &g, Result &r) {
    r.inputs = {{"circuit", a.circuit}, {"input", a.input}, {"m_mode", a.m_mode}, {"swap_policy", a.policy}};
    Circuit c = read_circuit(a.circuit);
    auto x = read_bits(a.input);
    CompileOptions opt;
    try {
        opt.m_mode = parse_m_mode(a.m_mode);
        opt.policy = parse_swap_policy(a.policy);
    } catch (const std::invalid_argument &e) {
        throw ParseFailure(e.what());
    }
    opt.threads = g.threads;
    Compilation comp;
    try {
        comp = compile(c, x, opt);
    } catch (const std::logic_error &e) {
        r.passed = false;
        r.outputs = {{"error", e.what()}};
        return kResource;
    }
    const auto &inst = comp.instance;
    if (!a.output.empty()) {
        std::ofstream out(a.output);
        if (!out) {
            throw std::runtime_error("cannot write '" + a.output + "'");
        }
        write_instance(out, inst, a.embed_rules);
    }
    r.outputs = {{"ell", inst.ell},
                 {"m", inst.m},
                 {"c", inst.c},
                 {"epsilon", inst.epsilon},
                 {"d_parity", inst.d_parity},
                 {"length", comp.layout.length},
                 {"alphabet_size", inst.system->alphabet().size()},
                 {"window", inst.system->window()},
                 {"rule_count", inst.system->rule_count()},
                 {"overlap", comp.overlap.str()},
                 {"overlap_value", comp.overlap.to_double()},
                 {"layout", comp.layout.picture()}};
    if (!a.output.empty()) {
        r.outputs["instance"] = a.output;
    }
    return 0;
}

struct DeltaArgs {
    std::string instance;
    std::optional<std::size_t> steps;
    bool scaled = false;
};

int cmd_delta(const DeltaArgs &a, const Globals &g, Result &r) {
    CompiledInstance inst = read_instance(a.instance, g.threads);
    const std::size_t n = a.steps.value_or(inst.m);
    r.inputs = {{"instance", a.instance}, {"steps", n}, {"mode", a.scaled ? "scaled" : "exact"}};
    WalkLimits limits;
    limits.max_vertex_steps = g.vertex_budget;
    int sign = 0;
    try {
        if (a.scaled) {
            auto d = delta_scaled(*inst.system, inst.s, inst.t, inst.t_prime, n, inst.c, limits);
            sign = d.value > 0 ? 1 : d.value < 0 ? -1 : 0;
            if (std::fabs(d.value) <= d.relative_error_bound) {
                sign = 0;
            }
            r.outputs = {{"delta_scaled", d.value},
                         {"c", inst.c},
                         {"relative_error_bound", d.relative_error_bound},
                         {"sign", sign}};
        } else {
            BigInt d = delta(*inst.system, inst.s, inst.t, inst.t_prime, n, limits);
            sign = d.sign();
            r.outputs = {{"delta", d.str()}, {"sign", sign}};
        }
    } catch (const BudgetExceeded &e) {
        r.passed = false;
        r.outputs = {{"error", e.what()}};
        return kResource;
    } catch (const std::range_error &e) {
        r.passed = false;
        r.outputs = {{"error", e.what()}};
        return kResource;
    }
    r.outputs["decision"] = sign > 0 ? "positive" : sign < 0 ? "negative" : "zero";
    return decision(sign);
}

struct VerifyArgs {
    std::string instance, circuit, input;
    std::optional<std::size_t> max_steps;
};

int cmd_verify(const VerifyArgs &a, const Globals &g, Result &r) {
    r.inputs = {{"instance", a.instance}, {"circuit", a.circuit}, {"input", a.input}};
    CompiledInstance inst = read_instance(a.instance, g.threads);
    Circuit c = read_circuit(a.circuit);
    auto x = read_bits(a.input);
    CompileOptions opt;
    opt.policy = inst.generator.value_or(SwapPolicy::Aligned);
    opt.threads = g.threads;
    Compilation comp;
    try {
        comp = compile(c, x, opt);
    } catch (const std::logic_error &e) {
        r.passed = false;
        r.outputs = {{"error", e.what()}};
        return kResource;
    }
    VerifyOptions vo;
    vo.max_steps = a.max_steps;
    vo.max_vertex_steps = std::min(vo.max_vertex_steps, g.vertex_budget);
    if (a.max_steps) {
        r.inputs["max_steps"] = *a.max_steps;
    }
    auto report = verify(comp, inst, vo);
    r.outputs = report.to_json();
    r.passed = report.passed();
    return r.passed ? 0 : 1;
}

struct SpectralArgs {
    std::size_t ell = 2, m = 1;
};

int cmd_spectral(const SpectralArgs &a, Result &r) {
    r.inputs = {{"ell", a.ell}, {"m", a.m}};
    if (a.ell < 2) {
        throw ParseFailure("--ell must be at least 2");
    }
    PathSpectrum ps(a.ell);
    auto sum = ps.sum(a.m);
    BigInt exact = corner_exact(a.ell, a.m);
    r.outputs = {{"corner", exact.str()},
                 {"spectral_sum", static_cast<double>(sum.value)},
                 {"spectral_scale", static_cast<double>(sum.scale)},
                 {"high_precision", sum.high_precision},
                 {"lambda0", static_cast<double>(ps.lambda0())},
                 {"lambda1", static_cast<double>(ps.lambda1())},
                 {"w0", static_cast<double>(ps.w0())},
                 {"c", instance_scale(a.ell)},
                 {"epsilon", instance_gap(a.ell)},
                 {"parity_ok", parity_ok(a.ell, a.m)},
                 {"m_modes",
                  {{"paper", choose_m(a.ell, MMode::Paper)},
                   {"minimal", choose_m(a.ell, MMode::Minimal)},
                   {"sign_only", choose_m(a.ell, MMode::SignOnly)}}}};
    if (parity_ok(a.ell, a.m) && a.m + 1 >= a.ell) {
        auto b = bounds(a.ell, a.m);
        r.outputs["bounds"] = {{"log_upper", static_cast<double>(b.log_upper)},
                               {"log_lower", static_cast<double>(b.log_lower)},
                               {"lower_valid", b.lower_valid}};
    } else {
        r.outputs["bounds"] = nullptr;
    }
    return 0;
}

struct EstimateArgs {
    std::string instance;
    double eta = 0, theta = 0, confidence = 0.95;
    std::uint64_t samples = 100000, seed = 1;
    std::optional<std::size_t> m;
};

int cmd_estimate(const EstimateArgs &a, const Globals &g, Result &r) {
    if (!(a.confidence > 0 && a.confidence < 1)) {
        throw ParseFailure("--confidence must lie in (0, 1)");
    }
    CompiledInstance inst = read_instance(a.instance, g.threads);
    const std::size_t m = a.m.value_or(inst.m);
    r.inputs = {{"instance", a.instance}, {"eta", a.eta},         {"theta", a.theta},
                {"samples", a.samples},   {"seed", a.seed},       {"confidence", a.confidence},
                {"m", m}};
    InstanceMeasures im;
    try {
        im = instance_measures(inst);
    } catch (const std::length_error &e) {
        r.passed = false;
        r.outputs = {{"error", e.what()}};
        return kResource;
    }
    SamplerOptions so;
    so.seed = a.seed;
    so.delta = 1 - a.confidence;
    so.threads = g.threads == 0 ? default_threads() : g.threads;
    NoisyEstimate est;
    try {
        est = noisy_estimate(im.plus, im.minus, m, inst.c, {a.eta, a.theta}, a.samples, so);
    } catch (const std::invalid_argument &e) {
        throw ParseFailure(e.what());
    }
    const double exact = exact_scaled_difference(im.plus, im.minus, m, inst.c);
    r.outputs = {{"estimate_scaled", est.estimate},
                 {"exact_scaled", exact},
                 {"mean_plus", est.mean_plus},
                 {"mean_minus", est.mean_minus},
                 {"bias_bound_scaled", est.bias_bound},
                 {"half_width_scaled", est.half_width},
                 {"bound_scaled", est.bound()},
                 {"c", inst.c},
                 {"reachable_vertices", im.graph.size()}};
    r.passed = std::fabs(est.estimate - exact) <= est.bound();
    r.outputs["within_bound"] = r.passed;
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"String-rewriting walk counting instances compiled from quantum circuits"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--vertex-budget", g.vertex_budget, "Vertex-step budget for walk counting");
    app.add_option("--schema-version", g.schema_version, "Output schema version (only 1)");

    CompileArgs ca;
    auto *compile_cmd = app.add_subcommand("compile", "Compile a circuit into a rewriting instance");
    compile_cmd->add_option("--circuit", ca.circuit, "Circuit file")->required();
    compile_cmd->add_option("--input", ca.input, "Input bits, qubit 0 first")->required();
    compile_cmd->add_option("--m-mode", ca.m_mode, "paper, minimal or sign_only");
    compile_cmd->add_option("--swap-policy", ca.policy, "aligned or literal");
    compile_cmd->add_option("-o,--output", ca.output, "Instance JSON file");
    compile_cmd->add_flag("--embed-rules", ca.embed_rules, "Write the full rule list instead of the generator");

    DeltaArgs da;
    auto *delta_cmd = app.add_subcommand("delta", "Walk-count difference Delta(n)");
    delta_cmd->add_option("--instance", da.instance, "Instance JSON file")->required();
    delta_cmd->add_option("--steps", da.steps, "n (default: the instance m)");
    auto *exact_flag = delta_cmd->add_flag("--exact", "Exact integer (default)");
    delta_cmd->add_flag("--scaled", da.scaled, "Floating Delta / c^n")->excludes(exact_flag);

    VerifyArgs va;
    auto *verify_cmd = app.add_subcommand("verify", "Verify an instance against its circuit");
    verify_cmd->add_option("--instance", va.instance, "Instance JSON file")->required();
    verify_cmd->add_option("--circuit", va.circuit, "Circuit file")->required();
    verify_cmd->add_option("--input", va.input, "Input bits")->required();
    verify_cmd->add_option("--max-steps", va.max_steps, "Largest n for exact counting");

    SpectralArgs sa;
    auto *spectral_cmd = app.add_subcommand("spectral", "Path-graph corner entry and bounds");
    spectral_cmd->add_option("--ell", sa.ell, "Path length")->required();
    spectral_cmd->add_option("--m", sa.m, "Power")->required();

    EstimateArgs ea;
    auto *estimate_cmd = app.add_subcommand("estimate", "Noisy moment estimate of Delta(m) / c^m");
    estimate_cmd->add_option("--instance", ea.instance, "Instance JSON file")->required();
    estimate_cmd->add_option("--eta", ea.eta, "Outcome perturbation radius");
    estimate_cmd->add_option("--theta", ea.theta, "Failure probability");
    estimate_cmd->add_option("--samples", ea.samples, "Samples per state");
    estimate_cmd->add_option("--seed", ea.seed, "RNG seed");
    estimate_cmd->add_option("--confidence", ea.confidence, "Joint confidence of both means");
    estimate_cmd->add_option("--m", ea.m, "Moment order (default: the instance m)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kParse;
    }
    if (g.schema_version != kSchemaVersion) {
        std::cerr << "unsupported schema version " << g.schema_version << "\n";
        return kParse;
    }

    Result r;
    auto start = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (*compile_cmd) {
            r.command = "compile";
            code = cmd_compile(ca, g, r);
        } else if (*delta_cmd) {
            r.command = "delta";
            code = cmd_delta(da, g, r);
        } else if (*verify_cmd) {
            r.command = "verify";
            code = cmd_verify(va, g, r);
        } else if (*spectral_cmd) {
            r.command = "spectral";
            code = cmd_spectral(sa, r);
        } else {
            r.command = "estimate";
            code = cmd_estimate(ea, g, r);
        }
    } catch (const ParseFailure &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit(r, seconds, code);
}
