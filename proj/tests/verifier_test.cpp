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

#include "strwalk/verifier.hpp"

#include <fstream>

#include "gtest/gtest.h"

using namespace strwalk;

namespace {

Compilation compile_file(const std::string &name, const std::string &bits, const CompileOptions &opt = {}) {
    return compile(load_circuit(std::string(STRWALK_CIRCUITS) + "/" + name), parse_bits(bits), opt);
}

std::string failures(const VerificationReport &rep) {
    std::string out;
    for (const auto &c : rep.checks) {
        if (!c.passed && !c.informational) {
            out += c.name + ": " + c.detail + "\n";
        }
    }
    return out;
}

}  // namespace

TEST(verify, golden_instances_pass) {
    std::ifstream in(std::string(STRWALK_CIRCUITS) + "/golden.json");
    Json golden = Json::parse(in);
    for (const auto &g : golden["instances"]) {
        auto comp = compile_file(g["circuit"], g["input"]);
        auto rep = verify(comp);
        EXPECT_TRUE(rep.passed()) << g["circuit"] << "\n" << failures(rep);
        ASSERT_TRUE(rep.sigma.has_value());
        EXPECT_EQ(*rep.sigma, -1);
        ASSERT_NE(rep.find("parity_zeros"), nullptr);
        EXPECT_TRUE(rep.find("parity_zeros")->passed);
        EXPECT_TRUE(rep.find("orbit_path_isometry")->passed);
        auto j = rep.to_json();
        EXPECT_EQ(j["passed"], rep.passed());
        EXPECT_EQ(j["sigma"], -1);
    }
}

TEST(verify, zero_overlap_gap_is_informational) {
    auto rep = verify(compile_file("toffoli.txt", "110"));
    const auto *gap = rep.find("gap");
    ASSERT_NE(gap, nullptr);
    EXPECT_TRUE(gap->informational);
    EXPECT_FALSE(gap->passed);
    EXPECT_TRUE(rep.passed());
    EXPECT_TRUE(rep.find("sign")->passed);
}

TEST(verify, sign_matches_overlap) {
    for (const char *x : {"0", "1"}) {
        auto comp = compile_file("h.txt", x);
        auto e2e = end_to_end(comp.instance, comp.overlap, default_max_steps(comp.instance.ell));
        auto m = choose_m(comp.instance.ell, MMode::SignOnly);
        ASSERT_LE(m, e2e.n_max);
        EXPECT_EQ(e2e.delta[m].sign(), -comp.overlap.sign());
    }
}

TEST(verify, reference_sigma_is_negative) {
    EXPECT_EQ(reference_sigma(), -1);
}

TEST(end_to_end, identity_ratios) {
    // Delta(n) / (sqrt2^n (P^n)_{0,ell-1}) = sigma overlap / sqrt(1+d) at every odd-parity n.
    for (auto [name, bits] : {std::pair{"h.txt", "0"}, std::pair{"hh.txt", "0"}}) {
        auto comp = compile_file(name, bits);
        const auto &inst = comp.instance;
        auto e2e = end_to_end(inst, comp.overlap, inst.ell + 5);
        ASSERT_FALSE(e2e.truncated);
        ASSERT_EQ(e2e.candidates, std::vector<int>{-1});
        double expect = -comp.overlap.to_double() / std::sqrt(1.0 + inst.d_parity);
        for (std::size_t n = inst.ell - 1; n <= e2e.n_max; n += 2) {
            double denom = std::pow(std::sqrt(2.0), static_cast<double>(n)) *
                           corner_exact(inst.ell, n).convert_to<double>();
            EXPECT_NEAR(e2e.delta[n].convert_to<double>() / denom, expect, 1e-12) << name << " n=" << n;
        }
        for (std::size_t n = 0; n + 1 < inst.ell; n++) {
            EXPECT_EQ(e2e.delta[n], 0);
        }
    }
}

TEST(end_to_end, detects_swapped_targets) {
    auto comp = compile_file("h.txt", "0");
    auto inst = comp.instance;
    std::swap(inst.t, inst.t_prime);
    auto e2e = end_to_end(inst, comp.overlap, inst.ell + 3);
    EXPECT_EQ(e2e.candidates, std::vector<int>{1});
    auto rep = verify(comp, inst);
    EXPECT_FALSE(rep.passed());
    EXPECT_FALSE(rep.find("instance_matches_circuit")->passed);
    EXPECT_FALSE(rep.find("global_sigma")->passed);
}

TEST(end_to_end, budget_truncates) {
    auto comp = compile_file("h.txt", "0");
    VerifyOptions opt;
    opt.max_vertex_steps = 50;
    auto e2e = end_to_end(comp.instance, comp.overlap, 40, opt);
    EXPECT_TRUE(e2e.truncated);
    EXPECT_LT(e2e.n_max, 40u);
    auto rep = verify(comp, opt);
    EXPECT_FALSE(rep.find("master_identity")->passed);
}

TEST(orbit, aligned_policy_passes) {
    auto comp = compile_file("h_swap.txt", "00");
    auto orbit = orbit_check(comp, *comp.instance.system, SwapPolicy::Aligned);
    ASSERT_EQ(orbit.u.size(), comp.instance.ell);
    for (const auto &c : orbit.checks) {
        EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    }
    // Each orbit vector has unit norm.
    for (const auto &u : orbit.u) {
        EXPECT_EQ(detail::inner(u, u), ExactAmplitude(1));
    }
}

TEST(orbit, literal_policy_fails) {
    CompileOptions opt;
    opt.policy = SwapPolicy::Literal;
    auto comp = compile_file("h.txt", "0", opt);
    auto orbit = orbit_check(comp, *comp.instance.system, SwapPolicy::Literal);
    bool any_failed = false;
    for (const auto &c : orbit.checks) {
        any_failed = any_failed || !c.passed;
    }
    EXPECT_TRUE(any_failed);
}

TEST(reachable, clock_closure_checks) {
    auto comp = compile_file("hh.txt", "0");
    for (const auto &c : reachable_checks(comp.instance, 200'000)) {
        EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    }
}

TEST(report, informational_entries_do_not_fail) {
    VerificationReport rep;
    rep.add("a", true, "");
    rep.note("b", false, "");
    EXPECT_TRUE(rep.passed());
    rep.add("c", false, "");
    EXPECT_FALSE(rep.passed());
    EXPECT_EQ(rep.find("missing"), nullptr);
}
