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

#include "strwalk/circuit.hpp"

#include <random>

#include "gtest/gtest.h"
#include "strwalk/amplitude.hpp"

using namespace strwalk;

namespace {

ExactState random_state(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> coef(-5, 5);
    ExactState s(std::size_t{1} << n);
    for (auto &v : s) {
        v = ExactAmplitude(coef(rng), coef(rng), 2);
    }
    return s;
}

Circuit single(std::size_t n, GateKind kind, std::size_t anchor) {
    Circuit c;
    c.n_qubits = n;
    c.layers.push_back({{{kind, anchor}}});
    return c;
}

}  // namespace

TEST(amplitude, canonical_form) {
    ExactAmplitude x(4, 2, 3);
    EXPECT_EQ(x.a(), 2);
    EXPECT_EQ(x.b(), 1);
    EXPECT_EQ(x.e(), 2u);
    EXPECT_EQ(ExactAmplitude(0, 0, 7), ExactAmplitude(0));
    EXPECT_EQ(ExactAmplitude::inv_sqrt2() * ExactAmplitude::inv_sqrt2(), ExactAmplitude(1, 0, 1));
    EXPECT_EQ(ExactAmplitude::sqrt2() * ExactAmplitude::inv_sqrt2(), ExactAmplitude(1));
    EXPECT_EQ(ExactAmplitude::sqrt2_pow(5), ExactAmplitude(0, 4));
    EXPECT_EQ(ExactAmplitude::inv_sqrt2_pow(3) * ExactAmplitude::sqrt2_pow(3), ExactAmplitude(1));
}

TEST(amplitude, exact_sign) {
    EXPECT_EQ(ExactAmplitude(3, -2).sign(), 1);   // 3 - 2.83
    EXPECT_EQ(ExactAmplitude(-3, 2).sign(), -1);
    EXPECT_EQ(ExactAmplitude(2, -2).sign(), -1);  // 2 - 2.83
    EXPECT_EQ(ExactAmplitude(0).sign(), 0);
    EXPECT_EQ(ExactAmplitude(0, -1, 4).sign(), -1);
}

TEST(amplitude, arithmetic_matches_double) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-50, 50);
    std::uniform_int_distribution<std::uint32_t> ex(0, 6);
    for (int i = 0; i < 500; i++) {
        ExactAmplitude x(coef(rng), coef(rng), ex(rng));
        ExactAmplitude y(coef(rng), coef(rng), ex(rng));
        EXPECT_NEAR((x + y).to_double(), x.to_double() + y.to_double(), 1e-12);
        EXPECT_NEAR((x * y).to_double(), x.to_double() * y.to_double(), 1e-10);
        EXPECT_EQ((x - y).sign(), x.to_double() > y.to_double() ? 1 : x == y ? 0 : -1);
    }
    EXPECT_THROW(ExactAmplitude::inv_sqrt2().to_integer(), std::domain_error);
    EXPECT_EQ(ExactAmplitude(7).to_integer(), 7);
}

TEST(validate, reports_violations) {
    Circuit c = single(3, GateKind::Toffoli, 1);
    auto issues = validate(c);
    ASSERT_EQ(issues.size(), 1u);
    EXPECT_EQ(issues[0].layer, 0u);

    Circuit overlap;
    overlap.n_qubits = 3;
    overlap.layers.push_back({{{GateKind::Swap, 0}, {GateKind::Hadamard, 1}}});
    issues = validate(overlap);
    ASSERT_EQ(issues.size(), 1u);
    EXPECT_EQ(issues[0].gate, 1u);

    Circuit empty;
    empty.layers.push_back({});
    EXPECT_EQ(validate(empty).size(), 1u);

    Circuit wide;
    wide.n_qubits = 13;
    EXPECT_EQ(validate(wide).size(), 1u);
    EXPECT_TRUE(validate(wide, 13).empty());
}

TEST(parse, text_format) {
    Circuit c = parse_circuit_text("# demo\nqubits 3\nh 0\nswap 1\n---\ntoffoli 0  # controls 0,1\n");
    ASSERT_EQ(c.n_qubits, 3u);
    ASSERT_EQ(c.layers.size(), 2u);
    EXPECT_EQ(c.layers[0].gates.size(), 2u);
    EXPECT_EQ(c.layers[1].gates[0].kind, GateKind::Toffoli);
    EXPECT_EQ(parse_circuit_text(format_circuit(c)), c);
}

TEST(parse, errors_carry_lines) {
    try {
        parse_circuit_text("qubits 2\nh 0\ncnot 0\n");
        FAIL();
    } catch (const CircuitParseError &e) {
        EXPECT_EQ(e.line, 3u);
    }
    EXPECT_THROW(parse_circuit_text("h 0\n"), CircuitParseError);
    EXPECT_THROW(parse_circuit_text("qubits 2\nh\n"), CircuitParseError);
    EXPECT_THROW(parse_circuit_text("qubits 2\nh 0 1\n"), CircuitParseError);
    EXPECT_THROW(parse_circuit_text(""), CircuitParseError);
    EXPECT_THROW(parse_bits("01a"), std::invalid_argument);
}

TEST(apply, truth_tables) {
    auto h = parse_circuit_text("qubits 1\nh 0\n---\nh 0\n");
    auto s = basis_state<ExactAmplitude>(1, 0);
    strwalk::apply(h, s);
    EXPECT_EQ(s, basis_state<ExactAmplitude>(1, 0));

    auto t = basis_state<ExactAmplitude>(3, basis_index(3, parse_bits("110")));
    strwalk::apply(single(3, GateKind::Toffoli, 0), t);
    EXPECT_EQ(t, basis_state<ExactAmplitude>(3, basis_index(3, parse_bits("111"))));

    auto sw = basis_state<ExactAmplitude>(2, basis_index(2, parse_bits("01")));
    strwalk::apply(single(2, GateKind::Swap, 0), sw);
    EXPECT_EQ(sw, basis_state<ExactAmplitude>(2, basis_index(2, parse_bits("10"))));
}

TEST(apply, involutions_and_unitarity) {
    std::mt19937_64 rng(11);
    for (auto kind : {GateKind::Hadamard, GateKind::Swap, GateKind::Toffoli}) {
        for (std::size_t anchor = 0; anchor + 3 <= 4; anchor++) {
            auto c = single(4, kind, anchor);
            auto s = random_state(4, rng);
            auto before = s;
            auto n0 = norm_squared(s);
            strwalk::apply(c, s);
            EXPECT_EQ(norm_squared(s), n0);
            strwalk::apply(c, s);
            EXPECT_EQ(s, before);
        }
    }
}

TEST(overlap, examples) {
    EXPECT_EQ(overlap(parse_circuit_text("qubits 1\nh 0\n"), {false}), ExactAmplitude::inv_sqrt2());
    EXPECT_EQ(overlap(parse_circuit_text("qubits 1\nh 0\n"), {true}), -ExactAmplitude::inv_sqrt2());
    EXPECT_EQ(overlap(parse_circuit_text("qubits 1\nh 0\n---\nh 0\n"), {false}), ExactAmplitude(1));
    EXPECT_EQ(overlap(parse_circuit_text("qubits 3\ntoffoli 0\n"), parse_bits("110")), ExactAmplitude(0));
    EXPECT_EQ(overlap(parse_circuit_text("qubits 2\nh 0\n---\nswap 0\n"), parse_bits("00")),
              ExactAmplitude::inv_sqrt2());
    EXPECT_THROW(overlap(parse_circuit_text("qubits 1\nh 0\n"), parse_bits("01")), std::invalid_argument);
}

TEST(overlap, float_mode_agrees) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> kind(0, 2), bit(0, 1);
    for (int trial = 0; trial < 40; trial++) {
        Circuit c;
        c.n_qubits = 8;
        for (int l = 0; l < 20; l++) {
            Layer layer;
            std::size_t q = 0;
            while (q < c.n_qubits) {
                auto k = static_cast<GateKind>(kind(rng));
                Gate g{k, q};
                if (q + g.width() <= c.n_qubits && bit(rng)) {
                    layer.gates.push_back(g);
                    q += g.width();
                } else {
                    q++;
                }
            }
            if (!layer.gates.empty()) {
                c.layers.push_back(layer);
            }
        }
        std::vector<bool> x(8);
        for (std::size_t i = 0; i < 8; i++) {
            x[i] = bit(rng);
        }
        EXPECT_NEAR(overlap(c, x).to_double(), overlap_float(c, x), 1e-12);
    }
}
