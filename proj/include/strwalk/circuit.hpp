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
 * Layered circuits over {Hadamard, adjacent Swap, adjacent Toffoli} and a small
 * exact state-vector simulator. Qubit q is bit q of the basis index.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "strwalk/amplitude.hpp"

namespace strwalk {

enum class GateKind : std::uint8_t { Hadamard, Swap, Toffoli };

inline const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::Hadamard:
            return "h";
        case GateKind::Swap:
            return "swap";
        case GateKind::Toffoli:
            return "toffoli";
    }
    return "?";
}

/// Hadamard acts on q; Swap on (q, q+1); Toffoli has controls q, q+1 and target q+2.
struct Gate {
    GateKind kind;
    std::size_t anchor;

    std::size_t width() const {
        switch (kind) {
            case GateKind::Hadamard:
                return 1;
            case GateKind::Swap:
                return 2;
            case GateKind::Toffoli:
                return 3;
        }
        return 0;
    }

    bool operator==(const Gate &) const = default;
};

struct Layer {
    std::vector<Gate> gates;
    bool operator==(const Layer &) const = default;
};

struct Circuit {
    std::size_t n_qubits = 1;
    std::vector<Layer> layers;
    bool operator==(const Circuit &) const = default;
};

struct CircuitIssue {
    std::size_t layer;
    std::size_t gate;
    std::string message;
};

/// Thrown by the text parser; carries the 1-based line number.
struct CircuitParseError : std::invalid_argument {
    std::size_t line;
    CircuitParseError(std::size_t line, const std::string &msg)
        : std::invalid_argument("line " + std::to_string(line) + ": " + msg), line(line) {
    }
};

inline constexpr std::size_t kDefaultMaxQubits = 12;

inline std::vector<CircuitIssue> validate(const Circuit &c, std::size_t max_qubits = kDefaultMaxQubits) {
    std::vector<CircuitIssue> issues;
    if (c.n_qubits < 1) {
        issues.push_back({0, 0, "circuit needs at least one qubit"});
    }
    if (c.n_qubits > max_qubits) {
        issues.push_back({0, 0,
                          "circuit has " + std::to_string(c.n_qubits) + " qubits, cap is " +
                              std::to_string(max_qubits)});
    }
    for (std::size_t li = 0; li < c.layers.size(); li++) {
        const auto &layer = c.layers[li];
        if (layer.gates.empty()) {
            issues.push_back({li, 0, "layer " + std::to_string(li) + " is empty"});
        }
        std::vector<int> owner(c.n_qubits, -1);
        for (std::size_t gi = 0; gi < layer.gates.size(); gi++) {
            const auto &g = layer.gates[gi];
            if (g.anchor + g.width() > c.n_qubits) {
                issues.push_back({li, gi,
                                  std::string(gate_name(g.kind)) + " at qubit " + std::to_string(g.anchor) +
                                      " touches qubits outside [0, " + std::to_string(c.n_qubits) + ")"});
                continue;
            }
            for (std::size_t q = g.anchor; q < g.anchor + g.width(); q++) {
                if (owner[q] >= 0) {
                    issues.push_back({li, gi,
                                      "qubit " + std::to_string(q) + " already used by gate " +
                                          std::to_string(owner[q]) + " in layer " + std::to_string(li)});
                } else {
                    owner[q] = static_cast<int>(gi);
                }
            }
        }
    }
    return issues;
}

inline void require_valid(const Circuit &c, std::size_t max_qubits = kDefaultMaxQubits) {
    auto issues = validate(c, max_qubits);
    if (!issues.empty()) {
        std::string msg = "invalid circuit:";
        for (const auto &i : issues) {
            msg += "\n  layer " + std::to_string(i.layer) + " gate " + std::to_string(i.gate) + ": " + i.message;
        }
        throw std::invalid_argument(msg);
    }
}

inline Circuit parse_circuit(std::istream &in) {
    Circuit c;
    bool have_header = false;
    bool layer_open = false;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        line_no++;
        auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::istringstream words(line);
        std::string head;
        if (!(words >> head)) {
            continue;
        }
        if (!have_header) {
            long long n = 0;
            if (head != "qubits" || !(words >> n) || n < 1) {
                throw CircuitParseError(line_no, "expected header 'qubits N' with N >= 1");
            }
            c.n_qubits = static_cast<std::size_t>(n);
            have_header = true;
        } else if (head == "---") {
            if (!layer_open) {
                c.layers.emplace_back();
            }
            layer_open = false;
        } else {
            GateKind kind;
            if (head == "h") {
                kind = GateKind::Hadamard;
            } else if (head == "swap") {
                kind = GateKind::Swap;
            } else if (head == "toffoli") {
                kind = GateKind::Toffoli;
            } else {
                throw CircuitParseError(line_no, "unknown gate '" + head + "'");
            }
            long long q = -1;
            if (!(words >> q) || q < 0) {
                throw CircuitParseError(line_no, "gate needs a non-negative qubit index");
            }
            if (!layer_open) {
                c.layers.emplace_back();
                layer_open = true;
            }
            c.layers.back().gates.push_back({kind, static_cast<std::size_t>(q)});
        }
        std::string extra;
        if (head != "---" && words >> extra) {
            throw CircuitParseError(line_no, "unexpected token '" + extra + "'");
        }
    }
    if (!have_header) {
        throw CircuitParseError(line_no, "missing 'qubits N' header");
    }
    return c;
}

inline Circuit parse_circuit_text(const std::string &text) {
    std::istringstream in(text);
    return parse_circuit(in);
}

inline Circuit load_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open circuit file '" + path + "'");
    }
    return parse_circuit(in);
}

inline std::string format_circuit(const Circuit &c) {
    std::string out = "qubits " + std::to_string(c.n_qubits) + "\n";
    for (std::size_t li = 0; li < c.layers.size(); li++) {
        if (li > 0) {
            out += "---\n";
        }
        for (const auto &g : c.layers[li].gates) {
            out += std::string(gate_name(g.kind)) + " " + std::to_string(g.anchor) + "\n";
        }
    }
    return out;
}

/// Parses a bit string like "110"; character i is qubit i.
inline std::vector<bool> parse_bits(const std::string &bits) {
    std::vector<bool> out;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("input must be a string of 0/1, got '" + bits + "'");
        }
        out.push_back(ch == '1');
    }
    return out;
}

/// Basis index of |x, 0>: qubit i takes bit x[i], remaining qubits are 0.
inline std::uint64_t basis_index(std::size_t n_qubits, const std::vector<bool> &x) {
    if (x.size() > n_qubits) {
        throw std::invalid_argument("input has more bits than the circuit has qubits");
    }
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        if (x[i]) {
            idx |= std::uint64_t{1} << i;
        }
    }
    return idx;
}

template <class T>
void apply_gate(const Gate &g, std::vector<T> &state) {
    const std::uint64_t dim = state.size();
    const std::uint64_t q = g.anchor;
    switch (g.kind) {
        case GateKind::Hadamard: {
            const std::uint64_t bit = std::uint64_t{1} << q;
            const T h = [] {
                if constexpr (std::is_same_v<T, ExactAmplitude>) {
                    return ExactAmplitude::inv_sqrt2();
                } else {
                    return T(1) / std::sqrt(T(2));
                }
            }();
            for (std::uint64_t i = 0; i < dim; i++) {
                if (i & bit) {
                    continue;
                }
                T v0 = state[i];
                T v1 = state[i | bit];
                state[i] = (v0 + v1) * h;
                state[i | bit] = (v0 - v1) * h;
            }
            break;
        }
        case GateKind::Swap: {
            const std::uint64_t b0 = std::uint64_t{1} << q;
            const std::uint64_t b1 = b0 << 1;
            for (std::uint64_t i = 0; i < dim; i++) {
                if ((i & b0) && !(i & b1)) {
                    std::swap(state[i], state[(i ^ b0) | b1]);
                }
            }
            break;
        }
        case GateKind::Toffoli: {
            const std::uint64_t c0 = std::uint64_t{1} << q;
            const std::uint64_t c1 = c0 << 1;
            const std::uint64_t t = c0 << 2;
            for (std::uint64_t i = 0; i < dim; i++) {
                if ((i & c0) && (i & c1) && !(i & t)) {
                    std::swap(state[i], state[i | t]);
                }
            }
            break;
        }
    }
}

template <class T>
void apply(const Circuit &c, std::vector<T> &state) {
    if (state.size() != (std::uint64_t{1} << c.n_qubits)) {
        throw std::invalid_argument("state dimension does not match the circuit");
    }
    for (const auto &layer : c.layers) {
        for (const auto &g : layer.gates) {
            apply_gate(g, state);
        }
    }
}

using ExactState = std::vector<ExactAmplitude>;
using FloatState = std::vector<double>;

template <class T>
std::vector<T> basis_state(std::size_t n_qubits, std::uint64_t index) {
    std::vector<T> s(std::uint64_t{1} << n_qubits, T(0));
    s.at(index) = T(1);
    return s;
}

/// Sum of squared amplitudes.
template <class T>
T norm_squared(const std::vector<T> &state) {
    T total(0);
    for (const auto &v : state) {
        total += v * v;
    }
    return total;
}

/// <x,0| U |x,0>, exact.
inline ExactAmplitude overlap(const Circuit &c, const std::vector<bool> &x) {
    require_valid(c);
    auto idx = basis_index(c.n_qubits, x);
    auto state = basis_state<ExactAmplitude>(c.n_qubits, idx);
    apply(c, state);
    return state[idx];
}

inline double overlap_float(const Circuit &c, const std::vector<bool> &x) {
    require_valid(c);
    auto idx = basis_index(c.n_qubits, x);
    auto state = basis_state<double>(c.n_qubits, idx);
    apply(c, state);
    return state[idx];
}

}  // namespace strwalk
