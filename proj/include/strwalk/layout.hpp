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
 * Band layout of a circuit, the deterministic control simulation of the program
 * band, and the boundary strings of the compiled instance.
 *
 * With block size n = qubits + 1, K code blocks and margin M the data band reads
 *
 *     .^M | (.^q |)^(K-1) x0..x(q-1) | (.^q |)^(K-1) .^M
 *
 * and the program band holds B at R-1, the execution symbol at R (register start),
 * then block j slot k at R + j*n + k. Slot 0 of block 0 is taken by the execution
 * symbol, so a first layer with a gate symbol there gets an identity block in
 * front of it.
 */

#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "strwalk/circuit.hpp"
#include "strwalk/transitions.hpp"

namespace strwalk {

struct Layout {
    std::size_t n_qubits = 0;
    std::size_t block = 0;    ///< n = qubits + 1
    std::size_t blocks = 0;   ///< K, including inserted identity/termination blocks
    std::size_t margin = 0;   ///< M
    std::size_t length = 0;   ///< L
    std::size_t reg = 0;      ///< R, first register cell
    std::size_t exec_pos = 0; ///< cell holding the execution symbol initially
    std::size_t prepended = 0;
    std::size_t appended = 0;
    std::vector<std::uint8_t> program;
    std::vector<std::uint8_t> data;

    std::string picture() const {
        std::string p, d;
        for (std::size_t i = 0; i < length; i++) {
            p += prog_glyph(program[i]);
            d += data_glyph(data[i]);
        }
        return p + "\n" + d;
    }
};

inline constexpr std::size_t kDefaultMargin = 3;

namespace detail {

/// Gate symbol of one layer placed in register slots; GATE_I elsewhere.
inline std::vector<std::uint8_t> layer_block(const Layer &layer, std::size_t n) {
    std::vector<std::uint8_t> blk(n, GATE_I);
    for (const auto &g : layer.gates) {
        switch (g.kind) {
            case GateKind::Hadamard:
                blk[g.anchor] = GATE_H;
                break;
            case GateKind::Swap:
                blk[g.anchor + 1] = GATE_S;
                break;
            case GateKind::Toffoli:
                blk[g.anchor + 2] = GATE_T;
                break;
        }
    }
    return blk;
}

}  // namespace detail

inline Layout layout(const Circuit &circuit, const std::vector<bool> &x, std::size_t margin = kDefaultMargin) {
    require_valid(circuit);
    if (x.size() > circuit.n_qubits) {
        throw std::invalid_argument("input has " + std::to_string(x.size()) + " bits but the circuit has " +
                                    std::to_string(circuit.n_qubits) + " qubits");
    }
    if (margin < 2) {
        throw std::invalid_argument("margin must be at least 2");
    }
    const std::size_t q = circuit.n_qubits;
    const std::size_t n = q + 1;

    Layout out;
    out.n_qubits = q;
    out.block = n;
    out.margin = margin;

    std::vector<std::vector<std::uint8_t>> blocks;
    for (const auto &layer : circuit.layers) {
        blocks.push_back(detail::layer_block(layer, n));
    }
    if (blocks.empty() || blocks.front()[0] != GATE_I) {
        blocks.insert(blocks.begin(), std::vector<std::uint8_t>(n, GATE_I));
        out.prepended = 1;
    }

    // Terminating B: first register slot after the last gate symbol of the last
    // block (slot >= 1 when that block is also the first one).
    auto &last = blocks.back();
    std::size_t first_free = blocks.size() == 1 ? 1 : 0;
    for (std::size_t k = 0; k < q; k++) {
        if (last[k] != GATE_I) {
            first_free = k + 1;
        }
    }
    if (first_free < q) {
        last[first_free] = GATE_B;
    } else {
        std::vector<std::uint8_t> tail(n, GATE_I);
        tail[0] = GATE_B;
        blocks.push_back(std::move(tail));
        out.appended = 1;
    }

    const std::size_t K = blocks.size();
    out.blocks = K;
    out.reg = margin + 1 + (K - 1) * n;
    out.length = 2 * margin + 1 + (2 * K - 1) * n;
    out.exec_pos = out.reg;

    out.data.assign(out.length, DOT);
    // Separators every n cells, aligned so one sits right before and after the register.
    for (std::size_t pos = margin; pos < out.length - margin; pos += n) {
        out.data[pos] = SEP;
    }
    for (std::size_t k = 0; k < q; k++) {
        out.data[out.reg + k] = k < x.size() && x[k] ? D1 : D0;
    }

    out.program.assign(out.length, BLANK);
    out.program[out.reg - 1] = GATE_B;
    out.program[out.reg] = EXEC;
    for (std::size_t j = 0; j < K; j++) {
        for (std::size_t k = 0; k < n; k++) {
            if (j == 0 && k == 0) {
                continue;
            }
            out.program[out.reg + j * n + k] = blocks[j][k];
        }
    }
    return out;
}

struct ControlRun {
    std::size_t ell = 0;
    std::vector<std::vector<std::uint8_t>> configs;
    std::vector<std::size_t> active;  ///< window position (cell 0) used by step i -> i+1
    std::vector<Transition> rules;
    std::size_t dummy_steps = 0;
    int d_parity = 0;
};

/// Applicable transitions of a program configuration (positions of cell 0).
inline std::vector<std::size_t> applicable_windows(const std::vector<std::uint8_t> &program,
                                                   const std::vector<std::uint8_t> &data) {
    std::vector<std::size_t> out;
    const std::size_t L = program.size();
    for (std::size_t j = 1; j + 1 < L; j++) {
        auto d0 = data_class(data[j]);
        auto d1 = data_class(data[j + 1]);
        if (!match_transition(program[j], program[j + 1], d0, d1)) {
            continue;
        }
        if (exec_class(program[j], program[j + 1], data_class(data[j - 1]), d0, d1) == ExecClass::PB) {
            continue;
        }
        out.push_back(j);
    }
    return out;
}

inline bool is_terminal(const std::vector<std::uint8_t> &program, const std::vector<std::uint8_t> &data) {
    for (std::size_t j = 1; j + 1 < program.size(); j++) {
        if (program[j] == EXEC && program[j + 1] == GATE_B && is_bit(data[j + 1])) {
            return true;
        }
    }
    return false;
}

/// Runs the program band forward until the execution symbol meets B above the
/// register. Throws std::logic_error on zero or multiple applicable transitions.
inline ControlRun control_simulate(const Layout &lay, std::size_t max_steps = 10'000'000) {
    ControlRun run;
    std::vector<std::uint8_t> cur = lay.program;
    std::set<std::vector<std::uint8_t>> seen;
    while (true) {
        if (!seen.insert(cur).second) {
            throw std::logic_error("control configuration repeated at step " + std::to_string(run.configs.size()));
        }
        run.configs.push_back(cur);
        auto win = applicable_windows(cur, lay.data);
        if (win.empty()) {
            if (!is_terminal(cur, lay.data)) {
                throw std::logic_error("no transition applies at step " + std::to_string(run.configs.size() - 1) +
                                       " before termination");
            }
            break;
        }
        if (win.size() > 1) {
            throw std::logic_error("several transitions apply at step " + std::to_string(run.configs.size() - 1));
        }
        if (run.configs.size() > max_steps) {
            throw std::logic_error("control simulation exceeded " + std::to_string(max_steps) + " steps");
        }
        const std::size_t j = win[0];
        auto d0 = data_class(lay.data[j]);
        auto d1 = data_class(lay.data[j + 1]);
        auto ec = exec_class(cur[j], cur[j + 1], data_class(lay.data[j - 1]), d0, d1);
        if (ec != ExecClass::PH) {
            run.dummy_steps++;
        }
        auto tm = match_transition(cur[j], cur[j + 1], d0, d1);
        run.active.push_back(j);
        run.rules.push_back(tm->rule);
        cur[j] = tm->p0;
        cur[j + 1] = tm->p1;
    }
    run.ell = run.configs.size();
    run.d_parity = static_cast<int>(run.dummy_steps % 2);
    return run;
}

struct BoundaryStrings {
    BandString alpha0;  ///< t'
    BandString alpha1;  ///< t
    BandString omega0;  ///< s
};

inline BandString make_band(const std::vector<std::uint8_t> &program, const std::vector<std::uint8_t> &data) {
    BandString out(program.size());
    for (std::size_t i = 0; i < program.size(); i++) {
        out[i] = Cell{program[i], data[i], 0, 0};
    }
    return out;
}

/// alpha = initial layout; omega = final program configuration over the initial data.
inline BoundaryStrings build_strings(const Layout &lay, const ControlRun &run) {
    BoundaryStrings out;
    out.alpha0 = make_band(lay.program, lay.data);
    out.alpha1 = out.alpha0;
    out.alpha1[lay.exec_pos].s = 1;
    out.omega0 = make_band(run.configs.back(), lay.data);
    return out;
}

}  // namespace strwalk
