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
 * The local forward operator on a window of three cells: an execution phase that
 * applies the gate under the execution symbol (or the dummy Hadamard on the aux
 * bit), followed by a program-band transition that also moves the carried aux and
 * sim bits along with the signal.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "strwalk/cells.hpp"

namespace strwalk {

enum class Transition : std::uint8_t { R1a, R1b, R2a, R2b, R3, R4, R5, R6a, R6b };

inline const char *transition_name(Transition t) {
    switch (t) {
        case Transition::R1a:
            return "1a";
        case Transition::R1b:
            return "1b";
        case Transition::R2a:
            return "2a";
        case Transition::R2b:
            return "2b";
        case Transition::R3:
            return "3";
        case Transition::R4:
            return "4";
        case Transition::R5:
            return "5";
        case Transition::R6a:
            return "6a";
        case Transition::R6b:
            return "6b";
    }
    return "?";
}

/// Where the aux and sim bits are swapped after each transition.
///
/// `Aligned` moves them so that the carried qubit always sits under the next active
/// window's middle cell: right after rules 1 and 6, left after rules 2 through 5.
/// `Literal` swaps only on right-moving (1) and left-moving (3, 4, 5) rules and
/// leaves the stationary ones (2, 6) alone; the carried qubit then drifts off the
/// active cell at both turn-arounds.
enum class SwapPolicy : std::uint8_t { Aligned, Literal };

inline const char *swap_policy_name(SwapPolicy p) {
    return p == SwapPolicy::Aligned ? "aligned" : "literal";
}

inline SwapPolicy parse_swap_policy(const std::string &s) {
    if (s == "aligned") {
        return SwapPolicy::Aligned;
    }
    if (s == "literal") {
        return SwapPolicy::Literal;
    }
    throw std::invalid_argument("unknown swap policy '" + s + "'");
}

enum class SwapShift : std::uint8_t { None, Left, Right };

inline SwapShift swap_shift(Transition t, SwapPolicy policy) {
    switch (t) {
        case Transition::R1a:
        case Transition::R1b:
            return SwapShift::Right;
        case Transition::R3:
        case Transition::R4:
        case Transition::R5:
            return SwapShift::Left;
        case Transition::R2a:
        case Transition::R2b:
            return policy == SwapPolicy::Aligned ? SwapShift::Left : SwapShift::None;
        case Transition::R6a:
        case Transition::R6b:
            return policy == SwapPolicy::Aligned ? SwapShift::Right : SwapShift::None;
    }
    return SwapShift::None;
}

/// Data classes the transition and execution rules can distinguish.
enum class DataClass : std::uint8_t { Bit, Sep, Dot };

constexpr DataClass data_class(std::uint8_t d) {
    return is_bit(d) ? DataClass::Bit : d == SEP ? DataClass::Sep : DataClass::Dot;
}

struct TransitionMatch {
    Transition rule;
    std::uint8_t p0;
    std::uint8_t p1;
};

/// Matches program cells 0, 1 (with data cells 0, 1 for the side conditions).
inline std::optional<TransitionMatch> match_transition(std::uint8_t p0, std::uint8_t p1, DataClass d0, DataClass d1) {
    if (p0 == HOLE && is_gate(p1)) {
        return TransitionMatch{Transition::R1a, p1, HOLE};
    }
    if (p0 == EXEC && is_gate(p1)) {
        return TransitionMatch{Transition::R1b, p1, EXEC};
    }
    if (p0 == HOLE && p1 == BLANK && d0 != DataClass::Sep) {
        return TransitionMatch{Transition::R2a, TURN, BLANK};
    }
    if (p0 == EXEC && p1 == BLANK && d0 == DataClass::Sep) {
        return TransitionMatch{Transition::R2b, TURN, BLANK};
    }
    if (is_gate(p0) && p1 == TURN) {
        return TransitionMatch{Transition::R3, mark(p0), BLANK};
    }
    if (is_gate(p0) && is_marked(p1)) {
        return TransitionMatch{Transition::R4, mark(p0), unmark(p1)};
    }
    if (p0 == BLANK && is_marked(p1)) {
        return TransitionMatch{Transition::R5, TURN, unmark(p1)};
    }
    if (p0 == BLANK && p1 == TURN && d1 != DataClass::Sep) {
        return TransitionMatch{Transition::R6a, BLANK, HOLE};
    }
    if (p0 == BLANK && p1 == TURN && d1 == DataClass::Sep) {
        return TransitionMatch{Transition::R6b, BLANK, EXEC};
    }
    return std::nullopt;
}

/// Execution classes: which projector of the execution operator a window falls in.
enum class ExecClass : std::uint8_t { P1, PH, PS, PT, PB };

inline ExecClass exec_class(std::uint8_t p0, std::uint8_t p1, DataClass dm1, DataClass d0, DataClass d1) {
    if (p0 != EXEC || !is_gate(p1)) {
        return ExecClass::P1;
    }
    const bool b1 = d1 == DataClass::Bit;
    switch (p1) {
        case GATE_T:
            return dm1 == DataClass::Bit && d0 == DataClass::Bit && b1 ? ExecClass::PT : ExecClass::P1;
        case GATE_S:
            return d0 == DataClass::Bit && b1 ? ExecClass::PS : ExecClass::P1;
        case GATE_H:
            return b1 ? ExecClass::PH : ExecClass::P1;
        case GATE_B:
            return b1 ? ExecClass::PB : ExecClass::P1;
        default:
            return ExecClass::P1;
    }
}

inline ExecClass exec_class(const Triple &t) {
    return exec_class(t[1].p, t[2].p, data_class(t[0].d), data_class(t[1].d), data_class(t[2].d));
}

/// Up to two images of one window.
struct Images {
    std::array<Triple, 2> items{};
    std::size_t count = 0;

    void push(const Triple &t) {
        items[count++] = t;
    }
    const Triple *begin() const {
        return items.data();
    }
    const Triple *end() const {
        return items.data() + count;
    }
};

/// All tau with <tau|V|sigma> = 1. Windows are indexed 0, 1, 2 for cells -1, 0, 1.
inline Images forward_images(const Triple &sigma, SwapPolicy policy = SwapPolicy::Aligned) {
    Images out;
    auto tm = match_transition(sigma[1].p, sigma[2].p, data_class(sigma[1].d), data_class(sigma[2].d));
    if (!tm) {
        return out;
    }
    // Execution never changes program symbols or data classes, so the match above
    // stays valid after it.
    const ExecClass ec = exec_class(sigma);
    if (ec == ExecClass::PB) {
        return out;
    }

    Images executed;
    if (ec == ExecClass::PH) {
        const std::uint8_t in = sigma[2].d;
        for (std::uint8_t v = 0; v < 2; v++) {
            Triple t = sigma;
            t[2].d = v;
            if (in == D1 && v == D1) {
                t[1].s ^= 1;
            }
            executed.push(t);
        }
    } else {
        Triple g = sigma;
        if (ec == ExecClass::PT) {
            if (g[0].d == D1 && g[1].d == D1) {
                g[2].d ^= 1;
            }
        } else if (ec == ExecClass::PS) {
            std::swap(g[1].d, g[2].d);
        }
        const std::uint8_t in = g[1].a;
        for (std::uint8_t v = 0; v < 2; v++) {
            Triple t = g;
            t[1].a = v;
            if (in == 1 && v == 1) {
                t[1].s ^= 1;
            }
            executed.push(t);
        }
    }

    const SwapShift shift = swap_shift(tm->rule, policy);
    for (Triple t : executed) {
        t[1].p = tm->p0;
        t[2].p = tm->p1;
        if (shift == SwapShift::Right) {
            std::swap(t[1].a, t[2].a);
            std::swap(t[1].s, t[2].s);
        } else if (shift == SwapShift::Left) {
            std::swap(t[0].a, t[1].a);
            std::swap(t[0].s, t[1].s);
        }
        out.push(t);
    }
    return out;
}

}  // namespace strwalk
