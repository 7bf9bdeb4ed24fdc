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
 * Tape cells of the clock construction: program symbol x data symbol x aux bit x
 * sim bit, 14 * 4 * 2 * 2 = 224 symbols.
 */

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "strwalk/rewriting.hpp"

namespace strwalk {

enum Prog : std::uint8_t {
    GATE_I,
    GATE_H,
    GATE_S,
    GATE_T,
    GATE_B,
    MARK_I,
    MARK_H,
    MARK_S,
    MARK_T,
    MARK_B,
    HOLE,
    EXEC,
    TURN,
    BLANK,
};

enum Data : std::uint8_t {
    D0,
    D1,
    SEP,
    DOT,
};

inline constexpr std::size_t kProgCount = 14;
inline constexpr std::size_t kDataCount = 4;
inline constexpr std::size_t kCellCount = kProgCount * kDataCount * 2 * 2;
static_assert(kCellCount == 224);

inline constexpr std::array<const char *, kProgCount> kProgNames = {
    "GATE_I", "GATE_H", "GATE_S", "GATE_T", "GATE_B", "MARK_I", "MARK_H",
    "MARK_S", "MARK_T", "MARK_B", "HOLE",   "EXEC",   "TURN",   "BLANK",
};
inline constexpr std::array<const char *, kDataCount> kDataNames = {"D0", "D1", "SEP", "DOT"};

constexpr bool is_gate(std::uint8_t p) {
    return p <= GATE_B;
}
constexpr bool is_marked(std::uint8_t p) {
    return p >= MARK_I && p <= MARK_B;
}
constexpr std::uint8_t mark(std::uint8_t p) {
    return static_cast<std::uint8_t>(p + (MARK_I - GATE_I));
}
constexpr std::uint8_t unmark(std::uint8_t p) {
    return static_cast<std::uint8_t>(p - (MARK_I - GATE_I));
}
constexpr bool is_bit(std::uint8_t d) {
    return d == D0 || d == D1;
}

struct Cell {
    std::uint8_t p = BLANK;
    std::uint8_t d = DOT;
    std::uint8_t a = 0;
    std::uint8_t s = 0;

    constexpr Symbol index() const {
        return static_cast<Symbol>(((p * kDataCount + d) * 2 + a) * 2 + s);
    }

    static constexpr Cell from_index(Symbol i) {
        Cell c;
        c.s = static_cast<std::uint8_t>(i & 1);
        c.a = static_cast<std::uint8_t>((i >> 1) & 1);
        c.d = static_cast<std::uint8_t>((i >> 2) % kDataCount);
        c.p = static_cast<std::uint8_t>((i >> 2) / kDataCount);
        return c;
    }

    std::string token() const {
        return std::string(kProgNames[p]) + "." + kDataNames[d] + "." + std::to_string(a) + "." + std::to_string(s);
    }

    constexpr bool operator==(const Cell &) const = default;
};

/// The 224 cell tokens in index order.
inline Alphabet cell_alphabet() {
    std::vector<std::string> tokens;
    tokens.reserve(kCellCount);
    for (Symbol i = 0; i < kCellCount; i++) {
        tokens.push_back(Cell::from_index(i).token());
    }
    return Alphabet(std::move(tokens));
}

/// A window of three cells addressed -1, 0, 1.
using Triple = std::array<Cell, 3>;

constexpr std::uint32_t triple_index(const Triple &t) {
    return (static_cast<std::uint32_t>(t[0].index()) * kCellCount + t[1].index()) * kCellCount + t[2].index();
}

constexpr Triple triple_from_index(std::uint32_t i) {
    Triple t;
    t[2] = Cell::from_index(static_cast<Symbol>(i % kCellCount));
    i /= kCellCount;
    t[1] = Cell::from_index(static_cast<Symbol>(i % kCellCount));
    t[0] = Cell::from_index(static_cast<Symbol>(i / kCellCount));
    return t;
}

inline constexpr std::uint32_t kTripleCount = kCellCount * kCellCount * kCellCount;

using BandString = std::vector<Cell>;

inline Word to_word(const BandString &cells) {
    Word w;
    w.reserve(cells.size());
    for (const auto &c : cells) {
        w.push_back(c.index());
    }
    return w;
}

inline BandString to_cells(const Word &w) {
    BandString out;
    out.reserve(w.size());
    for (Symbol s : w) {
        if (s >= kCellCount) {
            throw std::invalid_argument("symbol outside the cell alphabet");
        }
        out.push_back(Cell::from_index(s));
    }
    return out;
}

inline std::string prog_glyph(std::uint8_t p) {
    static constexpr std::array<const char *, kProgCount> glyphs = {
        "I", "H", "S", "T", "B", "i", "h", "s", "t", "b", "o", "X", "<", "#",
    };
    return glyphs[p];
}

inline std::string data_glyph(std::uint8_t d) {
    static constexpr std::array<const char *, kDataCount> glyphs = {"0", "1", "|", "."};
    return glyphs[d];
}

/// Two-line ASCII picture of the program and data bands.
inline std::string render_bands(const BandString &cells) {
    std::string prog, data;
    for (const auto &c : cells) {
        prog += prog_glyph(c.p);
        data += data_glyph(c.d);
    }
    return prog + "\n" + data;
}

}  // namespace strwalk
