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

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "strwalk/rewriting.hpp"

namespace strwalk {

using Json = nlohmann::json;

inline Json word_to_json(const Alphabet &alphabet, const Word &w) {
    return Json(alphabet.render(w));
}

inline Word word_from_json(const Alphabet &alphabet, const Json &j) {
    if (!j.is_array()) {
        throw std::invalid_argument("expected an array of tokens");
    }
    return alphabet.parse(j.get<std::vector<std::string>>());
}

/// Rules with lhs < rhs, i.e. one direction of each symmetric pair.
template <class F>
void for_each_rule_pair(const RewritingSystem &sys, F &&f) {
    for (const auto &t : sys.tables()) {
        t.for_each([&](std::uint64_t l, std::uint64_t r) {
            if (l < r) {
                f(sys.decode(l, t.width()), sys.decode(r, t.width()));
            }
        });
    }
}

/// {"alphabet": [...], "window": k, "rules": [[[lhs], [rhs]], ...]}.
inline Json system_to_json(const RewritingSystem &sys) {
    Json rules = Json::array();
    for_each_rule_pair(sys, [&](const Word &l, const Word &r) {
        rules.push_back(Json::array({word_to_json(sys.alphabet(), l), word_to_json(sys.alphabet(), r)}));
    });
    return Json{{"alphabet", sys.alphabet().tokens()}, {"window", sys.window()}, {"rules", std::move(rules)}};
}

/// Same document as system_to_json, written incrementally so very large rule sets
/// never sit in memory as a JSON tree. Emits compact JSON.
inline void write_system_json(std::ostream &out, const RewritingSystem &sys) {
    out << "{\"alphabet\":" << Json(sys.alphabet().tokens()).dump() << ",\"window\":" << sys.window()
        << ",\"rules\":[";
    bool first = true;
    const auto &tokens = sys.alphabet().tokens();
    auto write_word = [&](const Word &w) {
        out << '[';
        for (std::size_t i = 0; i < w.size(); i++) {
            if (i) {
                out << ',';
            }
            out << Json(tokens[w[i]]).dump();
        }
        out << ']';
    };
    for_each_rule_pair(sys, [&](const Word &l, const Word &r) {
        if (!first) {
            out << ',';
        }
        first = false;
        out << '[';
        write_word(l);
        out << ',';
        write_word(r);
        out << ']';
    });
    out << "]}";
}

/// Parses the full form and applies the symmetric closure.
inline RewritingSystem system_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("alphabet") || !j.contains("window") || !j.contains("rules")) {
        throw std::invalid_argument("rewriting system needs 'alphabet', 'window' and 'rules'");
    }
    Alphabet alphabet(j.at("alphabet").get<std::vector<std::string>>());
    auto window = j.at("window").get<long long>();
    if (window < 1) {
        throw std::invalid_argument("window must be at least 1");
    }
    std::vector<Rule> rules;
    for (const auto &r : j.at("rules")) {
        if (!r.is_array() || r.size() != 2) {
            throw std::invalid_argument("each rule must be a [lhs, rhs] pair");
        }
        rules.push_back(Rule{word_from_json(alphabet, r[0]), word_from_json(alphabet, r[1])});
    }
    return RewritingSystem(std::move(alphabet), static_cast<std::size_t>(window), std::move(rules));
}

}  // namespace strwalk
