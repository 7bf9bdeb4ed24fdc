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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "strwalk/rewriting.hpp"

namespace strwalk {

/// Breadth-first neighborhood of a set of seeds, with both the 0/1 adjacency and
/// the derivation-count (weighted) adjacency. Seeds come first, in order.
struct ReachableGraph {
    std::vector<Word> vertices;
    std::vector<std::size_t> depth;
    /// adjacency[v] sorted; weights[v][i] counts derivations of the edge to adjacency[v][i].
    std::vector<std::vector<VertexId>> adjacency;
    std::vector<std::vector<std::uint32_t>> weights;
    /// False when some vertex at the depth limit was left unexpanded.
    bool closed = true;
    std::unordered_map<Word, VertexId, WordHash> index;

    std::size_t size() const {
        return vertices.size();
    }

    std::optional<VertexId> find(const Word &w) const {
        auto it = index.find(w);
        if (it == index.end()) {
            return std::nullopt;
        }
        return it->second;
    }
};

inline constexpr std::size_t kUnlimitedDepth = std::numeric_limits<std::size_t>::max();

inline ReachableGraph build_reachable(const RewritingSystem &sys, const std::vector<Word> &seeds,
                                      std::size_t max_depth = kUnlimitedDepth,
                                      std::size_t vertex_limit = 1'000'000) {
    if (max_depth < 1) {
        throw std::invalid_argument("reachable depth must be at least 1");
    }
    ReachableGraph g;
    auto add = [&](const Word &w, std::size_t d) -> VertexId {
        auto it = g.index.find(w);
        if (it != g.index.end()) {
            return it->second;
        }
        if (g.vertices.size() >= vertex_limit) {
            throw BudgetExceeded("reachable set exceeds " + std::to_string(vertex_limit) + " vertices");
        }
        auto id = static_cast<VertexId>(g.vertices.size());
        g.index.emplace(w, id);
        g.vertices.push_back(w);
        g.depth.push_back(d);
        g.adjacency.emplace_back();
        g.weights.emplace_back();
        return id;
    };
    for (const auto &s : seeds) {
        add(s, 0);
    }
    for (std::size_t v = 0; v < g.vertices.size(); v++) {
        if (g.depth[v] >= max_depth) {
            g.closed = false;
            continue;
        }
        const std::size_t d = g.depth[v];
        Word w = g.vertices[v];
        auto nbs = neighbor_multiplicities(sys, w);
        std::vector<std::pair<VertexId, std::uint32_t>> row;
        row.reserve(nbs.size());
        for (auto &[nb, mult] : nbs) {
            row.emplace_back(add(nb, d + 1), mult);
        }
        std::sort(row.begin(), row.end());
        for (auto &[id, mult] : row) {
            g.adjacency[v].push_back(id);
            g.weights[v].push_back(mult);
        }
    }
    return g;
}

inline ReachableGraph build_reachable(const RewritingSystem &sys, const Word &seed,
                                      std::size_t max_depth = kUnlimitedDepth,
                                      std::size_t vertex_limit = 1'000'000) {
    return build_reachable(sys, std::vector<Word>{seed}, max_depth, vertex_limit);
}

}  // namespace strwalk
