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
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "strwalk/transitions.hpp"

namespace strwalk {

/// Counts gathered while enumerating every window.
struct GenerationStats {
    std::uint64_t triples = 0;
    std::uint64_t sources = 0;  ///< windows with a nonempty forward image
    std::uint64_t targets = 0;  ///< windows with a nonempty backward image
    std::uint64_t forward_pairs = 0;
    std::uint64_t rules = 0;  ///< both directions
    std::uint64_t max_forward = 0;
    std::uint64_t max_backward = 0;
    std::uint64_t oversized = 0;  ///< windows with more than two forward images
    std::uint64_t self_pairs = 0;
    std::uint64_t bidirectional = 0;  ///< windows with both forward and backward images
    std::uint32_t first_violation = std::numeric_limits<std::uint32_t>::max();

    bool ok() const {
        return oversized == 0 && self_pairs == 0 && bidirectional == 0;
    }
};

struct ClockRules {
    RewritingSystem system;
    GenerationStats stats;
    SwapPolicy policy = SwapPolicy::Aligned;
};

inline unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Enumerates all 224^3 windows and builds the symmetric window-3 relation
/// {(sigma, tau) : tau in forward_images(sigma)} plus reverses.
///
/// Output is independent of `threads`: each worker fills a disjoint slice of the
/// forward table, and the merge runs sequentially in index order. Throws
/// std::runtime_error if any structural check fails unless `throw_on_violation`
/// is false.
inline ClockRules generate_clock_rules(SwapPolicy policy = SwapPolicy::Aligned, unsigned threads = 0,
                                       bool throw_on_violation = true) {
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    const std::uint32_t total = kTripleCount;
    if (threads == 0) {
        threads = default_threads();
    }
    threads = std::max(1u, std::min(threads, 64u));

    std::vector<std::uint32_t> fwd(static_cast<std::size_t>(total) * 2, kNone);
    std::vector<std::uint64_t> oversized(threads, 0);
    std::vector<std::uint64_t> self_pairs(threads, 0);
    std::vector<std::uint32_t> first_bad(threads, kNone);

    auto work = [&](unsigned w) {
        const std::uint64_t lo = static_cast<std::uint64_t>(total) * w / threads;
        const std::uint64_t hi = static_cast<std::uint64_t>(total) * (w + 1) / threads;
        for (std::uint64_t i = lo; i < hi; i++) {
            const auto idx = static_cast<std::uint32_t>(i);
            Images imgs = forward_images(triple_from_index(idx), policy);
            if (imgs.count > 2) {
                oversized[w]++;
                first_bad[w] = std::min(first_bad[w], idx);
            }
            std::uint32_t a = kNone, b = kNone;
            if (imgs.count >= 1) {
                a = triple_index(imgs.items[0]);
            }
            if (imgs.count >= 2) {
                b = triple_index(imgs.items[1]);
            }
            if (a == idx || b == idx) {
                self_pairs[w]++;
                first_bad[w] = std::min(first_bad[w], idx);
            }
            if (a != kNone && b != kNone && b < a) {
                std::swap(a, b);
            }
            if (a == b) {
                b = kNone;
            }
            fwd[2 * i] = a;
            fwd[2 * i + 1] = b;
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    GenerationStats stats;
    stats.triples = total;
    for (unsigned w = 0; w < threads; w++) {
        stats.oversized += oversized[w];
        stats.self_pairs += self_pairs[w];
        stats.first_violation = std::min(stats.first_violation, first_bad[w]);
    }

    std::vector<std::uint32_t> counts(static_cast<std::size_t>(total) + 1, 0);
    std::vector<std::uint32_t> indeg(total, 0);
    for (std::uint32_t i = 0; i < total; i++) {
        for (int k = 0; k < 2; k++) {
            auto t = fwd[2 * static_cast<std::size_t>(i) + k];
            if (t != kNone) {
                indeg[t]++;
                stats.forward_pairs++;
            }
        }
    }
    for (std::uint32_t i = 0; i < total; i++) {
        std::uint32_t out = (fwd[2 * static_cast<std::size_t>(i)] != kNone) +
                            (fwd[2 * static_cast<std::size_t>(i) + 1] != kNone);
        if (out > 0) {
            stats.sources++;
        }
        if (indeg[i] > 0) {
            stats.targets++;
        }
        if (out > 0 && indeg[i] > 0) {
            stats.bidirectional++;
            stats.first_violation = std::min(stats.first_violation, i);
        }
        stats.max_forward = std::max<std::uint64_t>(stats.max_forward, out);
        stats.max_backward = std::max<std::uint64_t>(stats.max_backward, indeg[i]);
        counts[i + 1] = counts[i] + out + indeg[i];
    }
    stats.rules = counts[total];

    std::vector<std::uint64_t> rhs(counts[total]);
    std::vector<std::uint32_t> cursor(counts.begin(), counts.end() - 1);
    for (std::uint32_t i = 0; i < total; i++) {
        for (int k = 0; k < 2; k++) {
            auto t = fwd[2 * static_cast<std::size_t>(i) + k];
            if (t != kNone) {
                rhs[cursor[i]++] = t;
            }
        }
    }
    // Backward entries, appended in ascending source order.
    for (std::uint32_t i = 0; i < total; i++) {
        for (int k = 0; k < 2; k++) {
            auto t = fwd[2 * static_cast<std::size_t>(i) + k];
            if (t != kNone) {
                rhs[cursor[t]++] = i;
            }
        }
    }
    fwd.clear();
    fwd.shrink_to_fit();
    indeg.clear();
    indeg.shrink_to_fit();
    cursor.clear();
    cursor.shrink_to_fit();
    for (std::uint32_t i = 0; i < total; i++) {
        std::sort(rhs.begin() + counts[i], rhs.begin() + counts[i + 1]);
    }

    if (throw_on_violation && !stats.ok()) {
        throw std::runtime_error("clock rule generation violated a structural check at window " +
                                 std::to_string(stats.first_violation) + " (oversized=" +
                                 std::to_string(stats.oversized) + ", self=" + std::to_string(stats.self_pairs) +
                                 ", bidirectional=" + std::to_string(stats.bidirectional) + ")");
    }

    std::vector<RuleTable> tables;
    tables.push_back(RuleTable::from_dense(3, total, std::move(counts), std::move(rhs)));
    ClockRules out;
    out.system = RewritingSystem::from_tables(cell_alphabet(), 3, std::move(tables));
    out.stats = stats;
    out.policy = policy;
    return out;
}

/// Process-wide cache; the relation does not depend on the circuit.
inline const ClockRules &clock_rules(SwapPolicy policy = SwapPolicy::Aligned, unsigned threads = 0) {
    static std::mutex mu;
    static std::unique_ptr<ClockRules> cache[2];
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[policy == SwapPolicy::Aligned ? 0 : 1];
    if (!slot) {
        slot = std::make_unique<ClockRules>(generate_clock_rules(policy, threads));
    }
    return *slot;
}

}  // namespace strwalk
