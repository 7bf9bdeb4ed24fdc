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
 * String rewriting systems and exact walk counting on the graphs they induce.
 *
 * A rewriting system is an alphabet plus a symmetric relation on equal-length
 * substrings of width at most `window`. Two strings of the same length are
 * adjacent when they differ inside one window that lies fully inside the string
 * and the two window contents are related. The graph is never materialized:
 * neighborhoods are generated on demand and vertices are interned to compact ids.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "strwalk/big.hpp"

namespace strwalk {

using Symbol = std::uint16_t;
using Word = std::vector<Symbol>;
using VertexId = std::uint32_t;

struct WordHash {
    std::size_t operator()(const Word &w) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (Symbol s : w) {
            h ^= s;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

/// Raised when a configured vertex or work limit is exceeded.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Alphabet {
   public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
        if (tokens_.empty()) {
            throw std::invalid_argument("alphabet must contain at least one symbol");
        }
        if (tokens_.size() > std::numeric_limits<Symbol>::max()) {
            throw std::invalid_argument("alphabet too large");
        }
        for (std::size_t i = 0; i < tokens_.size(); i++) {
            if (tokens_[i].empty()) {
                throw std::invalid_argument("alphabet tokens must be non-empty");
            }
            if (!index_.emplace(tokens_[i], static_cast<Symbol>(i)).second) {
                throw std::invalid_argument("duplicate alphabet token '" + tokens_[i] + "'");
            }
        }
    }

    std::size_t size() const {
        return tokens_.size();
    }
    const std::vector<std::string> &tokens() const {
        return tokens_;
    }
    const std::string &token(Symbol s) const {
        return tokens_.at(s);
    }

    std::optional<Symbol> find(std::string_view token) const {
        auto it = index_.find(std::string(token));
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    Symbol symbol(std::string_view token) const {
        auto s = find(token);
        if (!s) {
            throw std::invalid_argument("unknown alphabet token '" + std::string(token) + "'");
        }
        return *s;
    }

    Word parse(const std::vector<std::string> &tokens) const {
        Word w;
        w.reserve(tokens.size());
        for (const auto &t : tokens) {
            w.push_back(symbol(t));
        }
        return w;
    }

    std::vector<std::string> render(const Word &w) const {
        std::vector<std::string> out;
        out.reserve(w.size());
        for (Symbol s : w) {
            out.push_back(token(s));
        }
        return out;
    }

    bool operator==(const Alphabet &other) const {
        return tokens_ == other.tokens_;
    }

   private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, Symbol> index_;
};

struct Rule {
    Word lhs;
    Word rhs;

    auto operator<=>(const Rule &) const = default;
};

/// Returns the rule set closed under lhs<->rhs, sorted and deduplicated.
/// Rejects rules with mismatched lengths, empty sides, or lhs == rhs.
inline std::vector<Rule> symmetric_close(std::vector<Rule> rules) {
    std::vector<Rule> out;
    out.reserve(rules.size() * 2);
    for (auto &r : rules) {
        if (r.lhs.size() != r.rhs.size()) {
            throw std::invalid_argument("rule sides must have equal length");
        }
        if (r.lhs.empty()) {
            throw std::invalid_argument("rule sides must be non-empty");
        }
        if (r.lhs == r.rhs) {
            throw std::invalid_argument("rule relates a substring to itself");
        }
        out.push_back(Rule{r.rhs, r.lhs});
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// All rules sharing one lhs width, keyed by the mixed-radix encoding of the lhs.
///
/// Small key spaces use a dense offset table (one slot per possible lhs); large ones
/// fall back to a sorted key list with binary search.
class RuleTable {
   public:
    static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 26;

    RuleTable() = default;

    /// `pairs` holds (lhs_key, rhs_key); it is sorted and deduplicated here.
    RuleTable(std::size_t width, std::uint64_t key_space, std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs)
        : width_(width), key_space_(key_space) {
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        dense_ = key_space <= kDenseLimit;
        rhs_.reserve(pairs.size());
        if (dense_) {
            offsets_.assign(key_space + 1, 0);
            for (auto &[l, r] : pairs) {
                offsets_[l + 1]++;
                rhs_.push_back(r);
            }
            for (std::uint64_t k = 0; k < key_space; k++) {
                offsets_[k + 1] += offsets_[k];
            }
        } else {
            offsets_.push_back(0);
            for (auto &[l, r] : pairs) {
                if (keys_.empty() || keys_.back() != l) {
                    if (!keys_.empty()) {
                        offsets_.push_back(static_cast<std::uint32_t>(rhs_.size()));
                    }
                    keys_.push_back(l);
                }
                rhs_.push_back(r);
            }
            offsets_.push_back(static_cast<std::uint32_t>(rhs_.size()));
        }
        check_size();
    }

    /// Dense table from prebuilt CSR arrays (offsets has key_space + 1 entries).
    static RuleTable from_dense(std::size_t width, std::uint64_t key_space, std::vector<std::uint32_t> offsets,
                                std::vector<std::uint64_t> rhs) {
        if (offsets.size() != key_space + 1 || offsets.back() != rhs.size()) {
            throw std::invalid_argument("malformed dense rule table");
        }
        RuleTable t;
        t.width_ = width;
        t.key_space_ = key_space;
        t.dense_ = true;
        t.offsets_ = std::move(offsets);
        t.rhs_ = std::move(rhs);
        return t;
    }

    std::span<const std::uint64_t> lookup(std::uint64_t key) const {
        if (dense_) {
            if (key >= key_space_) {
                return {};
            }
            return {rhs_.data() + offsets_[key], rhs_.data() + offsets_[key + 1]};
        }
        auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
        if (it == keys_.end() || *it != key) {
            return {};
        }
        auto i = static_cast<std::size_t>(it - keys_.begin());
        return {rhs_.data() + offsets_[i], rhs_.data() + offsets_[i + 1]};
    }

    std::size_t width() const {
        return width_;
    }
    std::size_t size() const {
        return rhs_.size();
    }
    bool dense() const {
        return dense_;
    }

    /// Visits every (lhs_key, rhs_key) pair in ascending order.
    template <class F>
    void for_each(F &&f) const {
        if (dense_) {
            for (std::uint64_t k = 0; k < key_space_; k++) {
                for (auto i = offsets_[k]; i < offsets_[k + 1]; i++) {
                    f(k, rhs_[i]);
                }
            }
        } else {
            for (std::size_t j = 0; j < keys_.size(); j++) {
                for (auto i = offsets_[j]; i < offsets_[j + 1]; i++) {
                    f(keys_[j], rhs_[i]);
                }
            }
        }
    }

   private:
    void check_size() const {
        if (rhs_.size() > std::numeric_limits<std::uint32_t>::max()) {
            throw std::length_error("rule table exceeds 2^32 entries");
        }
    }

    std::size_t width_ = 0;
    std::uint64_t key_space_ = 0;
    bool dense_ = true;
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint64_t> rhs_;
};

class RewritingSystem {
   public:
    RewritingSystem() = default;

    RewritingSystem(Alphabet alphabet, std::size_t window, std::vector<Rule> rules)
        : alphabet_(std::move(alphabet)), window_(window) {
        init_radix();
        auto closed = symmetric_close(std::move(rules));
        std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> by_width(window_ + 1);
        for (const auto &r : closed) {
            if (r.lhs.size() > window_) {
                throw std::invalid_argument("rule wider than the window");
            }
            for (Symbol s : r.lhs) {
                check_symbol(s);
            }
            for (Symbol s : r.rhs) {
                check_symbol(s);
            }
            by_width[r.lhs.size()].emplace_back(encode(r.lhs), encode(r.rhs));
        }
        for (std::size_t w = 1; w <= window_; w++) {
            if (!by_width[w].empty()) {
                tables_.emplace_back(w, key_space(w), std::move(by_width[w]));
            }
        }
        count_rules();
    }

    /// Adopts prebuilt tables. Symmetry is the caller's responsibility; see `is_symmetric`.
    static RewritingSystem from_tables(Alphabet alphabet, std::size_t window, std::vector<RuleTable> tables) {
        RewritingSystem sys;
        sys.alphabet_ = std::move(alphabet);
        sys.window_ = window;
        sys.init_radix();
        for (const auto &t : tables) {
            if (t.width() == 0 || t.width() > window) {
                throw std::invalid_argument("rule table width outside [1, window]");
            }
        }
        sys.tables_ = std::move(tables);
        sys.count_rules();
        return sys;
    }

    const Alphabet &alphabet() const {
        return alphabet_;
    }
    std::size_t window() const {
        return window_;
    }
    std::size_t rule_count() const {
        return rule_count_;
    }
    const std::vector<RuleTable> &tables() const {
        return tables_;
    }

    std::uint64_t key_space(std::size_t width) const {
        std::uint64_t k = 1;
        for (std::size_t i = 0; i < width; i++) {
            k *= radix_;
        }
        return k;
    }

    std::uint64_t encode(std::span<const Symbol> syms) const {
        std::uint64_t key = 0;
        for (Symbol s : syms) {
            key = key * radix_ + s;
        }
        return key;
    }

    void decode(std::uint64_t key, std::size_t width, Symbol *out) const {
        for (std::size_t i = width; i-- > 0;) {
            out[i] = static_cast<Symbol>(key % radix_);
            key /= radix_;
        }
    }

    Word decode(std::uint64_t key, std::size_t width) const {
        Word w(width);
        decode(key, width, w.data());
        return w;
    }

    /// Materializes all rules (both directions), sorted.
    std::vector<Rule> rules() const {
        std::vector<Rule> out;
        out.reserve(rule_count_);
        for (const auto &t : tables_) {
            t.for_each([&](std::uint64_t l, std::uint64_t r) {
                out.push_back(Rule{decode(l, t.width()), decode(r, t.width())});
            });
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool contains(const Word &lhs, const Word &rhs) const {
        if (lhs.size() != rhs.size()) {
            return false;
        }
        for (const auto &t : tables_) {
            if (t.width() != lhs.size()) {
                continue;
            }
            auto key = encode(rhs);
            for (auto r : t.lookup(encode(lhs))) {
                if (r == key) {
                    return true;
                }
            }
        }
        return false;
    }

    /// True when every rule's reverse is also present.
    bool is_symmetric() const {
        for (const auto &t : tables_) {
            bool ok = true;
            t.for_each([&](std::uint64_t l, std::uint64_t r) {
                if (!ok) {
                    return;
                }
                auto back = t.lookup(r);
                ok = std::find(back.begin(), back.end(), l) != back.end();
            });
            if (!ok) {
                return false;
            }
        }
        return true;
    }

    /// Calls f(t, position) once per derivation s -> t. A neighbor reachable via
    /// several windows or rules is reported once per derivation.
    template <class F>
    void for_each_derivation(const Word &s, F &&f) const {
        Word t = s;
        for (const auto &table : tables_) {
            const std::size_t w = table.width();
            if (s.size() < w) {
                continue;
            }
            for (std::size_t p = 0; p + w <= s.size(); p++) {
                auto key = encode(std::span<const Symbol>(s.data() + p, w));
                for (auto r : table.lookup(key)) {
                    decode(r, w, t.data() + p);
                    f(static_cast<const Word &>(t), p);
                }
                std::copy(s.begin() + static_cast<std::ptrdiff_t>(p), s.begin() + static_cast<std::ptrdiff_t>(p + w),
                          t.begin() + static_cast<std::ptrdiff_t>(p));
            }
        }
    }

   private:
    void init_radix() {
        if (window_ < 1) {
            throw std::invalid_argument("window must be at least 1");
        }
        radix_ = alphabet_.size();
        if (radix_ == 0) {
            throw std::invalid_argument("rewriting system needs a non-empty alphabet");
        }
        long double bits = static_cast<long double>(window_) * std::log2(static_cast<long double>(radix_));
        if (bits >= 63) {
            throw std::invalid_argument("alphabet^window does not fit a 64-bit key");
        }
    }

    void check_symbol(Symbol s) const {
        if (s >= alphabet_.size()) {
            throw std::invalid_argument("rule symbol outside the alphabet");
        }
    }

    void count_rules() {
        rule_count_ = 0;
        for (const auto &t : tables_) {
            rule_count_ += t.size();
        }
    }

    Alphabet alphabet_;
    std::size_t window_ = 1;
    std::uint64_t radix_ = 1;
    std::vector<RuleTable> tables_;
    std::size_t rule_count_ = 0;
};

/// Distinct neighbors of s, sorted. A is a 0/1 matrix, so repeated derivations collapse.
inline std::vector<Word> neighbors(const RewritingSystem &sys, const Word &s) {
    std::vector<Word> out;
    sys.for_each_derivation(s, [&](const Word &t, std::size_t) { out.push_back(t); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Neighbors of s with the number of distinct (window, rule) derivations of each.
inline std::vector<std::pair<Word, std::uint32_t>> neighbor_multiplicities(const RewritingSystem &sys, const Word &s) {
    std::vector<Word> all;
    sys.for_each_derivation(s, [&](const Word &t, std::size_t) { all.push_back(t); });
    std::sort(all.begin(), all.end());
    std::vector<std::pair<Word, std::uint32_t>> out;
    for (auto &w : all) {
        if (!out.empty() && out.back().first == w) {
            out.back().second++;
        } else {
            out.emplace_back(std::move(w), 1);
        }
    }
    return out;
}

/// Sparse column of A^n: interned vertex -> number of walks of length step_index.
struct WalkVector {
    std::unordered_map<VertexId, BigInt> entries;
    std::size_t step_index = 0;

    BigInt at(VertexId v) const {
        auto it = entries.find(v);
        return it == entries.end() ? BigInt(0) : it->second;
    }
};

struct WalkLimits {
    std::size_t max_vertices = 2'000'000;
    std::size_t max_vertex_steps = 200'000'000;
};

/// Interns vertices and caches their neighborhoods; the system must outlive the engine.
class WalkEngine {
   public:
    explicit WalkEngine(const RewritingSystem &sys, WalkLimits limits = {}) : sys_(&sys), limits_(limits) {
    }

    const RewritingSystem &system() const {
        return *sys_;
    }

    VertexId intern(const Word &w) {
        auto it = ids_.find(w);
        if (it != ids_.end()) {
            return it->second;
        }
        if (words_.size() >= limits_.max_vertices) {
            throw BudgetExceeded("vertex budget of " + std::to_string(limits_.max_vertices) + " exceeded");
        }
        auto id = static_cast<VertexId>(words_.size());
        ids_.emplace(w, id);
        words_.push_back(w);
        adj_.emplace_back();
        expanded_.push_back(false);
        return id;
    }

    std::optional<VertexId> find(const Word &w) const {
        auto it = ids_.find(w);
        if (it == ids_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    const Word &word(VertexId v) const {
        return words_.at(v);
    }
    std::size_t vertex_count() const {
        return words_.size();
    }
    std::size_t vertex_steps() const {
        return vertex_steps_;
    }

    std::span<const VertexId> neighbors(VertexId v) {
        if (!expanded_[v]) {
            std::vector<VertexId> ids;
            Word copy = words_[v];
            for (const auto &t : strwalk::neighbors(*sys_, copy)) {
                ids.push_back(intern(t));
            }
            adj_[v] = std::move(ids);
            expanded_[v] = true;
        }
        return adj_[v];
    }

    WalkVector indicator(VertexId v) const {
        WalkVector out;
        out.entries.emplace(v, 1);
        return out;
    }

    /// result(t) = sum over u adjacent to t of v(u).
    WalkVector step(const WalkVector &v) {
        charge(v.entries.size());
        WalkVector out;
        out.step_index = v.step_index + 1;
        out.entries.reserve(v.entries.size() * 2);
        for (const auto &[u, val] : v.entries) {
            for (VertexId t : neighbors(u)) {
                out.entries[t] += val;
            }
        }
        return out;
    }

    void charge(std::size_t frontier) {
        vertex_steps_ += frontier;
        if (vertex_steps_ > limits_.max_vertex_steps) {
            throw BudgetExceeded("vertex-step budget of " + std::to_string(limits_.max_vertex_steps) + " exceeded");
        }
    }

   private:
    const RewritingSystem *sys_;
    WalkLimits limits_;
    std::unordered_map<Word, VertexId, WordHash> ids_;
    std::vector<Word> words_;
    std::vector<std::vector<VertexId>> adj_;
    std::vector<bool> expanded_;
    std::size_t vertex_steps_ = 0;
};

namespace detail {

inline void require_same_length(const Word &a, const Word &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("strings have different lengths");
    }
}

}  // namespace detail

/// Walk vectors A^k e_s for k = 0..n (inclusive), sharing one frontier expansion.
inline std::vector<WalkVector> walk_columns(WalkEngine &engine, const Word &s, std::size_t n) {
    std::vector<WalkVector> out;
    out.reserve(n + 1);
    out.push_back(engine.indicator(engine.intern(s)));
    for (std::size_t k = 0; k < n; k++) {
        out.push_back(engine.step(out.back()));
    }
    return out;
}

/// (A^n)_{s,t}.
inline BigInt count_walks(const RewritingSystem &sys, const Word &s, const Word &t, std::size_t n,
                          WalkLimits limits = {}) {
    detail::require_same_length(s, t);
    WalkEngine engine(sys, limits);
    WalkVector v = engine.indicator(engine.intern(s));
    for (std::size_t k = 0; k < n; k++) {
        v = engine.step(v);
    }
    auto id = engine.find(t);
    return id ? v.at(*id) : BigInt(0);
}

/// Delta_{s,t,t'}(n) = (A^n)_{s,t} - (A^n)_{s,t'}, exact.
inline BigInt delta(const RewritingSystem &sys, const Word &s, const Word &t, const Word &t_prime, std::size_t n,
                    WalkLimits limits = {}) {
    detail::require_same_length(s, t);
    detail::require_same_length(s, t_prime);
    if (t == t_prime) {
        return 0;
    }
    WalkEngine engine(sys, limits);
    WalkVector v = engine.indicator(engine.intern(s));
    for (std::size_t k = 0; k < n; k++) {
        v = engine.step(v);
    }
    auto a = engine.find(t);
    auto b = engine.find(t_prime);
    return (a ? v.at(*a) : BigInt(0)) - (b ? v.at(*b) : BigInt(0));
}

struct ScaledDelta {
    double value = 0;  ///< approximates Delta(n) / c^n
    /// Accumulated relative error bound n * eps * (max frontier degree), relative to
    /// the largest scaled entry magnitude.
    double relative_error_bound = 0;
    std::size_t max_degree = 0;
};

/// Delta(n)/c^n in floating point, rescaling by 1/c every step so entries stay O(1).
/// Throws std::range_error if any scaled entry overflows or underflows.
inline ScaledDelta delta_scaled(const RewritingSystem &sys, const Word &s, const Word &t, const Word &t_prime,
                                std::size_t n, double c, WalkLimits limits = {}) {
    detail::require_same_length(s, t);
    detail::require_same_length(s, t_prime);
    if (!(c > 0) || !std::isfinite(c)) {
        throw std::invalid_argument("scale c must be positive");
    }
    ScaledDelta out;
    if (t == t_prime) {
        return out;
    }
    WalkEngine engine(sys, limits);
    std::unordered_map<VertexId, double> v{{engine.intern(s), 1.0}};
    const double inv_c = 1.0 / c;
    for (std::size_t k = 0; k < n; k++) {
        engine.charge(v.size());
        std::unordered_map<VertexId, double> next;
        next.reserve(v.size() * 2);
        for (const auto &[u, val] : v) {
            auto nb = engine.neighbors(u);
            out.max_degree = std::max(out.max_degree, nb.size());
            const double scaled = val * inv_c;
            if (val != 0 && (scaled == 0 || std::fpclassify(scaled) == FP_SUBNORMAL)) {
                throw std::range_error("scaled walk entry underflowed at step " + std::to_string(k + 1));
            }
            for (VertexId w : nb) {
                next[w] += scaled;
            }
        }
        for (const auto &[w, val] : next) {
            if (!std::isfinite(val)) {
                throw std::range_error("scaled walk entry overflowed at step " + std::to_string(k + 1));
            }
            if (val != 0 && std::fpclassify(val) == FP_SUBNORMAL) {
                throw std::range_error("scaled walk entry underflowed at step " + std::to_string(k + 1));
            }
        }
        v = std::move(next);
    }
    auto get = [&](const Word &w) {
        auto id = engine.find(w);
        if (!id) {
            return 0.0;
        }
        auto it = v.find(*id);
        return it == v.end() ? 0.0 : it->second;
    };
    out.value = get(t) - get(t_prime);
    out.relative_error_bound = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                               static_cast<double>(std::max<std::size_t>(out.max_degree, 1));
    return out;
}

/// Reference walk counter: depth-first enumeration of every length-n walk.
///
/// Neighbors are found by scanning the raw rule list at every position, with no
/// shared code with the indexed lookup used by `count_walks`.
inline BigInt brute_force_count(const RewritingSystem &sys, const Word &s, const Word &t, std::size_t n,
                                std::size_t node_limit = 5'000'000) {
    detail::require_same_length(s, t);
    const auto rules = sys.rules();
    std::size_t nodes = 0;
    std::function<BigInt(const Word &, std::size_t)> dfs = [&](const Word &cur, std::size_t left) -> BigInt {
        if (++nodes > node_limit) {
            throw BudgetExceeded("brute-force node limit exceeded");
        }
        if (left == 0) {
            return cur == t ? 1 : 0;
        }
        std::vector<Word> next;
        for (const auto &r : rules) {
            const std::size_t w = r.lhs.size();
            for (std::size_t p = 0; p + w <= cur.size(); p++) {
                if (std::equal(r.lhs.begin(), r.lhs.end(), cur.begin() + static_cast<std::ptrdiff_t>(p))) {
                    Word nb = cur;
                    std::copy(r.rhs.begin(), r.rhs.end(), nb.begin() + static_cast<std::ptrdiff_t>(p));
                    next.push_back(std::move(nb));
                }
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        BigInt total = 0;
        for (const auto &nb : next) {
            total += dfs(nb, left - 1);
        }
        return total;
    };
    return dfs(s, n);
}

/// Exact (A^m)_{s,t} / d^m on a d-regular component.
///
/// Regularity is checked on every vertex touched by the m-step frontier expansion;
/// throws std::domain_error when a degree differs from deg(s).
inline BigRational walk_probability(const RewritingSystem &sys, const Word &s, const Word &t, std::size_t m,
                                    WalkLimits limits = {}) {
    detail::require_same_length(s, t);
    WalkEngine engine(sys, limits);
    auto sid = engine.intern(s);
    const std::size_t d = engine.neighbors(sid).size();
    WalkVector v = engine.indicator(sid);
    auto check = [&](const WalkVector &vec) {
        for (const auto &[u, val] : vec.entries) {
            if (engine.neighbors(u).size() != d) {
                throw std::domain_error("component is not regular: degree " +
                                        std::to_string(engine.neighbors(u).size()) + " != " + std::to_string(d));
            }
        }
    };
    check(v);
    for (std::size_t k = 0; k < m; k++) {
        v = engine.step(v);
        check(v);
    }
    auto id = engine.find(t);
    BigInt count = id ? v.at(*id) : BigInt(0);
    if (m == 0) {
        return BigRational(count);
    }
    if (d == 0) {
        return BigRational(0);
    }
    BigInt denom = boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(m));
    return BigRational(count, denom);
}

}  // namespace strwalk
