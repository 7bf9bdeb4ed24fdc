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
 * End-to-end checks of a compiled instance: clock orbit structure, the
 * walk-count identity, the sign decision and the gap/growth promises.
 */

#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strwalk/amplitude.hpp"
#include "strwalk/compiler.hpp"
#include "strwalk/reachable.hpp"

namespace strwalk {

struct CheckEntry {
    std::string name;
    bool passed = true;
    /// Reported but never fails the report.
    bool informational = false;
    std::string detail;
    Json measured = Json::object();
};

struct VerificationReport {
    std::vector<CheckEntry> checks;
    std::optional<int> sigma;
    std::vector<int> sigma_candidates;

    CheckEntry &add(std::string name, bool passed, std::string detail, Json measured = Json::object()) {
        checks.push_back({std::move(name), passed, false, std::move(detail), std::move(measured)});
        return checks.back();
    }

    CheckEntry &note(std::string name, bool passed, std::string detail, Json measured = Json::object()) {
        checks.push_back({std::move(name), passed, true, std::move(detail), std::move(measured)});
        return checks.back();
    }

    void append(const std::vector<CheckEntry> &more) {
        checks.insert(checks.end(), more.begin(), more.end());
    }

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const CheckEntry &c) { return c.informational || c.passed; });
    }

    const CheckEntry *find(const std::string &name) const {
        for (const auto &c : checks) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }

    Json to_json() const {
        Json cs = Json::array();
        for (const auto &c : checks) {
            cs.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"informational", c.informational},
                          {"detail", c.detail},
                          {"measured", c.measured}});
        }
        Json j{{"passed", passed()}, {"sigma_candidates", sigma_candidates}, {"checks", std::move(cs)}};
        j["sigma"] = sigma ? Json(*sigma) : Json(nullptr);
        return j;
    }
};

/// Sparse vector over basis strings with exact coefficients; ordered for determinism.
using AmpVector = std::map<Word, ExactAmplitude>;

namespace detail {

inline void accumulate(AmpVector &v, const Word &w, const ExactAmplitude &a) {
    auto [it, fresh] = v.try_emplace(w, a);
    if (!fresh) {
        it->second += a;
        if (it->second.is_zero()) {
            v.erase(it);
        }
    }
}

inline ExactAmplitude inner(const AmpVector &a, const AmpVector &b) {
    ExactAmplitude out;
    const AmpVector &small = a.size() <= b.size() ? a : b;
    const AmpVector &large = a.size() <= b.size() ? b : a;
    for (const auto &[w, x] : small) {
        auto it = large.find(w);
        if (it != large.end()) {
            out += x * it->second;
        }
    }
    return out;
}

inline std::string describe(const Word &w) {
    for (Symbol s : w) {
        if (s >= kCellCount) {
            return "<" + std::to_string(w.size()) + " symbols>";
        }
    }
    return render_bands(to_cells(w));
}

inline Triple window_at(const Word &w, std::size_t j) {
    return {Cell::from_index(w[j - 1]), Cell::from_index(w[j]), Cell::from_index(w[j + 1])};
}

}  // namespace detail

/// Forward clock moves of one basis string: the images of every window whose
/// cell 0 lies in [1, L-2], and the number of windows that moved.
struct ForwardMoves {
    std::vector<Word> images;
    std::vector<std::size_t> windows;
};

inline ForwardMoves forward_moves(const Word &w, SwapPolicy policy) {
    ForwardMoves out;
    for (std::size_t j = 1; j + 1 < w.size(); j++) {
        Images im = forward_images(detail::window_at(w, j), policy);
        if (im.count == 0) {
            continue;
        }
        out.windows.push_back(j);
        for (const Triple &t : im) {
            Word next = w;
            next[j - 1] = t[0].index();
            next[j] = t[1].index();
            next[j + 1] = t[2].index();
            out.images.push_back(std::move(next));
        }
    }
    return out;
}

/// H applied to a sparse vector, with H_{u,v} the number of derivations u -> v.
inline AmpVector apply_weighted(const RewritingSystem &sys, const AmpVector &v) {
    AmpVector out;
    for (const auto &[w, a] : v) {
        for (const auto &[nb, mult] : neighbor_multiplicities(sys, w)) {
            detail::accumulate(out, nb, a * ExactAmplitude(static_cast<long long>(mult)));
        }
    }
    return out;
}

struct Orbit {
    std::vector<AmpVector> u;
    std::vector<CheckEntry> checks;
};

/// Builds u_0 = (alpha_1 - alpha_0)/sqrt2, u_{i+1} = F u_i / sqrt2 and checks that
/// the u_i span an isometric copy of the ell-vertex path under H/sqrt2.
inline Orbit orbit_check(const Compilation &comp, const RewritingSystem &sys,
                         SwapPolicy policy = SwapPolicy::Aligned) {
    Orbit out;
    const std::size_t ell = comp.run.ell;
    const Word a0 = to_word(comp.strings.alpha0);
    const Word a1 = to_word(comp.strings.alpha1);
    const ExactAmplitude r2 = ExactAmplitude::inv_sqrt2();

    AmpVector u0;
    detail::accumulate(u0, a1, r2);
    detail::accumulate(u0, a0, -r2);
    out.u.push_back(u0);

    std::string unique_fail, term_fail;
    std::size_t fail_step = 0;
    std::size_t max_support = u0.size();
    for (std::size_t i = 0; i < ell && unique_fail.empty() && term_fail.empty(); i++) {
        AmpVector next;
        for (const auto &[w, a] : out.u[i]) {
            auto moves = forward_moves(w, policy);
            if (i + 1 == ell) {
                if (!moves.windows.empty()) {
                    term_fail = "forward move after step " + std::to_string(i) + " on " + detail::describe(w);
                    fail_step = i;
                    break;
                }
                continue;
            }
            if (moves.windows.size() != 1 || moves.windows[0] != comp.run.active[i]) {
                unique_fail = std::to_string(moves.windows.size()) + " forward windows at step " + std::to_string(i) +
                              " on " + detail::describe(w);
                fail_step = i;
                break;
            }
            for (const auto &img : moves.images) {
                detail::accumulate(next, img, a * r2);
            }
        }
        if (i + 1 < ell && unique_fail.empty()) {
            max_support = std::max(max_support, next.size());
            out.u.push_back(std::move(next));
        }
    }
    out.checks.push_back({"orbit_forward_unique", unique_fail.empty(), false,
                          unique_fail.empty() ? "one forward transition per configuration for " +
                                                    std::to_string(ell - 1) + " steps"
                                              : unique_fail,
                          {{"ell", ell}, {"max_support", max_support}, {"step", fail_step}}});
    out.checks.push_back({"orbit_terminates", unique_fail.empty() && term_fail.empty(), false,
                          term_fail.empty() ? (unique_fail.empty() ? "F^ell alpha = 0" : "orbit not completed")
                                            : term_fail,
                          {{"ell", ell}}});
    if (!unique_fail.empty() || !term_fail.empty()) {
        return out;
    }

    std::string back_fail;
    for (const Word &a : {a0, a1}) {
        auto fw = forward_moves(a, policy).images;
        std::sort(fw.begin(), fw.end());
        fw.erase(std::unique(fw.begin(), fw.end()), fw.end());
        auto nb = neighbors(sys, a);
        for (const auto &w : nb) {
            if (!std::binary_search(fw.begin(), fw.end(), w)) {
                back_fail = "backward image " + detail::describe(w) + " of " + detail::describe(a);
                break;
            }
        }
        if (!back_fail.empty()) {
            break;
        }
    }
    out.checks.push_back({"orbit_no_backward", back_fail.empty(), false,
                          back_fail.empty() ? "F^dagger alpha_0 = F^dagger alpha_1 = 0" : back_fail});

    // Gram matrix through a string -> (index, coefficient) table.
    std::map<Word, std::vector<std::pair<std::size_t, ExactAmplitude>>> by_string;
    for (std::size_t i = 0; i < out.u.size(); i++) {
        for (const auto &[w, a] : out.u[i]) {
            by_string[w].emplace_back(i, a);
        }
    }
    std::map<std::pair<std::size_t, std::size_t>, ExactAmplitude> gram;
    for (const auto &[w, list] : by_string) {
        for (const auto &[i, x] : list) {
            for (const auto &[j, y] : list) {
                if (i <= j) {
                    gram[{i, j}] += x * y;
                }
            }
        }
    }
    std::string ortho_fail;
    for (std::size_t i = 0; i < out.u.size() && ortho_fail.empty(); i++) {
        if (!(gram[{i, i}] == ExactAmplitude(1))) {
            ortho_fail = "<u_" + std::to_string(i) + "|u_" + std::to_string(i) + "> = " + gram[{i, i}].str();
        }
    }
    for (const auto &[ij, v] : gram) {
        if (ij.first != ij.second && !v.is_zero() && ortho_fail.empty()) {
            ortho_fail = "<u_" + std::to_string(ij.first) + "|u_" + std::to_string(ij.second) + "> = " + v.str();
        }
    }
    out.checks.push_back({"orbit_orthonormal", ortho_fail.empty(), false,
                          ortho_fail.empty() ? "u_0..u_{ell-1} orthonormal" : ortho_fail,
                          {{"vectors", out.u.size()}}});

    // H u_i = sqrt2 (u_{i-1} + u_{i+1}) exactly, i.e. <u_i|H|u_j> = sqrt2 P_ij.
    std::string path_fail;
    std::size_t path_step = 0;
    for (std::size_t i = 0; i < out.u.size(); i++) {
        AmpVector hu = apply_weighted(sys, out.u[i]);
        AmpVector want;
        if (i > 0) {
            for (const auto &[w, a] : out.u[i - 1]) {
                detail::accumulate(want, w, a * ExactAmplitude::sqrt2());
            }
        }
        if (i + 1 < out.u.size()) {
            for (const auto &[w, a] : out.u[i + 1]) {
                detail::accumulate(want, w, a * ExactAmplitude::sqrt2());
            }
        }
        if (hu != want) {
            path_step = i;
            path_fail = "H u_" + std::to_string(i) + " leaves span(u_{i-1}, u_{i+1})";
            for (const auto &[w, a] : hu) {
                auto it = want.find(w);
                if (it == want.end() || !(it->second == a)) {
                    path_fail += " at " + detail::describe(w) + " (amplitude " + a.str() + ")";
                    break;
                }
            }
            break;
        }
        if (i + 1 < out.u.size() && !(detail::inner(out.u[i + 1], hu) == ExactAmplitude::sqrt2())) {
            path_step = i;
            path_fail = "<u_" + std::to_string(i + 1) + "|H|u_" + std::to_string(i) + "> != sqrt2";
            break;
        }
    }
    out.checks.push_back({"orbit_path_isometry", path_fail.empty(), false,
                          path_fail.empty() ? "H restricted to the orbit equals sqrt2 times the path adjacency"
                                            : path_fail,
                          {{"ell", ell}, {"step", path_step}, {"scale", "sqrt2"}}});
    return out;
}

/// Weighted adjacency equals the 0/1 adjacency on the reachable set, edges are
/// symmetric and no rule fires at the two outermost windows.
inline std::vector<CheckEntry> reachable_checks(const CompiledInstance &inst, std::size_t vertex_limit) {
    std::vector<CheckEntry> out;
    const RewritingSystem &sys = *inst.system;
    ReachableGraph g;
    try {
        g = build_reachable(sys, std::vector<Word>{inst.s, inst.t, inst.t_prime}, kUnlimitedDepth, vertex_limit);
    } catch (const BudgetExceeded &e) {
        out.push_back({"reachable_closure", false, false, e.what(), {{"vertex_limit", vertex_limit}}});
        return out;
    }
    std::uint32_t max_weight = 0;
    std::string weight_fail, sym_fail, boundary_fail;
    std::size_t edges = 0;
    const std::size_t L = inst.s.size();
    for (VertexId v = 0; v < g.size(); v++) {
        for (std::size_t k = 0; k < g.adjacency[v].size(); k++) {
            VertexId u = g.adjacency[v][k];
            edges++;
            max_weight = std::max(max_weight, g.weights[v][k]);
            if (g.weights[v][k] != 1 && weight_fail.empty()) {
                weight_fail = std::to_string(g.weights[v][k]) + " derivations " + detail::describe(g.vertices[v]) +
                              " -> " + detail::describe(g.vertices[u]);
            }
            const auto &back = g.adjacency[u];
            if (!std::binary_search(back.begin(), back.end(), v) && sym_fail.empty()) {
                sym_fail = "edge without reverse from " + detail::describe(g.vertices[v]);
            }
        }
        if (boundary_fail.empty() && L >= 3 && sys.window() == 3) {
            sys.for_each_derivation(g.vertices[v], [&](const Word &, std::size_t p) {
                if ((p == 0 || p + 3 == L) && boundary_fail.empty()) {
                    boundary_fail = "rule at window " + std::to_string(p + 1) + " of " + detail::describe(g.vertices[v]);
                }
            });
        }
    }
    Json size{{"vertices", g.size()}, {"edges", edges}};
    out.push_back({"reachable_closure", true, false, "closed under neighbors", size});
    out.push_back({"weighted_adjacency_unit", weight_fail.empty(), false,
                   weight_fail.empty() ? "every edge has exactly one derivation" : weight_fail,
                   {{"max_weight", max_weight}, {"tolerance", 0}}});
    out.push_back({"adjacency_symmetric", sym_fail.empty(), false, sym_fail.empty() ? "edge (u,v) iff (v,u)" : sym_fail});
    out.push_back({"boundary_inert", boundary_fail.empty(), false,
                   boundary_fail.empty() ? "no rule touches the first or last window" : boundary_fail});
    return out;
}

struct VerifyOptions {
    /// Largest n for exact counting; default max(ell + 5, 60).
    std::optional<std::size_t> max_steps;
    std::size_t max_vertex_steps = 1'000'000;
    std::size_t max_vertices = 2'000'000;
    std::size_t reachable_limit = 200'000;
    /// Resolve sigma on the one-qubit [H] instance and require it here too.
    bool global_sigma = true;
};

struct EndToEnd {
    std::vector<BigInt> delta;  ///< Delta(0..n_max)
    std::size_t n_requested = 0;
    std::size_t n_max = 0;
    bool truncated = false;
    std::vector<int> candidates;  ///< sigma values matching every n
    std::size_t compared = 0;
    std::size_t parity_zero_failures = 0;
    std::string first_mismatch;
};

/// sigma * sqrt2^n * overlap * corner / sqrt(1 + d), exact.
inline ExactAmplitude identity_value(int sigma, std::size_t n, const ExactAmplitude &overlap, const BigInt &corner,
                                     int d_parity) {
    ExactAmplitude v = ExactAmplitude::sqrt2_pow(n) * overlap * ExactAmplitude(corner);
    if (d_parity) {
        v *= ExactAmplitude::inv_sqrt2();
    }
    return sigma < 0 ? -v : v;
}

inline EndToEnd end_to_end(const CompiledInstance &inst, const ExactAmplitude &overlap, std::size_t n_requested,
                           const VerifyOptions &opt = {}) {
    EndToEnd out;
    out.n_requested = n_requested;
    WalkEngine engine(*inst.system, {opt.max_vertices, opt.max_vertex_steps});
    WalkVector v = engine.indicator(engine.intern(inst.s));
    auto read = [&](const WalkVector &vec) {
        auto a = engine.find(inst.t);
        auto b = engine.find(inst.t_prime);
        return (a ? vec.at(*a) : BigInt(0)) - (b ? vec.at(*b) : BigInt(0));
    };
    out.delta.push_back(read(v));
    for (std::size_t n = 1; n <= n_requested; n++) {
        try {
            v = engine.step(v);
        } catch (const BudgetExceeded &) {
            out.truncated = true;
            break;
        }
        out.delta.push_back(read(v));
    }
    out.n_max = out.delta.size() - 1;

    auto corners = corner_exact_series(inst.ell, out.n_max);
    bool fits[2] = {true, true};
    const int sigmas[2] = {+1, -1};
    for (std::size_t n = 0; n <= out.n_max; n++) {
        if (n % 2 == inst.ell % 2) {
            if (out.delta[n] != 0) {
                out.parity_zero_failures++;
            }
            continue;
        }
        out.compared++;
        ExactAmplitude d(out.delta[n]);
        for (int k = 0; k < 2; k++) {
            if (fits[k] && !(identity_value(sigmas[k], n, overlap, corners[n], inst.d_parity) == d)) {
                fits[k] = false;
                if (out.first_mismatch.empty() && !fits[0] && !fits[1]) {
                    out.first_mismatch = "n = " + std::to_string(n) + ": Delta = " + out.delta[n].str() +
                                         ", identity = +/-" +
                                         identity_value(1, n, overlap, corners[n], inst.d_parity).str();
                }
            }
        }
    }
    for (int k = 0; k < 2; k++) {
        if (fits[k]) {
            out.candidates.push_back(sigmas[k]);
        }
    }
    return out;
}

inline std::size_t default_max_steps(std::size_t ell) {
    return std::max<std::size_t>(ell + 5, 60);
}

/// Sign constant fixed by brute force on the smallest instance: one qubit, [H], x = 0.
inline int reference_sigma() {
    static std::once_flag once;
    static int sigma = 0;
    std::call_once(once, [] {
        Circuit h = parse_circuit_text("qubits 1\nh 0\n");
        auto comp = compile(h, {false});
        auto e2e = end_to_end(comp.instance, comp.overlap, default_max_steps(comp.instance.ell));
        if (e2e.candidates.size() != 1) {
            throw std::logic_error("reference instance does not determine the sign constant");
        }
        sigma = e2e.candidates[0];
    });
    return sigma;
}

namespace detail {

inline HighFloat high_abs(const BigInt &v) {
    return HighFloat(BigInt(boost::multiprecision::abs(v)));
}

inline HighFloat high_lambda(std::size_t ell, std::size_t j) {
    const HighFloat pi = boost::math::constants::pi<HighFloat>();
    return 2 * boost::multiprecision::cos(pi * HighFloat(j + 1) / HighFloat(ell + 1));
}

/// First n with |Delta(n)| > scale^n, and the largest ratio |Delta(n)| / scale^n.
struct GrowthScan {
    std::optional<std::size_t> first_violation;
    double max_ratio = 0;
};

inline GrowthScan growth_scan(const std::vector<BigInt> &delta, const HighFloat &scale) {
    GrowthScan out;
    HighFloat pw = 1;
    for (std::size_t n = 0; n < delta.size(); n++) {
        HighFloat d = high_abs(delta[n]);
        if (d > pw && !out.first_violation) {
            out.first_violation = n;
        }
        if (pw > 0) {
            out.max_ratio = std::max(out.max_ratio, static_cast<double>(d / pw));
        } else if (d > 0) {
            out.max_ratio = std::numeric_limits<double>::infinity();
        }
        pw *= scale;
    }
    return out;
}

}  // namespace detail

/// Sign of Delta at m_sign, growth up to the counted horizon and beyond via the
/// certified identity, and the gap at paper-mode m.
inline std::vector<CheckEntry> sign_and_promise_check(const CompiledInstance &inst, const ExactAmplitude &overlap,
                                                      const EndToEnd &e2e, int sigma) {
    std::vector<CheckEntry> out;
    const std::size_t ell = inst.ell;
    const int ov_sign = overlap.sign();
    const std::size_t m_sign = choose_m(ell, MMode::SignOnly);

    if (m_sign > e2e.n_max) {
        out.push_back({"sign", false, false, "Delta(m_sign) not counted within the budget", {{"m_sign", m_sign}}});
    } else {
        const BigInt &d = e2e.delta[m_sign];
        const int got = d.sign();
        Json meas{{"m_sign", m_sign}, {"delta", d.str()}, {"overlap", overlap.str()}, {"sigma", sigma}};
        if (ov_sign == 0) {
            bool all_zero = std::all_of(e2e.delta.begin(), e2e.delta.end(), [](const BigInt &x) { return x == 0; });
            out.push_back({"sign", all_zero, false,
                           all_zero ? "zero overlap and Delta(n) = 0 for every counted n"
                                    : "zero overlap but some Delta(n) != 0",
                           meas});
        } else {
            bool ok = got == sigma * ov_sign;
            out.push_back({"sign", ok, false,
                           "sign(Delta(" + std::to_string(m_sign) + ")) = " + std::to_string(got) +
                               ", sigma * sign(overlap) = " + std::to_string(sigma * ov_sign),
                           meas});
        }
    }

    PathSpectrum spec(ell);
    const long double inv_d = inst.d_parity ? 1.0L / std::sqrt(2.0L) : 1.0L;
    const long double ov_abs = std::fabs(overlap.to_long_double());

    {
        HighFloat c0 = boost::multiprecision::sqrt(HighFloat(2)) * detail::high_lambda(ell, 0);
        auto scan = detail::growth_scan(e2e.delta, c0);
        bool ok = !scan.first_violation;
        out.push_back({"growth_counted", ok, false,
                       ok ? "|Delta(n)| <= (sqrt2 lambda_0)^n for n <= " + std::to_string(e2e.n_max)
                          : "violated at n = " + std::to_string(*scan.first_violation),
                       {{"n_max", e2e.n_max}, {"max_ratio", scan.max_ratio}, {"c", inst.c}, {"tolerance", 0}}});
    }
    {
        // Beyond the counted horizon: |Delta(n)|/c^n = |overlap| scaled_sum(n) / sqrt(1+d).
        std::set<std::size_t> ns = {choose_m(ell, MMode::SignOnly), choose_m(ell, MMode::Minimal),
                                    choose_m(ell, MMode::Paper)};
        if (inst.m > 0) {
            ns.insert(inst.m);
        }
        for (std::size_t n = e2e.n_max + 1; n <= 4 * (ell + 1) * (ell + 1); n = n * 2 + 1) {
            ns.insert(n);
        }
        double worst = 0;
        std::size_t worst_n = 0;
        for (std::size_t n : ns) {
            double r = static_cast<double>(ov_abs * inv_d * std::fabs(spec.scaled_sum(n)));
            if (r > worst) {
                worst = r;
                worst_n = n;
            }
        }
        constexpr double kTol = 1e-12;
        bool ok = worst <= 1 + kTol;
        out.push_back({"growth_identity", ok, false,
                       "max |Delta(n)|/c^n over " + std::to_string(ns.size()) + " large n is " + std::to_string(worst),
                       {{"max_ratio", worst}, {"at_n", worst_n}, {"tolerance", kTol}}});
    }
    {
        // Interior maximum |lambda_j| is lambda_1 for ell > 2 and 0 for ell = 2.
        HighFloat l1 = ell > 2 ? HighFloat(boost::multiprecision::abs(detail::high_lambda(ell, 1))) : HighFloat(0);
        HighFloat c1 = boost::multiprecision::sqrt(HighFloat(2)) * l1;
        auto scan = detail::growth_scan(e2e.delta, c1);
        bool ok = !scan.first_violation;
        out.push_back({"growth_lambda1", ok, true,
                       ok ? "|Delta(n)| <= (sqrt2 lambda_1)^n held for every counted n"
                          : "|Delta(n)| > (sqrt2 lambda_1)^n first at n = " + std::to_string(*scan.first_violation),
                       {{"c_lambda1", static_cast<double>(std::sqrt(2.0L) * spec.lambda1())},
                        {"max_ratio", scan.max_ratio},
                        {"n_max", e2e.n_max}}});
    }
    {
        const std::size_t m_paper = choose_m(ell, MMode::Paper);
        double margin = static_cast<double>(ov_abs * inv_d * std::fabs(spec.scaled_sum(m_paper)));
        constexpr double kTol = 1e-12;
        bool ok = margin >= inst.epsilon * (1 - kTol);
        Json meas{{"m", m_paper}, {"margin", margin}, {"epsilon", inst.epsilon}, {"tolerance", kTol}};
        if (ov_abs < 1.0L / 3) {
            out.push_back({"gap", ok, true,
                           "overlap " + overlap.str() + " is below 1/3, outside the promise; margin " +
                               std::to_string(margin),
                           meas});
        } else {
            out.push_back({"gap", ok, false,
                           "|Delta(m)|/c^m = " + std::to_string(margin) + " vs epsilon = " + std::to_string(inst.epsilon),
                           meas});
        }
    }
    return out;
}

/// Full check of an instance against a fresh compilation of its circuit.
inline VerificationReport verify(const Compilation &comp, const CompiledInstance &inst, const VerifyOptions &opt = {}) {
    VerificationReport rep;
    const auto &ref = comp.instance;
    {
        bool same = inst.system->alphabet() == ref.system->alphabet() && inst.system->window() == ref.system->window() &&
                    inst.s == ref.s && inst.t == ref.t && inst.t_prime == ref.t_prime && inst.ell == ref.ell &&
                    inst.d_parity == ref.d_parity;
        bool same_rules = inst.system->rule_count() == ref.system->rule_count();
        rep.add("instance_matches_circuit", same && same_rules,
                same ? (same_rules ? "s, t, t', ell and d match the compiled circuit" : "rule count differs")
                     : "instance strings or clock length differ from the compiled circuit",
                {{"ell", inst.ell}, {"d_parity", inst.d_parity}, {"rule_count", inst.system->rule_count()}});
    }
    rep.add("control_orbit", true, "ell distinct configurations, one transition each",
            {{"ell", comp.run.ell}, {"dummy_steps", comp.run.dummy_steps}, {"length", comp.layout.length}});

    auto orbit = orbit_check(comp, *inst.system, inst.generator.value_or(SwapPolicy::Aligned));
    rep.append(orbit.checks);
    rep.append(reachable_checks(inst, opt.reachable_limit));

    const std::size_t n_req = opt.max_steps.value_or(default_max_steps(inst.ell));
    auto e2e = end_to_end(inst, comp.overlap, n_req, opt);
    rep.sigma_candidates = e2e.candidates;
    {
        Json meas{{"n_max", e2e.n_max},
                  {"n_requested", e2e.n_requested},
                  {"truncated", e2e.truncated},
                  {"compared", e2e.compared},
                  {"candidates", e2e.candidates},
                  {"overlap", comp.overlap.str()},
                  {"tolerance", 0}};
        bool enough = e2e.n_max >= inst.ell + 3 || !e2e.truncated;
        bool ok = !e2e.candidates.empty() && enough;
        std::string detail = e2e.candidates.empty() ? "no sign constant fits: " + e2e.first_mismatch
                             : !enough ? "vertex-step budget stopped counting at n = " + std::to_string(e2e.n_max)
                                       : "exact equality for " + std::to_string(e2e.compared) + " values of n";
        rep.add("master_identity", ok, detail, meas);
    }
    rep.add("parity_zeros", e2e.parity_zero_failures == 0,
            e2e.parity_zero_failures == 0 ? "Delta(n) = 0 whenever n = ell (mod 2)"
                                          : std::to_string(e2e.parity_zero_failures) + " nonzero values",
            {{"d_parity", inst.d_parity}, {"ell_parity", inst.ell % 2}});

    int sigma = 0;
    if (opt.global_sigma) {
        sigma = reference_sigma();
        bool fits = std::find(e2e.candidates.begin(), e2e.candidates.end(), sigma) != e2e.candidates.end();
        rep.add("global_sigma", fits, "reference sign " + std::to_string(sigma) + (fits ? " fits" : " does not fit"),
                {{"sigma", sigma}});
    } else if (e2e.candidates.size() == 1) {
        sigma = e2e.candidates[0];
    }
    if (sigma != 0) {
        rep.sigma = sigma;
        rep.append(sign_and_promise_check(inst, comp.overlap, e2e, sigma));
    } else {
        rep.add("sign", false, "sign constant unresolved");
    }
    return rep;
}

inline VerificationReport verify(const Compilation &comp, const VerifyOptions &opt = {}) {
    return verify(comp, comp.instance, opt);
}

}  // namespace strwalk
