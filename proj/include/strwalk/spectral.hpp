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
 * Spectral data of the ell-vertex path graph P: eigenvalues, eigenvectors, corner
 * weights, the corner entry (P^m)_{0,ell-1} computed both exactly and spectrally,
 * and the exponent selection rules.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "strwalk/big.hpp"

namespace strwalk {

/// About 319 bits of mantissa; enough for every ill-conditioned sum with m <= 2000.
using HighFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<96>>;

/// Target relative error of a spectral sum. A long double sum whose estimated
/// error (m + ell) * eps * sum(|terms|) / |sum| exceeds it is redone in HighFloat.
inline constexpr long double kSumRelError = 1e-10L;

namespace detail {

inline void check_ell(std::size_t ell) {
    if (ell < 2) {
        throw std::out_of_range("path length ell must be at least 2, got " + std::to_string(ell));
    }
}

inline void check_index(std::size_t ell, std::size_t j, const char *name) {
    check_ell(ell);
    if (j >= ell) {
        throw std::out_of_range(std::string(name) + " index " + std::to_string(j) + " outside [0, " +
                                std::to_string(ell) + ")");
    }
}

inline long double pi_l() {
    return std::numbers::pi_v<long double>;
}

}  // namespace detail

inline long double eigenvalue(std::size_t ell, std::size_t j) {
    detail::check_index(ell, j, "eigenvalue");
    return 2.0L * std::cos(detail::pi_l() * static_cast<long double>(j + 1) / static_cast<long double>(ell + 1));
}

inline long double eigvec_entry(std::size_t ell, std::size_t j, std::size_t k) {
    detail::check_index(ell, j, "eigenvector");
    detail::check_index(ell, k, "eigenvector component");
    const long double n1 = static_cast<long double>(ell + 1);
    return std::sqrt(2.0L / n1) *
           std::sin(detail::pi_l() * static_cast<long double>(j + 1) * static_cast<long double>(k + 1) / n1);
}

inline long double weight(std::size_t ell, std::size_t j) {
    return eigvec_entry(ell, j, 0) * eigvec_entry(ell, j, ell - 1);
}

/// Largest |lambda_j| over the interior indices 1..ell-2; zero when ell == 2.
inline long double interior_max_modulus(std::size_t ell) {
    detail::check_ell(ell);
    return ell == 2 ? 0.0L : std::fabs(eigenvalue(ell, 1));
}

/// (P^m)_{0,ell-1} by the walk recurrence v'_k = v_{k-1} + v_{k+1}.
inline BigInt corner_exact(std::size_t ell, std::size_t m) {
    detail::check_ell(ell);
    std::vector<BigInt> v(ell, 0), next(ell, 0);
    v[0] = 1;
    for (std::size_t step = 0; step < m; step++) {
        for (std::size_t k = 0; k < ell; k++) {
            next[k] = 0;
            if (k > 0) {
                next[k] += v[k - 1];
            }
            if (k + 1 < ell) {
                next[k] += v[k + 1];
            }
        }
        v.swap(next);
    }
    return v[ell - 1];
}

/// (P^m)_{0,ell-1} for m = 0..m_max.
inline std::vector<BigInt> corner_exact_series(std::size_t ell, std::size_t m_max) {
    detail::check_ell(ell);
    std::vector<BigInt> out;
    out.reserve(m_max + 1);
    std::vector<BigInt> v(ell, 0), next(ell, 0);
    v[0] = 1;
    out.push_back(v[ell - 1]);
    for (std::size_t step = 0; step < m_max; step++) {
        for (std::size_t k = 0; k < ell; k++) {
            next[k] = 0;
            if (k > 0) {
                next[k] += v[k - 1];
            }
            if (k + 1 < ell) {
                next[k] += v[k + 1];
            }
        }
        v.swap(next);
        out.push_back(v[ell - 1]);
    }
    return out;
}

struct SpectralSum {
    long double value = 0;
    long double scale = 0;  ///< sum of |w_j lambda_j^m|
    bool high_precision = false;
};

/// Cached spectrum of one path graph.
class PathSpectrum {
   public:
    explicit PathSpectrum(std::size_t ell) : ell_(ell) {
        detail::check_ell(ell);
        lambda_.resize(ell);
        w_.resize(ell);
        for (std::size_t j = 0; j < ell; j++) {
            lambda_[j] = eigenvalue(ell, j);
            w_[j] = weight(ell, j);
        }
    }

    std::size_t ell() const {
        return ell_;
    }
    long double lambda(std::size_t j) const {
        return lambda_.at(j);
    }
    long double w(std::size_t j) const {
        return w_.at(j);
    }
    long double lambda0() const {
        return lambda_[0];
    }
    long double lambda1() const {
        return interior_max_modulus(ell_);
    }
    long double w0() const {
        return w_[0];
    }

    /// sum_j w_j lambda_j^m with Kahan summation, redone in HighFloat when the
    /// estimated relative error exceeds kSumRelError.
    SpectralSum sum(std::size_t m) const {
        SpectralSum out;
        long double s = 0, comp = 0;
        for (std::size_t j = 0; j < ell_; j++) {
            long double term = w_[j] * std::pow(lambda_[j], static_cast<long double>(m));
            kahan_add(s, comp, term);
            out.scale += std::fabs(term);
        }
        out.value = s;
        if (needs_high_precision(out, m)) {
            ensure_high();
            HighFloat acc = 0;
            for (std::size_t j = 0; j < ell_; j++) {
                acc += hw_[j] * boost::multiprecision::pow(hlambda_[j], static_cast<int>(m));
            }
            out.value = acc.convert_to<long double>();
            out.high_precision = true;
        }
        return out;
    }

    /// Spectral sums for m = 0..m_max, sharing incremental powers.
    std::vector<SpectralSum> sum_series(std::size_t m_max) const {
        std::vector<SpectralSum> out;
        out.reserve(m_max + 1);
        std::vector<long double> pw(ell_, 1.0L);
        std::vector<HighFloat> hpw;
        std::size_t hp_m = 0;
        for (std::size_t m = 0; m <= m_max; m++) {
            SpectralSum cur;
            long double s = 0, comp = 0;
            for (std::size_t j = 0; j < ell_; j++) {
                long double term = w_[j] * pw[j];
                kahan_add(s, comp, term);
                cur.scale += std::fabs(term);
            }
            cur.value = s;
            if (needs_high_precision(cur, m)) {
                ensure_high();
                if (hpw.empty()) {
                    hpw.assign(ell_, HighFloat(1));
                    hp_m = 0;
                }
                while (hp_m < m) {
                    for (std::size_t j = 0; j < ell_; j++) {
                        hpw[j] *= hlambda_[j];
                    }
                    hp_m++;
                }
                HighFloat acc = 0;
                for (std::size_t j = 0; j < ell_; j++) {
                    acc += hw_[j] * hpw[j];
                }
                cur.value = acc.convert_to<long double>();
                cur.high_precision = true;
            }
            out.push_back(cur);
            for (std::size_t j = 0; j < ell_; j++) {
                pw[j] *= lambda_[j];
            }
        }
        return out;
    }

    /// (P^m)_{0,ell-1} / lambda_0^m without forming lambda_0^m; usable for any m.
    long double scaled_sum(std::size_t m) const {
        long double s = 0, comp = 0;
        const long double l0 = lambda_[0];
        for (std::size_t j = 0; j < ell_; j++) {
            long double r = lambda_[j] / l0;
            long double mag = r == 0 ? (m == 0 ? 1.0L : 0.0L)
                                     : std::exp(static_cast<long double>(m) * std::log(std::fabs(r)));
            if (r < 0 && m % 2 == 1) {
                mag = -mag;
            }
            kahan_add(s, comp, w_[j] * mag);
        }
        return s;
    }

   private:
    static void kahan_add(long double &sum, long double &comp, long double term) {
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    bool needs_high_precision(const SpectralSum &s, std::size_t m) const {
        if (s.scale == 0) {
            return false;
        }
        const long double err = static_cast<long double>(m + ell_) * std::numeric_limits<long double>::epsilon();
        return err * s.scale > kSumRelError * std::fabs(s.value);
    }

    void ensure_high() const {
        if (!hlambda_.empty()) {
            return;
        }
        const HighFloat pi = boost::math::constants::pi<HighFloat>();
        const HighFloat n1 = HighFloat(ell_ + 1);
        const HighFloat norm = HighFloat(2) / n1;
        hlambda_.resize(ell_);
        hw_.resize(ell_);
        for (std::size_t j = 0; j < ell_; j++) {
            HighFloat x = pi * HighFloat(j + 1) / n1;
            hlambda_[j] = 2 * boost::multiprecision::cos(x);
            hw_[j] = norm * boost::multiprecision::sin(x) * boost::multiprecision::sin(x * HighFloat(ell_));
        }
    }

    std::size_t ell_;
    std::vector<long double> lambda_;
    std::vector<long double> w_;
    mutable std::vector<HighFloat> hlambda_;
    mutable std::vector<HighFloat> hw_;
};

struct CornerEntry {
    BigInt exact;
    long double spectral = 0;
    long double scale = 0;
    bool high_precision = false;
};

inline CornerEntry corner_entry(std::size_t ell, std::size_t m) {
    CornerEntry out;
    out.exact = corner_exact(ell, m);
    auto s = PathSpectrum(ell).sum(m);
    out.spectral = s.value;
    out.scale = s.scale;
    out.high_precision = s.high_precision;
    return out;
}

/// Bounds on the corner entry, in natural-log form so any m is representable.
struct CornerBounds {
    long double log_upper = 0;  ///< m log lambda_0
    long double log_lower = 0;  ///< m log lambda_0 + log w_0
    bool lower_valid = false;   ///< (lambda_1/lambda_0)^m <= w_0

    long double upper() const {
        return std::exp(log_upper);
    }
    long double lower() const {
        return std::exp(log_lower);
    }
};

inline bool parity_ok(std::size_t ell, std::size_t m) {
    return (m % 2) != (ell % 2);
}

inline CornerBounds bounds(std::size_t ell, std::size_t m) {
    detail::check_ell(ell);
    if (!parity_ok(ell, m)) {
        throw std::invalid_argument("m = " + std::to_string(m) + " has the same parity as ell = " +
                                    std::to_string(ell));
    }
    if (m + 1 < ell) {
        throw std::invalid_argument("m must be at least ell - 1");
    }
    CornerBounds b;
    const long double l0 = eigenvalue(ell, 0);
    const long double l1 = interior_max_modulus(ell);
    const long double w0 = weight(ell, 0);
    b.log_upper = static_cast<long double>(m) * std::log(l0);
    b.log_lower = b.log_upper + std::log(w0);
    if (l1 == 0) {
        b.lower_valid = true;
    } else {
        b.lower_valid = static_cast<long double>(m) * std::log(l1 / l0) <= std::log(w0);
    }
    return b;
}

enum class MMode { Paper, Minimal, SignOnly };

inline const char *m_mode_name(MMode mode) {
    switch (mode) {
        case MMode::Paper:
            return "paper";
        case MMode::Minimal:
            return "minimal";
        case MMode::SignOnly:
            return "sign_only";
    }
    return "?";
}

inline MMode parse_m_mode(const std::string &s) {
    if (s == "paper") {
        return MMode::Paper;
    }
    if (s == "minimal") {
        return MMode::Minimal;
    }
    if (s == "sign_only") {
        return MMode::SignOnly;
    }
    throw std::invalid_argument("unknown m mode '" + s + "' (expected paper, minimal or sign_only)");
}

inline std::size_t choose_m(std::size_t ell, MMode mode) {
    detail::check_ell(ell);
    switch (mode) {
        case MMode::Paper:
            return (ell + 1) * (ell + 1) * (ell + 1);
        case MMode::SignOnly:
            return ell - 1;
        case MMode::Minimal: {
            std::size_t m = ell - 1;
            while (!bounds(ell, m).lower_valid) {
                m += 2;
            }
            return m;
        }
    }
    return ell - 1;
}

/// ((1 - (pi/L)^2) / (1 - (pi/L)^2 / 2))^(L^2), evaluated in log form.
inline long double convergence_check(long double ell_tilde) {
    if (!(ell_tilde >= 4)) {
        throw std::out_of_range("convergence_check needs ell_tilde >= 4");
    }
    const long double x = detail::pi_l() / ell_tilde;
    const long double x2 = x * x;
    return std::exp(ell_tilde * ell_tilde * (std::log1p(-x2) - std::log1p(-x2 / 2)));
}

inline long double convergence_limit() {
    return std::exp(-detail::pi_l() * detail::pi_l() / 2);
}

}  // namespace strwalk
