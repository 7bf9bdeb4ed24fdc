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

#include "strwalk/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gtest/gtest.h"

using namespace strwalk;

namespace {

Eigen::MatrixXd path_matrix(std::size_t ell) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(ell, ell);
    for (std::size_t k = 0; k + 1 < ell; k++) {
        p(k, k + 1) = p(k + 1, k) = 1;
    }
    return p;
}

}  // namespace

TEST(eigenvalue, examples) {
    EXPECT_NEAR(eigenvalue(2, 0), 1.0L, 1e-15);
    EXPECT_NEAR(eigenvalue(3, 1), 0.0L, 1e-15);
    EXPECT_NEAR(eigenvalue(4, 0), 1.6180339887498949L, 1e-15);
    EXPECT_THROW(eigenvalue(4, 4), std::out_of_range);
    EXPECT_THROW(eigenvalue(1, 0), std::out_of_range);
}

TEST(eigenvalue, matches_dense_decomposition) {
    for (std::size_t ell : {2, 3, 4, 7, 16, 33}) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(path_matrix(ell));
        for (std::size_t j = 0; j < ell; j++) {
            // Eigen sorts ascending, the closed form descending.
            EXPECT_NEAR(static_cast<double>(eigenvalue(ell, j)), es.eigenvalues()(ell - 1 - j), 1e-12);
            if (j > 0) {
                EXPECT_LT(eigenvalue(ell, j), eigenvalue(ell, j - 1));
            }
        }
    }
}

TEST(eigvec, examples_and_orthonormality) {
    EXPECT_NEAR(eigvec_entry(2, 0, 0), 1 / std::sqrt(2.0L), 1e-15);
    EXPECT_NEAR(weight(2, 0), 0.5L, 1e-15);
    for (std::size_t ell = 2; ell <= 200; ell += (ell < 20 ? 1 : 17)) {
        for (std::size_t j = 0; j < ell; j++) {
            for (std::size_t jp = j; jp < ell; jp++) {
                long double dot = 0;
                for (std::size_t k = 0; k < ell; k++) {
                    dot += eigvec_entry(ell, j, k) * eigvec_entry(ell, jp, k);
                }
                EXPECT_NEAR(dot, j == jp ? 1.0L : 0.0L, 1e-12) << ell << " " << j << " " << jp;
                EXPECT_NEAR(eigvec_entry(ell, j, jp), eigvec_entry(ell, jp, j), 1e-15);
            }
        }
    }
}

TEST(eigvec, is_eigenvector) {
    for (std::size_t ell : {2, 5, 12}) {
        auto p = path_matrix(ell);
        for (std::size_t j = 0; j < ell; j++) {
            Eigen::VectorXd e(ell);
            for (std::size_t k = 0; k < ell; k++) {
                e(k) = static_cast<double>(eigvec_entry(ell, j, k));
            }
            EXPECT_LT((p * e - static_cast<double>(eigenvalue(ell, j)) * e).norm(), 1e-12);
        }
    }
}

TEST(weight, symmetry_and_mass) {
    for (std::size_t ell = 2; ell <= 200; ell++) {
        long double sign = ell % 2 == 1 ? 1 : -1;
        EXPECT_NEAR(weight(ell, ell - 1), sign * weight(ell, 0), 1e-12);
        long double mass = 0, total = 0;
        for (std::size_t j = 0; j < ell; j++) {
            mass += std::fabs(weight(ell, j));
            total += weight(ell, j);
        }
        EXPECT_LE(mass, 1 + 1e-12);
        EXPECT_NEAR(total, 0.0L, 1e-12);
    }
}

TEST(corner, examples) {
    EXPECT_EQ(corner_exact(2, 1), 1);
    EXPECT_EQ(corner_exact(2, 2), 0);
    EXPECT_EQ(corner_exact(3, 2), 1);
    EXPECT_EQ(corner_exact(5, 3), 0);
    EXPECT_EQ(corner_exact(5, 4), 1);
    EXPECT_EQ(corner_exact(5, 6), 4);
    auto e = corner_entry(2, 1);
    EXPECT_EQ(e.exact, 1);
    EXPECT_NEAR(e.spectral, 1.0L, 1e-15);
}

TEST(corner, series_matches_single_entries) {
    auto series = corner_exact_series(9, 60);
    ASSERT_EQ(series.size(), 61u);
    for (std::size_t m = 0; m <= 60; m++) {
        EXPECT_EQ(series[m], corner_exact(9, m));
    }
}

TEST(corner, exact_matches_spectral) {
    for (std::size_t ell = 2; ell <= 40; ell++) {
        PathSpectrum ps(ell);
        auto exact = corner_exact_series(ell, 400);
        auto spectral = ps.sum_series(400);
        for (std::size_t m = 0; m <= 400; m++) {
            if (!parity_ok(ell, m)) {
                EXPECT_EQ(exact[m], 0);
                EXPECT_LE(std::fabs(spectral[m].value), 1e-6L * std::max(spectral[m].scale, 1.0L));
                continue;
            }
            if (m + 1 < ell) {
                EXPECT_EQ(exact[m], 0);
                EXPECT_LT(std::fabs(spectral[m].value), 1e-6L) << ell << " " << m;
                continue;
            }
            EXPECT_GT(exact[m], 0);
            long double ex = exact[m].convert_to<long double>();
            EXPECT_NEAR(spectral[m].value / ex, 1.0L, 1e-6L) << ell << " " << m;
            EXPECT_NEAR(ps.sum(m).value / ex, 1.0L, 1e-6L);
        }
    }
}

TEST(corner, scaled_sum) {
    PathSpectrum ps(20);
    for (std::size_t m = 19; m <= 300; m += 2) {
        long double ex = corner_exact(20, m).convert_to<long double>();
        EXPECT_NEAR(ps.scaled_sum(m) / (ex / std::pow(ps.lambda0(), static_cast<long double>(m))), 1.0L, 1e-9L);
    }
    // lambda_{ell-1} = -lambda_0 contributes as much as lambda_0 at odd m.
    EXPECT_NEAR(ps.scaled_sum(9261 * 1000 + 1), 2 * ps.w0(), 1e-12L);
}

TEST(bounds, sweep) {
    for (std::size_t ell = 2; ell <= 50; ell++) {
        auto exact = corner_exact_series(ell, 200);
        for (std::size_t m = ell - 1; m <= 200; m += 2) {
            auto b = bounds(ell, m);
            long double logc = std::log(exact[m].convert_to<long double>());
            EXPECT_LE(logc, b.log_upper + 1e-12L) << ell << " " << m;
            if (b.lower_valid) {
                EXPECT_GE(logc, b.log_lower - 1e-12L) << ell << " " << m;
            }
        }
    }
    EXPECT_THROW(bounds(4, 4), std::invalid_argument);
    EXPECT_THROW(bounds(6, 3), std::invalid_argument);
}

TEST(bounds, valid_at_cubic_exponent) {
    for (std::size_t ell = 2; ell <= 12; ell++) {
        EXPECT_TRUE(bounds(ell, (ell + 1) * (ell + 1) * (ell + 1)).lower_valid) << ell;
    }
}

TEST(spectrum, interior_modulus) {
    EXPECT_EQ(interior_max_modulus(2), 0.0L);
    EXPECT_NEAR(interior_max_modulus(3), 0.0L, 1e-18L);
    EXPECT_GE(interior_max_modulus(3), 0.0L);
    EXPECT_NEAR(interior_max_modulus(4), eigenvalue(4, 1), 1e-18L);
}

TEST(choose_m, modes) {
    EXPECT_EQ(choose_m(2, MMode::Paper), 27u);
    EXPECT_EQ(choose_m(3, MMode::SignOnly), 2u);
    EXPECT_EQ(choose_m(2, MMode::Minimal), 1u);
    for (std::size_t ell = 2; ell <= 12; ell++) {
        auto minimal = choose_m(ell, MMode::Minimal);
        auto paper = choose_m(ell, MMode::Paper);
        EXPECT_LE(minimal, paper);
        EXPECT_TRUE(parity_ok(ell, minimal));
        EXPECT_TRUE(parity_ok(ell, paper));
        EXPECT_TRUE(bounds(ell, minimal).lower_valid);
        if (minimal >= ell + 1) {
            EXPECT_FALSE(bounds(ell, minimal - 2).lower_valid);
        }
    }
    EXPECT_EQ(parse_m_mode("sign_only"), MMode::SignOnly);
    EXPECT_THROW(parse_m_mode("cubic"), std::invalid_argument);
}

TEST(convergence, check_values) {
    const long double limit = convergence_limit();
    EXPECT_NEAR(limit, 0.0071918L, 1e-7L);
    EXPECT_NEAR(convergence_check(1e4L), limit, 1e-3L);
    long double prev = 0;
    for (long double lt = 4; lt <= 4096; lt *= 2) {
        long double v = convergence_check(lt);
        EXPECT_LT(v, 1);
        EXPECT_GT(v, prev);
        prev = v;
    }
    EXPECT_THROW(convergence_check(3), std::out_of_range);
}
