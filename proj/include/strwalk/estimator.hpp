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
 * Classical emulation of moment estimation from noisy A-measurements.
 *
 * A measurement of A in a state is replaced by exact eigendecomposition of A on
 * the reachable set; measurement imprecision is the explicit (eta, theta) model.
 * Moments are handled in units of c^m, so f-hat(x) = f(x) / c^m lies in [-1, 1].
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "strwalk/compiler.hpp"
#include "strwalk/reachable.hpp"
#include "strwalk/verifier.hpp"

namespace strwalk {

inline constexpr std::size_t kEigenGuard = 4000;

struct SpectralMeasure {
    std::vector<double> lambda;
    std::vector<double> prob;

    double total() const {
        double s = 0;
        for (double p : prob) {
            s += p;
        }
        return s;
    }

    double max_abs_lambda() const {
        double m = 0;
        for (double l : lambda) {
            m = std::max(m, std::fabs(l));
        }
        return m;
    }

    /// sum_j p_j lambda_j^m.
    double moment(std::size_t m) const {
        double s = 0;
        for (std::size_t j = 0; j < lambda.size(); j++) {
            s += prob[j] * std::pow(lambda[j], static_cast<double>(m));
        }
        return s;
    }
};

struct NoiseModel {
    double eta = 0;
    double theta = 0;
};

struct PolarizedStates {
    AmpVector phi;    ///< (t - t') / sqrt2
    AmpVector plus;   ///< (s + phi) / sqrt2
    AmpVector minus;  ///< (s - phi) / sqrt2
};

inline PolarizedStates build_states(const Word &s, const Word &t, const Word &t_prime) {
    if (s == t || s == t_prime || t == t_prime) {
        throw std::invalid_argument("s, t and t' must be distinct");
    }
    const ExactAmplitude r2 = ExactAmplitude::inv_sqrt2();
    const ExactAmplitude half(1, 0, 1);
    PolarizedStates out;
    out.phi = {{t, r2}, {t_prime, -r2}};
    out.plus = {{s, r2}, {t, half}, {t_prime, -half}};
    out.minus = {{s, r2}, {t, -half}, {t_prime, half}};
    return out;
}

inline PolarizedStates build_states(const CompiledInstance &inst) {
    return build_states(inst.s, inst.t, inst.t_prime);
}

/// f(x) = x^m on [-c, c], continued as (+-c)^m outside. For odd m that is c^m
/// above c and -c^m below -c; for even m it stays continuous at -c, which the
/// Lipschitz term of the bias bound needs.
inline double clip_f(double x, std::size_t m, double c) {
    return std::pow(std::clamp(x, -c, c), static_cast<double>(m));
}

/// f(x) / c^m, finite for every m.
inline double clip_f_scaled(double x, std::size_t m, double c) {
    return std::pow(std::clamp(x / c, -1.0, 1.0), static_cast<double>(m));
}

inline double clipped_moment(const SpectralMeasure &mu, std::size_t m, double c) {
    if (!(c > 0)) {
        throw std::invalid_argument("c must be positive");
    }
    double s = 0;
    for (std::size_t j = 0; j < mu.lambda.size(); j++) {
        s += mu.prob[j] * clip_f(mu.lambda[j], m, c);
    }
    return s;
}

inline double clipped_moment_scaled(const SpectralMeasure &mu, std::size_t m, double c) {
    if (!(c > 0)) {
        throw std::invalid_argument("c must be positive");
    }
    double s = 0;
    for (std::size_t j = 0; j < mu.lambda.size(); j++) {
        s += mu.prob[j] * clip_f_scaled(mu.lambda[j], m, c);
    }
    return s;
}

/// Eigendecomposition of the 0/1 adjacency restricted to a reachable set.
class GraphSpectrum {
   public:
    explicit GraphSpectrum(const ReachableGraph &g, std::size_t guard = kEigenGuard) : index_(g.index) {
        const std::size_t n = g.size();
        if (n > guard) {
            throw std::length_error("reachable set has " + std::to_string(n) + " vertices, above the guard of " +
                                    std::to_string(guard));
        }
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t v = 0; v < n; v++) {
            for (VertexId u : g.adjacency[v]) {
                a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = 1.0;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        if (es.info() != Eigen::Success) {
            throw std::runtime_error("eigendecomposition failed");
        }
        values_ = es.eigenvalues();
        vectors_ = es.eigenvectors();
    }

    std::size_t size() const {
        return static_cast<std::size_t>(values_.size());
    }

    double max_abs_eigenvalue() const {
        return values_.cwiseAbs().maxCoeff();
    }

    Eigen::VectorXd dense(const AmpVector &state) const {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(values_.size());
        for (const auto &[w, a] : state) {
            auto it = index_.find(w);
            if (it == index_.end()) {
                throw std::invalid_argument("state has support outside the reachable set");
            }
            x(it->second) = a.to_double();
        }
        return x;
    }

    /// Per-eigenvector probabilities <state|Q_j|state>.
    SpectralMeasure measure(const AmpVector &state) const {
        Eigen::VectorXd coeff = vectors_.transpose() * dense(state);
        SpectralMeasure mu;
        mu.lambda.assign(values_.data(), values_.data() + values_.size());
        mu.prob.resize(mu.lambda.size());
        for (Eigen::Index j = 0; j < coeff.size(); j++) {
            mu.prob[static_cast<std::size_t>(j)] = coeff(j) * coeff(j);
        }
        return mu;
    }

   private:
    std::unordered_map<Word, VertexId, WordHash> index_;
    Eigen::VectorXd values_;
    Eigen::MatrixXd vectors_;
};

/// Closed reachable set of {s, t, t'} with its spectrum and the two measures.
struct InstanceMeasures {
    ReachableGraph graph;
    std::unique_ptr<GraphSpectrum> spectrum;
    SpectralMeasure plus, minus;
};

inline InstanceMeasures instance_measures(const CompiledInstance &inst, std::size_t guard = kEigenGuard) {
    InstanceMeasures out;
    try {
        out.graph = build_reachable(*inst.system, std::vector<Word>{inst.s, inst.t, inst.t_prime}, kUnlimitedDepth,
                                    guard);
    } catch (const BudgetExceeded &) {
        throw std::length_error("reachable set exceeds the eigendecomposition guard of " + std::to_string(guard));
    }
    out.spectrum = std::make_unique<GraphSpectrum>(out.graph, guard);
    auto states = build_states(inst);
    out.plus = out.spectrum->measure(states.plus);
    out.minus = out.spectrum->measure(states.minus);
    return out;
}

/// Delta(m) / c^m from the two measures: (M+ - M-) / sqrt2 in units of c^m.
inline double exact_scaled_difference(const SpectralMeasure &plus, const SpectralMeasure &minus, std::size_t m,
                                      double c) {
    return (clipped_moment_scaled(plus, m, c) - clipped_moment_scaled(minus, m, c)) / std::sqrt(2.0);
}

/// eta m c^{m-1} + 2 c^m theta.
inline double bias_bound(const NoiseModel &noise, std::size_t m, double c) {
    const double md = static_cast<double>(m);
    return noise.eta * md * std::pow(c, md - 1) + 2 * std::pow(c, md) * noise.theta;
}

/// bias_bound / c^m.
inline double bias_bound_scaled(const NoiseModel &noise, std::size_t m, double c) {
    return noise.eta * static_cast<double>(m) / c + 2 * noise.theta;
}

/// (eta, theta) with bias_bound <= epsilon c^m / 2: each term takes half the budget.
inline NoiseModel solve_noise(double epsilon, std::size_t m, double c) {
    if (!(epsilon > 0) || m < 1 || !(c > 0)) {
        throw std::invalid_argument("solve_noise needs epsilon > 0, m >= 1, c > 0");
    }
    return {epsilon * c / (4.0 * static_cast<double>(m)), epsilon / 8.0};
}

/// N = ceil((8 / eps^2) ln(2 / delta)).
///
/// Outcomes f-hat lie in [-1, 1]; Hoeffding gives P(|mean - mu| >= eps/2) <=
/// 2 exp(-2 N (eps/2)^2 / 2^2) = 2 exp(-N eps^2 / 8), which is delta at this N.
inline std::uint64_t hoeffding_samples(double epsilon, double delta) {
    if (!(epsilon > 0 && epsilon <= 1)) {
        throw std::out_of_range("epsilon must lie in (0, 1]");
    }
    if (!(delta > 0 && delta < 1)) {
        throw std::out_of_range("delta must lie in (0, 1)");
    }
    return static_cast<std::uint64_t>(std::ceil(8.0 / (epsilon * epsilon) * std::log(2.0 / delta)));
}

/// Half-width t of a mean of N samples in [-1, 1] with P(|mean - mu| >= t) <= delta.
inline double hoeffding_half_width(std::uint64_t samples, double delta) {
    return std::sqrt(2.0 * std::log(2.0 / delta) / static_cast<double>(samples));
}

struct NoisyEstimate {
    double estimate = 0;  ///< estimate of Delta(m) / c^m
    double mean_plus = 0;
    double mean_minus = 0;
    double bias_bound = 0;  ///< on the Delta / c^m scale
    double half_width = 0;  ///< on the Delta / c^m scale
    std::uint64_t samples = 0;

    double bound() const {
        return bias_bound + half_width;
    }
};

struct SamplerOptions {
    std::uint64_t seed = 1;
    /// Both means hold simultaneously with probability >= 1 - delta.
    double delta = 0.05;
    unsigned threads = 1;
    std::uint64_t chunk = 1 << 16;
};

namespace detail {

inline double unit_uniform(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct SampleSums {
    double sum = 0;
    double comp = 0;

    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

/// Pairwise reduction in index order.
inline double pairwise_total(std::vector<double> v) {
    if (v.empty()) {
        return 0;
    }
    while (v.size() > 1) {
        std::vector<double> next((v.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) {
            next[i / 2] = v[i] + v[i + 1];
        }
        if (v.size() % 2) {
            next.back() = v.back();
        }
        v = std::move(next);
    }
    return v[0];
}

/// Mean of f-hat over `samples` noisy measurements; stream identifies the state.
inline double sample_mean(const SpectralMeasure &mu, std::size_t m, double c, const NoiseModel &noise,
                          std::uint64_t samples, std::uint64_t stream, const SamplerOptions &opt) {
    std::vector<double> cdf(mu.prob.size());
    double acc = 0;
    for (std::size_t j = 0; j < cdf.size(); j++) {
        acc += std::max(mu.prob[j], 0.0);
        cdf[j] = acc;
    }
    const double lmax = mu.max_abs_lambda();
    const std::uint64_t chunks = (samples + opt.chunk - 1) / opt.chunk;
    std::vector<double> sums(chunks, 0.0);
    auto run_chunk = [&](std::uint64_t k) {
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(k),
                          static_cast<std::uint32_t>(k >> 32)};
        std::mt19937_64 rng(seq);
        const std::uint64_t begin = k * opt.chunk;
        const std::uint64_t end = std::min(samples, begin + opt.chunk);
        SampleSums s;
        for (std::uint64_t i = begin; i < end; i++) {
            double r = unit_uniform(rng) * acc;
            std::size_t j = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
            j = std::min(j, cdf.size() - 1);
            const double lj = mu.lambda[j];
            double x;
            if (unit_uniform(rng) < noise.theta) {
                double fj = clip_f_scaled(lj, m, c);
                double up = clip_f_scaled(lmax, m, c);
                double down = clip_f_scaled(-lmax, m, c);
                x = std::fabs(up - fj) >= std::fabs(down - fj) ? lmax : -lmax;
            } else {
                x = lj + noise.eta * (2 * unit_uniform(rng) - 1);
            }
            s.add(clip_f_scaled(x, m, c));
        }
        sums[k] = s.sum;
    };
    const unsigned threads = std::max(1u, opt.threads);
    if (threads == 1 || chunks == 1) {
        for (std::uint64_t k = 0; k < chunks; k++) {
            run_chunk(k);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; t++) {
            pool.emplace_back([&, t] {
                for (std::uint64_t k = t; k < chunks; k += threads) {
                    run_chunk(k);
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    return pairwise_total(std::move(sums)) / static_cast<double>(samples);
}

}  // namespace detail

/// Monte Carlo estimate of Delta(m) / c^m under the noise model, with its bound.
///
/// Each outcome is lambda_j + uniform(-eta, eta) with probability 1 - theta, and
/// otherwise whichever of +-lambda_max moves f furthest from f(lambda_j).
inline NoisyEstimate noisy_estimate(const SpectralMeasure &plus, const SpectralMeasure &minus, std::size_t m, double c,
                                    const NoiseModel &noise, std::uint64_t samples, const SamplerOptions &opt = {}) {
    if (samples < 1) {
        throw std::invalid_argument("samples must be at least 1");
    }
    if (!(c > 0) || noise.eta < 0 || noise.theta < 0 || noise.theta >= 1) {
        throw std::invalid_argument("need c > 0, eta >= 0 and theta in [0, 1)");
    }
    NoisyEstimate out;
    out.samples = samples;
    out.mean_plus = detail::sample_mean(plus, m, c, noise, samples, 0, opt);
    out.mean_minus = detail::sample_mean(minus, m, c, noise, samples, 1, opt);
    const double r2 = std::sqrt(2.0);
    out.estimate = (out.mean_plus - out.mean_minus) / r2;
    out.bias_bound = 2 * bias_bound_scaled(noise, m, c) / r2;
    out.half_width = 2 * hoeffding_half_width(samples, opt.delta / 2) / r2;
    return out;
}

}  // namespace strwalk
