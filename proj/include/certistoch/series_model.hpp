// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "certistoch/numeric.hpp"

namespace certistoch {

// Stationary process on [a, b] with spectral density e^{-|lambda|} cut at A,
// represented as X(t) = sum_k xi_k a_k(t) with uncorrelated unit-variance xi_k.
struct CaseStudyParams {
    double A = std::numbers::pi / 2;
    double a = 0;
    double b = 1;
    double beta = 1;     // Hoelder exponent of the coefficient functions
    double alpha = 0.5;  // psi(u) = u^alpha
    double C_Delta = 2 * std::numbers::sqrt2 * 0.4345982085070782;  // 2 sqrt 2 e^{-5/6}
};

void validate(const CaseStudyParams& p);

double a_k(const CaseStudyParams& p, std::int64_t k, double t);
// Reconstruction kernel: xi_k = int_a^b X(t) b_k(t) dt.
double b_k(const CaseStudyParams& p, std::int64_t k, double t);

struct RemainderConstants {
    double c1t, c2t, c3t;        // variance tail
    double c1h, c2h, c3h, c4h;   // Hoelder constants of the tail
    double K;
};

RemainderConstants remainder_constants(const CaseStudyParams& p);
double c_hat_N(const CaseStudyParams& p, std::int64_t N);
double variance_tail_bound(const CaseStudyParams& p, std::int64_t N);
double B_hat_N(const CaseStudyParams& p, std::int64_t N);

// eps * delta^{-1/ln delta} / ln^alpha(1/delta). delta^{-1/ln delta} is e^{-1}
// for every delta in (0, 1), so that is what gets used.
double truncation_threshold(double eps, double delta, double alpha);

struct Certification {
    std::int64_t N;
    double threshold;
    double B_hat_at_N;
    double B_hat_at_N_minus_1;  // +inf when N == 1
};

Certification select_truncation(const CaseStudyParams& p, double eps, double delta,
                                std::int64_t hi_cap = 100'000'000);

enum class XiSampler { gaussian, zero };

struct SeriesModel {
    CaseStudyParams params;
    std::int64_t N = 100;
    std::uint64_t seed = 0;
    XiSampler sampler = XiSampler::gaussian;
};

// Row-major: values[path * t.size() + j] = X_N(t_j) on path `path`.
struct Paths {
    std::vector<double> t;
    std::int64_t n_paths = 0;
    std::vector<double> values;
    double at(std::int64_t path, std::size_t j) const {
        return values[static_cast<std::size_t>(path) * t.size() + j];
    }
};

// Path i draws xi_1..xi_N from RngStream(seed, i), so the output does not
// depend on how paths are spread over threads. workers <= 0 means the OpenMP default.
Paths simulate(const SeriesModel& m, const std::vector<double>& grid, std::int64_t n_paths,
               int workers = 0);
// Single-threaded reference used by tests and the benchmark.
Paths simulate_serial(const SeriesModel& m, const std::vector<double>& grid, std::int64_t n_paths);

}  // namespace certistoch
