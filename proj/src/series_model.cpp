// SPDX-License-Identifier: MIT
#include "certistoch/series_model.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace certistoch {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void validate(const CaseStudyParams& p) {
    if (!(p.A > 0)) throw DomainError("A must be positive");
    if (!(p.a < p.b)) throw DomainError("need a < b");
    if (!(p.beta > 0 && p.beta <= 1)) throw DomainError("beta must lie in (0, 1]");
    if (!(p.alpha > 0)) throw DomainError("alpha must be positive");
    if (!(p.C_Delta > 0)) throw DomainError("C_Delta must be positive");
}

double a_k(const CaseStudyParams& p, std::int64_t k, double t) {
    const double s = t - static_cast<double>(k) * kPi / p.A;
    const double arg = p.A * t - static_cast<double>(k) * kPi;
    const double eh = std::exp(p.A / 2);
    return (2 / (p.A * eh)) * (4 * s * std::sin(arg) - 2 * std::cos(arg) + 2 * eh) / (1 + 4 * s * s);
}

double b_k(const CaseStudyParams& p, std::int64_t k, double t) {
    const double s = t - static_cast<double>(k) * kPi / p.A;
    const double arg = p.A * t - static_cast<double>(k) * kPi;
    const double eh = std::exp(p.A / 2);
    return (2 * eh * (std::cos(arg) + 2 * s * std::sin(arg)) - 2) / (kPi * p.A * (1 + 4 * s * s));
}

RemainderConstants remainder_constants(const CaseStudyParams& p) {
    validate(p);
    if (p.alpha >= 1) throw DomainError("K undefined for alpha >= 1");
    const double A = p.A, b = p.b, be = p.beta;
    const double em = std::exp(-A / 2);
    RemainderConstants c{};
    c.c1t = 256.0 / (std::exp(A) * kPi * kPi);
    c.c2t = 128.0 * A * (1 + em) * em / std::pow(kPi, 3);
    c.c3t = 16.0 * A * A * (1 + em) * (1 + em) / std::pow(kPi, 4);

    const double half_pow = std::pow(A / 2, be);
    c.c1h = std::pow(2.0, 2 - be) * em * std::pow(A, be) / kPi;
    c.c2h = 2 * em * A * (2 * b * half_pow + 2 * half_pow + 3) / (kPi * kPi);
    c.c3h = 2 * em * A * A * (1 + 4 * b + 1 / em) / std::pow(kPi, 3);
    c.c4h = 2 * em * std::pow(A, 3) * b * (1 + 2 * b + 1 / em) / std::pow(kPi, 4);

    const double al = p.alpha;
    c.K = p.C_Delta * (p.b - p.a) * std::pow(al + 1, 1 + al) / (1 - al) *
          std::pow(std::numbers::e / (2 * al * al), al);
    return c;
}

namespace {

double c_hat_from(const RemainderConstants& c, double n) {
    const double h1 = c.c1h, h2 = c.c2h, h3 = c.c3h, h4 = c.c4h;
    const double s = h1 * h1 / n + h1 * h2 / (n * n) + (h1 * h1 + 2 * h1 * h3) / (3 * std::pow(n, 3)) +
                     (h1 * h4 + h2 * h3) / (2 * std::pow(n, 4)) + (h3 * h3 + 2 * h2 * h4) / (5 * std::pow(n, 5)) +
                     h3 * h4 / (3 * std::pow(n, 6)) + h4 * h4 / (7 * std::pow(n, 7));
    return std::sqrt(s);
}

double var_tail_from(const RemainderConstants& c, double n) {
    return c.c1t / n + c.c2t / (2 * n * n) + c.c3t / (3 * n * n * n);
}

double b_hat_from(const CaseStudyParams& p, const RemainderConstants& c, double n) {
    return p.C_Delta * std::sqrt(var_tail_from(c, n)) + c_hat_from(c, n) * c.K;
}

void check_n(std::int64_t N) {
    if (N < 1) throw DomainError("N must be at least 1");
}

}  // namespace

double c_hat_N(const CaseStudyParams& p, std::int64_t N) {
    check_n(N);
    return c_hat_from(remainder_constants(p), static_cast<double>(N));
}

double variance_tail_bound(const CaseStudyParams& p, std::int64_t N) {
    check_n(N);
    return var_tail_from(remainder_constants(p), static_cast<double>(N));
}

double B_hat_N(const CaseStudyParams& p, std::int64_t N) {
    check_n(N);
    return b_hat_from(p, remainder_constants(p), static_cast<double>(N));
}

double truncation_threshold(double eps, double delta, double alpha) {
    if (!(eps > 0)) throw DomainError("eps must be positive");
    if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0, 1)");
    return eps * std::exp(-1.0) / std::pow(std::log(1 / delta), alpha);
}

Certification select_truncation(const CaseStudyParams& p, double eps, double delta, std::int64_t hi_cap) {
    const auto c = remainder_constants(p);
    const double thr = truncation_threshold(eps, delta, p.alpha);
    auto bn = [&](std::int64_t n) { return b_hat_from(p, c, static_cast<double>(n)); };
    const std::int64_t N = smallest_integer_satisfying([&](std::int64_t n) { return bn(n) <= thr; }, 1, hi_cap);
    return {N, thr, bn(N), N > 1 ? bn(N - 1) : std::numeric_limits<double>::infinity()};
}

namespace {

void check_sim(const SeriesModel& m, const std::vector<double>& grid, std::int64_t n_paths) {
    validate(m.params);
    check_n(m.N);
    if (n_paths < 0) throw DomainError("path count must be non-negative");
    for (double t : grid)
        if (!(t >= m.params.a && t <= m.params.b)) throw DomainError("grid point outside [a, b]");
}

// Coefficients a_k(t_j), k-major, when the table is small enough to keep.
std::vector<double> coefficient_table(const SeriesModel& m, const std::vector<double>& grid) {
    const auto cells = static_cast<std::size_t>(m.N) * grid.size();
    if (cells > (std::size_t{1} << 22)) return {};
    std::vector<double> tab(cells);
    for (std::int64_t k = 1; k <= m.N; ++k)
        for (std::size_t j = 0; j < grid.size(); ++j)
            tab[static_cast<std::size_t>(k - 1) * grid.size() + j] = a_k(m.params, k, grid[j]);
    return tab;
}

void one_path(const SeriesModel& m, const std::vector<double>& grid, const std::vector<double>& tab,
              std::int64_t path, double* out) {
    const std::size_t G = grid.size();
    for (std::size_t j = 0; j < G; ++j) out[j] = 0.0;
    if (m.sampler == XiSampler::zero) return;
    RngStream rng(m.seed, static_cast<std::uint64_t>(path));
    for (std::int64_t k = 1; k <= m.N; ++k) {
        const double xi = rng.normal();
        if (tab.empty()) {
            for (std::size_t j = 0; j < G; ++j) out[j] += xi * a_k(m.params, k, grid[j]);
        } else {
            const double* row = tab.data() + static_cast<std::size_t>(k - 1) * G;
            for (std::size_t j = 0; j < G; ++j) out[j] += xi * row[j];
        }
    }
}

}  // namespace

Paths simulate_serial(const SeriesModel& m, const std::vector<double>& grid, std::int64_t n_paths) {
    check_sim(m, grid, n_paths);
    Paths P{grid, n_paths, std::vector<double>(static_cast<std::size_t>(n_paths) * grid.size())};
    const auto tab = coefficient_table(m, grid);
    for (std::int64_t i = 0; i < n_paths; ++i)
        one_path(m, grid, tab, i, P.values.data() + static_cast<std::size_t>(i) * grid.size());
    return P;
}

Paths simulate(const SeriesModel& m, const std::vector<double>& grid, std::int64_t n_paths, int workers) {
    check_sim(m, grid, n_paths);
    Paths P{grid, n_paths, std::vector<double>(static_cast<std::size_t>(n_paths) * grid.size())};
    const auto tab = coefficient_table(m, grid);
#ifdef _OPENMP
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
#else
    (void)workers;
#endif
    for (std::int64_t i = 0; i < n_paths; ++i)
        one_path(m, grid, tab, i, P.values.data() + static_cast<std::size_t>(i) * grid.size());
    return P;
}

}  // namespace certistoch
