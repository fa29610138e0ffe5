// SPDX-License-Identifier: MIT
#include "certistoch/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "certistoch/series_model.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace certistoch {

namespace {

int thread_count(int workers) {
#ifdef _OPENMP
    return workers > 0 ? workers : omp_get_max_threads();
#else
    (void)workers;
    return 1;
#endif
}

}  // namespace

ValidationReport make_report(std::string id, double bound, std::int64_t hits, std::int64_t trials, std::string note) {
    const double freq = static_cast<double>(hits) / static_cast<double>(trials);
    const double b = std::clamp(bound, 0.0, 1.0);
    const double se = std::sqrt(b * (1 - b) / static_cast<double>(trials));
    return {std::move(id), bound, freq, trials, freq <= bound + 3 * se, std::move(note)};
}

ValidationReport validate_tail_gauss(double eps, std::int64_t samples, std::uint64_t seed, int workers) {
    if (!(eps > 0)) throw DomainError("eps must be positive");
    if (samples < 1) throw DomainError("sample count must be positive");
    const auto v = norm_bound_gaussian(1.0);
    const double bound = tail_bound(v, eps);
    const std::int64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::int64_t hits = 0;
    [[maybe_unused]] const int threads = thread_count(workers);
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : hits) num_threads(threads)
    for (std::int64_t c = 0; c < chunks; ++c) {
        RngStream rng(seed, static_cast<std::uint64_t>(c));
        const std::int64_t end = std::min(samples, (c + 1) * kChunkSize);
        for (std::int64_t i = c * kChunkSize; i < end; ++i)
            if (std::abs(rng.normal()) > eps) ++hits;
    }
    return make_report("tail-gauss", bound, hits, samples, "xi ~ N(0,1), psi(u)=sqrt(u), norm 2e^{-5/12}");
}

double DemoIntegral::truth() const {
    return std::sqrt(2 * std::numbers::pi) * a * std::exp(a * a * b * b / 2);
}

Sampler DemoIntegral::sampler() const {
    const double c = std::sqrt(2 * std::numbers::pi) * a, aa = a, bb = b;
    return [c, aa, bb](RngStream& rng) { return c * std::exp(-bb * aa * rng.normal()); };
}

MomentFn DemoIntegral::moment_fn() const {
    const double c = std::sqrt(2 * std::numbers::pi) * a, k = a * a * b * b / 2;
    return [c, k](double u) { return c * std::exp(u * k); };
}

double demo_norm_for(const DemoIntegral& d, double alpha, double delta) {
    if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0, 1)");
    const double hi = 2 * std::ceil(-std::log(delta) / alpha);
    return norm_from_moments(d.moment_fn(), PsiFamily::power(alpha), {1.0, std::max(hi, 2.0)});
}

CoverageReport validate_mc_coverage(const DemoIntegral& d, double eps, double delta, std::int64_t trials,
                                    std::uint64_t seed, int workers) {
    if (trials < 1) throw DomainError("trial count must be positive");
    const double alpha = 0.5;
    const double norm = demo_norm_for(d, alpha, delta);
    const std::int64_t n = sample_size_psi({PsiFamily::power(alpha), norm, d.moment_fn()}, eps, delta);
    const double I = d.truth();
    const auto sampler = d.sampler();
    std::int64_t fails = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        const auto r = run_certified(sampler, n, derive_seed(seed, static_cast<std::uint64_t>(t)), workers);
        if (std::abs(r.estimate - I) > eps) ++fails;
    }
    auto rep = make_report("mc-coverage", delta, fails, trials,
                           "failure frequency of |Z_n - I| > eps against delta");
    return {rep, n, norm};
}

ValidationReport validate_sup_bound(std::int64_t N, double eps, std::int64_t paths, std::int64_t grid_points,
                                    std::int64_t extra_terms, std::uint64_t seed, int workers) {
    if (N < 1 || paths < 1 || grid_points < 2 || extra_terms < 1) throw DomainError("bad sup-bound experiment size");
    const CaseStudyParams p;
    const double bound = tail_bound(PsiFamily::power(p.alpha), B_hat_N(p, N), eps);

    const auto G = static_cast<std::size_t>(grid_points);
    std::vector<double> grid(G);
    for (std::size_t j = 0; j < G; ++j) grid[j] = p.a + (p.b - p.a) * static_cast<double>(j) / (G - 1);
    std::vector<double> tab(static_cast<std::size_t>(extra_terms) * G);
    for (std::int64_t k = 0; k < extra_terms; ++k)
        for (std::size_t j = 0; j < G; ++j) tab[static_cast<std::size_t>(k) * G + j] = a_k(p, N + 1 + k, grid[j]);

    std::int64_t hits = 0;
    [[maybe_unused]] const int threads = thread_count(workers);
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : hits) num_threads(threads)
    for (std::int64_t i = 0; i < paths; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        std::vector<double> x(G, 0.0);
        for (std::int64_t k = 0; k < extra_terms; ++k) {
            const double xi = rng.normal();
            const double* row = tab.data() + static_cast<std::size_t>(k) * G;
            for (std::size_t j = 0; j < G; ++j) x[j] += xi * row[j];
        }
        double sup = 0;
        for (double v : x) sup = std::max(sup, std::abs(v));
        if (sup > eps) ++hits;
    }
    return make_report("sup-bound", bound, hits, paths,
                       "sup over a " + std::to_string(grid_points) + "-point grid, series cut at k=" +
                           std::to_string(N + extra_terms) + "; discretized sup under-reads the true sup");
}

}  // namespace certistoch
