// SPDX-License-Identifier: MIT
#include "certistoch/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace certistoch {

namespace {

void check_ed(double eps, double delta) {
    if (!(eps > 0)) throw DomainError("eps must be positive");
    if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0, 1)");
}

// ceil() that ignores sub-ulp noise: 192.00000000000003 is 192, not 193.
std::int64_t ceil_count(double x) {
    if (!std::isfinite(x) || x > 9.2e18) throw CapExceeded("sample size overflows 64-bit range", INT64_MAX);
    const double r = std::nearbyint(x);
    const double c = std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x)) ? r : std::ceil(x);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(c));
}

double log_factor(double alpha, double delta) {
    return std::max(1.0, std::pow(-std::log(delta) / alpha, 2 * alpha));
}

}  // namespace

UFamily UFamily::power(double p) {
    if (!(p >= 2)) throw DomainError("power U needs p >= 2");
    return {Kind::power, p};
}

UFamily UFamily::exp_alpha(double alpha) {
    if (!(alpha >= 1 && alpha <= 2)) throw DomainError("exp U needs alpha in [1, 2]");
    return {Kind::exp_alpha, alpha};
}

double UFamily::inverse(double y) const {
    if (!(y >= 0)) throw DomainError("U^{-1} needs y >= 0");
    if (kind == Kind::power) return std::pow(y, 1 / param);
    return std::pow(std::log1p(y), 1 / param);
}

std::int64_t sample_size_orlicz(double L, double eps, double delta, const UFamily& U) {
    check_ed(eps, delta);
    if (!(L > 0)) throw DomainError("L must be positive");
    const double r = L * U.inverse(1 / delta) / eps;
    return ceil_count(r * r);
}

std::int64_t sample_size_psi(const PsiVariable& v, double eps, double delta) {
    check_ed(eps, delta);
    if (!(v.norm > 0)) throw DomainError("norm must be positive");
    const auto& f = v.family;
    const double c_psi = condition_h_constant(f).c_psi;  // gates the family
    if (f.kind() == PsiKind::power) {
        const double al = f.alpha();
        const double base = 4 * std::pow(3 * std::numbers::e, al) * v.norm / eps;
        return ceil_count(base * base * log_factor(al, delta));
    }
    const double a = f.a(), be = f.beta();
    const double K = 2 * std::sqrt(c_psi) * v.norm / eps;
    const double m = std::max(a, std::pow(std::pow(a, 1 / be) * (-std::log(delta)) / be, be / (be + 1)));
    return ceil_count(K * K * std::exp(2 * (be + 1) * m));
}

std::int64_t sample_size_ct(double B_hat, const PsiFamily& family, double eps, double delta) {
    check_ed(eps, delta);
    if (!(B_hat > 0)) throw DomainError("B_hat must be positive");
    if (family.kind() != PsiKind::power) throw DomainError("sample_size_ct supports the power family only");
    const double al = family.alpha();
    const double base = std::exp(2 * al) * B_hat / eps;
    return ceil_count(base * base * log_factor(al, delta));
}

std::int64_t sample_size_lp(double norm_integral, double p, const PsiFamily& family, double eps, double delta) {
    check_ed(eps, delta);
    if (!(norm_integral > 0)) throw DomainError("norm integral must be positive");
    if (!(p >= 1)) throw DomainError("p must be at least 1");
    if (family.kind() != PsiKind::power) throw DomainError("sample_size_lp supports the power family only");
    const double al = family.alpha();
    const double base = 4 * std::pow(3 * p * std::numbers::e, al) * norm_integral / eps;
    return ceil_count(base * base * log_factor(al, delta));
}

std::int64_t certify(const McRequest& req) {
    if (const auto* o = std::get_if<OrliczRoute>(&req.route)) return sample_size_orlicz(o->L, req.eps, req.delta, o->U);
    return sample_size_psi(std::get<PsiRoute>(req.route).v, req.eps, req.delta);
}

namespace {

double chunk_sum(const Sampler& sampler, std::int64_t n, std::uint64_t seed, std::int64_t c) {
    const std::int64_t begin = c * kChunkSize;
    const std::int64_t end = std::min(n, begin + kChunkSize);
    RngStream rng(seed, static_cast<std::uint64_t>(c));
    double s = 0;
    for (std::int64_t i = begin; i < end; ++i) {
        const double x = sampler(rng);
        if (!std::isfinite(x))
            throw EvaluationError("non-finite draw in chunk " + std::to_string(c) + ", offset " +
                                      std::to_string(i - begin),
                                  static_cast<double>(i));
        s += x;
    }
    return s;
}

std::int64_t chunk_count(std::int64_t n) {
    if (n < 1) throw DomainError("n must be at least 1");
    return (n + kChunkSize - 1) / kChunkSize;
}

McResult finish(const std::vector<double>& sums, std::int64_t n, std::uint64_t seed) {
    double total = 0;
    for (double s : sums) total += s;
    return {n, total / static_cast<double>(n), seed};
}

}  // namespace

McResult run_certified_serial(const Sampler& sampler, std::int64_t n, std::uint64_t seed) {
    const std::int64_t chunks = chunk_count(n);
    std::vector<double> sums(static_cast<std::size_t>(chunks));
    for (std::int64_t c = 0; c < chunks; ++c) sums[static_cast<std::size_t>(c)] = chunk_sum(sampler, n, seed, c);
    return finish(sums, n, seed);
}

McResult run_certified(const Sampler& sampler, std::int64_t n, std::uint64_t seed, int workers) {
    const std::int64_t chunks = chunk_count(n);
    std::vector<double> sums(static_cast<std::size_t>(chunks));
#ifdef _OPENMP
    const int threads = workers > 0 ? workers : omp_get_max_threads();
    std::exception_ptr first_error;
    std::mutex err_mu;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t c = 0; c < chunks; ++c) {
        try {
            sums[static_cast<std::size_t>(c)] = chunk_sum(sampler, n, seed, c);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    (void)workers;
    for (std::int64_t c = 0; c < chunks; ++c) sums[static_cast<std::size_t>(c)] = chunk_sum(sampler, n, seed, c);
#endif
    return finish(sums, n, seed);
}

}  // namespace certistoch
