// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <variant>

#include "certistoch/psi.hpp"

namespace certistoch {

// Orlicz N-functions with closed-form inverses.
struct UFamily {
    enum class Kind { power, exp_alpha } kind = Kind::power;
    double param = 2;  // p >= 2, or alpha in [1, 2]

    static UFamily power(double p);
    static UFamily exp_alpha(double alpha);
    double inverse(double y) const;
};

// n >= (L U^{-1}(1/delta) / eps)^2
std::int64_t sample_size_orlicz(double L, double eps, double delta, const UFamily& U);

// F_psi route via condition H with the factor-2 centering
// ||xi - E xi|| <= 2 ||xi||.
//   Power(alpha >= 1/2): (4 (3e)^alpha ||xi|| / eps)^2 max(1, (-ln delta/alpha)^{2 alpha})
//   ExpPower(0 < beta < 1): (2 sqrt(C_psi) ||xi|| / eps)^2
//       * exp(2 (beta+1) max(a, (a^{1/beta} (-ln delta)/beta)^{beta/(beta+1)}))
std::int64_t sample_size_psi(const PsiVariable& v, double eps, double delta);

// C(T) route, power family: (e^{2 alpha} B_hat / eps)^2 max(1, (-ln delta/alpha)^{2 alpha}).
std::int64_t sample_size_ct(double B_hat, const PsiFamily& family, double eps, double delta);

// L_p(T) route, power family:
// (4 (3 p e)^alpha I / eps)^2 max(1, (-ln delta/alpha)^{2 alpha}), I = (int ||xi(t)||^p dmu)^{1/p}.
std::int64_t sample_size_lp(double norm_integral, double p, const PsiFamily& family, double eps, double delta);

struct OrliczRoute {
    double L;
    UFamily U;
};
struct PsiRoute {
    PsiVariable v;
};

struct McRequest {
    double eps;
    double delta;
    std::variant<OrliczRoute, PsiRoute> route;
};

std::int64_t certify(const McRequest& req);

struct McResult {
    std::int64_t n_certified;
    double estimate;
    std::uint64_t seed;
};

// One draw of f(xi) from the supplied stream. Must be safe to call
// concurrently on distinct streams.
using Sampler = std::function<double(RngStream&)>;

inline constexpr std::int64_t kChunkSize = std::int64_t{1} << 16;

// Mean of n draws. Chunk c covers draws [c * kChunkSize, ...) and uses
// RngStream(seed, c); chunk sums are added in chunk order, so the estimate
// is bit-identical for any number of workers. workers <= 0 means the OpenMP default.
McResult run_certified(const Sampler& sampler, std::int64_t n, std::uint64_t seed, int workers = 0);
McResult run_certified_serial(const Sampler& sampler, std::int64_t n, std::uint64_t seed);

}  // namespace certistoch
