// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>

#include "certistoch/errors.hpp"

namespace certistoch {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
    double lo;
    double hi;  // may be +inf for tail searches
};

struct MinResult {
    double argmin;
    double min;
};

enum class GridKind { automatic, linear, log };

struct MinimizeOptions {
    int grid_points = 256;
    GridKind grid = GridKind::automatic;
    double inf_cap = 1e6;  // stand-in for +inf on the right end
};

// Coarse grid scan followed by Brent refinement around the best grid point.
// Throws EvaluationError if f is non-finite at any sampled point.
MinResult minimize_1d(const std::function<double(double)>& f, Interval domain,
                      double tol = 1e-10, const MinimizeOptions& opt = {});

// Least n in [lo, hi_cap] with pred(n) true, for a predicate that flips once
// from false to true. Exponential bracketing, then bisection.
std::int64_t smallest_integer_satisfying(const std::function<bool(std::int64_t)>& pred,
                                         std::int64_t lo,
                                         std::int64_t hi_cap = 100'000'000);

// Adaptive Gauss-Kronrod (15 points) with interval halving; the upper limit
// may be +inf. Throws ToleranceNotMet when the error estimate stays above
// abs_tol (and above the rounding floor of the integrand).
double adaptive_quad(const std::function<double(double)>& f, Interval domain,
                     double abs_tol = 1e-10, unsigned max_depth = 20);

namespace special {

double gamma(double z);
double lgamma(double z);
// Upper incomplete gamma Gamma(s, x), non-regularized.
double gamma_upper(double s, double x);
// Regularized Gauss hypergeometric 2F1(a,b;c;z) / Gamma(c), |z| < 1.
double hyp2f1_regularized(double a, double b, double c, double z);

}  // namespace special

// A reproducible random stream: the pair (seed, stream_index) fully
// determines the sequence. Distinct indices give unrelated streams.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_index);

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    double uniform() { return unif_(engine_); }
    double normal() { return norm_(engine_); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return index_; }

private:
    std::uint64_t seed_;
    std::uint64_t index_;
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    std::normal_distribution<double> norm_{0.0, 1.0};
};

// Derive a child seed (e.g. one per trial) from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k);

}  // namespace certistoch
