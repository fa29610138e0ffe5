// SPDX-License-Identifier: MIT
#include "certistoch/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>

namespace certistoch {

namespace {

double checked(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw EvaluationError("minimize_1d: objective is not finite", x);
    return v;
}

std::vector<double> make_grid(double lo, double hi, int n, GridKind kind) {
    const bool use_log = kind == GridKind::log ||
                         (kind == GridKind::automatic && lo > 0 && hi / lo >= 100.0);
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) / (n - 1);
        g[static_cast<std::size_t>(i)] =
            use_log ? std::exp(std::log(lo) + s * (std::log(hi) - std::log(lo))) : lo + s * (hi - lo);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

}  // namespace

MinResult minimize_1d(const std::function<double(double)>& f, Interval domain, double tol,
                      const MinimizeOptions& opt) {
    if (!(tol > 0)) throw DomainError("minimize_1d: tol must be positive");
    const double lo = domain.lo;
    const double hi = std::isinf(domain.hi) ? std::max(opt.inf_cap, lo * 2 + 1) : domain.hi;
    if (!(lo < hi)) throw DomainError("minimize_1d: empty interval");
    const int n = std::max(opt.grid_points, 3);

    const auto grid = make_grid(lo, hi, n, opt.grid);
    std::size_t best = 0;
    double best_val = checked(f, grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = checked(f, grid[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }

    const double a = grid[best == 0 ? 0 : best - 1];
    const double b = grid[std::min(best + 1, grid.size() - 1)];
    // Brent cannot resolve the argument much below sqrt(machine eps) relative.
    const int bits = std::clamp(static_cast<int>(-std::log2(std::max(tol, 1e-300))), 8,
                                std::numeric_limits<double>::digits / 2);
    std::uintmax_t max_iter = 500;
    const auto r = boost::math::tools::brent_find_minima(
        [&](double x) { return checked(f, x); }, a, b, bits, max_iter);
    if (r.second < best_val) return {r.first, r.second};
    return {grid[best], best_val};
}

std::int64_t smallest_integer_satisfying(const std::function<bool(std::int64_t)>& pred,
                                         std::int64_t lo, std::int64_t hi_cap) {
    if (hi_cap < lo) throw DomainError("smallest_integer_satisfying: cap below lower end");
    if (pred(lo)) return lo;

    // Bracket: pred(known_false) is false, pred(hi) is true.
    std::int64_t known_false = lo;
    std::int64_t step = 1;
    std::int64_t hi = lo;
    for (;;) {
        hi = (hi_cap - known_false <= step) ? hi_cap : known_false + step;
        if (pred(hi)) break;
        if (hi == hi_cap)
            throw CapExceeded("predicate not satisfiable below cap " + std::to_string(hi_cap),
                              hi_cap);
        known_false = hi;
        step *= 2;
    }
    std::int64_t upper = hi;
    while (upper - known_false > 1) {
        const std::int64_t mid = known_false + (upper - known_false) / 2;
        if (pred(mid))
            upper = mid;
        else
            known_false = mid;
    }

    // Spot checks for monotonicity around the answer.
    const std::int64_t probe_hi = std::min(hi_cap, upper + std::max<std::int64_t>(1, (upper - lo) / 2));
    if (!pred(probe_hi))
        throw ContractError("smallest_integer_satisfying: predicate is not monotone (false at " +
                            std::to_string(probe_hi) + ")");
    if (upper - lo >= 2) {
        const std::int64_t probe_lo = lo + (upper - lo) / 2;
        if (probe_lo < upper && pred(probe_lo))
            throw ContractError("smallest_integer_satisfying: predicate is not monotone (true at " +
                                std::to_string(probe_lo) + ")");
    }
    return upper;
}

double adaptive_quad(const std::function<double(double)>& f, Interval domain, double abs_tol,
                     unsigned max_depth) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    if (!(abs_tol > 0)) throw DomainError("adaptive_quad: abs_tol must be positive");
    if (!(domain.lo < domain.hi)) {
        if (domain.lo == domain.hi) return 0.0;
        throw DomainError("adaptive_quad: lo must be below hi");
    }
    const double hi = std::isinf(domain.hi) ? std::numeric_limits<double>::infinity() : domain.hi;

    // Boost scales its tolerance by the first-level estimate, so convert the
    // absolute target into a relative one using a cheap first pass.
    double err = 0, l1 = 0;
    const double first = GK::integrate(f, domain.lo, hi, 0, 0.0, &err, &l1);
    if (!std::isfinite(first)) throw EvaluationError("adaptive_quad: integrand not finite", domain.lo);
    const double scale = std::max({std::abs(first), l1, 1e-300});
    const double rel = std::max(abs_tol / scale, 4 * std::numeric_limits<double>::epsilon());

    const double value = GK::integrate(f, domain.lo, hi, max_depth, rel, &err, &l1);
    if (!std::isfinite(value)) throw EvaluationError("adaptive_quad: integrand not finite", domain.lo);
    const double floor = 64 * std::numeric_limits<double>::epsilon() * std::max(l1, std::abs(value));
    if (err > abs_tol && err > floor)
        throw ToleranceNotMet("adaptive_quad: tolerance not met", value, err);
    return value;
}

namespace special {

double gamma(double z) {
    if (z <= 0 && z == std::floor(z)) throw DomainError("gamma: pole at non-positive integer");
    return std::tgamma(z);
}

double lgamma(double z) {
    if (z <= 0 && z == std::floor(z)) throw DomainError("lgamma: pole at non-positive integer");
    // boost's version does not touch the global signgam, so it is re-entrant.
    return boost::math::lgamma(z);
}

double gamma_upper(double s, double x) {
    if (!(x >= 0)) throw DomainError("gamma_upper: x must be non-negative");
    if (x == 0) return gamma(s);
    if (!(s > 0)) throw DomainError("gamma_upper: only s > 0 is supported");
    return boost::math::tgamma(s, x);
}

namespace {

// Plain 2F1 series, summed until the geometric tail estimate is negligible.
double hyp2f1_series(double a, double b, double c, double z) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 10'000'000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (term == 0.0) return sum;
        const double r = std::abs(z);
        if (std::abs(term) * r / (1 - r) <= 1e-17 * std::abs(sum) && n > 2) return sum;
    }
    throw DivergenceError("hyp2f1: series did not settle", std::abs(z));
}

}  // namespace

double hyp2f1_regularized(double a, double b, double c, double z) {
    if (!(std::abs(z) < 1)) throw DomainError("hyp2f1_regularized: series needs |z| < 1");
    if (c <= 0 && c == std::floor(c)) {
        // Limit form at c = -m: (a)_{m+1}(b)_{m+1}/(m+1)! z^{m+1} 2F1(a+m+1, b+m+1; m+2; z).
        const int m = static_cast<int>(-c);
        double pre = std::pow(z, m + 1);
        for (int j = 0; j <= m; ++j) pre *= (a + j) * (b + j) / (j + 1.0);
        return pre * hyp2f1_series(a + m + 1, b + m + 1, m + 2, z);
    }
    return hyp2f1_series(a, b, c, z) / std::tgamma(c);
}

}  // namespace special

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), index_(stream_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_index),
                      static_cast<std::uint32_t>(stream_index >> 32), 0x63657274u};
    engine_.seed(seq);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) {
    // splitmix64 finalizer over base + golden-ratio multiples of k
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (k + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace certistoch
