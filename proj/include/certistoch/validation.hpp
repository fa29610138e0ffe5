// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>

#include "certistoch/monte_carlo.hpp"
#include "certistoch/psi.hpp"

namespace certistoch {

// Empirical frequency against a deterministic bound. pass means
// frequency <= bound + 3 binomial standard errors (evaluated at the bound).
struct ValidationReport {
    std::string id;
    double bound;
    double frequency;
    std::int64_t trials;
    bool pass;
    std::string note;
};

ValidationReport make_report(std::string id, double bound, std::int64_t hits, std::int64_t trials, std::string note = {});

// P{|xi| > eps}, xi ~ N(0,1), against tail_bound with psi = sqrt(u) and norm 2 e^{-5/12}.
ValidationReport validate_tail_gauss(double eps, std::int64_t samples, std::uint64_t seed, int workers = 0);

// Demo integral I = sqrt(2 pi) a E e^{-b xi} = sqrt(2 pi) a e^{a^2 b^2 / 2}, xi ~ N(0, a^2).
struct DemoIntegral {
    double a = 1;
    double b = 0.5;
    double truth() const;
    Sampler sampler() const;
    // (E f^u)^{1/u} = sqrt(2 pi) a e^{u a^2 b^2 / 2}
    MomentFn moment_fn() const;
};

// Moments of the demo integrand grow like e^{u a^2 b^2/2}, so its sqrt(u)-norm
// over all u >= 1 is infinite. The certification only exercises moments up to
// u ~ 2 (-ln delta)/alpha, and the norm is taken over u in [1, 2 ceil(-ln delta/alpha)].
double demo_norm_for(const DemoIntegral& d, double alpha, double delta);

struct CoverageReport {
    ValidationReport report;
    std::int64_t n_certified;
    double norm;
};

// Repeats run_certified `trials` times with n from sample_size_psi and counts |Z_n - I| > eps.
CoverageReport validate_mc_coverage(const DemoIntegral& d, double eps, double delta, std::int64_t trials,
                                    std::uint64_t seed, int workers = 0);

// Case-study remainder sup_t |X - X_N| on a uniform grid of `grid_points`,
// with the infinite tail cut at k = N + extra_terms, against the psi tail
// bound with norm B_hat_N.
ValidationReport validate_sup_bound(std::int64_t N, double eps, std::int64_t paths, std::int64_t grid_points,
                                    std::int64_t extra_terms, std::uint64_t seed, int workers = 0);

}  // namespace certistoch
