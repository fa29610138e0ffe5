// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "certistoch/numeric.hpp"

namespace certistoch {

// D_{V,W} with V(x) = |x|^b, W(x) = |x|^a.
struct DvwSpace {
    double a = 1;
    double b = 1;
    double q() const { return 2 * a / (a * b + 1); }
};

void validate(const DvwSpace& s);

using TailFn = std::function<double(double)>;  // x -> P{|xi| > x}

// Tail shapes with a known prenorm. `scale` multiplies the variable.
struct TailFamily {
    enum class Kind { pareto, cauchy, gaussian } kind;
    double shape = 1;  // c for pareto, gamma for cauchy, sigma for gaussian
    double scale = 1;

    static TailFamily pareto(double c, double scale = 1) { return {Kind::pareto, c, scale}; }
    // min(1, 2 gamma s / (pi x)), the standard majorant of the Cauchy tail.
    static TailFamily cauchy(double gamma, double scale = 1) { return {Kind::cauchy, gamma, scale}; }
    // sqrt(2/pi) (sigma s / x) exp(-x^2 / (2 sigma^2 s^2)), the Mills majorant, not clipped.
    static TailFamily gaussian(double sigma, double scale = 1) { return {Kind::gaussian, sigma, scale}; }

    double operator()(double x) const;
};

// sqrt(sup_{x>0} x^b P{|xi|>x}^{1/a}) on a log grid x in [1e-6, 1e6]
// (512 points) with local refinement. Throws DivergenceError when the
// running sup is still growing over the last decade of the grid.
double dvw_prenorm(const DvwSpace& s, const TailFn& tail);
// Closed form; DivergenceError when the family is not in the space.
double dvw_prenorm_closed(const DvwSpace& s, const TailFamily& f);

// n^{1/(2a)}
double dvw_kappa(const DvwSpace& s, std::int64_t n);

// sum_k term(k) for k = first, first+1, ... A power-law fit of the tail
// decides convergence: fitted exponent <= 1 throws DivergenceError.
double series_power_sum(const std::function<double(std::int64_t)>& term, std::int64_t first = 1,
                        std::int64_t max_terms = 1'000'000);

// min(1, x^{-ab} mu^{ab+1}), mu = sum ||xi_k||^q. Needs x >= mu.
double series_tail_bound(const DvwSpace& s, const std::vector<double>& prenorms, double x);
double series_tail_bound(const DvwSpace& s, const std::function<double(std::int64_t)>& prenorm, double x);

using EntropyFn = std::function<double(double)>;  // eps -> N(eps)

// N(eps) = T D^{1/zeta} / (2 eps^{1/zeta}) + 1 for Hoelder-zeta paths on [0, T].
EntropyFn lipschitz_entropy(double T_len, double D, double zeta);

// int_0^{Delta0 p} N(u^{(ab+1)/(2a)})^{1/(ab+1)} du
double dvw_entropy_integral(const DvwSpace& s, const EntropyFn& N, double Delta0, double p);

// min(1, x^{-ab} (inf_prenorm^q + entropy integral / (p (1-p))))
double dvw_sup_tail(const DvwSpace& s, double inf_prenorm, const EntropyFn& N, double Delta0, double p, double x);

struct DvwModel {
    std::int64_t N = 0;
    double inf_prenorm = 0;  // inf_t of the remainder prenorm
    double Delta_N = 0;      // (sup_{t,s} ||X(s) - X(t)||)^q
    double zeta = 1;         // Hoelder exponent of the basis functions
    double T_len = 1;
    // Prenorm ||xi_k|| and Hoelder constant C_k, k >= 1; only k > N is used.
    std::function<double(std::int64_t)> prenorm;
    std::function<double(std::int64_t)> holder_C;
};

struct ModelCheck {
    bool pass;
    double lhs;
    double theta;
    double tail_sum;  // sum_{k>N} C_k^{ab/(ab+1)} ||xi_k||^q
};

double dvw_model_lhs(const DvwSpace& s, const DvwModel& m, double accuracy, double theta, double tail_sum);
ModelCheck dvw_model_check(const DvwSpace& s, const DvwModel& m, double accuracy, double nu,
                           std::optional<double> theta = std::nullopt);

}  // namespace certistoch
