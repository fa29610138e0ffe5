// SPDX-License-Identifier: MIT
#include "certistoch/process.hpp"

#include <cmath>
#include <numbers>

namespace certistoch {

namespace {

void check_spec(const ProcessSpec& s) {
    if (!(s.domain.lo < s.domain.hi)) throw DomainError("process domain needs c < d");
    if (!(s.holder.c_bar >= 0)) throw DomainError("Hoelder constant must be non-negative");
    if (!(s.holder.delta > 0 && s.holder.delta <= 1)) throw DomainError("Hoelder exponent must lie in (0, 1]");
    if (!(s.inf_norm >= 0)) throw DomainError("inf_norm must be non-negative");
}

void check_p(double p) {
    if (!(p > 0 && p < 1)) throw DomainError("p must lie in (0, 1)");
}

double log_add_one(double L) {  // ln(e^L + 1)
    return L > 0 ? L + std::log1p(std::exp(-L)) : std::log1p(std::exp(L));
}

}  // namespace

double massiveness_interval(double c, double d, double u) {
    if (!(c < d)) throw DomainError("massiveness: need c < d");
    if (!(u > 0)) throw DomainError("massiveness: radius must be positive");
    return (d - c) / (2 * u) + 1;
}

double entropy_integral(const ProcessSpec& spec, double p, double abs_tol) {
    check_spec(spec);
    check_p(p);
    const double len = spec.domain.hi - spec.domain.lo;
    const double gamma = spec.holder.c_bar * std::pow(len, spec.holder.delta);
    if (gamma == 0) return 0.0;
    const double delta = spec.holder.delta;
    const double shift = std::numbers::ln2 + std::log(p) / delta;

    // u = gamma p e^{-s}: sigma^{-1}(u) = (d-c) p^{1/delta} e^{-s/delta}, so
    // N = e^{s/delta} / (2 p^{1/delta}) + 1 and du = -u ds.
    auto integrand = [&](double s) {
        const double log_n = log_add_one(s / delta - shift);
        return std::exp(-s) * kappa_from_log(spec.family, log_n);
    };
    const double far = integrand(700.0);
    if (!(far < 1e-200))
        throw DivergenceError("entropy integral diverges: kappa(N) outgrows 1/u near 0", far);
    return gamma * p * adaptive_quad(integrand, {0.0, kInf}, abs_tol / (gamma * p));
}

SupBound sup_norm_bound(const ProcessSpec& spec, std::optional<double> p) {
    check_spec(spec);
    auto at = [&](double pp) {
        SupBound b;
        b.p_used = pp;
        b.base = spec.inf_norm;
        b.integral_term = entropy_integral(spec, pp) / (pp * (1 - pp));
        b.value = b.base + b.integral_term;
        return b;
    };
    if (p) return at(*p);
    if (spec.holder.c_bar == 0) return at(0.5);
    MinimizeOptions opt;
    opt.grid_points = 64;
    opt.grid = GridKind::linear;
    const auto r = minimize_1d([&](double pp) { return at(pp).value; }, {1e-6, 1 - 1e-6}, 1e-10, opt);
    return at(r.argmin);
}

double power_majorant_integral(const ProcessSpec& spec, double p, std::optional<double> tau) {
    check_spec(spec);
    check_p(p);
    const double al = spec.family.alpha();
    const double de = spec.holder.delta;
    const double t = tau.value_or(de / (2 * al));
    if (!(t > 0)) throw DomainError("tau must be positive");
    const double r = al * t / de;
    if (r >= 1) throw DivergenceError("power majorant diverges: alpha*tau/delta >= 1", r);
    const double len = spec.domain.hi - spec.domain.lo;
    const double cb = spec.holder.c_bar;
    if (cb == 0) return 0.0;
    const double A = std::pow(std::numbers::e / (al * t), al) * std::pow(len / 2, al * t) * std::pow(cb, r);
    const double gamma = cb * std::pow(len, de);
    return A * std::pow(gamma * p, 1 - r) / (1 - r);
}

SupBound sup_norm_bound_power_majorant(const ProcessSpec& spec, double p, std::optional<double> tau) {
    SupBound b;
    b.p_used = p;
    b.base = spec.inf_norm;
    b.integral_term = power_majorant_integral(spec, p, tau) / (p * (1 - p));
    b.value = b.base + b.integral_term;
    return b;
}

double sup_tail_bound(const SupBound& b, const PsiFamily& family, double eps) {
    if (!(b.value > 0)) throw DomainError("sup_tail_bound: bound value must be positive");
    return tail_bound(family, b.value, eps);
}

namespace {

void check_bn(double C_Delta, double tail_var_inf, double C_N, Interval ab, double alpha, double beta) {
    if (!(C_Delta > 0)) throw DomainError("C_Delta must be positive");
    if (!(tail_var_inf >= 0) || !(C_N >= 0)) throw DomainError("variance tail and C_N must be non-negative");
    if (!(ab.lo < ab.hi)) throw DomainError("need a < b");
    if (!(alpha > 0)) throw DomainError("alpha must be positive");
    if (!(beta > alpha)) throw DivergenceError("entropy integral divergent for power pair (beta <= alpha)", beta - alpha);
}

}  // namespace

double remainder_bound_BN_at(double C_Delta, double tail_var_inf, double C_N, Interval ab,
                             double alpha, double beta, double p) {
    check_bn(C_Delta, tail_var_inf, C_N, ab, alpha, beta);
    check_p(p);
    const double scale = beta * C_Delta * C_N * std::pow(ab.hi - ab.lo, beta) / (beta - alpha) *
                         std::pow(std::numbers::e / (2 * alpha), alpha);
    return C_Delta * std::sqrt(tail_var_inf) + scale * std::pow(p, -alpha / beta) / (1 - p);
}

SupBound remainder_bound_BN(double C_Delta, double tail_var_inf, double C_N, Interval ab,
                            double alpha, double beta) {
    check_bn(C_Delta, tail_var_inf, C_N, ab, alpha, beta);
    SupBound b;
    b.p_used = alpha / (alpha + beta);
    b.base = C_Delta * std::sqrt(tail_var_inf);
    b.integral_term = C_Delta * C_N * std::pow(ab.hi - ab.lo, beta) *
                      std::pow(alpha + beta, 1 + alpha / beta) / (beta - alpha) *
                      std::pow(std::numbers::e / (2 * std::pow(alpha, 1 + 1 / beta)), alpha);
    b.value = b.base + b.integral_term;
    return b;
}

}  // namespace certistoch
