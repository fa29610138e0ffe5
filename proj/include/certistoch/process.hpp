// SPDX-License-Identifier: MIT
#pragma once

#include <optional>

#include "certistoch/psi.hpp"

namespace certistoch {

// sup_{|t-s|<=h} ||X(t) - X(s)||_psi <= c_bar * h^delta
struct Holder {
    double c_bar = 0;
    double delta = 1;
};

struct ProcessSpec {
    PsiFamily family;
    double inf_norm = 0;      // inf_t ||X(t)||_psi
    Holder holder;
    Interval domain{0, 1};   // [c, d]
};

struct SupBound {
    double value = 0;  // base + integral_term
    double p_used = 0.5;
    double base = 0;
    double integral_term = 0;
};

// Covering bound for [c, d] by closed balls of radius u: (d - c)/(2u) + 1.
double massiveness_interval(double c, double d, double u);

// int_0^{gamma p} kappa(N(sigma^{-1}(u))) du with gamma = c_bar (d-c)^delta.
double entropy_integral(const ProcessSpec& spec, double p, double abs_tol = 1e-10);

// B(p) = inf_norm + entropy_integral / (p (1 - p)). With p empty the bound is
// minimized over p in [1e-6, 1 - 1e-6].
SupBound sup_norm_bound(const ProcessSpec& spec, std::optional<double> p = std::nullopt);

// Power-family analytic majorant of the entropy integral using
// ln x <= x^tau / (e tau):  A (gamma p)^{1 - alpha tau/delta} / (1 - alpha tau/delta).
// tau defaults to delta / (2 alpha). Throws DivergenceError when alpha tau / delta >= 1.
double power_majorant_integral(const ProcessSpec& spec, double p, std::optional<double> tau = std::nullopt);
SupBound sup_norm_bound_power_majorant(const ProcessSpec& spec, double p,
                                       std::optional<double> tau = std::nullopt);

// Tail of sup |X| from B(p), reusing the single-variable bounds with norm B(p).
double sup_tail_bound(const SupBound& b, const PsiFamily& family, double eps);

// Series-remainder bound for power-type pairs, already optimized at
// p = alpha / (alpha + beta). Requires beta > alpha > 0.
SupBound remainder_bound_BN(double C_Delta, double tail_var_inf, double C_N, Interval ab,
                            double alpha, double beta);
// The same bound before optimizing over p.
double remainder_bound_BN_at(double C_Delta, double tail_var_inf, double C_N, Interval ab,
                             double alpha, double beta, double p);

}  // namespace certistoch
