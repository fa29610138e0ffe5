// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "certistoch/numeric.hpp"

namespace certistoch {

// phi(t) = t^gamma/gamma (pure power, 1 < gamma <= 2), or the splice
// t^2/gamma below 1 and t^gamma/gamma above (gamma > 2).
struct PhiFunction {
    enum class Kind { pure_power, spliced } kind = Kind::pure_power;
    double gamma = 2;

    static PhiFunction pure_power(double gamma);
    static PhiFunction spliced(double gamma);
    double operator()(double t) const;
    double conjugate_exponent() const { return gamma / (gamma - 1); }
};

// (sum tau_k^s)^{1/s}, an upper bound for tau_phi of a sum of independent terms.
double tau_combine(double s, const std::vector<double>& taus);

struct TauBudget {
    double c_N = 0;  // int_T tau_phi(X(t) - X_N(t))^p dmu(t), or an upper bound
    double p = 2;
};

struct LpCheck {
    bool pass;
    double reliability_limit;  // delta / (beta ln(2/alpha))^{p/beta}
    double shape_limit;        // delta / p^{p(1 - 1/gamma)}
};

LpCheck lp_criteria(const TauBudget& budget, const PhiFunction& phi, double delta, double alpha_rel);

// Validity threshold in x of the C(T) bound below.
double ct_threshold(double C, double ae, double zeta, double gamma_N, double T_len);

// Two-sided sup bound on [0, T] for sigma(h) = C h^ae; zeta >= 2.
// Throws ValidityError (carrying the threshold) when x is not above it.
double ct_tail_bound(double C, double ae, double zeta, double gamma_N, double T_len, double x);

enum class Basis { cosine, hermite, hermite_geometric, chebyshev_t, chebyshev_u, legendre, laguerre, gegenbauer };

Basis basis_from_string(const std::string& s);
std::string to_string(Basis b);

// sqrt of the generating-function integral, without tau:
//   hermite_geometric  1/sqrt(1-w^2)
//   chebyshev_t        sqrt(2/pi) sqrt(1 + (1-w^2)/(2w) ln((1+w)/(1-w)))
//   chebyshev_u        2/(sqrt(pi)(1-w^2))
//   legendre           sqrt(ln((1+w)/(1-w))/w)
//   laguerre           sqrt(Gamma(alpha+1)/(1-w^2)^{alpha+1})
//   gegenbauer         Gamma(alpha)/(1+w^2)^alpha sqrt(Gamma(alpha+1/2)/(sqrt(pi) 2^{1-2alpha}))
//                      * 2F1~(alpha, alpha+1/2; alpha+1; 4w^2/(1+w^2)^2)^{1/2}
double basis_closed_factor(Basis b, double w, double alpha = 0.5);

// Per-term weight tau_k of the k-th basis coefficient for the
// generating-function bases (k = 0, 1, ...).
double basis_term_weight(Basis b, std::int64_t k, double tau, double w, double alpha = 0.5);

// sum_{k>N} 1/(k^2+3k+2) = 1/(N+2)
double hermite_tail_factor(std::int64_t N);
// sum_{k>N} 4/(pi^2 k^2), exact through the trigamma function.
double cosine_tail_factor(std::int64_t N);

inline constexpr double kHermiteK = 1.086435;

struct BasisRemainderInput {
    Basis basis = Basis::hermite_geometric;
    double tau = 1;
    double w = 0.5;
    std::int64_t N = 10;
    double alpha = 0.5;  // Laguerre / Gegenbauer parameter
    double p = 2;        // exponent of the L_p budget
    Interval T{0, 1};
    // delta_f(t) for cosine, Z_f(t) for Hermite, the f-norm for the
    // generating-function bases. Defaults to 1.
    std::function<double(double)> f_factor;
    // delta_k(t) corrections for cosine/Hermite, hat a_k(t) for the rest. Defaults to 0.
    std::function<double(std::int64_t, double)> partial;
};

struct BasisTerm {
    std::string name;
    double value;
};

struct BasisRemainderReport {
    double sup_value;   // sup_t r(t), feeds gamma_N
    double argsup_t;
    double c_N;         // int_T r(t)^p dt, feeds TauBudget
    std::vector<BasisTerm> breakdown;  // evaluated at argsup_t
};

// Pointwise remainder magnitude r(t).
double basis_remainder_at(const BasisRemainderInput& in, double t);
BasisRemainderReport basis_remainder(const BasisRemainderInput& in);

}  // namespace certistoch
