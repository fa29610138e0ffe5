// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "certistoch/numeric.hpp"

namespace certistoch {

enum class PsiKind { power, exp_power, log_power, tabulated };

// The weight psi(u), u >= 1:
//   power      u^alpha
//   exp_power  exp(a u^beta)
//   log_power  (ln(u+1))^lambda
//   tabulated  any user callable; only the generic infimum and the moment
//              sup accept it.
class PsiFamily {
public:
    static PsiFamily power(double alpha);
    static PsiFamily exp_power(double a, double beta);
    static PsiFamily log_power(double lambda);
    static PsiFamily tabulated(std::function<double(double)> psi, std::string name = "tabulated");

    PsiKind kind() const { return kind_; }
    double operator()(double u) const;
    double log_psi(double u) const;

    // Parameter accessors; each throws DomainError on the wrong kind.
    double alpha() const;
    double a() const;
    double beta() const;
    double lambda() const;

    const std::string& name() const { return name_; }

private:
    PsiFamily(PsiKind k, double p1, double p2) : kind_(k), p1_(p1), p2_(p2) {}
    PsiKind kind_;
    double p1_ = 0, p2_ = 0;
    std::shared_ptr<const std::function<double(double)>> table_;
    std::string name_;
};

using MomentFn = std::function<double(double)>;  // u -> (E|xi|^u)^{1/u}

struct PsiVariable {
    PsiFamily family;
    double norm = 0;
    MomentFn moment_fn;  // optional, empty when unknown
};

// N(0, sigma^2) in F_psi with psi(u) = sqrt(u); norm 2 e^{-5/12} sigma.
PsiVariable norm_bound_gaussian(double sigma);
// Exp(rate) in F_psi with psi(u) = u; norm 4 sqrt(pi) e^{-1} / rate.
PsiVariable norm_bound_exponential(double rate);

// Grid sup of moment_fn(u)/psi(u) with local refinement. A lower estimate of
// the true norm: a finite grid cannot certify a supremum from above.
double norm_from_moments(const MomentFn& moment_fn, const PsiFamily& family,
                         Interval u_range = {1.0, 1e4});

// inf_{u in [1, 1e6]} (norm psi(u) / eps)^u, clipped to 1.
double generic_tail_bound(const PsiFamily& family, double norm, double eps);
// The family's closed form when its threshold on eps/norm holds.
std::optional<double> closed_form_tail(const PsiFamily& family, double norm, double eps);
// Closed form when available, generic infimum otherwise. Always in [0, 1].
double tail_bound(const PsiFamily& family, double norm, double eps);
inline double tail_bound(const PsiVariable& v, double eps) { return tail_bound(v.family, v.norm, eps); }

// Majorizing characteristic. kappa(1) = 1. The raw formulas dip below 1 for
// small n with large exponents, so the result is floored at 1, which keeps
// the sequence nondecreasing.
double kappa(const PsiFamily& family, std::int64_t n);
// The same formula for real n >= 1 given as ln n; used inside entropy integrals.
double kappa_from_log(const PsiFamily& family, double log_n);

struct HConstant {
    PsiFamily family;
    double c_psi;
};

// Power needs alpha >= 1/2, ExpPower needs 0 < beta < 1 and (2 a beta)^{-1/beta} >= 1.
HConstant condition_h_constant(const PsiFamily& family);

}  // namespace certistoch
