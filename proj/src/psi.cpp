// SPDX-License-Identifier: MIT
#include "certistoch/psi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace certistoch {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
    if (!(v > 0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

PsiFamily PsiFamily::power(double alpha) {
    require_positive(alpha, "alpha");
    PsiFamily f(PsiKind::power, alpha, 0);
    f.name_ = "power";
    return f;
}

PsiFamily PsiFamily::exp_power(double a, double beta) {
    require_positive(a, "a");
    require_positive(beta, "beta");
    PsiFamily f(PsiKind::exp_power, a, beta);
    f.name_ = "exppower";
    return f;
}

PsiFamily PsiFamily::log_power(double lambda) {
    require_positive(lambda, "lambda");
    PsiFamily f(PsiKind::log_power, lambda, 0);
    f.name_ = "logpower";
    return f;
}

PsiFamily PsiFamily::tabulated(std::function<double(double)> psi, std::string name) {
    if (!psi) throw DomainError("tabulated psi needs a callable");
    PsiFamily f(PsiKind::tabulated, 0, 0);
    f.table_ = std::make_shared<const std::function<double(double)>>(std::move(psi));
    f.name_ = std::move(name);
    return f;
}

double PsiFamily::log_psi(double u) const {
    switch (kind_) {
        case PsiKind::power: return p1_ * std::log(u);
        case PsiKind::exp_power: return p1_ * std::pow(u, p2_);
        case PsiKind::log_power: return p1_ * std::log(std::log1p(u));
        case PsiKind::tabulated: return std::log((*table_)(u));
    }
    return 0;
}

double PsiFamily::operator()(double u) const {
    if (kind_ == PsiKind::tabulated) return (*table_)(u);
    return std::exp(log_psi(u));
}

double PsiFamily::alpha() const {
    if (kind_ != PsiKind::power) throw DomainError("alpha: not a power family");
    return p1_;
}
double PsiFamily::a() const {
    if (kind_ != PsiKind::exp_power) throw DomainError("a: not an exp-power family");
    return p1_;
}
double PsiFamily::beta() const {
    if (kind_ != PsiKind::exp_power) throw DomainError("beta: not an exp-power family");
    return p2_;
}
double PsiFamily::lambda() const {
    if (kind_ != PsiKind::log_power) throw DomainError("lambda: not a log-power family");
    return p1_;
}

PsiVariable norm_bound_gaussian(double sigma) {
    require_positive(sigma, "sigma");
    const double log_sigma = std::log(sigma);
    MomentFn m = [log_sigma](double u) {
        return std::exp((0.5 * u * std::numbers::ln2 + u * log_sigma + special::lgamma(0.5 * u + 0.5) -
                         0.5 * std::log(kPi)) /
                        u);
    };
    return {PsiFamily::power(0.5), 2.0 * std::exp(-5.0 / 12.0) * sigma, std::move(m)};
}

PsiVariable norm_bound_exponential(double rate) {
    require_positive(rate, "rate");
    MomentFn m = [rate](double u) { return std::exp(special::lgamma(u + 1) / u) / rate; };
    return {PsiFamily::power(1.0), 4.0 * std::sqrt(kPi) / kE / rate, std::move(m)};
}

double norm_from_moments(const MomentFn& moment_fn, const PsiFamily& family, Interval u_range) {
    if (!moment_fn) throw DomainError("norm_from_moments: empty moment function");
    if (!(u_range.lo >= 1 && u_range.lo < u_range.hi)) throw DomainError("norm_from_moments: bad u range");
    auto ratio = [&](double u) {
        const double m = moment_fn(u);
        if (!std::isfinite(m)) throw EvaluationError("moment function not finite", u);
        return m / family(u);
    };
    if (u_range.hi == u_range.lo) return ratio(u_range.lo);

    MinimizeOptions opt;
    opt.grid_points = 1024;
    const auto r = minimize_1d([&](double u) { return -ratio(u); }, u_range, 1e-10, opt);
    return std::max(0.0, -r.min);
}

double generic_tail_bound(const PsiFamily& family, double norm, double eps) {
    require_positive(eps, "eps");
    if (!(norm >= 0)) throw DomainError("norm must be non-negative");
    if (norm == 0) return 0.0;
    const double c = std::log(norm) - std::log(eps);
    auto g = [&](double u) { return u * (c + family.log_psi(u)); };
    MinimizeOptions opt;
    opt.grid = GridKind::log;
    const auto r = minimize_1d(g, {1.0, 1e6}, 1e-10, opt);
    return std::min(1.0, std::exp(r.min));
}

std::optional<double> closed_form_tail(const PsiFamily& family, double norm, double eps) {
    require_positive(eps, "eps");
    if (!(norm > 0)) return std::nullopt;
    const double r = eps / norm;
    switch (family.kind()) {
        case PsiKind::power: {
            const double al = family.alpha();
            if (r < std::exp(al)) return std::nullopt;
            return std::exp(-(al / kE) * std::pow(r, 1.0 / al));
        }
        case PsiKind::exp_power: {
            const double a = family.a(), be = family.beta();
            if (std::log(r) < a * (be + 1)) return std::nullopt;
            return std::exp(-(be / std::pow(a, 1.0 / be)) *
                            std::pow(std::log(r) / (be + 1), (be + 1) / be));
        }
        case PsiKind::log_power: {
            const double la = family.lambda();
            if (r < std::pow(kE * std::numbers::ln2, la)) return std::nullopt;
            return std::exp(la - la * std::exp(std::pow(r, 1.0 / la) / kE));
        }
        case PsiKind::tabulated: return std::nullopt;
    }
    return std::nullopt;
}

double tail_bound(const PsiFamily& family, double norm, double eps) {
    if (auto c = closed_form_tail(family, norm, eps)) return std::min(1.0, *c);
    return generic_tail_bound(family, norm, eps);
}

double kappa_from_log(const PsiFamily& family, double log_n) {
    if (!(log_n >= 0)) throw DomainError("kappa: n must be at least 1");
    if (log_n == 0) return 1.0;
    double v = 1.0;
    switch (family.kind()) {
        case PsiKind::power: {
            const double al = family.alpha();
            v = std::pow(kE / al, al) * std::pow(log_n, al);
            break;
        }
        case PsiKind::exp_power: {
            const double a = family.a(), be = family.beta();
            const double s = std::pow(be * a, 1.0 / (be + 1)) * (1.0 / be + 1.0);
            v = std::exp(-a + s * std::pow(log_n, be / (be + 1)));
            break;
        }
        case PsiKind::log_power: {
            const double la = family.lambda();
            v = kE * std::pow(std::log(log_n + 2) / std::numbers::ln2, la);
            break;
        }
        case PsiKind::tabulated: throw DomainError("kappa: tabulated psi has no majorizing characteristic");
    }
    return std::max(1.0, v);
}

double kappa(const PsiFamily& family, std::int64_t n) {
    if (n < 1) throw DomainError("kappa: n must be at least 1");
    if (n == 1) {
        if (family.kind() == PsiKind::tabulated)
            throw DomainError("kappa: tabulated psi has no majorizing characteristic");
        return 1.0;
    }
    return kappa_from_log(family, std::log(static_cast<double>(n)));
}

HConstant condition_h_constant(const PsiFamily& family) {
    switch (family.kind()) {
        case PsiKind::power: {
            const double al = family.alpha();
            if (al < 0.5) throw DomainError("condition H not available for alpha < 1/2");
            return {family, 4.0 * std::pow(9.0, al)};
        }
        case PsiKind::exp_power: {
            const double a = family.a(), be = family.beta();
            if (!(be < 1)) throw DomainError("condition H constant needs 0 < beta < 1");
            const double u0 = std::pow(2 * a * be, -1.0 / be);
            if (std::abs(u0 - 1) <= 1e-12) return {family, 4.0 * std::exp(std::pow(2.0, be) * a)};
            if (u0 > 1)
                return {family, 4.0 * std::exp(a * (std::pow(2.0, be) + 1) - 1.0 / (2 * be)) /
                                    std::pow(2 * a * be, 1.0 / (2 * be))};
            throw DomainError("condition H constant needs (2 a beta)^{-1/beta} >= 1");
        }
        case PsiKind::log_power: throw DomainError("condition H constant not available for log-power psi");
        case PsiKind::tabulated: throw DomainError("condition H constant not available for tabulated psi");
    }
    throw DomainError("unknown psi family");
}

}  // namespace certistoch
