// SPDX-License-Identifier: MIT
#include "certistoch/subgauss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/trigamma.hpp>

namespace certistoch {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

PhiFunction PhiFunction::pure_power(double gamma) {
    if (!(gamma > 1 && gamma <= 2)) throw DomainError("pure power phi needs 1 < gamma <= 2");
    return {Kind::pure_power, gamma};
}

PhiFunction PhiFunction::spliced(double gamma) {
    if (!(gamma > 2)) throw DomainError("spliced phi needs gamma > 2");
    return {Kind::spliced, gamma};
}

double PhiFunction::operator()(double t) const {
    t = std::abs(t);
    if (kind == Kind::spliced && t < 1) return t * t / gamma;
    return std::pow(t, gamma) / gamma;
}

double tau_combine(double s, const std::vector<double>& taus) {
    if (!(s > 0 && s <= 2)) throw DomainError("tau_combine needs s in (0, 2]");
    double acc = 0;
    for (double t : taus) {
        if (!(t >= 0)) throw DomainError("tau values must be non-negative");
        acc += std::pow(t, s);
    }
    return std::pow(acc, 1 / s);
}

LpCheck lp_criteria(const TauBudget& budget, const PhiFunction& phi, double delta, double alpha_rel) {
    if (!(budget.c_N >= 0)) throw DomainError("c_N must be non-negative");
    if (!(budget.p >= 1)) throw DomainError("p must be at least 1");
    if (!(delta > 0)) throw DomainError("delta must be positive");
    if (!(alpha_rel > 0 && alpha_rel < 1)) throw DomainError("alpha must lie in (0, 1)");
    if (!(phi.gamma > 1)) throw DomainError("phi needs gamma > 1");
    const double be = phi.conjugate_exponent();
    const double p = budget.p;
    LpCheck r{};
    r.reliability_limit = delta / std::pow(be * std::log(2 / alpha_rel), p / be);
    r.shape_limit = delta / std::pow(p, p * (1 - 1 / phi.gamma));
    r.pass = budget.c_N <= r.reliability_limit && budget.c_N < r.shape_limit;
    return r;
}

namespace {

void check_ct(double C, double ae, double zeta, double gamma_N, double T_len) {
    if (!(C > 0)) throw DomainError("C must be positive");
    if (!(ae > 0 && ae <= 1)) throw DomainError("ae must lie in (0, 1]");
    if (!(zeta >= 2)) throw DomainError("zeta must be at least 2");
    if (!(gamma_N > 0)) throw DomainError("gamma_N must be positive");
    if (!(T_len > 0)) throw DomainError("T must be positive");
}

}  // namespace

double ct_threshold(double C, double ae, double zeta, double gamma_N, double T_len) {
    check_ct(C, ae, zeta, gamma_N, T_len);
    const double beta_ct = C * std::pow(T_len / 2, ae);
    const double v = std::min(beta_ct, gamma_N);
    const double vz = std::pow(v, zeta - 1);
    const double g = gamma_N;
    const double disc = g * g * (vz + 1) * (vz + 1) + 4 * vz * (std::pow(beta_ct, zeta) - g * g);
    return (g * (vz + 1) + std::sqrt(std::max(0.0, disc))) / (2 * vz);
}

double ct_tail_bound(double C, double ae, double zeta, double gamma_N, double T_len, double x) {
    const double thr = ct_threshold(C, ae, zeta, gamma_N, T_len);
    if (!(x > thr)) throw ValidityError("bound not valid at this x (threshold " + std::to_string(thr) + ")", thr);
    const double g = gamma_N;
    const double beta_ct = C * std::pow(T_len / 2, ae);
    const double num = std::pow(x - g, zeta / (zeta - 1)) * (zeta - 1) * std::pow(x, 1 / (zeta - 1));
    const double den = zeta * std::pow(std::pow(g, zeta) * (x - g) + std::pow(beta_ct, zeta) * g, 1 / (zeta - 1));
    const double log_z = -num / den + std::log(2.0) + std::log(std::numbers::e * x) / ae;
    return std::min(1.0, 2 * std::exp(log_z));
}

Basis basis_from_string(const std::string& s) {
    if (s == "cosine") return Basis::cosine;
    if (s == "hermite") return Basis::hermite;
    if (s == "hermite-geometric") return Basis::hermite_geometric;
    if (s == "chebyshev-t") return Basis::chebyshev_t;
    if (s == "chebyshev-u") return Basis::chebyshev_u;
    if (s == "legendre") return Basis::legendre;
    if (s == "laguerre") return Basis::laguerre;
    if (s == "gegenbauer") return Basis::gegenbauer;
    throw DomainError("unknown basis '" + s + "'");
}

std::string to_string(Basis b) {
    switch (b) {
        case Basis::cosine: return "cosine";
        case Basis::hermite: return "hermite";
        case Basis::hermite_geometric: return "hermite-geometric";
        case Basis::chebyshev_t: return "chebyshev-t";
        case Basis::chebyshev_u: return "chebyshev-u";
        case Basis::legendre: return "legendre";
        case Basis::laguerre: return "laguerre";
        case Basis::gegenbauer: return "gegenbauer";
    }
    return "?";
}

namespace {

void check_w(double w) {
    if (!(w > 0 && w < 1)) throw DomainError("w must lie in (0, 1)");
}

void check_alpha(Basis b, double alpha) {
    if (b == Basis::laguerre && !(alpha > -1)) throw DomainError("Laguerre needs alpha > -1");
    if (b == Basis::gegenbauer && !(alpha > 0)) throw DomainError("Gegenbauer needs alpha > 0");
}

}  // namespace

double basis_closed_factor(Basis b, double w, double alpha) {
    check_alpha(b, alpha);
    if (b == Basis::laguerre && w == 0) return std::sqrt(special::gamma(alpha + 1));
    check_w(w);
    const double L = std::log((1 + w) / (1 - w));
    switch (b) {
        case Basis::hermite_geometric: return 1 / std::sqrt(1 - w * w);
        case Basis::chebyshev_t:
            return std::sqrt(2 / kPi) * std::sqrt(1 + (1 - w * w) / (2 * w) * L);
        case Basis::chebyshev_u: return 2 / (std::sqrt(kPi) * (1 - w * w));
        case Basis::legendre: return std::sqrt(L / w);
        case Basis::laguerre:
            return std::sqrt(std::exp(special::lgamma(alpha + 1) - (alpha + 1) * std::log1p(-w * w)));
        case Basis::gegenbauer: {
            const double z = 4 * w * w / ((1 + w * w) * (1 + w * w));
            const double f = special::hyp2f1_regularized(alpha, alpha + 0.5, alpha + 1, z);
            return special::gamma(alpha) / std::pow(1 + w * w, alpha) *
                   std::sqrt(special::gamma(alpha + 0.5) / (std::sqrt(kPi) * std::pow(2.0, 1 - 2 * alpha))) *
                   std::sqrt(f);
        }
        case Basis::cosine:
        case Basis::hermite: break;
    }
    throw DomainError("basis " + to_string(b) + " has no generating-function factor");
}

double basis_term_weight(Basis b, std::int64_t k, double tau, double w, double alpha) {
    if (k < 0) throw DomainError("term index must be non-negative");
    check_alpha(b, alpha);
    const double kd = static_cast<double>(k);
    const double base = tau * std::pow(w, kd);
    switch (b) {
        case Basis::legendre: return std::sqrt(2 / (2 * kd + 1)) * base;
        case Basis::laguerre:
            return std::exp(0.5 * (special::lgamma(kd + alpha + 1) - special::lgamma(kd + 1))) * base;
        case Basis::gegenbauer:
            return std::exp(0.5 * (special::lgamma(kd + 2 * alpha) - special::lgamma(kd + 1) - std::log(kd + alpha))) *
                   base;
        default: return base;
    }
}

double hermite_tail_factor(std::int64_t N) {
    if (N < 0) throw DomainError("N must be non-negative");
    return 1.0 / (static_cast<double>(N) + 2);
}

double cosine_tail_factor(std::int64_t N) {
    if (N < 0) throw DomainError("N must be non-negative");
    return 4 / (kPi * kPi) * boost::math::trigamma(static_cast<double>(N) + 1);
}

namespace {

struct Pieces {
    double value;
    std::vector<BasisTerm> terms;
};

Pieces remainder_pieces(const BasisRemainderInput& in, double t) {
    const double f = in.f_factor ? in.f_factor(t) : 1.0;
    auto partial = [&](std::int64_t k) { return in.partial ? in.partial(k, t) : 0.0; };
    const double tau2 = in.tau * in.tau;

    if (in.basis == Basis::cosine || in.basis == Basis::hermite) {
        double corr = 0;
        for (std::int64_t k = 1; k <= in.N; ++k) {
            const double d = partial(k);
            corr += tau2 * d * d;
        }
        const double tail = in.basis == Basis::cosine ? cosine_tail_factor(in.N)
                                                      : kHermiteK * kHermiteK * hermite_tail_factor(in.N);
        const double head = f * f * tau2 * tail;
        return {std::sqrt(head + corr),
                {{"tail_factor", tail}, {"f_factor", f}, {"tail_term", head}, {"correction_term", corr}}};
    }

    check_w(in.w);
    const double whole = in.tau * basis_closed_factor(in.basis, in.w, in.alpha) * f;
    double model = 0;
    for (std::int64_t k = 0; k <= in.N; ++k) model += basis_term_weight(in.basis, k, in.tau, in.w, in.alpha) * partial(k);
    const double r = whole - model;
    if (r < 0)
        throw ValidityError("model partial sum exceeds the whole-process bound at t=" + std::to_string(t), r);
    return {r, {{"closed_factor", basis_closed_factor(in.basis, in.w, in.alpha)},
                {"f_factor", f},
                {"whole_process", whole},
                {"model_sum", model}}};
}

void check_input(const BasisRemainderInput& in) {
    if (!(in.tau > 0)) throw DomainError("tau must be positive");
    if (in.N < 0) throw DomainError("N must be non-negative");
    if (!(in.p >= 1)) throw DomainError("p must be at least 1");
    if (!(in.T.lo < in.T.hi)) throw DomainError("T needs lo < hi");
    check_alpha(in.basis, in.alpha);
}

}  // namespace

double basis_remainder_at(const BasisRemainderInput& in, double t) {
    check_input(in);
    return remainder_pieces(in, t).value;
}

BasisRemainderReport basis_remainder(const BasisRemainderInput& in) {
    check_input(in);
    constexpr int kGrid = 1024;
    const double h = (in.T.hi - in.T.lo) / (kGrid - 1);
    std::vector<double> vals(kGrid);
    int best = 0;
    for (int i = 0; i < kGrid; ++i) {
        vals[i] = remainder_pieces(in, in.T.lo + i * h).value;
        if (vals[i] > vals[best]) best = i;
    }
    // One refinement pass around the best grid point.
    const double lo = in.T.lo + std::max(0, best - 1) * h;
    const double hi = in.T.lo + std::min(kGrid - 1, best + 1) * h;
    double arg = in.T.lo + best * h, sup = vals[best];
    if (hi > lo) {
        const auto r = minimize_1d([&](double t) { return -remainder_pieces(in, t).value; }, {lo, hi}, 1e-10,
                                   MinimizeOptions{16, GridKind::linear, 1e6});
        if (-r.min > sup) {
            sup = -r.min;
            arg = r.argmin;
        }
    }
    const double cN = adaptive_quad([&](double t) { return std::pow(remainder_pieces(in, t).value, in.p); }, in.T,
                                    1e-10, 12);
    return {sup, arg, cN, remainder_pieces(in, arg).terms};
}

}  // namespace certistoch
