// SPDX-License-Identifier: MIT
#include "certistoch/dvw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace certistoch {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void validate(const DvwSpace& s) {
    if (!(s.a > 0) || !(s.b > 0)) throw DomainError("D_{V,W} needs a > 0 and b > 0");
}

double TailFamily::operator()(double x) const {
    if (!(x > 0)) return 1.0;
    switch (kind) {
        case Kind::pareto: return 1 / (std::pow(x / scale, shape) + 1);
        case Kind::cauchy: return std::min(1.0, 2 * shape * scale / (kPi * x));
        case Kind::gaussian: {
            const double z = x / (shape * scale);
            return std::sqrt(2 / kPi) / z * std::exp(-0.5 * z * z);
        }
    }
    return 1.0;
}

double dvw_prenorm(const DvwSpace& s, const TailFn& tail) {
    validate(s);
    if (!tail) throw DomainError("dvw_prenorm: empty tail function");
    auto g = [&](double x) {
        const double P = tail(x);
        if (!std::isfinite(P) || P < 0) throw EvaluationError("tail function not a probability", x);
        if (P == 0) return 0.0;
        return std::exp(s.b * std::log(x) + std::log(P) / s.a);
    };

    constexpr int kPoints = 512;
    const double lo = std::log(1e-6), hi = std::log(1e6);
    const double step = (hi - lo) / (kPoints - 1);
    std::vector<double> xs(kPoints), gs(kPoints);
    int best = 0;
    for (int i = 0; i < kPoints; ++i) {
        xs[i] = std::exp(lo + i * step);
        gs[i] = g(xs[i]);
        if (gs[i] > gs[best]) best = i;
    }
    // Points per decade on this grid; compare the end of the grid with one decade earlier.
    const int decade = static_cast<int>(std::lround(std::log(10.0) / step));
    const double last = gs[kPoints - 1], before = gs[kPoints - 1 - decade];
    if (best >= kPoints - 1 - decade && last > before * (1 + 1e-3))
        throw DivergenceError("sup of x^b P^{1/a} still growing at x = 1e6: not in D_{V,W}",
                              std::log(last / before) / std::log(10.0));

    double sup = gs[best];
    const double a = xs[std::max(0, best - 1)], b = xs[std::min(kPoints - 1, best + 1)];
    if (b > a) {
        const auto r = minimize_1d([&](double x) { return -g(x); }, {a, b}, 1e-12,
                                   MinimizeOptions{32, GridKind::log, 1e6});
        sup = std::max(sup, -r.min);
    }
    return std::sqrt(sup);
}

double dvw_prenorm_closed(const DvwSpace& s, const TailFamily& f) {
    validate(s);
    const double a = s.a, b = s.b, ab = a * b, sc = f.scale;
    switch (f.kind) {
        case TailFamily::Kind::pareto: {
            const double c = f.shape;
            if (ab > c) throw DivergenceError("Pareto-type tail: b > c/a, the sup is infinite", b - c / a);
            if (ab == c) return std::sqrt(std::pow(sc, b));
            const double sq = std::pow(sc, b) * std::pow(ab / (c - ab), b / c) * std::pow((c - ab) / c, 1 / a);
            return std::sqrt(sq);
        }
        case TailFamily::Kind::cauchy:
            if (!(ab < 1)) throw DivergenceError("Cauchy tail needs ab < 1", ab);
            return std::pow(2 * f.shape * sc / kPi, b / 2);
        case TailFamily::Kind::gaussian: {
            if (!(ab > 1)) throw DomainError("Gaussian majorant has no interior maximum unless ab > 1");
            const double m = ab - 1;
            const double sq = std::pow(f.shape * sc, b) * std::pow(m, b / 2) *
                              std::pow(std::sqrt(2 / kPi) / std::sqrt(m) * std::exp(-m / 2), 1 / a);
            return std::sqrt(sq);
        }
    }
    throw DomainError("unknown tail family");
}

double dvw_kappa(const DvwSpace& s, std::int64_t n) {
    validate(s);
    if (n < 1) throw DomainError("n must be at least 1");
    return std::pow(static_cast<double>(n), 1 / (2 * s.a));
}

double series_power_sum(const std::function<double(std::int64_t)>& term, std::int64_t first,
                        std::int64_t max_terms) {
    if (max_terms < 4) throw DomainError("series_power_sum needs at least 4 terms");
    double sum = 0;
    const std::int64_t last = first + max_terms - 1;
    for (std::int64_t k = first; k <= last; ++k) {
        const double t = term(k);
        if (!std::isfinite(t) || t < 0) throw EvaluationError("series term not a finite non-negative number", static_cast<double>(k));
        sum += t;
    }
    const std::int64_t mid = first + max_terms / 2;
    const double t_mid = term(mid), t_last = term(last);
    if (t_last == 0) return sum;
    if (t_mid == 0) return sum;
    const double expo = std::log(t_mid / t_last) / std::log(static_cast<double>(last) / static_cast<double>(mid));
    if (expo <= 1) throw DivergenceError("series diverges: terms decay like k^-" + std::to_string(expo), expo);
    // integral tail estimate beyond `last`
    return sum + t_last * static_cast<double>(last) / (expo - 1);
}

namespace {

double tail_from_mu(const DvwSpace& s, double mu, double x) {
    if (!(x > 0)) throw DomainError("x must be positive");
    if (mu == 0) return 0.0;
    if (x < mu) throw ValidityError("series tail bound needs x >= sum of prenorms^q", mu);
    const double ab = s.a * s.b;
    return std::min(1.0, std::exp((ab + 1) * std::log(mu) - ab * std::log(x)));
}

}  // namespace

double series_tail_bound(const DvwSpace& s, const std::vector<double>& prenorms, double x) {
    validate(s);
    double mu = 0;
    for (double v : prenorms) {
        if (!(v >= 0)) throw DomainError("prenorms must be non-negative");
        mu += std::pow(v, s.q());
    }
    return tail_from_mu(s, mu, x);
}

double series_tail_bound(const DvwSpace& s, const std::function<double(std::int64_t)>& prenorm, double x) {
    validate(s);
    const double q = s.q();
    const double mu = series_power_sum([&](std::int64_t k) { return std::pow(prenorm(k), q); });
    return tail_from_mu(s, mu, x);
}

EntropyFn lipschitz_entropy(double T_len, double D, double zeta) {
    if (!(T_len > 0) || !(D > 0) || !(zeta > 0)) throw DomainError("Lipschitz entropy needs T, D, zeta > 0");
    return [=](double eps) { return T_len * std::pow(D / eps, 1 / zeta) / 2 + 1; };
}

double dvw_entropy_integral(const DvwSpace& s, const EntropyFn& N, double Delta0, double p) {
    validate(s);
    if (!(p > 0 && p < 1)) throw DomainError("p must lie in (0, 1)");
    if (!(Delta0 >= 0)) throw DomainError("Delta0 must be non-negative");
    if (Delta0 == 0) return 0.0;
    const double ab = s.a * s.b;
    const double e = (ab + 1) / (2 * s.a);
    const double top = Delta0 * p;
    // u = top e^{-s}; log of the transformed integrand
    auto log_h = [&](double t) {
        const double eps = std::exp(e * (std::log(top) - t));
        const double n = N(eps);
        if (!(n > 0) || !std::isfinite(n)) throw EvaluationError("entropy function not finite", eps);
        return -t + std::log(n) / (ab + 1);
    };
    const double slope = (log_h(40) - log_h(20)) / 20;
    if (slope > -1e-9)
        throw DivergenceError("entropy integral diverges at 0 (transformed integrand does not decay)", -slope);
    // Stop where eps would underflow; past that point the integrand decays at
    // the measured rate, so the remainder is h(t_max) / |slope|.
    const double t_max = std::max(40.0, std::log(top) + 690.0 / e);
    const double body = adaptive_quad([&](double t) { return std::exp(log_h(t)); }, {0.0, t_max}, 1e-12);
    return top * (body + std::exp(log_h(t_max)) / -slope);
}

double dvw_sup_tail(const DvwSpace& s, double inf_prenorm, const EntropyFn& N, double Delta0, double p, double x) {
    validate(s);
    if (!(x > 0)) throw DomainError("x must be positive");
    if (!(inf_prenorm >= 0)) throw DomainError("inf prenorm must be non-negative");
    const double I = dvw_entropy_integral(s, N, Delta0, p);
    const double inner = std::pow(inf_prenorm, s.q()) + I / (p * (1 - p));
    if (inner == 0) return 0.0;
    return std::min(1.0, std::exp(std::log(inner) - s.a * s.b * std::log(x)));
}

double dvw_model_lhs(const DvwSpace& s, const DvwModel& m, double accuracy, double theta, double tail_sum) {
    validate(s);
    const double ab = s.a * s.b;
    if (!(m.zeta > 1 / ab)) throw ValidityError("model check needs zeta > 1/(ab)", 1 / ab);
    if (!(theta > 0 && theta < 1)) throw DomainError("theta must lie in (0, 1)");
    if (!(accuracy > 0)) throw DomainError("accuracy must be positive");
    const double p = std::pow(theta, s.q());
    const double abz = ab * m.zeta;
    double inner = std::pow(m.inf_prenorm, s.q()) + m.Delta_N / (1 - p);
    if (tail_sum > 0 && m.Delta_N > 0)
        inner += std::pow(m.T_len, 1 / (ab + 1)) * std::pow(tail_sum, 1 / abz) /
                 (std::pow(2.0, ab / (ab + 1)) * p * (1 - p)) * abz * std::pow(m.Delta_N * p, 1 - 1 / abz) /
                 (abz - 1);
    return inner / std::pow(accuracy, ab);
}

ModelCheck dvw_model_check(const DvwSpace& s, const DvwModel& m, double accuracy, double nu,
                           std::optional<double> theta) {
    validate(s);
    const double ab = s.a * s.b;
    if (!(m.zeta > 1 / ab)) throw ValidityError("model check needs zeta > 1/(ab)", 1 / ab);
    if (!(nu > 0 && nu < 1)) throw DomainError("nu must lie in (0, 1)");
    if (!(m.T_len > 0) || !(m.Delta_N >= 0) || !(m.inf_prenorm >= 0)) throw DomainError("bad model parameters");
    double tail = 0;
    if (m.prenorm && m.holder_C) {
        const double q = s.q(), w = ab / (ab + 1);
        tail = series_power_sum(
            [&](std::int64_t k) { return std::pow(m.holder_C(k), w) * std::pow(m.prenorm(k), q); }, m.N + 1);
    }
    double th = 0.5;
    if (theta) {
        th = *theta;
    } else {
        MinimizeOptions opt;
        opt.grid = GridKind::linear;
        th = minimize_1d([&](double t) { return dvw_model_lhs(s, m, accuracy, t, tail); }, {1e-6, 1 - 1e-6},
                         1e-10, opt)
                 .argmin;
    }
    const double lhs = dvw_model_lhs(s, m, accuracy, th, tail);
    return {lhs <= nu, lhs, th, tail};
}

}  // namespace certistoch
