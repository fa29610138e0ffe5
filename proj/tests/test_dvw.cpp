// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "certistoch/dvw.hpp"

using namespace certistoch;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("space basics") {
    CHECK(DvwSpace{2, 0.4}.q() == doctest::Approx(4 / 1.8));
    CHECK_THROWS_AS(validate(DvwSpace{0, 1}), DomainError);
}

TEST_CASE("Pareto-type prenorm") {
    const DvwSpace s{2, 0.4};
    const auto f = TailFamily::pareto(1);
    const double closed = dvw_prenorm_closed(s, f);
    CHECK(closed == doctest::Approx(0.8824081226690667669).epsilon(1e-14));
    CHECK(dvw_prenorm(s, f) == doctest::Approx(closed).epsilon(1e-6));

    // argmax x = (ab/(c-ab))^{1/c}
    const double xs = 0.8 / 0.2;
    const double at = std::sqrt(std::pow(xs, 0.4) * std::pow(f(xs), 0.5));
    CHECK(at == doctest::Approx(closed).epsilon(1e-14));

    const DvwSpace wide{2, 0.6};
    CHECK_THROWS_AS(dvw_prenorm_closed(wide, f), DivergenceError);
    CHECK_THROWS_AS(dvw_prenorm(wide, f), DivergenceError);
}

TEST_CASE("Cauchy prenorm") {
    const DvwSpace s{2, 0.3};
    for (double scale : {1.0, 0.5, 3.0}) {
        const auto f = TailFamily::cauchy(1, scale);
        const double closed = dvw_prenorm_closed(s, f);
        CHECK(closed == doctest::Approx(std::pow(2 * scale / kPi, 0.15)).epsilon(1e-14));
        CHECK(dvw_prenorm(s, f) == doctest::Approx(closed).epsilon(1e-6));
    }
    CHECK(dvw_prenorm_closed(s, TailFamily::cauchy(1)) == doctest::Approx(0.93450583717913350889).epsilon(1e-14));
    CHECK_THROWS_AS(dvw_prenorm_closed(DvwSpace{2, 0.6}, TailFamily::cauchy(1)), DivergenceError);
}

TEST_CASE("Gaussian majorant prenorm") {
    const DvwSpace s{2, 1};
    const auto f = TailFamily::gaussian(1);
    const double closed = dvw_prenorm_closed(s, f);
    CHECK(closed == doctest::Approx(0.83406175036340460119).epsilon(1e-14));
    CHECK(dvw_prenorm(s, f) == doctest::Approx(closed).epsilon(1e-6));
    CHECK_THROWS_AS(dvw_prenorm_closed(DvwSpace{1, 0.5}, f), DomainError);
}

TEST_CASE("prenorm scaling") {
    const DvwSpace s{2, 0.4};
    const double base = dvw_prenorm(s, TailFamily::pareto(1));
    for (double lam : {0.1, 0.5, 0.9}) {
        const double v = dvw_prenorm(s, TailFamily::pareto(1, lam));
        CHECK(v <= std::pow(lam, 0.2) * base * (1 + 1e-9));
    }
}

TEST_CASE("dvw_kappa") {
    const DvwSpace s{0.5, 1};
    CHECK(dvw_kappa(s, 1) == 1);
    CHECK(dvw_kappa(s, 16) == doctest::Approx(16));
    // sup over t < 1/n of (W^{-1}(tn)/W^{-1}(t))^{1/2} with W^{-1}(y) = y^{1/a}
    const DvwSpace s2{1.7, 1};
    const std::int64_t n = 9;
    double sup = 0;
    for (int i = 1; i < 1000; ++i) {
        const double t = i / 1000.0 / n;
        sup = std::max(sup, std::sqrt(std::pow(t * n, 1 / s2.a) / std::pow(t, 1 / s2.a)));
    }
    CHECK(std::abs(sup - dvw_kappa(s2, n)) <= 1e-10 * sup);
}

TEST_CASE("series tail bound") {
    const DvwSpace s{2, 0.5};
    CHECK(series_tail_bound(s, {0.0, 0.0}, 1) == 0);

    const double pre = 0.3, x = 2;
    CHECK(series_tail_bound(s, {pre}, x) == doctest::Approx(std::pow(pre, 2 * s.a) / std::pow(x, s.a * s.b)));

    // ||xi_k|| = 2^{-k}: mu is a geometric sum
    const double r = std::pow(2.0, -s.q());
    const double mu = r / (1 - r);
    const double closed = std::min(1.0, std::pow(mu, s.a * s.b + 1) / std::pow(3.0, s.a * s.b));
    std::vector<double> pn;
    for (int k = 1; k <= 200; ++k) pn.push_back(std::pow(2.0, -k));
    CHECK(series_tail_bound(s, pn, 3) == doctest::Approx(closed).epsilon(1e-12));

    CHECK_THROWS_AS(series_tail_bound(s, {5.0}, 1), ValidityError);
    // q = 2 here, so prenorms k^{-0.4} give terms k^{-0.8}
    CHECK_THROWS_AS(series_tail_bound(s, [](std::int64_t k) { return std::pow(double(k), -0.4); }, 10),
                    DivergenceError);
}

TEST_CASE("series_power_sum") {
    const double v = series_power_sum([](std::int64_t k) { return 1.0 / (double(k) * double(k)); });
    CHECK(v == doctest::Approx(kPi * kPi / 6).epsilon(1e-10));
    CHECK_THROWS_AS(series_power_sum([](std::int64_t k) { return 1.0 / std::sqrt(double(k)); }), DivergenceError);
}

TEST_CASE("entropy integral and sup tail") {
    const DvwSpace s{1, 1};
    // N(eps) = eps^{-1/zeta}: integrand u^{-1/(2 a zeta)}
    const double zeta = 2, D0 = 1.5, p = 0.4;
    const double top = D0 * p, r = 1 / (2 * s.a * zeta);
    const double closed = std::pow(top, 1 - r) / (1 - r);
    CHECK(std::abs(dvw_entropy_integral(s, [&](double e) { return std::pow(e, -1 / zeta); }, D0, p) - closed) <= 1e-8);

    const auto lip = lipschitz_entropy(1, 1, 2);
    CHECK(std::isfinite(dvw_entropy_integral(s, lip, 1, 0.5)));
    CHECK_THROWS_AS(dvw_entropy_integral(s, lipschitz_entropy(1, 1, 0.4), 1, 0.5), DivergenceError);

    CHECK(dvw_sup_tail(s, 0, lip, 0, 0.5, 2) == 0);
    // no inf part: x^{-ab} I / (p (1 - p)), and I shrinks like (Delta0 p)^{3/4} here
    const double I = dvw_entropy_integral(s, lip, 1e-6, 0.5);
    CHECK(dvw_sup_tail(s, 0, lip, 1e-6, 0.5, 2) == doctest::Approx(I / 0.25 / 2).epsilon(1e-14));
    CHECK(dvw_sup_tail(s, 0, lip, 1e-8, 0.5, 2) < dvw_sup_tail(s, 0, lip, 1e-6, 0.5, 2) / 10);
    CHECK(dvw_sup_tail(s, 0.5, lip, 1, 0.5, 100) < dvw_sup_tail(s, 0.5, lip, 1, 0.5, 10));
}

TEST_CASE("model check") {
    const DvwSpace s{2, 1};
    DvwModel m;
    m.N = 10;
    m.zeta = 1;
    m.T_len = 1;

    SUBCASE("exhausted series") {
        m.prenorm = [](std::int64_t) { return 0.0; };
        m.holder_C = [](std::int64_t) { return 1.0; };
        const auto r = dvw_model_check(s, m, 1, 1e-9);
        CHECK(r.lhs == 0);
        CHECK(r.pass);
    }
    SUBCASE("lhs increases with Delta_N") {
        m.prenorm = [](std::int64_t k) { return std::pow(double(k), -2.0); };
        m.holder_C = [](std::int64_t) { return 1.0; };
        const double tail = 0.01;
        double prev = -1;
        for (double d : {0.01, 0.1, 0.5, 1.0}) {
            m.Delta_N = d;
            const double v = dvw_model_lhs(s, m, 1, 0.5, tail);
            CHECK(v > prev);
            prev = v;
        }
        m.Delta_N = 0.1;
        const auto opt = dvw_model_check(s, m, 1, 0.5);
        for (double th : {0.1, 0.3, 0.5, 0.7, 0.9}) CHECK(opt.lhs <= dvw_model_check(s, m, 1, 0.5, th).lhs + 1e-12);
    }
    SUBCASE("Brownian-type coefficients") {
        // term exponent (1/2 - alpha) ab/(ab+1) + e q decides convergence
        const double al = 0.25;
        m.holder_C = [al](std::int64_t k) { return std::pow(2 / (kPi * double(k)), 0.5 - al); };
        m.Delta_N = 0.1;
        m.prenorm = [](std::int64_t k) { return std::pow(double(k), -1.0); };  // 0.5/3 + 4/3 > 1
        CHECK(std::isfinite(dvw_model_check(s, m, 1, 0.5).tail_sum));
        m.prenorm = [](std::int64_t k) { return std::pow(double(k), -0.5); };  // 0.5/3 + 2/3 < 1
        CHECK_THROWS_AS(dvw_model_check(s, m, 1, 0.5), DivergenceError);
    }
    SUBCASE("zeta must exceed 1/(ab)") {
        m.zeta = 0.4;
        CHECK_THROWS_AS(dvw_model_check(s, m, 1, 0.5), ValidityError);
    }
}
