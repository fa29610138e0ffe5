// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "certistoch/numeric.hpp"
#include "certistoch/subgauss.hpp"

using namespace certistoch;

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(sum_k tau_k^2) / tau over 5000 terms
double brute_factor(Basis b, double w, double alpha) {
    double s = 0;
    for (std::int64_t k = 0; k < 5000; ++k) {
        const double t = basis_term_weight(b, k, 1.0, w, alpha);
        s += t * t;
    }
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("phi functions") {
    const auto pp = PhiFunction::pure_power(1.5);
    CHECK(pp(2) == doctest::Approx(std::pow(2, 1.5) / 1.5));
    CHECK(pp.conjugate_exponent() == doctest::Approx(3));
    const auto sp = PhiFunction::spliced(3);
    CHECK(sp(0.5) == doctest::Approx(0.25 / 3));
    CHECK(sp(2) == doctest::Approx(8.0 / 3));
    CHECK_THROWS_AS(PhiFunction::pure_power(2.5), DomainError);
    CHECK_THROWS_AS(PhiFunction::spliced(2), DomainError);
}

TEST_CASE("tau_combine") {
    CHECK(tau_combine(2, {3, 4}) == doctest::Approx(5));
    CHECK(tau_combine(2, {0.7}) == doctest::Approx(0.7));
    CHECK(tau_combine(1.5, {1, 1, 1}) == doctest::Approx(std::pow(3.0, 2.0 / 3)).epsilon(1e-15));
    CHECK(tau_combine(1.5, {1, 2, 3}) ==
          doctest::Approx(std::pow(1 + std::pow(2, 1.5) + std::pow(3, 1.5), 1 / 1.5)).epsilon(1e-15));
    CHECK(tau_combine(1, {1, 2.5}) < tau_combine(1, {1, 2.6}));
    CHECK_THROWS_AS(tau_combine(3, {1}), DomainError);
}

TEST_CASE("lp_criteria") {
    const auto phi2 = PhiFunction::pure_power(2);
    CHECK(lp_criteria({0, 2}, phi2, 1e-6, 1e-6).pass);

    const auto r = lp_criteria({0.1, 2}, phi2, 1, 2 * std::exp(-2.0));
    CHECK(r.reliability_limit == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.shape_limit == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.pass);
    CHECK_FALSE(lp_criteria({0.3, 2}, phi2, 1, 2 * std::exp(-2.0)).pass);

    const auto s = lp_criteria({0, 2}, PhiFunction::spliced(3), 0.7, 0.1);
    CHECK(s.shape_limit == doctest::Approx(0.7 / std::pow(2.0, 4.0 / 3)).epsilon(1e-14));

    // both limits shrink with delta and with alpha
    const auto a = lp_criteria({0, 2}, phi2, 0.5, 0.2);
    const auto b = lp_criteria({0, 2}, phi2, 0.4, 0.2);
    const auto c = lp_criteria({0, 2}, phi2, 0.5, 0.1);
    CHECK(a.reliability_limit > 0);
    CHECK(a.shape_limit > 0);
    CHECK(b.reliability_limit < a.reliability_limit);
    CHECK(b.shape_limit < a.shape_limit);
    CHECK(c.reliability_limit < a.reliability_limit);
}

TEST_CASE("ct bound") {
    CHECK(ct_threshold(1, 1, 2, 1, 2) == doctest::Approx(2).epsilon(1e-14));

    const double thr = ct_threshold(1, 1, 2, 0.1, 1);
    double prev = 2;
    bool below_one = false;
    for (double x = thr * 1.01; x < thr + 60; x += 0.25) {
        const double v = ct_tail_bound(1, 1, 2, 0.1, 1, x);
        CHECK(v <= prev + 1e-15);
        prev = v;
        below_one = below_one || v < 1;
    }
    CHECK(below_one);
    // gamma_N = 1, beta = C (T/2)^ae = 1: threshold 2, and the polynomial factor wins just above it
    CHECK(ct_tail_bound(1, 1, 2, 1, 2, 2.0002) == 1.0);

    try {
        ct_tail_bound(1, 1, 2, 0.1, 1, thr * 0.9);
        FAIL("expected ValidityError");
    } catch (const ValidityError& e) {
        CHECK(e.threshold == doctest::Approx(thr));
    }
}

TEST_CASE("basis names round trip") {
    for (auto b : {Basis::cosine, Basis::hermite, Basis::hermite_geometric, Basis::chebyshev_t, Basis::chebyshev_u,
                   Basis::legendre, Basis::laguerre, Basis::gegenbauer})
        CHECK(basis_from_string(to_string(b)) == b);
    CHECK_THROWS_AS(basis_from_string("fourier"), DomainError);
}

TEST_CASE("tail factors") {
    for (std::int64_t N : {1, 10, 100}) {
        double brute = 0;
        for (std::int64_t k = N + 1; k <= 20000000; ++k) brute += 1.0 / ((double(k) + 1) * (double(k) + 2));
        // the truncated tail beyond 2e7 is 1/(2e7 + 2)
        CHECK(std::abs(brute + 1.0 / 20000002 - hermite_tail_factor(N)) <= 1e-12);
    }
    double brute = 0;
    for (std::int64_t k = 101; k <= 10000000; ++k) brute += 4 / (kPi * kPi * double(k) * double(k));
    CHECK(brute <= cosine_tail_factor(100));
    CHECK(cosine_tail_factor(100) <= 4 / (kPi * kPi * 100));
    CHECK(cosine_tail_factor(100) - brute == doctest::Approx(4 / (kPi * kPi) * 1e-7).epsilon(1e-5));
}

TEST_CASE("generating-function closed factors") {
    // tests/oracles/basis_factors.py, alpha = 0.7
    struct Row {
        Basis b;
        double v[3];
    };
    const Row rows[] = {
        {Basis::hermite_geometric, {1.0050378152592121, 1.1547005383792515, 2.2941573387056177}},
        {Basis::chebyshev_t, {1.1264931815479746, 1.0775752879574916, 0.91350008333892744}},
        {Basis::chebyshev_u, {1.1397769364601137, 1.5045055561273501, 5.9388377215553293}},
        {Basis::legendre, {1.4165828442493265, 1.4823038073675111, 1.8087561653635045}},
        {Basis::laguerre, {0.96140351901330344, 1.21728858354105, 3.9107050486709197}},
        {Basis::gegenbauer, {1.1291068531738302, 1.22221936375303, 1.7704745144242443}},
    };
    const double ws[] = {0.1, 0.5, 0.9};
    for (const auto& r : rows)
        for (int i = 0; i < 3; ++i) {
            INFO(to_string(r.b), " w=", ws[i]);
            CHECK(basis_closed_factor(r.b, ws[i], 0.7) == doctest::Approx(r.v[i]).epsilon(1e-12));
        }
    CHECK(basis_closed_factor(Basis::laguerre, 0, 0.7) == doctest::Approx(std::sqrt(std::tgamma(1.7))));
    CHECK_THROWS_AS(basis_closed_factor(Basis::laguerre, 0.5, -1), DomainError);
    CHECK_THROWS_AS(basis_closed_factor(Basis::cosine, 0.5), DomainError);
    CHECK_THROWS_AS(basis_closed_factor(Basis::legendre, 1.0), DomainError);
}

TEST_CASE("term weights reproduce the closed factors") {
    for (auto b : {Basis::hermite_geometric, Basis::legendre, Basis::laguerre, Basis::gegenbauer})
        for (double w : {0.1, 0.5, 0.9})
            for (double al : {0.3, 0.7, 1.5}) {
                INFO(to_string(b), " w=", w, " alpha=", al);
                CHECK(brute_factor(b, w, al) == doctest::Approx(basis_closed_factor(b, w, al)).epsilon(1e-8));
            }
}

TEST_CASE("basis_remainder") {
    BasisRemainderInput in;
    in.basis = Basis::hermite;
    in.tau = 2;
    in.N = 10;
    const double expected = 2 * kHermiteK / std::sqrt(12.0);
    CHECK(basis_remainder_at(in, 0.3) == doctest::Approx(expected).epsilon(1e-14));
    auto rep = basis_remainder(in);
    CHECK(rep.sup_value == doctest::Approx(expected));
    CHECK(rep.c_N == doctest::Approx(expected * expected).epsilon(1e-9));

    in.basis = Basis::legendre;
    in.w = 0.5;
    in.tau = 1;
    in.partial = [](std::int64_t, double t) { return 0.2 * t; };
    rep = basis_remainder(in);
    CHECK(rep.argsup_t == doctest::Approx(0).epsilon(1e-6));
    CHECK(rep.sup_value == doctest::Approx(basis_closed_factor(Basis::legendre, 0.5)).epsilon(1e-12));
    CHECK(rep.breakdown.size() == 4);

    in.partial = [](std::int64_t, double) { return 10.0; };
    CHECK_THROWS_AS(basis_remainder(in), ValidityError);
}
