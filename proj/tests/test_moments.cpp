#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qderange/moments.hpp"

using namespace qderange;

TEST_CASE("moments from a polynomial") {
    CHECK(mean_from_poly(QPoly::monomial(Integer(1), 1)) == Rational(1));
    CHECK(variance_from_poly(QPoly::monomial(Integer(1), 1)) == Rational(0));
    CHECK(mean_from_poly(d_poly_A(4)) == Rational(10, 3));
    CHECK(variance_from_poly(d_poly_A(4)) == Rational(20, 9));
    CHECK_THROWS_AS(mean_from_poly(QPoly::zero()), std::domain_error);
    CHECK_THROWS_AS(variance_from_poly(QPoly::zero()), std::domain_error);
}

TEST_CASE("type A closed forms") {
    CHECK(expectation_A(2) == Rational(1));
    CHECK(expectation_A(3) == Rational(3, 2));
    CHECK(expectation_A(4) == Rational(10, 3));
    CHECK(variance_A(2) == Rational(0));
    CHECK(variance_A(3) == Rational(1, 4));
    CHECK(variance_A(4) == Rational(20, 9));
    CHECK_THROWS_AS(expectation_A(1), std::domain_error);
    CHECK_THROWS_AS(variance_A(1), std::domain_error);

    SECTION("equal to polynomial-derived moments, 2 <= n <= 30") {
        for (unsigned long n = 2; n <= 30; ++n) {
            CHECK(expectation_A(n) == mean_from_poly(d_poly_A(n)));
            CHECK(variance_A(n) == variance_from_poly(d_poly_A(n)));
            CHECK(expectation_A_binomial_form(n) == expectation_A(n));
        }
    }
}

TEST_CASE("type B closed forms") {
    CHECK(expectation_B(1) == Rational(1));
    CHECK(variance_B(1) == Rational(0));
    CHECK(expectation_B(2) == Rational(12, 5));
    CHECK(variance_B(2) == Rational(26, 25));
    CHECK_THROWS_AS(expectation_B(0), std::domain_error);

    SECTION("equal to polynomial-derived moments, 1 <= n <= 18") {
        for (unsigned long n = 1; n <= 18; ++n) {
            CHECK(expectation_B(n) == mean_from_poly(d_poly_B(n)));
            CHECK(variance_B(n) == variance_from_poly(d_poly_B(n)));
        }
    }
}

TEST_CASE("asymptotic estimates") {
    CHECK(asymptotic_moments(Family::A, 10).first == Rational(91, 4));
    CHECK(asymptotic_moments(Family::B, 2).first == Rational(19, 8));
    CHECK(expectation_B(2) == Rational(12, 5));

    SECTION("the exact-minus-asymptotic mean gap is (-1)^n (n-1)/(4 D_n)") {
        for (unsigned long n = 2; n <= 20; ++n) {
            const Rational gap = expectation_A(n) - asymptotic_moments(Family::A, n).first;
            const Rational expected(Integer(n % 2 == 0 ? 1 : -1) * Integer(static_cast<long>(n) - 1),
                                    Integer(4) * derangement_count_A(n));
            CHECK(gap == expected);
        }
    }

    SECTION("mean gap at n = 10 is below 2e-6") {
        const Rational gap = (expectation_A(10) - Rational(91, 4)).abs();
        CHECK(gap == Rational(9, 4 * 1334961));
        CHECK(gap < Rational(2, 1000000));
    }

    SECTION("gaps shrink to zero along 6, 10, 20, 40") {
        const unsigned long grid[] = {6, 10, 20, 40};
        for (Family fam : {Family::A, Family::B}) {
            Rational prev_mean_gap, prev_var_gap;
            bool first = true;
            for (unsigned long n : grid) {
                const auto [ea, va] = asymptotic_moments(fam, n);
                const Rational mean_gap =
                    ((fam == Family::A ? expectation_A(n) : expectation_B(n)) - ea).abs();
                const Rational var_gap =
                    ((fam == Family::A ? variance_A(n) : variance_B(n)) - va).abs();
                if (!first) {
                    CHECK(mean_gap < prev_mean_gap);
                    CHECK(var_gap < prev_var_gap);
                }
                prev_mean_gap = mean_gap;
                prev_var_gap = var_gap;
                first = false;
            }
            // and the n = 40 gaps are numerically negligible
            CHECK(Real::from_rational(prev_mean_gap, 60).to_double() < 1e-12);
            CHECK(Real::from_rational(prev_var_gap, 60).to_double() < 1e-12);
        }
    }
}

TEST_CASE("summarize") {
    const MomentSummary a4 = summarize(Family::A, 4, 60);
    CHECK(a4.mean == Rational(10, 3));
    CHECK(a4.variance == Rational(20, 9));
    CHECK_FALSE(a4.degenerate);
    CHECK(std::abs(a4.sigma.to_double() - 1.4907119849998598) < 1e-15);
    // sigma^2 reproduces the variance at working precision
    const Real gap = (a4.sigma * a4.sigma - Real::from_rational(a4.variance, 60)).abs();
    CHECK(gap < Real::from_long(10, 60).pow(-55));

    CHECK(summarize(Family::A, 2, 60).degenerate);
    CHECK(summarize(Family::B, 1, 60).degenerate);
}

TEST_CASE("proof-step identities") {
    for (unsigned long n = 2; n <= 30; ++n) CHECK(d_prime_identity_holds(n));
    for (unsigned long n = 3; n <= 30; ++n) CHECK(d_double_prime_identity_holds(n));
    CHECK_THROWS_AS(d_prime_identity_holds(1), std::domain_error);

    SECTION("c_2 expansion, 1 <= k < n <= 6") {
        for (unsigned long n = 2; n <= 6; ++n)
            for (unsigned long k = 1; k < n; ++k) CHECK(c2_expansion_identity_holds(n, k));
    }
}

TEST_CASE("count ratio identities") {
    for (unsigned long n = 2; n <= 30; ++n) CHECK(count_ratio_identity_holds(Family::A, n));
    for (unsigned long n = 1; n <= 18; ++n) CHECK(count_ratio_identity_holds(Family::B, n));
}
