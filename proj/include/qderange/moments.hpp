#pragma once

#include <stdexcept>
#include <utility>

#include "qderange/exact.hpp"
#include "qderange/family.hpp"
#include "qderange/qpoly.hpp"
#include "qderange/qseries.hpp"
#include "qderange/real.hpp"

namespace qderange {

// Mean of the distribution whose probability generating polynomial is p,
// i.e. p'(1) / p(1).
inline Rational mean_from_poly(const QPoly& p) {
    if (p.is_zero()) throw std::domain_error("mean_from_poly: zero polynomial has no distribution");
    return eval_rational(derivative(p), 1) / eval_rational(p, 1);
}

// Variance p''(1)/p(1) + mean - mean^2, exact.
inline Rational variance_from_poly(const QPoly& p) {
    if (p.is_zero()) throw std::domain_error("variance_from_poly: zero polynomial has no distribution");
    const Rational mean = mean_from_poly(p);
    return eval_rational(derivative(derivative(p)), 1) / eval_rational(p, 1) + mean - mean * mean;
}

namespace detail {

inline Rational nq(long num, long den = 1) { return Rational(num, den); }

inline Integer sign_of(unsigned long n) { return Integer(n % 2 == 0 ? 1 : -1); }

}  // namespace detail

// E_n = (n^2 - n + 1)/4 + (-1)^n (n-1) / (4 D_n), n >= 2.
inline Rational expectation_A(unsigned long n) {
    if (n < 2) throw std::domain_error("expectation_A: requires n >= 2 (D_n > 0)");
    const long ln = static_cast<long>(n);
    return Rational(ln * ln - ln + 1, 4) +
           Rational(detail::sign_of(n) * Integer(ln - 1), Integer(4) * derangement_count_A(n));
}

// The equivalent printed form (1/2) C(n,2) (1 + D_{n-2}/D_n).
inline Rational expectation_A_binomial_form(unsigned long n) {
    if (n < 2) throw std::domain_error("expectation_A_binomial_form: requires n >= 2");
    return Rational(binomial(n, 2), Integer(2)) *
           (Rational(1) + Rational(derangement_count_A(n - 2), derangement_count_A(n)));
}

// V_n per the closed form with the (-1)^n/D_n correction terms, n >= 2.
inline Rational variance_A(unsigned long n) {
    if (n < 2) throw std::domain_error("variance_A: requires n >= 2");
    const long ln = static_cast<long>(n);
    const Integer d = derangement_count_A(n);
    const Rational head(2 * ln * ln * ln + 3 * ln * ln - 5 * ln - 16, 72);
    const Rational mid(detail::sign_of(n) * Integer(9 * ln * ln * ln - 4 * ln * ln - 46 * ln + 41),
                       Integer(144) * d);
    const Rational tail(Integer(ln - 1), Integer(4) * d);
    return head + mid - tail * tail;
}

// E_n^B = n^2/2 + n/4 + (-n^2/2 + 3n/4) D_{n-1}^B / D_n^B, n >= 1.
inline Rational expectation_B(unsigned long n) {
    if (n < 1) throw std::domain_error("expectation_B: requires n >= 1");
    const long ln = static_cast<long>(n);
    const Rational r(derangement_count_B(n - 1), derangement_count_B(n));
    return Rational(ln * ln, 2) + Rational(ln, 4) +
           (Rational(-ln * ln, 2) + Rational(3 * ln, 4)) * r;
}

// V_n^B per the closed form quadratic in r = D_{n-1}^B / D_n^B, n >= 1.
inline Rational variance_B(unsigned long n) {
    if (n < 1) throw std::domain_error("variance_B: requires n >= 1");
    const long ln = static_cast<long>(n);
    const Rational r(derangement_count_B(n - 1), derangement_count_B(n));
    const Rational head(ln * (68 * ln * ln - 40 * ln - 101), 288);
    const Rational mid = Rational(Integer(ln) * Integer(72 * ln * ln * ln - 212 * ln * ln - 78 * ln + 127),
                                  Integer(288)) * r;
    const Rational tail = Rational(ln * ln * (2 * ln - 3) * (2 * ln - 3), 16) * r * r;
    return head - mid - tail;
}

// Polynomial parts of the asymptotic estimates (the o(1) terms dropped):
// type A: (n^2/4 - n/4 + 1/4, n^3/36 + n^2/24 - 5n/72 - 2/9)
// type B: (n^2/2 + 3/8,       n^3/9 + n^2/6 - n/36 - 13/36)
inline std::pair<Rational, Rational> asymptotic_moments(Family family, unsigned long n) {
    if (n < 1) throw std::domain_error("asymptotic_moments: requires n >= 1");
    const long ln = static_cast<long>(n);
    if (family == Family::A)
        return {Rational(ln * ln - ln + 1, 4),
                Rational(2 * ln * ln * ln + 3 * ln * ln - 5 * ln - 16, 72)};
    return {Rational(4 * ln * ln + 3, 8),
            Rational(4 * ln * ln * ln + 6 * ln * ln - ln - 13, 36)};
}

// Exact and asymptotic moments of one family/size, with sigma = sqrt(V) at
// precision P. Degenerate sizes (variance 0: A at n=2, B at n=1) are flagged
// rather than rejected; standardization downstream refuses them.
struct MomentSummary {
    Family family;
    unsigned long n;
    Rational mean;
    Rational variance;
    Real sigma;
    Rational mean_asymptotic;
    Rational variance_asymptotic;
    bool degenerate;
};

inline MomentSummary summarize(Family family, unsigned long n, long digits = Real::default_digits) {
    const Rational mean = family == Family::A ? expectation_A(n) : expectation_B(n);
    const Rational variance = family == Family::A ? variance_A(n) : variance_B(n);
    auto [mean_asym, var_asym] = asymptotic_moments(family, n);
    return MomentSummary{family,
                         n,
                         mean,
                         variance,
                         Real::from_rational(variance, digits).sqrt(),
                         std::move(mean_asym),
                         std::move(var_asym),
                         variance.is_zero()};
}

// ---------------------------------------------------------------------------
// Exact identities from the expectation/variance derivations; each returns
// whether the identity holds (used by tests and `verify`).

// d_n'(1) = (1/2) C(n,2) (D_n + D_{n-2}), n >= 2.
inline bool d_prime_identity_holds(unsigned long n) {
    if (n < 2) throw std::domain_error("d_prime_identity_holds: requires n >= 2");
    const Rational lhs = eval_rational(derivative(d_poly_A(n)), 1);
    const Rational rhs = Rational(binomial(n, 2), Integer(2)) *
                         Rational(derangement_count_A(n) + derangement_count_A(n - 2));
    return lhs == rhs;
}

// d_n''(1) = (1/72) C(n,2) [(n-2)(27n+32) D_{n-2} - (9n+5) D_{n-1}
//            + (n-2)(9n+13) D_n], n >= 3.
inline bool d_double_prime_identity_holds(unsigned long n) {
    if (n < 3) throw std::domain_error("d_double_prime_identity_holds: requires n >= 3");
    const long ln = static_cast<long>(n);
    const Rational lhs = eval_rational(derivative(derivative(d_poly_A(n))), 1);
    const Integer bracket = Integer(ln - 2) * Integer(27 * ln + 32) * derangement_count_A(n - 2) -
                            Integer(9 * ln + 5) * derangement_count_A(n - 1) +
                            Integer(ln - 2) * Integer(9 * ln + 13) * derangement_count_A(n);
    const Rational rhs = Rational(binomial(n, 2) * bracket, Integer(72));
    return lhs == rhs;
}

namespace detail {

// Power series truncated after x^2, with exact coefficients.
struct Trunc2 {
    Rational a0, a1, a2;
    friend Trunc2 operator*(const Trunc2& a, const Trunc2& b) {
        return {a.a0 * b.a0, a.a0 * b.a1 + a.a1 * b.a0,
                a.a0 * b.a2 + a.a1 * b.a1 + a.a2 * b.a0};
    }
};

}  // namespace detail

// The x^2 coefficient of e^{k(k-1)x} prod_{j=k+1}^{n} sum_{r=0}^{2j-1} e^{rx}
// equals ((2n)!!/(2k)!!) c_2 with
// c_2 = [9(k)_4 + 14(k)_3 + (18n^2-27)(k)_2 - 18n^2 k + (9n^4+4n^3+6n^2-n)]/72.
// The left side is expanded here by literal truncated-series arithmetic, the
// exponential-sum coefficients obtained by direct summation over r.
inline bool c2_expansion_identity_holds(unsigned long n, unsigned long k) {
    if (k < 1 || k >= n) throw std::domain_error("c2_expansion_identity_holds: requires 1 <= k < n");
    const long lk = static_cast<long>(k);
    const Rational kk(lk * (lk - 1));
    detail::Trunc2 acc{Rational(1), kk, kk * kk / Rational(2)};
    for (unsigned long j = k + 1; j <= n; ++j) {
        Rational s0, s1, s2;
        for (unsigned long r = 0; r < 2 * j; ++r) {
            const long lr = static_cast<long>(r);
            s0 += Rational(1);
            s1 += Rational(lr);
            s2 += Rational(lr * lr, 2);
        }
        acc = acc * detail::Trunc2{s0, s1, s2};
    }
    const long ln = static_cast<long>(n);
    const Integer numer = Integer(9) * falling_factorial(lk, 4) +
                          Integer(14) * falling_factorial(lk, 3) +
                          Integer(18 * ln * ln - 27) * falling_factorial(lk, 2) -
                          Integer(18 * ln * ln * lk) +
                          Integer(9 * ln * ln * ln * ln + 4 * ln * ln * ln + 6 * ln * ln - ln);
    const Rational c2(numer, Integer(72));
    const Integer ratio = double_factorial_even(n).div_exact(double_factorial_even(k));
    return acc.a2 == Rational(ratio) * c2;
}

// D_{n-1}/D_n = 1/n - (-1)^n/(n D_n) for A (n >= 2), and
// D_{n-1}^B/D_n^B = 1/(2n) - (-1)^n/(2n D_n^B) for B (n >= 1), exactly.
inline bool count_ratio_identity_holds(Family family, unsigned long n) {
    const long ln = static_cast<long>(n);
    if (family == Family::A) {
        if (n < 2) throw std::domain_error("count_ratio_identity_holds: type A requires n >= 2");
        const Integer d = derangement_count_A(n);
        return Rational(derangement_count_A(n - 1), d) ==
               Rational(1, ln) - Rational(detail::sign_of(n), Integer(ln) * d);
    }
    if (n < 1) throw std::domain_error("count_ratio_identity_holds: type B requires n >= 1");
    const Integer d = derangement_count_B(n);
    return Rational(derangement_count_B(n - 1), d) ==
           Rational(1, 2 * ln) - Rational(detail::sign_of(n), Integer(2 * ln) * d);
}

}  // namespace qderange
