#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qderange/exact.hpp"
#include "qderange/family.hpp"
#include "qderange/moments.hpp"
#include "qderange/qseries.hpp"
#include "qderange/real.hpp"

namespace qderange {

namespace detail {

inline const QPoly& family_poly(Family family, unsigned long n) {
    return family == Family::A ? d_poly_A(n) : d_poly_B(n);
}

inline Integer family_count(Family family, unsigned long n) {
    return family == Family::A ? derangement_count_A(n) : derangement_count_B(n);
}

// sum_{j=1}^{n} (j^e - 1) for type A, sum_{j=1}^{n} ((2j)^e - 1) for type B.
inline Integer power_sum(Family family, unsigned long n, unsigned long e) {
    Integer s(0);
    for (unsigned long j = 1; j <= n; ++j) {
        Integer p;
        mpz_ui_pow_ui(p.raw(), family == Family::A ? j : 2 * j, e);
        s += p - Integer(1);
    }
    return s;
}

inline Real ten_pow(long e, long digits) {
    return Real::from_long(10, digits).pow(e);
}

}  // namespace detail

// Distribution of the standardized statistic (stat - E)/sigma: exact rational
// probabilities c_k / D on support points (k - E)/sigma.
struct StandardizedDistribution {
    Family family;
    unsigned long n;
    long digits;
    std::vector<unsigned long> values;  // statistic values k with c_k > 0
    std::vector<Real> support;          // (k - E)/sigma, strictly increasing
    std::vector<Rational> probs;        // c_k / D, summing to 1 exactly
    Rational mean;
    Rational variance;
    Real sigma;
};

inline StandardizedDistribution standardize(Family family, unsigned long n,
                                            long digits = Real::default_digits) {
    MomentSummary s = summarize(family, n, digits);
    if (s.degenerate)
        throw std::domain_error("standardize: variance is zero, nothing to standardize");
    const QPoly& p = detail::family_poly(family, n);
    const Integer total = detail::family_count(family, n);
    StandardizedDistribution d{family, n,       digits, {}, {}, {},
                               s.mean, s.variance, s.sigma};
    const Real mean_r = Real::from_rational(s.mean, digits);
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        const Integer& c = p.coeffs()[k];
        if (c.is_zero()) continue;
        d.values.push_back(k);
        d.support.push_back((Real::from_long(static_cast<long>(k), digits) - mean_r) / d.sigma);
        d.probs.emplace_back(c, total);
    }
    return d;
}

namespace detail {

// erf by its Taylor series; adequate (and cancellation-mild) for |z| <= 2.2.
inline Real erf_taylor(const Real& z, long digits) {
    const Real z2 = z * z;
    const Real eps = ten_pow(-(digits + 5), digits);
    Real term = z;  // z^{2k+1} / k!
    Real sum = z;
    for (unsigned long k = 1; k < 100000; ++k) {
        term = term * z2 / static_cast<long>(k);
        const Real contrib = term / static_cast<long>(2 * k + 1);
        if (k % 2 == 0)
            sum += contrib;
        else
            sum -= contrib;
        if (contrib.abs() < eps && Real::from_long(static_cast<long>(k), 20) > z2) break;
    }
    return sum * 2 / Real::pi(digits).sqrt();
}

// erfc via the Laplace continued fraction
//   erfc(z) = e^{-z^2}/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
// evaluated by the modified Lentz algorithm. Used for z > 2.1 where the
// Taylor route would cancel catastrophically.
inline Real erfc_continued_fraction(const Real& z, long digits) {
    const Real eps = ten_pow(-(digits + 5), digits);
    const Real tiny = ten_pow(-4 * (digits + 16), digits);
    Real f = z, c = z, d = Real::zero(digits);
    for (unsigned long m = 1; m < 100000; ++m) {
        const Real a = Real::from_long(static_cast<long>(m), digits) / 2;
        d = z + a * d;
        if (d.is_zero()) d = tiny;
        d = Real::one(digits) / d;
        c = z + a / c;
        if (c.is_zero()) c = tiny;
        const Real delta = c * d;
        f *= delta;
        if ((delta - 1).abs() < eps)
            return (-(z * z)).exp() / Real::pi(digits).sqrt() / f;
    }
    throw std::runtime_error("erfc_continued_fraction: no convergence");
}

}  // namespace detail

// Standard normal CDF with absolute error below 10^{-(P-10)}: error-function
// Taylor series for |x| <= 3, continued-fraction complement beyond.
inline Real normal_cdf(const Real& x, long digits = Real::default_digits) {
    const long wd = digits + 10;
    const Real xw = x.at_bits(Real::bits_for_digits(wd));
    const Real z = xw / Real::from_long(2, wd).sqrt();
    const Real half = Real::one(wd) / 2;
    if (xw.abs() <= Real::from_long(3, wd))
        return (half + detail::erf_taylor(z, wd) / 2).at_bits(Real::bits_for_digits(digits));
    const Real tail = detail::erfc_continued_fraction(z.abs(), wd) / 2;
    const Real result = xw.sign() > 0 ? Real::one(wd) - tail : tail;
    return result.at_bits(Real::bits_for_digits(digits));
}

// sup_x |F_d(x) - Phi(x)|, taken exactly at the jump points of the discrete
// CDF: at each support point both the left and right limits of F_d are
// compared against Phi there.
inline Real ks_to_normal(const StandardizedDistribution& d) {
    Real best = Real::zero(d.digits);
    Rational cumulative;
    for (std::size_t i = 0; i < d.support.size(); ++i) {
        const Real phi = normal_cdf(d.support[i], d.digits);
        const Real below = (Real::from_rational(cumulative, d.digits) - phi).abs();
        cumulative += d.probs[i];
        const Real above = (Real::from_rational(cumulative, d.digits) - phi).abs();
        best = std::max({best, below, above},
                        [](const Real& a, const Real& b) { return a < b; });
    }
    return best;
}

// MGF of the standardized statistic at t:
// exp(-tE/sigma) (1/D) sum_k c_k exp(tk/sigma). All terms are positive, so
// the positive-term sum carries no cancellation. Exactly 1 at t = 0.
inline Real mgf_standardized(Family family, unsigned long n, const Real& t,
                             long digits = Real::default_digits) {
    if (t.is_zero()) return Real::one(digits);
    MomentSummary s = summarize(family, n, digits);
    if (s.degenerate) throw std::domain_error("mgf_standardized: degenerate variance");
    const Real tw = t.at_bits(Real::bits_for_digits(digits));
    const QPoly& p = detail::family_poly(family, n);
    const Real ratio = (tw / s.sigma).exp();  // exp(t/sigma)
    Real sum = Real::zero(digits);
    Real power = Real::one(digits);
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (!p.coeffs()[k].is_zero())
            sum += Real::from_integer(p.coeffs()[k], digits) * power;
        power *= ratio;
    }
    const Real shift = (-(tw * Real::from_rational(s.mean, digits) / s.sigma)).exp();
    return shift * sum / Real::from_integer(detail::family_count(family, n), digits);
}

// Partial sums whose limits Tannery's theorem identifies:
//   type A: sum_{k=0}^{n} x^k / [k]_q!            with q = exp(-t/sigma_n)
//   type B: sum_{k=0}^{n} x^k / ([2k]_q!! e^{kt/sigma})
// q-brackets are evaluated numerically by direct summation (all positive).
inline Real tannery_partial_sum(Family family, unsigned long n, const Real& x, const Real& t,
                                long digits = Real::default_digits) {
    MomentSummary s = summarize(family, n, digits);
    if (s.degenerate) throw std::domain_error("tannery_partial_sum: degenerate variance");
    const auto bits = Real::bits_for_digits(digits);
    const Real xw = x.at_bits(bits), tw = t.at_bits(bits);
    const Real q = (-(tw / s.sigma)).exp();
    const Real extra = family == Family::A ? Real::one(digits) : (tw / s.sigma).exp();
    const unsigned long step = family == Family::A ? 1 : 2;
    Real sum = Real::one(digits);   // k = 0 term
    Real xpow = Real::one(digits);
    Real denom = Real::one(digits);
    Real bracket = Real::zero(digits);  // running [m]_q
    Real qpow = Real::one(digits);      // q^m
    unsigned long m = 0;
    for (unsigned long k = 1; k <= n; ++k) {
        while (m < step * k) {
            bracket += qpow;
            qpow *= q;
            ++m;
        }
        denom *= bracket * extra;
        xpow *= xw;
        sum += xpow / denom;
    }
    return sum;
}

// Magnitudes are wanted individually by the decay diagnostics, so the terms
// of the i >= 2 Bernoulli tail are exposed as a sequence:
//   term_i = B_{2i} t^{2i} / ((2i)(2i)! sigma^{2i}) * power_sum(2i).
inline std::vector<Real> bernoulli_tail_terms(Family family, unsigned long n, const Real& t,
                                              unsigned long i_max,
                                              long digits = Real::default_digits) {
    if (i_max < 2) throw std::domain_error("bernoulli_tail_terms: requires i_max >= 2");
    const Rational var = family == Family::A ? variance_A(n) : variance_B(n);
    if (var.is_zero()) throw std::domain_error("bernoulli_tail_terms: degenerate variance");
    const Real tw = t.at_bits(Real::bits_for_digits(digits));
    const Real var_r = Real::from_rational(var, digits);
    std::vector<Real> terms;
    terms.reserve(i_max - 1);
    for (unsigned long i = 2; i <= i_max; ++i) {
        const Real term = Real::from_rational(bernoulli(2 * i), digits) *
                          tw.pow(static_cast<long>(2 * i)) /
                          (Real::from_long(static_cast<long>(2 * i), digits) *
                           Real::from_integer(factorial(2 * i), digits) *
                           var_r.pow(static_cast<long>(i))) *
                          Real::from_integer(detail::power_sum(family, n, 2 * i), digits);
        terms.push_back(term);
    }
    return terms;
}

inline Real bernoulli_tail(Family family, unsigned long n, const Real& t, unsigned long i_max,
                           long digits = Real::default_digits) {
    if (t.is_zero()) return Real::zero(digits);
    Real sum = Real::zero(digits);
    for (const Real& term : bernoulli_tail_terms(family, n, t, i_max, digits)) sum += term;
    return sum;
}

namespace detail {

// sum_{i=1}^{i_max} B_{2i} x^{2i} / ((2i)(2i)!) * power_sum(2i)
inline Real bernoulli_exponent_series(Family family, unsigned long n, const Real& x,
                                      unsigned long i_max, long digits) {
    Real sum = Real::zero(digits);
    for (unsigned long i = 1; i <= i_max; ++i) {
        sum += Real::from_rational(bernoulli(2 * i), digits) *
               x.pow(static_cast<long>(2 * i)) /
               (Real::from_long(static_cast<long>(2 * i), digits) *
                Real::from_integer(factorial(2 * i), digits)) *
               Real::from_integer(power_sum(family, n, 2 * i), digits);
    }
    return sum;
}

}  // namespace detail

// Numerical check of the Bernoulli factorization of the MGF. Two relative
// discrepancies are formed and the larger returned:
//  (1) d_n(e^x)/D against the product form
//      (n!/D) exp(n(n-1)x/4 + S) sum_k (-1)^k/[k]_{e^-x}!   (type A; type B
//      uses (2n)!!, x n^2/2 and [2k]_{e^-x}!! e^{kx}),
//  (2) the factorial factorization itself, [n]_{e^x}! against
//      n! exp(n(n-1)x/4 + S)  (resp. [2n]_{e^x}!! against (2n)!! exp(...)),
// where S is the Bernoulli exponent series truncated at i_max. Meaningful
// while the series converges, i.e. for |x| * (largest letter) < 2pi.
inline Real mgf_bernoulli_identity_check(Family family, unsigned long n, const Real& x,
                                         unsigned long i_max,
                                         long digits = Real::default_digits) {
    const auto bits = Real::bits_for_digits(digits);
    const Real xw = x.at_bits(bits);
    const Real ex = xw.exp();
    const Real exm = (-xw).exp();
    const Integer count = detail::family_count(family, n);
    const unsigned long step = family == Family::A ? 1 : 2;
    const Real count_r = Real::from_integer(count, digits);

    // linear part of the exponent: n(n-1)x/4 for A, x n^2/2 for B
    const long ln = static_cast<long>(n);
    const Rational linear = family == Family::A ? Rational(ln * (ln - 1), 4)
                                                : Rational(ln * ln, 2);
    const Real exponent = Real::from_rational(linear, digits) * xw +
                          detail::bernoulli_exponent_series(family, n, xw, i_max, digits);
    const Real classical = family == Family::A
                               ? Real::from_integer(factorial(n), digits)
                               : Real::from_integer(double_factorial_even(n), digits);

    // alternating sum over reciprocal q-factorials at q = e^{-x}
    Real alt = Real::one(digits);
    {
        Real denom = Real::one(digits);
        Real bracket = Real::zero(digits), qpow = Real::one(digits);
        unsigned long m = 0;
        for (unsigned long k = 1; k <= n; ++k) {
            while (m < step * k) {
                bracket += qpow;
                qpow *= exm;
                ++m;
            }
            denom *= bracket;
            if (family == Family::B) denom *= ex;
            const Real term = Real::one(digits) / denom;
            if (k % 2 == 0)
                alt += term;
            else
                alt -= term;
        }
    }

    const Real mgf_direct = eval_real(detail::family_poly(family, n), ex, digits) / count_r;
    const Real mgf_product = classical / count_r * exponent.exp() * alt;
    const Real disc_mgf = ((mgf_direct - mgf_product) / mgf_direct).abs();

    // factorization check: prod_j [step*j]_{e^x} against classical * e^{exponent}
    Real qfact = Real::one(digits);
    {
        Real bracket = Real::zero(digits), qpow = Real::one(digits);
        unsigned long m = 0;
        for (unsigned long j = 1; j <= n; ++j) {
            while (m < step * j) {
                bracket += qpow;
                qpow *= ex;
                ++m;
            }
            qfact *= bracket;
        }
    }
    const Real disc_fact = ((qfact - classical * exponent.exp()) / qfact).abs();

    return std::max(disc_mgf, disc_fact, [](const Real& a, const Real& b) { return a < b; });
}

// Exact verification of the q-reciprocity identities
//   q^{C(k,2)} / [k]_q!  = 1 / [k]_{1/q}!      and
//   q^{k^2}   / [2k]_q!! = 1 / [2k]_{1/q}!!
// at a rational point q > 0, by clearing denominators in exact arithmetic.
inline bool q_reciprocal_identity_check(unsigned long k, const Rational& q) {
    if (q.sign() <= 0) throw std::domain_error("q_reciprocal_identity_check: requires q > 0");
    const Rational qinv = Rational(1) / q;
    auto bracket_at = [](unsigned long m, const Rational& point) {
        Rational b, p(1);
        for (unsigned long r = 0; r < m; ++r) {
            b += p;
            p *= point;
        }
        return b;
    };
    Rational fact(1), fact_inv(1), dfact(1), dfact_inv(1);
    for (unsigned long j = 1; j <= k; ++j) {
        fact *= bracket_at(j, q);
        fact_inv *= bracket_at(j, qinv);
        dfact *= bracket_at(2 * j, q);
        dfact_inv *= bracket_at(2 * j, qinv);
    }
    const bool single = pow(q, k * (k ? k - 1 : 0) / 2) * fact_inv == fact;
    const bool doubled = pow(q, k * k) * dfact_inv == dfact;
    return single && doubled;
}

// (1/sigma^2) sum_{j<=n} (j^2 - 1) for A, ((2j)^2 - 1) for B; tends to 12.
inline Real power_sum_ratio(Family family, unsigned long n, long digits = Real::default_digits) {
    const Rational var = family == Family::A ? variance_A(n) : variance_B(n);
    if (var.is_zero()) throw std::domain_error("power_sum_ratio: degenerate variance");
    return Real::from_integer(detail::power_sum(family, n, 2), digits) /
           Real::from_rational(var, digits);
}

}  // namespace qderange
