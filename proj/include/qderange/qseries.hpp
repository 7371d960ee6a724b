#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qderange/exact.hpp"
#include "qderange/qpoly.hpp"

namespace qderange {

// [k]_q = 1 + q + ... + q^{k-1}; [0]_q is the empty sum (zero polynomial).
inline QPoly q_bracket(unsigned long k) {
    return QPoly(std::vector<Integer>(k, Integer(1)));
}

// [k]_q! = [k]_q [k-1]_q ... [1]_q; [0]_q! = 1.
inline QPoly q_factorial(unsigned long k) {
    QPoly p = QPoly::one();
    for (unsigned long j = 1; j <= k; ++j) p *= q_bracket(j);
    return p;
}

// [2k]_q!! = [2k]_q [2k-2]_q ... [2]_q; the empty product (k = 0) is 1.
inline QPoly q_double_factorial_even(unsigned long k) {
    QPoly p = QPoly::one();
    for (unsigned long j = 1; j <= k; ++j) p *= q_bracket(2 * j);
    return p;
}

// f_{n,k} = 1 when k = n, else [n]_q [n-1]_q ... [k+1]_q.
inline QPoly f_nk(unsigned long n, unsigned long k) {
    if (k > n) throw std::domain_error("f_nk: requires k <= n");
    QPoly p = QPoly::one();
    for (unsigned long j = k + 1; j <= n; ++j) p *= q_bracket(j);
    return p;
}

namespace detail {

// sum_{k=0}^{n} (-1)^k q^{expo(k)} prod_{j=k+1}^{n} [step*j]_q, built with a
// running product from k = n downward. Covers both families: type A has
// step 1, expo(k) = C(k,2); type B has step 2, expo(k) = k(k-1).
inline QPoly alternating_q_sum(unsigned long n, unsigned long step, bool exponent_doubled) {
    QPoly acc;
    QPoly tail = QPoly::one();
    for (unsigned long k = n + 1; k-- > 0;) {
        const Integer sign(k % 2 == 0 ? 1 : -1);
        const std::size_t expo =
            k == 0 ? 0 : (exponent_doubled ? k * (k - 1) : k * (k - 1) / 2);
        acc += scale_shift(tail, sign, expo);
        if (k > 0) tail *= q_bracket(step * k);
    }
    return acc;
}

}  // namespace detail

// d_n(q) = sum_k (-1)^k q^{C(k,2)} f_{n,k}(q), the division-free form of the
// type A q-derangement polynomial. Memoized; the deque keeps returned
// references valid across later extensions.
inline const QPoly& d_poly_A(unsigned long n) {
    static std::deque<QPoly> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    while (cache.size() <= n)
        cache.push_back(detail::alternating_q_sum(cache.size(), 1, false));
    return cache[n];
}

// d_n^B(q) = sum_k (-1)^k q^{k(k-1)} prod_{j=k+1}^{n} [2j]_q. Memoized.
inline const QPoly& d_poly_B(unsigned long n) {
    static std::deque<QPoly> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    while (cache.size() <= n)
        cache.push_back(detail::alternating_q_sum(cache.size(), 2, true));
    return cache[n];
}

// The same polynomial through the quotient form
// [n]_q! sum_k (-1)^k q^{C(k,2)} / [k]_q!, with the division carried out as
// exact polynomial division. Cross-check route only.
inline QPoly d_poly_A_by_division(unsigned long n) {
    const QPoly full = q_factorial(n);
    QPoly acc;
    for (unsigned long k = 0; k <= n; ++k) {
        const Integer sign(k % 2 == 0 ? 1 : -1);
        const std::size_t expo = k == 0 ? 0 : k * (k - 1) / 2;
        acc += scale_shift(divide_exact(full, q_factorial(k)), sign, expo);
    }
    return acc;
}

// Quotient form [2n]_q!! sum_k (-1)^k q^{k(k-1)} / [2k]_q!!. Cross-check.
inline QPoly d_poly_B_by_division(unsigned long n) {
    const QPoly full = q_double_factorial_even(n);
    QPoly acc;
    for (unsigned long k = 0; k <= n; ++k) {
        const Integer sign(k % 2 == 0 ? 1 : -1);
        const std::size_t expo = k == 0 ? 0 : k * (k - 1);
        acc += scale_shift(divide_exact(full, q_double_factorial_even(k)), sign, expo);
    }
    return acc;
}

namespace detail {

// floor(x + 1/2) with an audit that x + 1/2 lands strictly more than 1e-5
// away from an integer, i.e. x is well clear of every half-integer.
inline Integer round_half_checked(const Real& x, const char* what) {
    const Real shifted = x + Real::from_rational(Rational(1, 2), 20).at_bits(x.precision_bits());
    const Real frac = shifted - shifted.floor();
    const Real margin = Real::from_double(1e-5, 20).at_bits(x.precision_bits());
    if (frac < margin || (Real::one(20).at_bits(x.precision_bits()) - frac) < margin)
        throw std::runtime_error(std::string(what) + ": value too close to a half-integer");
    return shifted.to_integer_floor();
}

inline long count_float_digits(unsigned long n, bool type_b) {
    // enough digits to resolve n! / e (resp. (2n)!! / sqrt(e)) to ~1e-6
    double log10_magnitude = type_b
        ? n * std::log10(2.0) + std::lgamma(static_cast<double>(n) + 1) / std::log(10.0)
        : std::lgamma(static_cast<double>(n) + 1) / std::log(10.0);
    return static_cast<long>(log10_magnitude) + 25;
}

}  // namespace detail

// D_n, the number of derangements of [n], computed through all four paper
// formulas (inclusion-exclusion, the two recurrences, and floor(n!/e + 1/2))
// on the ranges where each applies; any disagreement throws. Memoized.
inline Integer derangement_count_A(unsigned long n) {
    static std::vector<Integer> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    while (cache.size() <= n) {
        const unsigned long m = cache.size();
        // inclusion-exclusion: sum_k (-1)^k n!/k!, running product from k = m
        Integer sum(0), prod(1);
        for (unsigned long k = m + 1; k-- > 0;) {
            if (k % 2 == 0)
                sum += prod;
            else
                sum -= prod;
            if (k > 0) prod *= k;
        }
        if (m >= 1) {
            Integer rec = cache[m - 1] * Integer(static_cast<long>(m)) +
                          Integer(m % 2 == 0 ? 1 : -1);
            if (rec != sum) throw std::runtime_error("derangement_count_A: recurrence nD+(-1)^n disagrees");
        }
        if (m >= 2) {
            Integer rec = (cache[m - 1] + cache[m - 2]) * Integer(static_cast<long>(m) - 1);
            if (rec != sum) throw std::runtime_error("derangement_count_A: recurrence (n-1)(D+D) disagrees");
        }
        if (m >= 1) {
            const long digits = detail::count_float_digits(m, false);
            const Real e = Real::one(digits).exp();
            Integer fl = detail::round_half_checked(Real::from_integer(factorial(m), digits) / e,
                                                    "derangement_count_A");
            if (fl != sum) throw std::runtime_error("derangement_count_A: floor(n!/e + 1/2) disagrees");
        }
        cache.push_back(std::move(sum));
    }
    return cache[n];
}

// D_n^B, the number of B_n-derangements, via the four type B formulas.
inline Integer derangement_count_B(unsigned long n) {
    static std::vector<Integer> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    while (cache.size() <= n) {
        const unsigned long m = cache.size();
        // alternating sum: sum_k (-1)^k (2m)!!/(2k)!!
        Integer sum(0), prod(1);
        for (unsigned long k = m + 1; k-- > 0;) {
            if (k % 2 == 0)
                sum += prod;
            else
                sum -= prod;
            if (k > 0) prod *= 2 * k;
        }
        if (m >= 1) {
            Integer rec = cache[m - 1] * Integer(2 * static_cast<long>(m)) +
                          Integer(m % 2 == 0 ? 1 : -1);
            if (rec != sum) throw std::runtime_error("derangement_count_B: recurrence 2nD+(-1)^n disagrees");
        }
        if (m >= 2) {
            Integer rec = cache[m - 1] * Integer(2 * static_cast<long>(m) - 1) +
                          cache[m - 2] * Integer(2 * static_cast<long>(m) - 2);
            if (rec != sum) throw std::runtime_error("derangement_count_B: recurrence (2n-1)D+(2n-2)D disagrees");
        }
        {
            const long digits = detail::count_float_digits(m, true);
            const Real sqrt_e = Real::from_rational(Rational(1, 2), digits).exp();
            Integer fl = detail::round_half_checked(
                Real::from_integer(double_factorial_even(m), digits) / sqrt_e,
                "derangement_count_B");
            if (fl != sum) throw std::runtime_error("derangement_count_B: floor((2n)!!/sqrt(e) + 1/2) disagrees");
        }
        cache.push_back(std::move(sum));
    }
    return cache[n];
}

}  // namespace qderange
