#pragma once

#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "qderange/integer.hpp"
#include "qderange/rational.hpp"
#include "qderange/real.hpp"

namespace qderange {

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.raw(), n);
    return r;
}

// (2n)!! = 2 * 4 * ... * 2n; the empty product (n = 0) is 1.
inline Integer double_factorial_even(unsigned long n) {
    Integer r;
    mpz_2fac_ui(r.raw(), 2 * n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.raw(), n, k);
    return r;
}

// Lower factorial (k)_i = k(k-1)...(k-i+1); (k)_0 = 1.
inline Integer falling_factorial(long k, unsigned long i) {
    Integer r(1);
    for (unsigned long j = 0; j < i; ++j) r *= Integer(k - static_cast<long>(j));
    return r;
}

// Cache of Bernoulli numbers B_0, B_1, ... computed by the exact recurrence
// sum_{j=0}^{m} C(m+1, j) B_j = 0 (m >= 1) with B_0 = 1, so B_1 = -1/2.
// Grows monotonically; extension is serialized, reads return copies.
class BernoulliTable {
public:
    Rational at(std::size_t k) {
        std::lock_guard<std::mutex> lock(mutex_);
        while (cache_.size() <= k) extend_locked();
        return cache_[k];
    }

private:
    void extend_locked() {
        const std::size_t m = cache_.size();
        if (m == 0) {
            cache_.emplace_back(1);
            return;
        }
        Rational sum;
        for (std::size_t j = 0; j < m; ++j)
            sum += Rational(binomial(m + 1, j)) * cache_[j];
        cache_.push_back(-sum / Rational(Integer(static_cast<long>(m) + 1)));
    }

    std::vector<Rational> cache_;
    std::mutex mutex_;
};

inline Rational bernoulli(std::size_t k) {
    static BernoulliTable table;
    return table.at(k);
}

// Asymptotic magnitude 2 * m! / (2*pi)^m of |B_m| for even m >= 2.
inline Real bernoulli_magnitude_estimate(unsigned long m, long digits = Real::default_digits) {
    if (m < 2 || m % 2 != 0)
        throw std::domain_error("bernoulli_magnitude_estimate: m must be even and >= 2");
    const Real two_pi = Real::pi(digits) * 2;
    return Real::from_integer(factorial(m), digits) * 2 / two_pi.pow(static_cast<long>(m));
}

}  // namespace qderange
