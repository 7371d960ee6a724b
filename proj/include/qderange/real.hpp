#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qderange/integer.hpp"
#include "qderange/rational.hpp"

namespace qderange {

// Arbitrary-precision binary float (MPFR) with per-value precision; there is
// no ambient global precision state. Public entry points take the precision
// as a decimal digit count P; the mapping to bits carries 16 guard bits, so
// every operation rounds with relative error well below 10^(1-P). Binary
// operations produce a result at the larger of the two operand precisions.
class Real {
public:
    static constexpr long default_digits = 60;

    static mpfr_prec_t bits_for_digits(long digits) {
        if (digits < 1) digits = 1;
        return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 16;
    }

    Real() : Real(bits_for_digits(default_digits)) {}
    explicit Real(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real zero(long digits = default_digits) { return Real(bits_for_digits(digits)); }
    static Real one(long digits = default_digits) { return from_long(1, digits); }
    static Real from_long(long n, long digits = default_digits) {
        Real r(bits_for_digits(digits));
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }
    static Real from_double(double x, long digits = default_digits) {
        Real r(bits_for_digits(digits));
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    // Exact embedding: the precision is widened to hold every bit of z.
    static Real from_integer(const Integer& z, long digits = default_digits) {
        mpfr_prec_t bits = bits_for_digits(digits);
        if (!z.is_zero()) {
            auto need = static_cast<mpfr_prec_t>(mpz_sizeinbase(z.raw(), 2)) + 2;
            bits = std::max(bits, need);
        }
        Real r(bits);
        mpfr_set_z(r.v_, z.raw(), MPFR_RNDN);
        return r;
    }
    static Real from_rational(const Rational& q, long digits = default_digits) {
        Real r(bits_for_digits(digits));
        mpfr_set_q(r.v_, q.raw(), MPFR_RNDN);
        return r;
    }
    static Real pi(long digits = default_digits) {
        Real r(bits_for_digits(digits));
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t precision_bits() const { return mpfr_get_prec(v_); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(std::max(a.precision_bits(), b.precision_bits()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(std::max(a.precision_bits(), b.precision_bits()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(std::max(a.precision_bits(), b.precision_bits()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(std::max(a.precision_bits(), b.precision_bits()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r(a.precision_bits());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    friend Real operator+(const Real& a, long b) { return a + from_long(b, 1).at_bits(a.precision_bits()); }
    friend Real operator-(const Real& a, long b) { return a - from_long(b, 1).at_bits(a.precision_bits()); }
    friend Real operator*(const Real& a, long b) { return a * from_long(b, 1).at_bits(a.precision_bits()); }
    friend Real operator/(const Real& a, long b) { return a / from_long(b, 1).at_bits(a.precision_bits()); }
    friend Real operator-(long a, const Real& b) { return from_long(a, 1).at_bits(b.precision_bits()) - b; }

    Real abs() const {
        Real r(precision_bits());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real exp() const {
        Real r(precision_bits());
        mpfr_exp(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real sqrt() const {
        if (sign() < 0) throw std::domain_error("Real: sqrt of negative value");
        Real r(precision_bits());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real pow(long e) const {
        Real r(precision_bits());
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }
    Real floor() const {
        Real r(precision_bits());
        mpfr_floor(r.v_, v_);
        return r;
    }
    // Rounds a copy to a different working precision.
    Real at_bits(mpfr_prec_t bits) const {
        Real r(bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Integer to_integer_floor() const {
        Integer z;
        mpfr_get_z(z.raw(), v_, MPFR_RNDD);
        return z;
    }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return b < a; }
    friend bool operator>=(const Real& a, const Real& b) { return b <= a; }

    std::string to_string(int significant_digits = 20) const {
        if (significant_digits < 1) significant_digits = 1;
        std::vector<char> buf(static_cast<std::size_t>(significant_digits) + 64);
        mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant_digits, v_);
        return std::string(buf.data());
    }

    friend std::ostream& operator<<(std::ostream& os, const Real& x) {
        return os << x.to_string();
    }

    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

}  // namespace qderange
