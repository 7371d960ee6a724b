#pragma once

#include <gmp.h>

#include <ostream>
#include <stdexcept>
#include <string>

#include "qderange/integer.hpp"

namespace qderange {

// Exact rational number, always reduced to lowest terms with positive
// denominator (GMP canonical form is maintained by every operation).
class Rational {
public:
    Rational() { mpq_init(v_); }
    Rational(long n) {  // NOLINT: implicit by design
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
    }
    Rational(const Integer& z) {  // NOLINT: implicit by design
        mpq_init(v_);
        mpq_set_z(v_, z.raw());
    }
    Rational(const Integer& num, const Integer& den) {
        if (den.is_zero()) throw std::domain_error("Rational: zero denominator");
        mpq_init(v_);
        mpq_set_num(v_, num.raw());
        mpq_set_den(v_, den.raw());
        mpq_canonicalize(v_);
    }
    Rational(long num, long den)
        : Rational(Integer(num), Integer(den)) {}
    Rational(const Rational& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rational& operator=(const Rational& o) {
        mpq_set(v_, o.v_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rational() { mpq_clear(v_); }

    bool is_zero() const { return mpq_sgn(v_) == 0; }
    int sign() const { return mpq_sgn(v_); }

    Integer numerator() const {
        Integer z;
        mpz_set(z.raw(), mpq_numref(v_));
        return z;
    }
    Integer denominator() const {
        Integer z;
        mpz_set(z.raw(), mpq_denref(v_));
        return z;
    }

    Rational& operator+=(const Rational& o) {
        mpq_add(v_, v_, o.v_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(v_, v_, o.v_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(v_, v_, o.v_);
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        mpq_div(v_, v_, o.v_);
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        mpq_neg(r.v_, a.v_);
        return r;
    }

    Rational abs() const {
        Rational r;
        mpq_abs(r.v_, v_);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.v_, b.v_) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return mpq_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return mpq_cmp(a.v_, b.v_) <= 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    // "p/q", or just "p" when the denominator is 1.
    std::string to_string() const {
        char* s = mpq_get_str(nullptr, 10, v_);
        std::string r(s);
        void (*freefunc)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefunc);
        freefunc(s, r.size() + 1);
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) {
        return os << q.to_string();
    }

    mpq_srcptr raw() const { return v_; }

private:
    mpq_t v_;
};

inline Rational pow(const Rational& base, unsigned long e) {
    return Rational(pow(base.numerator(), e), pow(base.denominator(), e));
}

}  // namespace qderange
