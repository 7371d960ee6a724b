#pragma once

#include <gmp.h>

#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qderange {

// Signed arbitrary-precision integer. Thin RAII wrapper around GMP's mpz_t;
// values are immutable for all practical purposes once handed out.
class Integer {
public:
    Integer() { mpz_init(v_); }
    Integer(long n) { mpz_init_set_si(v_, n); }  // NOLINT: implicit by design
    explicit Integer(const std::string& s, int base = 10) {
        if (mpz_init_set_str(v_, s.c_str(), base) != 0) {
            mpz_clear(v_);
            throw std::invalid_argument("Integer: cannot parse \"" + s + "\"");
        }
    }
    Integer(const Integer& o) { mpz_init_set(v_, o.v_); }
    Integer(Integer&& o) noexcept {
        mpz_init(v_);
        mpz_swap(v_, o.v_);
    }
    Integer& operator=(const Integer& o) {
        mpz_set(v_, o.v_);
        return *this;
    }
    Integer& operator=(Integer&& o) noexcept {
        mpz_swap(v_, o.v_);
        return *this;
    }
    ~Integer() { mpz_clear(v_); }

    bool is_zero() const { return mpz_sgn(v_) == 0; }
    int sign() const { return mpz_sgn(v_); }

    Integer& operator+=(const Integer& o) {
        mpz_add(v_, v_, o.v_);
        return *this;
    }
    Integer& operator-=(const Integer& o) {
        mpz_sub(v_, v_, o.v_);
        return *this;
    }
    Integer& operator*=(const Integer& o) {
        mpz_mul(v_, v_, o.v_);
        return *this;
    }
    Integer& operator*=(unsigned long o) {
        mpz_mul_ui(v_, v_, o);
        return *this;
    }

    // *this += a*b, fused (the polynomial-multiplication kernel).
    void add_mul(const Integer& a, const Integer& b) { mpz_addmul(v_, a.v_, b.v_); }
    // *this -= a*b, fused (the long-division kernel).
    void sub_mul(const Integer& a, const Integer& b) { mpz_submul(v_, a.v_, b.v_); }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
    friend Integer operator-(const Integer& a) {
        Integer r;
        mpz_neg(r.v_, a.v_);
        return r;
    }

    // Exact quotient; throws if o does not divide *this.
    Integer div_exact(const Integer& o) const {
        if (o.is_zero()) throw std::domain_error("Integer: division by zero");
        if (!mpz_divisible_p(v_, o.v_))
            throw std::domain_error("Integer: inexact division");
        Integer r;
        mpz_divexact(r.v_, v_, o.v_);
        return r;
    }

    Integer abs() const {
        Integer r;
        mpz_abs(r.v_, v_);
        return r;
    }

    friend bool operator==(const Integer& a, const Integer& b) {
        return mpz_cmp(a.v_, b.v_) == 0;
    }
    friend bool operator!=(const Integer& a, const Integer& b) { return !(a == b); }
    friend bool operator<(const Integer& a, const Integer& b) {
        return mpz_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator<=(const Integer& a, const Integer& b) {
        return mpz_cmp(a.v_, b.v_) <= 0;
    }
    friend bool operator>(const Integer& a, const Integer& b) { return b < a; }
    friend bool operator>=(const Integer& a, const Integer& b) { return b <= a; }

    bool fits_long() const { return mpz_fits_slong_p(v_) != 0; }
    long to_long() const {
        if (!fits_long()) throw std::overflow_error("Integer: value exceeds long");
        return mpz_get_si(v_);
    }

    std::string to_string() const {
        char* s = mpz_get_str(nullptr, 10, v_);
        std::string r(s);
        void (*freefunc)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefunc);
        freefunc(s, r.size() + 1);
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Integer& z) {
        return os << z.to_string();
    }

    mpz_srcptr raw() const { return v_; }
    mpz_ptr raw() { return v_; }

private:
    mpz_t v_;
};

inline Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.raw(), base.raw(), e);
    return r;
}

}  // namespace qderange
