#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qderange/integer.hpp"
#include "qderange/rational.hpp"
#include "qderange/real.hpp"

namespace qderange {

// Dense univariate polynomial in q with Integer coefficients, indexed by
// exponent. The zero polynomial is the empty coefficient vector; trailing
// zeros are always trimmed, so degree() == size - 1 for nonzero polynomials.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QPoly zero() { return QPoly(); }
    static QPoly one() { return constant(Integer(1)); }
    static QPoly constant(Integer c) {
        QPoly p;
        if (!c.is_zero()) p.c_.push_back(std::move(c));
        return p;
    }
    // c * q^m
    static QPoly monomial(Integer c, std::size_t m) {
        QPoly p;
        if (!c.is_zero()) {
            p.c_.resize(m + 1);
            p.c_[m] = std::move(c);
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Integer>& coeffs() const { return c_; }
    const Integer& coeff(std::size_t k) const {
        static const Integer kZero(0);
        return k < c_.size() ? c_[k] : kZero;
    }

    QPoly& operator+=(const QPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    QPoly& operator-=(const QPoly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }

    // Schoolbook product; exact and amply fast for the degrees this library
    // meets (deg ~ 2000 is fine).
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        QPoly r;
        r.c_.resize(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j].add_mul(a.c_[i], b.c_[j]);
        }
        r.trim();
        return r;
    }
    QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const QPoly& p) {
        os << '[';
        for (std::size_t i = 0; i < p.c_.size(); ++i) {
            if (i) os << ", ";
            os << p.c_[i];
        }
        return os << ']';
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Integer> c_;

    friend QPoly scale_shift(const QPoly&, const Integer&, std::size_t);
    friend QPoly derivative(const QPoly&);
    friend QPoly divide_exact(const QPoly&, const QPoly&);
};

// c * q^m * p
inline QPoly scale_shift(const QPoly& p, const Integer& c, std::size_t m) {
    if (p.is_zero() || c.is_zero()) return QPoly();
    QPoly r;
    r.c_.resize(p.c_.size() + m);
    for (std::size_t i = 0; i < p.c_.size(); ++i) r.c_[i + m] = c * p.c_[i];
    r.trim();
    return r;
}

inline QPoly derivative(const QPoly& p) {
    QPoly r;
    if (p.degree() < 1) return r;
    r.c_.reserve(p.c_.size() - 1);
    for (std::size_t k = 1; k < p.c_.size(); ++k)
        r.c_.push_back(p.c_[k] * Integer(static_cast<long>(k)));
    r.trim();
    return r;
}

// Horner evaluation, exact.
inline Rational eval_rational(const QPoly& p, const Rational& x) {
    Rational acc;
    for (std::size_t i = p.coeffs().size(); i-- > 0;)
        acc = acc * x + Rational(p.coeffs()[i]);
    return acc;
}

// Horner evaluation in Real at precision P decimal digits. For x > 0 and
// non-negative coefficients there is no cancellation, so the relative error
// stays below (deg + 2) * 10^(1-P).
inline Real eval_real(const QPoly& p, const Real& x, long digits = Real::default_digits) {
    Real acc = Real::zero(digits);
    const Real xe = x.at_bits(Real::bits_for_digits(digits));
    for (std::size_t i = p.coeffs().size(); i-- > 0;)
        acc = acc * xe + Real::from_integer(p.coeffs()[i], digits);
    return acc;
}

// Integer long division; every elimination step must divide exactly and the
// remainder must vanish (always true for the monic q-factorial divisors this
// library uses). Throws std::domain_error otherwise.
inline QPoly divide_exact(const QPoly& p, const QPoly& d) {
    if (d.is_zero()) throw std::domain_error("QPoly: division by zero polynomial");
    if (p.is_zero()) return QPoly();
    if (p.degree() < d.degree()) throw std::domain_error("QPoly: inexact division");
    std::vector<Integer> rem = p.coeffs();
    const auto& dc = d.coeffs();
    QPoly q;
    q.c_.resize(rem.size() - dc.size() + 1);
    for (std::size_t k = q.c_.size(); k-- > 0;) {
        Integer t = rem[k + dc.size() - 1].div_exact(dc.back());
        if (!t.is_zero()) {
            for (std::size_t j = 0; j < dc.size(); ++j) rem[k + j].sub_mul(t, dc[j]);
        }
        q.c_[k] = std::move(t);
    }
    for (const Integer& r : rem)
        if (!r.is_zero()) throw std::domain_error("QPoly: inexact division");
    q.trim();
    return q;
}

}  // namespace qderange
