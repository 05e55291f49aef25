#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "expbasis/errors.hpp"

namespace expbasis {

/// Exact rational number. Thin wrapper over GMP's mpq_class so the rest of
/// the library never touches GMP types directly.
///
/// Interval endpoints are kept exact: decimal strings parse exactly
/// ("0.3" -> 3/10) and binary doubles convert exactly (every finite double
/// is a rational). The 1-D covering fold relies on this exactness.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(static_cast<signed long>(n)) {}
    Rational(long num, long den) : q_(static_cast<signed long>(num), static_cast<signed long>(den)) {
        if (den == 0) throw ValidationError("rational with zero denominator");
        q_.canonicalize();
    }

    /// Exact conversion of a binary double.
    static Rational from_double(double x);

    /// Parse "[-]digits[.digits]" or "[-]num/den" exactly.
    static Rational parse(const std::string& text);

    double to_double() const { return q_.get_d(); }

    /// Largest integer <= value. Requires the value to fit in a long.
    long floor() const;
    /// value - floor(value), in [0,1).
    Rational frac() const;

    bool is_integer() const { return q_.get_den() == 1; }

    std::string str() const { return q_.get_str(); }  // "num/den" or "num"

    Rational operator-() const { return Rational(-q_); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.q_ == 0) throw ValidationError("division by zero rational");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace expbasis
