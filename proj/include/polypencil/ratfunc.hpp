#pragma once

#include <string>
#include <utility>

#include "polypencil/unipoly.hpp"

namespace polypencil {

/// Rational function num/den in reduced canonical form: den is monic and
/// nonzero, gcd(num, den) = 1, and zero is represented as 0/1.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
    RatFunc(long c) : num_(Rational(c)), den_(Rational(1)) {}
    RatFunc(UniPoly numerator) : num_(std::move(numerator)), den_(Rational(1)) {}
    RatFunc(UniPoly numerator, UniPoly denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        normalize();
    }

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        UniPoly g = gcd(a.den_, b.den_);
        UniPoly bd = exact_div(b.den_, g);
        UniPoly ad = exact_div(a.den_, g);
        return RatFunc(a.num_ * bd + b.num_ * ad, a.den_ * bd);
    }

    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        // cross-cancel before multiplying to keep degrees low
        UniPoly g1 = gcd(a.num_, b.den_);
        UniPoly g2 = gcd(b.num_, a.den_);
        RatFunc r;
        r.num_ = exact_div(a.num_, g1) * exact_div(b.num_, g2);
        r.den_ = exact_div(a.den_, g2) * exact_div(b.den_, g1);
        r.make_den_monic();
        return r;
    }

    RatFunc inverse() const {
        if (is_zero()) throw std::domain_error("inversion of zero rational function");
        RatFunc r;
        r.num_ = den_;
        r.den_ = num_;
        r.make_den_monic();
        return r;
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// Evaluation; throws when point is a pole.
    Rational operator()(const Rational& x) const {
        Rational d = den_(x);
        if (d == 0) throw std::domain_error("evaluation at a pole");
        return num_(x) / d;
    }

    std::string str(const std::string& var = "l") const {
        if (is_polynomial()) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

private:
    void make_den_monic() {
        Rational lead = den_.leading();
        if (lead != 1) {
            Rational inv = Rational(1) / lead;
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = UniPoly(Rational(1));
            return;
        }
        UniPoly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        make_den_monic();
    }

    UniPoly num_, den_;
};

/// Order v with f = (x - point)^v * g, g finite and nonzero at point.
/// Negative v is a pole order; f must be nonzero.
inline int valuation_at(const RatFunc& f, const Rational& point) {
    if (f.is_zero()) throw std::domain_error("valuation of zero rational function");
    return valuation_at(f.num(), point) - valuation_at(f.den(), point);
}

}  // namespace polypencil
