#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "polypencil/numbers.hpp"

namespace polypencil {

/// Univariate polynomial over the rationals, coefficients stored by
/// ascending power. The zero polynomial has an empty coefficient list;
/// otherwise the last coefficient is nonzero.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(const Rational& constant) { c_.push_back(constant); trim(); }
    UniPoly(long constant) : UniPoly(Rational(constant)) {}
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    /// The variable itself.
    static UniPoly variable() { return monomial(1); }

    static UniPoly monomial(int deg, const Rational& coeff = Rational(1)) {
        if (coeff == 0) return UniPoly();
        std::vector<Rational> c(static_cast<size_t>(deg) + 1, Rational(0));
        c.back() = coeff;
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Rational coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
        return c_[static_cast<size_t>(i)];
    }

    const Rational& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    const std::vector<Rational>& coeffs() const { return c_; }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UniPoly(std::move(c));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }

    friend UniPoly operator*(const Rational& s, const UniPoly& p) {
        if (s == 0) return UniPoly();
        UniPoly r = p;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    /// Euclidean division: returns (q, r) with *this = q*b + r, deg r < deg b.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw std::domain_error("division by zero polynomial");
        if (a.degree() < b.degree()) return {UniPoly(), a};
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quo(static_cast<size_t>(a.degree() - b.degree()) + 1, Rational(0));
        const Rational& lead = b.leading();
        for (int d = a.degree(); d >= b.degree(); --d) {
            Rational f = rem[static_cast<size_t>(d)] / lead;
            if (f == 0) continue;
            quo[static_cast<size_t>(d - b.degree())] = f;
            for (int i = 0; i <= b.degree(); ++i)
                rem[static_cast<size_t>(d - b.degree() + i)] -= f * b.c_[static_cast<size_t>(i)];
        }
        return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
    }

    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

    /// Exact quotient; throws if b does not divide a.
    friend UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
        return q;
    }

    Rational operator()(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return (Rational(1) / leading()) * *this;
    }

    /// Positive rational c with (1/c) * this integral and content-free.
    Rational content() const {
        if (is_zero()) return Rational(0);
        Int num_gcd(0), den_lcm(1);
        for (const auto& c : c_) {
            if (c == 0) continue;
            num_gcd = boost::multiprecision::gcd(num_gcd, numerator_of(c));
            den_lcm = boost::multiprecision::lcm(den_lcm, denominator_of(c));
        }
        return make_rational(num_gcd, den_lcm);
    }

    /// Content-free integral multiple of this polynomial; keeps the sign
    /// of the leading coefficient.
    UniPoly primitive_part() const {
        if (is_zero()) return *this;
        return (Rational(1) / content()) * *this;
    }

    /// Degree-ell reversal: the coefficient list flipped into ell+1 slots.
    /// Sends p to x^ell * p(1/x); requires ell >= deg p.
    UniPoly reversal(int ell) const {
        if (is_zero()) return UniPoly();
        if (ell < degree())
            throw precondition_error("reversal order below polynomial degree");
        std::vector<Rational> c(static_cast<size_t>(ell) + 1, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i)
            c[static_cast<size_t>(ell) - i] = c_[i];
        return UniPoly(std::move(c));
    }

    UniPoly pow(int e) const {
        UniPoly r(Rational(1));
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

    std::string str(const std::string& var = "l") const {
        if (is_zero()) return "0";
        std::string out;
        for (int d = degree(); d >= 0; --d) {
            const Rational& cd = c_[static_cast<size_t>(d)];
            if (cd == 0) continue;
            if (!out.empty()) out += (cd > 0) ? " + " : " - ";
            else if (cd < 0) out += "-";
            Rational mag = (cd < 0) ? Rational(-cd) : cd;
            bool show_coeff = (mag != 1) || d == 0;
            if (show_coeff) out += to_string(mag);
            if (d > 0) {
                if (show_coeff) out += "*";
                out += var;
                if (d > 1) out += "^" + std::to_string(d);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Monic greatest common divisor; errors when both inputs are zero.
inline UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero())
        throw std::domain_error("gcd of two zero polynomials");
    // primitive remainders bound coefficient growth
    UniPoly x = a.primitive_part(), y = b.primitive_part();
    while (!y.is_zero()) {
        UniPoly r = x % y;
        x = std::move(y);
        y = r.primitive_part();
    }
    return x.monic();
}

inline UniPoly lcm(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    return exact_div(a * b, gcd(a, b)).monic();
}

/// Bezout data: u*a + v*b = g with g monic.
struct ExtendedGcd {
    UniPoly g, u, v;
};

inline ExtendedGcd xgcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero())
        throw std::domain_error("gcd of two zero polynomials");
    UniPoly r0 = a, r1 = b;
    UniPoly u0(Rational(1)), u1, v0, v1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        UniPoly u2 = u0 - q * u1;
        UniPoly v2 = v0 - q * v1;
        r0 = std::move(r1);
        u0 = std::move(u1);
        v0 = std::move(v1);
        r1 = std::move(r);
        u1 = std::move(u2);
        v1 = std::move(v2);
        // scale the whole Bezout row primitive; the identity survives
        if (!r1.is_zero()) {
            Rational inv = Rational(1) / r1.content();
            r1 = inv * r1;
            u1 = inv * u1;
            v1 = inv * v1;
        }
    }
    Rational inv = Rational(1) / r0.leading();
    return {inv * r0, inv * u0, inv * v0};
}

/// Multiplicity of (x - point) in p; p must be nonzero.
inline int valuation_at(const UniPoly& p, const Rational& point) {
    if (p.is_zero()) throw std::domain_error("valuation of zero polynomial");
    UniPoly factor{-point, Rational(1)};
    UniPoly q = p;
    int v = 0;
    while (q(point) == 0) {
        q = exact_div(q, factor);
        ++v;
    }
    return v;
}

}  // namespace polypencil
