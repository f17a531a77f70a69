#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace polypencil {

/// Arbitrary-precision integers and rationals (GMP-backed).
///
/// Rationals are kept in canonical form at all times: lowest terms,
/// positive denominator, zero represented as 0/1. Equality is therefore
/// structural equality.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Rational make_rational(Int num, Int den) {
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

inline Int numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
    std::string s = numerator_of(q).str();
    if (!is_integer(q))
        s += "/" + denominator_of(q).str();
    return s;
}

/// Parses "n" or "n/d" with optional sign, arbitrary precision.
inline Rational rational_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational: '" + text + "'");
    }
}

}  // namespace polypencil
