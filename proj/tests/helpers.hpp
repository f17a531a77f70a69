#pragma once

#include "polypencil/polypencil.hpp"

namespace polypencil::testing {

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

/// Shorthand for c * x^d.
inline UniPoly xp(int d, long num = 1, long den = 1) {
    return UniPoly::monomial(d, q(num, den));
}

inline const UniPoly x = UniPoly::variable();

inline PolyMatrix scalar_poly(const UniPoly& p) { return PolyMatrix{{p}}; }

}  // namespace polypencil::testing
