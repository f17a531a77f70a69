#pragma once

#include <optional>
#include <vector>

#include "polypencil/matrices.hpp"

namespace polypencil {

/// Invariant factors of a polynomial matrix, monic and forming a
/// divisibility chain. Transform witnesses satisfy left * M * right =
/// the factors padded into the matrix shape.
struct SmithData {
    std::vector<UniPoly> invariant_factors;
    std::optional<PolyMatrix> left;
    std::optional<PolyMatrix> right;

    PolyMatrix padded_diagonal(int rows, int cols) const {
        PolyMatrix d(rows, cols);
        for (size_t i = 0; i < invariant_factors.size(); ++i)
            d.at(static_cast<int>(i), static_cast<int>(i)) = invariant_factors[i];
        return d;
    }
};

/// Smith form: move a minimal-degree entry to the pivot, clear its row
/// and column, absorb any entry the pivot fails to divide, normalize
/// monic. Each non-divisible entry is cleared by one 2x2 Bezout
/// transform (determinant 1), and every touched line is rescaled to
/// integral content-free form; both are needed to keep the coefficient
/// swell polynomial.
inline SmithData smith_form(const PolyMatrix& input, bool with_transforms = false) {
    PolyMatrix m = input;
    int rows = m.rows(), cols = m.cols();
    PolyMatrix U = PolyMatrix::identity(rows);
    PolyMatrix V = PolyMatrix::identity(cols);

    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols; ++j) std::swap(m.at(a, j), m.at(b, j));
        if (with_transforms)
            for (int j = 0; j < rows; ++j) std::swap(U.at(a, j), U.at(b, j));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(m.at(i, a), m.at(i, b));
        if (with_transforms)
            for (int i = 0; i < cols; ++i) std::swap(V.at(i, a), V.at(i, b));
    };
    auto add_row_multiple = [&](int dst, int src, const UniPoly& f) {
        for (int j = 0; j < cols; ++j) m.at(dst, j) -= f * m.at(src, j);
        if (with_transforms)
            for (int j = 0; j < rows; ++j) U.at(dst, j) -= f * U.at(src, j);
    };
    auto add_col_multiple = [&](int dst, int src, const UniPoly& f) {
        for (int i = 0; i < rows; ++i) m.at(i, dst) -= f * m.at(i, src);
        if (with_transforms)
            for (int i = 0; i < cols; ++i) V.at(i, dst) -= f * V.at(i, src);
    };
    auto scale_row = [&](int r, const Rational& s) {
        for (int j = 0; j < cols; ++j) m.at(r, j) = s * m.at(r, j);
        if (with_transforms)
            for (int j = 0; j < rows; ++j) U.at(r, j) = s * U.at(r, j);
    };
    auto scale_col = [&](int c, const Rational& s) {
        for (int i = 0; i < rows; ++i) m.at(i, c) = s * m.at(i, c);
        if (with_transforms)
            for (int i = 0; i < cols; ++i) V.at(i, c) = s * V.at(i, c);
    };
    auto line_content = [&](int line, bool row) {
        Int num_gcd(0), den_lcm(1);
        int count = row ? cols : rows;
        for (int i = 0; i < count; ++i) {
            const UniPoly& e = row ? m.at(line, i) : m.at(i, line);
            for (const auto& coeff : e.coeffs()) {
                if (coeff == 0) continue;
                num_gcd = boost::multiprecision::gcd(num_gcd, numerator_of(coeff));
                den_lcm = boost::multiprecision::lcm(den_lcm, denominator_of(coeff));
            }
        }
        return num_gcd == 0 ? Rational(0) : make_rational(den_lcm, num_gcd);
    };
    auto normalize_row = [&](int r) {
        Rational s = line_content(r, true);
        if (s != 0 && s != 1) scale_row(r, s);
    };
    auto normalize_col = [&](int c) {
        Rational s = line_content(c, false);
        if (s != 0 && s != 1) scale_col(c, s);
    };
    // rows t and i get [[u, v], [-e/g, p/g]] applied from the left,
    // sending the pair (pivot p, entry e) to (g, 0) in one step
    auto bezout_rows = [&](int t, int i, const ExtendedGcd& bez, const UniPoly& p_over_g,
                           const UniPoly& e_over_g) {
        for (int j = 0; j < cols; ++j) {
            UniPoly top = bez.u * m.at(t, j) + bez.v * m.at(i, j);
            m.at(i, j) = p_over_g * m.at(i, j) - e_over_g * m.at(t, j);
            m.at(t, j) = std::move(top);
        }
        if (with_transforms)
            for (int j = 0; j < rows; ++j) {
                UniPoly top = bez.u * U.at(t, j) + bez.v * U.at(i, j);
                U.at(i, j) = p_over_g * U.at(i, j) - e_over_g * U.at(t, j);
                U.at(t, j) = std::move(top);
            }
    };
    auto bezout_cols = [&](int t, int j, const ExtendedGcd& bez, const UniPoly& p_over_g,
                           const UniPoly& e_over_g) {
        for (int i = 0; i < rows; ++i) {
            UniPoly left = bez.u * m.at(i, t) + bez.v * m.at(i, j);
            m.at(i, j) = p_over_g * m.at(i, j) - e_over_g * m.at(i, t);
            m.at(i, t) = std::move(left);
        }
        if (with_transforms)
            for (int i = 0; i < cols; ++i) {
                UniPoly left = bez.u * V.at(i, t) + bez.v * V.at(i, j);
                V.at(i, j) = p_over_g * V.at(i, j) - e_over_g * V.at(i, t);
                V.at(i, t) = std::move(left);
            }
    };

    for (int i = 0; i < rows; ++i) normalize_row(i);

    int t = 0;
    int limit = std::min(rows, cols);
    while (t < limit) {
        // minimal-degree nonzero entry in the trailing submatrix
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (m.at(i, j).is_zero()) continue;
                if (pi < 0 || m.at(i, j).degree() < m.at(pi, pj).degree()) { pi = i; pj = j; }
            }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        for (;;) {
            bool pivot_changed = false;
            for (int i = t + 1; i < rows; ++i) {
                if (m.at(i, t).is_zero()) continue;
                auto [q, r] = divmod(m.at(i, t), m.at(t, t));
                if (r.is_zero()) {
                    add_row_multiple(i, t, q);
                } else {
                    ExtendedGcd bez = xgcd(m.at(t, t), m.at(i, t));
                    bezout_rows(t, i, bez, exact_div(m.at(t, t), bez.g),
                                exact_div(m.at(i, t), bez.g));
                    normalize_row(t);
                    pivot_changed = true;
                }
                normalize_row(i);
            }
            for (int j = t + 1; j < cols; ++j) {
                if (m.at(t, j).is_zero()) continue;
                auto [q, r] = divmod(m.at(t, j), m.at(t, t));
                if (r.is_zero()) {
                    add_col_multiple(j, t, q);
                } else {
                    ExtendedGcd bez = xgcd(m.at(t, t), m.at(t, j));
                    bezout_cols(t, j, bez, exact_div(m.at(t, t), bez.g),
                                exact_div(m.at(t, j), bez.g));
                    normalize_col(t);
                    pivot_changed = true;
                }
                normalize_col(j);
            }
            if (pivot_changed) continue;  // row pass must be redone

            bool column_clear = true;
            for (int i = t + 1; i < rows; ++i) column_clear = column_clear && m.at(i, t).is_zero();
            if (!column_clear) continue;

            // pivot row and column are clear; enforce divisibility of the rest
            bool fixed = false;
            for (int i = t + 1; i < rows && !fixed; ++i)
                for (int j = t + 1; j < cols && !fixed; ++j) {
                    if (m.at(i, j).is_zero()) continue;
                    if (!(m.at(i, j) % m.at(t, t)).is_zero()) {
                        add_row_multiple(t, i, UniPoly(Rational(-1)));
                        fixed = true;
                    }
                }
            if (!fixed) break;
        }
        scale_row(t, Rational(1) / m.at(t, t).leading());
        ++t;
    }

    SmithData out;
    for (int i = 0; i < t; ++i) out.invariant_factors.push_back(m.at(i, i));
    if (with_transforms) {
        out.left = std::move(U);
        out.right = std::move(V);
    }
    return out;
}

/// Brute-force Smith data from gcds of all i x i minors; the independent
/// cross-check for smith_form. Refuses inputs past the desk-scale budget.
inline SmithData gcd_minors_oracle(const PolyMatrix& m) {
    int rows = m.rows(), cols = m.cols();
    int limit = std::min(rows, cols);

    long total = 0;
    for (int k = 1; k <= limit; ++k) {
        auto binom = [](int n, int r) {
            long v = 1;
            for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
            return v;
        };
        total += binom(rows, k) * binom(cols, k);
    }
    if (total > 10000) throw precondition_error("minor enumeration exceeds the brute-force budget");

    auto combinations = [](int n, int k) {
        std::vector<std::vector<int>> out;
        std::vector<int> idx(static_cast<size_t>(k));
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            out.push_back(idx);
            int i = k - 1;
            while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        }
        return out;
    };

    SmithData out;
    UniPoly prev(Rational(1));
    for (int k = 1; k <= limit; ++k) {
        UniPoly g;
        for (const auto& ri : combinations(rows, k))
            for (const auto& ci : combinations(cols, k)) {
                UniPoly det = m.submatrix(ri, ci).determinant();
                if (det.is_zero()) continue;
                g = g.is_zero() ? det.monic() : gcd(g, det);
                if (g.is_one()) goto done;  // gcd cannot shrink further
            }
    done:
        if (g.is_zero()) break;  // all k x k minors vanish: rank is k-1
        out.invariant_factors.push_back(exact_div(g, prev).monic());
        prev = g;
    }
    return out;
}

/// Invariant rational functions eps_i/psi_i of a rational matrix;
/// numerator chain ascends, denominator chain descends.
struct SMcMData {
    std::vector<UniPoly> numerators;
    std::vector<UniPoly> denominators;
    int normal_rank = 0;
};

inline SMcMData smith_mcmillan(const RatMatrix& g) {
    // clear denominators with their monic lcm, take the Smith form,
    // then reduce each factor against the common denominator
    UniPoly d(Rational(1));
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (!g.at(i, j).is_zero()) d = lcm(d, g.at(i, j).den());

    PolyMatrix n(g.rows(), g.cols());
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            if (g.at(i, j).is_zero()) continue;
            n.at(i, j) = g.at(i, j).num() * exact_div(d, g.at(i, j).den());
        }

    SmithData smith = smith_form(n);
    SMcMData out;
    out.normal_rank = static_cast<int>(smith.invariant_factors.size());
    for (const auto& f : smith.invariant_factors) {
        UniPoly common = gcd(f, d);
        out.numerators.push_back(exact_div(f, common).monic());
        out.denominators.push_back(exact_div(d, common).monic());
    }
    return out;
}

/// Valuations of the invariant rational functions at a point, sorted
/// nondecreasing; negative entries are pole orders, positive zero orders.
struct LocalOrders {
    Rational point;
    std::vector<int> orders;

    friend bool operator==(const LocalOrders& a, const LocalOrders& b) {
        return a.point == b.point && a.orders == b.orders;
    }
};

inline LocalOrders local_orders_at(const RatMatrix& g, const Rational& point) {
    SMcMData smcm = smith_mcmillan(g);
    LocalOrders out;
    out.point = point;
    for (int i = 0; i < smcm.normal_rank; ++i)
        out.orders.push_back(valuation_at(smcm.numerators[static_cast<size_t>(i)], point) -
                             valuation_at(smcm.denominators[static_cast<size_t>(i)], point));
    return out;
}

inline LocalOrders local_orders_at(const PolyMatrix& m, const Rational& point) {
    return local_orders_at(RatMatrix(m), point);
}

/// Same normal rank and identical invariant orders at 0.
inline bool equivalent_at_zero(const RatMatrix& g1, const RatMatrix& g2) {
    if (g1.rows() != g2.rows() || g1.cols() != g2.cols())
        throw std::invalid_argument("equivalence check on mismatched dimensions");
    return local_orders_at(g1, Rational(0)) == local_orders_at(g2, Rational(0));
}

}  // namespace polypencil
