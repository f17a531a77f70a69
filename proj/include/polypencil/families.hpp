#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polypencil/system_matrix.hpp"

namespace polypencil {

// ---------------------------------------------------------------------------
// Frobenius companion form

/// Companion pencil of P in the monomial basis, partitioned with the
/// unimodular shift block as state (bottom-left). Its transfer function
/// is P itself.
inline SystemMatrix build_frobenius(const PolyMatrix& P) {
    int k = P.degree();
    if (k < 2) throw precondition_error("degree k > 1 required");
    int p = P.rows(), m = P.cols();
    PolyMatrix s(p + (k - 1) * m, k * m);

    // top row: [x*P_k + P_{k-1}, P_{k-2}, ..., P_0]
    PolyMatrix head = UniPoly::variable() * PolyMatrix(P.coefficient(k)) + PolyMatrix(P.coefficient(k - 1));
    s.set_block(0, 0, head);
    for (int c = 1; c < k; ++c) s.set_block(0, c * m, P.coefficient(k - 1 - c));

    // shift rows: [-I, xI] along the block diagonal
    for (int r = 0; r < k - 1; ++r)
        for (int i = 0; i < m; ++i) {
            s.at(p + r * m + i, r * m + i) = UniPoly(Rational(-1));
            s.at(p + r * m + i, (r + 1) * m + i) = UniPoly::monomial(1);
        }
    return SystemMatrix(std::move(s), (k - 1) * m, StateLayout::bottom_left);
}

/// Degree-1 reversal of the companion pencil, re-partitioned with the
/// state bottom-right; its transfer function is the degree-k reversal of P.
inline SystemMatrix build_frobenius_rev(const PolyMatrix& P) {
    SystemMatrix fwd = build_frobenius(P);
    return SystemMatrix(fwd.matrix().reversal(1), fwd.state_size(), StateLayout::bottom_right);
}

// ---------------------------------------------------------------------------
// Comrade (colleague) pencils from a three-term recurrence

/// Three-term recurrence alpha_j phi_{j+1} = (x - beta_j) phi_j -
/// gamma_j phi_{j-1}, with phi_{-1} = 0 and phi_0 = 1. Coefficient lists
/// cover indices 0..k-1 and every alpha_j must be nonzero.
struct RecurrenceBasis {
    std::vector<Rational> alphas, betas, gammas;

    void validate(int k) const {
        if (static_cast<int>(alphas.size()) < k || static_cast<int>(betas.size()) < k ||
            static_cast<int>(gammas.size()) < k)
            throw precondition_error("recurrence coefficients must cover indices 0..k-1");
        for (int j = 0; j < k; ++j)
            if (alphas[static_cast<size_t>(j)] == 0)
                throw precondition_error("alpha_j != 0 required");
    }

    /// phi_0 .. phi_{count-1}; deg phi_j = j since the alphas are nonzero.
    std::vector<UniPoly> polynomials(int count) const {
        std::vector<UniPoly> phi;
        phi.push_back(UniPoly(Rational(1)));
        for (int j = 0; j + 1 < count; ++j) {
            UniPoly prev = (j == 0) ? UniPoly() : phi[static_cast<size_t>(j - 1)];
            UniPoly t = UniPoly{-betas[static_cast<size_t>(j)], Rational(1)} * phi[static_cast<size_t>(j)] -
                        gammas[static_cast<size_t>(j)] * prev;
            phi.push_back((Rational(1) / alphas[static_cast<size_t>(j)]) * t);
        }
        return phi;
    }
};

namespace detail {
inline void check_common_shape(const std::vector<ConstMatrix>& coeffs) {
    for (const auto& c : coeffs)
        if (c.rows() != coeffs.front().rows() || c.cols() != coeffs.front().cols())
            throw precondition_error("coefficient matrices must share a common shape");
}
}  // namespace detail

/// Comrade pencil of P = sum_j P_j phi_j, partitioned with the
/// recurrence block as state (bottom-left, unimodular); transfer is P.
inline SystemMatrix build_comrade(const std::vector<ConstMatrix>& coeffs, const RecurrenceBasis& basis) {
    int k = static_cast<int>(coeffs.size()) - 1;
    if (k < 2) throw precondition_error("degree k > 1 required");
    detail::check_common_shape(coeffs);
    basis.validate(k);
    int p = coeffs.front().rows(), m = coeffs.front().cols();
    const Rational& ak = basis.alphas[static_cast<size_t>(k - 1)];

    PolyMatrix s(p + (k - 1) * m, k * m);
    PolyMatrix head = UniPoly{-basis.betas[static_cast<size_t>(k - 1)] / ak, Rational(1) / ak} *
                          PolyMatrix(coeffs[static_cast<size_t>(k)]) +
                      PolyMatrix(coeffs[static_cast<size_t>(k - 1)]);
    s.set_block(0, 0, head);
    s.set_block(0, m, coeffs[static_cast<size_t>(k - 2)] -
                          (basis.gammas[static_cast<size_t>(k - 1)] / ak) * coeffs[static_cast<size_t>(k)]);
    for (int c = 2; c < k; ++c) s.set_block(0, c * m, coeffs[static_cast<size_t>(k - 1 - c)]);

    for (int r = 0; r < k - 1; ++r) {
        int j = k - 2 - r;
        for (int i = 0; i < m; ++i) {
            s.at(p + r * m + i, r * m + i) = UniPoly(-basis.alphas[static_cast<size_t>(j)]);
            s.at(p + r * m + i, (r + 1) * m + i) = UniPoly{-basis.betas[static_cast<size_t>(j)], Rational(1)};
            if (r + 2 < k)
                s.at(p + r * m + i, (r + 2) * m + i) = UniPoly(-basis.gammas[static_cast<size_t>(j)]);
        }
    }
    return SystemMatrix(std::move(s), (k - 1) * m, StateLayout::bottom_left);
}

/// Reversal of the comrade pencil with the state bottom-right. The state
/// is invertible at 0 and the transfer function times
/// rev_{k-1} phi_{k-1} equals the degree-k reversal of P.
inline SystemMatrix build_comrade_rev(const std::vector<ConstMatrix>& coeffs, const RecurrenceBasis& basis) {
    SystemMatrix fwd = build_comrade(coeffs, basis);
    return SystemMatrix(fwd.matrix().reversal(1), fwd.state_size(), StateLayout::bottom_right);
}

/// P expressed in the recurrence basis: returns C_0..C_k with
/// P = sum_j C_j phi_j. Requires the basis to cover index deg(P) - 1.
inline std::vector<ConstMatrix> to_basis_coefficients(const PolyMatrix& P, const RecurrenceBasis& basis) {
    int k = std::max(P.degree(), 0);
    std::vector<UniPoly> phi = basis.polynomials(k + 1);
    std::vector<ConstMatrix> out(static_cast<size_t>(k) + 1, ConstMatrix(P.rows(), P.cols()));
    PolyMatrix rem = P;
    for (int j = k; j >= 0; --j) {
        ConstMatrix cj = (Rational(1) / phi[static_cast<size_t>(j)].leading()) * rem.coefficient(j);
        out[static_cast<size_t>(j)] = cj;
        rem = rem - phi[static_cast<size_t>(j)] * PolyMatrix(cj);
    }
    return out;
}

// ---------------------------------------------------------------------------
// CORK pencils

/// Coefficient pairs (A_i, B_i), a basis p_0..p_{k-1} with p_0 = 1, and a
/// (k-1) x k relation X - xY annihilating [p_{k-1} ... p_0]^T with full
/// rank everywhere (certified by a trivial Smith form).
struct CorkSpec {
    std::vector<std::pair<ConstMatrix, ConstMatrix>> coeff_pairs;  // (A_i, B_i), i = 0..k-1
    ConstMatrix X, Y;
    std::vector<UniPoly> basis;  // p_0 .. p_{k-1}

    int order() const { return static_cast<int>(basis.size()); }
    int out_rows() const { return coeff_pairs.front().first.rows(); }
    int out_cols() const { return coeff_pairs.front().first.cols(); }

    PolyMatrix relation() const {
        PolyMatrix r = PolyMatrix(X) - UniPoly::variable() * PolyMatrix(Y);
        return r;
    }

    /// Basis vector [p_{k-1} ... p_0]^T as a k x 1 polynomial matrix.
    PolyMatrix basis_column() const {
        int k = order();
        PolyMatrix v(k, 1);
        for (int i = 0; i < k; ++i) v.at(i, 0) = basis[static_cast<size_t>(k - 1 - i)];
        return v;
    }

    PolyMatrix declared_poly() const {
        PolyMatrix acc(out_rows(), out_cols());
        for (int i = 0; i < order(); ++i) {
            const auto& [a, b] = coeff_pairs[static_cast<size_t>(i)];
            PolyMatrix coeff = PolyMatrix(a) - UniPoly::variable() * PolyMatrix(b);
            acc = acc + basis[static_cast<size_t>(i)] * coeff;
        }
        return acc;
    }

    void validate() const {
        int k = order();
        if (k < 2) throw precondition_error("degree k > 1 required");
        if (static_cast<int>(coeff_pairs.size()) != k)
            throw precondition_error("one coefficient pair per basis polynomial required");
        for (const auto& [a, b] : coeff_pairs)
            if (a.rows() != out_rows() || a.cols() != out_cols() || b.rows() != out_rows() ||
                b.cols() != out_cols())
                throw precondition_error("coefficient matrices must share a common shape");
        if (!basis.front().is_one()) throw precondition_error("p_0 = 1 required");
        if (X.rows() != k - 1 || X.cols() != k || Y.rows() != k - 1 || Y.cols() != k)
            throw precondition_error("relation must have shape (k-1) x k");
        if (!(relation() * basis_column()).is_zero())
            throw precondition_error("(X - xY) p(x) = 0 violated");
        SmithData s = smith_form(relation());
        bool trivial = static_cast<int>(s.invariant_factors.size()) == k - 1;
        for (const auto& f : s.invariant_factors) trivial = trivial && f.is_one();
        if (!trivial) throw precondition_error("rank(X - x0 Y) = k-1 for all x0 violated");
    }
};

/// CORK pencil: coefficient row over the relation block, state = the
/// leading (k-1)m columns of the relation (unimodular); transfer is the
/// declared polynomial.
inline SystemMatrix build_cork(const CorkSpec& spec) {
    spec.validate();
    int k = spec.order(), p = spec.out_rows(), m = spec.out_cols();
    PolyMatrix s(p + (k - 1) * m, k * m);
    for (int i = 0; i < k; ++i) {
        const auto& [a, b] = spec.coeff_pairs[static_cast<size_t>(i)];
        s.set_block(0, (k - 1 - i) * m, PolyMatrix(a) - UniPoly::variable() * PolyMatrix(b));
    }
    PolyMatrix rel = spec.relation();
    for (int i = 0; i < k - 1; ++i)
        for (int j = 0; j < k; ++j) {
            const UniPoly& e = rel.at(i, j);
            if (e.is_zero()) continue;
            for (int t = 0; t < m; ++t) s.at(p + i * m + t, j * m + t) = e;
        }
    return SystemMatrix(std::move(s), (k - 1) * m, StateLayout::bottom_left);
}

/// Reversal of the CORK pencil with state = reversal of the trailing
/// (k-1)m relation columns (bottom-right, invertible at 0). Requires the
/// extra hypotheses rank Y = k-1 and deg p_{k-1} = k-1; then transfer
/// times rev_{k-1} p_{k-1} equals the degree-k reversal.
inline SystemMatrix build_cork_rev(const CorkSpec& spec) {
    spec.validate();
    int k = spec.order();
    if (spec.Y.rank() != k - 1) throw precondition_error("rank Y = k-1 violated");
    if (spec.basis.back().degree() != k - 1)
        throw precondition_error("deg p_{k-1} = k-1 violated");
    SystemMatrix fwd = build_cork(spec);
    return SystemMatrix(fwd.matrix().reversal(1), fwd.state_size(), StateLayout::bottom_right);
}

/// Monomial-basis CORK spec reproducing the Frobenius pencil exactly.
inline CorkSpec monomial_cork_spec(const PolyMatrix& P) {
    int k = P.degree();
    if (k < 2) throw precondition_error("degree k > 1 required");
    CorkSpec spec;
    ConstMatrix zero(P.rows(), P.cols());
    for (int i = 0; i < k; ++i) {
        ConstMatrix b = (i == k - 1) ? -P.coefficient(k) : zero;
        spec.coeff_pairs.emplace_back(P.coefficient(i), b);
        spec.basis.push_back(UniPoly::monomial(i));
    }
    spec.X = ConstMatrix(k - 1, k);
    spec.Y = ConstMatrix(k - 1, k);
    for (int r = 0; r < k - 1; ++r) {
        spec.X.at(r, r) = -1;
        spec.Y.at(r, r + 1) = -1;
    }
    return spec;
}

/// CORK spec over a recurrence basis; the relation rows restate the
/// recurrence and the leading coefficients fold the top basis element in.
inline CorkSpec cork_spec_from_recurrence(const std::vector<ConstMatrix>& coeffs,
                                          const RecurrenceBasis& basis) {
    int k = static_cast<int>(coeffs.size()) - 1;
    if (k < 2) throw precondition_error("degree k > 1 required");
    detail::check_common_shape(coeffs);
    basis.validate(k);
    const Rational& ak = basis.alphas[static_cast<size_t>(k - 1)];

    CorkSpec spec;
    spec.basis = basis.polynomials(k);
    ConstMatrix zero(coeffs.front().rows(), coeffs.front().cols());
    for (int i = 0; i < k; ++i) {
        ConstMatrix a = coeffs[static_cast<size_t>(i)];
        ConstMatrix b = zero;
        if (i == k - 1) {
            a = a - (basis.betas[static_cast<size_t>(k - 1)] / ak) * coeffs[static_cast<size_t>(k)];
            b = (Rational(-1) / ak) * coeffs[static_cast<size_t>(k)];
        }
        if (i == k - 2)
            a = a - (basis.gammas[static_cast<size_t>(k - 1)] / ak) * coeffs[static_cast<size_t>(k)];
        spec.coeff_pairs.emplace_back(std::move(a), std::move(b));
    }
    spec.X = ConstMatrix(k - 1, k);
    spec.Y = ConstMatrix(k - 1, k);
    for (int r = 0; r < k - 1; ++r) {
        int j = k - 2 - r;
        spec.X.at(r, r) = basis.alphas[static_cast<size_t>(j)];
        spec.X.at(r, r + 1) = basis.betas[static_cast<size_t>(j)];
        if (r + 2 < k) spec.X.at(r, r + 2) = basis.gammas[static_cast<size_t>(j)];
        spec.Y.at(r, r + 1) = 1;
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Block Kronecker pencils

/// Middle pencil M of shape (eta+1)p x (eps+1)m bordered by shift
/// blocks; optional invertible extensions Yext, Zext multiply the
/// borders. One-block cases eps = 0 or eta = 0 are allowed.
struct BlockKroneckerSpec {
    Pencil M;
    int eta = 0, eps = 0;
    int p = 1, m = 1;
    std::optional<ConstMatrix> Yext;
    std::optional<ConstMatrix> Zext;

    void validate() const {
        if (p < 1 || m < 1) throw precondition_error("positive block sizes required");
        if (eta < 0 || eps < 0 || (eta == 0 && eps == 0))
            throw precondition_error("eps >= 1 or eta >= 1 required");
        if (M.rows() != (eta + 1) * p || M.cols() != (eps + 1) * m)
            throw precondition_error("middle pencil must have shape (eta+1)p x (eps+1)m");
        if (Yext && (Yext->rows() != eps * m || Yext->cols() != eps * m))
            throw precondition_error("Y extension must have shape (eps m) x (eps m)");
        if (Zext && (Zext->rows() != eta * p || Zext->cols() != eta * p))
            throw precondition_error("Z extension must have shape (eta p) x (eta p)");
    }

    void validate_extended() const {
        validate();
        if (eps > 0 && (!Yext || Yext->determinant() == 0))
            throw precondition_error("Y must be invertible");
        if (eta > 0 && (!Zext || Zext->determinant() == 0))
            throw precondition_error("Z must be invertible");
    }

    /// The polynomial the pencil linearizes:
    /// (Lambda_eta^T (x) I_p) (x M_1 + M_0) (Lambda_eps (x) I_m).
    PolyMatrix induced_poly() const {
        return build_lambda(eta + 1, p).transpose() * M.to_poly() * build_lambda(eps + 1, m);
    }
};

namespace detail {
inline SystemMatrix assemble_block_kronecker(const BlockKroneckerSpec& spec, bool extended) {
    int eta = spec.eta, eps = spec.eps, p = spec.p, m = spec.m;
    int rows = (eta + 1) * p + eps * m;
    int cols = (eps + 1) * m + eta * p;
    PolyMatrix s(rows, cols);
    s.set_block(0, 0, spec.M.to_poly());
    if (eta > 0) {
        PolyMatrix right = build_lk(eta, p).transpose();
        if (extended) right = right * PolyMatrix(spec.Zext->transpose());
        s.set_block(0, (eps + 1) * m, right);
    }
    if (eps > 0) {
        PolyMatrix bottom = build_lk(eps, m);
        if (extended) bottom = PolyMatrix(*spec.Yext) * bottom;
        s.set_block((eta + 1) * p, 0, bottom);
    }
    // state = first eta*p rows plus the shift rows, first eps*m columns
    // plus the shift columns; the output row and input column blocks sit
    // between them
    std::vector<int> srows, scols;
    for (int i = 0; i < eta * p; ++i) srows.push_back(i);
    for (int i = 0; i < eps * m; ++i) srows.push_back((eta + 1) * p + i);
    for (int j = 0; j < eps * m; ++j) scols.push_back(j);
    for (int j = 0; j < eta * p; ++j) scols.push_back((eps + 1) * m + j);
    return SystemMatrix(std::move(s), std::move(srows), std::move(scols));
}

inline SystemMatrix reverse_block_kronecker(const SystemMatrix& fwd, const BlockKroneckerSpec& spec) {
    // reversed partition: state = everything below the first p rows and
    // right of the first m columns
    return SystemMatrix(fwd.matrix().reversal(1), spec.eta * spec.p + spec.eps * spec.m,
                        StateLayout::bottom_right);
}
}  // namespace detail

/// Block Kronecker pencil with its system-matrix partition (state
/// unimodular for any middle pencil) and the induced polynomial.
inline std::pair<SystemMatrix, PolyMatrix> build_block_kronecker(const BlockKroneckerSpec& spec) {
    spec.validate();
    return {detail::assemble_block_kronecker(spec, false), spec.induced_poly()};
}

/// Reversal partition; transfer is rev_{eta+eps+1} of the induced polynomial.
inline SystemMatrix build_block_kronecker_rev(const BlockKroneckerSpec& spec) {
    spec.validate();
    return detail::reverse_block_kronecker(detail::assemble_block_kronecker(spec, false), spec);
}

/// Extended block Kronecker pencil diag(I, Y) C_K diag(I, Z^T); requires
/// invertible Y and Z and induces the same polynomial as C_K.
inline std::pair<SystemMatrix, PolyMatrix> build_extended_bk(const BlockKroneckerSpec& spec) {
    spec.validate_extended();
    return {detail::assemble_block_kronecker(spec, true), spec.induced_poly()};
}

inline SystemMatrix build_extended_bk_rev(const BlockKroneckerSpec& spec) {
    spec.validate_extended();
    return detail::reverse_block_kronecker(detail::assemble_block_kronecker(spec, true), spec);
}

// ---------------------------------------------------------------------------
// Rational matrices: polynomial part plus strictly proper remainder

/// Entrywise division split R = P + R_sp with R_sp strictly proper.
inline std::pair<PolyMatrix, RatMatrix> split_polynomial_part(const RatMatrix& r) {
    PolyMatrix poly(r.rows(), r.cols());
    RatMatrix sp(r.rows(), r.cols());
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) {
            const RatFunc& f = r.at(i, j);
            if (f.is_zero()) continue;
            auto [q, rem] = divmod(f.num(), f.den());
            poly.at(i, j) = q;
            sp.at(i, j) = RatFunc(rem, f.den());
        }
    return {std::move(poly), std::move(sp)};
}

/// State-space realization C (xI - A)^{-1} B of a strictly proper
/// rational matrix.
struct Realization {
    ConstMatrix A, B, C;

    int order() const { return A.rows(); }
    int out_rows() const { return C.rows(); }
    int out_cols() const { return B.cols(); }

    void validate() const {
        if (A.rows() != A.cols()) throw precondition_error("state matrix must be square");
        if (B.rows() != A.rows() || C.cols() != A.rows())
            throw precondition_error("realization shape mismatch");
    }
};

/// Controllability and observability rank tests, both exact.
inline bool is_minimal(const Realization& real) {
    real.validate();
    int s = real.order();
    if (s == 0) return true;
    ConstMatrix ctrb = real.B, obsv = real.C;
    ConstMatrix power_b = real.B, power_c = real.C;
    for (int i = 1; i < s; ++i) {
        power_b = real.A * power_b;
        power_c = power_c * real.A;
        ctrb = ctrb.hcat(power_b);
        obsv = obsv.vcat(power_c);
    }
    return ctrb.rank() == s && obsv.rank() == s;
}

/// Linear system matrix of P + C(xI - A)^{-1}B from a realization of the
/// strictly proper part and a pencil system matrix of the polynomial
/// part with unimodular state. State block diag(xI - A, A_psm), top-left.
inline SystemMatrix assemble_rational(const Realization& real, const SystemMatrix& psm) {
    real.validate();
    if (!psm.is_pencil()) throw precondition_error("polynomial part must be a pencil");
    if (!psm.state_block().is_unimodular())
        throw precondition_error("polynomial part needs a unimodular state block");
    if (real.out_rows() != psm.num_outputs() || real.out_cols() != psm.num_inputs())
        throw precondition_error("realization and polynomial part shapes disagree");

    int s = real.order(), n = psm.state_size();
    int p = psm.num_outputs(), m = psm.num_inputs();
    PolyMatrix L(s + n + p, s + n + m);
    PolyMatrix shift = UniPoly::variable() * PolyMatrix(ConstMatrix::identity(s)) - PolyMatrix(real.A);
    L.set_block(0, 0, shift);
    L.set_block(0, s + n, real.B);
    L.set_block(s, s, psm.state_block());
    L.set_block(s, s + n, psm.input_block());
    L.set_block(s + n, 0, -real.C);
    L.set_block(s + n, s, psm.neg_output_block());
    L.set_block(s + n, s + n, psm.feedthrough_block());
    return SystemMatrix(std::move(L), s + n, StateLayout::top_left);
}

// ---------------------------------------------------------------------------
// Helpers shared by the demo, the CLI and the test suites

/// A middle pencil depositing the coefficients of P so that the induced
/// polynomial of the block Kronecker pencil is P itself. Needs
/// deg P <= eta + eps + 1.
inline BlockKroneckerSpec block_kronecker_spec_for(const PolyMatrix& P, int eps, int eta) {
    int k = eta + eps + 1;
    if (P.degree() > k) throw precondition_error("degree exceeds eta + eps + 1");
    int p = P.rows(), m = P.cols();
    ConstMatrix m0((eta + 1) * p, (eps + 1) * m), m1((eta + 1) * p, (eps + 1) * m);

    auto put = [&](ConstMatrix& dst, int bi, int bj, const ConstMatrix& block) {
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < m; ++j) dst.at(bi * p + i, bj * m + j) = block.at(i, j);
    };
    put(m1, 0, 0, P.coefficient(k));
    put(m0, 0, 0, P.coefficient(k - 1));
    for (int j = 1; j <= eps; ++j) put(m0, 0, j, P.coefficient(k - 1 - j));
    for (int i = 1; i <= eta; ++i) put(m0, i, eps, P.coefficient(eta - i));

    BlockKroneckerSpec spec;
    spec.M = Pencil(std::move(m0), std::move(m1));
    spec.eta = eta;
    spec.eps = eps;
    spec.p = p;
    spec.m = m;
    return spec;
}

}  // namespace polypencil
