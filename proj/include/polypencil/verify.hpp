#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "polypencil/families.hpp"

namespace polypencil {

struct VerifyOptions {
    bool with_witnesses = true;
    bool with_smith_padding = true;
};

namespace detail {
/// Permutations gathering state rows/columns first, so the canonical
/// arrangement is row_perm * S * col_perm.
inline std::pair<PolyMatrix, PolyMatrix> gathering_permutations(const SystemMatrix& sm) {
    std::vector<int> ri = sm.state_rows(), ci = sm.state_cols();
    ri.insert(ri.end(), sm.output_rows().begin(), sm.output_rows().end());
    ci.insert(ci.end(), sm.input_cols().begin(), sm.input_cols().end());
    PolyMatrix pr(sm.matrix().rows(), sm.matrix().rows());
    PolyMatrix pc(sm.matrix().cols(), sm.matrix().cols());
    for (size_t i = 0; i < ri.size(); ++i) pr.at(static_cast<int>(i), ri[i]) = UniPoly(Rational(1));
    for (size_t j = 0; j < ci.size(); ++j) pc.at(ci[j], static_cast<int>(j)) = UniPoly(Rational(1));
    return {std::move(pr), std::move(pc)};
}
}  // namespace detail

/// Checks that a pencil system matrix linearizes P: unimodular state,
/// transfer equal to P, explicit unimodular transforms carrying the
/// pencil onto diag(P, I_n), and the Smith factors of the pencil equal
/// to those of P padded by ones.
inline Report verify_linearization(const SystemMatrix& sm, const PolyMatrix& P,
                                   const VerifyOptions& opts = {}) {
    Report report;
    report.add("pencil-degree", sm.is_pencil(),
               "degree " + std::to_string(sm.matrix().degree()));
    PolyMatrix state = sm.state_block();
    bool unimod = state.is_unimodular();
    report.add("state-unimodular", unimod, "det = " + state.determinant().str());

    TransferResult tf = transfer_function(sm);
    bool match = tf.is_polynomial && P.rows() == tf.G.rows() && P.cols() == tf.G.cols() &&
                 tf.G.to_poly() == P;
    report.add("transfer-match", match,
               tf.is_polynomial ? "" : "transfer has non-polynomial entries");

    if (opts.with_witnesses && unimod && match) {
        int n = sm.state_size(), p = sm.num_outputs(), m = sm.num_inputs();
        PolyMatrix ainv = solve_rational(state, PolyMatrix::identity(n)).to_poly();
        PolyMatrix c = -sm.neg_output_block();

        PolyMatrix u(p + n, n + p);
        u.set_block(0, 0, c * ainv);
        u.set_block(0, n, PolyMatrix::identity(p));
        u.set_block(p, 0, ainv);
        PolyMatrix v(n + m, m + n);
        v.set_block(0, 0, -(ainv * sm.input_block()));
        v.set_block(0, m, PolyMatrix::identity(n));
        v.set_block(n, 0, PolyMatrix::identity(m));

        auto [pr, pc] = detail::gathering_permutations(sm);
        PolyMatrix left = u * pr, right = pc * v;
        report.add("witness-left-unimodular", left.is_unimodular());
        report.add("witness-right-unimodular", right.is_unimodular());

        PolyMatrix target(p + n, m + n);
        target.set_block(0, 0, tf.G.to_poly());
        target.set_block(p, m, PolyMatrix::identity(n));
        report.add("witness-product", left * sm.matrix() * right == target);
    }

    if (opts.with_smith_padding && match) {
        std::vector<UniPoly> expected(static_cast<size_t>(sm.state_size()), UniPoly(Rational(1)));
        for (const auto& f : smith_form(P).invariant_factors) expected.push_back(f);
        report.add("smith-padding", smith_form(sm.matrix()).invariant_factors == expected);
    }
    return report;
}

/// Strong check by direct reversal partition: unimodular state and
/// transfer equal to rev_ell P.
inline Report verify_strong_direct(const SystemMatrix& sm_rev, const PolyMatrix& P, int ell) {
    Report report;
    report.add("pencil-degree", sm_rev.is_pencil());
    report.add("state-unimodular", sm_rev.state_block().is_unimodular(),
               "det = " + sm_rev.state_block().determinant().str());
    TransferResult tf = transfer_function(sm_rev);
    bool match = false;
    std::string detail;
    if (ell < P.degree()) {
        detail = "reversal order below degree";
    } else if (!tf.is_polynomial) {
        detail = "transfer has non-polynomial entries";
    } else {
        match = tf.G.to_poly() == P.reversal(ell);
    }
    report.add("reversal-transfer-match", match, detail);
    return report;
}

namespace detail {
inline Report strong_local_checks(const PolyMatrix& state, const RatMatrix& transfer,
                                  const PolyMatrix& P, int ell) {
    Report report;
    Rational det0 = state.eval(Rational(0)).determinant();
    report.add("state-invertible-at-0", det0 != 0, "det at 0 = " + to_string(det0));
    bool equiv = false;
    std::string detail;
    if (ell < P.degree()) {
        detail = "reversal order below degree";
    } else if (transfer.rows() != P.rows() || transfer.cols() != P.cols()) {
        detail = "dimension mismatch";
    } else {
        equiv = equivalent_at_zero(transfer, RatMatrix(P.reversal(ell)));
        LocalOrders lhs = local_orders_at(transfer, Rational(0));
        LocalOrders rhs = local_orders_at(RatMatrix(P.reversal(ell)), Rational(0));
        detail = "orders at 0: " + order_list_str(lhs.orders) + " vs " + order_list_str(rhs.orders);
    }
    report.add("equivalence-at-0", equiv, detail);
    return report;
}
}  // namespace detail

/// Strong check by local data: state invertible at 0 and the (possibly
/// rational) transfer equivalent at 0 to rev_ell P. Together with a
/// prior linearization pass this certifies a strong linearization.
inline Report verify_strong_local(const SystemMatrix& sm_rev, const PolyMatrix& P, int ell) {
    Report report;
    report.add("pencil-degree", sm_rev.is_pencil());
    TransferResult tf = transfer_function(sm_rev);
    Report local = detail::strong_local_checks(sm_rev.state_block(), tf.G, P, ell);
    for (auto& c : local.checks) report.checks.push_back(std::move(c));
    return report;
}

// ---------------------------------------------------------------------------
// Seeded random instances

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_num = 9, int max_den = 9) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return make_rational(num(rng), den(rng));
}

inline Rational random_nonzero_rational(Rng& rng, int max_num = 9, int max_den = 9) {
    for (;;) {
        Rational q = random_rational(rng, max_num, max_den);
        if (q != 0) return q;
    }
}

inline ConstMatrix random_const_matrix(Rng& rng, int rows, int cols, int max_num = 9) {
    ConstMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = random_rational(rng, max_num);
    return m;
}

inline ConstMatrix random_invertible_matrix(Rng& rng, int n) {
    for (;;) {
        ConstMatrix m = random_const_matrix(rng, n, n, 3);
        if (m.determinant() != 0) return m;
    }
}

inline ConstMatrix random_nonzero_matrix(Rng& rng, int rows, int cols, int max_num = 9) {
    for (;;) {
        ConstMatrix m = random_const_matrix(rng, rows, cols, max_num);
        if (!m.is_zero()) return m;
    }
}

/// Random polynomial matrix of exact degree deg.
inline PolyMatrix random_poly_matrix(Rng& rng, int rows, int cols, int deg) {
    PolyMatrix m(rows, cols);
    for (int d = 0; d <= deg; ++d) {
        ConstMatrix c = (d == deg) ? random_nonzero_matrix(rng, rows, cols)
                                   : random_const_matrix(rng, rows, cols);
        m = m + UniPoly::monomial(d) * PolyMatrix(c);
    }
    return m;
}

inline RecurrenceBasis random_recurrence_basis(Rng& rng, int k) {
    RecurrenceBasis basis;
    for (int j = 0; j < k; ++j) {
        basis.alphas.push_back(random_nonzero_rational(rng, 3, 3));
        basis.betas.push_back(random_rational(rng, 3, 3));
        basis.gammas.push_back(random_rational(rng, 3, 3));
    }
    return basis;
}

/// Random CORK spec: a degree-graded basis plus relation rows expressing
/// x*p_i in the basis, which keeps the leading relation block triangular
/// with nonzero constant diagonal.
inline CorkSpec random_cork_spec(Rng& rng, int k, int p, int m) {
    std::vector<UniPoly> basis;
    basis.push_back(UniPoly(Rational(1)));
    for (int i = 1; i < k; ++i) {
        std::vector<Rational> c;
        for (int d = 0; d < i; ++d) c.push_back(random_rational(rng, 3, 3));
        c.push_back(random_nonzero_rational(rng, 3, 3));
        basis.push_back(UniPoly(std::move(c)));
    }

    CorkSpec spec;
    spec.basis = basis;
    spec.X = ConstMatrix(k - 1, k);
    spec.Y = ConstMatrix(k - 1, k);
    for (int r = 0; r < k - 1; ++r) {
        int i = k - 2 - r;  // row r expresses x * p_i
        UniPoly rem = UniPoly::monomial(1) * basis[static_cast<size_t>(i)];
        for (int j = i + 1; j >= 0; --j) {
            Rational cj = rem.coeff(j) / basis[static_cast<size_t>(j)].leading();
            rem = rem - cj * basis[static_cast<size_t>(j)];
            spec.X.at(r, k - 1 - j) = cj;
        }
        spec.Y.at(r, k - 1 - i) = 1;
    }
    for (int i = 0; i < k; ++i)
        spec.coeff_pairs.emplace_back(random_const_matrix(rng, p, m), random_const_matrix(rng, p, m));
    return spec;
}

inline BlockKroneckerSpec random_bk_spec(Rng& rng, bool extended) {
    std::uniform_int_distribution<int> size_dist(1, 3);
    BlockKroneckerSpec spec;
    spec.p = size_dist(rng);
    spec.m = size_dist(rng);
    std::uniform_int_distribution<int> deg_sum(1, 4);  // eta + eps
    int total = deg_sum(rng);
    std::uniform_int_distribution<int> split(0, total);
    spec.eta = split(rng);
    spec.eps = total - spec.eta;
    int rows = (spec.eta + 1) * spec.p, cols = (spec.eps + 1) * spec.m;
    spec.M = Pencil(random_const_matrix(rng, rows, cols), random_const_matrix(rng, rows, cols));
    if (extended) {
        if (spec.eps > 0) spec.Yext = random_invertible_matrix(rng, spec.eps * spec.m);
        if (spec.eta > 0) spec.Zext = random_invertible_matrix(rng, spec.eta * spec.p);
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Family suite

enum class Family { frobenius, comrade, cork, block_kronecker, extended_block_kronecker };

inline std::string to_string(Family f) {
    switch (f) {
        case Family::frobenius: return "frobenius";
        case Family::comrade: return "comrade";
        case Family::cork: return "cork";
        case Family::block_kronecker: return "blockkron";
        case Family::extended_block_kronecker: return "extblockkron";
    }
    return "?";
}

/// One random instance of a family: forward and reversed partitions, the
/// polynomial they should realize, and which strong check applies.
struct FamilyInstance {
    SystemMatrix forward;
    SystemMatrix reversed;
    PolyMatrix declared;
    int ell = 0;
    bool strong_is_direct = true;
};

inline FamilyInstance random_family_instance(Family family, Rng& rng) {
    std::uniform_int_distribution<int> size_dist(1, 3);
    std::uniform_int_distribution<int> deg_dist(2, 4);
    int p = size_dist(rng), m = size_dist(rng), k = deg_dist(rng);
    switch (family) {
        case Family::frobenius: {
            PolyMatrix P = random_poly_matrix(rng, p, m, k);
            return {build_frobenius(P), build_frobenius_rev(P), P, k, true};
        }
        case Family::comrade: {
            RecurrenceBasis basis = random_recurrence_basis(rng, k);
            std::vector<ConstMatrix> coeffs;
            for (int j = 0; j < k; ++j) coeffs.push_back(random_const_matrix(rng, p, m));
            coeffs.push_back(random_nonzero_matrix(rng, p, m));
            std::vector<UniPoly> phi = basis.polynomials(k + 1);
            PolyMatrix P(p, m);
            for (int j = 0; j <= k; ++j) P = P + phi[static_cast<size_t>(j)] * PolyMatrix(coeffs[static_cast<size_t>(j)]);
            return {build_comrade(coeffs, basis), build_comrade_rev(coeffs, basis), P, k, false};
        }
        case Family::cork: {
            CorkSpec spec = random_cork_spec(rng, k, p, m);
            return {build_cork(spec), build_cork_rev(spec), spec.declared_poly(), k, false};
        }
        case Family::block_kronecker: {
            BlockKroneckerSpec spec = random_bk_spec(rng, false);
            auto [sm, P] = build_block_kronecker(spec);
            return {std::move(sm), build_block_kronecker_rev(spec), std::move(P),
                    spec.eta + spec.eps + 1, true};
        }
        case Family::extended_block_kronecker: {
            BlockKroneckerSpec spec = random_bk_spec(rng, true);
            auto [sm, P] = build_extended_bk(spec);
            return {std::move(sm), build_extended_bk_rev(spec), std::move(P),
                    spec.eta + spec.eps + 1, true};
        }
    }
    throw std::logic_error("unknown family");
}

struct SuiteSummary {
    Family family = Family::frobenius;
    int trials = 0;
    int passes = 0;
    int failures = 0;
    int rejections = 0;
    std::vector<uint64_t> failing_seeds;

    bool all_passed() const { return failures == 0; }
};

/// Deterministic-by-seed random instances pushed through the forward
/// verification plus the applicable strong check. Instances violating a
/// construction hypothesis count as rejections, not failures.
inline SuiteSummary run_family_suite(Family family, int trials, uint64_t seed,
                                     const VerifyOptions& opts = {true, false}) {
    if (trials < 1) throw precondition_error("trials >= 1 required");
    SuiteSummary summary;
    summary.family = family;
    summary.trials = trials;
    Rng seeder(seed);
    for (int t = 0; t < trials; ++t) {
        uint64_t instance_seed = seeder();
        Rng rng(instance_seed);
        bool ok = false;
        try {
            FamilyInstance inst = random_family_instance(family, rng);
            Report fwd = verify_linearization(inst.forward, inst.declared, opts);
            Report strong = inst.strong_is_direct
                                ? verify_strong_direct(inst.reversed, inst.declared, inst.ell)
                                : verify_strong_local(inst.reversed, inst.declared, inst.ell);
            ok = fwd.all_passed() && strong.all_passed();
        } catch (const precondition_error&) {
            ++summary.rejections;
            continue;
        }
        if (ok) {
            ++summary.passes;
        } else {
            ++summary.failures;
            summary.failing_seeds.push_back(instance_seed);
        }
    }
    return summary;
}

}  // namespace polypencil
