#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace polypencil;
using namespace polypencil::testing;

namespace {

const UniPoly x2m1{q(-1), q(0), q(1)};

RecurrenceBasis chebyshev_basis(int k) {
    RecurrenceBasis b;
    for (int j = 0; j < k; ++j) {
        b.alphas.push_back(j == 0 ? q(1) : q(1, 2));
        b.betas.push_back(q(0));
        b.gammas.push_back(q(1, 2));
    }
    return b;
}

RecurrenceBasis monomial_basis(int k) {
    RecurrenceBasis b;
    for (int j = 0; j < k; ++j) {
        b.alphas.push_back(q(1));
        b.betas.push_back(q(0));
        b.gammas.push_back(q(0));
    }
    return b;
}

PolyMatrix poly_transfer(const SystemMatrix& sm) {
    TransferResult tf = transfer_function(sm);
    REQUIRE(tf.is_polynomial);
    return tf.G.to_poly();
}

}  // namespace

TEST_CASE("frobenius companion form") {
    SECTION("quadratic scalar") {
        SystemMatrix sm = build_frobenius(scalar_poly(x2m1));
        CHECK(sm.matrix() == PolyMatrix{{x, UniPoly(q(-1))}, {UniPoly(q(-1)), x}});
        CHECK(poly_transfer(sm) == scalar_poly(x2m1));
        CHECK(sm.state_block().is_unimodular());
    }

    SECTION("cubic monomial") {
        SystemMatrix sm = build_frobenius(scalar_poly(xp(3)));
        CHECK(sm.matrix().rows() == 3);
        CHECK(poly_transfer(sm) == scalar_poly(xp(3)));
    }

    SECTION("block quadratic") {
        PolyMatrix P = UniPoly::monomial(2) * PolyMatrix(ConstMatrix::identity(2));
        SystemMatrix sm = build_frobenius(P);
        CHECK(sm.matrix().rows() == 4);
        CHECK(sm.state_block() == PolyMatrix(-ConstMatrix::identity(2)));
        CHECK(poly_transfer(sm) == P);
    }

    SECTION("degree below two rejected") {
        CHECK_THROWS_AS(build_frobenius(scalar_poly(x)), precondition_error);
        CHECK_THROWS_AS(build_frobenius(scalar_poly(UniPoly(q(3)))), precondition_error);
    }

    SECTION("size and shape for rectangular input") {
        Rng rng(5);
        PolyMatrix P = random_poly_matrix(rng, 2, 3, 4);  // p=2, m=3, k=4
        SystemMatrix sm = build_frobenius(P);
        CHECK(sm.matrix().rows() == 2 + 3 * 3);
        CHECK(sm.matrix().cols() == 4 * 3);
        CHECK(sm.state_size() == 9);
        CHECK(poly_transfer(sm) == P);
    }
}

TEST_CASE("frobenius reversal") {
    SECTION("quadratic") {
        SystemMatrix sm = build_frobenius_rev(scalar_poly(x2m1));
        CHECK(sm.matrix() == PolyMatrix{{UniPoly(q(1)), -x}, {-x, UniPoly(q(1))}});
        CHECK(sm.layout() == StateLayout::bottom_right);
        CHECK(poly_transfer(sm) == scalar_poly(UniPoly{q(1), q(0), q(-1)}));
        CHECK(poly_transfer(sm) == scalar_poly(x2m1).reversal(2));
    }

    SECTION("pure monomial reverses to one") {
        CHECK(poly_transfer(build_frobenius_rev(scalar_poly(xp(2)))) ==
              scalar_poly(UniPoly(q(1))));
    }

    SECTION("cubic with quadratic term") {
        UniPoly p = xp(3) + xp(2);
        CHECK(poly_transfer(build_frobenius_rev(scalar_poly(p))) ==
              scalar_poly(UniPoly{q(1), q(1)}));
    }
}

TEST_CASE("kernel relations of the companion blocks") {
    Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_int_distribution<int> size(1, 3), deg(2, 5);
        int m = size(rng), k = deg(rng);
        PolyMatrix P = random_poly_matrix(rng, size(rng), m, k);
        SystemMatrix fwd = build_frobenius(P);
        PolyMatrix ab = fwd.state_block().hcat(fwd.input_block());
        CHECK((ab * build_lambda(k, m)).is_zero());

        SystemMatrix rev = build_frobenius_rev(P);
        PolyMatrix ba = rev.input_block().hcat(rev.state_block());
        CHECK((ba * build_lambda(k, m).reversal(k - 1)).is_zero());
    }
}

TEST_CASE("comrade pencils") {
    SECTION("chebyshev T_2") {
        std::vector<ConstMatrix> coeffs{ConstMatrix{{q(0)}}, ConstMatrix{{q(0)}},
                                        ConstMatrix{{q(1)}}};
        SystemMatrix sm = build_comrade(coeffs, chebyshev_basis(2));
        CHECK(sm.matrix() == PolyMatrix{{xp(1, 2), UniPoly(q(-1))}, {UniPoly(q(-1)), x}});
        CHECK(poly_transfer(sm) == scalar_poly(UniPoly{q(-1), q(0), q(2)}));
    }

    SECTION("monomial recurrence reduces to the companion form") {
        Rng rng(7);
        for (int k = 2; k <= 4; ++k) {
            std::vector<ConstMatrix> coeffs;
            for (int j = 0; j <= k; ++j) coeffs.push_back(random_const_matrix(rng, 2, 2));
            PolyMatrix P(2, 2);
            for (int j = 0; j <= k; ++j)
                P = P + UniPoly::monomial(j) * PolyMatrix(coeffs[static_cast<size_t>(j)]);
            SystemMatrix comrade = build_comrade(coeffs, monomial_basis(k));
            CHECK(comrade.matrix() == build_frobenius(P).matrix());
        }
    }

    SECTION("constant polynomial through the pencil") {
        std::vector<ConstMatrix> coeffs{ConstMatrix{{q(5)}}, ConstMatrix{{q(0)}},
                                        ConstMatrix{{q(0)}}};
        SystemMatrix sm = build_comrade(coeffs, chebyshev_basis(2));
        CHECK(poly_transfer(sm) == scalar_poly(UniPoly(q(5))));
    }

    SECTION("zero alpha rejected") {
        RecurrenceBasis bad = chebyshev_basis(2);
        bad.alphas[1] = q(0);
        std::vector<ConstMatrix> coeffs(3, ConstMatrix{{q(1)}});
        CHECK_THROWS_AS(build_comrade(coeffs, bad), precondition_error);
    }

    SECTION("inconsistent shapes rejected") {
        std::vector<ConstMatrix> coeffs{ConstMatrix(1, 1), ConstMatrix(2, 2), ConstMatrix(1, 1)};
        CHECK_THROWS_AS(build_comrade(coeffs, chebyshev_basis(2)), precondition_error);
    }
}

TEST_CASE("comrade reversal") {
    SECTION("chebyshev T_2: f = 1") {
        std::vector<ConstMatrix> coeffs{ConstMatrix{{q(0)}}, ConstMatrix{{q(0)}},
                                        ConstMatrix{{q(1)}}};
        SystemMatrix sm = build_comrade_rev(coeffs, chebyshev_basis(2));
        CHECK(sm.state_block().eval(q(0)).determinant() != 0);
        UniPoly f = chebyshev_basis(2).polynomials(2)[1].reversal(1);
        CHECK(f.is_one());
        CHECK(poly_transfer(sm) == scalar_poly(UniPoly{q(2), q(0), q(-1)}));
    }

    SECTION("monomial basis matches the reversed companion form") {
        Rng rng(11);
        std::vector<ConstMatrix> coeffs;
        for (int j = 0; j <= 3; ++j) coeffs.push_back(random_const_matrix(rng, 2, 2));
        PolyMatrix P(2, 2);
        for (int j = 0; j <= 3; ++j)
            P = P + UniPoly::monomial(j) * PolyMatrix(coeffs[static_cast<size_t>(j)]);
        CHECK(build_comrade_rev(coeffs, monomial_basis(3)).matrix() ==
              build_frobenius_rev(P).matrix());
    }

    SECTION("transfer times rev phi_{k-1} gives the reversal, generic k = 2") {
        Rng rng(23);
        for (int trial = 0; trial < 8; ++trial) {
            RecurrenceBasis basis = random_recurrence_basis(rng, 2);
            std::vector<ConstMatrix> coeffs;
            for (int j = 0; j <= 2; ++j) coeffs.push_back(random_const_matrix(rng, 2, 2));
            std::vector<UniPoly> phi = basis.polynomials(3);
            PolyMatrix P(2, 2);
            for (int j = 0; j <= 2; ++j)
                P = P + phi[static_cast<size_t>(j)] * PolyMatrix(coeffs[static_cast<size_t>(j)]);

            UniPoly f = phi[1].reversal(1);
            CHECK(f(q(0)) == Rational(1) / basis.alphas[0]);

            SystemMatrix rev = build_comrade_rev(coeffs, basis);
            RatMatrix transfer = transfer_function(rev).G;
            CHECK(RatFunc(f) * transfer == RatMatrix(P.reversal(2)));
        }
    }
}

TEST_CASE("cork pencils") {
    SECTION("monomial spec for x^3 + 2x") {
        CorkSpec spec = monomial_cork_spec(scalar_poly(xp(3) + xp(1, 2)));
        SystemMatrix sm = build_cork(spec);
        CHECK(sm.matrix().rows() == 3);
        CHECK(poly_transfer(sm) == scalar_poly(xp(3) + xp(1, 2)));
        CHECK(sm.state_block().is_unimodular());
    }

    SECTION("chebyshev spec reproduces the comrade transfer") {
        Rng rng(99);
        std::vector<ConstMatrix> coeffs;
        for (int j = 0; j <= 3; ++j) coeffs.push_back(random_const_matrix(rng, 2, 2));
        RecurrenceBasis basis = chebyshev_basis(3);
        CorkSpec spec = cork_spec_from_recurrence(coeffs, basis);
        CHECK(poly_transfer(build_cork(spec)) == poly_transfer(build_comrade(coeffs, basis)));
    }

    SECTION("k = 2 monomial reduces to the companion form") {
        CorkSpec spec = monomial_cork_spec(scalar_poly(x2m1));
        CHECK(build_cork(spec).matrix() == build_frobenius(scalar_poly(x2m1)).matrix());
    }

    SECTION("monomial cork equals frobenius in general") {
        Rng rng(13);
        PolyMatrix P = random_poly_matrix(rng, 2, 3, 4);
        CHECK(build_cork(monomial_cork_spec(P)).matrix() == build_frobenius(P).matrix());
    }

    SECTION("broken relation rejected") {
        CorkSpec spec = monomial_cork_spec(scalar_poly(xp(3)));
        spec.X.at(0, 0) = q(5);
        CHECK_THROWS_AS(build_cork(spec), precondition_error);
    }

    SECTION("rank-deficient relation rejected") {
        CorkSpec spec = monomial_cork_spec(scalar_poly(xp(3)));
        // duplicate first row into second: still annihilates p, rank drops
        for (int j = 0; j < 3; ++j) {
            spec.X.at(1, j) = spec.X.at(0, j);
            spec.Y.at(1, j) = spec.Y.at(0, j);
        }
        CHECK_THROWS_AS(build_cork(spec), precondition_error);
    }
}

TEST_CASE("cork reversal") {
    SECTION("monomial spec: q = 1") {
        UniPoly p = xp(3) + xp(1, 2);
        CorkSpec spec = monomial_cork_spec(scalar_poly(p));
        CHECK(spec.basis.back().reversal(2).is_one());
        SystemMatrix rev = build_cork_rev(spec);
        CHECK(poly_transfer(rev) == scalar_poly(p).reversal(3));
    }

    SECTION("chebyshev spec k = 3: q(0) = 2") {
        Rng rng(55);
        std::vector<ConstMatrix> coeffs;
        for (int j = 0; j <= 3; ++j) coeffs.push_back(random_const_matrix(rng, 1, 1));
        CorkSpec spec = cork_spec_from_recurrence(coeffs, chebyshev_basis(3));
        UniPoly qrev = spec.basis.back().reversal(2);
        CHECK(qrev == UniPoly{q(2), q(0), q(-1)});
        CHECK(qrev(q(0)) == q(2));

        SystemMatrix rev = build_cork_rev(spec);
        CHECK(rev.state_block().eval(q(0)).determinant() != 0);
        RatMatrix transfer = transfer_function(rev).G;
        CHECK(RatFunc(qrev) * transfer == RatMatrix(spec.declared_poly().reversal(3)));
    }

    SECTION("k = 2 monomial") {
        CorkSpec spec = monomial_cork_spec(scalar_poly(x2m1));
        CHECK(poly_transfer(build_cork_rev(spec)) == scalar_poly(x2m1).reversal(2));
    }

    SECTION("degree hypothesis enforced") {
        // degree-graded basis replaced by one with deg p_2 = 1; a valid
        // relation still exists but the reversal hypotheses fail
        CorkSpec spec;
        spec.basis = {UniPoly(q(1)), x, x + UniPoly(q(1))};  // p_2 = x + 1, degree 1
        ConstMatrix z(1, 1);
        spec.coeff_pairs = {{z, z}, {z, z}, {z, z}};
        spec.X = ConstMatrix(2, 3);
        spec.Y = ConstMatrix(2, 3);
        // rows: p_2 - p_1 - p_0 = 0 and p_1 - x p_0 = 0
        spec.X.at(0, 0) = 1;
        spec.X.at(0, 1) = -1;
        spec.X.at(0, 2) = -1;
        spec.X.at(1, 1) = 1;
        spec.Y.at(1, 2) = 1;
        CHECK_THROWS_AS(build_cork_rev(spec), precondition_error);
    }
}

TEST_CASE("block kronecker pencils") {
    SECTION("cubic corner spec") {
        ConstMatrix m0(2, 2), m1(2, 2);
        m1.at(0, 0) = 1;  // M = [[x, 0], [0, 0]]
        BlockKroneckerSpec spec;
        spec.M = Pencil(m0, m1);
        spec.eta = 1;
        spec.eps = 1;
        auto [sm, P] = build_block_kronecker(spec);
        CHECK(P == scalar_poly(xp(3)));
        CHECK(sm.matrix() == PolyMatrix{{x, UniPoly(), UniPoly(q(-1))},
                                        {UniPoly(), UniPoly(), x},
                                        {UniPoly(q(-1)), x, UniPoly()}});
        CHECK(sm.state_block() == PolyMatrix{{x, UniPoly(q(-1))}, {UniPoly(q(-1)), UniPoly()}});
        CHECK(sm.state_block().determinant() == UniPoly(q(-1)));
        CHECK(poly_transfer(sm) == P);
    }

    SECTION("zero middle pencil") {
        BlockKroneckerSpec spec;
        spec.M = Pencil(ConstMatrix(2, 2), ConstMatrix(2, 2));
        spec.eta = 1;
        spec.eps = 1;
        auto [sm, P] = build_block_kronecker(spec);
        CHECK(P.is_zero());
        CHECK(poly_transfer(sm).is_zero());
    }

    SECTION("quartic from a single corner entry") {
        ConstMatrix m0(2, 3), m1(2, 3);
        m1.at(0, 0) = 1;
        BlockKroneckerSpec spec;
        spec.M = Pencil(m0, m1);
        spec.eta = 1;
        spec.eps = 2;
        auto [sm, P] = build_block_kronecker(spec);
        CHECK(P == scalar_poly(xp(4)));
        CHECK(poly_transfer(sm) == P);
    }

    SECTION("one-block cases") {
        Rng rng(77);
        for (auto [eps, eta] : {std::pair{0, 2}, std::pair{2, 0}, std::pair{3, 0}}) {
            BlockKroneckerSpec spec;
            spec.p = 2;
            spec.m = 1;
            spec.eps = eps;
            spec.eta = eta;
            spec.M = Pencil(random_const_matrix(rng, (eta + 1) * 2, (eps + 1) * 1),
                            random_const_matrix(rng, (eta + 1) * 2, (eps + 1) * 1));
            auto [sm, P] = build_block_kronecker(spec);
            CHECK(sm.state_block().is_unimodular());
            CHECK(poly_transfer(sm) == P);
            CHECK(poly_transfer(build_block_kronecker_rev(spec)) == P.reversal(eps + eta + 1));
        }
    }

    SECTION("shape mismatch rejected") {
        BlockKroneckerSpec spec;
        spec.M = Pencil(ConstMatrix(2, 2), ConstMatrix(2, 2));
        spec.eta = 2;
        spec.eps = 1;
        CHECK_THROWS_AS(build_block_kronecker(spec), precondition_error);
    }

    SECTION("helper spec deposits an arbitrary polynomial") {
        Rng rng(31);
        for (auto [eps, eta] : {std::pair{2, 1}, std::pair{1, 2}, std::pair{3, 1}}) {
            PolyMatrix P = random_poly_matrix(rng, 2, 2, eps + eta + 1);
            BlockKroneckerSpec spec = block_kronecker_spec_for(P, eps, eta);
            auto [sm, induced] = build_block_kronecker(spec);
            CHECK(induced == P);
            CHECK(poly_transfer(sm) == P);
        }
    }
}

TEST_CASE("block kronecker reversal") {
    SECTION("cubic corner spec reverses to one") {
        ConstMatrix m0(2, 2), m1(2, 2);
        m1.at(0, 0) = 1;
        BlockKroneckerSpec spec;
        spec.M = Pencil(m0, m1);
        spec.eta = 1;
        spec.eps = 1;
        SystemMatrix rev = build_block_kronecker_rev(spec);
        CHECK(rev.state_block().is_unimodular());
        CHECK(poly_transfer(rev) == scalar_poly(UniPoly(q(1))));
    }

    SECTION("random scalar spec") {
        Rng rng(101);
        for (int trial = 0; trial < 10; ++trial) {
            BlockKroneckerSpec spec;
            spec.eta = 1;
            spec.eps = 1;
            spec.M = Pencil(random_const_matrix(rng, 2, 2), random_const_matrix(rng, 2, 2));
            auto [fwd, P] = build_block_kronecker(spec);
            SystemMatrix rev = build_block_kronecker_rev(spec);
            CHECK(poly_transfer(rev) == P.reversal(3));
        }
    }
}

TEST_CASE("extended block kronecker pencils") {
    ConstMatrix m0(2, 2), m1(2, 2);
    m1.at(0, 0) = 1;
    BlockKroneckerSpec cubic;
    cubic.M = Pencil(m0, m1);
    cubic.eta = 1;
    cubic.eps = 1;

    SECTION("scaling extensions cancel in the transfer") {
        BlockKroneckerSpec spec = cubic;
        spec.Yext = ConstMatrix{{q(2)}};
        spec.Zext = ConstMatrix{{q(3)}};
        auto [sm, P] = build_extended_bk(spec);
        CHECK(P == scalar_poly(xp(3)));
        CHECK(poly_transfer(sm) == P);
        CHECK(poly_transfer(build_extended_bk_rev(spec)) == scalar_poly(UniPoly(q(1))));
    }

    SECTION("identity extensions reduce to the plain pencil") {
        BlockKroneckerSpec spec = cubic;
        spec.Yext = ConstMatrix::identity(1);
        spec.Zext = ConstMatrix::identity(1);
        CHECK(build_extended_bk(spec).first.matrix() == build_block_kronecker(cubic).first.matrix());
        CHECK(build_extended_bk_rev(spec).matrix() == build_block_kronecker_rev(cubic).matrix());
    }

    SECTION("transfer independent of the extension choice") {
        Rng rng(404);
        for (int trial = 0; trial < 8; ++trial) {
            BlockKroneckerSpec spec = random_bk_spec(rng, true);
            auto [sm, P] = build_extended_bk(spec);
            CHECK(poly_transfer(sm) == P);
            CHECK(poly_transfer(build_extended_bk_rev(spec)) ==
                  P.reversal(spec.eta + spec.eps + 1));
        }
    }

    SECTION("singular extensions rejected") {
        BlockKroneckerSpec spec = cubic;
        spec.Yext = ConstMatrix(1, 1);  // zero
        spec.Zext = ConstMatrix{{q(3)}};
        CHECK_THROWS_AS(build_extended_bk(spec), precondition_error);
        CHECK_THROWS_AS(build_extended_bk_rev(spec), precondition_error);
    }
}

TEST_CASE("polynomial plus strictly proper split") {
    SECTION("worked scalar") {
        RatMatrix r{{RatFunc(UniPoly{q(1), q(0), q(0), q(1)}, x)}};
        auto [poly, sp] = split_polynomial_part(r);
        CHECK(poly == scalar_poly(xp(2)));
        CHECK(sp.at(0, 0) == RatFunc(UniPoly(q(1)), x));
        CHECK(RatMatrix(poly) + sp == r);
    }

    SECTION("polynomial input") {
        RatMatrix r(scalar_poly(x2m1));
        auto [poly, sp] = split_polynomial_part(r);
        CHECK(poly == scalar_poly(x2m1));
        CHECK(sp.is_zero());
    }

    SECTION("already strictly proper") {
        RatMatrix r{{RatFunc(UniPoly(q(1)), UniPoly{q(1), q(0), q(1)})}};
        auto [poly, sp] = split_polynomial_part(r);
        CHECK(poly.is_zero());
        CHECK(sp == r);
    }

    SECTION("reconstruction on random rational matrices") {
        Rng rng(2025);
        for (int trial = 0; trial < 15; ++trial) {
            RatMatrix r(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    UniPoly den;
                    do {
                        den = UniPoly{random_rational(rng, 3, 3), random_rational(rng, 3, 3),
                                      random_nonzero_rational(rng, 3, 3)};
                    } while (den.degree() < 1);
                    r.at(i, j) = RatFunc(random_poly_matrix(rng, 1, 1, 3).at(0, 0), den);
                }
            auto [poly, sp] = split_polynomial_part(r);
            CHECK(RatMatrix(poly) + sp == r);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    if (!sp.at(i, j).is_zero())
                        CHECK(sp.at(i, j).num().degree() < sp.at(i, j).den().degree());
        }
    }
}

TEST_CASE("realization minimality") {
    CHECK(is_minimal(Realization{ConstMatrix{{q(0)}}, ConstMatrix{{q(1)}}, ConstMatrix{{q(1)}}}));
    CHECK_FALSE(
        is_minimal(Realization{ConstMatrix{{q(0)}}, ConstMatrix{{q(0)}}, ConstMatrix{{q(1)}}}));
    CHECK(is_minimal(Realization{ConstMatrix{{q(1), q(0)}, {q(0), q(2)}},
                                 ConstMatrix{{q(1)}, {q(1)}}, ConstMatrix{{q(1), q(1)}}}));
}

TEST_CASE("rational assembly") {
    SECTION("worked cubic") {
        Realization real{ConstMatrix{{q(0)}}, ConstMatrix{{q(1)}}, ConstMatrix{{q(1)}}};
        SystemMatrix l = assemble_rational(real, build_frobenius(scalar_poly(xp(2))));
        CHECK(l.matrix() == PolyMatrix{{x, UniPoly(), UniPoly(q(1))},
                                       {UniPoly(), UniPoly(q(-1)), x},
                                       {UniPoly(q(-1)), x, UniPoly()}});
        RatMatrix g = transfer_function(l).G;
        CHECK(g.at(0, 0) == RatFunc(UniPoly{q(1), q(0), q(0), q(1)}, x));
        CHECK(l.matrix().determinant() == UniPoly{q(-1), q(0), q(0), q(-1)});
        CHECK(is_minimal(l));
    }

    SECTION("vanishing strictly proper part") {
        Realization real{ConstMatrix{{q(0)}}, ConstMatrix{{q(1)}}, ConstMatrix{{q(0)}}};
        SystemMatrix l = assemble_rational(real, build_frobenius(scalar_poly(x2m1)));
        RatMatrix g = transfer_function(l).G;
        CHECK(g.is_polynomial());
        CHECK(g.to_poly() == scalar_poly(x2m1));
    }

    SECTION("partial fractions") {
        Realization real{ConstMatrix{{q(1), q(0)}, {q(0), q(2)}}, ConstMatrix{{q(1)}, {q(1)}},
                         ConstMatrix{{q(1), q(1)}}};
        // degree-1 polynomial part through a trivial system matrix with empty state
        SystemMatrix psm(scalar_poly(x), 0, StateLayout::top_left);
        SystemMatrix l = assemble_rational(real, psm);
        RatFunc expected = RatFunc(x) + RatFunc(UniPoly(q(1)), UniPoly{q(-1), q(1)}) +
                           RatFunc(UniPoly(q(1)), UniPoly{q(-2), q(1)});
        CHECK(transfer_function(l).G.at(0, 0) == expected);
    }

    SECTION("non-unimodular polynomial part rejected") {
        Realization real{ConstMatrix{{q(0)}}, ConstMatrix{{q(1)}}, ConstMatrix{{q(1)}}};
        SystemMatrix pole(PolyMatrix{{x, UniPoly(q(1))}, {UniPoly(q(-1)), UniPoly()}}, 1,
                          StateLayout::top_left);
        CHECK_THROWS_AS(assemble_rational(real, pole), precondition_error);
    }

    SECTION("shape mismatch rejected") {
        Realization real{ConstMatrix{{q(0)}}, ConstMatrix{{q(1), q(0)}}, ConstMatrix{{q(1)}}};
        CHECK_THROWS_AS(assemble_rational(real, build_frobenius(scalar_poly(xp(2)))),
                        precondition_error);
    }

    SECTION("zeros of the assembly match the numerator zeros") {
        Realization real{ConstMatrix{{q(0)}}, ConstMatrix{{q(1)}}, ConstMatrix{{q(1)}}};
        SystemMatrix l = assemble_rational(real, build_frobenius(scalar_poly(xp(2))));
        SMcMData smcm = smith_mcmillan(transfer_function(l).G);
        UniPoly zeros_product(q(1));
        for (const auto& e : smcm.numerators) zeros_product *= e;
        CHECK(l.matrix().determinant().monic() == zeros_product.monic());
    }
}

TEST_CASE("family transfer law on random instances") {
    Rng rng(171717);
    for (Family family : {Family::frobenius, Family::comrade, Family::cork,
                          Family::block_kronecker, Family::extended_block_kronecker}) {
        for (int trial = 0; trial < 12; ++trial) {
            FamilyInstance inst = random_family_instance(family, rng);
            INFO(to_string(family) << " trial " << trial);
            CHECK(poly_transfer(inst.forward) == inst.declared);
            CHECK(inst.forward.state_block().is_unimodular());
            CHECK(inst.reversed.state_block().eval(q(0)).determinant() != 0);
        }
    }
}
