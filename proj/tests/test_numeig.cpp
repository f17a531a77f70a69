#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace polypencil;
using namespace polypencil::testing;

namespace {

const UniPoly x2m1{q(-1), q(0), q(1)};

std::vector<double> sorted_reals(const EigResult& eig) {
    std::vector<double> out;
    for (const Complex& z : eig.eigenvalues) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("pencil eigenvalues") {
    SECTION("companion pencil of x^2 - 1") {
        EigResult eig = pencil_eig(build_frobenius(scalar_poly(x2m1)).pencil());
        REQUIRE(eig.eigenvalues.size() == 2);
        auto vals = sorted_reals(eig);
        CHECK(std::abs(vals[0] + 1.0) < 1e-10);
        CHECK(std::abs(vals[1] - 1.0) < 1e-10);
        for (double r : eig.residuals) CHECK(r <= 1e-10);
        CHECK(eig.infinite_count == 0);
    }

    SECTION("diagonal pencil") {
        Eigen::MatrixXd m1 = Eigen::MatrixXd::Identity(3, 3);
        Eigen::MatrixXd m0 = Eigen::MatrixXd::Zero(3, 3);
        m0.diagonal() << -1, -2, -3;
        EigResult eig = pencil_eig(m1, m0);
        auto vals = sorted_reals(eig);
        REQUIRE(vals.size() == 3);
        CHECK(std::abs(vals[0] - 1.0) < 1e-12);
        CHECK(std::abs(vals[1] - 2.0) < 1e-12);
        CHECK(std::abs(vals[2] - 3.0) < 1e-12);
    }

    SECTION("companion pencil of prod (x - j), j = 1..5") {
        UniPoly p(q(1));
        for (long j = 1; j <= 5; ++j) p *= UniPoly{q(-j), q(1)};
        EigResult eig = pencil_eig(build_frobenius(scalar_poly(p)).pencil());
        auto vals = sorted_reals(eig);
        REQUIRE(vals.size() == 5);
        for (int j = 0; j < 5; ++j) CHECK(std::abs(vals[static_cast<size_t>(j)] - (j + 1)) < 1e-6);
    }

    SECTION("singular leading coefficient goes through the QZ path") {
        // x * [[1,0],[0,0]] + [[0,0],[0,1]]: one finite eigenvalue 0,
        // one at infinity
        Eigen::MatrixXd m1(2, 2), m0(2, 2);
        m1 << 1, 0, 0, 0;
        m0 << 0, 0, 0, 1;
        EigResult eig = pencil_eig(m1, m0);
        CHECK(eig.infinite_count == 1);
        REQUIRE(eig.eigenvalues.size() == 1);
        CHECK(std::abs(eig.eigenvalues[0]) < 1e-10);
    }

    SECTION("non-square rejected") {
        CHECK_THROWS_AS(pencil_eig(Eigen::MatrixXd::Zero(2, 3), Eigen::MatrixXd::Zero(2, 3)),
                        precondition_error);
    }
}

TEST_CASE("eigenvectors by inverse iteration") {
    SECTION("symmetric pencil at 1") {
        Pencil p = build_frobenius(scalar_poly(x2m1)).pencil();
        auto [v, w, res] = eigvec_at(to_double(p.m1()), to_double(p.m0()), Complex(1.0, 0.0));
        CHECK(res <= 1e-10);
        CHECK(std::abs(std::abs(v(0)) - std::abs(v(1))) < 1e-8);  // direction [1, 1]
    }

    SECTION("diagonal pencil picks the right axis") {
        Eigen::MatrixXd m1 = Eigen::MatrixXd::Identity(2, 2);
        Eigen::MatrixXd m0 = Eigen::MatrixXd::Zero(2, 2);
        m0.diagonal() << -1, -2;
        auto [v, w, res] = eigvec_at(m1, m0, Complex(2.0, 0.0));
        CHECK(res <= 1e-12);
        CHECK(std::abs(v(0)) < 1e-8);
        CHECK(std::abs(std::abs(v(1)) - 1.0) < 1e-8);
    }

    SECTION("cubic assembly at a complex root of -1") {
        Realization real{ConstMatrix{{q(0)}}, ConstMatrix{{q(1)}}, ConstMatrix{{q(1)}}};
        SystemMatrix l = assemble_rational(real, build_frobenius(scalar_poly(xp(2))));
        Pencil p = l.pencil();
        Complex root = std::polar(1.0, M_PI / 3.0);  // primitive 6th root: root^3 = -1
        auto [v, w, res] = eigvec_at(to_double(p.m1()), to_double(p.m0()), root);
        CHECK(res <= 1e-8);
    }
}

TEST_CASE("eigenvector recovery through the linearization") {
    SECTION("companion pencil of x^2 - 1") {
        SystemMatrix sm = build_frobenius(scalar_poly(x2m1));
        EigResult eig = pencil_eig(sm.pencil());
        RecoveryReport rec = recover_and_check(sm, eig, scalar_poly(x2m1));
        REQUIRE(rec.entries.size() == 2);
        CHECK(rec.max_right_residual() <= 1e-10);
        CHECK(rec.max_left_residual() <= 1e-10);
        for (const auto& e : rec.entries) {
            REQUIRE(e.exact_angle.has_value());  // eigenvalues +-1 are rational
            CHECK(*e.exact_angle <= 1e-6);
        }
    }

    SECTION("comrade pencil of T_2 at cos(pi/4)") {
        RecurrenceBasis basis;
        basis.alphas = {q(1), q(1, 2)};
        basis.betas = {q(0), q(0)};
        basis.gammas = {q(0), q(1, 2)};
        std::vector<ConstMatrix> coeffs{ConstMatrix{{q(0)}}, ConstMatrix{{q(0)}},
                                        ConstMatrix{{q(1)}}};
        SystemMatrix sm = build_comrade(coeffs, basis);
        PolyMatrix t2 = scalar_poly(UniPoly{q(-1), q(0), q(2)});
        EigResult eig = pencil_eig(sm.pencil());
        auto vals = sorted_reals(eig);
        REQUIRE(vals.size() == 2);
        double root = std::cos(M_PI / 4.0);
        CHECK(std::abs(vals[0] + root) < 1e-10);
        CHECK(std::abs(vals[1] - root) < 1e-10);
        RecoveryReport rec = recover_and_check(sm, eig, t2);
        CHECK(rec.max_right_residual() <= 1e-8);
        CHECK(rec.max_left_residual() <= 1e-8);
    }

    SECTION("random regular cubic 3x3") {
        Rng rng(90210);
        int accepted = 0;
        for (int trial = 0; trial < 8 && accepted < 5; ++trial) {
            PolyMatrix P = random_poly_matrix(rng, 3, 3, 3);
            if (P.determinant().is_zero()) continue;
            SystemMatrix sm = build_frobenius(P);
            EigResult eig = pencil_eig(sm.pencil());
            if (!eig.all_converged()) continue;  // conditioning gate
            RecoveryReport rec = recover_and_check(sm, eig, P);
            CHECK(rec.max_right_residual() <= 1e-8);
            ++accepted;
        }
        CHECK(accepted >= 5);
    }

    SECTION("non-regular P rejected") {
        PolyMatrix singular(2, 2);
        singular.at(0, 0) = x2m1;  // second row zero -> det = 0
        SystemMatrix sm = build_frobenius(scalar_poly(x2m1));
        EigResult eig = pencil_eig(sm.pencil());
        CHECK_THROWS_AS(recover_and_check(sm, eig, singular), precondition_error);
    }
}

TEST_CASE("spectra agree across all five families") {
    UniPoly p(q(1));
    for (long j = 1; j <= 3; ++j) p *= UniPoly{q(-j), q(1)};
    PolyMatrix P = scalar_poly(p);  // roots 1, 2, 3

    std::vector<Pencil> pencils;
    pencils.push_back(build_frobenius(P).pencil());
    RecurrenceBasis cheb;
    cheb.alphas = {q(1), q(1, 2), q(1, 2)};
    cheb.betas = {q(0), q(0), q(0)};
    cheb.gammas = {q(0), q(1, 2), q(1, 2)};
    pencils.push_back(build_comrade(to_basis_coefficients(P, cheb), cheb).pencil());
    pencils.push_back(build_cork(monomial_cork_spec(P)).pencil());
    pencils.push_back(build_block_kronecker(block_kronecker_spec_for(P, 1, 1)).first.pencil());
    BlockKroneckerSpec ext = block_kronecker_spec_for(P, 1, 1);
    ext.Yext = ConstMatrix{{q(2)}};
    ext.Zext = ConstMatrix{{q(-3)}};
    pencils.push_back(build_extended_bk(ext).first.pencil());

    for (const Pencil& pencil : pencils) {
        EigResult eig = pencil_eig(pencil);
        auto vals = sorted_reals(eig);
        REQUIRE(vals.size() == 3);
        for (int j = 0; j < 3; ++j) CHECK(std::abs(vals[static_cast<size_t>(j)] - (j + 1)) < 1e-6);
    }
}
