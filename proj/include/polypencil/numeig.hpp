#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "polypencil/system_matrix.hpp"

namespace polypencil {

using Complex = std::complex<double>;

struct EigOptions {
    double tol = 1e-8;
    int max_sweeps = 100;
};

/// Finite spectrum of a pencil with residual-certified eigenvectors.
/// Eigenvalues at infinity are reported only as a count (the rank
/// deficiency of the leading coefficient).
struct EigResult {
    std::vector<Complex> eigenvalues;
    std::vector<Eigen::VectorXcd> right_vectors;
    std::vector<Eigen::VectorXcd> left_vectors;
    std::vector<double> residuals;
    std::vector<bool> converged;
    int infinite_count = 0;

    bool all_converged() const {
        for (bool c : converged)
            if (!c) return false;
        return true;
    }
};

inline Eigen::MatrixXd to_double(const ConstMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = to_double(m.at(i, j));
    return out;
}

inline Eigen::MatrixXcd eval_complex(const PolyMatrix& m, const Complex& x) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Complex acc(0.0, 0.0);
            const UniPoly& p = m.at(i, j);
            for (int d = p.degree(); d >= 0; --d) acc = acc * x + to_double(p.coeff(d));
            out(i, j) = acc;
        }
    return out;
}

/// Right/left eigenvectors of x*M1 + M0 at lam by inverse iteration with
/// a regularized solve; returns unit vectors and the relative residual
/// ||L v|| / ||L||_F.
inline std::tuple<Eigen::VectorXcd, Eigen::VectorXcd, double> eigvec_at(const Eigen::MatrixXd& M1,
                                                                        const Eigen::MatrixXd& M0,
                                                                        const Complex& lam,
                                                                        const EigOptions& opts = {}) {
    int n = static_cast<int>(M1.rows());
    Eigen::MatrixXcd L = lam * M1.cast<Complex>() + M0.cast<Complex>();
    double norm_l = L.norm();
    if (norm_l == 0.0) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Unit(n, 0);
        return {e, e, 0.0};
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(L);
    if (lu.rank() < n) {
        // exact singularity: nudge off the kernel so the solve is defined
        Eigen::MatrixXcd shifted = L + Complex(1e-13 * norm_l, 0.0) * Eigen::MatrixXcd::Identity(n, n);
        lu.compute(shifted);
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu_adj{Eigen::MatrixXcd(L.adjoint())};
    if (lu_adj.rank() < n) {
        Eigen::MatrixXcd shifted =
            L.adjoint() + Complex(1e-13 * norm_l, 0.0) * Eigen::MatrixXcd::Identity(n, n);
        lu_adj.compute(shifted);
    }

    // deterministic non-structured start vector
    Eigen::VectorXcd v(n), w(n);
    for (int i = 0; i < n; ++i) {
        v(i) = Complex(std::cos(1.7 * i + 0.3), std::sin(2.3 * i + 0.7));
        w(i) = Complex(std::cos(2.9 * i + 1.1), std::sin(1.3 * i + 0.5));
    }
    v.normalize();
    w.normalize();

    double res_r = (L * v).norm() / norm_l;
    double res_l = (L.adjoint() * w).norm() / norm_l;
    for (int sweep = 0; sweep < opts.max_sweeps && (res_r > opts.tol || res_l > opts.tol); ++sweep) {
        if (res_r > opts.tol) {
            v = lu.solve(v);
            v.normalize();
            res_r = (L * v).norm() / norm_l;
        }
        if (res_l > opts.tol) {
            w = lu_adj.solve(w);
            w.normalize();
            res_l = (L.adjoint() * w).norm() / norm_l;
        }
    }
    return {v, w, std::max(res_r, res_l)};
}

/// All finite eigenvalues of x*M1 + M0. With invertible M1 this reduces
/// to the dense eigenproblem of -M1^{-1} M0 (Hessenberg plus shifted QR
/// under the hood); otherwise the real QZ path handles the singular
/// leading coefficient.
inline EigResult pencil_eig(const Eigen::MatrixXd& M1, const Eigen::MatrixXd& M0,
                            const EigOptions& opts = {}) {
    if (M1.rows() != M1.cols() || M0.rows() != M0.cols() || M1.rows() != M0.rows())
        throw precondition_error("square pencil required");
    if (opts.tol <= 0) throw precondition_error("tol > 0 required");
    int n = static_cast<int>(M1.rows());
    EigResult out;
    if (n == 0) return out;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M1);
    qr.setThreshold(1e-12 * std::max(1.0, M1.norm()));
    int rank = static_cast<int>(qr.rank());
    out.infinite_count = n - rank;

    std::vector<Complex> values;
    if (rank == n) {
        Eigen::MatrixXd t = M1.partialPivLu().solve(-M0);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(t.cast<Complex>(), false);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("dense eigensolver failed to converge");
        for (int i = 0; i < n; ++i) values.push_back(solver.eigenvalues()(i));
    } else {
        Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> solver(-M0, M1, false);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("generalized eigensolver failed to converge");
        double scale = std::max(1.0, M0.norm() + M1.norm());
        for (int i = 0; i < n; ++i) {
            Complex alpha = solver.alphas()(i);
            double beta = solver.betas()(i);
            if (std::abs(beta) > 1e-12 * std::max(scale, std::abs(alpha)))
                values.push_back(alpha / beta);
        }
    }

    for (const Complex& lam : values) {
        auto [v, w, res] = eigvec_at(M1, M0, lam, opts);
        out.eigenvalues.push_back(lam);
        out.right_vectors.push_back(std::move(v));
        out.left_vectors.push_back(std::move(w));
        out.residuals.push_back(res);
        out.converged.push_back(res <= opts.tol);
    }
    return out;
}

inline EigResult pencil_eig(const Pencil& pencil, const EigOptions& opts = {}) {
    return pencil_eig(to_double(pencil.m1()), to_double(pencil.m0()), opts);
}

/// Per-eigenpair recovery diagnostics for a linearization of a regular P.
struct RecoveryEntry {
    Complex eigenvalue;
    double right_residual = 0.0;  // ||P(lam) x|| / (||P(lam)|| ||x||)
    double left_residual = 0.0;
    std::optional<double> exact_angle;  // vs. the exact map at a rational eigenvalue
    bool converged = true;
};

struct RecoveryReport {
    std::vector<RecoveryEntry> entries;

    double max_right_residual() const {
        double m = 0.0;
        for (const auto& e : entries) m = std::max(m, e.right_residual);
        return m;
    }
    double max_left_residual() const {
        double m = 0.0;
        for (const auto& e : entries) m = std::max(m, e.left_residual);
        return m;
    }
    bool all_within(double tol) const {
        for (const auto& e : entries)
            if (!e.converged || e.right_residual > tol || e.left_residual > tol) return false;
        return true;
    }
};

namespace detail {
/// Nearest rational with small denominator, when the float is close to one.
inline std::optional<Rational> nearby_rational(const Complex& z, double tol = 1e-9,
                                               long max_den = 1024) {
    if (std::abs(z.imag()) > tol) return std::nullopt;
    double x = z.real();
    // continued-fraction convergents
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int step = 0; step < 64; ++step) {
        double fl = std::floor(r);
        long a = static_cast<long>(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) < tol) {
            return make_rational(Int(p1), Int(q1));
        }
        double frac = r - fl;
        if (std::abs(frac) < 1e-12) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

inline double angle_between(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    double cosv = std::abs(a.dot(b)) / (a.norm() * b.norm());
    return std::acos(std::min(1.0, cosv));
}
}  // namespace detail

/// For every eigenpair of the linearization, reads the candidate
/// eigenvector of P out of the input-column (right) and output-row
/// (left) positions and reports its residual against P. At rational
/// eigenvalues the exact recovery map is applied in the reverse
/// direction and compared by angle.
inline RecoveryReport recover_and_check(const SystemMatrix& sm, const EigResult& eig,
                                        const PolyMatrix& P, const EigOptions& opts = {}) {
    if (P.rows() != P.cols()) throw precondition_error("square P required");
    if (P.determinant().is_zero()) throw precondition_error("regular P required");
    RecoveryReport report;
    for (size_t i = 0; i < eig.eigenvalues.size(); ++i) {
        RecoveryEntry entry;
        entry.eigenvalue = eig.eigenvalues[i];
        entry.converged = eig.converged[i];
        Eigen::MatrixXcd pl = eval_complex(P, entry.eigenvalue);
        double norm_p = pl.norm();

        const Eigen::VectorXcd& v = eig.right_vectors[i];
        Eigen::VectorXcd x(sm.num_inputs());
        for (int j = 0; j < sm.num_inputs(); ++j) x(j) = v(sm.input_cols()[static_cast<size_t>(j)]);
        entry.right_residual = (norm_p > 0 && x.norm() > 0)
                                   ? (pl * x).norm() / (norm_p * x.norm())
                                   : 1.0;

        const Eigen::VectorXcd& w = eig.left_vectors[i];
        Eigen::VectorXcd y(sm.num_outputs());
        for (int j = 0; j < sm.num_outputs(); ++j) y(j) = w(sm.output_rows()[static_cast<size_t>(j)]);
        entry.left_residual = (norm_p > 0 && y.norm() > 0)
                                  ? (pl.adjoint() * y).norm() / (norm_p * y.norm())
                                  : 1.0;

        if (auto rat = detail::nearby_rational(entry.eigenvalue)) {
            ConstMatrix p_at = P.eval(*rat);
            auto kernel = p_at.kernel();
            if (!kernel.empty() && sm.state_block().eval(*rat).rank() == sm.state_size()) {
                std::vector<Rational> exact = recover_right(sm, *rat, kernel.front());
                Eigen::VectorXcd ve(static_cast<int>(exact.size()));
                for (size_t j = 0; j < exact.size(); ++j)
                    ve(static_cast<int>(j)) = to_double(exact[j]);
                entry.exact_angle = detail::angle_between(ve, v);
            }
        }
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace polypencil
