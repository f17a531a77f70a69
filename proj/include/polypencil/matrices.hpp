#pragma once

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polypencil/ratfunc.hpp"

namespace polypencil {

namespace detail {
inline void check_dims(int rows, int cols) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("negative matrix dimension");
}
}  // namespace detail

/// Dense matrix of rationals.
class ConstMatrix {
public:
    ConstMatrix() : rows_(0), cols_(0) {}
    ConstMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        detail::check_dims(rows, cols);
        a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), Rational(0));
    }
    ConstMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw std::invalid_argument("ragged matrix initializer");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static ConstMatrix identity(int n) {
        ConstMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[idx(i, j)]; }
    const Rational& at(int i, int j) const { return a_[idx(i, j)]; }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x == 0; });
    }

    friend bool operator==(const ConstMatrix& a, const ConstMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const ConstMatrix& a, const ConstMatrix& b) { return !(a == b); }

    ConstMatrix operator-() const {
        ConstMatrix r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }

    friend ConstMatrix operator+(const ConstMatrix& a, const ConstMatrix& b) {
        a.require_same_shape(b);
        ConstMatrix r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }

    friend ConstMatrix operator-(const ConstMatrix& a, const ConstMatrix& b) { return a + (-b); }

    friend ConstMatrix operator*(const ConstMatrix& a, const ConstMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        ConstMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Rational& aik = a.at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    friend ConstMatrix operator*(const Rational& s, const ConstMatrix& m) {
        ConstMatrix r = m;
        for (auto& x : r.a_) x *= s;
        return r;
    }

    ConstMatrix transpose() const {
        ConstMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    ConstMatrix hcat(const ConstMatrix& o) const {
        if (rows_ != o.rows_) throw std::invalid_argument("hcat row mismatch");
        ConstMatrix r(rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    ConstMatrix vcat(const ConstMatrix& o) const {
        if (cols_ != o.cols_) throw std::invalid_argument("vcat column mismatch");
        ConstMatrix r(rows_ + o.rows_, cols_);
        for (int j = 0; j < cols_; ++j) {
            for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, j);
            for (int i = 0; i < o.rows_; ++i) r.at(rows_ + i, j) = o.at(i, j);
        }
        return r;
    }

    /// Exact rank by Gaussian elimination.
    int rank() const {
        ConstMatrix m = *this;
        int rank = 0;
        for (int col = 0; col < cols_ && rank < rows_; ++col) {
            int pivot = -1;
            for (int i = rank; i < rows_; ++i)
                if (m.at(i, col) != 0) { pivot = i; break; }
            if (pivot < 0) continue;
            m.swap_rows(rank, pivot);
            for (int i = rank + 1; i < rows_; ++i) {
                if (m.at(i, col) == 0) continue;
                Rational f = m.at(i, col) / m.at(rank, col);
                for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(rank, j);
            }
            ++rank;
        }
        return rank;
    }

    Rational determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
        ConstMatrix m = *this;
        Rational det(1);
        for (int col = 0; col < cols_; ++col) {
            int pivot = -1;
            for (int i = col; i < rows_; ++i)
                if (m.at(i, col) != 0) { pivot = i; break; }
            if (pivot < 0) return Rational(0);
            if (pivot != col) {
                m.swap_rows(col, pivot);
                det = -det;
            }
            det *= m.at(col, col);
            for (int i = col + 1; i < rows_; ++i) {
                if (m.at(i, col) == 0) continue;
                Rational f = m.at(i, col) / m.at(col, col);
                for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
            }
        }
        return det;
    }

    /// Solves (*this) * X = B exactly; throws on singular or shape mismatch.
    ConstMatrix solve(const ConstMatrix& rhs) const {
        if (rows_ != cols_) throw std::invalid_argument("solve requires square matrix");
        if (rhs.rows_ != rows_) throw std::invalid_argument("solve shape mismatch");
        ConstMatrix m = hcat(rhs);
        int n = rows_;
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int i = col; i < n; ++i)
                if (m.at(i, col) != 0) { pivot = i; break; }
            if (pivot < 0) throw std::domain_error("singular linear system");
            m.swap_rows(col, pivot);
            Rational p = m.at(col, col);
            for (int j = col; j < m.cols_; ++j) m.at(col, j) /= p;
            for (int i = 0; i < n; ++i) {
                if (i == col || m.at(i, col) == 0) continue;
                Rational f = m.at(i, col);
                for (int j = col; j < m.cols_; ++j) m.at(i, j) -= f * m.at(col, j);
            }
        }
        ConstMatrix x(n, rhs.cols_);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < rhs.cols_; ++j) x.at(i, j) = m.at(i, n + j);
        return x;
    }

    ConstMatrix inverse() const { return solve(identity(rows_)); }

    /// Basis of the right nullspace, one column vector per basis element.
    std::vector<std::vector<Rational>> kernel() const {
        ConstMatrix m = *this;
        std::vector<int> pivot_col;
        int rank = 0;
        for (int col = 0; col < cols_ && rank < rows_; ++col) {
            int pivot = -1;
            for (int i = rank; i < rows_; ++i)
                if (m.at(i, col) != 0) { pivot = i; break; }
            if (pivot < 0) continue;
            m.swap_rows(rank, pivot);
            Rational p = m.at(rank, col);
            for (int j = col; j < cols_; ++j) m.at(rank, j) /= p;
            for (int i = 0; i < rows_; ++i) {
                if (i == rank || m.at(i, col) == 0) continue;
                Rational f = m.at(i, col);
                for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(rank, j);
            }
            pivot_col.push_back(col);
            ++rank;
        }
        std::vector<std::vector<Rational>> basis;
        for (int col = 0; col < cols_; ++col) {
            if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end()) continue;
            std::vector<Rational> v(static_cast<size_t>(cols_), Rational(0));
            v[static_cast<size_t>(col)] = 1;
            for (int r = 0; r < rank; ++r)
                v[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] = -m.at(r, col);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

private:
    size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::out_of_range("matrix index");
        return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
    }

    void require_same_shape(const ConstMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_, cols_;
    std::vector<Rational> a_;
};

/// Rectangular matrix with polynomial entries.
class PolyMatrix {
public:
    PolyMatrix() : rows_(0), cols_(0) {}
    PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        detail::check_dims(rows, cols);
        a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), UniPoly());
    }
    PolyMatrix(std::initializer_list<std::initializer_list<UniPoly>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw std::invalid_argument("ragged matrix initializer");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }
    explicit PolyMatrix(const ConstMatrix& m) : PolyMatrix(m.rows(), m.cols()) {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) at(i, j) = UniPoly(m.at(i, j));
    }

    static PolyMatrix identity(int n) {
        PolyMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = UniPoly(Rational(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    UniPoly& at(int i, int j) { return a_[idx(i, j)]; }
    const UniPoly& at(int i, int j) const { return a_[idx(i, j)]; }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const UniPoly& p) { return p.is_zero(); });
    }

    /// Max entry degree; 0 for the zero matrix so reversal stays total.
    int degree() const {
        int d = 0;
        for (const auto& p : a_) d = std::max(d, p.degree());
        return d;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    PolyMatrix operator-() const {
        PolyMatrix r = *this;
        for (auto& p : r.a_) p = -p;
        return r;
    }

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
        PolyMatrix r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }

    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return a + (-b); }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        PolyMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const UniPoly& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j)
                    if (!b.at(k, j).is_zero()) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    friend PolyMatrix operator*(const UniPoly& s, const PolyMatrix& m) {
        PolyMatrix r = m;
        for (auto& p : r.a_) p = s * p;
        return r;
    }

    PolyMatrix transpose() const {
        PolyMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    ConstMatrix eval(const Rational& x) const {
        ConstMatrix r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j)(x);
        return r;
    }

    int rank_at(const Rational& x) const { return eval(x).rank(); }

    /// Entrywise x^ell * M(1/x); requires ell >= degree().
    PolyMatrix reversal(int ell) const {
        if (ell < degree())
            throw precondition_error("reversal order below matrix degree");
        PolyMatrix r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).reversal(ell);
        return r;
    }

    /// Exact determinant: cofactor expansion up to 3x3, fraction-free
    /// Bareiss elimination beyond.
    UniPoly determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
        int n = rows_;
        if (n == 0) return UniPoly(Rational(1));
        if (n == 1) return at(0, 0);
        if (n == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        if (n == 3) {
            UniPoly d;
            d += at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1));
            d -= at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0));
            d += at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
            return d;
        }
        return bareiss_determinant();
    }

    bool is_unimodular() const {
        UniPoly d = determinant();
        return !d.is_zero() && d.degree() == 0;
    }

    /// Coefficient matrix of x^d.
    ConstMatrix coefficient(int d) const {
        ConstMatrix r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).coeff(d);
        return r;
    }

    PolyMatrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
        PolyMatrix r(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
        for (size_t i = 0; i < row_idx.size(); ++i)
            for (size_t j = 0; j < col_idx.size(); ++j)
                r.at(static_cast<int>(i), static_cast<int>(j)) = at(row_idx[i], col_idx[j]);
        return r;
    }

    PolyMatrix hcat(const PolyMatrix& o) const {
        if (rows_ != o.rows_) throw std::invalid_argument("hcat row mismatch");
        PolyMatrix r(rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    PolyMatrix vcat(const PolyMatrix& o) const {
        if (cols_ != o.cols_) throw std::invalid_argument("vcat column mismatch");
        PolyMatrix r(rows_ + o.rows_, cols_);
        for (int j = 0; j < cols_; ++j) {
            for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, j);
            for (int i = 0; i < o.rows_; ++i) r.at(rows_ + i, j) = o.at(i, j);
        }
        return r;
    }

    void set_block(int row0, int col0, const PolyMatrix& b) {
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) at(row0 + i, col0 + j) = b.at(i, j);
    }

    void set_block(int row0, int col0, const ConstMatrix& b) {
        set_block(row0, col0, PolyMatrix(b));
    }

    std::string str(const std::string& var = "l") const {
        std::string out;
        for (int i = 0; i < rows_; ++i) {
            out += "[ ";
            for (int j = 0; j < cols_; ++j) {
                out += at(i, j).str(var);
                if (j + 1 < cols_) out += ", ";
            }
            out += " ]\n";
        }
        return out;
    }

private:
    UniPoly bareiss_determinant() const {
        PolyMatrix m = *this;
        int n = rows_;
        bool negate = false;
        UniPoly prev(Rational(1));
        for (int k = 0; k + 1 < n; ++k) {
            // pivot on a lowest-degree nonzero entry in column k
            int pivot = -1;
            for (int i = k; i < n; ++i) {
                if (m.at(i, k).is_zero()) continue;
                if (pivot < 0 || m.at(i, k).degree() < m.at(pivot, k).degree()) pivot = i;
            }
            if (pivot < 0) return UniPoly();
            if (pivot != k) {
                for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
                negate = !negate;
            }
            for (int i = k + 1; i < n; ++i) {
                for (int j = k + 1; j < n; ++j)
                    m.at(i, j) = exact_div(m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j), prev);
                m.at(i, k) = UniPoly();
            }
            prev = m.at(k, k);
        }
        UniPoly det = m.at(n - 1, n - 1);
        return negate ? -det : det;
    }

    size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::out_of_range("matrix index");
        return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
    }

    int rows_, cols_;
    std::vector<UniPoly> a_;
};

/// Constant pair (M0, M1) representing the degree-1 matrix x*M1 + M0.
class Pencil {
public:
    Pencil() = default;
    Pencil(ConstMatrix m0, ConstMatrix m1) : m0_(std::move(m0)), m1_(std::move(m1)) {
        if (m0_.rows() != m1_.rows() || m0_.cols() != m1_.cols())
            throw std::invalid_argument("pencil coefficient shape mismatch");
    }

    static Pencil from_poly(const PolyMatrix& m) {
        if (m.degree() > 1) throw precondition_error("matrix degree exceeds 1");
        return Pencil(m.coefficient(0), m.coefficient(1));
    }

    const ConstMatrix& m0() const { return m0_; }
    const ConstMatrix& m1() const { return m1_; }
    int rows() const { return m0_.rows(); }
    int cols() const { return m0_.cols(); }

    PolyMatrix to_poly() const {
        PolyMatrix r(rows(), cols());
        for (int i = 0; i < rows(); ++i)
            for (int j = 0; j < cols(); ++j)
                r.at(i, j) = UniPoly{m0_.at(i, j), m1_.at(i, j)};
        return r;
    }

    ConstMatrix eval(const Rational& x) const { return m0_ + x * m1_; }

    /// Degree-1 reversal swaps the coefficients.
    Pencil rev() const { return Pencil(m1_, m0_); }

    friend bool operator==(const Pencil& a, const Pencil& b) {
        return a.m0_ == b.m0_ && a.m1_ == b.m1_;
    }

private:
    ConstMatrix m0_, m1_;
};

/// Rectangular matrix with rational-function entries, kept canonical.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        detail::check_dims(rows, cols);
        a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), RatFunc());
    }
    RatMatrix(std::initializer_list<std::initializer_list<RatFunc>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw std::invalid_argument("ragged matrix initializer");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }
    explicit RatMatrix(const PolyMatrix& m) : RatMatrix(m.rows(), m.cols()) {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) at(i, j) = RatFunc(m.at(i, j));
    }

    static RatMatrix identity(int n) { return RatMatrix(PolyMatrix::identity(n)); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    RatFunc& at(int i, int j) { return a_[idx(i, j)]; }
    const RatFunc& at(int i, int j) const { return a_[idx(i, j)]; }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const RatFunc& f) { return f.is_zero(); });
    }

    bool is_polynomial() const {
        return std::all_of(a_.begin(), a_.end(), [](const RatFunc& f) { return f.is_polynomial(); });
    }

    PolyMatrix to_poly() const {
        if (!is_polynomial()) throw std::domain_error("matrix has non-polynomial entries");
        PolyMatrix r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).num();
        return r;
    }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

    RatMatrix operator-() const {
        RatMatrix r = *this;
        for (auto& f : r.a_) f = -f;
        return r;
    }

    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
        RatMatrix r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }

    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return a + (-b); }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        RatMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const RatFunc& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j)
                    if (!b.at(k, j).is_zero()) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    friend RatMatrix operator*(const RatFunc& s, const RatMatrix& m) {
        RatMatrix r = m;
        for (auto& f : r.a_) f = s * f;
        return r;
    }

    /// Rank over the rational-function field.
    int normal_rank() const {
        RatMatrix m = *this;
        int rank = 0;
        for (int col = 0; col < cols_ && rank < rows_; ++col) {
            int pivot = -1;
            for (int i = rank; i < rows_; ++i)
                if (!m.at(i, col).is_zero()) { pivot = i; break; }
            if (pivot < 0) continue;
            if (pivot != rank)
                for (int j = 0; j < cols_; ++j) std::swap(m.at(rank, j), m.at(pivot, j));
            for (int i = rank + 1; i < rows_; ++i) {
                if (m.at(i, col).is_zero()) continue;
                RatFunc f = m.at(i, col) / m.at(rank, col);
                for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(rank, j);
            }
            ++rank;
        }
        return rank;
    }

private:
    size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::out_of_range("matrix index");
        return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
    }

    int rows_, cols_;
    std::vector<RatFunc> a_;
};

/// Column of monomials [x^{k-1} ... x 1]^T tensored with I_m; (k*m) x m.
inline PolyMatrix build_lambda(int k, int m) {
    if (k < 1 || m < 1) throw precondition_error("build_lambda needs positive dimensions");
    PolyMatrix r(k * m, m);
    for (int b = 0; b < k; ++b)
        for (int i = 0; i < m; ++i)
            r.at(b * m + i, i) = UniPoly::monomial(k - 1 - b);
    return r;
}

/// Bidiagonal shift pencil [-1 x; -1 x; ...] tensored with I_s;
/// (k*s) x ((k+1)*s). Annihilates build_lambda(k+1, s) on the right.
inline PolyMatrix build_lk(int k, int s) {
    if (k < 1 || s < 1) throw precondition_error("build_lk needs positive dimensions");
    PolyMatrix r(k * s, (k + 1) * s);
    for (int b = 0; b < k; ++b)
        for (int i = 0; i < s; ++i) {
            r.at(b * s + i, b * s + i) = UniPoly(Rational(-1));
            r.at(b * s + i, (b + 1) * s + i) = UniPoly::monomial(1);
        }
    return r;
}

/// Exact solution X of A*X = B over the rational functions, by
/// fraction-free Gauss-Jordan elimination on the augmented matrix.
/// Intermediate entries stay polynomial (every division is exact);
/// fractions appear only in the final per-entry reduction. Pivots on the
/// lowest-degree nonzero entry to limit growth.
inline RatMatrix solve_rational(const PolyMatrix& A, const PolyMatrix& B) {
    if (A.rows() != A.cols()) throw std::invalid_argument("solve_rational requires square A");
    if (B.rows() != A.rows()) throw std::invalid_argument("solve_rational shape mismatch");
    int n = A.rows(), w = B.cols();
    PolyMatrix m = A.hcat(B);
    UniPoly prev(Rational(1));
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i) {
            if (m.at(i, k).is_zero()) continue;
            if (pivot < 0 || m.at(i, k).degree() < m.at(pivot, k).degree()) pivot = i;
        }
        if (pivot < 0) throw std::domain_error("singular polynomial system");
        if (pivot != k)
            for (int j = 0; j < n + w; ++j) std::swap(m.at(k, j), m.at(pivot, j));
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const UniPoly mik = m.at(i, k);
            for (int j = 0; j < n + w; ++j) {
                if (j == k) continue;
                m.at(i, j) = exact_div(m.at(i, j) * m.at(k, k) - mik * m.at(k, j), prev);
            }
            m.at(i, k) = UniPoly();
        }
        prev = m.at(k, k);
    }
    RatMatrix x(n, w);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < w; ++j) x.at(i, j) = RatFunc(m.at(i, n + j), m.at(i, i));
    return x;
}

}  // namespace polypencil
