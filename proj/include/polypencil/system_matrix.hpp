#pragma once

#include <map>
#include <string>
#include <vector>

#include "polypencil/report.hpp"
#include "polypencil/smith.hpp"

namespace polypencil {

/// Where the state block sits inside the stored matrix. The scattered
/// case carries explicit row/column index sets; the block Kronecker
/// partitions interleave state rows and columns, so contiguous
/// placements alone cannot describe them.
enum class StateLayout { top_left, bottom_left, bottom_right, top_right, scattered };

inline std::string to_string(StateLayout l) {
    switch (l) {
        case StateLayout::top_left: return "top_left";
        case StateLayout::bottom_left: return "bottom_left";
        case StateLayout::bottom_right: return "bottom_right";
        case StateLayout::top_right: return "top_right";
        case StateLayout::scattered: return "scattered";
    }
    return "?";
}

inline StateLayout layout_from_string(const std::string& s) {
    if (s == "top_left") return StateLayout::top_left;
    if (s == "bottom_left") return StateLayout::bottom_left;
    if (s == "bottom_right") return StateLayout::bottom_right;
    if (s == "top_right") return StateLayout::top_right;
    if (s == "scattered") return StateLayout::scattered;
    throw std::invalid_argument("unknown state layout '" + s + "'");
}

/// A polynomial matrix with a designated square state block A of size n,
/// splitting it into blocks (A, B, -C, D). The block stored at the C
/// position is -C, matching the sign convention of each printed
/// partition. The transfer function D + C A^{-1} B is the Schur
/// complement of A.
class SystemMatrix {
public:
    SystemMatrix(PolyMatrix s, int n, StateLayout layout) : s_(std::move(s)) {
        if (layout == StateLayout::scattered)
            throw std::invalid_argument("scattered layout needs explicit index sets");
        if (n < 0 || n > s_.rows() || n > s_.cols())
            throw std::invalid_argument("state size out of range");
        layout_ = layout;
        int p = s_.rows() - n, m = s_.cols() - n;
        bool rows_top = (layout == StateLayout::top_left || layout == StateLayout::top_right);
        bool cols_left = (layout == StateLayout::top_left || layout == StateLayout::bottom_left);
        for (int i = 0; i < n; ++i) {
            state_rows_.push_back(rows_top ? i : p + i);
            state_cols_.push_back(cols_left ? i : m + i);
        }
        finish_init();
    }

    SystemMatrix(PolyMatrix s, std::vector<int> state_rows, std::vector<int> state_cols)
        : s_(std::move(s)), state_rows_(std::move(state_rows)), state_cols_(std::move(state_cols)) {
        layout_ = detect_layout();
        finish_init();
    }

    const PolyMatrix& matrix() const { return s_; }
    StateLayout layout() const { return layout_; }

    int state_size() const { return static_cast<int>(state_rows_.size()); }
    /// Output count p and input count m of the transfer function.
    int num_outputs() const { return s_.rows() - state_size(); }
    int num_inputs() const { return s_.cols() - state_size(); }

    const std::vector<int>& state_rows() const { return state_rows_; }
    const std::vector<int>& state_cols() const { return state_cols_; }
    const std::vector<int>& output_rows() const { return comp_rows_; }
    const std::vector<int>& input_cols() const { return comp_cols_; }

    PolyMatrix state_block() const { return s_.submatrix(state_rows_, state_cols_); }
    PolyMatrix input_block() const { return s_.submatrix(state_rows_, comp_cols_); }
    /// The stored block at the C position; equals -C.
    PolyMatrix neg_output_block() const { return s_.submatrix(comp_rows_, state_cols_); }
    PolyMatrix feedthrough_block() const { return s_.submatrix(comp_rows_, comp_cols_); }

    bool is_pencil() const { return s_.degree() <= 1; }
    Pencil pencil() const { return Pencil::from_poly(s_); }

    /// The stored matrix with state rows/columns gathered first:
    /// [[A, B], [-C, D]].
    PolyMatrix canonical_matrix() const {
        std::vector<int> ri = state_rows_, ci = state_cols_;
        ri.insert(ri.end(), comp_rows_.begin(), comp_rows_.end());
        ci.insert(ci.end(), comp_cols_.begin(), comp_cols_.end());
        return s_.submatrix(ri, ci);
    }

private:
    StateLayout detect_layout() const {
        int n = static_cast<int>(state_rows_.size());
        int p = s_.rows() - n, m = s_.cols() - n;
        auto contiguous_from = [](const std::vector<int>& v, int start) {
            for (size_t i = 0; i < v.size(); ++i)
                if (v[i] != start + static_cast<int>(i)) return false;
            return true;
        };
        bool top = contiguous_from(state_rows_, 0), bottom = contiguous_from(state_rows_, p);
        bool left = contiguous_from(state_cols_, 0), right = contiguous_from(state_cols_, m);
        if (top && left) return StateLayout::top_left;
        if (bottom && left) return StateLayout::bottom_left;
        if (bottom && right) return StateLayout::bottom_right;
        if (top && right) return StateLayout::top_right;
        return StateLayout::scattered;
    }

    void finish_init() {
        if (state_rows_.size() != state_cols_.size())
            throw std::invalid_argument("state block must be square");
        auto validate = [](const std::vector<int>& v, int bound) {
            for (size_t i = 0; i < v.size(); ++i) {
                if (v[i] < 0 || v[i] >= bound) throw std::invalid_argument("state index out of range");
                if (i > 0 && v[i] <= v[i - 1]) throw std::invalid_argument("state indices must ascend");
            }
        };
        validate(state_rows_, s_.rows());
        validate(state_cols_, s_.cols());
        for (int i = 0; i < s_.rows(); ++i)
            if (std::find(state_rows_.begin(), state_rows_.end(), i) == state_rows_.end())
                comp_rows_.push_back(i);
        for (int j = 0; j < s_.cols(); ++j)
            if (std::find(state_cols_.begin(), state_cols_.end(), j) == state_cols_.end())
                comp_cols_.push_back(j);
        if (state_block().determinant().is_zero())
            throw precondition_error("state block is singular");
    }

    PolyMatrix s_;
    std::vector<int> state_rows_, state_cols_;
    std::vector<int> comp_rows_, comp_cols_;
    StateLayout layout_;
};

struct TransferResult {
    RatMatrix G;
    bool is_polynomial = false;
};

/// Schur complement of the state block: D + C A^{-1} B, with the stored
/// C-position block already carrying the minus sign.
inline TransferResult transfer_function(const SystemMatrix& sm) {
    int n = sm.state_size();
    RatMatrix g(sm.num_outputs(), sm.num_inputs());
    if (n == 0) {
        g = RatMatrix(sm.feedthrough_block());
    } else {
        RatMatrix x = solve_rational(sm.state_block(), sm.input_block());
        g = RatMatrix(sm.feedthrough_block()) - RatMatrix(sm.neg_output_block()) * x;
    }
    TransferResult out;
    out.is_polynomial = g.is_polynomial();
    out.G = std::move(g);
    return out;
}

/// Minimality via trivial Smith forms of [A B] and [A; -C]; equivalent
/// to the full-rank condition at every point of the closure.
inline bool is_minimal(const SystemMatrix& sm) {
    auto trivial = [](const SmithData& s, int n) {
        if (static_cast<int>(s.invariant_factors.size()) != n) return false;
        for (const auto& f : s.invariant_factors)
            if (!f.is_one()) return false;
        return true;
    };
    int n = sm.state_size();
    if (n == 0) return true;
    return trivial(smith_form(sm.state_block().hcat(sm.input_block())), n) &&
           trivial(smith_form(sm.state_block().vcat(sm.neg_output_block())), n);
}

namespace detail {
inline std::vector<int> positive_orders(const LocalOrders& lo) {
    std::vector<int> out;
    for (int o : lo.orders)
        if (o > 0) out.push_back(o);
    return out;
}
inline std::vector<int> negated_negative_orders(const LocalOrders& lo) {
    std::vector<int> out;
    for (int o : lo.orders)
        if (o < 0) out.push_back(-o);
    std::sort(out.begin(), out.end());
    return out;
}
inline std::string order_list_str(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}
}  // namespace detail

/// Pole/zero recovery check at rational probe points: partial
/// multiplicities of the state block must match the pole orders of the
/// transfer function, and those of the whole matrix its zero orders.
/// Requires a minimal system matrix.
inline Report check_rosenbrock_theorem(const SystemMatrix& sm, const std::vector<Rational>& probes) {
    if (!is_minimal(sm))
        throw precondition_error("system matrix is not minimal");
    Report report;
    RatMatrix g = transfer_function(sm).G;
    for (const Rational& c : probes) {
        LocalOrders g_orders = local_orders_at(g, c);
        std::vector<int> g_poles = detail::negated_negative_orders(g_orders);
        std::vector<int> g_zeros = detail::positive_orders(g_orders);

        std::vector<int> a_eigs = detail::positive_orders(local_orders_at(sm.state_block(), c));
        std::vector<int> s_eigs = detail::positive_orders(local_orders_at(sm.matrix(), c));

        std::string pt = to_string(c);
        report.add("pole-orders@" + pt, a_eigs == g_poles,
                   "state " + detail::order_list_str(a_eigs) + " vs transfer poles " +
                       detail::order_list_str(g_poles));
        report.add("zero-orders@" + pt, s_eigs == g_zeros,
                   "system " + detail::order_list_str(s_eigs) + " vs transfer zeros " +
                       detail::order_list_str(g_zeros));
    }
    return report;
}

/// Right nullspace map: places -A(c)^{-1} B(c) x in the state column
/// positions and x in the input column positions, so S(c) v = 0 whenever
/// G(c) x = 0.
inline std::vector<Rational> recover_right(const SystemMatrix& sm, const Rational& point,
                                           const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != sm.num_inputs())
        throw std::invalid_argument("input vector length mismatch");
    int n = sm.state_size(), m = sm.num_inputs();
    ConstMatrix xs(m, 1);
    for (int i = 0; i < m; ++i) xs.at(i, 0) = x[static_cast<size_t>(i)];

    std::vector<Rational> v(static_cast<size_t>(n + m), Rational(0));
    if (n > 0) {
        ConstMatrix a = sm.state_block().eval(point);
        if (a.rank() < n) throw precondition_error("state block singular at the point");
        ConstMatrix top = -(a.solve(sm.input_block().eval(point) * xs));
        for (int i = 0; i < n; ++i)
            v[static_cast<size_t>(sm.state_cols()[static_cast<size_t>(i)])] = top.at(i, 0);
    }
    for (int i = 0; i < m; ++i)
        v[static_cast<size_t>(sm.input_cols()[static_cast<size_t>(i)])] = x[static_cast<size_t>(i)];
    return v;
}

/// Left analogue: y^T C(c) A(c)^{-1} in the state row positions, y^T in
/// the output row positions, so w S(c) = 0 whenever y^T G(c) = 0.
inline std::vector<Rational> recover_left(const SystemMatrix& sm, const Rational& point,
                                          const std::vector<Rational>& y) {
    if (static_cast<int>(y.size()) != sm.num_outputs())
        throw std::invalid_argument("output vector length mismatch");
    int n = sm.state_size(), p = sm.num_outputs();
    ConstMatrix ys(1, p);
    for (int i = 0; i < p; ++i) ys.at(0, i) = y[static_cast<size_t>(i)];

    std::vector<Rational> w(static_cast<size_t>(n + p), Rational(0));
    if (n > 0) {
        ConstMatrix a = sm.state_block().eval(point);
        if (a.rank() < n) throw precondition_error("state block singular at the point");
        // y^T C A^{-1} via the transposed system; stored block is -C
        ConstMatrix c = -sm.neg_output_block().eval(point);
        ConstMatrix left = a.transpose().solve((ys * c).transpose()).transpose();
        for (int i = 0; i < n; ++i)
            w[static_cast<size_t>(sm.state_rows()[static_cast<size_t>(i)])] = left.at(0, i);
    }
    for (int i = 0; i < p; ++i)
        w[static_cast<size_t>(sm.output_rows()[static_cast<size_t>(i)])] = y[static_cast<size_t>(i)];
    return w;
}

}  // namespace polypencil
