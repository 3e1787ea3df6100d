#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "filippov/matrix.hpp"
#include "filippov/rational.hpp"

namespace filippov {

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots; // strictly increasing pivot column indices
};

namespace detail {

/// Scale a rational row to a primitive integer row (content 1).
/// Row scaling preserves row space, so the final RREF is unaffected.
inline std::vector<BigInt> primitive_int_row(const std::vector<Rational>& row) {
    BigInt den_lcm = 1;
    for (const auto& x : row)
        if (!x.is_zero())
            den_lcm = lcm(den_lcm, x.den());
    std::vector<BigInt> out(row.size());
    BigInt content = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].is_zero())
            continue;
        out[i] = row[i].num() * (den_lcm / row[i].den());
        content = gcd(content, out[i]);
    }
    if (content > 1)
        for (auto& x : out)
            x /= content;
    return out;
}

inline void reprimitivize(std::vector<BigInt>& row) {
    BigInt content = 0;
    for (const auto& x : row) {
        content = gcd(content, x);
        if (content == 1)
            return;
    }
    if (content > 1)
        for (auto& x : row)
            x /= content;
}

/// Fraction-free Gauss-Jordan on primitive integer rows. Returns pivot
/// columns; on exit rows 0..pivots-1 hold the echelon rows (integer,
/// primitive, zero above and below each pivot), remaining rows are zero.
inline std::vector<std::size_t> eliminate(std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t col = 0; col < cols && next < rows.size(); ++col) {
        std::size_t prow = next;
        while (prow < rows.size() && rows[prow][col] == 0)
            ++prow;
        if (prow == rows.size())
            continue;
        std::swap(rows[next], rows[prow]);
        const std::vector<BigInt>& p = rows[next];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == next || rows[r][col] == 0)
                continue;
            // row_r := p[col]*row_r - row_r[col]*p, then strip the content
            const BigInt f = rows[r][col];
            const BigInt g = p[col];
            auto& target = rows[r];
            for (std::size_t c = 0; c < cols; ++c) {
                if (c == col) {
                    target[c] = 0;
                    continue;
                }
                target[c] = g * target[c] - f * p[c];
            }
            reprimitivize(target);
        }
        pivots.push_back(col);
        ++next;
    }
    return pivots;
}

} // namespace detail

/// Unique reduced row echelon form over the rationals.
inline RrefResult rref(const Matrix& m) {
    std::vector<std::vector<BigInt>> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<Rational> row(m.entries().begin() + static_cast<std::ptrdiff_t>(r * m.cols()),
                                  m.entries().begin() + static_cast<std::ptrdiff_t>((r + 1) * m.cols()));
        rows.push_back(detail::primitive_int_row(row));
    }
    auto pivots = detail::eliminate(rows, m.cols());
    Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const BigInt& lead = rows[r][pivots[r]];
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (rows[r][c] != 0)
                out(r, c) = Rational(rows[r][c], lead);
    }
    return {std::move(out), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of {x : m*x = 0} as column vectors, one per free column of rref(m),
/// in ascending free-column order. Each vector is re-checked exactly.
inline std::vector<Matrix> nullspace(const Matrix& m) {
    const auto [red, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<Matrix> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Matrix v(m.cols(), 1);
        v(free, 0) = Rational(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v(pivots[i], 0) = -red(i, free);
        basis.push_back(std::move(v));
    }
    for (const auto& v : basis)
        if (!(m * v).is_zero())
            throw std::logic_error("nullspace: candidate vector fails m*v = 0");
    return basis;
}

/// One particular solution of m*x = b (free variables set to zero), or
/// nullopt when the system is inconsistent. b may have several columns.
inline std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
    if (b.rows() != m.rows())
        throw std::invalid_argument("solve: b row count differs from m");
    Matrix aug(m.rows(), m.cols() + b.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            aug(r, c) = m(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c)
            aug(r, m.cols() + c) = b(r, c);
    }
    const auto [red, pivots] = rref(aug);
    for (auto p : pivots)
        if (p >= m.cols())
            return std::nullopt;
    Matrix x(m.cols(), b.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t c = 0; c < b.cols(); ++c)
            x(pivots[i], c) = red(i, m.cols() + c);
    return x;
}

/// Stack matrices (or any equal-shape blocks) as flattened rows.
inline Matrix stack_flattened(const std::vector<Matrix>& ms) {
    if (ms.empty())
        return Matrix();
    const std::size_t width = ms.front().rows() * ms.front().cols();
    Matrix out(ms.size(), width);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i].rows() * ms[i].cols() != width)
            throw std::invalid_argument("stack_flattened: shape mismatch");
        for (std::size_t j = 0; j < width; ++j)
            out(i, j) = ms[i].entries()[j];
    }
    return out;
}

inline std::size_t span_rank(const std::vector<Matrix>& ms) {
    if (ms.empty())
        return 0;
    return rank(stack_flattened(ms));
}

/// span(sup) contains every element of sub, by rank comparison of stacked
/// flattenings (never by coefficient matching of a particular basis).
inline bool span_contains(const std::vector<Matrix>& sup, const std::vector<Matrix>& sub) {
    if (sub.empty())
        return true;
    if (sup.empty()) {
        for (const auto& m : sub)
            if (!m.is_zero())
                return false;
        return true;
    }
    std::vector<Matrix> joint = sup;
    joint.insert(joint.end(), sub.begin(), sub.end());
    return span_rank(joint) == span_rank(sup);
}

inline bool span_equal(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    return span_contains(a, b) && span_contains(b, a);
}

/// Row-echelon accumulator over flattened matrices: O(rank * width) insert
/// and membership, for incremental closure computations.
class EchelonSpan {
public:
    explicit EchelonSpan(std::size_t width) : width_(width) {}

    /// Adds the vector to the span; returns true when the rank grew.
    bool insert(const Matrix& m) {
        std::vector<Rational> v = flatten(m);
        reduce(v);
        std::size_t lead = leading(v);
        if (lead == width_)
            return false;
        const Rational inv = Rational(1) / v[lead];
        for (auto& x : v)
            x *= inv;
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
        const std::size_t at = static_cast<std::size_t>(pos - pivots_.begin());
        pivots_.insert(pos, lead);
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
        return true;
    }

    bool contains(const Matrix& m) const {
        std::vector<Rational> v = flatten(m);
        reduce(v);
        return leading(v) == width_;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    std::vector<Rational> flatten(const Matrix& m) const {
        if (m.rows() * m.cols() != width_)
            throw std::invalid_argument("EchelonSpan: shape mismatch");
        return m.entries();
    }

    void reduce(std::vector<Rational>& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& c = v[pivots_[i]];
            if (c.is_zero())
                continue;
            const Rational f = c;
            const auto& row = rows_[i];
            for (std::size_t j = pivots_[i]; j < width_; ++j)
                if (!row[j].is_zero())
                    v[j] -= f * row[j];
        }
    }

    std::size_t leading(const std::vector<Rational>& v) const {
        for (std::size_t j = 0; j < width_; ++j)
            if (!v[j].is_zero())
                return j;
        return width_;
    }

    std::size_t width_;
    std::vector<std::vector<Rational>> rows_; // echelon rows, pivot-sorted
    std::vector<std::size_t> pivots_;
};

/// Canonical basis of a span: nonzero RREF rows of the stacked flattening,
/// unflattened to the given shape. Deterministic for any spanning set.
inline std::vector<Matrix> span_basis(const std::vector<Matrix>& ms,
                                      std::size_t shape_rows, std::size_t shape_cols) {
    std::vector<Matrix> out;
    if (ms.empty())
        return out;
    const auto [red, pivots] = rref(stack_flattened(ms));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Matrix m(shape_rows, shape_cols);
        for (std::size_t j = 0; j < shape_rows * shape_cols; ++j)
            m.entries()[j] = red(i, j);
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace filippov
