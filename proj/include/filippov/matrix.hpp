#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "filippov/rational.hpp"

namespace filippov {

/// Dense matrix of exact rationals, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw std::invalid_argument("Matrix: ragged initializer");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = Rational(1);
        return m;
    }

    /// E_{rc}: single 1 at (r, c).
    static Matrix unit(std::size_t n, std::size_t r, std::size_t c) {
        Matrix m(n, n);
        m(r, c) = Rational(1);
        return m;
    }

    static Matrix column(const std::vector<Rational>& v) {
        Matrix m(v.size(), 1);
        m.entries_ = v;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<Rational>& entries() const { return entries_; }
    std::vector<Rational>& entries() { return entries_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero())
                return false;
        return true;
    }

    bool is_diagonal() const {
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (r != c && !(*this)(r, c).is_zero())
                    return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    Rational trace() const {
        require(is_square(), "trace of non-square matrix");
        Rational t;
        for (std::size_t i = 0; i < rows_; ++i)
            t += (*this)(i, i);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in +");
        for (std::size_t i = 0; i < entries_.size(); ++i)
            entries_[i] += o.entries_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in -");
        for (std::size_t i = 0; i < entries_.size(); ++i)
            entries_[i] -= o.entries_[i];
        return *this;
    }
    Matrix& operator*=(const Rational& s) {
        for (auto& e : entries_)
            e *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
    friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
    Matrix operator-() const {
        Matrix m = *this;
        for (auto& e : m.entries_)
            e = -e;
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix::require(a.cols_ == b.rows_, "shape mismatch in *");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik.is_zero())
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Rational& bkj = b(k, j);
                    if (!bkj.is_zero())
                        c(i, j) += aik * bkj;
                }
            }
        return c;
    }

    /// Commutator a*b - b*a.
    friend Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

    std::string str() const {
        std::string out;
        for (std::size_t r = 0; r < rows_; ++r) {
            out += r == 0 ? "[" : " ";
            for (std::size_t c = 0; c < cols_; ++c) {
                out += (*this)(r, c).str();
                if (c + 1 < cols_)
                    out += " ";
            }
            out += r + 1 < rows_ ? "\n" : "]";
        }
        return out;
    }

private:
    static void require(bool ok, const char* what) {
        if (!ok)
            throw std::invalid_argument(std::string("Matrix: ") + what);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

} // namespace filippov
