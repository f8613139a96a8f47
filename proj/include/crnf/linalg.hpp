#pragma once

// Exact dense linear algebra over Rational or GaussCoeff.

#include "crnf/error.hpp"
#include "crnf/gauss.hpp"

#include <optional>
#include <vector>

namespace crnf {

template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = F(1);
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    F &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const F &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] std::vector<F> apply(const std::vector<F> &x) const
    {
        if (x.size() != cols_) {
            throw DimensionError("matrix-vector size mismatch");
        }
        std::vector<F> y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            F acc{};
            for (std::size_t c = 0; c < cols_; ++c) {
                if (!is_zero((*this)(r, c)) && !is_zero(x[c])) {
                    acc += (*this)(r, c) * x[c];
                }
            }
            y[r] = acc;
        }
        return y;
    }

    friend bool operator==(const Matrix &, const Matrix &) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

/// In-place reduced row echelon form; returns the pivot column of each pivot row.
template <class F>
std::vector<std::size_t> rref(Matrix<F> &a)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && is_zero(a(sel, col))) {
            ++sel;
        }
        if (sel == a.rows()) {
            continue;
        }
        if (sel != row) {
            for (std::size_t c = 0; c < a.cols(); ++c) {
                std::swap(a(sel, c), a(row, c));
            }
        }
        const F inv = F(1) / a(row, col);
        for (std::size_t c = col; c < a.cols(); ++c) {
            if (!is_zero(a(row, c))) {
                a(row, c) *= inv;
            }
        }
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || is_zero(a(r, col))) {
                continue;
            }
            const F f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c) {
                if (!is_zero(a(row, c))) {
                    a(r, c) -= f * a(row, c);
                }
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Basis of {x : A x = 0}, one vector per free column, ordered by free column.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> a)
{
    const auto pivots = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::vector<F>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<F> v(a.cols());
        v[free] = F(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -a(r, free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Inverse of a square matrix, or nullopt when singular.
template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F> &a)
{
    if (a.rows() != a.cols()) {
        throw DimensionError("inverse of a non-square matrix");
    }
    const std::size_t n = a.rows();
    Matrix<F> aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            aug(r, c) = a(r, c);
        }
        aug(r, n + r) = F(1);
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        return std::nullopt;
    }
    Matrix<F> out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out(r, c) = aug(r, n + c);
        }
    }
    return out;
}

/// Unique solution of the square system A x = b, or nullopt when A is singular.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F> &a, const std::vector<F> &b)
{
    if (a.rows() != a.cols() || b.size() != a.rows()) {
        throw DimensionError("solve: shape mismatch");
    }
    const std::size_t n = a.rows();
    if (n == 0) {
        return std::vector<F>{};
    }
    Matrix<F> aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            aug(r, c) = a(r, c);
        }
        aug(r, n) = b[r];
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        return std::nullopt;
    }
    std::vector<F> x(n);
    for (std::size_t r = 0; r < n; ++r) {
        x[r] = aug(r, n);
    }
    return x;
}

} // namespace crnf
