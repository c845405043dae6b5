#pragma once

#include <vector>

#include "pdmom/errors.hpp"
#include "pdmom/rational.hpp"

namespace pdmom {

/// Minimal dense row-major matrix for the small exact solves in this library
/// (confluent Vandermonde systems, concomitant matrices). The floating
/// reconstruction path uses Eigen instead.
template <class Scalar>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Scalar& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

namespace detail {

template <class Scalar>
Scalar magnitude(const Scalar& x) {
    return x < Scalar(0) ? Scalar(-x) : x;
}

}  // namespace detail

/// Gaussian elimination with partial pivoting. Exact for Rat, standard for double.
template <class Scalar>
std::vector<Scalar> solve(Matrix<Scalar> a, std::vector<Scalar> b) {
    const size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw RangeError("solve: dimension mismatch");
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; ++r)
            if (detail::magnitude(a(r, col)) > detail::magnitude(a(pivot, col))) pivot = r;
        if (a(pivot, col) == Scalar(0)) throw SingularSystemError("solve: singular matrix");
        if (pivot != col) {
            for (size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            std::swap(b[pivot], b[col]);
        }
        for (size_t r = col + 1; r < n; ++r) {
            if (a(r, col) == Scalar(0)) continue;
            Scalar f = a(r, col) / a(col, col);
            for (size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    std::vector<Scalar> x(n, Scalar(0));
    for (size_t i = n; i-- > 0;) {
        Scalar acc = b[i];
        for (size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
        x[i] = acc / a(i, i);
    }
    return x;
}

template <class Scalar>
Scalar determinant(Matrix<Scalar> a) {
    const size_t n = a.rows();
    if (a.cols() != n) throw RangeError("determinant: not square");
    Scalar det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; ++r)
            if (detail::magnitude(a(r, col)) > detail::magnitude(a(pivot, col))) pivot = r;
        if (a(pivot, col) == Scalar(0)) return Scalar(0);
        if (pivot != col) {
            for (size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (size_t r = col + 1; r < n; ++r) {
            if (a(r, col) == Scalar(0)) continue;
            Scalar f = a(r, col) / a(col, col);
            for (size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

}  // namespace pdmom
