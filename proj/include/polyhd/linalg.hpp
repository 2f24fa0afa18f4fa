#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "polyhd/errors.hpp"

namespace polyhd {

/// Dense matrix over any ring-like value type T. T must provide +, -, *,
/// unary -, is_zero(), zero_like() and one_like().
template <typename T>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const T& sample) {
        Matrix m(n, n, sample.zero_like());
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = sample.one_like();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix r(cols_, rows_, a_[0]);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix r(rows_, o.cols_, a_[0].zero_like());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        return r;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        if (cols_ != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
        std::vector<T> r(rows_, a_[0].zero_like());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * v[j];
        return r;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> a_;
};

namespace detail {

template <typename T>
T det_cofactor(const Matrix<T>& m, std::vector<std::size_t> cols) {
    std::size_t row = m.rows() - cols.size();
    if (cols.size() == 1) return m.at(row, cols[0]);
    T acc = m.at(0, 0).zero_like();
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (m.at(row, cols[k]).is_zero()) continue;
        std::vector<std::size_t> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != k) rest.push_back(cols[j]);
        T minor = det_cofactor(m, std::move(rest));
        T contrib = m.at(row, cols[k]) * minor;
        acc = (k % 2 == 0) ? acc + contrib : acc - contrib;
    }
    return acc;
}

}  // namespace detail

/// Characteristic polynomial of a square matrix by the Samuelson-Berkowitz
/// iteration: division-free, valid over any commutative ring. Returns the
/// coefficients of det(lambda*I - A) with c[0] the lambda^n coefficient (= 1)
/// down to c[n] the constant term.
template <typename T>
std::vector<T> char_poly_berkowitz(const Matrix<T>& m) {
    if (!m.is_square()) throw NonSquareMatrix("characteristic polynomial of a non-square matrix");
    std::size_t n = m.rows();
    const T zero = m.at(0, 0).zero_like();
    const T one = m.at(0, 0).one_like();
    std::vector<T> p{one};  // char poly of the empty matrix
    for (std::size_t r = 1; r <= n; ++r) {
        // principal submatrix split: M = A[0..r-2]^2, R = last row, C = last col
        std::vector<T> s(r + 1, zero);
        s[0] = one;
        s[1] = -m.at(r - 1, r - 1);
        std::vector<T> v(r - 1, zero);
        for (std::size_t j = 0; j + 1 < r; ++j) v[j] = m.at(r - 1, j);
        for (std::size_t k = 2; k <= r; ++k) {
            T dot = zero;
            for (std::size_t j = 0; j + 1 < r; ++j)
                if (!v[j].is_zero()) dot = dot + v[j] * m.at(j, r - 1);
            s[k] = -dot;
            if (k == r) break;
            std::vector<T> w(r - 1, zero);
            for (std::size_t j = 0; j + 1 < r; ++j) {
                if (v[j].is_zero()) continue;
                for (std::size_t l = 0; l + 1 < r; ++l) w[l] = w[l] + v[j] * m.at(j, l);
            }
            v = std::move(w);
        }
        // Toeplitz product: q[i] = sum_{k} s[k] * p[i-k]
        std::vector<T> q(r + 1, zero);
        for (std::size_t i = 0; i <= r; ++i)
            for (std::size_t k = 0; k <= i && k <= r; ++k) {
                if (i - k >= p.size()) continue;
                if (s[k].is_zero() || p[i - k].is_zero()) continue;
                q[i] = q[i] + s[k] * p[i - k];
            }
        p = std::move(q);
    }
    return p;
}

/// Exact determinant: cofactor expansion for n <= 4, Berkowitz beyond (the
/// coefficient rings here include Z/m with zero divisors, so no elimination).
template <typename T>
T det(const Matrix<T>& m) {
    if (!m.is_square()) throw NonSquareMatrix("determinant of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) throw NonSquareMatrix("determinant of an empty matrix");
    if (n <= 4) {
        std::vector<std::size_t> cols(n);
        for (std::size_t j = 0; j < n; ++j) cols[j] = j;
        return detail::det_cofactor(m, std::move(cols));
    }
    std::vector<T> cp = char_poly_berkowitz(m);
    T d = cp[n];  // det(lambda I - A) at lambda = 0 is (-1)^n det(A)
    return (n % 2 == 0) ? d : -d;
}

/// adj(A) * v without materializing the adjugate: the same Cayley-Hamilton
/// polynomial evaluated by a Horner recurrence on the vector, using only
/// matrix-vector products.
template <typename T>
std::vector<T> adjugate_times(const Matrix<T>& m, const std::vector<T>& v) {
    if (!m.is_square()) throw NonSquareMatrix("adjugate of a non-square matrix");
    std::size_t n = m.rows();
    if (v.size() != n) throw DimensionMismatch("adjugate_times shape mismatch");
    if (n == 1) return v;
    std::vector<T> cp = char_poly_berkowitz(m);
    std::vector<T> b = v;
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        b = m * b;
        const T& cj = cp[k];
        if (!cj.is_zero())
            for (std::size_t i = 0; i < n; ++i) b[i] = b[i] + cj * v[i];
    }
    if (n % 2 == 0)
        for (T& x : b) x = -x;
    return b;
}

/// Adjugate via Cayley-Hamilton on the Berkowitz characteristic polynomial:
/// adj(A) = (-1)^{n+1} (A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I), so that
/// A * adj(A) = det(A) * I over any commutative ring.
template <typename T>
Matrix<T> adjugate(const Matrix<T>& m) {
    if (!m.is_square()) throw NonSquareMatrix("adjugate of a non-square matrix");
    std::size_t n = m.rows();
    const T& sample = m.at(0, 0);
    if (n == 1) return Matrix<T>::identity(1, sample);
    std::vector<T> cp = char_poly_berkowitz(m);  // cp[k] = coeff of lambda^{n-k}
    Matrix<T> b = Matrix<T>::identity(n, sample);
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        // b := A*b + c_{n-k} I   with c_j the lambda^j coefficient = cp[n-j]
        b = m * b;
        const T& cj = cp[k];
        for (std::size_t i = 0; i < n; ++i) b.at(i, i) = b.at(i, i) + cj;
    }
    if (n % 2 == 0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b.at(i, j) = -b.at(i, j);
    }
    return b;
}

}  // namespace polyhd
