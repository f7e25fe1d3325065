#pragma once

// Dense matrices over an exact field and Gaussian elimination with
// first-nonzero pivoting. Scalars must provide is_zero, zero_like, one_like,
// inverse (see cyclo.hpp).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cyclo.hpp"
#include "error.hpp"

namespace rcatk {

template <class T>
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const T& one, const T& zero)
    {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = one;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows)
    {
        if (rows.empty() || rows.front().empty())
            throw DomainError(ErrorKind::InvalidArgument, "matrix needs at least one entry");
        Matrix m(rows.size(), rows.front().size(), rows.front().front());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw DomainError(ErrorKind::InvalidArgument, "ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows, const T& zero)
    {
        Matrix m(rows, cols.size(), zero);
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            out.push_back((*this)(i, j));
        return out;
    }

    std::vector<T> row(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }

    const std::vector<T>& data() const noexcept { return data_; }

    Matrix transpose() const
    {
        Matrix out(cols_, rows_, data_.front());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = (*this)(i, j);
        return out;
    }

    /// Conjugate transpose.
    Matrix adjoint() const
    {
        Matrix out(cols_, rows_, data_.front());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = conj((*this)(i, j));
        return out;
    }

    Matrix& operator+=(const Matrix& rhs)
    {
        check_shape(rhs);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += rhs.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& rhs)
    {
        check_shape(rhs);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= rhs.data_[k];
        return *this;
    }

    Matrix& operator*=(const T& s)
    {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw DomainError(ErrorKind::InvalidArgument, "matrix product shape mismatch");
        const T zero = zero_like(a.data_.front());
        Matrix out(a.rows_, b.cols_, zero);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (is_zero(aik))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!is_zero(b(k, j)))
                        out(i, j) += aik * b(k, j);
            }
        return out;
    }

    std::vector<T> apply(const std::vector<T>& v) const
    {
        if (v.size() != cols_)
            throw DomainError(ErrorKind::InvalidArgument, "matrix-vector shape mismatch");
        std::vector<T> out(rows_, zero_like(data_.front()));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero(v[j]) && !is_zero((*this)(i, j)))
                    out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_zero_matrix() const
    {
        for (const auto& x : data_)
            if (!is_zero(x))
                return false;
        return true;
    }

    std::size_t hash() const noexcept
    {
        std::size_t h = rows_ * 131 + cols_;
        for (const auto& x : data_)
            h = h * 1000003u ^ hash_scalar(x);
        return h;
    }

    std::string to_string() const
    {
        std::string out;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j)
                    out += " ; ";
                out += scalar_string((*this)(i, j));
            }
            out += '\n';
        }
        return out;
    }

private:
    void check_shape(const Matrix& rhs) const
    {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw DomainError(ErrorKind::InvalidArgument, "matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using CycloMatrix = Matrix<CyclotomicNumber>;
using RationalMatrix = Matrix<Rational>;

template <class T>
struct MatrixHash {
    std::size_t operator()(const Matrix<T>& m) const noexcept { return m.hash(); }
};

/// Reduced row echelon form; returns the pivot columns.
template <class T>
std::vector<std::size_t> rref_in_place(Matrix<T>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && is_zero(m(pivot, col)))
            ++pivot;
        if (pivot == m.rows())
            continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(pivot, j), m(row, j));
        const T inv = inverse(m(row, col));
        for (std::size_t j = col; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col)))
                continue;
            const T factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (!is_zero(m(row, j)))
                    m(i, j) -= factor * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    return rref_in_place(m).size();
}

/// Exact basis of the right kernel {v : M v = 0}.
template <class T>
std::vector<std::vector<T>> kernel_basis(Matrix<T> m)
{
    const std::size_t n = m.cols();
    if (n == 0)
        return {};
    const T zero = zero_like(m(0, 0));
    const T one = one_like(m(0, 0));
    auto pivots = rref_in_place(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<T> v(n, zero);
        v[free] = one;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Basis of the column space, chosen among the columns of M.
template <class T>
std::vector<std::vector<T>> image_basis(const Matrix<T>& m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return {};
    Matrix<T> work = m;
    auto pivots = rref_in_place(work);
    std::vector<std::vector<T>> basis;
    for (auto p : pivots)
        basis.push_back(m.column(p));
    return basis;
}

/// Extracts a maximal independent subset of `vectors` (in order).
template <class T>
std::vector<std::vector<T>> independent_subset(const std::vector<std::vector<T>>& vectors, std::size_t dim, const T& zero)
{
    if (vectors.empty())
        return {};
    return image_basis(Matrix<T>::from_columns(vectors, dim, zero));
}

/// Solves A X = B for X, with A of full column rank. Returns nullopt when the
/// system is inconsistent.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.rows() != b.rows())
        throw DomainError(ErrorKind::InvalidArgument, "solve: row mismatch");
    const T zero = zero_like(a(0, 0));
    Matrix<T> aug(a.rows(), a.cols() + b.cols(), zero);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            aug(i, a.cols() + j) = b(i, j);
    }
    auto pivots = rref_in_place(aug);
    std::size_t lhs_pivots = 0;
    for (auto p : pivots) {
        if (p >= a.cols())
            return std::nullopt;
        ++lhs_pivots;
    }
    if (lhs_pivots != a.cols())
        throw DomainError(ErrorKind::InvalidArgument, "solve: matrix lacks full column rank");
    Matrix<T> x(a.cols(), b.cols(), zero);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(pivots[r], j) = aug(r, a.cols() + j);
    return x;
}

/// Any particular solution of A x = b (free variables zero), or nullopt.
template <class T>
std::optional<std::vector<T>> solve_any(const Matrix<T>& a, const std::vector<T>& b)
{
    const T zero = zero_like(b.front());
    Matrix<T> aug(a.rows(), a.cols() + 1, zero);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = rref_in_place(aug);
    std::vector<T> x(a.cols(), zero);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == a.cols())
            return std::nullopt;
        x[pivots[r]] = aug(r, a.cols());
    }
    return x;
}

template <class T>
T determinant(Matrix<T> m)
{
    if (!m.is_square())
        throw DomainError(ErrorKind::InvalidArgument, "determinant of non-square matrix");
    T det = one_like(m(0, 0));
    const std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && is_zero(m(pivot, col)))
            ++pivot;
        if (pivot == n)
            return zero_like(m(0, 0));
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(pivot, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        const T inv = inverse(m(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (is_zero(m(i, col)))
                continue;
            const T factor = m(i, col) * inv;
            for (std::size_t j = col; j < n; ++j)
                m(i, j) -= factor * m(col, j);
        }
    }
    return det;
}

template <class T>
T trace(const Matrix<T>& m)
{
    T acc = zero_like(m(0, 0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        acc += m(i, i);
    return acc;
}

/// Coefficients c_0..c_n of det(1 - t g), lowest degree first, via
/// Faddeev-LeVerrier.
template <class T>
std::vector<T> char_det(const Matrix<T>& g)
{
    if (!g.is_square())
        throw DomainError(ErrorKind::InvalidArgument, "char_det of non-square matrix");
    const std::size_t n = g.rows();
    const T zero = zero_like(g(0, 0));
    const T one = one_like(g(0, 0));
    // p(x) = det(x - g) = sum_k c[k] x^(n-k); det(1 - t g) = sum_k c[k] t^k.
    std::vector<T> c(n + 1, zero);
    c[0] = one;
    Matrix<T> m(n, n, zero);
    const Matrix<T> id = Matrix<T>::identity(n, one, zero);
    for (std::size_t k = 1; k <= n; ++k) {
        m = g * m + id * c[k - 1];
        T tr = trace(g * m);
        c[k] = -tr * frac(1, static_cast<long>(k));
    }
    return c;
}

} // namespace rcatk
