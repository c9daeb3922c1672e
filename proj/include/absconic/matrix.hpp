#pragma once

#include "absconic/error.hpp"
#include "absconic/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace absconic {

/// Small dense row-major matrix.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DomainError("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n, const T& one = T(1), const T& zero = T(0))
    {
        Matrix m(n, n, zero);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        }
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw DomainError("matrix product: dimension mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t c = 0; c < b.cols_; ++c) {
                T acc = a(r, 0) * b(0, c);
                for (std::size_t k = 1; k < a.cols_; ++k) acc += a(r, k) * b(k, c);
                out(r, c) = std::move(acc);
            }
        }
        return out;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum: dimension mismatch");
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix difference: dimension mismatch");
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
        return a;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    const std::vector<T>& data() const { return data_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<GaussRat>;
using QVector = std::vector<GaussRat>;

QVector operator*(const QMatrix& m, const QVector& v);

/// Determinant by Gaussian elimination over the field.
GaussRat determinant(const QMatrix& m);
/// Adjugate (transpose of the cofactor matrix).
QMatrix adjugate(const QMatrix& m);
/// Inverse; throws DegenerateError when singular.
QMatrix inverse(const QMatrix& m);
std::size_t rank(const QMatrix& m);
/// Basis of the right kernel {v : m v = 0}, in reduced echelon form: each
/// basis vector has a 1 at its free column and zeros at the other free
/// columns.
std::vector<QVector> nullspace(const QMatrix& m);
/// Solves m x = b; nullopt when inconsistent. Returns one particular
/// solution (free variables set to zero).
std::optional<QVector> solve_linear(const QMatrix& m, const QVector& b);

/// Cross product of 3-vectors (join of points / meet of lines).
QVector cross(const QVector& a, const QVector& b);
GaussRat dot(const QVector& a, const QVector& b);
bool is_zero_vector(const QVector& v);
/// Scales a vector so that the first nonzero entry becomes a positive
/// integer and all real/imaginary parts are coprime integers.
QVector normalize_vector(const QVector& v);
/// Same canonical scaling for a matrix (entries taken row-major).
QMatrix normalize_matrix(const QMatrix& m);
bool proportional(const QVector& a, const QVector& b);
bool proportional(const QMatrix& a, const QMatrix& b);

QMatrix conj(const QMatrix& m);

}  // namespace absconic
