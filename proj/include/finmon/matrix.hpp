#pragma once

#include <cstddef>
#include <vector>

#include "finmon/scalar.hpp"

namespace finmon {

// Dense matrix of Scalars with a uniform backend. Row-major storage;
// all elimination on the exact backend is lossless.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), backend_(Backend::Exact) {}
    Matrix(std::size_t rows, std::size_t cols, Backend backend)
        : rows_(rows), cols_(cols), backend_(backend),
          a_(rows * cols, Scalar::zero(backend)) {}

    static Matrix identity(std::size_t n, Backend backend);
    static Matrix column(const std::vector<Scalar>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Backend backend() const { return backend_; }

    Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Scalar& s) const;

    bool operator==(const Matrix& o) const;
    static bool approx_equal(const Matrix& a, const Matrix& b, double tol);

    bool is_identity() const;

    // Column j as an n x 1 matrix.
    Matrix col(std::size_t j) const;
    void set_col(std::size_t j, const Matrix& column);

    std::vector<Scalar> column_vector() const; // requires cols() == 1

private:
    std::size_t rows_, cols_;
    Backend backend_;
    std::vector<Scalar> a_;
};

std::size_t rank(const Matrix& m);
bool is_invertible(const Matrix& m);
Matrix inverse(const Matrix& m); // throws SingularMatrix

// Solves A x = b for invertible A; b may have several columns.
Matrix solve(const Matrix& a, const Matrix& b);

// Basis of { x : m x = 0 } as columns (possibly 0 columns).
Matrix null_space(const Matrix& m);

// Indices of a maximal set of linearly independent rows, in order.
std::vector<std::size_t> independent_rows(const Matrix& m);

} // namespace finmon
