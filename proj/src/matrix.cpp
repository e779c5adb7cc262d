#include "finmon/matrix.hpp"

#include <cmath>

namespace finmon {

Matrix Matrix::identity(std::size_t n, Backend backend) {
    Matrix m(n, n, backend);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(backend);
    return m;
}

Matrix Matrix::column(const std::vector<Scalar>& entries) {
    Backend b = entries.empty() ? Backend::Exact : entries.front().backend();
    Matrix m(entries.size(), 1, b);
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, 0) = entries[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, backend_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
        throw DimensionMismatch("matrix product shape mismatch: " + std::to_string(cols_) +
                                " vs " + std::to_string(o.rows_));
    if (backend_ != o.backend_) throw BackendMismatch("matrix backend mismatch");
    Matrix r(rows_, o.cols_, backend_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatch("matrix sum shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatch("matrix difference shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix r = *this;
    for (auto& e : r.a_) e *= s;
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || backend_ != o.backend_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (!(a_[i] == o.a_[i])) return false;
    return true;
}

bool Matrix::approx_equal(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.a_.size(); ++i)
        if (!Scalar::approx_equal(a.a_[i], b.a_[i], tol)) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(rows_, backend_);
}

Matrix Matrix::col(std::size_t j) const {
    Matrix c(rows_, 1, backend_);
    for (std::size_t i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
}

void Matrix::set_col(std::size_t j, const Matrix& column) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = column.at(i, 0);
}

std::vector<Scalar> Matrix::column_vector() const {
    if (cols_ != 1) throw DimensionMismatch("expected a column vector");
    return a_;
}

namespace {

double pivot_threshold(const Matrix& m) {
    double mx = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            mx = std::max(mx, m.at(i, j).abs());
    return 1e-10 * (1.0 + mx);
}

struct Echelon {
    Matrix r;                       // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column per eliminated row
};

// Reduced row echelon form. Exact backend: first nonzero pivot, lossless.
// Float backend: largest-modulus pivot in the column, entries below the
// relative threshold treated as zero.
Echelon rref(Matrix m) {
    Echelon e{std::move(m), {}};
    Matrix& a = e.r;
    const bool exact = a.backend() == Backend::Exact;
    const double thr = exact ? 0.0 : pivot_threshold(a);
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = a.rows();
        if (exact) {
            for (std::size_t i = row; i < a.rows(); ++i)
                if (!a.at(i, col).is_zero()) { piv = i; break; }
        } else {
            double best = thr;
            for (std::size_t i = row; i < a.rows(); ++i)
                if (a.at(i, col).abs() > best) { best = a.at(i, col).abs(); piv = i; }
        }
        if (piv == a.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
        Scalar inv = Scalar::one(a.backend()) / a.at(row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a.at(i, col).is_zero()) continue;
            Scalar f = a.at(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a.at(i, j) -= f * a.at(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    return e;
}

} // namespace

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

bool is_invertible(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

Matrix solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols()) throw DimensionMismatch("solve requires a square matrix");
    if (a.rows() != b.rows()) throw DimensionMismatch("solve shape mismatch");
    if (a.backend() != b.backend()) throw BackendMismatch("solve backend mismatch");
    Matrix aug(a.rows(), a.cols() + b.cols(), a.backend());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug.at(i, a.cols() + j) = b.at(i, j);
    }
    Echelon e = rref(std::move(aug));
    if (e.pivots.size() < a.rows() ||
        (!e.pivots.empty() && e.pivots.back() >= a.cols()))
        throw SingularMatrix("matrix is singular");
    Matrix x(a.cols(), b.cols(), a.backend());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x.at(i, j) = e.r.at(i, a.cols() + j);
    return x;
}

Matrix inverse(const Matrix& m) {
    return solve(m, Matrix::identity(m.rows(), m.backend()));
}

Matrix null_space(const Matrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix basis(m.cols(), free_cols.size(), m.backend());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t fc = free_cols[k];
        basis.at(fc, k) = Scalar::one(m.backend());
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            basis.at(e.pivots[r], k) = -e.r.at(r, fc);
    }
    return basis;
}

std::vector<std::size_t> independent_rows(const Matrix& m) {
    // pivot columns of the transpose's echelon form = greedy row basis
    return rref(m.transpose()).pivots;
}

} // namespace finmon
