#pragma once

// Dense complex linear algebra: matrix type, tensor products, partial traces,
// a cyclic-Jacobi Hermitian eigensolver and Gram-Schmidt completion. This is
// the numerical substrate for the channel/dfs/secrecy/capacity headers; it has
// no dependencies beyond the standard library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "qwiretap/errors.hpp"

namespace qwiretap {

using cplx = std::complex<double>;

// Largest matrix dimension this library will allocate (per axis).
inline constexpr std::size_t kMaxDimension = 4096;

class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw ShapeError("ComplexMatrix: entry count " + std::to_string(data_.size()) +
                             " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
        for (const cplx& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw DomainError("ComplexMatrix: non-finite entry");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }

    bool is_square() const { return rows_ == cols_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    cplx trace() const {
        if (!is_square()) throw ShapeError("trace: matrix is not square");
        cplx t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double sq = 0.0;
        for (const cplx& z : data_) sq += std::norm(z);
        return std::sqrt(sq);
    }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
        check_same_shape(rhs, "+");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
        check_same_shape(rhs, "-");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
        return *this;
    }

    ComplexMatrix& operator*=(cplx scalar) {
        for (cplx& z : data_) z *= scalar;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(cplx scalar, ComplexMatrix m) { return m *= scalar; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw ShapeError("matmul: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                             " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0, 0.0)) continue;
                const cplx* brow = &b.data_[k * b.cols_];
                cplx* orow = &out.data_[i * b.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
            }
        }
        return out;
    }

private:
    void check_same_shape(const ComplexMatrix& rhs, const char* op) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw ShapeError(std::string("operator") + op + ": shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<cplx> data_;
};

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

// Kronecker product; index convention (a x b)[(i*rb+k),(j*cb+l)] = a[i,j]*b[k,l].
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() * b.rows() > kMaxDimension || a.cols() * b.cols() > kMaxDimension)
        throw CapacityError("tensor: product dimension exceeds " + std::to_string(kMaxDimension));
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

enum class TraceKeep { A, B };

// Reduced matrix on one factor of a bipartite space of dimension dimA*dimB.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                   TraceKeep keep) {
    if (!m.is_square() || m.rows() != dim_a * dim_b)
        throw ShapeError("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square of dimension " +
                         std::to_string(dim_a * dim_b));
    if (keep == TraceKeep::A) {
        ComplexMatrix out(dim_a, dim_a);
        for (std::size_t i = 0; i < dim_a; ++i)
            for (std::size_t j = 0; j < dim_a; ++j) {
                cplx sum = 0.0;
                for (std::size_t k = 0; k < dim_b; ++k) sum += m(i * dim_b + k, j * dim_b + k);
                out(i, j) = sum;
            }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t i = 0; i < dim_b; ++i)
        for (std::size_t j = 0; j < dim_b; ++j) {
            cplx sum = 0.0;
            for (std::size_t k = 0; k < dim_a; ++k) sum += m(k * dim_b + i, k * dim_b + j);
            out(i, j) = sum;
        }
    return out;
}

struct HermitianEigenDecomposition {
    std::vector<double> eigenvalues;  // sorted descending
    ComplexMatrix eigenvectors;       // orthonormal columns, column k pairs with eigenvalues[k]
};

namespace detail {

// First entry of each column with magnitude above the cutoff is made real
// nonnegative, so degenerate eigenbases and completed unitaries reproduce.
inline void fix_column_phases(ComplexMatrix& m, double cutoff = 1e-8) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const double mag = std::abs(m(i, j));
            if (mag > cutoff) {
                const cplx phase = std::conj(m(i, j)) / mag;
                for (std::size_t k = 0; k < m.rows(); ++k) m(k, j) *= phase;
                break;
            }
        }
    }
}

inline double off_diagonal_norm(const ComplexMatrix& m) {
    double sq = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) sq += std::norm(m(i, j));
    return std::sqrt(sq);
}

} // namespace detail

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// The input must be Hermitian within 1e-9 relative tolerance; it is
// symmetrized before iterating. Eigenvalues come out sorted descending and
// eigenvector columns carry the first-entry-real-positive phase convention.
inline HermitianEigenDecomposition hermitian_eig(const ComplexMatrix& m) {
    if (!m.is_square()) throw ShapeError("hermitian_eig: matrix is not square");
    const std::size_t n = m.rows();
    const double scale = std::max(1.0, m.frobenius_norm());
    if (frobenius_distance(m, m.adjoint()) > 1e-9 * scale)
        throw DomainError("hermitian_eig: matrix is not Hermitian within tolerance");

    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double off_target = 1e-12 * scale;
    constexpr int kMaxSweeps = 100;

    double off = detail::off_diagonal_norm(a);
    int sweep = 0;
    while (off > off_target && sweep < kMaxSweeps) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx beta = a(p, q);
                const double bmag = std::abs(beta);
                if (bmag < 1e-300) continue;
                const double alpha = a(p, p).real();
                const double gamma = a(q, q).real();
                const double tau = (alpha - gamma) / (2.0 * bmag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = (t * c) * std::conj(beta) / bmag;  // sigma * e^{-i arg(beta)}

                // columns: col_p' = c col_p + s col_q ; col_q' = -conj(s) col_p + c col_q
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + s * akq;
                    a(k, q) = -std::conj(s) * akp + c * akq;
                }
                // rows: row_p' = c row_p + conj(s) row_q ; row_q' = -s row_p + c row_q
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(s) * aqk;
                    a(q, k) = -s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + s * vkq;
                    v(k, q) = -std::conj(s) * vkp + c * vkq;
                }
            }
        }
        off = detail::off_diagonal_norm(a);
        ++sweep;
    }
    if (off > off_target)
        throw NumericalError("hermitian_eig: no convergence after " + std::to_string(kMaxSweeps) +
                             " sweeps, off-diagonal residual " + std::to_string(off));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    HermitianEigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    detail::fix_column_phases(out.eigenvectors);
    return out;
}

namespace detail {

// Modified Gram-Schmidt with one re-orthogonalization pass. Returns the
// normalized residual of `vec` against `basis_cols` columns of `basis`,
// or a zero norm if the residual is below `tol`.
inline double orthogonalize_against(const ComplexMatrix& basis, std::size_t basis_cols,
                                    std::vector<cplx>& vec) {
    const std::size_t n = vec.size();
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < basis_cols; ++j) {
            cplx proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(basis(i, j)) * vec[i];
            for (std::size_t i = 0; i < n; ++i) vec[i] -= proj * basis(i, j);
        }
    }
    double sq = 0.0;
    for (const cplx& z : vec) sq += std::norm(z);
    return std::sqrt(sq);
}

} // namespace detail

// Orthonormalizes `columns` in order and completes them to a full unitary of
// dimension `dim`. Every output column carries the first-entry-real-positive
// phase convention. Throws DegeneracyError naming the offending column when
// the inputs are linearly dependent within tolerance 1e-10.
inline ComplexMatrix gram_schmidt_complete(const std::vector<std::vector<cplx>>& columns,
                                           std::size_t dim) {
    if (dim == 0 || dim > kMaxDimension)
        throw CapacityError("gram_schmidt_complete: dimension " + std::to_string(dim) +
                            " outside [1, " + std::to_string(kMaxDimension) + "]");
    if (columns.size() > dim)
        throw ShapeError("gram_schmidt_complete: more columns than the target dimension");

    ComplexMatrix u(dim, dim);
    std::size_t filled = 0;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != dim)
            throw ShapeError("gram_schmidt_complete: column " + std::to_string(c) +
                             " has length " + std::to_string(columns[c].size()));
        std::vector<cplx> vec = columns[c];
        double orig = 0.0;
        for (const cplx& z : vec) orig += std::norm(z);
        orig = std::sqrt(orig);
        const double res = detail::orthogonalize_against(u, filled, vec);
        if (res <= 1e-10 * std::max(1.0, orig))
            throw DegeneracyError("gram_schmidt_complete: column " + std::to_string(c) +
                                  " is linearly dependent on its predecessors");
        for (std::size_t i = 0; i < dim; ++i) u(i, filled) = vec[i] / res;
        ++filled;
    }

    // Complete with standard basis vectors; skip the ones that collapse.
    for (std::size_t e = 0; e < dim && filled < dim; ++e) {
        std::vector<cplx> vec(dim, cplx(0.0, 0.0));
        vec[e] = 1.0;
        const double res = detail::orthogonalize_against(u, filled, vec);
        if (res <= 1e-6) continue;
        for (std::size_t i = 0; i < dim; ++i) u(i, filled) = vec[i] / res;
        ++filled;
    }
    if (filled < dim)
        throw NumericalError("gram_schmidt_complete: basis completion stalled at " +
                             std::to_string(filled) + " of " + std::to_string(dim));
    detail::fix_column_phases(u);
    return u;
}

} // namespace qwiretap
