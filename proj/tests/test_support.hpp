#pragma once

// Shared fixtures for the test suites: small constructors, deterministic
// random generators, and closed-form oracles kept independent of the
// library's eigensolver and channel plumbing.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qwiretap/channel.hpp"
#include "qwiretap/linalg.hpp"

namespace testsupport {

using qwiretap::ComplexMatrix;
using qwiretap::cplx;

inline ComplexMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
    return ComplexMatrix(2, 2, {a, b, c, d});
}

inline ComplexMatrix pauli_x() { return mat2(0, 1, 1, 0); }
inline ComplexMatrix pauli_y() { return mat2(0, cplx(0, -1), cplx(0, 1), 0); }
inline ComplexMatrix pauli_z() { return mat2(1, 0, 0, -1); }

inline std::vector<cplx> basis_ket(std::size_t dim, std::size_t index) {
    std::vector<cplx> v(dim, cplx(0, 0));
    v[index] = 1.0;
    return v;
}

inline ComplexMatrix projector(const std::vector<cplx>& ket) {
    ComplexMatrix m(ket.size(), ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
    return m;
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
    ComplexMatrix x = random_matrix(rng, dim, dim);
    ComplexMatrix h = x + x.adjoint();
    h *= 0.5;
    return h;
}

inline qwiretap::DensityMatrix random_density(std::mt19937_64& rng, std::size_t dim) {
    ComplexMatrix x = random_matrix(rng, dim, dim);
    ComplexMatrix rho = x * x.adjoint();
    rho *= 1.0 / rho.trace().real();
    return qwiretap::DensityMatrix(qwiretap::detail::scrub_density(std::move(rho)));
}

inline std::vector<cplx> random_pure(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v(dim);
    double nrm = 0.0;
    for (auto& z : v) {
        z = cplx(gauss(rng), gauss(rng));
        nrm += std::norm(z);
    }
    nrm = std::sqrt(nrm);
    for (auto& z : v) z /= nrm;
    return v;
}

// Closed-form eigenvalues of a 2x2 Hermitian matrix, descending.
inline std::vector<double> eig2_closed_form(const ComplexMatrix& m) {
    const double a = m(0, 0).real(), c = m(1, 1).real();
    const double disc = std::sqrt((a - c) * (a - c) + 4.0 * std::norm(m(0, 1)));
    return {0.5 * (a + c + disc), 0.5 * (a + c - disc)};
}

// Closed-form eigenvalues of a 3x3 Hermitian matrix by the trigonometric
// solution of the characteristic cubic, descending.
inline std::vector<double> eig3_closed_form(const ComplexMatrix& m) {
    const double p1 = std::norm(m(0, 1)) + std::norm(m(0, 2)) + std::norm(m(1, 2));
    const double q = (m(0, 0).real() + m(1, 1).real() + m(2, 2).real()) / 3.0;
    if (p1 == 0.0) {
        std::vector<double> d{m(0, 0).real(), m(1, 1).real(), m(2, 2).real()};
        std::sort(d.rbegin(), d.rend());
        return d;
    }
    const double p2 = (m(0, 0).real() - q) * (m(0, 0).real() - q) +
                      (m(1, 1).real() - q) * (m(1, 1).real() - q) +
                      (m(2, 2).real() - q) * (m(2, 2).real() - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    ComplexMatrix b = m;
    for (std::size_t i = 0; i < 3; ++i) b(i, i) -= q;
    b *= 1.0 / p;
    const cplx det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                     b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                     b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double l1 = q + 2.0 * p * std::cos(phi);
    const double l3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    std::vector<double> out{l1, 3.0 * q - l1 - l3, l3};
    std::sort(out.rbegin(), out.rend());
    return out;
}

// Independent oracle for the wiretapper's view: entry (i,i') = Tr[A_i rho A_i'^dag],
// computed straight from the Kraus operators without any dilation.
inline ComplexMatrix eve_entry_oracle(const qwiretap::QuantumChannel& ch,
                                      const qwiretap::DensityMatrix& rho) {
    const std::size_t m = ch.kraus().size();
    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out(i, j) = (ch.kraus()[i] * rho.matrix() * ch.kraus()[j].adjoint()).trace();
    return out;
}

// Scalar von Neumann entropy from a plain eigenvalue list, base 2.
inline double entropy_of(const std::vector<double>& eigenvalues) {
    double s = 0.0;
    for (double lambda : eigenvalues)
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    return s;
}

} // namespace testsupport
