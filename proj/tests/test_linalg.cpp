#include <catch2/catch.hpp>

#include <random>

#include "qwiretap/linalg.hpp"
#include "test_support.hpp"

using namespace qwiretap;
using namespace testsupport;

TEST_CASE("tensor of identities is the identity") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(frobenius_distance(tensor(i2, i2), ComplexMatrix::identity(4)) == Approx(0.0));
}

TEST_CASE("tensor follows the computational basis ordering") {
    // |0><0| (x) |1><1| occupies the |01> slot.
    const ComplexMatrix p0 = projector(basis_ket(2, 0));
    const ComplexMatrix p1 = projector(basis_ket(2, 1));
    const ComplexMatrix t = tensor(p0, p1);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(t(i, j) == (i == 1 && j == 1 ? cplx(1, 0) : cplx(0, 0)));
}

TEST_CASE("two-qubit collective sigma_z expands to diag(2,0,0,-2)") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    ComplexMatrix sz_total = tensor(pauli_z(), i2) + tensor(i2, pauli_z());
    const double expected[4] = {2.0, 0.0, 0.0, -2.0};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(sz_total(i, j) == cplx(i == j ? expected[i] : 0.0, 0.0));
    CHECK(frobenius_distance(sz_total, total_sigma_z(2)) == Approx(0.0));
}

TEST_CASE("tensor is associative") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> small(-4, 4);
    for (int trial = 0; trial < 10; ++trial) {
        // Integer entries keep the entry products exact, so associativity
        // holds bit for bit.
        const auto random_int_matrix = [&](std::size_t r, std::size_t c) {
            ComplexMatrix m(r, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx(small(rng), small(rng));
            return m;
        };
        const ComplexMatrix a = random_int_matrix(2, 3);
        const ComplexMatrix b = random_int_matrix(3, 2);
        const ComplexMatrix c = random_int_matrix(2, 2);
        CHECK(frobenius_distance(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) == 0.0);

        const ComplexMatrix x = random_matrix(rng, 2, 3);
        const ComplexMatrix y = random_matrix(rng, 3, 2);
        const ComplexMatrix z = random_matrix(rng, 2, 2);
        const double scale = x.frobenius_norm() * y.frobenius_norm() * z.frobenius_norm();
        CHECK(frobenius_distance(tensor(tensor(x, y), z), tensor(x, tensor(y, z))) <=
              1e-14 * std::max(1.0, scale));
    }
}

TEST_CASE("tensor rejects dimensions beyond the cap") {
    const ComplexMatrix big(kMaxDimension, 1);
    CHECK_THROWS_AS(tensor(big, ComplexMatrix(2, 1)), CapacityError);
}

TEST_CASE("partial trace of a product state factorizes") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix rho = random_hermitian(rng, 3);
        const ComplexMatrix sigma = random_hermitian(rng, 2);
        const ComplexMatrix joint = tensor(rho, sigma);
        ComplexMatrix expected_a = rho;
        expected_a *= sigma.trace();
        ComplexMatrix expected_b = sigma;
        expected_b *= rho.trace();
        CHECK(frobenius_distance(partial_trace(joint, 3, 2, TraceKeep::A), expected_a) < 1e-10);
        CHECK(frobenius_distance(partial_trace(joint, 3, 2, TraceKeep::B), expected_b) < 1e-10);
        CHECK(std::abs(partial_trace(joint, 3, 2, TraceKeep::A).trace() - joint.trace()) < 1e-10);
    }
}

TEST_CASE("partial trace of the Bell projector is maximally mixed") {
    // (|00> + |11>)/sqrt(2), expanded by hand to the 4x4 projector.
    const double h = 0.5;
    const ComplexMatrix bell(4, 4, {h, 0, 0, h, 0, 0, 0, 0, 0, 0, 0, 0, h, 0, 0, h});
    ComplexMatrix half_i2 = ComplexMatrix::identity(2);
    half_i2 *= 0.5;
    CHECK(frobenius_distance(partial_trace(bell, 2, 2, TraceKeep::A), half_i2) < 1e-12);
    CHECK(frobenius_distance(partial_trace(bell, 2, 2, TraceKeep::B), half_i2) < 1e-12);
}

TEST_CASE("partial trace of the identity") {
    ComplexMatrix two_i2 = ComplexMatrix::identity(2);
    two_i2 *= 2.0;
    CHECK(frobenius_distance(partial_trace(ComplexMatrix::identity(4), 2, 2, TraceKeep::B), two_i2) ==
          Approx(0.0));
}

TEST_CASE("partial trace rejects mismatched dimensions") {
    CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(6), 2, 2, TraceKeep::A), ShapeError);
}

TEST_CASE("hermitian_eig on a diagonal matrix") {
    const auto eig = hermitian_eig(mat2(3, 0, 0, 1));
    CHECK(eig.eigenvalues[0] == Approx(3.0));
    CHECK(eig.eigenvalues[1] == Approx(1.0));
    CHECK(frobenius_distance(eig.eigenvectors, ComplexMatrix::identity(2)) < 1e-12);
}

TEST_CASE("hermitian_eig on sigma_x") {
    const auto eig = hermitian_eig(pauli_x());
    CHECK(eig.eigenvalues[0] == Approx(1.0));
    CHECK(eig.eigenvalues[1] == Approx(-1.0));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(frobenius_distance(eig.eigenvectors, mat2(r, r, r, -r)) < 1e-12);
}

TEST_CASE("hermitian_eig on the half-mix of |0> and |+>") {
    const ComplexMatrix m = mat2(0.75, 0.25, 0.25, 0.25);
    const auto eig = hermitian_eig(m);
    CHECK(eig.eigenvalues[0] == Approx(0.8535533905932737).epsilon(1e-12));
    CHECK(eig.eigenvalues[1] == Approx(0.14644660940672627).epsilon(1e-12));
}

TEST_CASE("hermitian_eig matches the closed-form characteristic roots") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix m2 = random_hermitian(rng, 2);
        const auto got2 = hermitian_eig(m2).eigenvalues;
        const auto want2 = eig2_closed_form(m2);
        CHECK(std::abs(got2[0] - want2[0]) < 1e-9);
        CHECK(std::abs(got2[1] - want2[1]) < 1e-9);

        const ComplexMatrix m3 = random_hermitian(rng, 3);
        const auto got3 = hermitian_eig(m3).eigenvalues;
        const auto want3 = eig3_closed_form(m3);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(got3[k] - want3[k]) < 1e-9);
    }
}

TEST_CASE("hermitian_eig reconstruction and orthonormality invariants") {
    std::mt19937_64 rng(14);
    for (std::size_t dim : {2u, 3u, 5u, 8u, 16u}) {
        const ComplexMatrix m = random_hermitian(rng, dim);
        const auto eig = hermitian_eig(m);
        ComplexMatrix recon(dim, dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    recon(i, j) += eig.eigenvalues[k] * eig.eigenvectors(i, k) *
                                   std::conj(eig.eigenvectors(j, k));
        const double scale = std::max(1.0, m.frobenius_norm());
        CHECK(frobenius_distance(recon, m) <= 1e-10 * scale);
        CHECK(frobenius_distance(eig.eigenvectors.adjoint() * eig.eigenvectors,
                                 ComplexMatrix::identity(dim)) <= 1e-10);
        CHECK(std::is_sorted(eig.eigenvalues.rbegin(), eig.eigenvalues.rend()));
    }
}

TEST_CASE("hermitian_eig applies the phase convention") {
    std::mt19937_64 rng(15);
    const ComplexMatrix m = random_hermitian(rng, 4);
    const auto eig = hermitian_eig(m);
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t i = 0; i < 4; ++i) {
            if (std::abs(eig.eigenvectors(i, k)) > 1e-8) {
                CHECK(eig.eigenvectors(i, k).imag() == Approx(0.0).margin(1e-12));
                CHECK(eig.eigenvectors(i, k).real() > 0.0);
                break;
            }
        }
    }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    CHECK_THROWS_AS(hermitian_eig(mat2(0, 1, 0, 0)), DomainError);
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), ShapeError);
}

TEST_CASE("constructors reject non-finite entries") {
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx(std::nan(""), 0)}), DomainError);
    CHECK_THROWS_AS(ComplexMatrix(1, 2, {cplx(1, 0)}), ShapeError);
}

TEST_CASE("gram_schmidt_complete extends a single basis vector") {
    const ComplexMatrix u = gram_schmidt_complete({{cplx(1, 0), cplx(0, 0)}}, 2);
    CHECK(frobenius_distance(u, ComplexMatrix::identity(2)) < 1e-12);
}

TEST_CASE("gram_schmidt_complete builds the Hadamard-like completion") {
    const double r = 1.0 / std::sqrt(2.0);
    const ComplexMatrix u = gram_schmidt_complete({{cplx(r, 0), cplx(r, 0)}}, 2);
    CHECK(frobenius_distance(u, mat2(r, r, r, -r)) < 1e-12);
}

TEST_CASE("gram_schmidt_complete keeps a full orthonormal basis") {
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<std::vector<cplx>> basis{{cplx(r, 0), cplx(r, 0)}, {cplx(r, 0), cplx(-r, 0)}};
    const ComplexMatrix u = gram_schmidt_complete(basis, 2);
    CHECK(frobenius_distance(u, mat2(r, r, r, -r)) < 1e-12);
}

TEST_CASE("gram_schmidt_complete output is unitary for random input") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = 5;
        std::vector<std::vector<cplx>> cols;
        for (int c = 0; c < 3; ++c) cols.push_back(random_pure(rng, dim));
        const ComplexMatrix u = gram_schmidt_complete(cols, dim);
        CHECK(frobenius_distance(u.adjoint() * u, ComplexMatrix::identity(dim)) <= 1e-10);
    }
}

TEST_CASE("gram_schmidt_complete names the dependent column") {
    const std::vector<std::vector<cplx>> cols{{cplx(1, 0), cplx(0, 0)}, {cplx(1, 0), cplx(0, 0)}};
    CHECK_THROWS_AS(gram_schmidt_complete(cols, 2), DegeneracyError);
    CHECK_THROWS_WITH(gram_schmidt_complete(cols, 2), Catch::Matchers::Contains("column 1"));
}
