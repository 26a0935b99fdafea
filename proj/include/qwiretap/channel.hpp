#pragma once

// Quantum states and Kraus-represented channels, with unitary dilation onto
// an explicit environment and the reduced views seen by the legitimate
// receiver (system factor) and the wiretapper (environment factor).

#include <string>
#include <utility>
#include <vector>

#include "qwiretap/linalg.hpp"

namespace qwiretap {

class DensityMatrix {
public:
    // Validates Hermiticity, unit trace and positivity (within 1e-9).
    explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
        if (!matrix_.is_square()) throw ShapeError("DensityMatrix: matrix is not square");
        const double scale = std::max(1.0, matrix_.frobenius_norm());
        if (frobenius_distance(matrix_, matrix_.adjoint()) > 1e-9 * scale)
            throw DomainError("DensityMatrix: not Hermitian within tolerance");
        if (std::abs(matrix_.trace() - cplx(1.0, 0.0)) > 1e-9)
            throw DomainError("DensityMatrix: trace differs from 1 by more than 1e-9");
        const auto eig = hermitian_eig(matrix_);
        if (eig.eigenvalues.back() < -1e-9)
            throw DomainError("DensityMatrix: negative eigenvalue " +
                              std::to_string(eig.eigenvalues.back()));
    }

    static DensityMatrix pure(const std::vector<cplx>& state) {
        double nrm = 0.0;
        for (const cplx& z : state) nrm += std::norm(z);
        if (std::abs(nrm - 1.0) > 1e-9)
            throw DomainError("DensityMatrix::pure: state vector is not normalized");
        ComplexMatrix m(state.size(), state.size());
        for (std::size_t i = 0; i < state.size(); ++i)
            for (std::size_t j = 0; j < state.size(); ++j)
                m(i, j) = state[i] * std::conj(state[j]);
        return DensityMatrix(std::move(m), ValidatedTag{});
    }

    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    struct ValidatedTag {};
    DensityMatrix(ComplexMatrix m, ValidatedTag) : matrix_(std::move(m)) {}

    ComplexMatrix matrix_;
};

namespace detail {

// Symmetrizes away the rounding skew accumulated by channel application; the
// result still goes through full DensityMatrix validation.
inline ComplexMatrix scrub_density(ComplexMatrix m) {
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    return m;
}

} // namespace detail

class QuantumChannel {
public:
    QuantumChannel(std::vector<ComplexMatrix> kraus, std::string label)
        : kraus_(std::move(kraus)), label_(std::move(label)) {
        if (kraus_.empty()) throw DomainError("QuantumChannel: empty Kraus set");
        dim_in_ = kraus_.front().rows();
        ComplexMatrix sum(dim_in_, dim_in_);
        for (const ComplexMatrix& a : kraus_) {
            if (!a.is_square() || a.rows() != dim_in_)
                throw ShapeError("QuantumChannel: Kraus operators must share one square dimension");
            sum += a.adjoint() * a;
        }
        if (frobenius_distance(sum, ComplexMatrix::identity(dim_in_)) > 1e-9)
            throw DomainError("QuantumChannel: Kraus completeness violated, ||sum A^dag A - I||_F = " +
                              std::to_string(frobenius_distance(sum, ComplexMatrix::identity(dim_in_))));
    }

    std::size_t dim_in() const { return dim_in_; }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
    const std::string& label() const { return label_; }

private:
    std::vector<ComplexMatrix> kraus_;
    std::string label_;
    std::size_t dim_in_;
};

// rho -> sum_i A_i rho A_i^dag
inline DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& rho) {
    if (rho.dim() != channel.dim_in())
        throw ShapeError("apply: state dimension " + std::to_string(rho.dim()) +
                         " does not match channel dimension " + std::to_string(channel.dim_in()));
    ComplexMatrix out(rho.dim(), rho.dim());
    for (const ComplexMatrix& a : channel.kraus()) out += a * rho.matrix() * a.adjoint();
    return DensityMatrix(detail::scrub_density(std::move(out)));
}

// Unitary interaction on system (x) environment reproducing the channel when
// the environment starts in |0_E><0_E| and is traced out. The environment
// dimension equals the number of Kraus operators, and the system-major index
// convention of tensor() is used throughout: joint index = sys*env_dim + env.
class DilatedChannel {
public:
    explicit DilatedChannel(QuantumChannel channel)
        : channel_(std::move(channel)), env_dim_(channel_.kraus().size()) {
        const std::size_t d = channel_.dim_in();
        const std::size_t joint = d * env_dim_;
        if (joint > kMaxDimension)
            throw CapacityError("DilatedChannel: joint dimension " + std::to_string(joint) +
                                " exceeds " + std::to_string(kMaxDimension));

        // Isometry columns: U(|j> (x) |0_E>) = sum_i (A_i|j>) (x) |i_E>.
        // They are orthonormal exactly when the Kraus set is complete.
        unitary_ = ComplexMatrix(joint, joint);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < env_dim_; ++i)
                for (std::size_t k = 0; k < d; ++k)
                    unitary_(k * env_dim_ + i, j * env_dim_) = channel_.kraus()[i](k, j);

        // Complete the remaining columns against the isometry block. The
        // isometry columns themselves are kept bit-exact (no phase fix).
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < joint; ++c)
            if (c % env_dim_ != 0 || c / env_dim_ >= d) free_cols.push_back(c);

        ComplexMatrix span(joint, joint);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t r = 0; r < joint; ++r) span(r, j) = unitary_(r, j * env_dim_);
        std::size_t filled = d;
        std::size_t next_free = 0;
        for (std::size_t e = 0; e < joint && filled < joint; ++e) {
            std::vector<cplx> vec(joint, cplx(0.0, 0.0));
            vec[e] = 1.0;
            const double res = detail::orthogonalize_against(span, filled, vec);
            if (res <= 1e-6) continue;
            for (std::size_t r = 0; r < joint; ++r) {
                span(r, filled) = vec[r] / res;
                unitary_(r, free_cols[next_free]) = vec[r] / res;
            }
            ++filled;
            ++next_free;
        }
        if (filled < joint)
            throw NumericalError("DilatedChannel: unitary completion stalled");

        std::vector<cplx> env0(env_dim_, cplx(0.0, 0.0));
        env0[0] = 1.0;
        env_initial_ = DensityMatrix::pure(env0);
    }

    const QuantumChannel& channel() const { return channel_; }
    std::size_t env_dim() const { return env_dim_; }
    std::size_t sys_dim() const { return channel_.dim_in(); }
    const ComplexMatrix& unitary() const { return unitary_; }
    const DensityMatrix& env_initial() const { return env_initial_; }

    // U (rho (x) |0_E><0_E|) U^dag on the joint space. Only the isometry
    // columns of U meet a nonzero entry of the product state, so the joint
    // output is V rho V^dag with V the isometry block.
    ComplexMatrix evolve_joint(const DensityMatrix& rho) const {
        const std::size_t d = sys_dim();
        if (rho.dim() != d)
            throw ShapeError("evolve_joint: state dimension " + std::to_string(rho.dim()) +
                             " does not match channel dimension " + std::to_string(d));
        const std::size_t joint = d * env_dim_;
        ComplexMatrix v(joint, d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t r = 0; r < joint; ++r) v(r, j) = unitary_(r, j * env_dim_);
        return v * rho.matrix() * v.adjoint();
    }

private:
    QuantumChannel channel_;
    std::size_t env_dim_;
    ComplexMatrix unitary_;
    DensityMatrix env_initial_{ComplexMatrix::identity(1)};
};

inline DilatedChannel dilate(const QuantumChannel& channel) { return DilatedChannel(channel); }

// Tr_E of the dilated evolution; agrees with apply() within 1e-9.
inline DensityMatrix bob_state(const DilatedChannel& d, const DensityMatrix& rho) {
    ComplexMatrix joint = d.evolve_joint(rho);
    return DensityMatrix(
        detail::scrub_density(partial_trace(joint, d.sys_dim(), d.env_dim(), TraceKeep::A)));
}

// Tr_B of the dilated evolution: the wiretapper's view. Entry (i,i') equals
// Tr[A_i rho A_i'^dag].
inline DensityMatrix eve_state(const DilatedChannel& d, const DensityMatrix& rho) {
    ComplexMatrix joint = d.evolve_joint(rho);
    return DensityMatrix(
        detail::scrub_density(partial_trace(joint, d.sys_dim(), d.env_dim(), TraceKeep::B)));
}

// Collective dephasing on n qubits, averaged over the collective phase:
// the Kraus set is the Hamming-weight projectors {P_w, w = 0..n}.
inline QuantumChannel collective_dephasing(std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > 10)
        throw CapacityError("collective_dephasing: qubit count " + std::to_string(n_qubits) +
                            " outside [1, 10]");
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<ComplexMatrix> projectors(n_qubits + 1, ComplexMatrix(dim, dim));
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t w = 0;
        for (std::size_t b = 0; b < n_qubits; ++b) w += (x >> b) & 1u;
        projectors[w](x, x) = 1.0;
    }
    return QuantumChannel(std::move(projectors),
                          "collective-dephasing-" + std::to_string(n_qubits) + "q");
}

// Total sigma_z on n qubits: the collective operator whose eigenspaces are the
// Hamming-weight blocks.
inline ComplexMatrix total_sigma_z(std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (dim > kMaxDimension)
        throw CapacityError("total_sigma_z: dimension exceeds " + std::to_string(kMaxDimension));
    ComplexMatrix m(dim, dim);
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t w = 0;
        for (std::size_t b = 0; b < n_qubits; ++b) w += (x >> b) & 1u;
        m(x, x) = static_cast<double>(n_qubits) - 2.0 * static_cast<double>(w);
    }
    return m;
}

} // namespace qwiretap
