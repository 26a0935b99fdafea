#pragma once

// Decoherence-free subspace search and certification, plus error-avoiding
// code construction over a found subspace. A subspace qualifies when every
// system operator acts on it as a scalar; the search refines joint
// eigenspaces operator by operator and keeps the scalar tuple as the
// certificate.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qwiretap/channel.hpp"
#include "qwiretap/linalg.hpp"

namespace qwiretap {

enum class OperatorSource { Explicit, DerivedFromKraus };

class SystemOperatorSet {
public:
    static SystemOperatorSet explicit_operators(std::vector<ComplexMatrix> ops) {
        return SystemOperatorSet(std::move(ops), OperatorSource::Explicit);
    }

    // The channel's own Kraus operators as the system operator set.
    static SystemOperatorSet from_channel(const QuantumChannel& channel) {
        return SystemOperatorSet(channel.kraus(), OperatorSource::DerivedFromKraus);
    }

    const std::vector<ComplexMatrix>& operators() const { return operators_; }
    OperatorSource source() const { return source_; }
    std::size_t dim() const { return operators_.front().rows(); }

private:
    SystemOperatorSet(std::vector<ComplexMatrix> ops, OperatorSource source)
        : operators_(std::move(ops)), source_(source) {
        if (operators_.empty()) throw DomainError("SystemOperatorSet: empty operator list");
        const std::size_t d = operators_.front().rows();
        for (const ComplexMatrix& s : operators_)
            if (!s.is_square() || s.rows() != d)
                throw ShapeError("SystemOperatorSet: operators must share one square dimension");
    }

    std::vector<ComplexMatrix> operators_;
    OperatorSource source_;
};

class DfsSubspace {
public:
    DfsSubspace(ComplexMatrix basis, std::vector<cplx> eigenvalue_tuple)
        : basis_(std::move(basis)), tuple_(std::move(eigenvalue_tuple)) {
        if (basis_.cols() == 0 || basis_.cols() > basis_.rows())
            throw ShapeError("DfsSubspace: basis must have between 1 and ambient-dim columns");
        const ComplexMatrix gram = basis_.adjoint() * basis_;
        if (frobenius_distance(gram, ComplexMatrix::identity(basis_.cols())) > 1e-9)
            throw DomainError("DfsSubspace: basis columns are not orthonormal");
    }

    std::size_t ambient_dim() const { return basis_.rows(); }
    std::size_t dim() const { return basis_.cols(); }
    const ComplexMatrix& basis() const { return basis_; }
    const std::vector<cplx>& eigenvalue_tuple() const { return tuple_; }

    std::vector<cplx> basis_column(std::size_t k) const {
        std::vector<cplx> v(ambient_dim());
        for (std::size_t i = 0; i < ambient_dim(); ++i) v[i] = basis_(i, k);
        return v;
    }

private:
    ComplexMatrix basis_;
    std::vector<cplx> tuple_;
};

// Largest per-column residual ||S_j v - c_j v|| over all operators and basis
// columns: the assertable form of the scalar-action certificate.
inline double certificate_residual(const DfsSubspace& sub, const SystemOperatorSet& ops) {
    if (ops.dim() != sub.ambient_dim())
        throw ShapeError("certificate_residual: operator and subspace dimensions differ");
    double worst = 0.0;
    for (std::size_t j = 0; j < ops.operators().size(); ++j) {
        const ComplexMatrix residual =
            ops.operators()[j] * sub.basis() - sub.eigenvalue_tuple()[j] * sub.basis();
        for (std::size_t col = 0; col < residual.cols(); ++col) {
            double sq = 0.0;
            for (std::size_t i = 0; i < residual.rows(); ++i) sq += std::norm(residual(i, col));
            worst = std::max(worst, std::sqrt(sq));
        }
    }
    return worst;
}

namespace detail {

struct RefinementLeaf {
    ComplexMatrix basis;        // ambient_dim x k isometry
    std::vector<cplx> tuple;    // one scalar per fully processed operator
    double pending_real = 0.0;  // scalar from the Hermitian part, awaiting the skew part
};

// Splits `leaf` by the eigenvalue clusters of one Hermitian operator `part`,
// keeping per cluster the vectors that the operator genuinely maps to scalar
// multiples in the ambient space (not merely in compression). Appends the
// surviving pieces to `out` with the cluster value recorded via `record`.
template <typename RecordFn>
void refine_by_hermitian(const RefinementLeaf& leaf, const ComplexMatrix& part, double cluster_tol,
                         double residual_tol, RecordFn&& record, std::vector<RefinementLeaf>& out) {
    const std::size_t k = leaf.basis.cols();
    const ComplexMatrix part_b = part * leaf.basis;
    const ComplexMatrix compression = leaf.basis.adjoint() * part_b;
    const HermitianEigenDecomposition eig = hermitian_eig(compression);

    // Eigenvalues are sorted descending; group by gap.
    std::size_t start = 0;
    while (start < k) {
        std::size_t stop = start + 1;
        while (stop < k && eig.eigenvalues[stop - 1] - eig.eigenvalues[stop] <= cluster_tol) ++stop;
        double cluster_value = 0.0;
        for (std::size_t i = start; i < stop; ++i) cluster_value += eig.eigenvalues[i];
        cluster_value /= static_cast<double>(stop - start);

        // Ambient null-space extraction: D = (part - c)|_W in compressed
        // coordinates, null vectors of D^dag D are the scalar-action vectors.
        ComplexMatrix d = part_b - cluster_value * leaf.basis;
        const ComplexMatrix gram = d.adjoint() * d;
        const HermitianEigenDecomposition null_eig = hermitian_eig(gram);
        const double noise_floor = 1e-10 * std::max(1.0, gram.frobenius_norm());

        std::vector<std::size_t> kept;
        for (std::size_t col = 0; col < k; ++col) {
            if (null_eig.eigenvalues[col] > std::max(noise_floor, residual_tol * residual_tol))
                continue;
            // Re-check the residual directly; the squared form loses accuracy.
            double sq = 0.0;
            for (std::size_t r = 0; r < d.rows(); ++r) {
                cplx acc = 0.0;
                for (std::size_t c = 0; c < k; ++c) acc += d(r, c) * null_eig.eigenvectors(c, col);
                sq += std::norm(acc);
            }
            if (std::sqrt(sq) <= residual_tol) kept.push_back(col);
        }
        if (!kept.empty()) {
            ComplexMatrix refined(leaf.basis.rows(), kept.size());
            for (std::size_t c = 0; c < kept.size(); ++c)
                for (std::size_t r = 0; r < leaf.basis.rows(); ++r) {
                    cplx acc = 0.0;
                    for (std::size_t m = 0; m < k; ++m)
                        acc += leaf.basis(r, m) * null_eig.eigenvectors(m, kept[c]);
                    refined(r, c) = acc;
                }
            RefinementLeaf next{std::move(refined), leaf.tuple, leaf.pending_real};
            record(next, cluster_value);
            out.push_back(std::move(next));
        }
        start = stop;
    }
}

inline bool tuple_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

} // namespace detail

// All maximal subspaces on which every operator of `ops` acts as a scalar,
// mutually orthogonal, sorted by descending dimension then lexicographic
// eigenvalue tuple. An empty result means no common eigenspace exists.
// Operators must be normal; each is processed through its commuting Hermitian
// and skew parts so that unitary Kraus sets are handled exactly.
inline std::vector<DfsSubspace> find_dfs(const SystemOperatorSet& ops) {
    const std::size_t d = ops.dim();
    for (std::size_t j = 0; j < ops.operators().size(); ++j) {
        const ComplexMatrix& s = ops.operators()[j];
        const double scale_sq = std::max(1.0, s.frobenius_norm() * s.frobenius_norm());
        if (frobenius_distance(s * s.adjoint(), s.adjoint() * s) > 1e-9 * scale_sq)
            throw DomainError("find_dfs: operator " + std::to_string(j) +
                              " is not normal; joint eigenspace refinement is unsupported");
    }

    std::vector<detail::RefinementLeaf> leaves;
    leaves.push_back({ComplexMatrix::identity(d), {}, 0.0});

    for (const ComplexMatrix& s : ops.operators()) {
        const double scale = std::max(1.0, s.frobenius_norm());
        const double cluster_tol = 1e-8 * scale;
        const double residual_tol = 1e-8;  // absolute, matching the certificate

        const ComplexMatrix s_adj = s.adjoint();
        ComplexMatrix herm = s;
        herm += s_adj;
        herm *= 0.5;
        ComplexMatrix skew = s;
        skew -= s_adj;
        skew *= cplx(0.0, -0.5);

        std::vector<detail::RefinementLeaf> after_herm;
        for (const auto& leaf : leaves)
            detail::refine_by_hermitian(
                leaf, herm, cluster_tol, residual_tol,
                [](detail::RefinementLeaf& next, double value) { next.pending_real = value; },
                after_herm);

        std::vector<detail::RefinementLeaf> after_skew;
        for (const auto& leaf : after_herm)
            detail::refine_by_hermitian(
                leaf, skew, cluster_tol, residual_tol,
                [](detail::RefinementLeaf& next, double value) {
                    next.tuple.push_back(cplx(next.pending_real, value));
                },
                after_skew);
        leaves = std::move(after_skew);
        if (leaves.empty()) break;
    }

    std::vector<DfsSubspace> result;
    result.reserve(leaves.size());
    for (auto& leaf : leaves)
        result.emplace_back(std::move(leaf.basis), std::move(leaf.tuple));
    std::stable_sort(result.begin(), result.end(), [](const DfsSubspace& a, const DfsSubspace& b) {
        if (a.dim() != b.dim()) return a.dim() > b.dim();
        return detail::tuple_less(a.eigenvalue_tuple(), b.eigenvalue_tuple());
    });
    return result;
}

struct InvarianceReport {
    std::size_t trials = 0;
    double max_residual = 0.0;
    bool passes = false;
};

inline constexpr std::uint64_t kDefaultInvarianceSeed = 0x9e3779b97f4a7c15ull;

// Applies the channel to `trials` random density matrices supported on the
// subspace and reports the largest ||E(rho) - rho||_F. Passes at 1e-8.
inline InvarianceReport verify_invariance(const QuantumChannel& channel, const DfsSubspace& sub,
                                          std::size_t trials,
                                          std::uint64_t seed = kDefaultInvarianceSeed) {
    if (channel.dim_in() != sub.ambient_dim())
        throw ShapeError("verify_invariance: channel and subspace dimensions differ");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t k = sub.dim();

    InvarianceReport report;
    report.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        ComplexMatrix x(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) x(i, j) = cplx(gauss(rng), gauss(rng));
        ComplexMatrix sigma = x * x.adjoint();
        sigma *= 1.0 / sigma.trace().real();
        ComplexMatrix rho = sub.basis() * sigma * sub.basis().adjoint();
        const DensityMatrix state(detail::scrub_density(std::move(rho)));
        const double residual = frobenius_distance(apply(channel, state).matrix(), state.matrix());
        report.max_residual = std::max(report.max_residual, residual);
    }
    report.passes = report.max_residual <= 1e-8;
    return report;
}

// Error-avoiding code: orthonormal codewords drawn from a DFS plus the
// trivial projective decoding. The last POVM element is the complement.
struct Qeac {
    DfsSubspace subspace;
    std::vector<std::vector<cplx>> codewords;  // pure states, one per message
    std::vector<ComplexMatrix> decoding_povm;  // |k_u><k_u| per message, complement last
    double bits = 0.0;                         // log2 |U|
    double rate = 0.0;                         // log2 |U| / dim(subspace)
};

inline Qeac build_qeac(const DfsSubspace& sub, std::size_t num_messages) {
    if (num_messages == 0) throw DomainError("build_qeac: need at least one message");
    if (num_messages > sub.dim())
        throw CapacityError("build_qeac: message count " + std::to_string(num_messages) +
                            " cannot exceed subspace dimension " + std::to_string(sub.dim()));
    Qeac code{sub, {}, {}, 0.0, 0.0};
    const std::size_t d = sub.ambient_dim();
    ComplexMatrix povm_sum(d, d);
    for (std::size_t u = 0; u < num_messages; ++u) {
        std::vector<cplx> word = sub.basis_column(u);
        ComplexMatrix proj(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) proj(i, j) = word[i] * std::conj(word[j]);
        povm_sum += proj;
        code.codewords.push_back(std::move(word));
        code.decoding_povm.push_back(std::move(proj));
    }
    ComplexMatrix complement = ComplexMatrix::identity(d) - povm_sum;
    const auto eig = hermitian_eig(detail::scrub_density(complement));
    if (eig.eigenvalues.back() < -1e-9)
        throw DomainError("build_qeac: decoding POVM exceeds identity");
    code.decoding_povm.push_back(std::move(complement));
    code.bits = std::log2(static_cast<double>(num_messages));
    code.rate = code.bits / static_cast<double>(sub.dim());
    return code;
}

} // namespace qwiretap
