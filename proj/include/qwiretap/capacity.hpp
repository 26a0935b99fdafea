#pragma once

// Prior optimization for a fixed signal set: Blahut-Arimoto fixed-point
// iteration for the Holevo quantity (concave, with an optimality-gap
// certificate), and a multi-start feasible-ascent sweep for the
// chi_Bob - chi_Eve difference, which is not concave in general and is
// therefore reported as a lower bound.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qwiretap/channel.hpp"
#include "qwiretap/dfs.hpp"
#include "qwiretap/secrecy.hpp"

namespace qwiretap {

enum class CapacityMode { HolevoMax, DifferenceLowerBound };

struct CapacityResult {
    std::vector<double> optimal_probs;
    double value_bits = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> history;  // objective per accepted iteration, nondecreasing
    CapacityMode mode = CapacityMode::HolevoMax;
};

inline constexpr double kDefaultCapacityTol = 1e-6;
inline constexpr std::size_t kDefaultCapacityMaxIter = 10000;

namespace detail {

// Probabilities below this are frozen at zero for the rest of a run.
inline constexpr double kPruneThreshold = 1e-12;

inline ComplexMatrix weighted_average(const std::vector<DensityMatrix>& states,
                                      const std::vector<double>& probs) {
    ComplexMatrix avg(states.front().dim(), states.front().dim());
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (probs[k] == 0.0) continue;
        ComplexMatrix term = states[k].matrix();
        term *= probs[k];
        avg += term;
    }
    return scrub_density(std::move(avg));
}

} // namespace detail

// Maximizes chi({p_k, rho_k}) over the probability simplex by the
// multiplicative fixed-point update p_k <- p_k 2^{D(rho_k||rho_bar)} / Z,
// started from uniform. Terminates when the certificate
// max_k D(rho_k||rho_bar) - chi(p) drops to tol.
inline CapacityResult maximize_holevo(const std::vector<DensityMatrix>& states,
                                      double tol = kDefaultCapacityTol,
                                      std::size_t max_iter = kDefaultCapacityMaxIter) {
    if (states.empty()) throw DomainError("maximize_holevo: empty signal set");
    if (tol <= 0.0) throw DomainError("maximize_holevo: tolerance must be positive");
    if (max_iter == 0) throw DomainError("maximize_holevo: need at least one iteration");
    const std::size_t m = states.size();
    const std::size_t dim = states.front().dim();
    for (const DensityMatrix& s : states)
        if (s.dim() != dim) throw ShapeError("maximize_holevo: states have mixed dimensions");

    std::vector<double> state_entropy(m);
    for (std::size_t k = 0; k < m; ++k) state_entropy[k] = von_neumann_entropy(states[k]);

    CapacityResult result;
    result.mode = CapacityMode::HolevoMax;
    std::vector<double> p(m, 1.0 / static_cast<double>(m));
    std::vector<double> divergence(m);

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        const ComplexMatrix avg = detail::weighted_average(states, p);
        const auto avg_eig = hermitian_eig(avg);

        double avg_entropy = 0.0;
        std::vector<double> log_mu(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            const double mu = std::max(avg_eig.eigenvalues[j], 0.0);
            log_mu[j] = std::log2(std::max(mu, 1e-300));
            if (mu > 0.0) avg_entropy -= mu * log_mu[j];
        }

        // D(rho_k||rho_bar) = -S(rho_k) - sum_j <w_j|rho_k|w_j> log2 mu_j
        for (std::size_t k = 0; k < m; ++k) {
            double cross = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                cplx q = 0.0;
                for (std::size_t r = 0; r < dim; ++r) {
                    cplx row = 0.0;
                    for (std::size_t c = 0; c < dim; ++c)
                        row += states[k].matrix()(r, c) * avg_eig.eigenvectors(c, j);
                    q += std::conj(avg_eig.eigenvectors(r, j)) * row;
                }
                cross += q.real() * log_mu[j];
            }
            divergence[k] = -state_entropy[k] - cross;
        }

        double chi = avg_entropy;
        for (std::size_t k = 0; k < m; ++k) chi -= p[k] * state_entropy[k];
        result.history.push_back(chi);
        result.value_bits = chi;
        result.optimal_probs = p;
        result.iterations = iter + 1;

        const double gap = *std::max_element(divergence.begin(), divergence.end()) - chi;
        if (gap <= tol) {
            result.converged = true;
            break;
        }
        if (iter + 1 == max_iter) break;

        const double shift = *std::max_element(divergence.begin(), divergence.end());
        double z = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            p[k] = p[k] > 0.0 ? p[k] * std::exp2(divergence[k] - shift) : 0.0;
            z += p[k];
        }
        if (z <= 0.0) throw NumericalError("maximize_holevo: update collapsed to zero mass");
        for (double& pk : p) {
            pk /= z;
            if (pk < detail::kPruneThreshold) pk = 0.0;
        }
        z = 0.0;
        for (double pk : p) z += pk;
        for (double& pk : p) pk /= z;
    }
    return result;
}

inline constexpr std::uint64_t kCertificationSeed = 0x5d15ull;

// Secrecy capacity over a certified decoherence-free subspace: the signal set
// is the subspace basis pushed through the legitimate receiver's view, and the
// wiretapper term vanishes, so the capacity is the maximized Holevo quantity.
inline CapacityResult secrecy_capacity_dfs(const DilatedChannel& d, const DfsSubspace& sub,
                                           double tol = kDefaultCapacityTol,
                                           std::size_t max_iter = kDefaultCapacityMaxIter) {
    if (sub.ambient_dim() != d.sys_dim())
        throw ShapeError("secrecy_capacity_dfs: subspace does not match the channel dimension");
    const InvarianceReport cert = verify_invariance(d.channel(), sub, 8, kCertificationSeed);
    if (!cert.passes)
        throw DomainError("secrecy_capacity_dfs: subspace is not invariant under the channel "
                          "(max residual " + std::to_string(cert.max_residual) + ")");
    std::vector<DensityMatrix> signals;
    signals.reserve(sub.dim());
    for (std::size_t k = 0; k < sub.dim(); ++k)
        signals.push_back(bob_state(d, DensityMatrix::pure(sub.basis_column(k))));
    return maximize_holevo(signals, tol, max_iter);
}

// Feasible-ascent maximization of f(p) = chi_Bob(p) - chi_Eve(p) for a fixed
// signal set. The objective is evaluated exactly; ascent steps move toward
// the vertex with the best finite-difference slope and are accepted only if
// they improve, so the history is monotone. Multi-start from uniform plus up
// to seven vertices; the result is a lower bound on the true maximum.
inline CapacityResult secrecy_rate_sweep(const DilatedChannel& d,
                                         const std::vector<DensityMatrix>& states,
                                         double tol = kDefaultCapacityTol,
                                         std::size_t max_iter = kDefaultCapacityMaxIter) {
    if (states.empty()) throw DomainError("secrecy_rate_sweep: empty signal set");
    if (tol <= 0.0) throw DomainError("secrecy_rate_sweep: tolerance must be positive");
    const std::size_t m = states.size();

    std::vector<DensityMatrix> bob, eve;
    std::vector<double> s_bob(m), s_eve(m);
    bob.reserve(m);
    eve.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        bob.push_back(bob_state(d, states[k]));
        eve.push_back(eve_state(d, states[k]));
        s_bob[k] = von_neumann_entropy(bob[k]);
        s_eve[k] = von_neumann_entropy(eve[k]);
    }

    const auto objective = [&](const std::vector<double>& p) {
        double f = von_neumann_entropy(DensityMatrix(detail::weighted_average(bob, p))) -
                   von_neumann_entropy(DensityMatrix(detail::weighted_average(eve, p)));
        for (std::size_t k = 0; k < m; ++k) f -= p[k] * (s_bob[k] - s_eve[k]);
        return f;
    };

    std::vector<std::vector<double>> seeds;
    seeds.emplace_back(m, 1.0 / static_cast<double>(m));
    for (std::size_t k = 0; k < std::min<std::size_t>(m, 7); ++k) {
        std::vector<double> vertex(m, 0.0);
        vertex[k] = 1.0;
        seeds.push_back(std::move(vertex));
    }

    CapacityResult best;
    best.mode = CapacityMode::DifferenceLowerBound;
    best.value_bits = -1.0;
    std::size_t total_steps = 0;
    constexpr double kSlopeStep = 1e-6;

    for (const auto& seed : seeds) {
        std::vector<double> p = seed;
        double fp = objective(p);
        CapacityResult run;
        run.history.push_back(fp);
        bool converged = false;

        for (std::size_t iter = 0; iter < max_iter; ++iter) {
            // Finite-difference slope toward each vertex along the simplex.
            double best_slope = 0.0;
            std::size_t best_vertex = m;
            for (std::size_t k = 0; k < m; ++k) {
                std::vector<double> probe = p;
                for (std::size_t i = 0; i < m; ++i) probe[i] *= (1.0 - kSlopeStep);
                probe[k] += kSlopeStep;
                const double slope = (objective(probe) - fp) / kSlopeStep;
                if (slope > best_slope) {
                    best_slope = slope;
                    best_vertex = k;
                }
            }
            if (best_vertex == m || best_slope <= tol) {
                converged = true;
                break;
            }
            // Backtracking line search toward the best vertex.
            bool accepted = false;
            for (double t = 0.5; t >= 1e-10; t *= 0.5) {
                std::vector<double> trial = p;
                for (std::size_t i = 0; i < m; ++i) trial[i] *= (1.0 - t);
                trial[best_vertex] += t;
                const double ft = objective(trial);
                if (ft > fp) {
                    p = std::move(trial);
                    fp = ft;
                    run.history.push_back(fp);
                    accepted = true;
                    break;
                }
            }
            ++total_steps;
            if (!accepted) {
                converged = true;  // slope positive but no improving step: at numerical stationarity
                break;
            }
        }

        if (fp > best.value_bits) {
            best.value_bits = fp;
            best.optimal_probs = p;
            best.history = run.history;
            best.converged = converged;
        }
    }
    best.iterations = total_steps;
    best.mode = CapacityMode::DifferenceLowerBound;
    return best;
}

} // namespace qwiretap
