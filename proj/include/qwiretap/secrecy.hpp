#pragma once

// Entropy and Holevo-quantity evaluation, quantum privacy, and wiretap-code
// verification: decoding error probability against the decoding POVM and
// per-letter leakage through the environment. All logarithms are base 2.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qwiretap/channel.hpp"
#include "qwiretap/dfs.hpp"

namespace qwiretap {

class Ensemble {
public:
    Ensemble(std::vector<DensityMatrix> states, std::vector<double> probs)
        : states_(std::move(states)), probs_(std::move(probs)) {
        if (states_.empty() || states_.size() != probs_.size())
            throw ShapeError("Ensemble: need matching, nonempty state and probability lists");
        double total = 0.0;
        for (double p : probs_) {
            if (p < 0.0) throw DomainError("Ensemble: negative probability");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw DomainError("Ensemble: probabilities sum to " + std::to_string(total));
        const std::size_t d = states_.front().dim();
        for (const DensityMatrix& s : states_)
            if (s.dim() != d) throw ShapeError("Ensemble: states have mixed dimensions");
    }

    static Ensemble uniform(std::vector<DensityMatrix> states) {
        const std::size_t n = states.size();
        return Ensemble(std::move(states), std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }

    const std::vector<DensityMatrix>& states() const { return states_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return states_.size(); }
    std::size_t dim() const { return states_.front().dim(); }

    DensityMatrix average() const {
        ComplexMatrix avg(dim(), dim());
        for (std::size_t k = 0; k < states_.size(); ++k) {
            ComplexMatrix term = states_[k].matrix();
            term *= probs_[k];
            avg += term;
        }
        return DensityMatrix(detail::scrub_density(std::move(avg)));
    }

private:
    std::vector<DensityMatrix> states_;
    std::vector<double> probs_;
};

// S(rho) = -sum lambda log2 lambda, with 0 log 0 = 0. Eigenvalues in
// [-1e-9, 0) are clamped to zero; anything lower is an invalid state.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    const auto eig = hermitian_eig(rho.matrix());
    double s = 0.0;
    for (double lambda : eig.eigenvalues) {
        if (lambda < -1e-9)
            throw DomainError("von_neumann_entropy: eigenvalue " + std::to_string(lambda) +
                              " below -1e-9");
        if (lambda <= 0.0) continue;
        s -= lambda * std::log2(lambda);
    }
    return std::max(s, 0.0);
}

// chi = S(average) - sum_k p_k S(rho_k)
inline double holevo(const Ensemble& e) {
    double chi = von_neumann_entropy(e.average());
    for (std::size_t k = 0; k < e.size(); ++k)
        chi -= e.probs()[k] * von_neumann_entropy(e.states()[k]);
    return chi;
}

struct PrivacyReport {
    double chi_bob = 0.0;
    double chi_eve = 0.0;
    double privacy = 0.0;  // chi_bob - chi_eve, exactly as computed
};

inline PrivacyReport privacy(const DilatedChannel& d, const Ensemble& e) {
    if (e.dim() != d.sys_dim())
        throw ShapeError("privacy: ensemble dimension does not match the channel");
    std::vector<DensityMatrix> bob, eve;
    bob.reserve(e.size());
    eve.reserve(e.size());
    for (const DensityMatrix& rho : e.states()) {
        bob.push_back(bob_state(d, rho));
        eve.push_back(eve_state(d, rho));
    }
    PrivacyReport report;
    report.chi_bob = holevo(Ensemble(std::move(bob), e.probs()));
    report.chi_eve = holevo(Ensemble(std::move(eve), e.probs()));
    report.privacy = report.chi_bob - report.chi_eve;
    return report;
}

// One evaluation of the secrecy-rate lower bound chi_Bob - chi_Eve at a fixed
// prior; maximization over priors lives in capacity.hpp.
inline double secrecy_rate_lower_bound(const DilatedChannel& d, const Ensemble& e) {
    return privacy(d, e).privacy;
}

// A general wiretap code: uniformly weighted codeword states, a decoding
// POVM (one element per codeword; any extra trailing elements count toward
// completeness only), and the code length n used as the leakage denominator.
struct WiretapCode {
    std::vector<DensityMatrix> codewords;
    std::vector<ComplexMatrix> decoding_povm;
    std::size_t length = 1;
};

inline WiretapCode to_wiretap_code(const Qeac& qeac) {
    WiretapCode code;
    for (const auto& word : qeac.codewords) code.codewords.push_back(DensityMatrix::pure(word));
    code.decoding_povm = qeac.decoding_povm;
    code.length = qeac.subspace.dim();
    return code;
}

struct WiretapVerdict {
    double p_error = 0.0;
    double leakage = 0.0;  // bits per letter
    double lambda = 0.0;
    double mu = 0.0;
    bool passes = false;   // p_error <= lambda and leakage < mu
};

// Checks the two wiretap-code criteria: average decoding error probability
// P_e = 1 - (1/|U|) sum_u Tr[E(w_u) D_u] <= lambda, and per-letter leakage
// (1/n) chi_Eve < mu for the uniform codeword ensemble.
inline WiretapVerdict verify_wiretap_code(const DilatedChannel& d, const WiretapCode& code,
                                          double lambda, double mu) {
    if (code.codewords.empty()) throw DomainError("verify_wiretap_code: empty codeword set");
    if (code.decoding_povm.size() < code.codewords.size())
        throw DomainError("verify_wiretap_code: fewer POVM elements than codewords");
    if (code.length == 0) throw DomainError("verify_wiretap_code: code length must be positive");
    const std::size_t dim = d.sys_dim();
    for (const DensityMatrix& w : code.codewords)
        if (w.dim() != dim)
            throw ShapeError("verify_wiretap_code: codeword dimension does not match the channel");

    ComplexMatrix povm_sum(dim, dim);
    for (std::size_t u = 0; u < code.decoding_povm.size(); ++u) {
        const ComplexMatrix& el = code.decoding_povm[u];
        if (!el.is_square() || el.rows() != dim)
            throw ShapeError("verify_wiretap_code: POVM element " + std::to_string(u) +
                             " has the wrong dimension");
        const auto eig = hermitian_eig(detail::scrub_density(el));
        if (eig.eigenvalues.back() < -1e-9)
            throw DomainError("verify_wiretap_code: POVM element " + std::to_string(u) +
                              " is not positive semidefinite");
        povm_sum += el;
    }
    ComplexMatrix slack = ComplexMatrix::identity(dim) - povm_sum;
    if (hermitian_eig(detail::scrub_density(slack)).eigenvalues.back() < -1e-9)
        throw DomainError("verify_wiretap_code: POVM elements sum above identity");

    const std::size_t num = code.codewords.size();
    const double weight = 1.0 / static_cast<double>(num);
    double correct = 0.0;
    std::vector<DensityMatrix> eve_states;
    eve_states.reserve(num);
    for (std::size_t u = 0; u < num; ++u) {
        const DensityMatrix received = bob_state(d, code.codewords[u]);
        correct += weight * (received.matrix() * code.decoding_povm[u]).trace().real();
        eve_states.push_back(eve_state(d, code.codewords[u]));
    }

    WiretapVerdict verdict;
    verdict.lambda = lambda;
    verdict.mu = mu;
    verdict.p_error = std::clamp(1.0 - correct, 0.0, 1.0);
    verdict.leakage = holevo(Ensemble::uniform(std::move(eve_states))) /
                      static_cast<double>(code.length);
    verdict.passes = verdict.p_error <= lambda && verdict.leakage < mu;
    return verdict;
}

inline WiretapVerdict verify_wiretap_code(const DilatedChannel& d, const Qeac& qeac, double lambda,
                                          double mu) {
    return verify_wiretap_code(d, to_wiretap_code(qeac), lambda, mu);
}

} // namespace qwiretap
