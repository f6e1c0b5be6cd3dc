#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkr/linalg.hpp"

namespace qkr {

inline constexpr double kProbClamp = 1e-15;
inline constexpr double kPsdTol = 1e-9;

/// Binary entropy h(p) in bits, h(0) = h(1) = 0 by continuity.
inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("binary_entropy: p must lie in [0,1]");
    double s = 0.0;
    if (p > kProbClamp) s -= p * std::log2(p);
    if (1.0 - p > kProbClamp) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

/// h({p_1,...,p_n}) = sum_i p_i log(1/p_i); entries below the clamp
/// contribute zero.
inline double entropy_of(const std::vector<double>& p) {
    double s = 0.0;
    for (double q : p)
        if (q > kProbClamp) s -= q * std::log2(q);
    return s;
}

/// A finite POVM over dimension N with an optional symmetry-group tag.
template <int N>
struct Povm {
    std::vector<Matrix<N>> elements;
    std::string symmetry;  // empty, "S-cyclic" or "sigma-z"

    int outcomes() const { return static_cast<int>(elements.size()); }

    double completeness_defect() const {
        Matrix<N> sum;
        for (const auto& m : elements) sum += m;
        return max_abs_diff(sum, Matrix<N>::identity());
    }

    double min_element_eigenvalue() const {
        double r = 0.0;
        for (const auto& m : elements) r = std::min(r, min_eigenvalue(m));
        return r;
    }

    bool is_valid(double tol = kPsdTol) const {
        return completeness_defect() <= tol && min_element_eigenvalue() >= -tol;
    }
};

using Povm2 = Povm<2>;
using Povm4 = Povm<4>;

/// Uniform-prior ensemble of density operators.
template <int N>
using Ensemble = std::vector<Matrix<N>>;

template <int N>
std::vector<double> outcome_distribution(const Matrix<N>& rho,
                                         const Povm<N>& povm) {
    std::vector<double> p;
    p.reserve(povm.elements.size());
    for (const auto& m : povm.elements)
        p.push_back(std::max(0.0, std::real(trace_product(m, rho))));
    return p;
}

/// H(B | M(zeta_B)) for a given POVM: the conditional Shannon entropy of the
/// uniform label B after observing the measurement outcome.
template <int N>
double shannon_given_povm(const Ensemble<N>& ensemble, const Povm<N>& povm) {
    const int nb = static_cast<int>(ensemble.size());
    const int no = povm.outcomes();
    if (no != nb)
        throw std::invalid_argument("shannon_given_povm: outcome count must equal |B|");
    // joint p(b,m), uniform prior on b
    std::vector<double> joint(static_cast<size_t>(nb) * no);
    std::vector<double> marginal(no, 0.0);
    for (int b = 0; b < nb; ++b) {
        for (int m = 0; m < no; ++m) {
            const double p = std::max(
                0.0, std::real(trace_product(povm.elements[m], ensemble[b])) / nb);
            joint[b * no + m] = p;
            marginal[m] += p;
        }
    }
    double h = 0.0;
    for (int m = 0; m < no; ++m) {
        if (marginal[m] <= kProbClamp) continue;
        for (int b = 0; b < nb; ++b) {
            const double p = joint[b * no + m];
            if (p > kProbClamp) h += p * std::log2(marginal[m] / p);
        }
    }
    return h;
}

/// (1/|B|) sum_b tr[M_b zeta_b]: the probability of guessing B correctly.
template <int N>
double guessing_probability(const Ensemble<N>& ensemble, const Povm<N>& povm) {
    const int nb = static_cast<int>(ensemble.size());
    if (povm.outcomes() != nb)
        throw std::invalid_argument("guessing_probability: outcome count must equal |B|");
    double s = 0.0;
    for (int b = 0; b < nb; ++b)
        s += std::real(trace_product(povm.elements[b], ensemble[b]));
    return s / nb;
}

/// Min-entropy of a binary variable given conditional states:
/// 1 - log(1 + tr|p0 rho0 - p1 rho1|).
template <int N>
double min_entropy_binary(double p0, const Matrix<N>& rho0,
                          const Matrix<N>& rho1) {
    if (!(p0 >= 0.0 && p0 <= 1.0))
        throw std::invalid_argument("min_entropy_binary: p0 must lie in [0,1]");
    for (const Matrix<N>* rho : {&rho0, &rho1}) {
        if (hermiticity_defect(*rho) > kHermTol ||
            std::abs(std::real(rho->trace()) - 1.0) > 1e-9)
            throw std::invalid_argument("min_entropy_binary: inputs must be density operators");
    }
    const Matrix<N> delta = cx(p0) * rho0 - cx(1.0 - p0) * rho1;
    return 1.0 - std::log2(1.0 + trace_norm(delta));
}

/// The optimal binary discrimination POVM: projector onto the nonnegative
/// eigenspace of p0 rho0 - p1 rho1, and its complement.
template <int N>
Povm<N> sign_decomposition_povm(double p0, const Matrix<N>& rho0,
                                const Matrix<N>& rho1) {
    const Matrix<N> delta = cx(p0) * rho0 - cx(1.0 - p0) * rho1;
    const auto spec = eig_hermitian(delta);
    Matrix<N> m0;
    for (int k = 0; k < N; ++k)
        if (spec.eigenvalues[k] >= 0.0) m0 += projector(spec.eigenvectors[k]);
    Povm<N> povm;
    povm.elements = {m0, Matrix<N>::identity() - m0};
    return povm;
}

struct HolevoReport {
    bool ok = false;
    double min_eigenvalue = 0.0;   // most negative eigenvalue over all Lambda - zeta_b
    double lambda_asymmetry = 0.0; // Hermiticity defect of Lambda
};

/// Holevo optimality certificate for min-entropy: with Lambda = sum_b
/// zeta_b M_b (uniform prior absorbed), checks Lambda - zeta_b >= 0 for
/// every b and that Lambda is Hermitian.
template <int N>
HolevoReport holevo_certificate(const Ensemble<N>& ensemble,
                                const Povm<N>& povm, double tol = kPsdTol) {
    const int nb = static_cast<int>(ensemble.size());
    if (povm.outcomes() != nb)
        throw std::invalid_argument("holevo_certificate: outcome count must equal |B|");
    Matrix<N> lambda;
    for (int b = 0; b < nb; ++b) lambda += ensemble[b] * povm.elements[b];

    HolevoReport rep;
    rep.lambda_asymmetry = hermiticity_defect(lambda);
    const Matrix<N> lambda_h =
        cx(0.5) * (lambda + lambda.adjoint());  // symmetrise for the eigensolve
    double worst = 0.0;
    for (int b = 0; b < nb; ++b)
        worst = std::min(worst, min_eigenvalue(lambda_h - ensemble[b]));
    rep.min_eigenvalue = worst;
    rep.ok = (worst >= -tol) && (rep.lambda_asymmetry <= tol);
    return rep;
}

}  // namespace qkr
