#pragma once

#include <stdexcept>
#include <vector>

#include "qkr/encodings.hpp"
#include "qkr/entropy.hpp"
#include "qkr/eve_states.hpp"
#include "qkr/linalg.hpp"

namespace qkr {

enum class AttackKind { M1, M2, K1, K2 };
enum class Measure { Shannon, MinEntropy };

inline const char* attack_name(AttackKind a) {
    switch (a) {
        case AttackKind::M1: return "M1";
        case AttackKind::M2: return "M2";
        case AttackKind::K1: return "K1";
        case AttackKind::K2: return "K2";
    }
    return "?";
}

inline const char* measure_name(Measure m) {
    return m == Measure::Shannon ? "shannon" : "min";
}

inline std::vector<AttackKind> all_attacks() {
    return {AttackKind::M1, AttackKind::M2, AttackKind::K1, AttackKind::K2};
}

// ---------------------------------------------------------------------------
// Attack M1: steal-and-measure on the message. Noise-independent constants;
// zero against 8-state (a quantum one-time pad hides the plaintext).
// ---------------------------------------------------------------------------

inline double m1_leakage(const Scheme& s, Measure measure) {
    double half_angle = 0.0;
    switch (s.kind) {
        case SchemeKind::EightState: return 0.0;
        case SchemeKind::FourState: half_angle = M_PI / 8.0; break;
        case SchemeKind::SixState: half_angle = encoding_angle() / 2.0; break;
    }
    const double sin2 = std::pow(std::sin(half_angle), 2);
    if (measure == Measure::Shannon) return 1.0 - binary_entropy(sin2);
    return 1.0 + std::log2(1.0 - sin2);  // 1 - log(1/cos^2)
}

// ---------------------------------------------------------------------------
// Attack M2: ancilla-per-qubit attack on the message; reduces to the
// qubit-wise QKD analysis and is scheme-independent.
// ---------------------------------------------------------------------------

/// Error probability p_beta of distinguishing E^v_01 from E^v_10.
inline double qkd_error_prob(double beta) {
    check_noise(beta);
    return 0.5 - std::sqrt((beta / 2.0) * (1.0 - 1.5 * beta)) / (1.0 - beta);
}

inline double m2_leakage(double beta, Measure measure) {
    check_noise(beta);
    if (measure == Measure::Shannon)
        return beta + (1.0 - beta) * (1.0 - binary_entropy(qkd_error_prob(beta)));
    return std::log2(1.0 + std::sqrt(2.0 * beta * (1.0 - 1.5 * beta)) + beta);
}

/// Eve's optimal two-outcome discrimination POVM for the M2/QKD attack:
/// perfect separation of the orthogonal E_00/E_11 branch plus the
/// minimum-error basis on the non-orthogonal E_01/E_10 branch.
inline Povm4 qkd_discrimination_povm(const BlochVector& v, double beta) {
    check_noise(beta);
    if (beta <= 0.0)
        throw std::invalid_argument(
            "qkd_discrimination_povm: degenerate at beta = 0 (c = 1); use the analytic limit");
    const auto e = ancilla_vectors(v, beta);
    const double c = (1.0 - 2.0 * beta) / (1.0 - beta);
    const double gp = 0.5 / std::sqrt(1.0 + c) + 0.5 / std::sqrt(1.0 - c);
    const double gm = 0.5 / std::sqrt(1.0 + c) - 0.5 / std::sqrt(1.0 - c);
    const Vec4 mu01 = cx(gp) * e.e01 + cx(gm) * e.e10;
    const Vec4 mu10 = cx(gp) * e.e10 + cx(gm) * e.e01;
    Povm4 povm;
    povm.elements = {projector(e.e00) + projector(mu01),
                     projector(e.e11) + projector(mu10)};
    return povm;
}

// ---------------------------------------------------------------------------
// Attack K1: partial intercept-resend on the key (fraction 3*beta, capped).
// ---------------------------------------------------------------------------

/// Eve's POVM for guessing the basis of a single intercepted qubit carrying
/// known plaintext x. Outcomes follow the scheme's basis label order.
inline Povm2 k1_povm(const Scheme& s, Measure measure, int x = 0) {
    const double sx = (x == 0) ? 1.0 : -1.0;
    Povm2 povm;
    switch (s.kind) {
        case SchemeKind::FourState: {
            // spin (sigma_x - sigma_z)/sqrt2; the outcome toward +x flags b=1
            const double r = sx / std::sqrt(2.0);
            const Mat2 sp = spin(r, 0.0, -r);
            const auto spec = eig_hermitian(sp);
            const Mat2 plus = projector(spec.eigenvectors[0]);
            povm.elements = {Mat2::identity() - plus, plus};
            break;
        }
        case SchemeKind::SixState: {
            const double f = (measure == Measure::MinEntropy) ? 1.0 : -1.0;
            const double r = f * sx / std::sqrt(6.0);
            const std::array<std::array<double, 3>, 3> n = {
                {{-2, 1, 1}, {1, -2, 1}, {1, 1, -2}}};
            for (const auto& nb : n) {
                Mat2 m = Mat2::identity();
                m -= spin(r * nb[0], r * nb[1], r * nb[2]);
                povm.elements.push_back(cx(1.0 / 3.0) * m);
            }
            break;
        }
        case SchemeKind::EightState: {
            const int gg = (measure == Measure::MinEntropy) ? x : 1 - x;
            for (int b : s.bases())
                povm.elements.push_back(cx(0.5) * projector(state(s, b, gg)));
            break;
        }
    }
    return povm;
}

/// Per-intercepted-qubit K1 constant (exact expression, not a decimal).
inline double k1_constant(const Scheme& s, Measure measure) {
    switch (s.kind) {
        case SchemeKind::FourState:
            return m1_leakage(four_state(), measure);
        case SchemeKind::SixState: {
            const double d = 1.0 / (3.0 * std::sqrt(6.0));
            if (measure == Measure::MinEntropy)
                return std::log2(3.0) + std::log2(1.0 / 3.0 + 2.0 * d);
            return std::log2(3.0) -
                   entropy_of({1.0 / 3.0 + d, 1.0 / 3.0 + d, 1.0 / 3.0 - 2.0 * d});
        }
        case SchemeKind::EightState:
            if (measure == Measure::MinEntropy) return 1.0;
            return 2.0 - std::log2(3.0);
    }
    return 0.0;
}

/// K1 leakage per qubit: intercepted fraction min(3*beta, 1) times the
/// per-qubit constant (the fraction saturates at beta = 1/3).
inline double k1_leakage(const Scheme& s, Measure measure, double beta) {
    check_noise(beta);
    return std::min(3.0 * beta, 1.0) * k1_constant(s, measure);
}

// ---------------------------------------------------------------------------
// Attack K2: ancilla-per-qubit known-plaintext attack on the basis key.
// ---------------------------------------------------------------------------

namespace detail {

inline Vec4 m_ket(int i) {
    Vec4 v;
    v[i] = 1.0;
    return v;
}

inline Povm4 k2_povm_four_state() {
    const auto m0 = m_ket(0), m1 = m_ket(1), m2 = m_ket(2), m3 = m_ket(3);
    const cx i(0.0, 1.0);
    const Vec4 g1 = cx(1.0 / std::sqrt(2.0)) * m0 + cx(0.5) * (m3 - m1);
    const Vec4 g3 = cx(1.0 / std::sqrt(2.0)) * m0 - cx(0.5) * (m3 - m1);
    const Vec4 g2 = cx(1.0 / std::sqrt(2.0)) * m2 + cx(0.5) * i * (m1 + m3);
    const Vec4 g4 = cx(1.0 / std::sqrt(2.0)) * m2 - cx(0.5) * i * (m1 + m3);
    Povm4 povm;
    povm.elements = {projector(g1) + projector(g2), projector(g3) + projector(g4)};
    return povm;
}

/// 6-state M_3 (min-entropy branch when dual=false, conjectured Shannon
/// branch when dual=true), then the S-orbit in basis order (1,2,3).
inline Povm4 k2_povm_six_state(double beta, bool dual) {
    const auto m0 = m_ket(0), m1 = m_ket(1), m2 = m_ket(2), m3 = m_ket(3);
    const cx i(0.0, 1.0);
    const double q0 = std::sqrt((1.0 - beta) / (3.0 - 4.0 * beta));
    const double q123 = std::sqrt((2.0 - 3.0 * beta) / (3.0 - 4.0 * beta));
    Vec4 q = cx((dual ? 1.0 : -1.0) * q0) * m0 +
             cx(q123 / std::sqrt(6.0)) * (m1 + m2 - cx(2.0) * m3);
    Vec4 r = cx(std::sqrt((1.0 - beta) / 3.0)) * (m1 + m2 + m3) +
             (dual ? -i : i) * cx(std::sqrt(beta / 2.0)) * (m1 - m2);
    const Mat4 m3op = cx((3.0 - 4.0 * beta) / (3.0 * (1.0 - beta))) * projector(q) +
                      cx(1.0 / (3.0 * (1.0 - beta))) * projector(r);
    const Mat4 s = permutation_s();
    const Mat4 m1op = s * m3op * s.adjoint();
    const Mat4 m2op = s * m1op * s.adjoint();
    Povm4 povm;
    povm.elements = {m1op, m2op, m3op};
    povm.symmetry = "S-cyclic";
    return povm;
}

/// 8-state M_00/R_00 in basis order (00,01,10,11) via the sigma-z group.
inline Povm4 k2_povm_eight_state(double beta, Measure measure) {
    const auto m0 = m_ket(0), m1 = m_ket(1), m2 = m_ket(2), m3 = m_ket(3);
    const bool dual = (measure == Measure::Shannon);
    Mat4 head;
    if (beta <= 1.0 / 3.0) {
        const double s0 = dual ? -1.0 : 1.0;
        const Vec4 u = cx(0.5) * m0 + cx(0.5 * s0) * (m1 + m2 + m3);
        head = projector(u);
    } else {
        const double a0 = std::sqrt(beta / 2.0) / std::sqrt(1.0 - beta);
        const double a123 = std::sqrt(1.0 - 1.5 * beta) / std::sqrt(1.0 - beta);
        const Vec4 a = cx((dual ? -1.0 : 1.0) * a0) * m0 +
                       cx(a123 / std::sqrt(3.0)) * (m1 + m2 + m3);
        Vec4 d = cx(1.0 / std::sqrt(3.0)) *
                 (std::polar(1.0, M_PI / 3.0) * m1 +
                  std::polar(1.0, -M_PI / 3.0) * m2 - m3);
        if (dual) d = d.conjugate_entries();
        head = cx((1.0 - beta) / (2.0 * beta)) * projector(a) +
               cx((3.0 * beta - 1.0) / (2.0 * beta)) * projector(d);
    }
    const auto group = eight_state_group();
    Povm4 povm;
    for (const auto& g : group) povm.elements.push_back(g * head * g);
    povm.symmetry = "sigma-z";
    return povm;
}

}  // namespace detail

/// The optimal (min-entropy) or conjectured-optimal (Shannon) K2
/// discrimination POVM, one outcome per basis label. For 4-state the two
/// measures share the same POVM.
inline Povm4 k2_povm(const Scheme& s, Measure measure, double beta) {
    check_noise(beta);
    switch (s.kind) {
        case SchemeKind::FourState:
            return detail::k2_povm_four_state();
        case SchemeKind::SixState:
            return detail::k2_povm_six_state(beta, measure == Measure::Shannon);
        case SchemeKind::EightState:
            return detail::k2_povm_eight_state(beta, measure);
    }
    throw std::logic_error("k2_povm: unreachable");
}

/// p_6 and p_8, Eve's per-basis success probabilities of the conjectured
/// Shannon POVMs.
inline double k2_p6(double beta) {
    return 1.0 / 3.0 -
           (2.0 * std::sqrt(2.0)) / (3.0 * std::sqrt(3.0)) *
               std::sqrt(beta * (1.0 - beta));
}
inline double k2_p8(double beta) {
    return 0.25 - (std::sqrt(6.0) / 4.0) * std::sqrt(beta * (1.0 - 1.5 * beta));
}

/// Closed-form K2 leakage per qubit.
inline double k2_leakage(const Scheme& s, Measure measure, double beta) {
    check_noise(beta);
    switch (s.kind) {
        case SchemeKind::FourState: {
            const double root = std::sqrt(beta * (1.0 - 1.5 * beta));
            if (measure == Measure::MinEntropy)
                return std::log2(1.0 + root + beta / std::sqrt(2.0));
            return 1.0 - binary_entropy(0.5 + 0.5 * root +
                                        beta / (2.0 * std::sqrt(2.0)));
        }
        case SchemeKind::SixState: {
            if (measure == Measure::MinEntropy)
                return std::log2(1.0 + (2.0 * std::sqrt(2.0) / std::sqrt(3.0)) *
                                           std::sqrt(beta * (1.0 - beta)));
            const double p6 = k2_p6(beta);
            return std::log2(3.0) - (binary_entropy(p6) + 1.0 - p6);
        }
        case SchemeKind::EightState: {
            if (measure == Measure::MinEntropy) {
                if (beta > 1.0 / 3.0) return 1.0;
                return std::log2(1.0 +
                                 std::sqrt(6.0 * beta * (1.0 - 1.5 * beta)));
            }
            if (beta > 1.0 / 3.0) return 2.0 - std::log2(3.0);
            const double p8 = k2_p8(beta);
            return 2.0 - (binary_entropy(p8) + (1.0 - p8) * std::log2(3.0));
        }
    }
    throw std::logic_error("k2_leakage: unreachable");
}

/// Leakage of an arbitrary attack at noise level beta.
inline double leakage(const Scheme& s, AttackKind attack, Measure measure,
                      double beta) {
    switch (attack) {
        case AttackKind::M1: return m1_leakage(s, measure);
        case AttackKind::M2: return m2_leakage(beta, measure);
        case AttackKind::K1: return k1_leakage(s, measure, beta);
        case AttackKind::K2: return k2_leakage(s, measure, beta);
    }
    throw std::logic_error("leakage: unreachable");
}

/// The v -> -v dual of a POVM over the ancilla space: entrywise complex
/// conjugation plus a sign flip of the m_0 row and column. Maps each zeta_b
/// onto its plaintext-flipped partner, so the dual of the min-entropy POVM
/// is the Shannon POVM.
inline Mat4 dual_operator(const Mat4& m) {
    Mat4 d = m.conjugate_entries();
    for (int j = 1; j < 4; ++j) {
        d(0, j) = -d(0, j);
        d(j, 0) = -d(j, 0);
    }
    return d;
}

inline Povm4 dual_povm(const Povm4& povm) {
    Povm4 out = povm;
    for (auto& m : out.elements) m = dual_operator(m);
    return out;
}

/// Measure-functional of a K2 POVM's outcome statistics: the leakage it
/// attains against the zeta ensemble (independent route to k2_leakage).
inline double k2_leakage_from_povm(const Scheme& s, Measure measure,
                                   double beta) {
    const auto ensemble = zeta_ensemble(s, beta);
    const auto povm = k2_povm(s, measure, beta);
    const double logb = std::log2(static_cast<double>(s.size()));
    if (measure == Measure::MinEntropy)
        return logb + std::log2(guessing_probability(ensemble, povm));
    return logb - shannon_given_povm(ensemble, povm);
}

}  // namespace qkr
