#pragma once

#include <stdexcept>
#include <vector>

#include "qkr/encodings.hpp"
#include "qkr/linalg.hpp"

namespace qkr {

inline void check_noise(double beta) {
    if (!(beta >= 0.0 && beta <= 0.5))
        throw std::invalid_argument("bit error rate beta must lie in [0, 1/2]");
}

// Bell states in the reference basis. Order: Psi-, Phi-, Psi+, Phi+.
inline Vec4 bell_psi_minus() {
    Vec4 v;
    v[1] = 1.0 / std::sqrt(2.0);
    v[2] = -1.0 / std::sqrt(2.0);
    return v;
}
inline Vec4 bell_phi_minus() {
    Vec4 v;
    v[0] = 1.0 / std::sqrt(2.0);
    v[3] = -1.0 / std::sqrt(2.0);
    return v;
}
inline Vec4 bell_psi_plus() {
    Vec4 v;
    v[1] = 1.0 / std::sqrt(2.0);
    v[2] = 1.0 / std::sqrt(2.0);
    return v;
}
inline Vec4 bell_phi_plus() {
    Vec4 v;
    v[0] = 1.0 / std::sqrt(2.0);
    v[3] = 1.0 / std::sqrt(2.0);
    return v;
}

/// Bell-diagonal weights after noise symmetrisation at bit error rate beta,
/// on (Psi-, Phi-, Psi+, Phi+).
inline std::array<double, 4> bell_weights(double beta) {
    check_noise(beta);
    return {1.0 - 1.5 * beta, beta / 2.0, beta / 2.0, beta / 2.0};
}

/// The symmetrised AB density operator (dim 4).
inline Mat4 symmetrized_ab(double beta) {
    const auto w = bell_weights(beta);
    Mat4 rho;
    rho += cx(w[0]) * projector(bell_psi_minus());
    rho += cx(w[1]) * projector(bell_phi_minus());
    rho += cx(w[2]) * projector(bell_psi_plus());
    rho += cx(w[3]) * projector(bell_phi_plus());
    return rho;
}

/// Purification of the symmetrised AB state with Eve's four-dimensional
/// ancilla. Index layout: ((a*2)+b)*4 + e. The Bell-state/ancilla pairing
/// is fixed so that projecting onto the measurement basis of any direction
/// v reproduces the E^v_xy expansion exactly.
inline Vec16 purified_abe(double beta) {
    check_noise(beta);
    const auto bells =
        std::array<Vec4, 4>{bell_psi_minus(), bell_phi_minus(), bell_phi_plus(),
                            bell_psi_plus()};
    const std::array<cx, 4> coeff = {
        cx(std::sqrt(1.0 - 1.5 * beta)), cx(-std::sqrt(beta / 2.0)),
        cx(0.0, std::sqrt(beta / 2.0)), cx(std::sqrt(beta / 2.0))};
    Vec16 psi;
    for (int k = 0; k < 4; ++k) {
        Vec4 mk;
        mk[k] = 1.0;
        psi += coeff[k] * tensor(bells[k], mk);
    }
    return psi;
}

/// Trace out Eve's 4-dim ancilla from a pure ABE state.
inline Mat4 partial_trace_ancilla(const Vec16& psi) {
    Mat4 rho;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cx s = 0.0;
            for (int e = 0; e < 4; ++e) s += psi[i * 4 + e] * std::conj(psi[j * 4 + e]);
            rho(i, j) = s;
        }
    return rho;
}

/// Eve's conditional ancilla vectors E^v_xy in the m-basis, for Alice
/// outcome x and Bob outcome y along measurement direction v.
struct AncillaVectors {
    Vec4 e01, e10, e00, e11;

    const Vec4& operator()(int x, int y) const {
        if (x == 0) return y == 0 ? e00 : e01;
        return y == 0 ? e10 : e11;
    }
};

inline AncillaVectors ancilla_vectors(const BlochVector& v, double beta) {
    check_noise(beta);
    if (std::abs(v.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("ancilla_vectors: direction must be a unit vector");

    AncillaVectors out;
    const double s0 = std::sqrt(1.0 - 1.5 * beta);
    const double sb = std::sqrt(beta / 2.0);
    const double n01 = std::sqrt(1.0 - beta);

    out.e01[0] = s0 / n01;
    out.e01[1] = sb * v.x / n01;
    out.e01[2] = sb * v.y / n01;
    out.e01[3] = sb * v.z / n01;

    out.e10[0] = s0 / n01;
    out.e10[1] = -sb * v.x / n01;
    out.e10[2] = -sb * v.y / n01;
    out.e10[3] = -sb * v.z / n01;

    const double pole = 1.0 - v.z * v.z;
    if (pole > 1e-12) {
        const double d = std::sqrt(2.0 * pole);
        out.e00[1] = cx(-v.x * v.z, -v.y) / d;
        out.e00[2] = cx(-v.y * v.z, v.x) / d;
        out.e00[3] = pole / d;
        out.e11[1] = cx(-v.x * v.z, v.y) / d;
        out.e11[2] = cx(-v.y * v.z, -v.x) / d;
        out.e11[3] = pole / d;
    } else {
        // Analytic continuation toward the poles v_z = +-1 along azimuth phi.
        const double phi = (std::abs(v.x) + std::abs(v.y) > 0.0)
                               ? std::atan2(v.y, v.x)
                               : 0.0;
        const cx e_ip = std::polar(1.0, phi);
        const double r = 1.0 / std::sqrt(2.0);
        if (v.z > 0.0) {
            out.e00[1] = -e_ip * r;
            out.e00[2] = cx(0.0, 1.0) * e_ip * r;
        } else {
            out.e00[1] = std::conj(e_ip) * r;
            out.e00[2] = cx(0.0, 1.0) * std::conj(e_ip) * r;
        }
        out.e11[1] = std::conj(out.e00[1]);
        out.e11[2] = std::conj(out.e00[2]);
    }
    return out;
}

/// Measurement direction associated with basis label b (the g = 0 pole).
inline BlochVector basis_direction(const Scheme& s, int b) {
    return bloch_vector(s, b, 0);
}

/// Known-plaintext ancilla state zeta_b for plaintext bit x. The x = 1
/// branch is the x = 0 construction with v -> -v.
inline Mat4 zeta(const Scheme& s, int b, double beta, int x = 0) {
    check_noise(beta);
    BlochVector v = basis_direction(s, b);
    if (x == 1) v = -v;
    const auto e = ancilla_vectors(v, beta);
    return cx(1.0 - beta) * projector(e.e01) + cx(beta) * projector(e.e00);
}

/// All zeta_b of a scheme in basis-label order (uniform prior ensemble).
inline std::vector<Mat4> zeta_ensemble(const Scheme& s, double beta, int x = 0) {
    std::vector<Mat4> out;
    for (int b : s.bases()) out.push_back(zeta(s, b, beta, x));
    return out;
}

/// Cyclic permutation m1 -> m2 -> m3 -> m1 of the 6-state analysis.
inline Mat4 permutation_s() {
    Mat4 s;
    s(0, 0) = 1.0;
    s(2, 1) = 1.0;
    s(3, 2) = 1.0;
    s(1, 3) = 1.0;
    return s;
}

/// The four diagonal sign operators relating the 8-state zeta_uw
/// (identity, sigma_z x 1, sigma_z x sigma_z, 1 x sigma_z on the m-basis).
inline std::array<Mat4, 4> eight_state_group() {
    auto d = [](double a, double b, double c, double e) {
        Mat4 m;
        m(0, 0) = a;
        m(1, 1) = b;
        m(2, 2) = c;
        m(3, 3) = e;
        return m;
    };
    return {d(1, 1, 1, 1), d(1, 1, -1, -1), d(1, -1, -1, 1), d(1, -1, 1, -1)};
}

}  // namespace qkr
