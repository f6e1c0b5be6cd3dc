#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qkr/linalg.hpp"

namespace qkr {

/// Angle of the cube-diagonal encodings, cos(alpha) = 1/sqrt(3).
inline double encoding_angle() { return std::acos(1.0 / std::sqrt(3.0)); }

enum class SchemeKind { FourState, SixState, EightState };

inline const char* scheme_name(SchemeKind k) {
    switch (k) {
        case SchemeKind::FourState: return "4-state";
        case SchemeKind::SixState: return "6-state";
        case SchemeKind::EightState: return "8-state";
    }
    return "?";
}

/// One of the three conjugate-coding constellations and its basis label set.
struct Scheme {
    SchemeKind kind;

    /// Ordered basis labels: {0,1} for 4-state, {1,2,3} for 6-state,
    /// {0,1,2,3} (b = 2u+w) for 8-state.
    std::vector<int> bases() const {
        switch (kind) {
            case SchemeKind::FourState: return {0, 1};
            case SchemeKind::SixState: return {1, 2, 3};
            case SchemeKind::EightState: return {0, 1, 2, 3};
        }
        return {};
    }

    int size() const { return static_cast<int>(bases().size()); }

    const char* name() const { return scheme_name(kind); }
};

inline Scheme four_state() { return {SchemeKind::FourState}; }
inline Scheme six_state() { return {SchemeKind::SixState}; }
inline Scheme eight_state() { return {SchemeKind::EightState}; }

inline std::vector<Scheme> all_schemes() {
    return {four_state(), six_state(), eight_state()};
}

/// Unit vector on the Bloch sphere.
struct BlochVector {
    double x = 0.0, y = 0.0, z = 1.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    BlochVector operator-() const { return {-x, -y, -z}; }
};

[[noreturn]] inline void bad_basis(const Scheme& s, int b) {
    throw std::invalid_argument("unknown basis label " + std::to_string(b) +
                                " for " + s.name());
}

/// Bloch direction of the encoding of bit g in basis b.
inline BlochVector bloch_vector(const Scheme& s, int b, int g) {
    const double sg = (g == 0) ? 1.0 : -1.0;
    switch (s.kind) {
        case SchemeKind::FourState:
            if (b == 0) return {0.0, 0.0, sg};
            if (b == 1) return {sg, 0.0, 0.0};
            bad_basis(s, b);
        case SchemeKind::SixState:
            if (b == 1) return {sg, 0.0, 0.0};
            if (b == 2) return {0.0, sg, 0.0};
            if (b == 3) return {0.0, 0.0, sg};
            bad_basis(s, b);
        case SchemeKind::EightState: {
            if (b < 0 || b > 3) bad_basis(s, b);
            const int u = b >> 1, w = b & 1;
            const double r = sg / std::sqrt(3.0);
            return {r * (u ? -1.0 : 1.0), r * ((u ^ w) ? -1.0 : 1.0),
                    r * (w ? -1.0 : 1.0)};
        }
    }
    bad_basis(s, b);
}

/// Measurement eigenstates for the spin direction v, phase convention
/// e^{-i phi/2} on |0> and e^{+i phi/2} on |1>. Returns (|v>, |vbar>).
inline std::pair<Vec2, Vec2> measurement_basis(const BlochVector& v) {
    const double n = v.norm();
    if (!(n > 1e-14))
        throw std::invalid_argument("measurement_basis: zero direction");
    const double theta = std::acos(std::clamp(v.z / n, -1.0, 1.0));
    const double phi = (std::abs(v.x) + std::abs(v.y) > 0.0)
                           ? std::atan2(v.y, v.x)
                           : 0.0;
    const cx em = std::polar(1.0, -phi / 2.0);
    const cx ep = std::polar(1.0, phi / 2.0);
    const double ct = std::cos(theta / 2.0), st = std::sin(theta / 2.0);
    Vec2 plus, minus;
    plus[0] = em * ct;
    plus[1] = ep * st;
    minus[0] = -em * st;
    minus[1] = ep * ct;
    return {plus, minus};
}

/// Hilbert-space encoding state |psi_{b,g}>. The 8-state branch carries the
/// full phase factors; 4/6-state use the spin eigenstate convention above.
inline Vec2 state(const Scheme& s, int b, int g) {
    if (s.kind == SchemeKind::EightState) {
        if (b < 0 || b > 3) bad_basis(s, b);
        const int u = b >> 1, w = b & 1;
        const double alpha = encoding_angle();
        const cx sqrt_i = std::polar(1.0, M_PI / 4.0);  // principal branch
        const cx front = (g * u) % 2 ? -1.0 : 1.0;
        const cx c0 = (g == 0) ? cx(1.0) : -sqrt_i;          // (-sqrt i)^g
        const cx c1 = ((u % 2) ? -1.0 : 1.0) *
                      ((g == 0) ? sqrt_i : cx(1.0));         // (-1)^u (sqrt i)^{1-g}
        Vec2 psi;
        psi[(g ^ w)] = front * c0 * std::cos(alpha / 2.0);
        psi[1 - (g ^ w)] = front * c1 * std::sin(alpha / 2.0);
        return psi;
    }
    return measurement_basis(bloch_vector(s, b, g)).first;
}

}  // namespace qkr
