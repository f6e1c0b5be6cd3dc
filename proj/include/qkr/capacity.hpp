#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qkr/attacks.hpp"

namespace qkr {

struct MaxLeakage {
    double value = 0.0;
    std::vector<AttackKind> argmax;  // ties reported as a set
};

/// Strongest of the four attacks at noise level beta.
inline MaxLeakage max_leakage(const Scheme& s, Measure measure, double beta,
                              double tie_tol = 1e-12) {
    MaxLeakage out;
    out.value = -1.0;
    for (AttackKind a : all_attacks())
        out.value = std::max(out.value, leakage(s, a, measure, beta));
    for (AttackKind a : all_attacks())
        if (leakage(s, a, measure, beta) >= out.value - tie_tol)
            out.argmax.push_back(a);
    return out;
}

/// Net key-recycling capacity 1 - h(beta) - max leakage (raw, may be
/// negative; clamp for reporting only).
inline double capacity(const Scheme& s, Measure measure, double beta) {
    return 1.0 - binary_entropy(beta) - max_leakage(s, measure, beta).value;
}

struct CapacityPoint {
    SchemeKind scheme;
    Measure measure;
    double beta = 0.0;
    double max_leakage = 0.0;
    std::vector<AttackKind> argmax;
    double capacity_raw = 0.0;

    double capacity_clamped() const { return std::max(0.0, capacity_raw); }
};

inline CapacityPoint capacity_point(const Scheme& s, Measure measure,
                                    double beta) {
    const auto ml = max_leakage(s, measure, beta);
    return {s.kind, measure, beta, ml.value, ml.argmax,
            1.0 - binary_entropy(beta) - ml.value};
}

/// Bisection root of f on [lo, hi] to |delta| <= 1e-6. Requires a sign
/// change across the bracket; otherwise reports no root.
inline std::optional<double> find_crossover(
    const std::function<double(double)>& f, double lo, double hi,
    double tol = 1e-6) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Shannon crossover where the 6-state curve joins the 8-state one: the
/// point where M2 overtakes M1 as the strongest 6-state attack (above it the
/// two capacities coincide, so the capacity difference has no sign change).
inline double shannon_capacity_crossover() {
    const double m1 = m1_leakage(six_state(), Measure::Shannon);
    auto f = [&](double b) { return m2_leakage(b, Measure::Shannon) - m1; };
    return find_crossover(f, 0.05, 0.2).value();
}

/// Min-entropy crossover between the 8-state and 6-state capacities.
inline double min_entropy_capacity_crossover() {
    auto f = [](double b) {
        return capacity(eight_state(), Measure::MinEntropy, b) -
               capacity(six_state(), Measure::MinEntropy, b);
    };
    return find_crossover(f, 0.03, 0.0625).value();
}

/// Noise level beyond which every scheme's min-entropy capacity is negative
/// (the 6-state curve is the last to cross zero).
inline double min_entropy_zero_point() {
    auto f = [](double b) {
        return capacity(six_state(), Measure::MinEntropy, b);
    };
    return find_crossover(f, 0.05, 0.08).value();
}

// ---------------------------------------------------------------------------
// Artificial noise: Alice flips plaintext bits with probability epsilon
// before encoding, trading channel rate for reduced leakage.
// ---------------------------------------------------------------------------

/// BER of two concatenated binary symmetric channels.
inline double star(double eps, double beta) {
    if (!(eps >= 0.0 && eps <= 0.5) || !(beta >= 0.0 && beta <= 0.5))
        throw std::invalid_argument("star: arguments must lie in [0, 1/2]");
    return eps * (1.0 - beta) + (1.0 - eps) * beta;
}

/// Shannon secrecy capacity with artificial noise epsilon:
/// (1-beta) h(eps*p_beta) + beta h(eps) - h(eps*beta).
inline double c_prime(double eps, double beta) {
    const double pb = qkd_error_prob(beta);
    return (1.0 - beta) * binary_entropy(star(eps, pb)) +
           beta * binary_entropy(eps) - binary_entropy(star(eps, beta));
}

struct NoiseOptimum {
    double eps_opt = 0.0;
    double c_opt = 0.0;
};

/// Maximise c_prime(., beta) over eps in [0, 1/2]: 20-point coarse scan to
/// bracket the maximum, then golden-section refinement to |delta eps| <= 1e-6.
inline NoiseOptimum optimize_epsilon(double beta) {
    check_noise(beta);
    constexpr int kScan = 20;
    const double step = 0.5 / kScan;
    int best = 0;
    double best_val = c_prime(0.0, beta);
    for (int i = 1; i <= kScan; ++i) {
        const double v = c_prime(i * step, beta);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = std::max(0.0, (best - 1) * step);
    double hi = std::min(0.5, (best + 1) * step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = c_prime(x1, beta), f2 = c_prime(x2, beta);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = c_prime(x2, beta);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = c_prime(x1, beta);
        }
    }
    double eps = 0.5 * (lo + hi);
    double val = c_prime(eps, beta);
    const double plain = c_prime(0.0, beta);
    if (plain >= val - 1e-12) return {0.0, plain};  // boundary optimum
    return {eps, val};
}

/// Zero of the plain (eps = 0) QKD capacity.
inline double plain_noise_threshold() {
    auto f = [](double b) { return c_prime(0.0, b); };
    return find_crossover(f, 0.1, 0.2).value();
}

/// Zero of the epsilon-optimised capacity.
inline double optimized_noise_threshold() {
    auto f = [](double b) { return optimize_epsilon(b).c_opt; };
    return find_crossover(f, 0.1, 0.2).value();
}

}  // namespace qkr
