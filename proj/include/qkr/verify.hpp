#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "qkr/capacity.hpp"
#include "qkr/povm_search.hpp"

namespace qkr {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

/// Completeness-preserving tamper: moves p*H between the first two POVM
/// elements (H traceless Hermitian), breaking optimality but not the sum.
inline Povm4 tamper(Povm4 povm, double p) {
    if (p == 0.0 || povm.outcomes() < 2) return povm;
    Mat4 h;
    h(0, 1) = 1.0;
    h(1, 0) = 1.0;
    povm.elements[0] += cx(p) * h;
    povm.elements[1] -= cx(p) * h;
    return povm;
}

inline BlochVector random_direction(SplitMix64& rng) {
    while (true) {
        BlochVector v{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double n = v.norm();
        if (n > 1e-3) return {v.x / n, v.y / n, v.z / n};
    }
}

struct Suite {
    std::vector<CheckResult>& out;
    double perturb;

    void add(const std::string& name, double err, double tol) {
        out.push_back({name, err <= tol,
                       fmt("err=%.3e", err) + fmt(" tol=%.1e", tol)});
    }
    void add_value(const std::string& name, double got, double want, double tol) {
        out.push_back({name, std::abs(got - want) <= tol,
                       fmt("got=%.6f", got) + fmt(" want=%.6f", want)});
    }
    void add_flag(const std::string& name, bool ok, const std::string& detail) {
        out.push_back({name, ok, detail});
    }
};

}  // namespace detail

/// The full certificate and invariant suite. A nonzero `perturb` tampers
/// with the analytic POVMs before certification; optimality-sensitive checks
/// must then fail.
inline std::vector<CheckResult> run_checks(double perturb = 0.0,
                                           std::uint64_t seed = 20260823ULL) {
    std::vector<CheckResult> results;
    detail::Suite s{results, perturb};
    SplitMix64 rng(seed);

    // ---- linear algebra ----
    {
        double worst_rec = 0.0, worst_orth = 0.0;
        for (int k = 0; k < 50; ++k) {
            const Mat4 c = random_factor<4>(rng);
            const Mat4 a = cx(0.5) * (c + c.adjoint());
            const auto spec = eig_hermitian(a);
            worst_rec = std::max(worst_rec, max_abs_diff(spec.reconstruct(), a));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    worst_orth = std::max(
                        worst_orth,
                        std::abs(inner(spec.eigenvectors[i], spec.eigenvectors[j]) -
                                 cx(i == j ? 1.0 : 0.0)));
        }
        s.add("eig-reconstruction", worst_rec, 1e-12);
        s.add("eig-orthonormality", worst_orth, 1e-12);
        const Mat4 g = random_factor<4>(rng);
        const Mat4 a = g.adjoint() * g + cx(0.1) * Mat4::identity();
        const Mat4 w = inverse_sqrt(a);
        s.add("inverse-sqrt", max_abs_diff(w * a * w, Mat4::identity()), 1e-12);
        const Mat4 p = project_psd(cx(0.5) * (g + g.adjoint()));
        s.add("psd-projection", std::max(0.0, -min_eigenvalue(p)), 1e-12);
    }

    // ---- encodings ----
    {
        s.add_value("encoding-angle", std::cos(encoding_angle()),
                    1.0 / std::sqrt(3.0), 1e-15);
        double unit = 0.0, match = 0.0, orth = 0.0;
        for (const auto& sc : all_schemes())
            for (int b : sc.bases())
                for (int g = 0; g < 2; ++g) {
                    const auto v = bloch_vector(sc, b, g);
                    unit = std::max(unit, std::abs(v.norm() - 1.0));
                    const Mat2 rho = cx(0.5) * (Mat2::identity() + spin(v.x, v.y, v.z));
                    match = std::max(match,
                                     max_abs_diff(projector(state(sc, b, g)), rho));
                    orth = std::max(orth, std::abs(inner(state(sc, b, g),
                                                         state(sc, b, 1 - g))));
                }
        s.add("bloch-vectors-unit", unit, 1e-12);
        s.add("states-match-bloch", match, 1e-12);
        s.add("antipodal-orthogonality", orth, 1e-12);
        double mub = 0.0;
        const auto six = six_state();
        for (int b : six.bases())
            for (int b2 : six.bases())
                if (b != b2)
                    mub = std::max(mub, std::abs(std::norm(inner(
                                                     state(six, b, 0),
                                                     state(six, b2, 0))) -
                                                 0.5));
        s.add("six-state-unbiasedness", mub, 1e-12);
        double cube = 0.0;
        const auto eight = eight_state();
        for (int b = 0; b < 4; ++b)
            for (int b2 = 0; b2 < 4; ++b2)
                if (b != b2) {
                    const double ov =
                        std::norm(inner(state(eight, b, 0), state(eight, b2, 0)));
                    cube = std::max(cube,
                                    std::min(std::abs(ov - 1.0 / 3.0),
                                             std::abs(ov - 2.0 / 3.0)));
                }
        s.add("eight-state-overlap-pattern", cube, 1e-12);
        double mb = 0.0;
        for (int k = 0; k < 20; ++k) {
            const auto v = detail::random_direction(rng);
            const auto [plus, minus] = measurement_basis(v);
            mb = std::max(mb, std::abs(inner(plus, plus) - cx(1.0)));
            mb = std::max(mb, std::abs(inner(plus, minus)));
        }
        s.add("measurement-basis-orthonormal", mb, 1e-12);
    }

    // ---- adversary states ----
    {
        double werr = 0.0;
        for (double beta : {0.0, 0.1, 0.3, 0.5}) {
            const auto w = bell_weights(beta);
            werr = std::max(werr, std::abs(w[0] + w[1] + w[2] + w[3] - 1.0));
        }
        s.add("bell-weights-sum", werr, 1e-14);
        double ptr = 0.0, proj = 0.0;
        for (double beta : {0.05, 0.2, 0.45}) {
            const auto psi = purified_abe(beta);
            ptr = std::max(ptr, max_abs_diff(partial_trace_ancilla(psi),
                                             symmetrized_ab(beta)));
            // projecting the purification onto Alice/Bob outcomes must give
            // the ancilla vectors up to the branch amplitudes
            const auto v = detail::random_direction(rng);
            const auto [plus, minus] = measurement_basis(v);
            const auto e = ancilla_vectors(v, beta);
            const std::array<std::pair<std::pair<int, int>, double>, 4> branches{
                {{{0, 1}, std::sqrt((1.0 - beta) / 2.0)},
                 {{1, 0}, -std::sqrt((1.0 - beta) / 2.0)},
                 {{0, 0}, std::sqrt(beta / 2.0)},
                 {{1, 1}, -std::sqrt(beta / 2.0)}}};
            for (const auto& [xy, amp] : branches) {
                const Vec2& ax = xy.first == 0 ? plus : minus;
                const Vec2& by = xy.second == 0 ? plus : minus;
                Vec4 got;
                for (int eidx = 0; eidx < 4; ++eidx) {
                    cx sum = 0.0;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            sum += std::conj(ax[a]) * std::conj(by[b]) *
                                   psi[(a * 2 + b) * 4 + eidx];
                    got[eidx] = sum;
                }
                const Vec4 want = cx(amp) * e(xy.first, xy.second);
                double d = 0.0;
                for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(got[i] - want[i]));
                proj = std::max(proj, d);
            }
        }
        s.add("purification-partial-trace", ptr, 1e-12);
        s.add("purification-branch-vectors", proj, 1e-10);

        double ov = 0.0, orth = 0.0, flip = 0.0, norms = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double beta = 0.01 + 0.48 * rng.uniform();
            const auto v = detail::random_direction(rng);
            const auto e = ancilla_vectors(v, beta);
            const auto en = ancilla_vectors(-v, beta);
            ov = std::max(ov, std::abs(inner(e.e01, e.e10) -
                                       cx((1.0 - 2.0 * beta) / (1.0 - beta))));
            for (const Vec4* a : {&e.e00, &e.e11})
                for (const Vec4* b : {&e.e01, &e.e10})
                    orth = std::max(orth, std::abs(inner(*a, *b)));
            orth = std::max(orth, std::abs(inner(e.e00, e.e11)));
            for (int i = 0; i < 4; ++i) {
                flip = std::max(flip, std::abs(e.e10[i] - en.e01[i]));
                flip = std::max(flip, std::abs(e.e11[i] - en.e00[i]));
            }
            for (const Vec4* a : {&e.e01, &e.e10, &e.e00, &e.e11})
                norms = std::max(norms, std::abs(inner(*a, *a) - cx(1.0)));
        }
        s.add("overlap-e01-e10", ov, 1e-10);
        s.add("orthogonal-error-subspace", orth, 1e-10);
        s.add("direction-flip-swap", flip, 1e-10);
        s.add("ancilla-normalisation", norms, 1e-10);

        // <m_0| zeta_b |m_0> = 1 - 3 beta / 2 + ... check trace/psd and the
        // b-independent corner value (1-beta)(1-1.5b)/(1-b)
        double tr = 0.0, psd = 0.0, corner = 0.0, cov6 = 0.0, cov8 = 0.0;
        const Mat4 sm = permutation_s();
        const auto d8 = eight_state_group();
        for (double beta : {0.05, 0.2, 0.4}) {
            for (const auto& sc : all_schemes())
                for (int b : sc.bases()) {
                    const Mat4 z = zeta(sc, b, beta);
                    tr = std::max(tr, std::abs(std::real(z.trace()) - 1.0));
                    psd = std::max(psd, std::max(0.0, -min_eigenvalue(z)));
                    corner = std::max(corner,
                                      std::abs(std::real(z(0, 0)) - (1.0 - 1.5 * beta)));
                }
            const auto z6 = zeta_ensemble(six_state(), beta);
            cov6 = std::max(cov6, max_abs_diff(z6[1], sm * z6[0] * sm.adjoint()));
            cov6 = std::max(cov6, max_abs_diff(z6[2], sm * z6[1] * sm.adjoint()));
            const auto z8 = zeta_ensemble(eight_state(), beta);
            for (int b = 1; b < 4; ++b)
                cov8 = std::max(cov8, max_abs_diff(z8[b], d8[b] * z8[0] * d8[b]));
        }
        s.add("zeta-trace", tr, 1e-12);
        s.add("zeta-psd", psd, 1e-12);
        s.add("zeta-reference-weight", corner, 1e-12);
        s.add("zeta-cyclic-covariance", cov6, 1e-12);
        s.add("zeta-sign-covariance", cov8, 1e-12);
    }

    // ---- entropy machinery ----
    {
        double sym = 0.0;
        for (double p : {0.0, 0.1, 0.37, 0.5})
            sym = std::max(sym, std::abs(binary_entropy(p) - binary_entropy(1.0 - p)));
        s.add("binary-entropy-symmetry", sym, 1e-14);
        double range = 0.0, gp = 0.0, agree = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double beta = 0.01 + 0.48 * rng.uniform();
            const auto ens = zeta_ensemble(eight_state(), beta);
            const auto povm = random_povm<4>(4, rng);
            const double h = shannon_given_povm(ens, povm);
            range = std::max(range, std::max(-h, h - 2.0 - 1e-12));
            const double g = guessing_probability(ens, povm);
            gp = std::max(gp, std::max(-g, g - 1.0));
            // binary min-entropy closed form vs its optimal measurement
            const Mat4 c0 = random_factor<4>(rng), c1 = random_factor<4>(rng);
            Mat4 r0 = c0.adjoint() * c0, r1 = c1.adjoint() * c1;
            r0 = cx(1.0 / std::real(r0.trace())) * r0;
            r1 = cx(1.0 / std::real(r1.trace())) * r1;
            const double p0 = rng.uniform();
            const auto sd = sign_decomposition_povm(p0, r0, r1);
            const double win = p0 * std::real(trace_product(sd.elements[0], r0)) +
                               (1.0 - p0) * std::real(trace_product(sd.elements[1], r1));
            agree = std::max(agree, std::abs(min_entropy_binary(p0, r0, r1) -
                                             (1.0 - std::log2(2.0 * win))));
        }
        s.add("shannon-objective-range", range, 0.0);
        s.add("guessing-probability-range", gp, 0.0);
        s.add("binary-min-entropy-vs-povm", agree, 1e-10);
    }

    // ---- attack constants and POVMs ----
    {
        s.add_value("m1-four-state-shannon",
                    m1_leakage(four_state(), Measure::Shannon), 0.399, 5e-4);
        s.add_value("m1-six-state-min",
                    m1_leakage(six_state(), Measure::MinEntropy), 0.658, 5e-4);
        s.add_value("k1-eight-state-shannon",
                    k1_constant(eight_state(), Measure::Shannon), 0.415, 5e-4);
        s.add_value("k1-six-state-min",
                    k1_constant(six_state(), Measure::MinEntropy), 0.861, 5e-4);

        // K1 POVM statistics reproduce the per-qubit constants
        double k1err = 0.0, k1valid = 0.0;
        for (Measure m : {Measure::Shannon, Measure::MinEntropy})
            for (const auto& sc : all_schemes()) {
                const auto povm = k1_povm(sc, m, 0);
                k1valid = std::max(k1valid,
                                   std::max(povm.completeness_defect(),
                                            -povm.min_element_eigenvalue()));
                Ensemble<2> ens;
                for (int b : sc.bases()) ens.push_back(projector(state(sc, b, 0)));
                const double logb = std::log2(static_cast<double>(sc.size()));
                const double lk =
                    (m == Measure::MinEntropy)
                        ? logb + std::log2(guessing_probability(ens, povm))
                        : logb - shannon_given_povm(ens, povm);
                k1err = std::max(k1err, std::abs(lk - k1_constant(sc, m)));
            }
        s.add("k1-povm-validity", k1valid, 1e-10);
        s.add("k1-povm-statistics", k1err, 1e-10);

        // M2 discrimination POVM achieves the closed-form success rate
        double m2err = 0.0;
        for (double beta : {0.05, 0.2, 0.4}) {
            const auto v = detail::random_direction(rng);
            const auto e = ancilla_vectors(v, beta);
            const auto q = qkd_discrimination_povm(v, beta);
            const Mat4 r0 =
                cx(1.0 - beta) * projector(e.e01) + cx(beta) * projector(e.e00);
            const Mat4 r1 =
                cx(1.0 - beta) * projector(e.e10) + cx(beta) * projector(e.e11);
            const double succ = 0.5 * std::real(trace_product(q.elements[0], r0)) +
                                0.5 * std::real(trace_product(q.elements[1], r1));
            m2err = std::max(
                m2err, std::abs(succ - (beta + (1.0 - beta) *
                                                   (1.0 - qkd_error_prob(beta)))));
            m2err = std::max(m2err, q.completeness_defect());
        }
        s.add("m2-povm-success-rate", m2err, 1e-10);
    }

    // ---- K2 certificates and consistency (perturbation-sensitive) ----
    for (const auto& sc : all_schemes()) {
        double cert = 0.0, valid = 0.0, consist = 0.0, dual = 0.0;
        for (int i = 0; i <= 25; ++i) {
            const double beta = 0.5 * i / 25.0;
            const auto ens = zeta_ensemble(sc, beta);
            const auto mn = detail::tamper(k2_povm(sc, Measure::MinEntropy, beta),
                                           perturb);
            valid = std::max(valid, mn.completeness_defect());
            cert = std::max(cert, -holevo_certificate(ens, mn).min_eigenvalue);
            const double logb = std::log2(static_cast<double>(sc.size()));
            consist = std::max(
                consist,
                std::abs(k2_leakage(sc, Measure::MinEntropy, beta) -
                         (logb + std::log2(guessing_probability(ens, mn)))));
            const auto sh = detail::tamper(k2_povm(sc, Measure::Shannon, beta),
                                           perturb);
            consist = std::max(consist,
                               std::abs(k2_leakage(sc, Measure::Shannon, beta) -
                                        (logb - shannon_given_povm(ens, sh))));
            if (sc.kind != SchemeKind::FourState) {
                const auto du = dual_povm(k2_povm(sc, Measure::MinEntropy, beta));
                for (int b = 0; b < sc.size(); ++b)
                    dual = std::max(dual,
                                    max_abs_diff(sh.elements[b], du.elements[b]));
            }
        }
        const std::string tag = sc.name();
        s.add("k2-completeness-" + tag, valid, 1e-10);
        s.add("k2-holevo-certificate-" + tag, cert, 1e-9);
        s.add("k2-closed-form-vs-povm-" + tag, consist, 1e-9);
        if (sc.kind != SchemeKind::FourState)
            s.add("k2-shannon-min-duality-" + tag, dual, 1e-9);
    }
    {
        double cont = 0.0;
        for (Measure m : {Measure::Shannon, Measure::MinEntropy})
            cont = std::max(cont,
                            std::abs(k2_leakage(eight_state(), m, 1.0 / 3.0 - 1e-12) -
                                     k2_leakage(eight_state(), m, 1.0 / 3.0 + 1e-12)));
        s.add("k2-eight-state-boundary-continuity", cont, 1e-9);
        double tail = 0.0;
        for (Measure m : {Measure::Shannon, Measure::MinEntropy})
            for (const auto& sc : all_schemes())
                tail = std::max(tail, std::abs(k2_leakage(sc, m, 0.5) -
                                               k1_constant(sc, m)));
        s.add("k2-at-half-equals-k1-constant", tail, 1e-9);
        bool cap_ok = true;
        for (Measure m : {Measure::Shannon, Measure::MinEntropy})
            for (const auto& sc : all_schemes())
                cap_ok = cap_ok && (k2_leakage(sc, m, 1.0 / 3.0) <=
                                    k1_constant(sc, m) + 1e-12);
        s.add_flag("k2-below-k1-cap", cap_ok, "at beta=1/3");
    }

    // ---- capacities and crossovers ----
    {
        s.add_value("crossover-shannon", shannon_capacity_crossover(), 0.1061, 1e-3);
        s.add_value("crossover-min-entropy", min_entropy_capacity_crossover(),
                    0.0612, 1e-3);
        s.add_value("zero-capacity-min-entropy", min_entropy_zero_point(), 0.0638,
                    1e-3);
        bool mono = true;
        double qkd = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double beta = 0.5 * i / 40.0;
            for (Measure m : {Measure::Shannon, Measure::MinEntropy})
                mono = mono && (capacity(four_state(), m, beta) <=
                                capacity(six_state(), m, beta) + 1e-12);
            if (beta >= 0.107)
                qkd = std::max(
                    qkd, std::abs(capacity(eight_state(), Measure::Shannon, beta) -
                                  capacity(six_state(), Measure::Shannon, beta)));
        }
        s.add_flag("four-state-below-six-state", mono, "both measures");
        s.add("scheme-equality-past-crossover", qkd, 1e-6);
        s.add_value("plain-noise-threshold", plain_noise_threshold(), 0.156, 1e-3);
        s.add_value("optimized-noise-threshold", optimized_noise_threshold(),
                    0.162, 1e-3);
        bool opt_ok = true;
        double star_err = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double beta = 0.2 * i / 20.0;
            const auto n = optimize_epsilon(beta);
            opt_ok = opt_ok && (n.c_opt >= c_prime(0.0, beta) - 1e-12);
            star_err = std::max(star_err,
                                std::abs(star(beta, 0.37) - star(0.37, beta)));
        }
        s.add_flag("artificial-noise-never-hurts", opt_ok, "c_opt >= c_plain");
        s.add("star-symmetry", star_err, 1e-14);
    }

    // ---- sampling machinery ----
    {
        double valid = 0.0;
        for (int k = 0; k < 100; ++k) {
            const auto p = random_povm<4>(3, rng);
            valid = std::max(valid, std::max(p.completeness_defect(),
                                             -p.min_element_eigenvalue()));
        }
        s.add("random-povm-validity", valid, 1e-10);
        const auto g6 = six_state_symmetry();
        const auto rp = symmetrize_povm(random_povm<4>(3, rng), g6);
        double cov = std::max(
            max_abs_diff(rp.elements[1],
                         g6.unitaries[1] * rp.elements[0] * g6.unitaries[1].adjoint()),
            rp.completeness_defect());
        s.add("symmetrized-povm-covariance", cov, 1e-10);
        // symmetric fast path agrees with the full conditional entropy
        const auto ens = zeta_ensemble(six_state(), 0.1);
        s.add("symmetric-entropy-fast-path",
              std::abs(shannon_given_povm(ens, rp) -
                       detail::symmetric_objective(ens[0], rp)),
              1e-9);
    }

    return results;
}

}  // namespace qkr
