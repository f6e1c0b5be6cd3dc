#include <catch2/catch_amalgamated.hpp>

#include "qkr/eve_states.hpp"
#include "qkr/povm_search.hpp"

using namespace qkr;

namespace {

BlochVector random_direction(SplitMix64& rng) {
    while (true) {
        BlochVector v{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double n = v.norm();
        if (n > 1e-3) return {v.x / n, v.y / n, v.z / n};
    }
}

}  // namespace

TEST_CASE("noise range is validated") {
    CHECK_THROWS_AS(bell_weights(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(bell_weights(0.51), std::invalid_argument);
    CHECK_THROWS_AS(zeta(six_state(), 1, 0.7), std::invalid_argument);
    CHECK_THROWS_AS(ancilla_vectors({0, 0, 1}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(ancilla_vectors({2, 0, 0}, 0.1), std::invalid_argument);
}

TEST_CASE("bell states are orthonormal") {
    const std::array<Vec4, 4> bells = {bell_psi_minus(), bell_phi_minus(),
                                       bell_psi_plus(), bell_phi_plus()};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(inner(bells[i], bells[j]) - cx(i == j ? 1.0 : 0.0)) <
                  1e-15);
}

TEST_CASE("symmetrised state and its purification") {
    for (double beta : {0.0, 0.07, 0.25, 0.5}) {
        const Mat4 rho = symmetrized_ab(beta);
        CHECK(std::real(rho.trace()) == Catch::Approx(1.0));
        CHECK(min_eigenvalue(rho) >= -1e-14);
        const auto psi = purified_abe(beta);
        CHECK(max_abs_diff(partial_trace_ancilla(psi), rho) < 1e-14);
        CHECK(std::abs(inner(psi, psi) - cx(1.0)) < 1e-14);
    }
}

TEST_CASE("projecting the purification yields the conditional vectors") {
    // <v_x|<v_y| Psi_ABE = amplitude(x,y) E^v_xy for every direction
    SplitMix64 rng(21);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double beta = 0.01 + 0.48 * rng.uniform();
        const auto v = random_direction(rng);
        const auto psi = purified_abe(beta);
        const auto [plus, minus] = measurement_basis(v);
        const auto e = ancilla_vectors(v, beta);
        const std::array<std::tuple<int, int, double>, 4> branches = {
            {{0, 1, std::sqrt((1.0 - beta) / 2.0)},
             {1, 0, -std::sqrt((1.0 - beta) / 2.0)},
             {0, 0, std::sqrt(beta / 2.0)},
             {1, 1, -std::sqrt(beta / 2.0)}}};
        for (const auto& [x, y, amp] : branches) {
            const Vec2& ax = x == 0 ? plus : minus;
            const Vec2& by = y == 0 ? plus : minus;
            for (int idx = 0; idx < 4; ++idx) {
                cx got = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        got += std::conj(ax[a]) * std::conj(by[b]) *
                               psi[(a * 2 + b) * 4 + idx];
                worst = std::max(worst, std::abs(got - cx(amp) * e(x, y)[idx]));
            }
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("conditional vector identities") {
    SplitMix64 rng(22);
    for (int k = 0; k < 100; ++k) {
        const double beta = 0.01 + 0.48 * rng.uniform();
        const auto v = random_direction(rng);
        const auto e = ancilla_vectors(v, beta);
        const auto en = ancilla_vectors(-v, beta);

        // same-outcome overlap
        CHECK(std::abs(inner(e.e01, e.e10) -
                       cx((1.0 - 2.0 * beta) / (1.0 - beta))) < 1e-10);
        // error branch lives in the orthogonal complement
        CHECK(std::abs(inner(e.e00, e.e01)) < 1e-10);
        CHECK(std::abs(inner(e.e00, e.e10)) < 1e-10);
        CHECK(std::abs(inner(e.e11, e.e01)) < 1e-10);
        CHECK(std::abs(inner(e.e11, e.e10)) < 1e-10);
        CHECK(std::abs(inner(e.e00, e.e11)) < 1e-10);
        // flipping the direction swaps the roles of the two parties
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(e.e10[i] - en.e01[i]) < 1e-10);
            CHECK(std::abs(e.e11[i] - en.e00[i]) < 1e-10);
        }
        // normalisation
        for (const Vec4* a : {&e.e01, &e.e10, &e.e00, &e.e11})
            CHECK(std::abs(inner(*a, *a) - cx(1.0)) < 1e-10);
    }
}

TEST_CASE("pole directions agree with nearby regular directions") {
    for (double beta : {0.05, 0.3}) {
        for (double vz : {1.0, -1.0}) {
            const double eps = 2e-7;
            const BlochVector near{eps, 0.0, vz * std::sqrt(1.0 - eps * eps)};
            const auto a = ancilla_vectors({0.0, 0.0, vz}, beta);
            const auto b = ancilla_vectors(near, beta);
            for (int i = 0; i < 4; ++i) {
                CHECK(std::abs(a.e00[i] - b.e00[i]) < 1e-6);
                CHECK(std::abs(a.e11[i] - b.e11[i]) < 1e-6);
            }
        }
    }
}

TEST_CASE("zeta states are densities built from the conditional vectors") {
    SplitMix64 rng(23);
    for (const auto& s : all_schemes())
        for (int b : s.bases())
            for (int k = 0; k < 5; ++k) {
                const double beta = 0.5 * rng.uniform();
                const Mat4 z = zeta(s, b, beta);
                CHECK(std::real(z.trace()) == Catch::Approx(1.0));
                CHECK(min_eigenvalue(z) >= -1e-13);
                CHECK(hermiticity_defect(z) < 1e-14);
                CHECK(std::real(z(0, 0)) ==
                      Catch::Approx(1.0 - 1.5 * beta).margin(1e-13));
            }
}

TEST_CASE("plaintext flip negates the direction") {
    for (const auto& s : all_schemes())
        for (int b : s.bases()) {
            const double beta = 0.17;
            BlochVector v = -basis_direction(s, b);
            const auto e = ancilla_vectors(v, beta);
            const Mat4 direct =
                cx(1.0 - beta) * projector(e.e01) + cx(beta) * projector(e.e00);
            CHECK(max_abs_diff(zeta(s, b, beta, 1), direct) < 1e-14);
        }
}

TEST_CASE("six-state zetas are cyclic conjugates") {
    const Mat4 s = permutation_s();
    CHECK(unitarity_defect(s) < 1e-15);
    CHECK(max_abs_diff(s * s * s, Mat4::identity()) < 1e-15);
    for (double beta : {0.04, 0.21, 0.47}) {
        const auto z = zeta_ensemble(six_state(), beta);
        CHECK(max_abs_diff(z[1], s * z[0] * s.adjoint()) < 1e-14);
        CHECK(max_abs_diff(z[2], s * z[1] * s.adjoint()) < 1e-14);
        CHECK(max_abs_diff(z[0], s * z[2] * s.adjoint()) < 1e-14);
    }
}

TEST_CASE("eight-state zetas are sign-group conjugates") {
    const auto d = eight_state_group();
    for (int b = 0; b < 4; ++b) {
        CHECK(unitarity_defect(d[b]) < 1e-15);
        CHECK(hermiticity_defect(d[b]) < 1e-15);
    }
    for (double beta : {0.04, 0.21, 0.47}) {
        const auto z = zeta_ensemble(eight_state(), beta);
        for (int b = 1; b < 4; ++b)
            CHECK(max_abs_diff(z[b], d[b] * z[0] * d[b]) < 1e-14);
    }
}

TEST_CASE("eight-state average zeta is the bell-weight diagonal") {
    // the sign group averages away every off-diagonal entry
    const auto s = eight_state();
    for (double beta : {0.1, 0.3}) {
        Mat4 avg;
        for (int b : s.bases()) avg += zeta(s, b, beta);
        avg = cx(0.25) * avg;
        Mat4 want;
        want(0, 0) = 1.0 - 1.5 * beta;
        for (int i = 1; i < 4; ++i) want(i, i) = beta / 2.0;
        CHECK(max_abs_diff(avg, want) < 1e-13);
    }
}
