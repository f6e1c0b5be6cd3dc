#include <catch2/catch_amalgamated.hpp>

#include "qkr/entropy.hpp"
#include "qkr/eve_states.hpp"
#include "qkr/povm_search.hpp"

using namespace qkr;

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == Catch::Approx(1.0));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.11) == Catch::Approx(binary_entropy(0.89)));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
    CHECK(entropy_of({0.25, 0.25, 0.25, 0.25}) == Catch::Approx(2.0));
    CHECK(entropy_of({1.0, 0.0}) == 0.0);
}

TEST_CASE("povm validity accessors") {
    Povm2 p;
    p.elements = {cx(0.5) * Mat2::identity(), cx(0.5) * Mat2::identity()};
    CHECK(p.completeness_defect() < 1e-15);
    CHECK(p.min_element_eigenvalue() >= 0.0);
    CHECK(p.is_valid());
    p.elements[0] = cx(0.6) * Mat2::identity();
    CHECK_FALSE(p.is_valid());
}

TEST_CASE("conditional entropy of a trivial measurement is maximal") {
    const auto ens = zeta_ensemble(six_state(), 0.1);
    Povm4 mixed;
    for (int i = 0; i < 3; ++i)
        mixed.elements.push_back(cx(1.0 / 3.0) * Mat4::identity());
    CHECK(shannon_given_povm(ens, mixed) == Catch::Approx(std::log2(3.0)));
    CHECK(guessing_probability(ens, mixed) == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("outcome count must match the ensemble") {
    const auto ens = zeta_ensemble(four_state(), 0.1);
    Povm4 p;
    p.elements = {Mat4::identity()};
    CHECK_THROWS_AS(shannon_given_povm(ens, p), std::invalid_argument);
    CHECK_THROWS_AS(guessing_probability(ens, p), std::invalid_argument);
    CHECK_THROWS_AS(holevo_certificate(ens, p), std::invalid_argument);
}

TEST_CASE("binary min-entropy equals its optimal measurement") {
    SplitMix64 rng(31);
    for (int k = 0; k < 200; ++k) {
        const Mat4 c0 = random_factor<4>(rng), c1 = random_factor<4>(rng);
        Mat4 r0 = c0.adjoint() * c0, r1 = c1.adjoint() * c1;
        r0 = cx(1.0 / std::real(r0.trace())) * r0;
        r1 = cx(1.0 / std::real(r1.trace())) * r1;
        const double p0 = rng.uniform();

        const double closed = min_entropy_binary(p0, r0, r1);
        const auto sd = sign_decomposition_povm(p0, r0, r1);
        CHECK(sd.completeness_defect() < 1e-12);
        const double win = p0 * std::real(trace_product(sd.elements[0], r0)) +
                           (1.0 - p0) * std::real(trace_product(sd.elements[1], r1));
        CHECK(std::abs(closed - (1.0 - std::log2(2.0 * win))) < 1e-10);

        // no random two-outcome POVM may beat the closed form
        double best = win;
        for (int t = 0; t < 100; ++t) {
            const auto povm = random_povm<4>(2, rng);
            best = std::max(best,
                            p0 * std::real(trace_product(povm.elements[0], r0)) +
                                (1.0 - p0) *
                                    std::real(trace_product(povm.elements[1], r1)));
        }
        CHECK(best <= win + 1e-9);
    }
}

TEST_CASE("min entropy rejects non-density inputs") {
    const Mat4 id = Mat4::identity();  // trace 4, not a density
    const Mat4 rho = cx(0.25) * Mat4::identity();
    CHECK_THROWS_AS(min_entropy_binary(0.5, id, rho), std::invalid_argument);
    CHECK_THROWS_AS(min_entropy_binary(1.5, rho, rho), std::invalid_argument);
    CHECK(min_entropy_binary(0.5, rho, rho) == Catch::Approx(1.0));
}

TEST_CASE("holevo certificate accepts optima and rejects tampering") {
    const double beta = 0.12;
    const auto ens = zeta_ensemble(four_state(), beta);
    const auto opt = sign_decomposition_povm(0.5, ens[0], ens[1]);
    Povm4 as_povm;
    as_povm.elements = opt.elements;
    const auto good = holevo_certificate(ens, as_povm);
    CHECK(good.ok);
    CHECK(good.min_eigenvalue >= -1e-9);

    Povm4 swapped;
    swapped.elements = {opt.elements[1], opt.elements[0]};  // worst guess
    CHECK_FALSE(holevo_certificate(ens, swapped).ok);
}

TEST_CASE("certificate soundness against random sampling") {
    // certified POVMs really are unbeatable: sample many random POVMs
    SplitMix64 rng(32);
    const double beta = 0.15;
    const auto ens = zeta_ensemble(eight_state(), beta);
    Povm4 analytic;
    {
        // the certified guessing optimum for this ensemble
        const auto d = eight_state_group();
        Vec4 u;
        for (int i = 0; i < 4; ++i) u[i] = 0.5;
        const Mat4 head = projector(u);
        for (int b = 0; b < 4; ++b) analytic.elements.push_back(d[b] * head * d[b]);
    }
    REQUIRE(holevo_certificate(ens, analytic).ok);
    const double certified = guessing_probability(ens, analytic);
    double best = 0.0;
    for (int t = 0; t < 100000; ++t) {
        const auto povm = random_povm<4>(4, rng);
        best = std::max(best, guessing_probability(ens, povm));
    }
    CHECK(best <= certified + 1e-9);
}
