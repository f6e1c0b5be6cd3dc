#include <catch2/catch_amalgamated.hpp>

#include "qkr/encodings.hpp"

using namespace qkr;

TEST_CASE("scheme basis label sets") {
    CHECK(four_state().bases() == std::vector<int>{0, 1});
    CHECK(six_state().bases() == std::vector<int>{1, 2, 3});
    CHECK(eight_state().bases() == std::vector<int>{0, 1, 2, 3});
    CHECK(four_state().size() == 2);
    CHECK(six_state().size() == 3);
    CHECK(eight_state().size() == 4);
}

TEST_CASE("encoding angle") {
    CHECK(std::cos(encoding_angle()) == Catch::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("bloch vectors are unit and bit-antipodal") {
    for (const auto& s : all_schemes())
        for (int b : s.bases()) {
            const auto v0 = bloch_vector(s, b, 0);
            const auto v1 = bloch_vector(s, b, 1);
            CHECK(v0.norm() == Catch::Approx(1.0));
            CHECK(v0.x == Catch::Approx(-v1.x).margin(1e-15));
            CHECK(v0.y == Catch::Approx(-v1.y).margin(1e-15));
            CHECK(v0.z == Catch::Approx(-v1.z).margin(1e-15));
        }
}

TEST_CASE("eight-state directions are the cube diagonals") {
    const auto s = eight_state();
    const double r = 1.0 / std::sqrt(3.0);
    const auto v = bloch_vector(s, 0, 0);
    CHECK(v.x == Catch::Approx(r));
    CHECK(v.y == Catch::Approx(r));
    CHECK(v.z == Catch::Approx(r));
    const auto v3 = bloch_vector(s, 3, 0);  // u=1, w=1
    CHECK(v3.x == Catch::Approx(-r));
    CHECK(v3.y == Catch::Approx(r));
    CHECK(v3.z == Catch::Approx(-r));
}

TEST_CASE("unknown basis labels are rejected") {
    CHECK_THROWS_AS(bloch_vector(four_state(), 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(bloch_vector(six_state(), 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(state(eight_state(), 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(measurement_basis({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("measurement basis is orthonormal and diagonalises the spin") {
    const std::vector<BlochVector> dirs = {
        {0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {0, 1, 0},
        {0.6, 0.0, 0.8}, {-0.48, 0.6, 0.64}};
    for (const auto& v : dirs) {
        const auto [plus, minus] = measurement_basis(v);
        CHECK(std::abs(inner(plus, plus) - cx(1.0)) < 1e-14);
        CHECK(std::abs(inner(minus, minus) - cx(1.0)) < 1e-14);
        CHECK(std::abs(inner(plus, minus)) < 1e-14);
        const Mat2 sp = spin(v.x, v.y, v.z);
        CHECK(max_abs_diff(projector(plus) - projector(minus), sp) < 1e-14);
    }
}

TEST_CASE("states realise their bloch projectors") {
    for (const auto& s : all_schemes())
        for (int b : s.bases())
            for (int g = 0; g < 2; ++g) {
                const auto v = bloch_vector(s, b, g);
                const Mat2 rho = cx(0.5) * (Mat2::identity() + spin(v.x, v.y, v.z));
                CHECK(max_abs_diff(projector(state(s, b, g)), rho) < 1e-14);
            }
}

TEST_CASE("mutual unbiasedness of the 4- and 6-state bases") {
    for (const auto& s : {four_state(), six_state()})
        for (int b : s.bases())
            for (int b2 : s.bases())
                for (int g = 0; g < 2; ++g)
                    for (int g2 = 0; g2 < 2; ++g2) {
                        if (b == b2) continue;
                        const double ov =
                            std::norm(inner(state(s, b, g), state(s, b2, g2)));
                        CHECK(ov == Catch::Approx(0.5).margin(1e-13));
                    }
}

TEST_CASE("eight-state pairwise overlaps follow the cube geometry") {
    // distinct diagonals meet at angle cos = +-1/3, so overlaps are (1+-1/3)/2
    const auto s = eight_state();
    for (int b = 0; b < 4; ++b)
        for (int b2 = 0; b2 < 4; ++b2) {
            if (b == b2) continue;
            const double ov = std::norm(inner(state(s, b, 0), state(s, b2, 0)));
            const bool near_third = std::abs(ov - 1.0 / 3.0) < 1e-13;
            const bool near_two_thirds = std::abs(ov - 2.0 / 3.0) < 1e-13;
            CHECK((near_third || near_two_thirds));
        }
}

TEST_CASE("eight-state phases form a quantum one-time pad family") {
    // all four bases are unitary rotations of the b=0 pair by Pauli masks
    const auto s = eight_state();
    const std::array<Mat2, 4> mask = {Mat2::identity(), pauli_x(), pauli_z(),
                                      pauli_x() * pauli_z()};
    for (int b = 0; b < 4; ++b)
        for (int g = 0; g < 2; ++g) {
            const Vec2 expect = apply(mask[b], state(s, 0, g));
            // equality up to a global phase: compare projectors
            CHECK(max_abs_diff(projector(expect), projector(state(s, b, g))) <
                  1e-13);
        }
}
