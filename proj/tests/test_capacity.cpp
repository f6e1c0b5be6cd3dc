#include <catch2/catch_amalgamated.hpp>

#include "qkr/capacity.hpp"

using namespace qkr;

TEST_CASE("strongest attack identification") {
    auto ml = max_leakage(eight_state(), Measure::Shannon, 0.1);
    REQUIRE(ml.argmax.size() >= 1);
    CHECK(ml.argmax[0] == AttackKind::M2);
    ml = max_leakage(four_state(), Measure::Shannon, 0.001);
    CHECK(ml.argmax[0] == AttackKind::M1);
    CHECK(ml.value == Catch::Approx(0.399).margin(5e-4));
    ml = max_leakage(eight_state(), Measure::MinEntropy, 0.05);
    CHECK(ml.argmax[0] == AttackKind::K2);
    // the maximum over the whole regime is the M2 value for 8-state Shannon
    for (double beta : {0.05, 0.15, 0.3})
        CHECK(max_leakage(eight_state(), Measure::Shannon, beta).argmax[0] ==
              AttackKind::M2);
}

TEST_CASE("ties are reported as a set") {
    const auto ml = max_leakage(four_state(), Measure::Shannon, 0.0);
    // at beta = 0 both message attacks sit at the M1 constant, key attacks at 0
    CHECK(ml.argmax.size() == 1);
    const auto all_zero = max_leakage(eight_state(), Measure::Shannon, 0.0);
    CHECK(all_zero.value == Catch::Approx(0.0).margin(1e-12));
    CHECK(all_zero.argmax.size() == 4);
}

TEST_CASE("capacity endpoints") {
    CHECK(capacity(eight_state(), Measure::Shannon, 0.0) == Catch::Approx(1.0));
    CHECK(capacity(four_state(), Measure::Shannon, 0.0) ==
          Catch::Approx(0.601).margin(5e-4));
    const auto pt = capacity_point(six_state(), Measure::Shannon, 0.2);
    CHECK(pt.capacity_raw ==
          Catch::Approx(1.0 - binary_entropy(0.2) - pt.max_leakage));
    CHECK(pt.capacity_clamped() >= 0.0);
}

TEST_CASE("four-state never beats six-state") {
    for (Measure m : {Measure::Shannon, Measure::MinEntropy})
        for (int i = 0; i <= 50; ++i) {
            const double beta = 0.5 * i / 50.0;
            CHECK(capacity(four_state(), m, beta) <=
                  capacity(six_state(), m, beta) + 1e-12);
        }
}

TEST_CASE("crossovers land on the published values") {
    CHECK(shannon_capacity_crossover() == Catch::Approx(0.1061).margin(1e-3));
    CHECK(min_entropy_capacity_crossover() == Catch::Approx(0.0612).margin(1e-3));
    CHECK(min_entropy_zero_point() == Catch::Approx(0.0638).margin(1e-3));
}

TEST_CASE("schemes coincide with the qkd capacity past the crossover") {
    // start just past the true crossover (0.10610...), where M2 has
    // strictly overtaken M1 for the 6-state scheme
    for (int i = 0; i <= 30; ++i) {
        const double beta = 0.10611 + (0.5 - 0.10611) * i / 30.0;
        const double c8 = capacity(eight_state(), Measure::Shannon, beta);
        const double c6 = capacity(six_state(), Measure::Shannon, beta);
        const double qkd =
            1.0 - binary_entropy(beta) - m2_leakage(beta, Measure::Shannon);
        CHECK(std::abs(c8 - c6) <= 1e-6);
        CHECK(std::abs(c8 - qkd) <= 1e-6);
    }
}

TEST_CASE("max leakage is continuous in beta") {
    for (const auto& s : all_schemes())
        for (Measure m : {Measure::Shannon, Measure::MinEntropy}) {
            const int n = 200;
            double prev = max_leakage(s, m, 0.0).value;
            for (int i = 1; i <= n; ++i) {
                const double lo = (i - 1) / (3.0 * n), hi = i / (3.0 * n);
                const double v = max_leakage(s, m, hi).value;
                // the curves go like sqrt(beta) near zero, so budget the
                // allowed jump in sqrt coordinates
                const double allowed =
                    0.02 + 10.0 * (std::sqrt(hi) - std::sqrt(lo));
                CHECK(std::abs(v - prev) < allowed);
                prev = v;
            }
        }
}

TEST_CASE("bisection root finder") {
    auto f = [](double x) { return x * x - 2.0; };
    const auto root = find_crossover(f, 0.0, 2.0);
    REQUIRE(root.has_value());
    CHECK(*root == Catch::Approx(std::sqrt(2.0)).margin(1e-6));
    CHECK_FALSE(find_crossover(f, 2.0, 3.0).has_value());
    CHECK(find_crossover([](double x) { return x; }, 0.0, 1.0).value() == 0.0);
}

TEST_CASE("concatenated channel error rate") {
    CHECK(star(0.0, 0.3) == Catch::Approx(0.3));
    CHECK(star(0.5, 0.3) == Catch::Approx(0.5));
    CHECK(star(0.1, 0.2) == Catch::Approx(0.26));
    CHECK(star(0.17, 0.42) == Catch::Approx(star(0.42, 0.17)));
    CHECK_THROWS_AS(star(0.6, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(star(0.1, -0.1), std::invalid_argument);
}

TEST_CASE("noisy capacity formula limits") {
    for (double beta : {0.02, 0.1, 0.15}) {
        const double plain =
            1.0 - binary_entropy(beta) - m2_leakage(beta, Measure::Shannon);
        CHECK(c_prime(0.0, beta) == Catch::Approx(plain).margin(1e-12));
    }
    for (double eps : {0.1, 0.3})
        CHECK(c_prime(eps, 0.0) == Catch::Approx(1.0 - binary_entropy(eps)));
}

TEST_CASE("epsilon optimisation") {
    for (int i = 0; i <= 20; ++i) {
        const double beta = 0.2 * i / 20.0;
        const auto n = optimize_epsilon(beta);
        CHECK(n.c_opt >= c_prime(0.0, beta) - 1e-12);
        CHECK(n.eps_opt >= 0.0);
        CHECK(n.eps_opt <= 0.5);
        // reported optimum is consistent with its own objective
        CHECK(n.c_opt == Catch::Approx(c_prime(n.eps_opt, beta)).margin(1e-12));
    }
    // below the onset the plain channel is already optimal
    const auto low = optimize_epsilon(0.05);
    CHECK(low.eps_opt == 0.0);
    CHECK(low.c_opt == Catch::Approx(c_prime(0.0, 0.05)));
}

TEST_CASE("artificial noise extends the positive region") {
    CHECK(plain_noise_threshold() == Catch::Approx(0.156).margin(1e-3));
    CHECK(optimized_noise_threshold() == Catch::Approx(0.162).margin(1e-3));
    CHECK(optimized_noise_threshold() > plain_noise_threshold());
    // between the thresholds only the noisy scheme survives
    const double mid = 0.159;
    CHECK(c_prime(0.0, mid) < 0.0);
    CHECK(optimize_epsilon(mid).c_opt > 0.0);
}
