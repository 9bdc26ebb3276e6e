#include "doctest.h"

#include <array>
#include <cmath>

#include "latnet/dependence.hpp"
#include "latnet/errors.hpp"

using namespace latnet;

namespace {

// Independent oracle: k-fold product of the one-step transition matrix.
// Rows are the conditioning state (0, 1); columns the outcome.
std::array<std::array<double, 2>, 2> matrix_power(double p0, double p1, int k) {
    std::array<std::array<double, 2>, 2> P = {{{1 - p0, p0}, {1 - p1, p1}}};
    auto R = P;
    for (int step = 1; step < k; ++step) {
        std::array<std::array<double, 2>, 2> next{};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int m = 0; m < 2; ++m) next[a][b] += R[a][m] * P[m][b];
        R = next;
    }
    return R;
}

} // namespace

TEST_CASE("chi of the two-state kernel") {
    const auto a = chi_of_two_state(0.5, 0.5);
    CHECK(a.alpha_prime == doctest::Approx(0.5));
    CHECK(a.chi == doctest::Approx(0.0));

    const auto b = chi_of_two_state(0.2, 0.6);
    CHECK(b.alpha_prime == doctest::Approx(0.2));
    CHECK(b.chi == doctest::Approx(0.6));
    CHECK(b.exact_rate == doctest::Approx(0.4));
    CHECK(b.exact_rate <= b.chi);

    CHECK(chi_of_two_state(0.01, 0.99).chi == doctest::Approx(0.98));

    CHECK_THROWS_AS(chi_of_two_state(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(chi_of_two_state(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("chi upper-bounds the exact decay rate across a parameter grid") {
    for (int a = 1; a <= 19; ++a) {
        for (int b = 1; b <= 19; ++b) {
            const double p0 = a / 20.0, p1 = b / 20.0;
            const auto prof = chi_of_two_state(p0, p1);
            CHECK(std::abs(p1 - p0) <= prof.chi + 1e-12);
        }
    }
}

TEST_CASE("k-step conditionals: worked values and row sums") {
    const auto c = k_step_conditionals(0.2, 0.6, 2);
    CHECK(c.one_given_one == doctest::Approx(0.44).epsilon(1e-12));
    CHECK(c.one_given_zero == doctest::Approx(0.28).epsilon(1e-12));
    CHECK(c.one_given_zero + c.zero_given_zero == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.one_given_one + c.zero_given_one == doctest::Approx(1.0).epsilon(1e-12));

    const auto iid = k_step_conditionals(0.3, 0.3, 5);
    CHECK(iid.one_given_zero == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(iid.one_given_one == doctest::Approx(0.3).epsilon(1e-12));

    CHECK_THROWS_AS(k_step_conditionals(0.2, 0.6, 0), std::invalid_argument);
    CHECK_THROWS_AS(k_step_conditionals(0.0, 1.0, 2), DegenerateError);
}

TEST_CASE("closed-form conditionals match transition-matrix powers to 1e-12") {
    for (const auto& [p0, p1] : {std::pair{0.2, 0.6}, std::pair{0.05, 0.9}, std::pair{0.7, 0.3}}) {
        for (int k = 1; k <= 30; ++k) {
            const auto c = k_step_conditionals(p0, p1, k);
            const auto P = matrix_power(p0, p1, k);
            CHECK(std::abs(c.one_given_zero - P[0][1]) <= 1e-12);
            CHECK(std::abs(c.one_given_one - P[1][1]) <= 1e-12);
            CHECK(std::abs(c.zero_given_zero - P[0][0]) <= 1e-12);
            CHECK(std::abs(c.zero_given_one - P[1][0]) <= 1e-12);
        }
    }
}

TEST_CASE("k-step conditionals converge monotonically to the stationary law") {
    const double p = MecltgParams{0.2, 0.6}.stationary();
    double prev = 1.0;
    for (int k = 1; k <= 12; ++k) {
        const double gap = std::abs(k_step_conditionals(0.2, 0.6, k).one_given_one - p);
        CHECK(gap <= prev + 1e-15);
        prev = gap;
    }
}

TEST_CASE("closed-form dependence measure") {
    SUBCASE("worked value via cell enumeration") {
        const double p = 1.0 / 3;
        const auto c1 = k_step_conditionals(0.2, 0.6, 1);
        double enumerated = 0.0;
        enumerated = std::max(enumerated, std::abs(c1.one_given_one - p));
        enumerated = std::max(enumerated, std::abs(c1.one_given_zero - p));
        enumerated = std::max(enumerated, std::abs(c1.zero_given_one - (1 - p)));
        enumerated = std::max(enumerated, std::abs(c1.zero_given_zero - (1 - p)));
        CHECK(delta_closed_form(0.2, 0.6, 1) == doctest::Approx(enumerated).epsilon(1e-12));
        CHECK(delta_closed_form(0.2, 0.6, 1) == doctest::Approx(2.0 / 3 * 0.4).epsilon(1e-12));
    }
    SUBCASE("iid case vanishes") {
        CHECK(delta_closed_form(0.4, 0.4, 3) == doctest::Approx(0.0));
    }
    SUBCASE("exact geometric ratio") {
        for (int k = 1; k <= 10; ++k) {
            const double ratio = delta_closed_form(0.2, 0.6, k + 1) / delta_closed_form(0.2, 0.6, k);
            CHECK(ratio == doctest::Approx(0.4).epsilon(1e-10));
        }
    }
    SUBCASE("profile delta matches the free function") {
        const auto prof = chi_of_two_state(0.2, 0.6);
        CHECK(prof.delta(3) == doctest::Approx(delta_closed_form(0.2, 0.6, 3)).epsilon(1e-12));
    }
}

TEST_CASE("empirical dependence measure") {
    const int n = 40;
    const Ordering o = Ordering::omega1(n);
    const std::int64_t N = o.num_pairs();
    const std::vector<std::int64_t> positions = {N / 2, N};

    SUBCASE("iid chain has vanishing dependence") {
        const GeneratorSpec spec{MecltgParams{0.4, 0.4}, 1.0};
        const auto est = delta_empirical(spec, o, 2, positions, 3000, 2025);
        CHECK(est.value <= 3.5 * est.std_error);
        CHECK(est.value < 0.05);
    }
    SUBCASE("dependent chain matches the closed form within 3 SE") {
        const GeneratorSpec spec{MecltgParams{0.2, 0.6}, 1.0};
        const auto est = delta_empirical(spec, o, 1, positions, 5000, 91);
        CHECK(std::abs(est.value - delta_closed_form(0.2, 0.6, 1)) <= 3.0 * est.std_error);
        CHECK(est.undefined_cells == 0);
    }
    SUBCASE("geometric-decay conformance: empirical below closed form plus noise") {
        const GeneratorSpec spec{MecltgParams{0.2, 0.6}, 1.0};
        for (int k : {1, 2, 3}) {
            const auto est = delta_empirical(spec, o, k, positions, 1500, 404 + k);
            CHECK(est.value <= delta_closed_form(0.2, 0.6, k) + 3.0 * est.std_error);
        }
    }
    SUBCASE("preconditions") {
        const GeneratorSpec spec{MecltgParams{0.2, 0.6}, 1.0};
        CHECK_THROWS_AS(delta_empirical(spec, o, 2, {2}, 500, 1), std::invalid_argument);
        CHECK_THROWS_AS(delta_empirical(spec, o, 2, {N + 1}, 500, 1), std::invalid_argument);
        CHECK_THROWS_AS(delta_empirical(spec, o, 2, positions, 50, 1), std::invalid_argument);
        CHECK_THROWS_AS(delta_empirical(spec, o, 0, positions, 500, 1), std::invalid_argument);
    }
}

TEST_CASE("g function") {
    CHECK(g_function(0.25, 2, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g_function(0.7, 0, 0) == doctest::Approx(1.0));
    CHECK(g_function(0.0, 10, 0) == doctest::Approx(1.0)); // only the 0^0 term survives
    CHECK(g_function(0.0, 10, 2) == doctest::Approx(0.0));
    CHECK_THROWS_AS(g_function(1.0, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(g_function(-0.1, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(g_function(0.5, -1, 1), std::invalid_argument);
}
