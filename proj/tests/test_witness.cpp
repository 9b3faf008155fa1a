#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fnn/witness.hpp"
#include "test_support.hpp"

using namespace fnn;
using namespace fnn::testing;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = 1.4142135623730951;

CorrelatorSet ideal_correlators() {
    return correlators(compute_distribution(reference_scenario(1, 1, 1, kPi / 4, kPi / 4)));
}
}  // namespace

TEST_CASE("ideal strategy reaches 5/sqrt2 on both witnesses") {
    const CorrelatorSet cs = ideal_correlators();
    CHECK(eval_r_cns(cs) == doctest::Approx(5.0 / kSqrt2).epsilon(1e-12));
    CHECK(eval_r_nsc(cs) == doctest::Approx(5.0 / kSqrt2).epsilon(1e-12));
}

TEST_CASE("deterministic all-zero distribution sits exactly on the bound") {
    const CorrelatorSet cs = correlators(all_zero_distribution());
    CHECK(eval_r_cns(cs) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(eval_r_nsc(cs) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("uniform distribution gives -1/3") {
    const CorrelatorSet cs = correlators(uniform_distribution());
    CHECK(eval_r_cns(cs) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(eval_r_nsc(cs) == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("out-of-range correlators are rejected") {
    CorrelatorSet cs = ideal_correlators();
    cs.ab[1][0] = 1.5;
    CHECK_THROWS_AS(eval_r_cns(cs), std::invalid_argument);
}

TEST_CASE("verdict logic") {
    const WitnessReport both = fnn_verdict(3.5355, 3.5355);
    CHECK(both.fnn_certified);

    const WitnessReport one = fnn_verdict(3.2, 2.9);
    CHECK(one.violated_cns);
    CHECK_FALSE(one.violated_nsc);
    CHECK_FALSE(one.fnn_certified);

    // The bound itself does not violate: strict inequality.
    const WitnessReport boundary = fnn_verdict(3.0, 3.0);
    CHECK_FALSE(boundary.violated_cns);
    CHECK_FALSE(boundary.violated_nsc);

    CHECK_THROWS_AS(fnn_verdict(std::nan(""), 3.0), std::invalid_argument);
}

TEST_CASE("theory values at the reference points") {
    const auto ideal = theory_curve(1, 1, 1, {kPi / 4}, {kPi / 4});
    CHECK(ideal[0].r_cns == doctest::Approx(5.0 / kSqrt2).epsilon(1e-12));
    CHECK(ideal[0].r_nsc == doctest::Approx(5.0 / kSqrt2).epsilon(1e-12));

    const auto noisy = theory_curve(0.9710, 0.9860, 0.943, {kPi / 4}, {kPi / 4});
    CHECK(noisy[0].r_cns == doctest::Approx(3.3078).epsilon(1e-3 / 3.3078));
    CHECK(noisy[0].r_nsc == doctest::Approx(3.3078).epsilon(1e-3 / 3.3078));
    // Within one experimental standard deviation of the measured values.
    CHECK(std::abs(noisy[0].r_cns - 3.3212) < 0.0638);
    CHECK(std::abs(noisy[0].r_nsc - 3.3563) < 0.0632);

    const auto detuned = theory_curve(0.9710, 0.9860, 0.943, {kPi / 8}, {kPi / 4});
    CHECK(std::abs(detuned[0].r_cns - 2.9335) < 1e-3);
    CHECK(detuned[0].r_cns < 3.0);
}

TEST_CASE("closed forms track the engine to 1e-9") {
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) grid.push_back(kPi / 2 * i / 8.0);
    const double triples[3][3] = {{1, 1, 1}, {0.9710, 0.9860, 0.943}, {0.8, 0.95, 0.7}};
    for (const auto& t : triples) {
        const ClosedFormCheck check = closed_form_discrepancy(t[0], t[1], t[2], grid, grid);
        CHECK(check.max_discrepancy_cns < 1e-9);
        CHECK(check.max_discrepancy_nsc < 1e-9);
    }
}

TEST_CASE("witnesses coincide when the angle term vanishes") {
    for (double v : {1.0, 0.9, 0.7}) {
        for (double vh : {1.0, 0.8}) {
            const auto pts = theory_curve(v, v, vh, {kPi / 4}, {kPi / 4});
            CHECK(std::abs(pts[0].r_cns - pts[0].r_nsc) < 1e-9);
        }
    }
}

TEST_CASE("witness grows with interference visibility at the ideal point") {
    double prev = -1e9;
    for (int i = 0; i <= 20; ++i) {
        const auto pts = theory_curve(1, 1, i / 20.0, {kPi / 4}, {kPi / 4});
        CHECK(pts[0].r_cns > prev);
        prev = pts[0].r_cns;
    }
}

TEST_CASE("violation pattern across the nine-point sweep") {
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) grid.push_back(kPi / 2 * i / 8.0);
    const auto pts = theory_curve(0.9710, 0.9860, 0.943, grid, {kPi / 4});
    REQUIRE(pts.size() == 9);
    for (int i = 0; i < 9; ++i) {
        const bool both = pts[i].r_cns > kWitnessBound && pts[i].r_nsc > kWitnessBound;
        const bool expected = (i == 3 || i == 4 || i == 5);
        CHECK(both == expected);
    }
}

TEST_CASE("parallel and serial curves are identical") {
    std::vector<double> grid;
    for (int i = 0; i <= 12; ++i) grid.push_back(kPi / 2 * i / 12.0);
    const auto par = theory_curve(0.97, 0.98, 0.94, grid, grid);
    const auto ser = theory_curve_serial(0.97, 0.98, 0.94, grid, grid);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].r_cns == ser[i].r_cns);
        CHECK(par[i].r_nsc == ser[i].r_nsc);
    }
}
