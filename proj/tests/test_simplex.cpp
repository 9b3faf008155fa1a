#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fnn/rng.hpp"
#include "fnn/simplex.hpp"

using namespace fnn;

TEST_CASE("simple bounded maximum") {
    // max x0 + 2 x1  s.t.  x0 + x1 + s = 1
    LinearProgram lp;
    lp.num_vars = 3;
    lp.rows = {{1, 1, 1}};
    lp.rhs = {1};
    lp.objective = {1, 2, 0};
    const SimplexSolution sol = simplex_maximize(lp);
    REQUIRE(sol.status == SimplexStatus::optimal);
    CHECK(sol.objective == doctest::Approx(2.0));
    CHECK(sol.x[1] == doctest::Approx(1.0));
}

TEST_CASE("degenerate and redundant rows") {
    // Duplicate constraint: phase one must drop the redundant row.
    LinearProgram lp;
    lp.num_vars = 2;
    lp.rows = {{1, 1}, {1, 1}, {1, -1}};
    lp.rhs = {1, 1, 0};
    lp.objective = {1, 1};
    const SimplexSolution sol = simplex_maximize(lp);
    REQUIRE(sol.status == SimplexStatus::optimal);
    CHECK(sol.objective == doctest::Approx(1.0));
    CHECK(sol.x[0] == doctest::Approx(0.5));
    CHECK(sol.x[1] == doctest::Approx(0.5));
}

TEST_CASE("infeasible system is detected") {
    // x0 + x1 = -1 has no nonnegative solution.
    LinearProgram lp;
    lp.num_vars = 2;
    lp.rows = {{1, 1}};
    lp.rhs = {-1};
    lp.objective = {1, 0};
    CHECK(simplex_maximize(lp).status == SimplexStatus::infeasible);

    LinearProgram lp2;
    lp2.num_vars = 2;
    lp2.rows = {{1, 1}, {1, 1}};
    lp2.rhs = {1, 2};
    lp2.objective = {0, 0};
    CHECK(simplex_maximize(lp2).status == SimplexStatus::infeasible);
}

TEST_CASE("unbounded direction is detected") {
    // x0 free to grow: only x1 = x2 constrains.
    LinearProgram lp;
    lp.num_vars = 3;
    lp.rows = {{0, 1, -1}};
    lp.rhs = {0};
    lp.objective = {1, 0, 0};
    CHECK(simplex_maximize(lp).status == SimplexStatus::unbounded);
}

TEST_CASE("negative rhs rows are normalized") {
    // x0 - x1 = -2 with x0 + x1 = 4 -> x0 = 1, x1 = 3.
    LinearProgram lp;
    lp.num_vars = 2;
    lp.rows = {{1, -1}, {1, 1}};
    lp.rhs = {-2, 4};
    lp.objective = {1, 0};
    const SimplexSolution sol = simplex_maximize(lp);
    REQUIRE(sol.status == SimplexStatus::optimal);
    CHECK(sol.x[0] == doctest::Approx(1.0));
    CHECK(sol.x[1] == doctest::Approx(3.0));
}

TEST_CASE("random transportation-style problems satisfy constraints") {
    Xoshiro256pp rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        // Random 3x4 doubly-stochastic-like flow problem.
        LinearProgram lp;
        lp.num_vars = 12;
        std::vector<double> supply(3), demand(4);
        double total = 0.0;
        for (double& s : supply) {
            s = rng.uniform(0.1, 1.0);
            total += s;
        }
        double dsum = 0.0;
        for (int j = 0; j < 4; ++j) {
            demand[j] = rng.uniform(0.1, 1.0);
            dsum += demand[j];
        }
        for (double& d : demand) d *= total / dsum;

        for (int i = 0; i < 3; ++i) {
            std::vector<double> row(12, 0.0);
            for (int j = 0; j < 4; ++j) row[i * 4 + j] = 1.0;
            lp.rows.push_back(row);
            lp.rhs.push_back(supply[i]);
        }
        for (int j = 0; j < 4; ++j) {
            std::vector<double> row(12, 0.0);
            for (int i = 0; i < 3; ++i) row[i * 4 + j] = 1.0;
            lp.rows.push_back(row);
            lp.rhs.push_back(demand[j]);
        }
        lp.objective.assign(12, 0.0);
        for (double& c : lp.objective) c = rng.uniform(-1.0, 1.0);

        const SimplexSolution sol = simplex_maximize(lp);
        REQUIRE(sol.status == SimplexStatus::optimal);
        for (int i = 0; i < 3; ++i) {
            double row_total = 0.0;
            for (int j = 0; j < 4; ++j) row_total += sol.x[i * 4 + j];
            CHECK(row_total == doctest::Approx(supply[i]).epsilon(1e-9));
        }
        for (double v : sol.x) CHECK(v >= -1e-12);
    }
}

TEST_CASE("deterministic pivoting") {
    LinearProgram lp;
    lp.num_vars = 6;
    lp.rows = {{1, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1}, {1, 0, 0, 1, 0, 0}};
    lp.rhs = {1, 1, 0.5};
    lp.objective = {0.3, -0.2, 0.9, 0.1, 0.5, -0.4};
    const SimplexSolution a = simplex_maximize(lp);
    const SimplexSolution b = simplex_maximize(lp);
    REQUIRE(a.status == SimplexStatus::optimal);
    CHECK(a.objective == b.objective);
    CHECK(a.x == b.x);
}
