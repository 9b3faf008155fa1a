// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every tolerance is pinned here.

#include <chrono>
#include <functional>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fnn/config.hpp"
#include "fnn/finite_stats.hpp"
#include "fnn/ns_models.hpp"
#include "fnn/rng.hpp"
#include "fnn/spacetime.hpp"
#include "fnn/witness.hpp"

using namespace fnn;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = 1.4142135623730951;

int failures = 0;

struct Checker {
    std::ostringstream detail;
    bool ok = true;

    void require(bool condition, const std::string& message) {
        if (!condition) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << message;
        }
    }
};

void run_criterion(int id, const char* name, double budget_ms,
                   const std::function<void(Checker&)>& body) {
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.require(false, std::string("exception: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    check.require(ms < budget_ms, "runtime " + std::to_string(ms) + " ms over budget");

    if (check.ok) {
        std::printf("[PASS] %d. %s (%.0f ms)\n", id, name, ms);
    } else {
        std::printf("[FAIL] %d. %s (%.0f ms): %s\n", id, name, ms,
                    check.detail.str().c_str());
        ++failures;
    }
}

std::vector<double> nine_point_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 8; ++i) grid.push_back(kPi / 2 * i / 8.0);
    return grid;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

int main() {
    run_criterion(1, "ideal strategy value 5/sqrt(2)", 1000.0, [](Checker& c) {
        const auto pts = theory_curve(1, 1, 1, {kPi / 4}, {kPi / 4});
        c.require(std::abs(pts[0].r_cns - 5.0 / kSqrt2) <= 1e-9,
                  "r_cns = " + fmt(pts[0].r_cns));
        c.require(std::abs(pts[0].r_nsc - 5.0 / kSqrt2) <= 1e-9,
                  "r_nsc = " + fmt(pts[0].r_nsc));
    });

    run_criterion(2, "noisy theory point 3.3078 within experimental error", 1000.0,
                  [](Checker& c) {
                      const auto pts =
                          theory_curve(0.9710, 0.9860, 0.943, {kPi / 4}, {kPi / 4});
                      c.require(std::abs(pts[0].r_cns - 3.3078) <= 1e-3,
                                "r_cns = " + fmt(pts[0].r_cns));
                      c.require(std::abs(pts[0].r_nsc - 3.3078) <= 1e-3,
                                "r_nsc = " + fmt(pts[0].r_nsc));
                      c.require(std::abs(pts[0].r_cns - 3.3212) <= 0.0638,
                                "r_cns outside one sd of the measured value");
                      c.require(std::abs(pts[0].r_nsc - 3.3563) <= 0.0632,
                                "r_nsc outside one sd of the measured value");
                  });

    run_criterion(3, "violation pattern across the nine-point sweep", 5000.0,
                  [](Checker& c) {
                      const auto pts = theory_curve(0.9710, 0.9860, 0.943,
                                                    nine_point_grid(), {kPi / 4});
                      for (int i = 0; i < 9; ++i) {
                          const bool both =
                              pts[i].r_cns > 3.0 && pts[i].r_nsc > 3.0;
                          const bool expected = (i >= 3 && i <= 5);
                          c.require(both == expected,
                                    "grid point " + std::to_string(i) +
                                        (expected ? " should violate" : " should not violate"));
                      }
                  });

    run_criterion(4, "closed forms match the engine on the 9x9 grids", 10000.0,
                  [](Checker& c) {
                      const auto grid = nine_point_grid();
                      const double triples[3][3] = {
                          {1, 1, 1}, {0.9710, 0.9860, 0.943}, {0.8, 0.95, 0.7}};
                      for (const auto& t : triples) {
                          const ClosedFormCheck check =
                              closed_form_discrepancy(t[0], t[1], t[2], grid, grid);
                          c.require(check.max_discrepancy_cns <= 1e-9,
                                    "cns discrepancy " + fmt(check.max_discrepancy_cns));
                          c.require(check.max_discrepancy_nsc <= 1e-9,
                                    "nsc discrepancy " + fmt(check.max_discrepancy_nsc));
                      }
                  });

    run_criterion(5, "hybrid-model bound soundness and tightness", 60000.0, [](Checker& c) {
        double max_cns = -1e300, max_nsc = -1e300;
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < 1000; ++i) {
            const int n_lambda = (i % 8) + 1;
            const double v_cns = eval_r_cns(correlators(
                model_to_distribution(random_cns_model(n_lambda, derive_subseed(100, i)))));
            const double v_nsc = eval_r_nsc(correlators(
                model_to_distribution(random_nsc_model(n_lambda, derive_subseed(200, i)))));
#pragma omp critical
            {
                max_cns = std::max(max_cns, v_cns);
                max_nsc = std::max(max_nsc, v_nsc);
            }
        }
        c.require(max_cns <= 3.0 + 1e-7, "sampled cns model above bound: " + fmt(max_cns));
        c.require(max_nsc <= 3.0 + 1e-7, "sampled nsc model above bound: " + fmt(max_nsc));

        const CnsSeesawResult cns = maximize_witness_cns(4, 32, 50, 12345);
        const NscSeesawResult nsc = maximize_witness_nsc(4, 32, 50, 12345);
        c.require(cns.outcome.best_value <= 3.0 + 1e-7,
                  "cns seesaw exceeded bound: " + fmt(cns.outcome.best_value));
        c.require(cns.outcome.best_value >= 3.0 - 1e-6,
                  "cns seesaw below boundary value: " + fmt(cns.outcome.best_value));
        c.require(nsc.outcome.best_value <= 3.0 + 1e-7,
                  "nsc seesaw exceeded bound: " + fmt(nsc.outcome.best_value));
        c.require(nsc.outcome.best_value >= 3.0 - 1e-6,
                  "nsc seesaw below boundary value: " + fmt(nsc.outcome.best_value));
    });

    run_criterion(6, "duplicate-source identities and decomposition", 30000.0,
                  [](Checker& c) {
                      for (int i = 0; i < 100; ++i) {
                          const CnsModel m =
                              random_cns_model((i % 4) + 1, derive_subseed(300, i));
                          const InflationReport r = inflation_identities(m);
                          c.require(r.identity_residual <= 1e-12,
                                    "identity residual " + fmt(r.identity_residual));
                          c.require(r.factorization_residual <= 1e-12,
                                    "factorization residual " +
                                        fmt(r.factorization_residual));
                          c.require(r.decomposition_residual <= 1e-10,
                                    "decomposition residual " +
                                        fmt(r.decomposition_residual));
                      }
                  });

    run_criterion(7, "finite statistics at the experimental sample size", 30000.0,
                  [](Checker& c) {
                      const JointDistribution d = compute_distribution(
                          reference_scenario(0.9710, 0.9860, 0.943, kPi / 4, kPi / 4));
                      const CountTable counts = sample_counts(d, 4700, 2024);
                      const EstimateReport est = estimate_witnesses(counts, 1000, 2025);
                      c.require(est.se_cns >= 0.04 && est.se_cns <= 0.10,
                                "se_cns = " + fmt(est.se_cns));
                      c.require(est.se_nsc >= 0.04 && est.se_nsc <= 0.10,
                                "se_nsc = " + fmt(est.se_nsc));

                      const double sigma = sigma_distance(3.3212, 0.0638);
                      c.require(sigma > 5.0, "sigma = " + fmt(sigma));
                      c.require(std::abs(std::round(sigma * 100.0) / 100.0 - 5.03) < 1e-12,
                                "sigma rounds to " + fmt(std::round(sigma * 100.0) / 100.0));
                  });

    run_criterion(8, "space-time audit reproduces the reference table", 1000.0,
                  [](Checker& c) {
                      const WorkbenchConfig config = default_workbench_config();
                      const SpacetimeConfig& st = config.spacetime;

                      const auto windows = compute_event_windows(st.geometry, st.delays,
                                                                 st.events, st.fiber_speed);
                      auto find = [&](const char* name) {
                          for (const auto& w : windows)
                              if (w.name == name) return w;
                          throw std::runtime_error("missing event");
                      };
                      const EventWindow ma = find("M_A");
                      const EventWindow qa = find("QRNG_A");
                      c.require(std::abs(ma.start.value - 862.95) < 5e-3 &&
                                    std::round(ma.start_sigma * 10) / 10 == 1.0,
                                "measurement time " + fmt(ma.start.value));
                      c.require(std::abs(qa.start.value - 363.15) < 5e-3 &&
                                    std::round(qa.start_sigma * 10) / 10 == 2.3,
                                "setting-choice start " + fmt(qa.start.value));
                      c.require(std::abs(ma.end.value - 901.35) < 5e-3 &&
                                    std::round(ma.end_sigma * 10) / 10 == 1.1,
                                "measurement end " + fmt(ma.end.value));

                      const AuditReport audit =
                          audit_all(st.geometry, st.delays, st.events, st.pairs,
                                    st.fiber_speed, st.light_speed, 0.0);
                      c.require(audit.results.size() == 12, "expected 12 pairs");
                      c.require(audit.all_spacelike, "not all pairs space-like");

                      const double expected[12][2] = {
                          {33038, 392}, {2013, 226},   {78071, 617}, {20496, 439},
                          {132743, 787}, {145308, 771}, {20618, 638}, {71833, 556},
                          {1924, 214},  {110666, 814}, {8412, 446},  {34360, 571}};
                      for (std::size_t i = 0; i < audit.results.size(); ++i) {
                          const SeparationResult& r = audit.results[i];
                          c.require(std::abs(r.interval2.value - expected[i][0]) <= 2.0,
                                    r.event_a + "--" + r.event_b + " ds2 " +
                                        fmt(r.interval2.value));
                          c.require(std::abs(r.interval2.sigma / expected[i][1] - 1.0) <= 0.05,
                                    r.event_a + "--" + r.event_b + " sigma " +
                                        fmt(r.interval2.sigma));
                      }
                  });

    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
