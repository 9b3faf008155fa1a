#include "fnn/witness.hpp"

#include <cmath>
#include <stdexcept>

namespace fnn {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void require_in_range(const CorrelatorSet& c) {
    const double lim = 1.0 + 1e-9;
    auto check = [&](double v) {
        if (!(std::abs(v) <= lim))
            throw std::invalid_argument("correlator entry outside [-1, 1]");
    };
    for (int x = 0; x < 2; ++x) check(c.a[x]);
    for (int z = 0; z < 2; ++z) check(c.c[z]);
    for (int y = 0; y < 2; ++y) check(c.b[y]);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) check(c.ab[x][y]);
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) check(c.bc[y][z]);
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) check(c.ac[x][z]);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) check(c.abc[x][y][z]);
}

TheoryPoint evaluate_point(double v1, double v2, double vh, double a1, double a2) {
    const Scenario s = reference_scenario(v1, v2, vh, a1, a2);
    const CorrelatorSet c = correlators(compute_distribution(s));
    return TheoryPoint{a1, a2, eval_r_cns(c), eval_r_nsc(c)};
}

}  // namespace

double eval_r_cns(const CorrelatorSet& c) {
    require_in_range(c);
    return 2.0 * c.abc[0][1][0] - 2.0 * c.abc[0][1][1] + 2.0 * c.abc[1][0][0] +
           c.abc[1][0][1] - c.b[0] + (c.ab[1][0] + c.bc[0][0] - c.c[0]) * c.c[1];
}

double eval_r_nsc(const CorrelatorSet& c) {
    require_in_range(c);
    return 2.0 * c.abc[0][1][0] - 2.0 * c.abc[0][1][1] + c.abc[1][0][0] +
           2.0 * c.abc[1][0][1] - c.b[0] +
           c.a[1] * (c.ab[1][0] + c.bc[0][1] + c.c[0] - c.c[1] - c.a[1]);
}

WitnessReport fnn_verdict(double r_cns, double r_nsc) {
    if (!std::isfinite(r_cns) || !std::isfinite(r_nsc))
        throw std::invalid_argument("witness values must be finite");
    WitnessReport r;
    r.r_cns = r_cns;
    r.r_nsc = r_nsc;
    r.violated_cns = r_cns > kWitnessBound;
    r.violated_nsc = r_nsc > kWitnessBound;
    r.fnn_certified = r.violated_cns && r.violated_nsc;
    return r;
}

std::vector<TheoryPoint> theory_curve(double v1, double v2, double vh,
                                      const std::vector<double>& alpha1_grid,
                                      const std::vector<double>& alpha2_grid) {
    const long n1 = static_cast<long>(alpha1_grid.size());
    const long n2 = static_cast<long>(alpha2_grid.size());
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("theory_curve: empty grid");
    std::vector<TheoryPoint> out(static_cast<std::size_t>(n1 * n2));
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n1 * n2; ++i) {
        out[i] = evaluate_point(v1, v2, vh, alpha1_grid[i / n2], alpha2_grid[i % n2]);
    }
    return out;
}

std::vector<TheoryPoint> theory_curve_serial(double v1, double v2, double vh,
                                             const std::vector<double>& alpha1_grid,
                                             const std::vector<double>& alpha2_grid) {
    const long n1 = static_cast<long>(alpha1_grid.size());
    const long n2 = static_cast<long>(alpha2_grid.size());
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("theory_curve: empty grid");
    std::vector<TheoryPoint> out(static_cast<std::size_t>(n1 * n2));
    for (long i = 0; i < n1 * n2; ++i) {
        out[i] = evaluate_point(v1, v2, vh, alpha1_grid[i / n2], alpha2_grid[i % n2]);
    }
    return out;
}

double closed_form_r_cns(double v1, double v2, double vh, double alpha1, double alpha2) {
    const double k1 = std::cos(2.0 * alpha1);
    const double k2 = std::cos(2.0 * alpha2);
    const double s1 = std::sin(2.0 * alpha1);
    const double s2 = std::sin(2.0 * alpha2);
    return 3.0 * v1 * v2 / kSqrt2 - 0.5 * v2 * v2 * k2 * k2 +
           v1 * v2 * v2 * k2 * k2 / kSqrt2 - v1 * v2 * k1 * k2 +
           0.5 * v1 * v2 * v2 * k1 * k2 + kSqrt2 * v1 * v2 * vh * s1 * s2;
}

double closed_form_r_nsc(double v1, double v2, double vh, double alpha1, double alpha2) {
    const double k1 = std::cos(2.0 * alpha1);
    const double k2 = std::cos(2.0 * alpha2);
    const double s1 = std::sin(2.0 * alpha1);
    const double s2 = std::sin(2.0 * alpha2);
    return 3.0 * v1 * v2 / kSqrt2 - v1 * v1 * k1 * k1 +
           v1 * v1 * v2 * k1 * k1 / kSqrt2 - v1 * v2 * k1 * k2 +
           v1 * v1 * v2 * k1 * k2 + kSqrt2 * v1 * v2 * vh * s1 * s2;
}

ClosedFormCheck closed_form_discrepancy(double v1, double v2, double vh,
                                        const std::vector<double>& alpha1_grid,
                                        const std::vector<double>& alpha2_grid) {
    const std::vector<TheoryPoint> engine = theory_curve(v1, v2, vh, alpha1_grid, alpha2_grid);
    ClosedFormCheck check;
    for (const TheoryPoint& pt : engine) {
        const double cf_cns = closed_form_r_cns(v1, v2, vh, pt.alpha1, pt.alpha2);
        const double cf_nsc = closed_form_r_nsc(v1, v2, vh, pt.alpha1, pt.alpha2);
        check.max_discrepancy_cns =
            std::max(check.max_discrepancy_cns, std::abs(cf_cns - pt.r_cns));
        check.max_discrepancy_nsc =
            std::max(check.max_discrepancy_nsc, std::abs(cf_nsc - pt.r_nsc));
    }
    return check;
}

}  // namespace fnn
