#pragma once

#include <vector>

#include "fnn/born.hpp"

namespace fnn {

// Both witnesses are bounded by 3 whenever one source is classical and the
// other is limited only by no-signaling; exceeding 3 on both certifies that
// neither source admits a classical description.
inline constexpr double kWitnessBound = 3.0;

struct WitnessReport {
    double r_cns = 0.0;
    double r_nsc = 0.0;
    bool violated_cns = false;  // r_cns > 3, strict
    bool violated_nsc = false;
    bool fnn_certified = false;  // both violated
};

// 2<A0B1C0> - 2<A0B1C1> + 2<A1B0C0> + <A1B0C1> - <B0>
//   + (<A1B0> + <B0C0> - <C0>) <C1>
double eval_r_cns(const CorrelatorSet& c);

// 2<A0B1C0> - 2<A0B1C1> + <A1B0C0> + 2<A1B0C1> - <B0>
//   + <A1> (<A1B0> + <B0C1> + <C0> - <C1> - <A1>)
double eval_r_nsc(const CorrelatorSet& c);

WitnessReport fnn_verdict(double r_cns, double r_nsc);

struct TheoryPoint {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double r_cns = 0.0;
    double r_nsc = 0.0;
};

// Witness values over the Cartesian grid of source angles, computed through
// the full Born pipeline with the reference measurement settings.
std::vector<TheoryPoint> theory_curve(double v1, double v2, double vh,
                                      const std::vector<double>& alpha1_grid,
                                      const std::vector<double>& alpha2_grid);
std::vector<TheoryPoint> theory_curve_serial(double v1, double v2, double vh,
                                             const std::vector<double>& alpha1_grid,
                                             const std::vector<double>& alpha2_grid);

// Closed-form expressions for the reference settings, with k_i = cos(2 a_i)
// and s_i = sin(2 a_i):
//   r_cns = 3 v1 v2 / sqrt2 - v2^2 k2^2 / 2 + v1 v2^2 k2^2 / sqrt2
//           - v1 v2 k1 k2 + v1 v2^2 k1 k2 / 2 + sqrt2 v1 v2 vh s1 s2
//   r_nsc = 3 v1 v2 / sqrt2 - v1^2 k1^2 + v1^2 v2 k1^2 / sqrt2
//           - v1 v2 k1 k2 + v1^2 v2 k1 k2 + sqrt2 v1 v2 vh s1 s2
// These serve as an analytic cross-check of the engine; the engine remains
// the authority for reported curves.
double closed_form_r_cns(double v1, double v2, double vh, double alpha1, double alpha2);
double closed_form_r_nsc(double v1, double v2, double vh, double alpha1, double alpha2);

struct ClosedFormCheck {
    double max_discrepancy_cns = 0.0;
    double max_discrepancy_nsc = 0.0;
};

ClosedFormCheck closed_form_discrepancy(double v1, double v2, double vh,
                                        const std::vector<double>& alpha1_grid,
                                        const std::vector<double>& alpha2_grid);

}  // namespace fnn
