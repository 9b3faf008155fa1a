#pragma once

#include <array>
#include <string>

#include "fnn/scenario.hpp"

namespace fnn {

// Joint conditional distribution p(a,b,c|x,z) on the 2x3x2 outcome grid times
// the 2x2 input grid, stored row-major as [x][z][a][b][c].
struct JointDistribution {
    static constexpr int kCells = 48;

    std::array<double, kCells> p{};

    static constexpr int index(int x, int z, int a, int b, int c) {
        return (((x * 2 + z) * 2 + a) * 3 + b) * 2 + c;
    }

    double& at(int x, int z, int a, int b, int c) { return p[index(x, z, a, b, c)]; }
    double at(int x, int z, int a, int b, int c) const { return p[index(x, z, a, b, c)]; }

    double context_total(int x, int z) const;
};

struct NoSignalingReport {
    double alice_deviation = 0.0;    // max_a,x |p(a|x,z=0) - p(a|x,z=1)|
    double bob_deviation = 0.0;      // max_b over input pairs
    double charlie_deviation = 0.0;  // max_c,z over x
    double normalization_deviation = 0.0;
    double min_entry = 0.0;
    bool pass = false;
};

// One-, two- and three-party expectation values. The middle party's outcome
// enters through two sign patterns: y=0 weighs (b=0,1,2) as (+1,+1,-1) and
// y=1 as (+1,-1,0). Marginal quantities are averaged over the free inputs.
struct CorrelatorSet {
    std::array<double, 2> a{};                               // <A_x>
    std::array<double, 2> c{};                               // <C_z>
    std::array<double, 2> b{};                               // <B_y>
    std::array<std::array<double, 2>, 2> ab{};               // <A_x B_y>
    std::array<std::array<double, 2>, 2> bc{};               // <B_y C_z>
    std::array<std::array<double, 2>, 2> ac{};               // <A_x C_z>
    std::array<std::array<std::array<double, 2>, 2>, 2> abc{};  // <A_x B_y C_z>
};

// Sign weight for the middle party's outcome b under pattern y.
double b_sign_weight(int y, int b);

// Born-rule evaluation of the full scenario. Tensor order is
// (Alice qubit) x (middle pair) x (Charlie qubit); source 1 spans the first
// two factors, source 2 the last two.
JointDistribution compute_distribution(const Scenario& s);

NoSignalingReport validate_no_signaling(const JointDistribution& d, double tol = 1e-10);

CorrelatorSet correlators(const JointDistribution& d);

// Largest disagreement of any input-averaged marginal across the contexts it
// was averaged over. Zero (to rounding) for no-signaling distributions.
double correlator_context_spread(const JointDistribution& d);

}  // namespace fnn
