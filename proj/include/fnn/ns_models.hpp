#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fnn/born.hpp"

namespace fnn {

// Bob-Charlie no-signaling box: q[b][c][z]. Bob's marginal must not depend
// on z; Charlie's marginal is pinned to a value shared across the hidden
// variable (he never sees it).
struct NsBox {
    std::array<std::array<std::array<double, 2>, 2>, 3> q{};  // [b][c][z]
};

// Alice-Bob no-signaling box for the mirrored model: q[a][b][x].
struct AbBox {
    std::array<std::array<std::array<double, 2>, 3>, 2> q{};  // [a][b][x]
};

// Hybrid model with a classical Alice-Bob source: p(a,b,c|x,z) =
// sum_l w_l [resp_l(x) = a] box_l(b,c|z), every box sharing one Charlie
// marginal.
struct CnsModel {
    std::vector<double> weights;
    std::vector<std::array<int, 2>> alice_response;  // per lambda: x -> a
    std::vector<NsBox> boxes;
    std::array<std::array<double, 2>, 2> charlie_marginal{};  // m[c][z]
};

// Mirror image: classical Bob-Charlie source, no-signaling Alice-Bob boxes
// sharing one Alice marginal.
struct NscModel {
    std::vector<double> weights;
    std::vector<std::array<int, 2>> charlie_response;  // per lambda: z -> c
    std::vector<AbBox> boxes;
    std::array<std::array<double, 2>, 2> alice_marginal{};  // m[a][x]
};

struct ConstraintViolation {
    std::string constraint;
    double magnitude = 0.0;
};

struct ModelValidation {
    bool pass = true;
    double max_violation = 0.0;
    std::vector<ConstraintViolation> violations;
};

ModelValidation validate_model(const CnsModel& m, double tol = 1e-10);
ModelValidation validate_model(const NscModel& m, double tol = 1e-10);

JointDistribution model_to_distribution(const CnsModel& m);
JointDistribution model_to_distribution(const NscModel& m);

// Random point of the feasible set: shared marginal from a flat Dirichlet,
// then per lambda a mixture of extreme points of the box slice, obtained by
// maximizing seeded random objectives with the embedded simplex.
CnsModel random_cns_model(int n_lambda, std::uint64_t seed);
NscModel random_nsc_model(int n_lambda, std::uint64_t seed);

enum class WitnessKind { cns, nsc };

struct SeesawOutcome {
    double best_value = 0.0;
    int best_restart = -1;
    bool best_converged = false;
    int restarts = 0;
};

struct CnsSeesawResult {
    SeesawOutcome outcome;
    CnsModel best_model;
};

struct NscSeesawResult {
    SeesawOutcome outcome;
    NscModel best_model;
};

// Alternating maximization of a witness over the hybrid models. Per restart
// the scalar factor of the witness's quadratic term is frozen at the previous
// iterate, starting from a seeded uniform draw in [-1, 1]; the remaining
// objective is linear in the boxes and solved exactly as an LP over the
// constrained slice. The reported value is always the true witness of an
// explicit feasible model, so it is a lower bound on the maximum; the
// analytic bound of 3 caps it from above.
CnsSeesawResult maximize_witness_cns(int n_lambda, int restarts, int iters,
                                     std::uint64_t seed, bool parallel = true);
NscSeesawResult maximize_witness_nsc(int n_lambda, int restarts, int iters,
                                     std::uint64_t seed, bool parallel = true);

// Duplicate-source consistency checks on the inflated distribution
// Q(a,b,b',c,c'|x,z,z') = sum_l w_l [resp_l(x)=a] box_l(b,c|z) box_l(b',c'|z'),
// where the hidden variable is cloned and the box is duplicated.
struct InflationReport {
    double identity_residual = 0.0;       // |<A1 (C1' - C1)>_Q|
    double factorization_residual = 0.0;  // max |<A_x B_y C'_z>_Q - <A_x B_y><C_z>|
    double decomposition_residual = 0.0;  // |sum_b p_b T_b - r_cns|
    std::array<double, 3> outcome_probabilities{};
    std::array<double, 3> t_values{};
    std::array<bool, 3> t_defined{};
    // 3 + <A1(C1'-C1)>_b - T_b, nonnegative up to rounding when defined.
    std::array<double, 3> t_bound_slack{};

    double max_identity_residual() const {
        return identity_residual > factorization_residual ? identity_residual
                                                          : factorization_residual;
    }
};

InflationReport inflation_identities(const CnsModel& m);

}  // namespace fnn
