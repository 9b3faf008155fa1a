#pragma once

#include <vector>

namespace fnn {

// maximize objective . x  subject to  rows . x = rhs,  x >= 0.
struct LinearProgram {
    int num_vars = 0;
    std::vector<std::vector<double>> rows;  // each of size num_vars
    std::vector<double> rhs;
    std::vector<double> objective;  // size num_vars
};

enum class SimplexStatus { optimal, infeasible, unbounded, iteration_limit };

struct SimplexSolution {
    SimplexStatus status = SimplexStatus::iteration_limit;
    double objective = 0.0;
    std::vector<double> x;
};

// Self-contained dense two-phase simplex in double precision. Entering and
// leaving variables follow Bland's rule (lowest index), so the pivot sequence
// is deterministic and cycling cannot occur. Redundant equality rows are
// detected in phase one and dropped. Problem sizes in this project stay below
// ~60 variables.
SimplexSolution simplex_maximize(const LinearProgram& lp);

}  // namespace fnn
