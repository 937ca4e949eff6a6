#ifndef STABILCERT_SIMPLEX_HPP
#define STABILCERT_SIMPLEX_HPP

#include <vector>

namespace stabilcert {

/// minimize objective . x  subject to  a_ub x <= b_ub,  a_eq x = b_eq,  x >= 0.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<std::vector<double>> a_ub;
    std::vector<double> b_ub;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;
    std::vector<double> objective;
};

struct SimplexResult {
    enum class Status { kOptimal, kInfeasible, kUnbounded };
    Status status = Status::kOptimal;
    double objective = 0.0;
    std::vector<double> x;
};

/// Dense two-phase simplex on the condensed dictionary tableau.  Pivots use
/// a most-negative-cost rule with index tie-breaks and fall back permanently
/// to Bland's rule once the objective stalls, which guarantees termination
/// on degenerate problems.
SimplexResult solve_lp(const LinearProgram& lp);

}  // namespace stabilcert

#endif  // STABILCERT_SIMPLEX_HPP
