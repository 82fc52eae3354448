#pragma once

#include <cstddef>
#include <vector>

// Dense two-phase simplex for the tiny LPs in this project (cone-bound
// feasibility, hull membership). Maximizes c.x subject to
//   A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
// Bland's rule; sizes here are at most a few hundred rows.

namespace switchstab::lp {

struct Problem {
    std::vector<double> c;
    std::vector<std::vector<double>> a_ub;
    std::vector<double> b_ub;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status;
    double objective = 0.0;
    std::vector<double> x;
};

Result solve_max(const Problem& p);

} // namespace switchstab::lp
