#pragma once

#include <vector>

#include "gnevi/linalg.hpp"

namespace gnevi::lp {

// One inequality row: a·x <= b.
struct Constraint {
    Vec a;
    double b = 0;
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status = Status::infeasible;
    double value = 0;
    Vec argmin;
    bool ok() const { return status == Status::optimal; }
};

// min c·x subject to rows and x in box. The box must be bounded; it is what
// keeps the problem compact at desk scale. Deterministic: Bland pivoting,
// then a lexicographic pass so ties always resolve to the smallest argmin.
Result solve(const Vec& c, const std::vector<Constraint>& rows, const Box& box);

// max c·x; value is reported in max orientation.
Result maximize(const Vec& c, const std::vector<Constraint>& rows, const Box& box);

// Deterministic feasibility witness (min 0).
Result feasible_point(const std::vector<Constraint>& rows, const Box& box);

void append_equality(std::vector<Constraint>& rows, const Vec& a, double b);

}  // namespace gnevi::lp
