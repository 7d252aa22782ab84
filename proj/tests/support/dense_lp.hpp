#pragma once
#include <vector>

namespace sarmip::testing {

// Textbook dense-tableau simplex oracle for max c.x s.t. A x <= b, x >= 0,
// with b >= 0 (all-slack start is feasible). Independent of the production
// LP engine.
struct DenseLp {
    std::vector<std::vector<double>> a;
    std::vector<double> b; // nonnegative
    std::vector<double> c;
};

struct DenseLpResult {
    bool bounded = true;
    double value = 0.0;
};

DenseLpResult dense_simplex(const DenseLp& lp);

} // namespace sarmip::testing
