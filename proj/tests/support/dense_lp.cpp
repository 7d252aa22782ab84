#include "support/dense_lp.hpp"

#include <cmath>
#include <stdexcept>

namespace sarmip::testing {

DenseLpResult dense_simplex(const DenseLp& lp) {
    const int m = static_cast<int>(lp.b.size());
    const int n = static_cast<int>(lp.c.size());
    // Tableau rows 0..m-1: constraints with slacks; row m: -c (objective).
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j)
            t[i][j] = lp.a[i][j];
        t[i][n + i] = 1.0;
        t[i][n + m] = lp.b[i];
    }
    for (int j = 0; j < n; ++j)
        t[m][j] = -lp.c[j];

    for (long iter = 0; iter < 100000; ++iter) {
        int q = -1;
        for (int j = 0; j < n + m; ++j)
            if (t[m][j] < -1e-9 && (q < 0 || t[m][j] < t[m][q]))
                q = j;
        if (q < 0)
            return {true, t[m][n + m]};

        int p = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            if (t[i][q] <= 1e-9)
                continue;
            double ratio = t[i][n + m] / t[i][q];
            if (p < 0 || ratio < best) {
                best = ratio;
                p = i;
            }
        }
        if (p < 0)
            return {false, 0.0};

        double piv = t[p][q];
        for (int j = 0; j <= n + m; ++j)
            t[p][j] /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == p || t[i][q] == 0.0)
                continue;
            double f = t[i][q];
            for (int j = 0; j <= n + m; ++j)
                t[i][j] -= f * t[p][j];
        }
    }
    throw std::runtime_error("dense oracle did not converge");
}

} // namespace sarmip::testing
