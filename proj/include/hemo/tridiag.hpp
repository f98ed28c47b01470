#pragma once

#include <vector>

namespace hemo {

// Tridiagonal system in banded storage. lower[0] and upper[n-1] are unused.
struct Tridiagonal {
    std::vector<double> lower;  // sub-diagonal, row i couples to i-1
    std::vector<double> diag;
    std::vector<double> upper;  // super-diagonal, row i couples to i+1
};

// Thomas algorithm. Throws SolverError naming the row on a vanishing pivot.
// The matrices built here are strictly diagonally dominant, for which the
// elimination is stable without pivoting.
std::vector<double> thomas_solve(const Tridiagonal& m,
                                 const std::vector<double>& rhs);

}  // namespace hemo
