#include "hemo/tridiag.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hemo/errors.hpp"

namespace hemo {

std::vector<double> thomas_solve(const Tridiagonal& m,
                                 const std::vector<double>& rhs) {
    const std::size_t n = m.diag.size();
    if (m.lower.size() != n || m.upper.size() != n || rhs.size() != n)
        throw std::invalid_argument("thomas_solve: band/rhs size mismatch");
    if (n == 0) return {};

    std::vector<double> c(n), d(n);
    double pivot = m.diag[0];
    if (!(std::fabs(pivot) > 1e-300))
        throw SolverError("thomas_solve: zero pivot in row 0");
    c[0] = m.upper[0] / pivot;
    d[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = m.diag[i] - m.lower[i] * c[i - 1];
        if (!(std::fabs(pivot) > 1e-300))
            throw SolverError("thomas_solve: zero pivot in row " +
                              std::to_string(i));
        c[i] = m.upper[i] / pivot;
        d[i] = (rhs[i] - m.lower[i] * d[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    return d;
}

}  // namespace hemo
