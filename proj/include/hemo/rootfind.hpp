#pragma once

#include <cmath>
#include <utility>

namespace hemo {

struct ScalarRoot {
    double x = 0.0;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Safeguarded scalar root finder: Newton iterations with a central-difference
// derivative, falling back to bisection whenever a bracketing interval is
// known and the Newton step leaves it (or the function value fails to
// improve). Converged means |f| <= ftol; iterations continue below ftol while
// they still improve |f|, so well-conditioned roots come out at machine
// accuracy. f may return NaN outside its domain; such points shrink the
// search interval instead of poisoning the iteration.
template <class F>
ScalarRoot newton_bisect(F&& f, double x0, double lo, double hi, double ftol,
                         int max_iter) {
    ScalarRoot out;
    double flo = f(lo);
    double fhi = f(hi);
    bool have_bracket = std::isfinite(flo) && std::isfinite(fhi) &&
                        ((flo <= 0.0 && fhi >= 0.0) || (flo >= 0.0 && fhi <= 0.0));

    double x = std::fmin(std::fmax(x0, lo), hi);
    double fx = f(x);
    if (!std::isfinite(fx)) {
        if (!have_bracket) return out;
        x = 0.5 * (lo + hi);
        fx = f(x);
    }

    double best_x = x, best_f = std::isfinite(fx) ? std::fabs(fx) : HUGE_VAL;
    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it + 1;
        if (std::isfinite(fx)) {
            if (std::fabs(fx) < best_f) {
                best_f = std::fabs(fx);
                best_x = x;
            }
            if (fx == 0.0) break;
            // Maintain the bracket.
            if (have_bracket) {
                if ((fx > 0.0) == (fhi > 0.0)) {
                    hi = x;
                    fhi = fx;
                } else {
                    lo = x;
                    flo = fx;
                }
            }
        }
        double x_next;
        bool newton_ok = false;
        if (std::isfinite(fx)) {
            const double h = 1e-7 * (std::fabs(x) + 1e-8);
            const double fp = f(x + h);
            const double fm = f(x - h);
            if (std::isfinite(fp) && std::isfinite(fm) && fp != fm) {
                const double deriv = (fp - fm) / (2.0 * h);
                if (deriv != 0.0) {
                    x_next = x - fx / deriv;
                    newton_ok = std::isfinite(x_next) && x_next >= lo && x_next <= hi;
                }
            }
        }
        if (!newton_ok) {
            if (!have_bracket) break;
            x_next = 0.5 * (lo + hi);
        }
        if (x_next == x) break;
        const double fn = f(x_next);
        if (!std::isfinite(fn)) {
            if (!have_bracket) break;
            // Probe quarter points; keep whichever is usable.
            const double a = lo + 0.25 * (hi - lo);
            const double b = lo + 0.75 * (hi - lo);
            const double fa2 = f(a);
            if (std::isfinite(fa2)) {
                x = a;
                fx = fa2;
                continue;
            }
            const double fb2 = f(b);
            if (std::isfinite(fb2)) {
                x = b;
                fx = fb2;
                continue;
            }
            break;
        }
        // Stop when no further progress is possible.
        if (std::fabs(fn) >= best_f && best_f <= ftol) {
            break;
        }
        x = x_next;
        fx = fn;
        if (have_bracket && hi - lo <= 1e-15 * (std::fabs(lo) + std::fabs(hi)))
            break;
    }
    out.x = best_x;
    out.f = best_f;
    out.converged = best_f <= ftol;
    return out;
}

}  // namespace hemo
