#include "hemo/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "hemo/errors.hpp"
#include "hemo/physics.hpp"
#include "hemo/rootfind.hpp"

namespace hemo {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// In-place Gaussian elimination with partial pivoting, row-major M (n x n).
bool gauss_solve(double* M, double* b, int n) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(M[r * n + col]) > std::fabs(M[piv * n + col])) piv = r;
        if (std::fabs(M[piv * n + col]) < 1e-300) return false;
        if (piv != col) {
            for (int c = col; c < n; ++c) std::swap(M[col * n + c], M[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = M[r * n + col] / M[col * n + col];
            for (int c = col; c < n; ++c) M[r * n + c] -= f * M[col * n + c];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= M[r * n + c] * b[c];
        b[r] = s / M[r * n + r];
    }
    return true;
}

struct NewtonOutcome {
    std::vector<double> x;
    double rmax = HUGE_VAL;
    bool converged = false;
};

// Damped Newton with a finite-difference Jacobian. Residual functions return
// NaN for out-of-domain points (nonpositive areas), which the backtracking
// line search treats as a rejected step.
NewtonOutcome damped_newton(const std::function<void(const double*, double*)>& f, int n,
                            std::vector<double> x, const std::vector<double>& hscale,
                            int max_iter, double rtol) {
    std::vector<double> r(n), rn(n), xt(n), dx(n), J(n * n);
    auto norm = [n](const std::vector<double>& v) {
        double m = 0.0;
        for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(v[i]));
        return m;
    };
    f(x.data(), r.data());
    double rmax = norm(r);
    if (!std::isfinite(rmax)) return {std::move(x), HUGE_VAL, false};
    for (int it = 0; it < max_iter && rmax > rtol; ++it) {
        for (int j = 0; j < n; ++j) {
            const double h = 1e-7 * (std::fabs(x[j]) + hscale[j]);
            xt = x;
            xt[j] += h;
            f(xt.data(), rn.data());
            for (int i = 0; i < n; ++i) J[i * n + j] = (rn[i] - r[i]) / h;
        }
        dx.assign(r.begin(), r.end());
        if (!gauss_solve(J.data(), dx.data(), n)) break;
        double t = 1.0;
        bool improved = false;
        for (int k = 0; k < 40; ++k, t *= 0.5) {
            for (int i = 0; i < n; ++i) xt[i] = x[i] - t * dx[i];
            f(xt.data(), rn.data());
            const double rm = norm(rn);
            if (std::isfinite(rm) && rm < rmax) {
                x = xt;
                r = rn;
                rmax = rm;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return {std::move(x), rmax, rmax <= rtol};
}

// Momentum flux with the kinetic half removed and the wall term restored:
// for the exact flux this equals A * (total pressure) / rho, which is the
// quantity the junction matches across the node.
double pi_mod(double fluxQ, double A, double Q, const VesselParams& p) {
    return fluxQ - p.alpha * Q * Q / (2.0 * A) + pressure_antiderivative(p, A) / p.rho;
}

struct Ctx11 {
    const PointState& tN;
    const PointState& t1;
    const VesselParams& pin;
    const VesselParams& pout;
    double lambda;
    double wAp, wQp, wAc, wQc;  // outgoing invariants 2w = V +/- lambda U
    double Abar, rbar;

    Ctx11(const PointState& a, const PointState& b, const VesselParams& pi,
          const VesselParams& po, double lam)
        : tN(a), t1(b), pin(pi), pout(po), lambda(lam) {
        wAp = tN.VA + lambda * tN.A;
        wQp = tN.VQ + lambda * tN.Q;
        wAc = t1.VA - lambda * t1.A;
        wQc = t1.VQ - lambda * t1.Q;
        Abar = 0.5 * (tN.A + t1.A);
        rbar = 0.5 * (pin.rho + pout.rho);
    }

    // x = (A_L, Q_L, A_R, Q_R); scaled residuals of the four conditions.
    void resid(const double* x, double* r) const {
        const double A_L = x[0], Q_L = x[1], A_R = x[2], Q_R = x[3];
        if (!(A_L > 0.0) || !(A_R > 0.0)) {
            r[0] = r[1] = r[2] = r[3] = kNaN;
            return;
        }
        const double ptL = pin.alpha * pin.rho / 2.0 * (Q_L / A_L) * (Q_L / A_L) +
                           pressure(pin, A_L);
        const double ptR = pout.alpha * pout.rho / 2.0 * (Q_R / A_R) * (Q_R / A_R) +
                           pressure(pout, A_R);
        const double fQpar = wQp - lambda * Q_L;
        const double fQch = wQc + lambda * Q_R;
        r[0] = (Q_L - Q_R) / (lambda * Abar);
        r[1] = (ptL - ptR) / (rbar * lambda * lambda);
        r[2] = ((wAp - lambda * A_L) - (wAc + lambda * A_R)) / (lambda * Abar);
        r[3] = (pin.rho * (A_R / A_L) * pi_mod(fQpar, A_L, Q_L, pin) -
                pout.rho * pi_mod(fQch, A_R, Q_R, pout)) /
               (rbar * lambda * lambda * Abar);
    }

    double resid_max(const double* x) const {
        double r[4];
        resid(x, r);
        double m = 0.0;
        for (double v : r) m = std::max(m, std::fabs(v));
        return m;
    }
};

JunctionStates11 states11(const Ctx11& c, double A_L, double Q_L, double A_R,
                          double Q_R) {
    JunctionStates11 out;
    out.parent = PointState{A_L, Q_L, c.tN.VA - c.lambda * (A_L - c.tN.A),
                            c.tN.VQ - c.lambda * (Q_L - c.tN.Q)};
    out.child = PointState{A_R, Q_R, c.t1.VA + c.lambda * (A_R - c.t1.A),
                           c.t1.VQ + c.lambda * (Q_R - c.t1.Q)};
    return out;
}

double trace_distance(const Ctx11& c, const double* x) {
    return std::fabs(x[0] - c.tN.A) / c.Abar + std::fabs(x[1] - c.tN.Q) / (c.lambda * c.Abar) +
           std::fabs(x[2] - c.t1.A) / c.Abar + std::fabs(x[3] - c.t1.Q) / (c.lambda * c.Abar);
}

}  // namespace

double total_pressure(const PointState& s, const VesselParams& p, ModelForm form) {
    const double u = form == ModelForm::Flow ? s.Q / s.A : s.Q;
    return p.alpha * p.rho / 2.0 * u * u + pressure(p, s.A);
}

JunctionStates11 couple_one_to_one(const PointState& parent_tr, const PointState& child_tr,
                                   const VesselParams& pin, const VesselParams& pout,
                                   double lambda) {
    Ctx11 c(parent_tr, child_tr, pin, pout, lambda);
    const double K = (c.wAp - c.wAc) / lambda;  // A_L + A_R from mass-flux equality
    if (!(K > 0.0)) throw SolverError("junction areas lost positivity");

    // For a trial child area, the momentum-flux relation is a quadratic in
    // the junction flow. Branch 0 is the root that stays finite when the
    // quadratic degenerates to linear (equal effective areas), which is where
    // the physical solution lives for a fictitious split.
    auto flow_root = [&](double A_R, int branch, double& A_L_out) -> double {
        if (!(A_R > 0.0)) return kNaN;
        const double A_L = K - A_R;
        if (!(A_L > 0.0)) return kNaN;
        A_L_out = A_L;
        const double k = pin.rho * A_R / A_L;
        const double m = pout.rho;
        const double qa = -k * pin.alpha / (2.0 * A_L) + m * pout.alpha / (2.0 * A_R);
        const double qb = -lambda * (k + m);
        const double qc = k * (c.wQp + pressure_antiderivative(pin, A_L) / pin.rho) -
                          m * (c.wQc + pressure_antiderivative(pout, A_R) / pout.rho);
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0) return kNaN;
        const double qq = 0.5 * (std::sqrt(disc) - qb);  // qb < 0, so qq > 0
        if (branch == 0) return qc / qq;
        const double ascale = k * pin.alpha / (2.0 * A_L) + m * pout.alpha / (2.0 * A_R);
        if (std::fabs(qa) <= 1e-13 * ascale) return kNaN;
        return qq / qa;
    };

    auto phi = [&](double A_R, int branch) -> double {
        double A_L;
        const double Q = flow_root(A_R, branch, A_L);
        if (!std::isfinite(Q)) return kNaN;
        const double ptL =
            pin.alpha * pin.rho / 2.0 * (Q / A_L) * (Q / A_L) + pressure(pin, A_L);
        const double ptR =
            pout.alpha * pout.rho / 2.0 * (Q / A_R) * (Q / A_R) + pressure(pout, A_R);
        return ptL - ptR;
    };

    double lo = 0.25 * std::min(parent_tr.A, child_tr.A);
    double hi = 4.0 * std::max(parent_tr.A, child_tr.A);
    lo = std::min(lo, 0.25 * K);
    hi = std::min(std::max(hi, 0.75 * K), K * (1.0 - 1e-12));

    const double ftol = 1e-13 * c.rbar * lambda * lambda;
    std::vector<std::array<double, 4>> candidates;  // (A_L, Q, A_R, Q)
    const int kScan = 129;
    for (int branch = 0; branch < 2; ++branch) {
        auto f = [&](double a) { return phi(a, branch); };
        double prev_a = kNaN, prev_f = kNaN;
        for (int i = 0; i < kScan; ++i) {
            const double a = lo + (hi - lo) * i / (kScan - 1);
            const double fa = f(a);
            if (std::isfinite(prev_f) && std::isfinite(fa) &&
                ((prev_f <= 0.0 && fa >= 0.0) || (prev_f >= 0.0 && fa <= 0.0))) {
                const auto root = newton_bisect(f, 0.5 * (prev_a + a), prev_a, a, ftol, 100);
                if (root.converged) {
                    double A_L;
                    const double Q = flow_root(root.x, branch, A_L);
                    if (std::isfinite(Q))
                        candidates.push_back({A_L, Q, root.x, Q});
                }
            }
            prev_a = a;
            prev_f = fa;
        }
    }

    const double rtol_accept = 1e-9;
    double best_d = HUGE_VAL;
    std::array<double, 4> best{};
    bool found = false;
    for (const auto& x : candidates) {
        if (c.resid_max(x.data()) > rtol_accept) continue;
        const double d = trace_distance(c, x.data());
        if (d < best_d) {
            best_d = d;
            best = x;
            found = true;
        }
    }
    if (!found) throw SolverError("junction solve found no admissible state");
    return states11(c, best[0], best[1], best[2], best[3]);
}

JunctionStates11 couple_one_to_one_newton(const PointState& parent_tr,
                                          const PointState& child_tr,
                                          const VesselParams& pin, const VesselParams& pout,
                                          double lambda) {
    Ctx11 c(parent_tr, child_tr, pin, pout, lambda);
    auto f = [&](const double* x, double* r) { c.resid(x, r); };
    const std::vector<double> hscale = {c.Abar, lambda * c.Abar, c.Abar, lambda * c.Abar};

    const double Qm = 0.5 * (parent_tr.Q + child_tr.Q);
    const double Am = 0.5 * (parent_tr.A + child_tr.A);
    const std::vector<std::vector<double>> starts = {
        {parent_tr.A, parent_tr.Q, child_tr.A, child_tr.Q},
        {Am, Qm, Am, Qm},
        {pin.A0, Qm, pout.A0, Qm},
    };
    NewtonOutcome bestr;
    for (const auto& x0 : starts) {
        auto out = damped_newton(f, 4, x0, hscale, 200, 1e-13);
        if (out.rmax < bestr.rmax) bestr = std::move(out);
        if (bestr.rmax <= 1e-13) break;
    }
    if (bestr.rmax > 1e-9) throw SolverError("junction solve did not converge");
    return states11(c, bestr.x[0], bestr.x[1], bestr.x[2], bestr.x[3]);
}

JunctionStates11 couple_one_to_one_velocity(const PointState& parent_tr,
                                            const PointState& child_tr,
                                            const VesselParams& pin,
                                            const VesselParams& pout, double lambda) {
    // State variables here are (A, u); V approximates (A u, u^2/2 + p/rho).
    const PointState& tN = parent_tr;
    const PointState& t1 = child_tr;
    const double wAp = tN.VA + lambda * tN.A, wup = tN.VQ + lambda * tN.Q;
    const double wAc = t1.VA - lambda * t1.A, wuc = t1.VQ - lambda * t1.Q;
    const double Abar = 0.5 * (tN.A + t1.A);
    const double rbar = 0.5 * (pin.rho + pout.rho);
    const double lam2 = lambda * lambda;

    auto f = [&](const double* x, double* r) {
        const double A_L = x[0], u_L = x[1], A_R = x[2], u_R = x[3];
        if (!(A_L > 0.0) || !(A_R > 0.0)) {
            r[0] = r[1] = r[2] = r[3] = kNaN;
            return;
        }
        const double ptL = pin.rho / 2.0 * u_L * u_L + pressure(pin, A_L);
        const double ptR = pout.rho / 2.0 * u_R * u_R + pressure(pout, A_R);
        r[0] = (A_L * u_L - A_R * u_R) / (lambda * Abar);
        r[1] = (ptL - ptR) / (rbar * lam2);
        r[2] = ((wAp - lambda * A_L) - (wAc + lambda * A_R)) / (lambda * Abar);
        r[3] = ((wup - lambda * u_L) - (wuc + lambda * u_R)) / lam2;
    };
    const std::vector<double> hscale = {Abar, lambda, Abar, lambda};
    const double um = 0.5 * (tN.Q + t1.Q);
    const double Am = 0.5 * (tN.A + t1.A);
    const std::vector<std::vector<double>> starts = {
        {tN.A, tN.Q, t1.A, t1.Q},
        {Am, um, Am, um},
        {pin.A0, um, pout.A0, um},
    };
    NewtonOutcome bestr;
    for (const auto& x0 : starts) {
        auto out = damped_newton(f, 4, x0, hscale, 200, 1e-13);
        if (out.rmax < bestr.rmax) bestr = std::move(out);
        if (bestr.rmax <= 1e-13) break;
    }
    if (bestr.rmax > 1e-9) throw SolverError("junction solve did not converge");

    JunctionStates11 out;
    out.parent = PointState{bestr.x[0], bestr.x[1], tN.VA - lambda * (bestr.x[0] - tN.A),
                            tN.VQ - lambda * (bestr.x[1] - tN.Q)};
    out.child = PointState{bestr.x[2], bestr.x[3], t1.VA + lambda * (bestr.x[2] - t1.A),
                           t1.VQ + lambda * (bestr.x[3] - t1.Q)};
    return out;
}

JunctionStates12 couple_one_to_two(const PointState& parent_tr, const PointState& child1_tr,
                                   const PointState& child2_tr, const VesselParams& pin,
                                   const VesselParams& pout1, const VesselParams& pout2,
                                   double lambda) {
    const PointState& tN = parent_tr;
    const double wAp = tN.VA + lambda * tN.A, wQp = tN.VQ + lambda * tN.Q;
    const double wAc1 = child1_tr.VA - lambda * child1_tr.A;
    const double wQc1 = child1_tr.VQ - lambda * child1_tr.Q;
    const double wAc2 = child2_tr.VA - lambda * child2_tr.A;
    const double wQc2 = child2_tr.VQ - lambda * child2_tr.Q;
    const double Abar = (tN.A + child1_tr.A + child2_tr.A) / 3.0;
    const double rbar = (pin.rho + pout1.rho + pout2.rho) / 3.0;
    const double lam2 = lambda * lambda;

    auto f = [&](const double* x, double* r) {
        const double A_L = x[0], Q_L = x[1];
        const double A1 = x[2], Q1 = x[3], A2 = x[4], Q2 = x[5];
        if (!(A_L > 0.0) || !(A1 > 0.0) || !(A2 > 0.0)) {
            for (int i = 0; i < 6; ++i) r[i] = kNaN;
            return;
        }
        const double ptL =
            pin.alpha * pin.rho / 2.0 * (Q_L / A_L) * (Q_L / A_L) + pressure(pin, A_L);
        const double pt1 =
            pout1.alpha * pout1.rho / 2.0 * (Q1 / A1) * (Q1 / A1) + pressure(pout1, A1);
        const double pt2 =
            pout2.alpha * pout2.rho / 2.0 * (Q2 / A2) * (Q2 / A2) + pressure(pout2, A2);
        const double fQpar = wQp - lambda * Q_L;
        const double piL = pi_mod(fQpar, A_L, Q_L, pin);
        r[0] = (Q_L - Q1 - Q2) / (lambda * Abar);
        r[1] = (ptL - pt1) / (rbar * lam2);
        r[2] = (ptL - pt2) / (rbar * lam2);
        r[3] = ((wAp - lambda * A_L) - (wAc1 + lambda * A1) - (wAc2 + lambda * A2)) /
               (lambda * Abar);
        r[4] = (pin.rho * (A1 / A_L) * piL -
                pout1.rho * pi_mod(wQc1 + lambda * Q1, A1, Q1, pout1)) /
               (rbar * lam2 * Abar);
        r[5] = (pin.rho * (A2 / A_L) * piL -
                pout2.rho * pi_mod(wQc2 + lambda * Q2, A2, Q2, pout2)) /
               (rbar * lam2 * Abar);
    };

    const std::vector<double> hscale = {Abar, lambda * Abar, Abar, lambda * Abar,
                                        Abar, lambda * Abar};
    const double Asum = child1_tr.A + child2_tr.A;
    const std::vector<std::vector<double>> starts = {
        {tN.A, tN.Q, child1_tr.A, tN.Q * child1_tr.A / Asum, child2_tr.A,
         tN.Q * child2_tr.A / Asum},
        {tN.A, child1_tr.Q + child2_tr.Q, child1_tr.A, child1_tr.Q, child2_tr.A,
         child2_tr.Q},
        {pin.A0, tN.Q, pout1.A0, tN.Q * pout1.A0 / (pout1.A0 + pout2.A0), pout2.A0,
         tN.Q * pout2.A0 / (pout1.A0 + pout2.A0)},
    };
    NewtonOutcome bestr;
    for (const auto& x0 : starts) {
        auto out = damped_newton(f, 6, x0, hscale, 200, 1e-13);
        if (out.rmax < bestr.rmax) bestr = std::move(out);
        if (bestr.rmax <= 1e-13) break;
    }
    if (bestr.rmax > 1e-9) throw SolverError("junction solve did not converge");

    JunctionStates12 out;
    out.parent = PointState{bestr.x[0], bestr.x[1], tN.VA - lambda * (bestr.x[0] - tN.A),
                            tN.VQ - lambda * (bestr.x[1] - tN.Q)};
    out.child1 =
        PointState{bestr.x[2], bestr.x[3], child1_tr.VA + lambda * (bestr.x[2] - child1_tr.A),
                   child1_tr.VQ + lambda * (bestr.x[3] - child1_tr.Q)};
    out.child2 =
        PointState{bestr.x[4], bestr.x[5], child2_tr.VA + lambda * (bestr.x[4] - child2_tr.A),
                   child2_tr.VQ + lambda * (bestr.x[5] - child2_tr.Q)};
    return out;
}

CouplingErrors coupling_errors_11(const PointState& parent_tr, const PointState& child_tr,
                                  const VesselParams& pin, const VesselParams& pout,
                                  ModelForm form) {
    CouplingErrors e;
    const double Qp = form == ModelForm::Flow ? parent_tr.Q : parent_tr.A * parent_tr.Q;
    const double Qc = form == ModelForm::Flow ? child_tr.Q : child_tr.A * child_tr.Q;
    e.flow = std::fabs(Qp - Qc);
    e.total_pressure =
        std::fabs(total_pressure(parent_tr, pin, form) - total_pressure(child_tr, pout, form));
    return e;
}

CouplingErrors coupling_errors_12(const PointState& parent_tr, const PointState& child1_tr,
                                  const PointState& child2_tr, const VesselParams& pin,
                                  const VesselParams& pout1, const VesselParams& pout2,
                                  ModelForm form) {
    CouplingErrors e;
    const double Qp = form == ModelForm::Flow ? parent_tr.Q : parent_tr.A * parent_tr.Q;
    const double Q1 = form == ModelForm::Flow ? child1_tr.Q : child1_tr.A * child1_tr.Q;
    const double Q2 = form == ModelForm::Flow ? child2_tr.Q : child2_tr.A * child2_tr.Q;
    e.flow = std::fabs(Qp - Q1 - Q2);
    const double pt = total_pressure(parent_tr, pin, form);
    e.total_pressure = std::max(std::fabs(pt - total_pressure(child1_tr, pout1, form)),
                                std::fabs(pt - total_pressure(child2_tr, pout2, form)));
    return e;
}

}  // namespace hemo
