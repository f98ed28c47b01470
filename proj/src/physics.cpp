#include "hemo/physics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hemo/errors.hpp"

namespace hemo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("VesselParams: " + what);
}

}  // namespace

VesselParams make_vessel_params(double E, double h0, double nu, double A0,
                                double rho, double alpha, double mu,
                                double gamma, double Pext) {
    VesselParams p;
    p.E = E;
    p.h0 = h0;
    p.nu = nu;
    p.A0 = A0;
    p.rho = rho;
    p.alpha = alpha;
    p.mu = mu;
    p.gamma = gamma;
    p.Pext = Pext;
    if (!(nu >= 0.0 && nu < 1.0))
        throw std::invalid_argument("VesselParams: nu must lie in [0, 1)");
    if (!(E >= 0.0) || !(h0 >= 0.0))
        throw std::invalid_argument("VesselParams: E and h0 must be >= 0");
    if (!(A0 > 0.0)) throw std::invalid_argument("VesselParams: A0 must be > 0");
    p.beta = std::sqrt(kPi) * h0 * E / ((1.0 - nu * nu) * A0);
    validate(p);
    return p;
}

VesselParams vessel_params_from_beta(double beta, double A0, double rho,
                                     double alpha, double mu, double gamma,
                                     double Pext) {
    VesselParams p;
    p.beta = beta;
    p.A0 = A0;
    p.rho = rho;
    p.alpha = alpha;
    p.mu = mu;
    p.gamma = gamma;
    p.Pext = Pext;
    validate(p);
    return p;
}

void validate(const VesselParams& p) {
    require(p.A0 > 0.0, "A0 must be > 0, got " + std::to_string(p.A0));
    require(p.beta >= 0.0, "beta must be >= 0, got " + std::to_string(p.beta));
    require(p.rho > 0.0, "rho must be > 0, got " + std::to_string(p.rho));
    require(p.alpha >= 1.0, "alpha must be >= 1, got " + std::to_string(p.alpha));
    require(p.mu >= 0.0, "mu must be >= 0");
    require(p.gamma >= 0.0, "gamma must be >= 0");
    require(std::isfinite(p.beta) && std::isfinite(p.A0) && std::isfinite(p.rho),
            "parameters must be finite");
}

double profile_exponent(const VesselParams& p) {
    if (p.alpha <= 1.0)
        throw std::domain_error(
            "profile_exponent: undefined for alpha = 1 (flat profile)");
    if (p.alpha >= 2.0)
        throw std::domain_error("profile_exponent: requires alpha < 2");
    return (2.0 - p.alpha) / (p.alpha - 1.0);
}

void validate(const Grid& g) {
    if (!(g.length > 0.0))
        throw std::invalid_argument("Grid: length must be > 0");
    if (g.n_cells == 0)
        throw std::invalid_argument("Grid: n_cells must be >= 1");
    if (!std::isfinite(g.x_left))
        throw std::invalid_argument("Grid: x_left must be finite");
}

void validate(const RunSettings& s) {
    if (!(s.cfl > 0.0 && s.cfl <= 1.0))
        throw std::invalid_argument("RunSettings: cfl must lie in (0, 1], got " +
                                    std::to_string(s.cfl));
    if (s.scheme_order != 1 && s.scheme_order != 2)
        throw std::invalid_argument("RunSettings: scheme_order must be 1 or 2");
    if (!(s.epsilon >= 0.0))
        throw std::invalid_argument("RunSettings: epsilon must be >= 0");
    if (s.lambda_policy.kind == LambdaPolicy::Kind::FixedGlobal &&
        !(s.lambda_policy.value > 0.0))
        throw std::invalid_argument("RunSettings: fixed lambda must be > 0");
    if (!(s.t_end >= 0.0))
        throw std::invalid_argument("RunSettings: t_end must be >= 0");
}

double pressure(const VesselParams& p, double A) {
    if (!(A > 0.0))
        throw std::domain_error("pressure: A must be > 0, got " +
                                std::to_string(A));
    return p.Pext + p.beta * (std::sqrt(A) - std::sqrt(p.A0));
}

double pressure_inverse(const VesselParams& p, double pval) {
    if (!(p.beta > 0.0))
        throw std::domain_error("pressure_inverse: beta must be > 0");
    const double root = (pval - p.Pext) / p.beta + std::sqrt(p.A0);
    if (!(root > 0.0))
        throw std::domain_error(
            "pressure_inverse: pressure " + std::to_string(pval) +
            " lies outside the tube law's range (A would be <= 0)");
    return root * root;
}

double pressure_antiderivative(const VesselParams& p, double A) {
    if (!(A > 0.0)) throw std::domain_error("pressure_antiderivative: A <= 0");
    const double sA = std::sqrt(A);
    const double sA0 = std::sqrt(p.A0);
    return p.A0 * p.Pext + p.Pext * (A - p.A0) +
           p.beta * ((2.0 / 3.0) * (A * sA - p.A0 * sA0) - sA0 * (A - p.A0));
}

std::array<double, 2> flux_flow(const VesselParams& p, double A, double Q) {
    const double pr = pressure(p, A);
    const double P = pressure_antiderivative(p, A);
    return {Q, p.alpha * Q * Q / A + (A * pr - P) / p.rho};
}

std::array<double, 2> flux_velocity(const VesselParams& p, double A, double u) {
    return {A * u, 0.5 * u * u + pressure(p, A) / p.rho};
}

double viscous_source(const VesselParams& p, double A, double Q) {
    if (p.mu == 0.0) return 0.0;
    const double psi = profile_exponent(p);  // rejects alpha = 1
    return -2.0 * kPi * p.mu * (psi + 2.0) * Q / A;
}

double elastic_celerity_sq(const VesselParams& p, double A) {
    if (!(A > 0.0)) throw std::domain_error("elastic_celerity_sq: A <= 0");
    return p.beta * std::sqrt(A) / (2.0 * p.rho);
}

std::array<double, 2> char_speeds_flow(const VesselParams& p, double A,
                                       double Q) {
    const double u = Q / A;
    const double au = p.alpha * u;
    const double rad =
        p.alpha * (p.alpha - 1.0) * u * u + elastic_celerity_sq(p, A);
    const double s = std::sqrt(rad);
    return {au - s, au + s};
}

std::array<double, 2> char_speeds_velocity(const VesselParams& p, double A,
                                           double u) {
    const double c = std::sqrt(elastic_celerity_sq(p, A));
    return {u - c, u + c};
}

double lambda_bound(const VesselParams& p, double A, double Q, ModelForm form) {
    const std::array<double, 2> s = form == ModelForm::Flow
                                        ? char_speeds_flow(p, A, Q)
                                        : char_speeds_velocity(p, A, Q);
    return std::max(std::fabs(s[0]), std::fabs(s[1]));
}

EdgeState make_edge_state(ModelForm form, const VesselParams& p,
                          std::vector<double> A, std::vector<double> Q) {
    if (A.size() != Q.size())
        throw std::invalid_argument("make_edge_state: A and Q sizes differ");
    if (form == ModelForm::Velocity && p.alpha != 1.0)
        throw std::invalid_argument(
            "make_edge_state: the velocity form requires alpha = 1");
    EdgeState st;
    st.form = form;
    st.A = std::move(A);
    st.Q = std::move(Q);
    const std::size_t n = st.A.size();
    st.VA.resize(n);
    st.VQ.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(st.A[i] > 0.0))
            throw std::invalid_argument("make_edge_state: A must be > 0 in cell " +
                                        std::to_string(i));
        const std::array<double, 2> F = form == ModelForm::Flow
                                            ? flux_flow(p, st.A[i], st.Q[i])
                                            : flux_velocity(p, st.A[i], st.Q[i]);
        st.VA[i] = F[0];
        st.VQ[i] = F[1];
    }
    return st;
}

FluxCoef make_flux_coef(const VesselParams& p) {
    FluxCoef c;
    c.alpha = p.alpha;
    c.beta = p.beta;
    c.sqrtA0 = std::sqrt(p.A0);
    c.A0 = p.A0;
    c.Pext = p.Pext;
    c.A0Pext = p.A0 * p.Pext;
    c.A0_32 = p.A0 * c.sqrtA0;
    c.inv_rho = 1.0 / p.rho;
    c.c_aa1 = p.alpha * (p.alpha - 1.0);
    c.bo2r = p.beta / (2.0 * p.rho);
    return c;
}

}  // namespace hemo
