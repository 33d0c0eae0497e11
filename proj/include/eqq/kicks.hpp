// Change of variables from intermediate path positions to instantaneous
// velocity kicks on a dyadic foliation: reconstruction, the kick-variable
// action, the measured integral-measure normalization, and the kernel
// rebuilt from kick integrals.
#pragma once

#include "eqq/numerics.hpp"
#include "eqq/types.hpp"

namespace eqq {

// Kick history on a dyadic foliation with 2^level slices. Kicks are stored
// depth-major: the single top kick first, then the two kicks of the half
// intervals left-to-right, and so on; 2^level - 1 in total.
struct GammaPath {
    int level = 1;
    std::vector<Vec> kicks;
    TimeInterval interval;

    void validate(const Params& p) const;
    static GammaPath zeros(const Params& p, int level, const TimeInterval& iv);
};

// Unique kick reproducing x_mid under the averaged equation of motion:
// gamma = (2/dt) (x_mid - (x_prev + x_next)/2).
Vec kick_from_midpoint(const Vec& x_mid, const Vec& x_prev, const Vec& x_next, double dt);

// Inverse map: x_mid = (x_prev + x_next)/2 + gamma dt / 2.
Vec midpoint_from_kick(const Vec& x_prev, const Vec& x_next, const Vec& gamma, double dt);

// Positions on the full foliation (2^level + 1 entries including endpoints),
// built by descending the dyadic tree; level ell uses dt = T / 2^ell.
std::vector<Vec> gamma_to_positions(const Vec& x_i, const Vec& x_f, const GammaPath& gp);

// Kick-variable action via the dyadic recursion; identical to
// discretized_action on the reconstructed positions.
double eqq_action(const Params& p, const Vec& x_i, const Vec& x_f, const GammaPath& gp);

// Flat-space discretized action sum_k m (x_{k+1} - x_k)^2 / (2 dt) on a
// uniformly sampled path.
double discretized_action(const Params& p, const std::vector<Vec>& positions, double T);

struct MeasureNorm {
    int level = 1;
    cplx c_measured{1.0, 0.0}; // constant making the kick integrals reproduce exp(i S_line / hbar)
    cplx c_paper{1.0, 0.0};    // printed claim (T m/(2 i pi hbar))^(d N / 2), kept for comparison
};

// Measures the normalization constant exactly, node by node, through
// fresnel_integral on the per-node quadratic kick coefficients.
MeasureNorm measure_normalization(const Params& p, int level, double total_time);

struct EqqKernelResult {
    KernelValue analytic;    // measured normalization times closed-form kick integrals
    KernelValue brute_force; // same, with the kick integrals done by quadrature
    MeasureNorm norm;
};

// Free-particle kernel rebuilt from the kick representation. The analytic
// route must agree with free_kernel at machine precision; the brute-force
// route to quadrature tolerance.
EqqKernelResult eqq_kernel(const Params& p, const Vec& x_i, const Vec& x_f,
                           const TimeInterval& iv, int level, const QuadratureSpec& spec);

// Off-center slice kick gamma_s = t/(s (t-s)) (x_s - x_line(s)); reduces to
// kick_from_midpoint at s = t/2.
Vec general_slice_kick(const Vec& x_s, const Vec& x_i, const Vec& x_f, double s, double t);

struct KickStep {
    Vec x_f;
    Vec v_f;
};

// Single velocity kick: v_f = v_i - gamma, x_f = x_i + v_f dt. The
// x_i -> gamma substitution at fixed x_f carries Jacobian dt per axis.
KickStep velocity_kick_variables(const Vec& x_i, const Vec& v_i, const Vec& gamma, double dt);

} // namespace eqq
