// Shared numerical kernels: closed-form complex Gaussian (Fresnel) integrals,
// the regulated oscillatory-quadrature oracle, tridiagonal determinants, and
// exact multi-slice Gaussian chaining.
#pragma once

#include <functional>
#include <span>

#include "eqq/types.hpp"

namespace eqq {

// integrand exp(i (a x^2 + b x)); convergent for Im(a) >= 0
struct FresnelCoeff {
    cplx a{0.0, 0.0};
    cplx b{0.0, 0.0};
};

// closed form sqrt(i pi / a) * exp(-i b^2 / (4a)), principal branch,
// consistent with rotated_root
cplx fresnel_integral(const FresnelCoeff& c);

struct QuadratureSpec {
    double half_width = 10.0; // grid truncation L
    int points = 4001;        // M, odd
    double epsilon = 0.1;     // regulator strength; 0 disables the regulator

    void validate() const;

    // Grid sized for a pure quadratic phase exp(i a x^2): the half-width is
    // 20/sqrt(a) so the contour regulator has suppressed the truncated tail
    // below 1e-8 already at epsilon/4, and the point count keeps >= 8 samples
    // per oscillation. extra_width widens the window for slowly varying
    // cofactors.
    static QuadratureSpec for_phase(double phase_coeff, double extra_width = 0.0);
};

// Deterministic pairwise (cascade) summation; independent of data order only
// in the sense that the same sequence always sums identically.
double pairwise_sum(std::span<const double> xs);
cplx pairwise_sum(std::span<const cplx> xs);

// Trapezoid sum of f(x) * exp(-eps x^2 / L^2) over the symmetric grid, as
// documented. The envelope alone does not converge Fresnel-type tails; use
// oscillatory_integral for those.
cplx oscillatory_quadrature(const std::function<cplx(double)>& f, const QuadratureSpec& spec);

// Companion oracle for analytic integrands: evaluates f on the tilted
// contour center + (1 + i*eps_k) x with the matching damping envelope and
// Richardson-extrapolates eps -> 0 over (eps, eps/2, eps/4). For entire
// integrands the tilt is exact by contour deformation, so the extrapolation
// only removes the envelope bias.
cplx oscillatory_integral(const std::function<cplx(cplx)>& f, const QuadratureSpec& spec,
                          double center = 0.0);

struct TridiagComplex {
    std::vector<cplx> diag;
    std::vector<cplx> off; // size diag.size() - 1
};

// determinant of the symmetric tridiagonal matrix via the three-term
// recurrence D_k = diag_k D_{k-1} - off_{k-1}^2 D_{k-2}
cplx tridiag_det(const TridiagComplex& t);

// Exact value of the N-slice propagator for Free/Harmonic: interior
// positions integrated out analytically (tridiagonal quadratic-form
// completion), so the only error is the time discretization. Potential
// sampled as the endpoint average of each slice, which converges at second
// order. Endpoints may be complex (per axis).
cplx chain_gaussian_axis(const Params& p, const Potential& pot, int n_slices, cplx x_a, cplx x_b,
                         double T);
KernelValue chain_gaussian(const Params& p, const Potential& pot, int n_slices, const Vec& x_i,
                           const Vec& x_f, const TimeInterval& iv);

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendre(int n);
};

} // namespace eqq
