// Position-variable time-sliced propagators: Kolmogorov composition of two
// kernels, N-slice kernels with the normalized measure, and convergence-rate
// measurement against the closed forms.
#pragma once

#include <functional>
#include <optional>

#include "eqq/numerics.hpp"
#include "eqq/types.hpp"

namespace eqq {

struct Foliation {
    int n_slices = 1;
    TimeInterval interval;

    double dt() const { return interval.duration() / n_slices; }
    void validate() const {
        if (n_slices < 1) throw ValidationError("Foliation: n_slices must be >= 1");
        interval.validate();
    }
};

struct SlicedResult {
    KernelValue value;
    int n_slices = 1;
    std::optional<double> error_vs_exact; // present only when a closed form exists
};

// Per-axis kernel evaluator, analytic in both endpoints.
using AxisKernel = std::function<cplx(cplx, cplx)>;

// Kolmogorov composition int dx_b k_ab(x_a, x_b) k_bc(x_b, x_c), one
// oscillatory quadrature per axis. The contour pivots on stationary_hint
// when given (useful for strongly asymmetric sub-intervals, where the
// stationary point sits far from the endpoint midpoint).
KernelValue compose(const Params& p, const AxisKernel& k_ab, const AxisKernel& k_bc,
                    const Vec& x_a, const Vec& x_c, const QuadratureSpec& spec,
                    const std::optional<Vec>& stationary_hint = std::nullopt);

// Same composition through fresnel_integral when both factors are closed
// forms over the given sub-intervals (the analytic route).
KernelValue compose_closed(const Params& p, const Potential& pot, const Vec& x_a, const Vec& x_c,
                           double T_ab, double T_bc);

// N-slice kernel with midpoint potential sampling and the
// (m/(2 i pi hbar dt))^(d(N+1)/2) measure normalization. Free/Harmonic use
// exact Gaussian chaining; polynomial potentials propagate slice by slice on
// a regulated grid.
SlicedResult sliced_kernel(const Params& p, const Potential& pot, const Foliation& fol,
                           const Vec& x_i, const Vec& x_f);

// Least-squares slope of log(error) versus log(N); requires >= 3 results
// carrying error_vs_exact.
double convergence_order(const std::vector<SlicedResult>& results);

} // namespace eqq
