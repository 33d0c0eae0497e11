// Closed-form propagators (free particle and harmonic oscillator) plus the
// classical paths and actions behind them. These are the exact references the
// rest of the engine is validated against.
#pragma once

#include "eqq/types.hpp"

namespace eqq {

// Single source of phase truth for every (i T)^(d/2)-type root in the
// engine: rotated_root(r, k) = r^(k/2) * exp(-i pi k / 4) for r > 0.
// With r = m/(2 pi hbar T) and k = d this is the free-kernel prefactor,
// i.e. (r/i)^(d/2) on the principal branch.
cplx rotated_root(double r, int k);

// Per-axis kernels, analytic in the (possibly complex) endpoints so that
// quadrature oracles can evaluate them on tilted contours.
cplx free_kernel_axis(const Params& p, cplx dx, double T);
cplx harmonic_kernel_axis(const Params& p, double omega, cplx x_a, cplx x_b, double T);

KernelValue free_kernel(const Params& p, const Vec& x_i, const Vec& x_f, const TimeInterval& iv);

// Valid for 0 < omega*T < pi (first caustic excluded, no Maslov
// continuation).
KernelValue harmonic_kernel(const Params& p, double omega, const Vec& x_i, const Vec& x_f,
                            const TimeInterval& iv);

Vec classical_path_harmonic(double omega, const Vec& x_i, const Vec& x_f, const TimeInterval& iv,
                            double t);

// Free or Harmonic only; the sliced/eqq machinery covers everything else.
double classical_action(const Params& p, const Potential& pot, const Vec& x_i, const Vec& x_f,
                        const TimeInterval& iv);

// Throws DomainError unless 0 < omega*T < pi.
void require_caustic_free(double omega, double T);

} // namespace eqq
