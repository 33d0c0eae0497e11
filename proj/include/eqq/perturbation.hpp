// Born expansion of the propagator in powers of the potential: orders 0..2,
// with the inner position integrals done by exact complex-Gaussian moments
// and, for the slice-kick cross-check, by quadrature in either the position
// or the kick variable.
#pragma once

#include "eqq/numerics.hpp"
#include "eqq/types.hpp"

namespace eqq {

struct BornTerm {
    int order = 0;
    cplx value{0.0, 0.0};
};

BornTerm born_k0(const Params& p, const Vec& x_i, const Vec& x_f, const TimeInterval& iv);

// K1 = -(i/hbar) int_0^T ds int dx_s K0(x_i -> x_s; s) V(x_s) K0(x_s -> x_f; T-s).
// The x_s integral reduces to moments of a complex Gaussian centered on the
// straight line; the s integral uses Gauss-Legendre panels, exact for
// polynomial potentials.
BornTerm born_k1(const Params& p, const Potential& pot, const Vec& x_i, const Vec& x_f,
                 const TimeInterval& iv, const QuadratureSpec& spec);

// Time-ordered double insertion with three free kernels; correlated
// bivariate Gaussian moments with covariance i hbar g0(s_j, s_k).
BornTerm born_k2(const Params& p, const Potential& pot, const Vec& x_i, const Vec& x_f,
                 const TimeInterval& iv, const QuadratureSpec& spec);

// Inner integral of K1 at fixed slice time s, by quadrature in x_s.
cplx fs_position_form(const Params& p, const Potential& pot, double s, const TimeInterval& iv,
                      const Vec& x_i, const Vec& x_f, const QuadratureSpec& spec);

// The same integral rewritten in the off-center kick variable
// gamma_s = t/(s(t-s)) (x_s - x_line(s)) with Jacobian (s(t-s)/t)^d; equal to
// fs_position_form because the substitution is linear and exact.
cplx fs_gamma_form(const Params& p, const Potential& pot, double s, const TimeInterval& iv,
                   const Vec& x_i, const Vec& x_f, const QuadratureSpec& spec);

} // namespace eqq
