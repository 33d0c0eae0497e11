// Sturm-Liouville spectra of the fluctuation operators, regularized
// determinant ratios, Dirichlet Green's functions, and the finite-dimensional
// Gaussian consistency check.
#pragma once

#include "eqq/types.hpp"

namespace eqq {

struct SLSpectrum {
    double omega = 0.0;
    double T = 1.0;
    std::vector<double> lambdas; // lambda_n = m ((n pi / T)^2 - omega^2)
};

// Dirichlet eigenvalues of -m d^2/dt^2 - m omega^2 on an interval of length
// T; omega = 0 is the free operator.
SLSpectrum sl_eigenvalues(const Params& p, double omega, double T, int n_max);

// Truncated infinite product prod_{n<=n_max} (1 - z^2/n^2), z = omega*T/pi;
// decreases monotonically toward sin(omega T)/(omega T).
double det_ratio_product(double omega_t, long n_max);

struct DetRatio {
    double value = 1.0;    // sin(omega T) / (omega T), per axis
    double exponent = 0.0; // -d/2, the power used in kernel prefactors
};

DetRatio det_ratio_exact(double omega_t, int dim);

// Dirichlet Green's function of -m d^2/dt^2: (t_< - t_i)(t_f - t_>)/(m T).
double green_free(double t, double t_prime, const TimeInterval& iv, double mass);

// Dirichlet Green's function of -m d^2/dt^2 - m omega^2:
// sin(omega (t_< - t_i)) sin(omega (t_f - t_>)) / (m omega sin(omega T)).
double green_harmonic(double t, double t_prime, const TimeInterval& iv, double mass, double omega);

struct FluctuationCheck {
    double det_ratio_discrete = 1.0; // det(harmonic)/det(free), interior grid
    cplx gaussian_ratio{1.0, 0.0};   // finite-dimensional Gaussian integral ratio
};

// Interior grid with M points, h = T/(M+1), standard second differences.
// det_ratio_discrete comes from the tridiagonal recurrence; gaussian_ratio
// from per-mode Fresnel integrals over the operator eigenvalues, equal to
// det_ratio_discrete^(-1/2) up to rounding.
FluctuationCheck discrete_fluctuation_check(const Params& p, double omega, int grid_points,
                                            double T);

} // namespace eqq
