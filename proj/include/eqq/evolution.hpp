// Wavefunction evolution on a 1-d grid by kernel convolution, cross-checked
// against a norm-preserving Crank-Nicolson stepper, plus the expectation
// values entering the Ehrenfest relation.
#pragma once

#include "eqq/types.hpp"

namespace eqq {

struct SpatialGrid {
    double x0 = -10.0; // leftmost point
    double h = 0.02;   // spacing
    int count = 1001;

    double x(int i) const { return x0 + h * i; }
    void validate() const {
        if (count < 16) throw ValidationError("SpatialGrid: need at least 16 points");
        if (!(h > 0.0)) throw ValidationError("SpatialGrid: spacing must be positive");
    }
};

struct WaveFunction {
    SpatialGrid grid;
    std::vector<cplx> values;
    double time = 0.0;

    double norm() const;  // sqrt(sum |psi|^2 h)
    void normalize();
    void validate() const;
};

WaveFunction gaussian_packet(const SpatialGrid& grid, double center, double sigma, double k0);

// Ground state of the discrete harmonic Hamiltonian (inverse iteration);
// its |psi| is exactly stationary under evolve_fd_step.
WaveFunction discrete_ground_state(const SpatialGrid& grid, const Params& p, double omega,
                                   double* energy_out = nullptr);

// One step of psi(x_f, t+dt) = int dx_i K(x_i -> x_f; dt) psi(x_i, t) with
// the midpoint potential phase. Throws DomainError when the kernel's
// stationary-phase width or the alias displacement cannot be represented on
// the grid.
WaveFunction evolve_kernel_step(const WaveFunction& psi, const Params& p, const Potential& pot,
                                double dt);

// Crank-Nicolson step for i hbar d_t psi = (-hbar^2/(2m)) psi'' + V psi;
// unconditionally norm-preserving, local error O(dt^3).
WaveFunction evolve_fd_step(const WaveFunction& psi, const Params& p, const Potential& pot,
                            double dt);

// Fitted order of the per-step difference ||kernel_step - fd_step|| over a
// geometric dt list; expected >= 2.
double consistency_order(const WaveFunction& psi0, const Params& p, const Potential& pot,
                         const std::vector<double>& dts);

struct Observables {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double mean_gradV = 0.0;
    double norm = 1.0;
};

Observables observables(const WaveFunction& psi, const Potential& pot, const Params& p);

// max_t | m d^2<x>/dt^2 + <grad V> | over the interior of a uniformly
// sampled history (second central differences).
double ehrenfest_residual(const std::vector<Observables>& history, const Params& p, double dt);

} // namespace eqq
