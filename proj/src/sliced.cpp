#include "eqq/sliced.hpp"

#include "eqq/model.hpp"

#include <cmath>
#include <numbers>

namespace eqq {

namespace {
constexpr double pi = std::numbers::pi;
}

KernelValue compose(const Params& p, const AxisKernel& k_ab, const AxisKernel& k_bc,
                    const Vec& x_a, const Vec& x_c, const QuadratureSpec& spec,
                    const std::optional<Vec>& stationary_hint) {
    p.validate();
    check_point(x_a, p, "compose");
    check_point(x_c, p, "compose");
    if (stationary_hint) check_point(*stationary_hint, p, "compose");
    cplx amp(1.0, 0.0);
    for (int ax = 0; ax < p.dim; ++ax) {
        const double a = x_a[ax];
        const double c = x_c[ax];
        const double pivot = stationary_hint ? (*stationary_hint)[ax] : 0.5 * (a + c);
        auto integrand = [&](cplx xb) { return k_ab(a, xb) * k_bc(xb, c); };
        amp *= oscillatory_integral(integrand, spec, pivot);
    }
    return {amp};
}

KernelValue compose_closed(const Params& p, const Potential& pot, const Vec& x_a, const Vec& x_c,
                           double T_ab, double T_bc) {
    p.validate();
    check_point(x_a, p, "compose_closed");
    check_point(x_c, p, "compose_closed");
    if (!(T_ab > 0.0) || !(T_bc > 0.0))
        throw DomainError("compose_closed: sub-interval durations must be positive");

    cplx amp(1.0, 0.0);
    const cplx i(0.0, 1.0);
    for (int ax = 0; ax < p.dim; ++ax) {
        const double xa = x_a[ax];
        const double xc = x_c[ax];
        FresnelCoeff fc;
        cplx constant;
        cplx prefs;
        if (is_free(pot)) {
            const double g = p.mass / (2.0 * p.hbar);
            fc.a = g * (1.0 / T_ab + 1.0 / T_bc);
            fc.b = -2.0 * g * (xa / T_ab + xc / T_bc);
            constant = g * (xa * xa / T_ab + xc * xc / T_bc);
            prefs = rotated_root(p.mass / (2.0 * pi * p.hbar * T_ab), 1) *
                    rotated_root(p.mass / (2.0 * pi * p.hbar * T_bc), 1);
        } else if (const auto* h = std::get_if<Harmonic>(&pot)) {
            require_caustic_free(h->omega, T_ab);
            require_caustic_free(h->omega, T_bc);
            const double g = p.mass * h->omega / (2.0 * p.hbar);
            const double s1 = std::sin(h->omega * T_ab);
            const double s2 = std::sin(h->omega * T_bc);
            const double c1 = std::cos(h->omega * T_ab);
            const double c2 = std::cos(h->omega * T_bc);
            fc.a = g * (c1 / s1 + c2 / s2);
            fc.b = -2.0 * g * (xa / s1 + xc / s2);
            constant = g * (xa * xa * c1 / s1 + xc * xc * c2 / s2);
            prefs = rotated_root(p.mass * h->omega / (2.0 * pi * p.hbar * s1), 1) *
                    rotated_root(p.mass * h->omega / (2.0 * pi * p.hbar * s2), 1);
        } else {
            throw DomainError("compose_closed: closed forms exist only for Free and Harmonic");
        }
        if (fc.a.real() <= 0.0)
            throw DomainError("compose_closed: composed quadratic degenerates (caustic)");
        amp *= prefs * fresnel_integral(fc) * std::exp(i * constant);
    }
    return {amp};
}

namespace {

// Per-axis slice-by-slice propagation for polynomial potentials: the
// intermediate positions live on the tilted contour u (1 + i delta), where
// the slice chirps decay and the trapezoid sums converge. Valid while the
// potential's growth along the contour stays dominated by the kinetic
// damping, which holds at the short total times this path targets.
cplx sliced_axis_polynomial(const Params& p, const Potential& pot, int N, double x_a, double x_b,
                            double T) {
    const double dt = T / N;
    const double a_slice = p.mass / (2.0 * p.hbar * dt);
    const double delta = 0.05;
    const cplx slope(1.0, delta);
    const cplx i(0.0, 1.0);
    const cplx pref = rotated_root(p.mass / (2.0 * pi * p.hbar * dt), 1);

    auto slice_kernel = [&](cplx za, cplx zb) {
        const cplx dz = zb - za;
        const cplx phase = (p.mass * dz * dz / (2.0 * dt) -
                            0.5 * dt *
                                (potential_axis_value(pot, p, za) +
                                 potential_axis_value(pot, p, zb))) /
                           p.hbar;
        return pref * std::exp(i * phase);
    };

    if (N == 1) return slice_kernel(cplx(x_a, 0.0), cplx(x_b, 0.0));

    const double spread = std::sqrt(p.hbar * T / p.mass);
    const double A = std::max(std::abs(x_a), std::abs(x_b)) + 1.0 + 8.0 * spread;
    int M = std::max(4001, static_cast<int>(16.0 * a_slice * A * A / pi) + 1);
    if (M % 2 == 0) ++M;
    const double h = 2.0 * A / (M - 1);

    std::vector<cplx> z(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) z[j] = slope * (-A + h * j);

    // kinetic factor is Toeplitz in the index difference; the trapezoid
    // potential factor splits into one half-phase per endpoint
    std::vector<cplx> kin(static_cast<std::size_t>(2 * M - 1));
    for (int d = -(M - 1); d <= M - 1; ++d) {
        const cplx dz = slope * (h * d);
        kin[static_cast<std::size_t>(d + M - 1)] =
            pref * std::exp(i * p.mass * dz * dz / (2.0 * dt * p.hbar));
    }
    std::vector<cplx> halfpot(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j)
        halfpot[j] = std::exp(-i * 0.5 * dt * potential_axis_value(pot, p, z[j]) / p.hbar);

    std::vector<cplx> phi(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) phi[j] = slice_kernel(cplx(x_a, 0.0), z[j]);

    std::vector<cplx> weighted(static_cast<std::size_t>(M));
    std::vector<cplx> next(static_cast<std::size_t>(M));
    for (int step = 1; step <= N - 2; ++step) {
        for (int j = 0; j < M; ++j)
            weighted[j] = phi[j] * halfpot[j] * ((j == 0 || j == M - 1) ? 0.5 : 1.0);
        for (int j = 0; j < M; ++j) {
            cplx acc(0.0, 0.0);
            const cplx* kin_row = kin.data() + (M - 1 - j);
            for (int l = 0; l < M; ++l) acc += kin_row[l] * weighted[l];
            next[j] = acc * h * slope * halfpot[j];
        }
        phi.swap(next);
    }

    std::vector<cplx> terms(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double w = (j == 0 || j == M - 1) ? 0.5 : 1.0;
        terms[j] = slice_kernel(z[j], cplx(x_b, 0.0)) * phi[j] * w;
    }
    return pairwise_sum(std::span<const cplx>(terms)) * h * slope;
}

} // namespace

SlicedResult sliced_kernel(const Params& p, const Potential& pot, const Foliation& fol,
                           const Vec& x_i, const Vec& x_f) {
    p.validate();
    fol.validate();
    validate_potential(pot);
    check_point(x_i, p, "sliced_kernel");
    check_point(x_f, p, "sliced_kernel");

    SlicedResult out;
    out.n_slices = fol.n_slices;
    if (is_free(pot) || is_harmonic(pot)) {
        out.value = chain_gaussian(p, pot, fol.n_slices, x_i, x_f, fol.interval);
        const KernelValue exact = is_free(pot)
                                      ? free_kernel(p, x_i, x_f, fol.interval)
                                      : harmonic_kernel(p, std::get<Harmonic>(pot).omega, x_i,
                                                        x_f, fol.interval);
        out.error_vs_exact = std::abs(out.value.amp - exact.amp) / std::abs(exact.amp);
        return out;
    }

    cplx amp(1.0, 0.0);
    for (int ax = 0; ax < p.dim; ++ax)
        amp *= sliced_axis_polynomial(p, pot, fol.n_slices, x_i[ax], x_f[ax],
                                      fol.interval.duration());
    out.value = {amp};
    return out;
}

double convergence_order(const std::vector<SlicedResult>& results) {
    std::vector<double> lx, ly;
    for (const SlicedResult& r : results) {
        if (!r.error_vs_exact) continue;
        if (!(*r.error_vs_exact > 0.0))
            throw ValidationError("convergence_order: errors must be positive");
        lx.push_back(std::log(static_cast<double>(r.n_slices)));
        ly.push_back(std::log(*r.error_vs_exact));
    }
    if (lx.size() < 3)
        throw ValidationError("convergence_order: need >= 3 results with an exact reference");
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sx += lx[k];
        sy += ly[k];
        sxx += lx[k] * lx[k];
        sxy += lx[k] * ly[k];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace eqq
