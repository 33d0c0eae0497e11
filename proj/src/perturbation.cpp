#include "eqq/perturbation.hpp"

#include "eqq/det_greens.hpp"
#include "eqq/model.hpp"

#include <cmath>

namespace eqq {

namespace {

std::vector<double> poly_coeffs(const Potential& pot, const Params& p) {
    if (is_free(pot)) return {};
    if (const auto* h = std::get_if<Harmonic>(&pot))
        return {0.0, 0.0, 0.5 * p.mass * h->omega * h->omega};
    return std::get<Polynomial>(pot).coeffs;
}

// Moments of the complex Gaussian with mean mu and second central moment c2.
std::vector<cplx> gaussian_moments(cplx mu, cplx c2, int p_max) {
    std::vector<cplx> m(static_cast<std::size_t>(p_max) + 1);
    m[0] = 1.0;
    if (p_max >= 1) m[1] = mu;
    for (int k = 2; k <= p_max; ++k)
        m[static_cast<std::size_t>(k)] =
            mu * m[static_cast<std::size_t>(k - 1)] + (k - 1.0) * c2 * m[static_cast<std::size_t>(k - 2)];
    return m;
}

cplx poly_mean(const std::vector<double>& coeffs, cplx mu, cplx c2) {
    if (coeffs.empty()) return {0.0, 0.0};
    const auto m = gaussian_moments(mu, c2, static_cast<int>(coeffs.size()) - 1);
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * m[k];
    return acc;
}

// Bivariate moments <x1^p x2^q> of the correlated complex Gaussian.
cplx bivariate_moment(int p_max, int q_max, cplx mu1, cplx mu2, cplx c11, cplx c22, cplx c12,
                      const std::vector<double>& cf1, const std::vector<double>& cf2) {
    const int P = p_max, Q = q_max;
    std::vector<std::vector<cplx>> m(static_cast<std::size_t>(P) + 1,
                                     std::vector<cplx>(static_cast<std::size_t>(Q) + 1));
    m[0][0] = 1.0;
    for (int q = 1; q <= Q; ++q)
        m[0][q] = mu2 * m[0][q - 1] + (q >= 2 ? (q - 1.0) * c22 * m[0][q - 2] : cplx(0.0));
    for (int p = 1; p <= P; ++p)
        for (int q = 0; q <= Q; ++q)
            m[p][q] = mu1 * m[p - 1][q] + (p >= 2 ? (p - 1.0) * c11 * m[p - 2][q] : cplx(0.0)) +
                      (q >= 1 ? static_cast<double>(q) * c12 * m[p - 1][q - 1] : cplx(0.0));
    cplx acc(0.0, 0.0);
    for (std::size_t a = 0; a < cf1.size(); ++a)
        for (std::size_t b = 0; b < cf2.size(); ++b)
            if (cf1[a] != 0.0 && cf2[b] != 0.0) acc += cf1[a] * cf2[b] * m[a][b];
    return acc;
}

Vec line_point(const Vec& x_i, const Vec& x_f, double s, double T) {
    return x_i + (s / T) * (x_f - x_i);
}

// <V(x(s))> over the free fluctuation ensemble; per-axis Gaussian with
// variance i hbar s(T-s)/(m T).
cplx mean_potential(const Params& p, const std::vector<double>& coeffs, const Vec& x_i,
                    const Vec& x_f, double s, double T) {
    const cplx c2 = cplx(0.0, p.hbar * s * (T - s) / (p.mass * T));
    const Vec xl = line_point(x_i, x_f, s, T);
    cplx acc(0.0, 0.0);
    for (int ax = 0; ax < p.dim; ++ax) acc += poly_mean(coeffs, cplx(xl[ax], 0.0), c2);
    return acc;
}

// Gauss-Legendre value of int_0^T f(s) ds with a doubling convergence check;
// exact for the polynomial integrands this module produces.
cplx gl_integral(const std::function<cplx(double)>& f, double T, int base_nodes) {
    auto eval = [&](int n) {
        const GaussLegendre gl(n);
        std::vector<cplx> terms(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double s = 0.5 * T * (gl.nodes[static_cast<std::size_t>(k)] + 1.0);
            terms[static_cast<std::size_t>(k)] = gl.weights[static_cast<std::size_t>(k)] * f(s);
        }
        return 0.5 * T * pairwise_sum(std::span<const cplx>(terms));
    };
    cplx prev = eval(base_nodes);
    for (int n = 2 * base_nodes; n <= 8 * base_nodes; n *= 2) {
        const cplx cur = eval(n);
        if (std::abs(cur - prev) <= 1e-12 * (std::abs(cur) + 1e-300)) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace

BornTerm born_k0(const Params& p, const Vec& x_i, const Vec& x_f, const TimeInterval& iv) {
    return {0, free_kernel(p, x_i, x_f, iv).amp};
}

BornTerm born_k1(const Params& p, const Potential& pot, const Vec& x_i, const Vec& x_f,
                 const TimeInterval& iv, const QuadratureSpec& spec) {
    p.validate();
    iv.validate();
    spec.validate();
    check_point(x_i, p, "born_k1");
    check_point(x_f, p, "born_k1");
    if (is_free(pot)) return {1, cplx(0.0, 0.0)};
    const double T = iv.duration();
    const auto coeffs = poly_coeffs(pot, p);
    const cplx k0 = free_kernel(p, x_i, x_f, iv).amp;
    const cplx integral = gl_integral(
        [&](double s) { return mean_potential(p, coeffs, x_i, x_f, s, T); }, T, 32);
    return {1, -cplx(0.0, 1.0 / p.hbar) * k0 * integral};
}

BornTerm born_k2(const Params& p, const Potential& pot, const Vec& x_i, const Vec& x_f,
                 const TimeInterval& iv, const QuadratureSpec& spec) {
    p.validate();
    iv.validate();
    spec.validate();
    check_point(x_i, p, "born_k2");
    check_point(x_f, p, "born_k2");
    if (is_free(pot)) return {2, cplx(0.0, 0.0)};
    const double T = iv.duration();
    const auto coeffs = poly_coeffs(pot, p);
    const int deg = static_cast<int>(coeffs.size()) - 1;
    const cplx k0 = free_kernel(p, x_i, x_f, iv).amp;
    const TimeInterval unit{0.0, T};

    // <V(x(s1)) V(x(s2))>: same-axis pairs need the correlated bivariate
    // moments, distinct axes factorize.
    auto corr = [&](double s1, double s2) {
        const Vec l1 = line_point(x_i, x_f, s1, T);
        const Vec l2 = line_point(x_i, x_f, s2, T);
        const cplx c11(0.0, p.hbar * green_free(s1, s1, unit, p.mass));
        const cplx c22(0.0, p.hbar * green_free(s2, s2, unit, p.mass));
        const cplx c12(0.0, p.hbar * green_free(s1, s2, unit, p.mass));
        cplx acc(0.0, 0.0);
        for (int a = 0; a < p.dim; ++a) {
            for (int b = 0; b < p.dim; ++b) {
                if (a == b) {
                    acc += bivariate_moment(deg, deg, cplx(l1[a], 0.0), cplx(l2[b], 0.0), c11,
                                            c22, c12, coeffs, coeffs);
                } else {
                    acc += poly_mean(coeffs, cplx(l1[a], 0.0), c11) *
                           poly_mean(coeffs, cplx(l2[b], 0.0), c22);
                }
            }
        }
        return acc;
    };

    // time-ordered simplex 0 < s1 < s2 < T
    const cplx integral = gl_integral(
        [&](double s2) {
            return gl_integral([&](double s1) { return corr(s1, s2); }, s2, 24);
        },
        T, 24);
    return {2, -(1.0 / (p.hbar * p.hbar)) * k0 * integral};
}

cplx fs_position_form(const Params& p, const Potential& pot, double s, const TimeInterval& iv,
                      const Vec& x_i, const Vec& x_f, const QuadratureSpec& spec) {
    p.validate();
    iv.validate();
    check_point(x_i, p, "fs_position_form");
    check_point(x_f, p, "fs_position_form");
    const double T = iv.duration();
    if (!(s > 0.0) || !(s < T)) throw DomainError("fs_position_form: degenerate slice time");
    if (p.dim != 1)
        throw ValidationError("fs_position_form: slice-kick cross-check is one-dimensional");

    const double xi = x_i[0], xf = x_f[0];
    const double a_phase = p.mass * T / (2.0 * p.hbar * s * (T - s));
    const double xl = xi + (s / T) * (xf - xi);
    QuadratureSpec qs = QuadratureSpec::for_phase(a_phase);
    qs.points = std::max(qs.points, spec.points);
    qs.epsilon = spec.epsilon;
    auto integrand = [&](cplx xs) {
        return free_kernel_axis(p, xs - xi, s) * potential_axis_value(pot, p, xs) *
               free_kernel_axis(p, cplx(xf, 0.0) - xs, T - s);
    };
    return oscillatory_integral(integrand, qs, xl);
}

cplx fs_gamma_form(const Params& p, const Potential& pot, double s, const TimeInterval& iv,
                   const Vec& x_i, const Vec& x_f, const QuadratureSpec& spec) {
    p.validate();
    iv.validate();
    check_point(x_i, p, "fs_gamma_form");
    check_point(x_f, p, "fs_gamma_form");
    const double T = iv.duration();
    if (!(s > 0.0) || !(s < T)) throw DomainError("fs_gamma_form: degenerate slice time");
    if (p.dim != 1)
        throw ValidationError("fs_gamma_form: slice-kick cross-check is one-dimensional");

    const double xi = x_i[0], xf = x_f[0];
    const double jac = s * (T - s) / T;
    const double a_gamma = p.mass * T / (2.0 * p.hbar * s * (T - s)) * jac * jac;
    const double xl = xi + (s / T) * (xf - xi);
    QuadratureSpec qs = QuadratureSpec::for_phase(a_gamma);
    qs.points = std::max(qs.points, spec.points);
    qs.epsilon = spec.epsilon;
    auto integrand = [&](cplx gamma) {
        const cplx xs = xl + jac * gamma;
        return jac * free_kernel_axis(p, xs - xi, s) * potential_axis_value(pot, p, xs) *
               free_kernel_axis(p, cplx(xf, 0.0) - xs, T - s);
    };
    return oscillatory_integral(integrand, qs, 0.0);
}

} // namespace eqq
