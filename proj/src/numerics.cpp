#include "eqq/numerics.hpp"

#include "eqq/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eqq {

namespace {
constexpr double pi = std::numbers::pi;

template <typename T>
T pairwise_impl(std::span<const T> xs) {
    if (xs.size() <= 32) {
        T s{};
        for (const T& v : xs) s += v;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_impl(xs.subspan(0, half)) + pairwise_impl(xs.subspan(half));
}
} // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_impl(xs); }
cplx pairwise_sum(std::span<const cplx> xs) { return pairwise_impl(xs); }

cplx fresnel_integral(const FresnelCoeff& c) {
    if (c.a == cplx(0.0, 0.0))
        throw DomainError("fresnel_integral: degenerate quadratic (a = 0)");
    if (c.a.imag() < -1e-300)
        throw ValidationError("fresnel_integral: Im(a) < 0 diverges; apply a regulator first");
    const cplx i(0.0, 1.0);
    return std::sqrt(i * pi / c.a) * std::exp(-i * c.b * c.b / (4.0 * c.a));
}

void QuadratureSpec::validate() const {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw ValidationError("QuadratureSpec: half_width must be positive");
    if (points < 3 || points % 2 == 0)
        throw ValidationError("QuadratureSpec: points must be odd and >= 3");
    if (epsilon < 0.0 || epsilon > 0.1)
        throw ValidationError("QuadratureSpec: epsilon must lie in [0, 0.1]");
}

QuadratureSpec QuadratureSpec::for_phase(double phase_coeff, double extra_width) {
    if (!(phase_coeff > 0.0))
        throw ValidationError("QuadratureSpec::for_phase: phase coefficient must be positive");
    QuadratureSpec s;
    s.half_width = 20.0 / std::sqrt(phase_coeff) + extra_width;
    const double oscillations = phase_coeff * s.half_width * s.half_width / pi;
    int m = std::max(4001, static_cast<int>(16.0 * oscillations) + 1);
    if (m % 2 == 0) ++m;
    s.points = m;
    s.epsilon = 0.1;
    return s;
}

namespace {

// One trapezoid pass of (1 + i*tilt) f(center + (1 + i*tilt) x) with the
// Gaussian envelope exp(-env x^2 / L^2).
cplx regulated_pass(const std::function<cplx(cplx)>& f, const QuadratureSpec& spec, double center,
                    double tilt, double env) {
    const double L = spec.half_width;
    const int M = spec.points;
    const double h = 2.0 * L / (M - 1);
    const cplx slope(1.0, tilt);
    std::vector<cplx> terms(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double x = -L + h * j;
        const double damp = env == 0.0 ? 1.0 : std::exp(-env * x * x / (L * L));
        cplx v = f(center + slope * x) * damp;
        if (j == 0 || j == M - 1) v *= 0.5;
        terms[static_cast<std::size_t>(j)] = v;
    }
    return slope * h * pairwise_sum(std::span<const cplx>(terms));
}

} // namespace

cplx oscillatory_quadrature(const std::function<cplx(double)>& f, const QuadratureSpec& spec) {
    spec.validate();
    auto g = [&f](cplx z) { return f(z.real()); };
    return regulated_pass(g, spec, 0.0, 0.0, spec.epsilon);
}

cplx oscillatory_integral(const std::function<cplx(cplx)>& f, const QuadratureSpec& spec,
                          double center) {
    spec.validate();
    if (spec.epsilon == 0.0) return regulated_pass(f, spec, center, 0.0, 0.0);
    // Tilt and envelope share each extrapolation value so both biases vanish
    // in the eps -> 0 limit.
    const cplx f1 = regulated_pass(f, spec, center, spec.epsilon, spec.epsilon);
    const cplx f2 = regulated_pass(f, spec, center, spec.epsilon / 2.0, spec.epsilon / 2.0);
    const cplx f3 = regulated_pass(f, spec, center, spec.epsilon / 4.0, spec.epsilon / 4.0);
    return (8.0 * f3 - 6.0 * f2 + f1) / 3.0;
}

cplx tridiag_det(const TridiagComplex& t) {
    const std::size_t n = t.diag.size();
    if (n == 0) throw ValidationError("tridiag_det: empty matrix");
    if (t.off.size() + 1 != n)
        throw ValidationError("tridiag_det: off-diagonal must have size diag.size() - 1");
    cplx d_prev2(1.0, 0.0);
    cplx d_prev1 = t.diag[0];
    for (std::size_t k = 1; k < n; ++k) {
        const cplx d = t.diag[k] * d_prev1 - t.off[k - 1] * t.off[k - 1] * d_prev2;
        d_prev2 = d_prev1;
        d_prev1 = d;
    }
    return d_prev1;
}

namespace {

// Trapezoid potential sampling, -dt (V(x_k) + V(x_{k+1}))/2 per slice. This
// is the discretization whose kernels converge at second order; sampling V
// at the slice midpoint instead leaves a coherent per-slice defect and only
// first-order convergence.
struct SliceQuadratic {
    double diag;  // interior diagonal of the action Hessian, units m/dt
    double off;   // interior off-diagonal
    double bnd;   // coefficient tying x_1 (x_{N-1}) to the boundary value
    double cquad; // coefficient of (x_a^2 + x_b^2) in the constant part
};

SliceQuadratic slice_quadratic(const Params& p, double omega, double dt) {
    const double kin = p.mass / dt;
    const double w2 = omega * omega * dt * p.mass;
    SliceQuadratic q;
    q.diag = 2.0 * kin - w2;
    q.off = -kin;
    q.bnd = q.off;
    q.cquad = 0.5 * kin - 0.25 * w2;
    return q;
}

} // namespace

cplx chain_gaussian_axis(const Params& p, const Potential& pot, int n_slices, cplx x_a, cplx x_b,
                         double T) {
    if (n_slices < 1) throw ValidationError("chain_gaussian: n_slices must be >= 1");
    if (!(T > 0.0)) throw DomainError("chain_gaussian: time ordering requires T > 0");
    double omega = 0.0;
    if (const auto* h = std::get_if<Harmonic>(&pot))
        omega = h->omega;
    else if (!is_free(pot))
        throw DomainError("chain_gaussian: exact chaining exists only for Free and Harmonic");

    const int N = n_slices;
    const double dt = T / N;
    const cplx i(0.0, 1.0);
    const cplx pref = rotated_root(p.mass / (2.0 * pi * p.hbar * dt), 1);
    const SliceQuadratic q = slice_quadratic(p, omega, dt);

    if (N == 1) {
        const cplx dx = x_b - x_a;
        const cplx action = p.mass * dx * dx / (2.0 * dt) -
                            0.5 * dt *
                                (potential_axis_value(pot, p, x_a) +
                                 potential_axis_value(pot, p, x_b));
        return pref * std::exp(i * action / p.hbar);
    }

    // Interior quadratic form, scaled by kin = m/dt to keep the determinant
    // recurrence O(N) instead of O((m/dt)^N).
    const double kin = p.mass / dt;
    const double ad = q.diag / kin;
    const double ao = q.off / kin;
    const int n_int = N - 1;

    std::vector<double> e(static_cast<std::size_t>(n_int) + 1);
    e[0] = 1.0;
    e[1] = ad;
    for (int k = 2; k <= n_int; ++k) e[k] = ad * e[k - 1] - ao * ao * e[k - 2];
    const double det_scaled = e[n_int]; // det(A) / kin^(N-1)
    if (!(det_scaled > 0.0))
        throw DomainError("chain_gaussian: singular interior system (discrete caustic)");

    // Solve A y = b with b_1 = bnd*x_a, b_{N-1} = bnd*x_b (Thomas, real
    // coefficient matrix, complex right-hand side).
    std::vector<cplx> rhs(static_cast<std::size_t>(n_int), cplx(0.0, 0.0));
    rhs[0] += q.bnd * x_a;
    rhs[static_cast<std::size_t>(n_int) - 1] += q.bnd * x_b;
    std::vector<double> cp(static_cast<std::size_t>(n_int));
    std::vector<cplx> dp(static_cast<std::size_t>(n_int));
    cp[0] = q.off / q.diag;
    dp[0] = rhs[0] / q.diag;
    for (int k = 1; k < n_int; ++k) {
        const double denom = q.diag - q.off * cp[k - 1];
        cp[k] = q.off / denom;
        dp[k] = (rhs[k] - q.off * dp[k - 1]) / denom;
    }
    std::vector<cplx> y(static_cast<std::size_t>(n_int));
    y[static_cast<std::size_t>(n_int) - 1] = dp[static_cast<std::size_t>(n_int) - 1];
    for (int k = n_int - 2; k >= 0; --k) y[k] = dp[k] - cp[k] * y[k + 1];

    cplx bTy = q.bnd * x_a * y[0] + q.bnd * x_b * y[static_cast<std::size_t>(n_int) - 1];
    const cplx cconst = q.cquad * (x_a * x_a + x_b * x_b);
    const cplx exponent = (cconst - 0.5 * bTy) / p.hbar;

    // prefactor (m/(2 pi i hbar dt))^(N/2) (2 pi i hbar)^((N-1)/2) det^(-1/2)
    // collapses to one slice prefactor times (kin^(N-1)/det(A))^(1/2).
    return pref * std::sqrt(1.0 / det_scaled) * std::exp(i * exponent);
}

KernelValue chain_gaussian(const Params& p, const Potential& pot, int n_slices, const Vec& x_i,
                           const Vec& x_f, const TimeInterval& iv) {
    p.validate();
    iv.validate();
    check_point(x_i, p, "chain_gaussian");
    check_point(x_f, p, "chain_gaussian");
    cplx amp(1.0, 0.0);
    for (int ax = 0; ax < p.dim; ++ax)
        amp *= chain_gaussian_axis(p, pot, n_slices, x_i[ax], x_f[ax], iv.duration());
    return {amp};
}

GaussLegendre::GaussLegendre(int n) {
    if (n < 1) throw ValidationError("GaussLegendre: need at least one node");
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double x = std::cos(pi * (k + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                p0 = 1.0;
                p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                const double dpf = n * (x * p1 - p0) / (x * x - 1.0);
                nodes[static_cast<std::size_t>(n - 1 - k)] = x;
                weights[static_cast<std::size_t>(n - 1 - k)] = 2.0 / ((1.0 - x * x) * dpf * dpf);
                break;
            }
        }
    }
}

} // namespace eqq
