#include "eqq/kicks.hpp"

#include "eqq/model.hpp"

#include <cmath>
#include <numbers>

namespace eqq {

namespace {
constexpr double pi = std::numbers::pi;

int kick_count(int level) { return (1 << level) - 1; }

// depth is 1-based; segment indexes the 2^(depth-1) intervals left to right
std::size_t kick_index(int depth, int segment) {
    return static_cast<std::size_t>(((1 << (depth - 1)) - 1) + segment);
}
} // namespace

void GammaPath::validate(const Params& p) const {
    if (level < 1) throw ValidationError("GammaPath: level must be >= 1");
    if (level > 20) throw ValidationError("GammaPath: level too deep");
    if (static_cast<int>(kicks.size()) != kick_count(level))
        throw ValidationError("GammaPath: kick count must equal 2^level - 1");
    interval.validate();
    for (const Vec& k : kicks) check_point(k, p, "GammaPath");
}

GammaPath GammaPath::zeros(const Params& p, int level, const TimeInterval& iv) {
    GammaPath gp;
    gp.level = level;
    gp.interval = iv;
    gp.kicks.assign(static_cast<std::size_t>(kick_count(level)), Vec(p.dim, 0.0));
    gp.validate(p);
    return gp;
}

Vec kick_from_midpoint(const Vec& x_mid, const Vec& x_prev, const Vec& x_next, double dt) {
    if (!(dt > 0.0)) throw DomainError("kick_from_midpoint: dt must be positive");
    return (2.0 / dt) * (x_mid - 0.5 * (x_prev + x_next));
}

Vec midpoint_from_kick(const Vec& x_prev, const Vec& x_next, const Vec& gamma, double dt) {
    if (!(dt > 0.0)) throw DomainError("midpoint_from_kick: dt must be positive");
    return 0.5 * (x_prev + x_next) + (0.5 * dt) * gamma;
}

namespace {

void fill_positions(const GammaPath& gp, std::vector<Vec>& pos, int depth, int segment, int lo,
                    int hi, double tau) {
    if (depth > gp.level) return;
    const int mid = (lo + hi) / 2;
    const double dt = 0.5 * tau;
    pos[static_cast<std::size_t>(mid)] = midpoint_from_kick(
        pos[static_cast<std::size_t>(lo)], pos[static_cast<std::size_t>(hi)],
        gp.kicks[kick_index(depth, segment)], dt);
    fill_positions(gp, pos, depth + 1, 2 * segment, lo, mid, dt);
    fill_positions(gp, pos, depth + 1, 2 * segment + 1, mid, hi, dt);
}

double action_recursive(const Params& p, const GammaPath& gp, const Vec& a, const Vec& b,
                        int depth, int segment, double tau) {
    if (depth > gp.level) return p.mass * norm2(b - a) / (2.0 * tau);
    const double dt = 0.5 * tau;
    const Vec mid = midpoint_from_kick(a, b, gp.kicks[kick_index(depth, segment)], dt);
    return action_recursive(p, gp, a, mid, depth + 1, 2 * segment, dt) +
           action_recursive(p, gp, mid, b, depth + 1, 2 * segment + 1, dt);
}

} // namespace

std::vector<Vec> gamma_to_positions(const Vec& x_i, const Vec& x_f, const GammaPath& gp) {
    const int n_pts = (1 << gp.level) + 1;
    std::vector<Vec> pos(static_cast<std::size_t>(n_pts));
    pos.front() = x_i;
    pos.back() = x_f;
    fill_positions(gp, pos, 1, 0, 0, n_pts - 1, gp.interval.duration());
    return pos;
}

double eqq_action(const Params& p, const Vec& x_i, const Vec& x_f, const GammaPath& gp) {
    gp.validate(p);
    check_point(x_i, p, "eqq_action");
    check_point(x_f, p, "eqq_action");
    return action_recursive(p, gp, x_i, x_f, 1, 0, gp.interval.duration());
}

double discretized_action(const Params& p, const std::vector<Vec>& positions, double T) {
    if (positions.size() < 2) throw ValidationError("discretized_action: need >= 2 positions");
    if (!(T > 0.0)) throw DomainError("discretized_action: T must be positive");
    const double dt = T / static_cast<double>(positions.size() - 1);
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < positions.size(); ++k)
        s += p.mass * norm2(positions[k + 1] - positions[k]) / (2.0 * dt);
    return s;
}

namespace {

// Quadratic coefficient of the per-node kick integrand exp(i a gamma^2):
// a node whose interval spans tau contributes m tau / (8 hbar).
double node_phase_coeff(const Params& p, double tau) { return p.mass * tau / (8.0 * p.hbar); }

} // namespace

MeasureNorm measure_normalization(const Params& p, int level, double total_time) {
    p.validate();
    if (level < 1) throw ValidationError("measure_normalization: level must be >= 1");
    if (!(total_time > 0.0)) throw DomainError("measure_normalization: T must be positive");

    MeasureNorm out;
    out.level = level;
    cplx c(1.0, 0.0);
    double tau = total_time;
    for (int depth = 1; depth <= level; ++depth) {
        const cplx per_axis =
            fresnel_integral({cplx(node_phase_coeff(p, tau), 0.0), cplx(0.0, 0.0)});
        const int nodes = 1 << (depth - 1);
        for (int j = 0; j < nodes; ++j)
            for (int ax = 0; ax < p.dim; ++ax) c /= per_axis;
        tau *= 0.5;
    }
    out.c_measured = c;
    const int n_kicks = kick_count(level);
    out.c_paper =
        rotated_root(total_time * p.mass / (2.0 * pi * p.hbar), p.dim * n_kicks);
    return out;
}

EqqKernelResult eqq_kernel(const Params& p, const Vec& x_i, const Vec& x_f,
                           const TimeInterval& iv, int level, const QuadratureSpec& spec) {
    p.validate();
    iv.validate();
    check_point(x_i, p, "eqq_kernel");
    check_point(x_f, p, "eqq_kernel");
    if (level < 1) throw ValidationError("eqq_kernel: level must be >= 1");
    const double T = iv.duration();

    const MeasureNorm norm = measure_normalization(p, level, T);
    const cplx pref = rotated_root(p.mass / (2.0 * pi * p.hbar * T), p.dim);
    const double s_line = p.mass * norm2(x_f - x_i) / (2.0 * T);
    const cplx line_phase = std::exp(cplx(0.0, s_line / p.hbar));

    // Analytic route: closed-form kick integrals, node by node.
    cplx analytic_product(1.0, 0.0);
    {
        double tau = T;
        for (int depth = 1; depth <= level; ++depth) {
            const cplx per_axis =
                fresnel_integral({cplx(node_phase_coeff(p, tau), 0.0), cplx(0.0, 0.0)});
            const int nodes = 1 << (depth - 1);
            for (int j = 0; j < nodes; ++j)
                for (int ax = 0; ax < p.dim; ++ax) analytic_product *= per_axis;
            tau *= 0.5;
        }
    }

    // Brute-force route: each node's 1-d integral of the action difference
    // produced by that kick alone, evaluated through eqq_action so the
    // recursion itself is exercised.
    cplx brute_product(1.0, 0.0);
    const GammaPath base = GammaPath::zeros(p, level, iv);
    const double s_zero = eqq_action(p, x_i, x_f, base);
    {
        double tau = T;
        std::size_t node = 0;
        for (int depth = 1; depth <= level; ++depth) {
            const int nodes = 1 << (depth - 1);
            for (int j = 0; j < nodes; ++j, ++node) {
                // The action difference of a single kick is exactly
                // quadratic with its minimum at zero, so one evaluation of
                // the recursion fixes the integrand for all g.
                GammaPath gp = base;
                gp.kicks[node][0] = 1.0;
                const double unit = eqq_action(p, x_i, x_f, gp) - s_zero;
                auto integrand = [&p, unit](cplx g) {
                    return std::exp(cplx(0.0, 1.0) * (unit / p.hbar) * g * g);
                };
                QuadratureSpec node_spec = QuadratureSpec::for_phase(node_phase_coeff(p, tau));
                node_spec.points = std::max(node_spec.points, spec.points);
                node_spec.epsilon = spec.epsilon;
                const cplx per_axis = oscillatory_integral(integrand, node_spec);
                for (int ax = 0; ax < p.dim; ++ax) brute_product *= per_axis;
            }
            tau *= 0.5;
        }
    }

    EqqKernelResult out;
    out.norm = norm;
    out.analytic = {pref * line_phase * norm.c_measured * analytic_product};
    out.brute_force = {pref * line_phase * norm.c_measured * brute_product};
    return out;
}

Vec general_slice_kick(const Vec& x_s, const Vec& x_i, const Vec& x_f, double s, double t) {
    if (!(s > 0.0) || !(s < t))
        throw DomainError("general_slice_kick: degenerate slice (need 0 < s < t)");
    const Vec line = x_i + (s / t) * (x_f - x_i);
    return (t / (s * (t - s))) * (x_s - line);
}

KickStep velocity_kick_variables(const Vec& x_i, const Vec& v_i, const Vec& gamma, double dt) {
    if (!(dt > 0.0)) throw DomainError("velocity_kick_variables: dt must be positive");
    KickStep out;
    out.v_f = v_i - gamma;
    out.x_f = x_i + dt * out.v_f;
    return out;
}

} // namespace eqq
