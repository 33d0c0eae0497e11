#include "eqq/model.hpp"

#include <cmath>
#include <numbers>

namespace eqq {

namespace {
constexpr double pi = std::numbers::pi;
}

void validate_potential(const Potential& v) {
    if (const auto* h = std::get_if<Harmonic>(&v)) {
        if (!(h->omega > 0.0) || !std::isfinite(h->omega))
            throw ValidationError("Harmonic: omega must be positive and finite");
    } else if (const auto* q = std::get_if<Polynomial>(&v)) {
        for (double c : q->coeffs)
            if (!std::isfinite(c)) throw ValidationError("Polynomial: coefficient not finite");
    }
}

double potential_value(const Potential& v, const Params& p, const Vec& x) {
    double s = 0.0;
    for (double c : x) s += potential_axis_value(v, p, c);
    return s;
}

double potential_axis_gradient(const Potential& v, const Params& p, double x) {
    if (std::holds_alternative<Free>(v)) return 0.0;
    if (const auto* h = std::get_if<Harmonic>(&v)) return p.mass * h->omega * h->omega * x;
    const auto& c = std::get<Polynomial>(v).coeffs;
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * c[k];
    return acc;
}

cplx rotated_root(double r, int k) {
    if (!(r > 0.0)) throw DomainError("rotated_root: radicand must be positive");
    return std::pow(r, 0.5 * k) * std::polar(1.0, -pi * k / 4.0);
}

void require_caustic_free(double omega, double T) {
    const double z = omega * T;
    if (!(z > 0.0) || !(z < pi))
        throw DomainError("harmonic kernel: omega*T outside (0, pi); sin(omega*T) caustic");
}

cplx free_kernel_axis(const Params& p, cplx dx, double T) {
    if (!(T > 0.0)) throw DomainError("free kernel: time ordering requires T > 0");
    const cplx pref = rotated_root(p.mass / (2.0 * pi * p.hbar * T), 1);
    return pref * std::exp(cplx(0.0, 1.0) * (p.mass / (2.0 * p.hbar * T)) * dx * dx);
}

cplx harmonic_kernel_axis(const Params& p, double omega, cplx x_a, cplx x_b, double T) {
    require_caustic_free(omega, T);
    const double s = std::sin(omega * T);
    const double c = std::cos(omega * T);
    const cplx pref = rotated_root(p.mass * omega / (2.0 * pi * p.hbar * s), 1);
    const cplx quad = (x_a * x_a + x_b * x_b) * c - 2.0 * x_a * x_b;
    return pref * std::exp(cplx(0.0, 1.0) * (p.mass * omega / (2.0 * p.hbar * s)) * quad);
}

KernelValue free_kernel(const Params& p, const Vec& x_i, const Vec& x_f, const TimeInterval& iv) {
    p.validate();
    iv.validate();
    check_point(x_i, p, "free_kernel");
    check_point(x_f, p, "free_kernel");
    const double T = iv.duration();
    const cplx pref = rotated_root(p.mass / (2.0 * pi * p.hbar * T), p.dim);
    const double d2 = norm2(x_f - x_i);
    return {pref * std::exp(cplx(0.0, p.mass * d2 / (2.0 * p.hbar * T)))};
}

KernelValue harmonic_kernel(const Params& p, double omega, const Vec& x_i, const Vec& x_f,
                            const TimeInterval& iv) {
    p.validate();
    iv.validate();
    check_point(x_i, p, "harmonic_kernel");
    check_point(x_f, p, "harmonic_kernel");
    const double T = iv.duration();
    require_caustic_free(omega, T);
    const double s = std::sin(omega * T);
    const double c = std::cos(omega * T);
    const cplx pref = rotated_root(p.mass * omega / (2.0 * pi * p.hbar * s), p.dim);
    const double quad = (norm2(x_f) + norm2(x_i)) * c - 2.0 * dot(x_i, x_f);
    return {pref * std::exp(cplx(0.0, p.mass * omega * quad / (2.0 * p.hbar * s)))};
}

Vec classical_path_harmonic(double omega, const Vec& x_i, const Vec& x_f, const TimeInterval& iv,
                            double t) {
    iv.validate();
    const double T = iv.duration();
    require_caustic_free(omega, T);
    if (t < iv.t_i || t > iv.t_f)
        throw DomainError("classical_path_harmonic: t outside the interval");
    const double s = std::sin(omega * T);
    const double wa = std::sin(omega * (iv.t_f - t)) / s;
    const double wb = std::sin(omega * (t - iv.t_i)) / s;
    return wa * x_i + wb * x_f;
}

double classical_action(const Params& p, const Potential& pot, const Vec& x_i, const Vec& x_f,
                        const TimeInterval& iv) {
    p.validate();
    iv.validate();
    check_point(x_i, p, "classical_action");
    check_point(x_f, p, "classical_action");
    const double T = iv.duration();
    if (is_free(pot)) return p.mass * norm2(x_f - x_i) / (2.0 * T);
    if (const auto* h = std::get_if<Harmonic>(&pot)) {
        require_caustic_free(h->omega, T);
        const double s = std::sin(h->omega * T);
        const double c = std::cos(h->omega * T);
        return 0.5 * p.mass * h->omega * ((norm2(x_f) + norm2(x_i)) * c - 2.0 * dot(x_i, x_f)) / s;
    }
    throw DomainError("classical_action: closed form exists only for Free and Harmonic");
}

} // namespace eqq
