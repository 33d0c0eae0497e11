// Core domain types shared by every module: physical parameters, time
// intervals, potentials, kernel values, and the two error categories the
// CLI maps onto exit codes.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace eqq {

using cplx = std::complex<double>;

// A spatial point; size() must equal Params::dim.
using Vec = std::vector<double>;

// Input that violates a documented invariant (bad sizes, ranges, parse
// failures). CLI exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Mathematically out-of-domain request: caustics, non-ordered times,
// degenerate quadratics, unresolvable grids. CLI exit code 3.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Params {
    double mass = 1.0;
    double hbar = 1.0;
    int dim = 1;

    void validate() const {
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw ValidationError("Params: mass must be positive and finite");
        if (!(hbar > 0.0) || !std::isfinite(hbar))
            throw ValidationError("Params: hbar must be positive and finite");
        if (dim < 1 || dim > 3)
            throw ValidationError("Params: dim must be 1, 2 or 3");
    }
};

struct TimeInterval {
    double t_i = 0.0;
    double t_f = 1.0;

    double duration() const { return t_f - t_i; }

    void validate() const {
        if (!std::isfinite(t_i) || !std::isfinite(t_f))
            throw ValidationError("TimeInterval: endpoints must be finite");
        if (!(t_f > t_i))
            throw DomainError("TimeInterval: time ordering requires t_f > t_i");
    }
};

struct Free {};

struct Harmonic {
    double omega = 1.0;
};

// 1-d polynomial, coefficients lowest-to-highest degree. In d > 1 the
// potential acts separably, V(x) = sum over axes of poly(x_axis), which keeps
// the harmonic special case (m Omega^2 |x|^2 / 2) consistent.
struct Polynomial {
    std::vector<double> coeffs;
};

using Potential = std::variant<Free, Harmonic, Polynomial>;

inline bool is_free(const Potential& v) { return std::holds_alternative<Free>(v); }
inline bool is_harmonic(const Potential& v) { return std::holds_alternative<Harmonic>(v); }
inline bool is_polynomial(const Potential& v) { return std::holds_alternative<Polynomial>(v); }

void validate_potential(const Potential& v);

// Per-axis evaluation; analytic in the argument so composition oracles may
// evaluate it on a tilted contour.
template <typename Scalar>
Scalar potential_axis_value(const Potential& v, const Params& p, Scalar x) {
    if (std::holds_alternative<Free>(v)) return Scalar(0);
    if (const auto* h = std::get_if<Harmonic>(&v))
        return 0.5 * p.mass * h->omega * h->omega * x * x;
    const auto& c = std::get<Polynomial>(v).coeffs;
    Scalar acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double potential_value(const Potential& v, const Params& p, const Vec& x);
double potential_axis_gradient(const Potential& v, const Params& p, double x);

struct KernelValue {
    cplx amp{0.0, 0.0};
};

// ---- small vector helpers ----------------------------------------------

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }

inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator*(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline void check_point(const Vec& x, const Params& p, const char* who) {
    if (static_cast<int>(x.size()) != p.dim)
        throw ValidationError(std::string(who) + ": point dimension does not match Params::dim");
    for (double c : x)
        if (!std::isfinite(c)) throw ValidationError(std::string(who) + ": coordinate not finite");
}

} // namespace eqq
