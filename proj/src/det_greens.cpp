#include "eqq/det_greens.hpp"

#include "eqq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eqq {

namespace {
constexpr double pi = std::numbers::pi;
}

SLSpectrum sl_eigenvalues(const Params& p, double omega, double T, int n_max) {
    p.validate();
    if (!(T > 0.0)) throw DomainError("sl_eigenvalues: T must be positive");
    if (omega < 0.0) throw ValidationError("sl_eigenvalues: omega must be nonnegative");
    if (n_max < 1) throw ValidationError("sl_eigenvalues: n_max must be >= 1");
    SLSpectrum s;
    s.omega = omega;
    s.T = T;
    s.lambdas.resize(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const double k = n * pi / T;
        s.lambdas[static_cast<std::size_t>(n - 1)] = p.mass * (k * k - omega * omega);
    }
    return s;
}

double det_ratio_product(double omega_t, long n_max) {
    if (!(omega_t > 0.0) || !(omega_t < pi))
        throw DomainError("det_ratio_product: omega*T must lie in (0, pi)");
    if (n_max < 1) throw ValidationError("det_ratio_product: n_max must be >= 1");
    const double z = omega_t / pi;
    // log-space accumulation; each factor is in (0, 1)
    std::vector<double> logs(static_cast<std::size_t>(n_max));
    for (long n = 1; n <= n_max; ++n) {
        const double r = z / static_cast<double>(n);
        logs[static_cast<std::size_t>(n - 1)] = std::log1p(-r * r);
    }
    return std::exp(pairwise_sum(std::span<const double>(logs)));
}

DetRatio det_ratio_exact(double omega_t, int dim) {
    if (!(omega_t > 0.0) || !(omega_t < pi))
        throw DomainError("det_ratio_exact: omega*T must lie in (0, pi)");
    if (dim < 1 || dim > 3) throw ValidationError("det_ratio_exact: dim must be 1..3");
    return {std::sin(omega_t) / omega_t, -0.5 * dim};
}

double green_free(double t, double t_prime, const TimeInterval& iv, double mass) {
    iv.validate();
    if (!(mass > 0.0)) throw ValidationError("green_free: mass must be positive");
    if (!(t > iv.t_i) || !(t < iv.t_f) || !(t_prime > iv.t_i) || !(t_prime < iv.t_f))
        throw DomainError("green_free: times must be interior to the interval");
    const double lo = std::min(t, t_prime);
    const double hi = std::max(t, t_prime);
    return (lo - iv.t_i) * (iv.t_f - hi) / (mass * iv.duration());
}

double green_harmonic(double t, double t_prime, const TimeInterval& iv, double mass,
                      double omega) {
    iv.validate();
    if (!(mass > 0.0)) throw ValidationError("green_harmonic: mass must be positive");
    const double T = iv.duration();
    if (!(omega * T > 0.0) || !(omega * T < pi))
        throw DomainError("green_harmonic: omega*T outside (0, pi)");
    if (!(t > iv.t_i) || !(t < iv.t_f) || !(t_prime > iv.t_i) || !(t_prime < iv.t_f))
        throw DomainError("green_harmonic: times must be interior to the interval");
    const double lo = std::min(t, t_prime);
    const double hi = std::max(t, t_prime);
    return std::sin(omega * (lo - iv.t_i)) * std::sin(omega * (iv.t_f - hi)) /
           (mass * omega * std::sin(omega * T));
}

FluctuationCheck discrete_fluctuation_check(const Params& p, double omega, int grid_points,
                                            double T) {
    p.validate();
    if (grid_points < 3) throw ValidationError("discrete_fluctuation_check: need M >= 3");
    if (!(T > 0.0)) throw DomainError("discrete_fluctuation_check: T must be positive");
    if (omega < 0.0) throw ValidationError("discrete_fluctuation_check: omega must be >= 0");

    const int M = grid_points;
    const double h = T / (M + 1);
    const double kin = p.mass / (h * h); // second-difference scale

    // Scaled determinant recurrence, det / kin^M, for both operators.
    auto scaled_det = [&](double w) {
        const double ad = 2.0 - w * w * h * h;
        double e0 = 1.0, e1 = ad;
        for (int k = 2; k <= M; ++k) {
            const double e = ad * e1 - e0;
            e0 = e1;
            e1 = e;
        }
        return e1;
    };
    const double det_free = scaled_det(0.0);
    const double det_harm = scaled_det(omega);
    if (det_harm == 0.0 || det_free == 0.0)
        throw DomainError("discrete_fluctuation_check: singular matrix (discrete caustic)");

    FluctuationCheck out;
    out.det_ratio_discrete = det_harm / det_free;

    // Gaussian integral over the M interior modes: the eigenvalues of the
    // discrete operator are kin(2 - 2 cos(k pi/(M+1))) - m omega^2, and each
    // mode contributes a Fresnel factor sqrt(i pi / (a_k/(2 hbar))).
    std::vector<cplx> log_terms(static_cast<std::size_t>(M));
    for (int k = 1; k <= M; ++k) {
        const double mode = 2.0 - 2.0 * std::cos(k * pi / (M + 1));
        const double a_free = kin * mode;
        const double a_harm = a_free - p.mass * omega * omega;
        if (a_harm <= 0.0)
            throw DomainError("discrete_fluctuation_check: non-positive mode (discrete caustic)");
        const cplx num = fresnel_integral({cplx(a_harm / (2.0 * p.hbar), 0.0), cplx(0.0, 0.0)});
        const cplx den = fresnel_integral({cplx(a_free / (2.0 * p.hbar), 0.0), cplx(0.0, 0.0)});
        log_terms[static_cast<std::size_t>(k - 1)] = std::log(num / den);
    }
    out.gaussian_ratio = std::exp(pairwise_sum(std::span<const cplx>(log_terms)));
    return out;
}

} // namespace eqq
