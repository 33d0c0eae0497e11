#include "eqq/evolution.hpp"

#include "eqq/model.hpp"
#include "eqq/numerics.hpp"

#include <cmath>
#include <numbers>
#include <thread>

namespace eqq {

namespace {
constexpr double pi = std::numbers::pi;
}

double WaveFunction::norm() const {
    double s = 0.0;
    for (const cplx& v : values) s += std::norm(v);
    return std::sqrt(s * grid.h);
}

void WaveFunction::normalize() {
    const double n = norm();
    if (!(n > 0.0)) throw DomainError("WaveFunction: cannot normalize the zero function");
    for (cplx& v : values) v /= n;
}

void WaveFunction::validate() const {
    grid.validate();
    if (static_cast<int>(values.size()) != grid.count)
        throw ValidationError("WaveFunction: value count must match the grid");
}

WaveFunction gaussian_packet(const SpatialGrid& grid, double center, double sigma, double k0) {
    grid.validate();
    if (!(sigma > 0.0)) throw ValidationError("gaussian_packet: sigma must be positive");
    WaveFunction psi;
    psi.grid = grid;
    psi.values.resize(static_cast<std::size_t>(grid.count));
    for (int j = 0; j < grid.count; ++j) {
        const double u = (grid.x(j) - center) / sigma;
        psi.values[static_cast<std::size_t>(j)] =
            std::exp(cplx(-0.5 * u * u, k0 * grid.x(j)));
    }
    psi.normalize();
    return psi;
}

namespace {

// Tridiagonal solve (Thomas) for complex constant off-diagonal systems.
void thomas_solve(std::vector<cplx>& diag, cplx off, std::vector<cplx>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t k = 1; k < n; ++k) {
        const cplx w = off / diag[k - 1];
        diag[k] -= w * off;
        rhs[k] -= w * rhs[k - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) rhs[k] = (rhs[k] - off * rhs[k + 1]) / diag[k];
}

} // namespace

WaveFunction discrete_ground_state(const SpatialGrid& grid, const Params& p, double omega,
                                   double* energy_out) {
    grid.validate();
    p.validate();
    const int n = grid.count;
    const double kin = p.hbar * p.hbar / (2.0 * p.mass * grid.h * grid.h);

    WaveFunction psi;
    psi.grid = grid;
    psi.values.resize(static_cast<std::size_t>(n));
    const double sigma = std::sqrt(p.hbar / (p.mass * omega));
    for (int j = 0; j < n; ++j) {
        const double u = grid.x(j) / sigma;
        psi.values[static_cast<std::size_t>(j)] = std::exp(-0.5 * u * u);
    }
    psi.normalize();

    // inverse iteration on (H - shift) with shift below E0
    const double shift = 0.25 * p.hbar * omega;
    std::vector<cplx> diag_base(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double x = grid.x(j);
        diag_base[static_cast<std::size_t>(j)] =
            2.0 * kin + 0.5 * p.mass * omega * omega * x * x - shift;
    }
    for (int it = 0; it < 60; ++it) {
        std::vector<cplx> diag = diag_base;
        std::vector<cplx> rhs = psi.values;
        thomas_solve(diag, cplx(-kin, 0.0), rhs);
        psi.values = std::move(rhs);
        psi.normalize();
    }

    if (energy_out) {
        // Rayleigh quotient of the discrete Hamiltonian
        double num = 0.0;
        for (int j = 0; j < n; ++j) {
            const cplx c = psi.values[static_cast<std::size_t>(j)];
            const cplx left = j > 0 ? psi.values[static_cast<std::size_t>(j - 1)] : cplx(0.0);
            const cplx right =
                j + 1 < n ? psi.values[static_cast<std::size_t>(j + 1)] : cplx(0.0);
            const double x = grid.x(j);
            const cplx h_psi = kin * (2.0 * c - left - right) +
                               0.5 * p.mass * omega * omega * x * x * c;
            num += (std::conj(c) * h_psi).real();
        }
        *energy_out = num * grid.h;
    }
    return psi;
}

WaveFunction evolve_kernel_step(const WaveFunction& psi, const Params& p, const Potential& pot,
                                double dt) {
    psi.validate();
    p.validate();
    if (!(dt > 0.0)) throw DomainError("evolve_kernel_step: dt must be positive");
    const int n = psi.grid.count;
    const double h = psi.grid.h;

    // stationary-phase width must be resolved ...
    if (!(std::sqrt(p.hbar * dt / p.mass) > 2.0 * h))
        throw DomainError("evolve_kernel_step: kernel narrower than the grid can resolve");
    // ... and the alias images of the convolution must fall outside the grid
    const double span = h * (n - 1);
    if (2.0 * pi * p.hbar * dt / (p.mass * h) < 1.05 * span)
        throw DomainError("evolve_kernel_step: alias displacement falls inside the grid; "
                          "refine the grid or enlarge dt");

    const cplx i(0.0, 1.0);
    const cplx pref = rotated_root(p.mass / (2.0 * pi * p.hbar * dt), 1);

    // kinetic factor depends on the index difference, the midpoint potential
    // factor on the index sum
    std::vector<cplx> kin(static_cast<std::size_t>(2 * n - 1));
    for (int d = -(n - 1); d <= n - 1; ++d) {
        const double dx = h * d;
        kin[static_cast<std::size_t>(d + n - 1)] =
            std::exp(i * p.mass * dx * dx / (2.0 * p.hbar * dt));
    }
    std::vector<cplx> potph(static_cast<std::size_t>(2 * n - 1));
    for (int s = 0; s <= 2 * (n - 1); ++s) {
        const double mid = psi.grid.x0 + 0.5 * h * s;
        potph[static_cast<std::size_t>(s)] =
            std::exp(-i * potential_axis_value(pot, p, mid) * dt / p.hbar);
    }

    WaveFunction out;
    out.grid = psi.grid;
    out.time = psi.time + dt;
    out.values.assign(static_cast<std::size_t>(n), cplx(0.0, 0.0));

    auto worker = [&](int lo, int hi) {
        for (int j = lo; j < hi; ++j) {
            cplx acc(0.0, 0.0);
            const cplx* kin_row = kin.data() + (n - 1 - j);
            const cplx* pot_row = potph.data() + j;
            for (int l = 0; l < n; ++l)
                acc += kin_row[l] * pot_row[l] * psi.values[static_cast<std::size_t>(l)];
            out.values[static_cast<std::size_t>(j)] = acc * pref * h;
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (hw == 1 || n < 512) {
        worker(0, n);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n + static_cast<int>(hw) - 1) / static_cast<int>(hw);
        for (unsigned t = 0; t < hw; ++t) {
            const int lo = static_cast<int>(t) * chunk;
            const int hi = std::min(n, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

WaveFunction evolve_fd_step(const WaveFunction& psi, const Params& p, const Potential& pot,
                            double dt) {
    psi.validate();
    p.validate();
    if (!(dt > 0.0)) throw DomainError("evolve_fd_step: dt must be positive");
    const int n = psi.grid.count;
    const double kin = p.hbar * p.hbar / (2.0 * p.mass * psi.grid.h * psi.grid.h);
    const cplx i(0.0, 1.0);
    const cplx lam = i * dt / (2.0 * p.hbar);

    // (1 + lam H) psi_next = (1 - lam H) psi, Dirichlet ends
    std::vector<cplx> diag(static_cast<std::size_t>(n));
    std::vector<cplx> rhs(static_cast<std::size_t>(n));
    const cplx off = -lam * kin;
    for (int j = 0; j < n; ++j) {
        const double v = potential_axis_value(pot, p, psi.grid.x(j));
        const cplx hdiag = 2.0 * kin + v;
        diag[static_cast<std::size_t>(j)] = 1.0 + lam * hdiag;
        cplx r = (1.0 - lam * hdiag) * psi.values[static_cast<std::size_t>(j)];
        if (j > 0) r += lam * kin * psi.values[static_cast<std::size_t>(j - 1)];
        if (j + 1 < n) r += lam * kin * psi.values[static_cast<std::size_t>(j + 1)];
        rhs[static_cast<std::size_t>(j)] = r;
    }
    thomas_solve(diag, off, rhs);

    WaveFunction out;
    out.grid = psi.grid;
    out.time = psi.time + dt;
    out.values = std::move(rhs);
    return out;
}

double consistency_order(const WaveFunction& psi0, const Params& p, const Potential& pot,
                         const std::vector<double>& dts) {
    if (dts.size() < 3)
        throw ValidationError("consistency_order: need at least three dt values");
    std::vector<double> lx, ly;
    for (double dt : dts) {
        const WaveFunction a = evolve_kernel_step(psi0, p, pot, dt);
        const WaveFunction b = evolve_fd_step(psi0, p, pot, dt);
        double s = 0.0;
        for (std::size_t k = 0; k < a.values.size(); ++k) s += std::norm(a.values[k] - b.values[k]);
        const double diff = std::sqrt(s * psi0.grid.h);
        if (!(diff > 0.0)) throw DomainError("consistency_order: step difference vanished");
        lx.push_back(std::log(dt));
        ly.push_back(std::log(diff));
    }
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

Observables observables(const WaveFunction& psi, const Potential& pot, const Params& p) {
    psi.validate();
    const int n = psi.grid.count;
    const double h = psi.grid.h;
    Observables out;
    double norm2_acc = 0.0, mx = 0.0, gv = 0.0, mp = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = std::norm(psi.values[static_cast<std::size_t>(j)]);
        const double x = psi.grid.x(j);
        norm2_acc += w;
        mx += x * w;
        gv += potential_axis_gradient(pot, p, x) * w;

        // derivative: fourth-order centered stencil, degrading to second
        // order then one-sided at the edges
        cplx dpsi;
        if (j >= 2 && j + 2 < n) {
            dpsi = (-psi.values[static_cast<std::size_t>(j + 2)] +
                    8.0 * psi.values[static_cast<std::size_t>(j + 1)] -
                    8.0 * psi.values[static_cast<std::size_t>(j - 1)] +
                    psi.values[static_cast<std::size_t>(j - 2)]) /
                   (12.0 * h);
        } else if (j >= 1 && j + 1 < n) {
            dpsi = (psi.values[static_cast<std::size_t>(j + 1)] -
                    psi.values[static_cast<std::size_t>(j - 1)]) /
                   (2.0 * h);
        } else if (j == 0) {
            dpsi = (psi.values[1] - psi.values[0]) / h;
        } else {
            dpsi = (psi.values[static_cast<std::size_t>(n - 1)] -
                    psi.values[static_cast<std::size_t>(n - 2)]) /
                   h;
        }
        mp += (std::conj(psi.values[static_cast<std::size_t>(j)]) * cplx(0.0, -p.hbar) * dpsi)
                  .real();
    }
    out.norm = std::sqrt(norm2_acc * h);
    out.mean_x = mx * h;
    out.mean_gradV = gv * h;
    out.mean_p = mp * h;
    return out;
}

double ehrenfest_residual(const std::vector<Observables>& history, const Params& p, double dt) {
    if (history.size() < 5)
        throw ValidationError("ehrenfest_residual: need at least five samples");
    if (!(dt > 0.0)) throw ValidationError("ehrenfest_residual: dt must be positive");
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < history.size(); ++k) {
        const double acc =
            (history[k + 1].mean_x - 2.0 * history[k].mean_x + history[k - 1].mean_x) / (dt * dt);
        worst = std::max(worst, std::abs(p.mass * acc + history[k].mean_gradV));
    }
    return worst;
}

} // namespace eqq
