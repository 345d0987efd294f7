#include "dnls/integrators.hpp"

#include "dnls/errors.hpp"
#include "dnls/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace dnls {

const char* to_string(Scheme s) {
    switch (s) {
    case Scheme::LRI: return "lri";
    case Scheme::Strang: return "strang";
    case Scheme::FD: return "fd";
    }
    return "?";
}

ComplexField phi_v_flow(const ComplexField& w, const ComplexField& xi, double t,
                        double lambda) {
    if (w.grid != xi.grid)
        throw ConfigError("potential and state live on different grids");
    ComplexField out(w.grid);
    for (int j = 0; j < w.size(); ++j) {
        const double phase = -t * (xi[j].real() + lambda * std::norm(w[j]));
        out[j] = std::polar(1.0, phase) * w[j];
    }
    return out;
}

ComplexField strang_step(const ComplexField& u, const ComplexField& xi,
                         const IntegratorConfig& cfg) {
    ComplexField half = phi_v_flow(u, xi, 0.5 * cfg.tau, cfg.lambda);
    ComplexField kin = apply_free_flow(half, cfg.tau);
    return phi_v_flow(kin, xi, 0.5 * cfg.tau, cfg.lambda);
}

namespace {

// F = xi u + lambda |u|^2 u, the explicit part of both FD levels.
ComplexField fd_forcing(const ComplexField& u, const ComplexField& xi,
                        double lambda) {
    ComplexField f(u.grid);
    for (int j = 0; j < u.size(); ++j)
        f[j] = (xi[j].real() + lambda * std::norm(u[j])) * u[j];
    return f;
}

} // namespace

ComplexField fd_first_step(const ComplexField& u0, const ComplexField& xi,
                           const IntegratorConfig& cfg) {
    const double tau = cfg.tau;
    Spectrum su = to_spectrum(u0);
    Spectrum sf = to_spectrum(fd_forcing(u0, xi, cfg.lambda));
    for (int k = 0; k < su.size(); ++k) {
        const double mu = su.grid.frequency_at_index(k);
        su.coeffs[k] = (su.coeffs[k] - cplx(0.0, tau) * sf.coeffs[k]) /
                       cplx(1.0, tau * mu * mu);
    }
    return from_spectrum(su);
}

ComplexField fd_step(const ComplexField& u_n, const ComplexField& u_nm1,
                     const ComplexField& xi, const IntegratorConfig& cfg) {
    if (u_n.grid != u_nm1.grid)
        throw ConfigError("FD levels live on different grids");
    const double tau = cfg.tau;
    Spectrum sp = to_spectrum(u_nm1);
    Spectrum sf = to_spectrum(fd_forcing(u_n, xi, cfg.lambda));
    const cplx half_i_over_tau(0.0, 0.5 / tau);
    for (int k = 0; k < sp.size(); ++k) {
        const double mu = sp.grid.frequency_at_index(k);
        const double half_mu2 = 0.5 * mu * mu;
        sp.coeffs[k] = ((half_i_over_tau + half_mu2) * sp.coeffs[k] + sf.coeffs[k]) /
                       (half_i_over_tau - half_mu2);
    }
    return from_spectrum(sp);
}

ComplexField j1_term(const ComplexField& v, double tau, double lambda) {
    const TorusGrid& grid = v.grid;
    const int n = grid.n_points();

    Spectrum s = to_spectrum(v);
    Spectrum sbar = conjugate_spectrum(s);

    ComplexField v2(grid);
    cplx cubic0 = 0.0;
    for (int j = 0; j < n; ++j) {
        v2[j] = v[j] * v[j];
        cubic0 += std::norm(v[j]) * v[j];
    }
    cubic0 /= static_cast<double>(n);
    Spectrum s2 = to_spectrum(v2);

    // e^{-i tau dxx} dx^{-1} conj(v)  and  dx^{-1} conj(v)
    Spectrum tmp = sbar;
    inverse_derivative_inplace(tmp, 1);
    ComplexField d_vbar = from_spectrum(tmp);
    free_flow_inplace(tmp, -tau);
    ComplexField a = from_spectrum(tmp);

    // e^{+i tau dxx} v^2
    Spectrum tmp2 = s2;
    free_flow_inplace(tmp2, tau);
    ComplexField b = from_spectrum(tmp2);

    ComplexField prod(grid);
    for (int j = 0; j < n; ++j)
        prod[j] = a[j] * b[j];
    Spectrum sp = to_spectrum(prod);
    inverse_derivative_inplace(sp, 1);
    free_flow_inplace(sp, -tau);
    ComplexField term1 = from_spectrum(sp);

    ComplexField prod2(grid);
    for (int j = 0; j < n; ++j)
        prod2[j] = d_vbar[j] * v2[j];
    Spectrum sp2 = to_spectrum(prod2);
    inverse_derivative_inplace(sp2, 1);
    ComplexField term2 = from_spectrum(sp2);

    const cplx vbar0 = std::conj(s.coeffs[0]);
    const cplx v2_0 = s2.coeffs[0];
    const cplx minus_il_tau(0.0, -lambda * tau);

    ComplexField out(grid);
    for (int j = 0; j < n; ++j)
        out[j] = 0.5 * lambda * (term1[j] - term2[j]) +
                 minus_il_tau * (vbar0 * (v2[j] - v2_0) + cubic0);
    return out;
}

ComplexField j2_term(const ComplexField& v, double tau, double lambda) {
    const TorusGrid& grid = v.grid;
    const int n = grid.n_points();

    Spectrum s = to_spectrum(v);

    // (dx^{-1} e^{+i tau dxx} v)^2, propagated back by e^{-i tau dxx}
    Spectrum tmp = s;
    free_flow_inplace(tmp, tau);
    inverse_derivative_inplace(tmp, 1);
    ComplexField f = from_spectrum(tmp);
    ComplexField f2(grid);
    for (int j = 0; j < n; ++j)
        f2[j] = f[j] * f[j];
    Spectrum sf2 = to_spectrum(f2);
    free_flow_inplace(sf2, -tau);
    ComplexField g = from_spectrum(sf2);

    Spectrum tmp2 = s;
    inverse_derivative_inplace(tmp2, 1);
    ComplexField h = from_spectrum(tmp2);

    const cplx v0 = s.coeffs[0];
    const cplx minus_il_tau(0.0, -lambda * tau);

    ComplexField out(grid);
    for (int j = 0; j < n; ++j) {
        const cplx bracket = g[j] - h[j] * h[j];
        out[j] = (0.5 * lambda * bracket + minus_il_tau * v0 * (2.0 * v[j] - v0)) *
                 std::conj(v[j]);
    }
    return out;
}

ComplexField lri_step(const ComplexField& u, const DisorderPotential& pot,
                      const RegularizedPotential& reg, const IntegratorConfig& cfg) {
    if (u.grid != pot.xi.grid || u.grid != reg.xi1.grid)
        throw ConfigError("state, potential and regularization grids disagree");
    if (reg.tau != cfg.tau)
        throw NumericalError("regularized potential was precomputed for a different tau");

    const double tau = cfg.tau;
    const double lambda = cfg.lambda;
    const int n = u.size();

    ComplexField j1 = j1_term(u, tau, lambda);
    ComplexField j2 = j2_term(u, tau, lambda);
    ComplexField filtered = apply_sin_filter(u, tau);

    const cplx minus_i_tau_xi0 = cplx(0.0, -tau) * reg.xi0_hat;
    ComplexField sum(u.grid);
    for (int j = 0; j < n; ++j) {
        const double xi = pot.real_at(j);
        const double mod2 = std::norm(u[j]);
        const cplx twisted_phase = std::polar(1.0, lambda * tau * mod2);
        sum[j] = twisted_phase * u[j] + j1[j] + j2[j] -
                 (lambda * tau * tau * xi * mod2) * u[j] -
                 (0.5 * tau * tau * xi * xi) * u[j] + reg.xi1[j] * u[j] -
                 2.0 * reg.xi2[j] * filtered[j] + minus_i_tau_xi0 * u[j];
    }
    return apply_free_flow(sum, tau);
}

SolverState make_state(ComplexField u0, const DisorderPotential& pot,
                       const IntegratorConfig& cfg) {
    SolverState state{std::move(u0), std::nullopt, 0, nullptr};
    if (cfg.scheme == Scheme::LRI)
        state.reg = std::make_shared<RegularizedPotential>(
            precompute_regularized(pot, cfg.tau));
    return state;
}

SolverState evolve(SolverState state, const DisorderPotential& pot,
                   const IntegratorConfig& cfg, std::int64_t n_steps,
                   std::span<const std::int64_t> snapshot_steps,
                   const SnapshotHook& hook) {
    if (!(cfg.tau > 0.0))
        throw ConfigError("time step must be positive");
    if (state.u.grid != pot.xi.grid)
        throw ConfigError("state and potential live on different grids");
    if (cfg.scheme == Scheme::LRI && !state.reg)
        throw NumericalError("LRI stepping requires a precomputed regularized potential");

    std::size_t next_snap = 0;
    while (next_snap < snapshot_steps.size() &&
           snapshot_steps[next_snap] <= state.step_index)
        ++next_snap;

    for (std::int64_t k = 0; k < n_steps; ++k) {
        switch (cfg.scheme) {
        case Scheme::LRI:
            state.u = lri_step(state.u, pot, *state.reg, cfg);
            break;
        case Scheme::Strang:
            state.u = strang_step(state.u, pot.xi, cfg);
            break;
        case Scheme::FD: {
            if (state.step_index == 0) {
                ComplexField u1 = fd_first_step(state.u, pot.xi, cfg);
                state.u_prev = std::move(state.u);
                state.u = std::move(u1);
            } else {
                if (!state.u_prev)
                    throw NumericalError("FD state lost its second level");
                ComplexField u2 = fd_step(state.u, *state.u_prev, pot.xi, cfg);
                state.u_prev = std::move(state.u);
                state.u = std::move(u2);
            }
            break;
        }
        }
        ++state.step_index;
        if (hook && next_snap < snapshot_steps.size() &&
            snapshot_steps[next_snap] == state.step_index) {
            hook(state.step_index, state.u);
            while (next_snap < snapshot_steps.size() &&
                   snapshot_steps[next_snap] == state.step_index)
                ++next_snap;
        }
    }
    return state;
}

} // namespace dnls
