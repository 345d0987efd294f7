#include "dnls/lattice.hpp"

#include "dnls/errors.hpp"
#include "dnls/fft.hpp"

#include <cmath>
#include <numbers>

namespace dnls {

LatticeState make_lattice_state(int n_half, double hopping, double lambda,
                                std::vector<double> disorder) {
    if (n_half < 1)
        throw ConfigError("lattice half-size must be positive");
    if (static_cast<int>(disorder.size()) != 2 * n_half)
        throw ConfigError("disorder array must hold one value per site");
    LatticeState s;
    s.amplitudes.assign(static_cast<std::size_t>(2 * n_half), 0.0);
    s.disorder = std::move(disorder);
    s.hopping = hopping;
    s.lambda = lambda;
    return s;
}

std::vector<double> make_lattice_disorder(int n_half, CoeffDist dist, SampleRng& rng) {
    std::vector<double> xi(static_cast<std::size_t>(2 * n_half));
    for (double& v : xi)
        v = dist == CoeffDist::UniformSym ? rng.uniform_sym() : rng.normal();
    return xi;
}

void set_three_site_data(LatticeState& state) {
    for (cplx& v : state.amplitudes)
        v = 0.0;
    state.site(-1) = 0.25;
    state.site(1) = 0.25;
    state.site(0) = 0.5;
}

LatticeState lattice_kinetic_flow(LatticeState state, double t) {
    const int m = state.n_sites(); // 2N
    const int n_half = state.n_half();
    std::vector<cplx> hat(static_cast<std::size_t>(m));
    fft::forward(state.amplitudes, hat);
    for (int q = 0; q < m; ++q) {
        const double phase =
            2.0 * t * state.hopping * std::cos(q * std::numbers::pi / n_half);
        hat[q] *= std::polar(1.0, phase);
    }
    fft::backward(hat, state.amplitudes);
    const double inv = 1.0 / m;
    for (cplx& v : state.amplitudes)
        v *= inv;
    return state;
}

LatticeState lattice_potential_flow(LatticeState state, double t) {
    for (int p = 0; p < state.n_sites(); ++p) {
        const double phase =
            -t * (state.disorder[p] + state.lambda * std::norm(state.amplitudes[p]));
        state.amplitudes[p] *= std::polar(1.0, phase);
    }
    return state;
}

LatticeState lattice_strang_step(LatticeState state, double tau) {
    state = lattice_potential_flow(std::move(state), 0.5 * tau);
    state = lattice_kinetic_flow(std::move(state), tau);
    return lattice_potential_flow(std::move(state), 0.5 * tau);
}

LatticeState lattice_fd_first_step(LatticeState state, double tau) {
    const int m = state.n_sites();
    std::vector<cplx> next(static_cast<std::size_t>(m));
    const cplx i_j_tau(0.0, state.hopping * tau);
    for (int p = 0; p < m; ++p) {
        const cplx up = state.amplitudes[p];
        const cplx hop = state.amplitudes[(p + 1) % m] + state.amplitudes[(p - 1 + m) % m];
        const double onsite = state.disorder[p] + state.lambda * std::norm(up);
        next[p] = up + i_j_tau * hop - cplx(0.0, tau) * onsite * up;
    }
    state.amplitudes = std::move(next);
    return state;
}

LatticeState lattice_fd_step(const LatticeState& state_n,
                             const LatticeState& state_nm1, double tau) {
    const int m = state_n.n_sites();
    if (state_nm1.n_sites() != m)
        throw ConfigError("FD lattice levels differ in size");
    const int n_half = state_n.n_half();

    std::vector<cplx> forcing(static_cast<std::size_t>(m));
    for (int p = 0; p < m; ++p) {
        const cplx up = state_n.amplitudes[p];
        forcing[p] = (state_n.disorder[p] + state_n.lambda * std::norm(up)) * up;
    }

    std::vector<cplx> hat_prev(static_cast<std::size_t>(m));
    std::vector<cplx> hat_f(static_cast<std::size_t>(m));
    fft::forward(state_nm1.amplitudes, hat_prev);
    fft::forward(forcing, hat_f);

    const cplx half_i_over_tau(0.0, 0.5 / tau);
    const double inv = 1.0 / m;
    for (int q = 0; q < m; ++q) {
        const double jcos =
            state_n.hopping * std::cos(q * std::numbers::pi / n_half);
        hat_prev[q] = ((half_i_over_tau - jcos) * hat_prev[q] * inv + hat_f[q] * inv) /
                      (half_i_over_tau + jcos);
    }
    LatticeState out = state_n;
    fft::backward(hat_prev, out.amplitudes);
    return out;
}

double lattice_l2_norm(const LatticeState& state) {
    double s = 0.0;
    for (const cplx& v : state.amplitudes)
        s += std::norm(v);
    return std::sqrt(s);
}

double lattice_linf_norm(const LatticeState& state) {
    double m = 0.0;
    for (const cplx& v : state.amplitudes)
        m = std::max(m, std::abs(v));
    return m;
}

double lattice_relative_linf_error(const LatticeState& num, const LatticeState& ref) {
    if (num.n_sites() != ref.n_sites())
        throw ConfigError("lattice states differ in size");
    const double denom = lattice_linf_norm(ref);
    if (denom == 0.0)
        throw NumericalError("reference lattice state is identically zero");
    double m = 0.0;
    for (int p = 0; p < num.n_sites(); ++p)
        m = std::max(m, std::abs(num.amplitudes[p] - ref.amplitudes[p]));
    return m / denom;
}

} // namespace dnls
